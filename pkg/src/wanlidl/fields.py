"""Exact arithmetic in F_q for odd q = p^e.

Two backends share one interface:

* prime-residue mode (e = 1): elements are residues in [0, p), arithmetic
  is plain modular arithmetic; works for any odd prime p < 2^63.
* table mode (e > 1, q <= 2^16): elements are base-p digit vectors packed
  into an integer in [0, q); multiplication goes through log/antilog tables
  built from a primitive element over a lexicographically-least irreducible
  modulus, so a field is reconstructed identically on every run.

A context also carries the multiplicative structure used throughout:
a primitive element gamma, the order-d subgroup H = <gamma^((q-1)/d)>,
the power map T(x) = x^((q-1)/d), and the quadratic character eta as a
precomputed byte table (the counting kernels query eta O(q) times per
polynomial; the exponentiation form is kept only as a cross-check).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import sympy

from .errors import (
    EvenCharacteristicError,
    NotADivisorError,
    NotPrimeError,
    TooLargeForTableModeError,
)

TABLE_MODE_LIMIT = 1 << 16
# int64 products of two canonical values stay exact below this
_KERNEL_LIMIT = 1 << 31


@dataclass(frozen=True)
class FieldSpec:
    """Order data of a finite field: q = p^e with p an odd prime."""

    p: int
    e: int
    q: int

    def __post_init__(self):
        if self.e < 1:
            raise ValueError(f"exponent must be >= 1, got {self.e}")
        if self.p == 2:
            raise EvenCharacteristicError("characteristic 2 not supported")
        if self.p < 2 or not sympy.isprime(self.p):
            raise NotPrimeError(f"{self.p} is not prime")
        if self.q != self.p**self.e:
            raise ValueError(f"q={self.q} is not p^e={self.p**self.e}")
        if self.q >= 1 << 64:
            raise ValueError("q must fit in 64 bits")
        if self.e > 1 and self.q > TABLE_MODE_LIMIT:
            raise TooLargeForTableModeError(
                f"q={self.q} exceeds the table-mode cap {TABLE_MODE_LIMIT}"
            )


def _poly_mul_mod(a, b, modulus, p):
    """Multiply two coefficient lists over F_p and reduce mod a monic modulus."""
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    e = len(modulus) - 1
    for k in range(len(res) - 1, e - 1, -1):
        c = res[k]
        if c:
            res[k] = 0
            for j in range(e):
                res[k - e + j] = (res[k - e + j] - c * modulus[j]) % p
    while len(res) > 1 and res[-1] == 0:
        res.pop()
    return res


def _poly_pow_mod(base, n, modulus, p):
    result = [1]
    cur = list(base)
    while n:
        if n & 1:
            result = _poly_mul_mod(result, cur, modulus, p)
        cur = _poly_mul_mod(cur, cur, modulus, p)
        n >>= 1
    return result


def _is_irreducible(coeffs, p):
    """Rabin test for a monic polynomial given constant-first over F_p."""
    e = len(coeffs) - 1
    x = [0, 1]
    # x^(p^e) == x mod f, and x^(p^(e/r)) != x for every prime r | e
    xp = _poly_pow_mod(x, p**e, coeffs, p)
    if xp != x:
        return False
    for r in sympy.primefactors(e):
        xk = _poly_pow_mod(x, p ** (e // r), coeffs, p)
        if xk == x:
            return False
    return True


def _find_modulus(p, e):
    """Lexicographically-least monic irreducible of degree e over F_p.

    Candidates are ordered by the packed integer value of their low
    coefficients, so the choice is reproducible across runs.
    """
    for m in range(p**e):
        coeffs = []
        v = m
        for _ in range(e):
            coeffs.append(v % p)
            v //= p
        coeffs.append(1)
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible polynomial of degree {e} over F_{p}")


class FieldCtx:
    """Immutable arithmetic context for one finite field.

    Construct via :func:`make_field`. Safe to share across workers: every
    operation is a pure function of its inputs and the frozen tables.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.q = spec.q
        self.p = spec.p
        self.e = spec.e
        self.mode = "prime-residue" if spec.e == 1 else "table-based"
        self._pow_tables: dict[int, np.ndarray] = {}
        self._subgroups: dict[int, tuple[int, ...]] = {}
        if self.mode == "table-based":
            self.modulus = _find_modulus(self.p, self.e)
            self._build_tables()
        else:
            self.modulus = None
        self.gamma = self._find_primitive()
        self._eta_table = self._build_eta()

    # -- construction helpers -------------------------------------------------

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        places = [p**i for i in range(e)]
        digits = np.zeros((q, e), dtype=np.int64)
        v = np.arange(q)
        for i in range(e):
            digits[:, i] = (v // places[i]) % p
        self._digits = digits
        self._places = np.array(places, dtype=np.int64)
        self._neg_table = np.ascontiguousarray(
            ((p - digits) % p) @ self._places
        )

    def _element_order_ok(self, g, factors):
        for r in factors:
            if self.pow(g, (self.q - 1) // r) == 1:
                return False
        return True

    def _find_primitive(self):
        factors = sympy.primefactors(self.q - 1)
        if self.mode == "prime-residue":
            for g in range(2, self.q):
                if self._element_order_ok(g, factors):
                    return g
        else:
            # log tables need gamma first: test candidates with direct
            # polynomial-basis powering, then freeze log/antilog from it
            for g in range(2, self.q):
                if self._order_ok_direct(g, factors):
                    self._build_logs(g)
                    return g
        raise RuntimeError("no primitive element found")

    def _unpack(self, a):
        coeffs = []
        for _ in range(self.e):
            coeffs.append(a % self.p)
            a //= self.p
        return coeffs

    def _pack(self, coeffs):
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c
        return v

    def _mul_direct(self, a, b):
        """Polynomial-basis product, independent of the log tables."""
        res = _poly_mul_mod(self._unpack(a), self._unpack(b), list(self.modulus), self.p)
        res += [0] * (self.e - len(res))
        return self._pack(res)

    def _order_ok_direct(self, g, factors):
        for r in factors:
            n = (self.q - 1) // r
            acc, cur = 1, g
            while n:
                if n & 1:
                    acc = self._mul_direct(acc, cur)
                cur = self._mul_direct(cur, cur)
                n >>= 1
            if acc == 1:
                return False
        return True

    def _build_logs(self, gamma):
        q = self.q
        alog = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        cur = 1
        for k in range(q - 1):
            alog[k] = cur
            log[cur] = k
            cur = self._mul_direct(cur, gamma)
        if cur != 1:
            raise RuntimeError("candidate primitive element has wrong order")
        self._alog = alog
        self._log = log

    def _build_eta(self):
        q = self.q
        eta = np.full(q, -1, dtype=np.int8)
        eta[0] = 0
        if self.mode == "prime-residue":
            xs = np.arange(1, q, dtype=np.int64)
            eta[(xs * xs) % q] = 1
        else:
            eta[self._alog[::2]] = 1
        return eta

    # -- scalar operations -----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.mode == "prime-residue":
            return (a + b) % self.q
        return self._pack(
            [(x + y) % self.p for x, y in zip(self._unpack(a), self._unpack(b))]
        )

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.mode == "prime-residue":
            return (-a) % self.q
        return int(self._neg_table[a])

    def mul(self, a: int, b: int) -> int:
        if self.mode == "prime-residue":
            return (a * b) % self.q
        if a == 0 or b == 0:
            return 0
        return int(self._alog[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self.mode == "prime-residue":
            return pow(a, -1, self.q)
        return int(self._alog[(-self._log[a]) % (self.q - 1)])

    def pow(self, a: int, n: int) -> int:
        """a^n with the 0^0 = 1 convention (uniform constant-term evaluation)."""
        if n < 0:
            raise ValueError("exponent must be nonnegative")
        if self.mode == "prime-residue":
            return pow(a, n, self.q)
        if n == 0:
            return 1
        if a == 0:
            return 0
        return int(self._alog[(self._log[a] * n) % (self.q - 1)])

    def from_int(self, n: int) -> int:
        """Embed an integer via the prime subfield (n mod p in digit 0)."""
        return n % self.p

    def eta(self, x: int) -> int:
        """Quadratic character: 0 at zero, +1 on squares, -1 otherwise."""
        return int(self._eta_table[x])

    # -- vector operations (numpy, canonical packed values) --------------------

    @property
    def eta_table(self) -> np.ndarray:
        return self._eta_table

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def _check_kernel_size(self):
        if self.q >= _KERNEL_LIMIT:
            raise ValueError("field too large for array kernels (q >= 2^31)")

    def add_vec(self, u, v) -> np.ndarray:
        self._check_kernel_size()
        if self.mode == "prime-residue":
            return (np.asarray(u, dtype=np.int64) + np.asarray(v, dtype=np.int64)) % self.q
        du = self._digits[np.asarray(u, dtype=np.int64)]
        dv = self._digits[np.asarray(v, dtype=np.int64)]
        return ((du + dv) % self.p) @ self._places

    def sub_vec(self, u, v) -> np.ndarray:
        self._check_kernel_size()
        if self.mode == "prime-residue":
            return (np.asarray(u, dtype=np.int64) - np.asarray(v, dtype=np.int64)) % self.q
        du = self._digits[np.asarray(u, dtype=np.int64)]
        dv = self._digits[np.asarray(v, dtype=np.int64)]
        return ((du - dv) % self.p) @ self._places

    def mul_vec(self, u, v) -> np.ndarray:
        self._check_kernel_size()
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if self.mode == "prime-residue":
            return (u * v) % self.q
        u, v = np.broadcast_arrays(u, v)
        out = np.zeros(u.shape, dtype=np.int64)
        nz = (u != 0) & (v != 0)
        out[nz] = self._alog[(self._log[u[nz]] + self._log[v[nz]]) % (self.q - 1)]
        return out

    def shift_perm(self, a_values) -> np.ndarray:
        """Index arrays for x -> x + a, one row per direction in a_values."""
        a = np.atleast_1d(np.asarray(a_values, dtype=np.int64))
        if self.mode == "prime-residue":
            return (np.arange(self.q, dtype=np.int64)[None, :] + a[:, None]) % self.q
        da = self._digits[a]
        return ((self._digits[None, :, :] + da[:, None, :]) % self.p) @ self._places

    def pow_table(self, n: int) -> np.ndarray:
        """x^n for every x, cached per exponent (0^0 = 1 convention)."""
        tab = self._pow_tables.get(n)
        if tab is not None:
            return tab
        self._check_kernel_size()
        q = self.q
        if self.mode == "prime-residue":
            out = np.ones(q, dtype=np.int64)
            base = np.arange(q, dtype=np.int64)
            k = n
            while k:
                if k & 1:
                    out = (out * base) % q
                base = (base * base) % q
                k >>= 1
            if n > 0:
                out[0] = 0
        else:
            out = np.zeros(q, dtype=np.int64)
            if n == 0:
                out[:] = 1
            else:
                nz = np.arange(1, q)
                out[nz] = self._alog[(self._log[nz] * n) % (q - 1)]
                out[0] = 0
        tab = np.ascontiguousarray(out)
        self._pow_tables[n] = tab
        return tab

    # -- multiplicative structure ----------------------------------------------

    def _require_divisor(self, d: int):
        if d < 1 or (self.q - 1) % d != 0:
            raise NotADivisorError(f"d={d} does not divide q-1={self.q - 1}")

    def power_map_T(self, d: int, x: int) -> int:
        """T(x) = x^((q-1)/d); multiplicative, maps F_q^* onto H."""
        self._require_divisor(d)
        return self.pow(x, (self.q - 1) // d)

    def power_map_table(self, d: int) -> np.ndarray:
        self._require_divisor(d)
        return self.pow_table((self.q - 1) // d)

    def subgroup_H(self, d: int) -> tuple[int, ...]:
        """The d powers gamma^(k(q-1)/d), k = 0..d-1, in that order."""
        self._require_divisor(d)
        cached = self._subgroups.get(d)
        if cached is not None:
            return cached
        step = self.pow(self.gamma, (self.q - 1) // d)
        out = [1]
        for _ in range(d - 1):
            out.append(self.mul(out[-1], step))
        res = tuple(out)
        self._subgroups[d] = res
        return res

    def __repr__(self):
        return f"FieldCtx(q={self.q}, p={self.p}, e={self.e}, gamma={self.gamma})"


def quadratic_character(ctx: FieldCtx, x: int) -> int:
    return ctx.eta(x)


def power_map_T(ctx: FieldCtx, d: int, x: int) -> int:
    return ctx.power_map_T(d, x)


def subgroup_H(ctx: FieldCtx, d: int) -> tuple[int, ...]:
    return ctx.subgroup_H(d)


_ctx_cache: dict[tuple[int, int], FieldCtx] = {}


def make_field(p: int, e: int = 1) -> FieldCtx:
    """Build (or fetch the cached) arithmetic context for F_{p^e}, p odd prime."""
    key = (p, e)
    ctx = _ctx_cache.get(key)
    if ctx is None:
        ctx = FieldCtx(FieldSpec(p=p, e=e, q=p**e))
        _ctx_cache[key] = ctx
    return ctx
