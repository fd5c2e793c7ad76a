"""Wan-Lidl polynomials f(x) = x^s * h(x^((q-1)/d)) and their PP criterion.

The permutation test checks, in order:

* WL1: gcd(s, (q-1)/d) = 1
* WL2: h(lambda) != 0 for every lambda in the order-d subgroup H
* WL3: lambda -> lambda^s * T(h(lambda)) is injective on H

The failing tag is reported so sweeps can skip whole primes (WL1) or single
parameter values (WL2/WL3) cheaply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import WrongCongruenceError
from .fields import FieldCtx
from .polys import Poly


def normalize_h(h: Poly, s: int, d: int) -> Poly:
    """Fold exponents of h modulo d; the induced f is unchanged for s >= 1.

    On nonzero x the argument of h lies in H where lambda^d = 1, so the
    coefficient of x^(d+k) folds into x^k (and x^d into the constant); at
    x = 0 the folded constant is multiplied by 0^s = 0, so f(0) stays 0.
    """
    if s < 1:
        raise ValueError("normalization requires s >= 1")
    if h.degree < d:
        return h
    folded = [0] * d
    for k, c in enumerate(h.coeffs):
        folded[k % d] = (folded[k % d] + c) % h.field.q
    return Poly.make(h.field, folded)


@dataclass(frozen=True)
class WanLidlParams:
    """The triple (s, d, h) over a field; h is normalized to degree < d."""

    field: FieldCtx
    s: int
    d: int
    h: Poly

    def __post_init__(self):
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")
        self.field._require_divisor(self.d)
        if self.h.field is not self.field:
            raise ValueError("h is defined over a different field")
        object.__setattr__(self, "h", normalize_h(self.h, self.s, self.d))

    def h_values_on_H(self) -> tuple[int, ...]:
        return tuple(self.h.eval(lam) for lam in self.field.subgroup_H(self.d))

    def as_function(self):
        return lambda x: eval_f(self, x)


def eval_f(params: WanLidlParams, x: int) -> int:
    """f(x) = x^s * h(T(x)); f(0) = 0 whenever s >= 1."""
    ctx = params.field
    t = ctx.pow(x, (ctx.q - 1) // params.d)
    return ctx.mul(ctx.pow(x, params.s), params.h.eval(t))


@dataclass(frozen=True)
class PPCheck:
    """Outcome of the permutation criterion; `failed` is None or a WL tag."""

    is_pp: bool
    failed: str | None = None

    def __bool__(self) -> bool:
        return self.is_pp


def wl_is_pp(params: WanLidlParams) -> PPCheck:
    ctx = params.field
    s, d = params.s, params.d
    if math.gcd(s, (ctx.q - 1) // d) != 1:
        return PPCheck(False, "WL1")
    H = ctx.subgroup_H(d)
    hvals = params.h_values_on_H()
    if any(v == 0 for v in hvals):
        return PPCheck(False, "WL2")
    images = set()
    for lam, hv in zip(H, hvals):
        images.add(ctx.mul(ctx.pow(lam, s), ctx.power_map_T(d, hv)))
    if len(images) != d:
        return PPCheck(False, "WL3")
    return PPCheck(True)


@dataclass(frozen=True)
class BinomialParams:
    """The d=2 family f = x^s * (eta(x) + b): s even, q = 3 mod 4, b != 0, +-1."""

    field: FieldCtx
    s: int
    b: int

    def __post_init__(self):
        q = self.field.q
        if q % 4 != 3:
            raise WrongCongruenceError(f"q={q} is not 3 mod 4")
        if self.s < 2 or self.s % 2 != 0:
            raise ValueError(f"s must be a positive even integer, got {self.s}")
        b = self.b % q
        if b in (0, 1, q - 1):
            raise ValueError(f"b={self.b} collides with 0 or +-1 in F_{q}")
        object.__setattr__(self, "b", b)

    def as_wanlidl(self) -> WanLidlParams:
        return WanLidlParams(self.field, self.s, 2, Poly.make(self.field, [self.b, 1]))


def binomial_f(params: BinomialParams):
    """Evaluatable x -> x^s * (eta(x) + b) backed by the field's eta table."""
    ctx = params.field
    s = params.s
    by_eta = {
        1: ctx.add(params.b, 1),
        0: params.b,
        -1: ctx.sub(params.b, 1),
    }
    return lambda x: ctx.mul(ctx.pow(x, s), by_eta[ctx.eta(x)])


def binomial_table(params: BinomialParams):
    """Value table of the binomial polynomial over all of F_q (vectorized)."""
    import numpy as np

    ctx = params.field
    et = ctx.eta_table
    by_eta = np.array(
        [params.b, ctx.add(params.b, 1), ctx.sub(params.b, 1)], dtype=np.int64
    )
    hv = by_eta[np.where(et > 0, 1, np.where(et < 0, 2, 0))]
    return ctx.mul_vec(ctx.pow_table(params.s), hv)


def negate_b_equivalent(params: BinomialParams) -> BinomialParams:
    """The b -> -b partner; x -> -f(-x) maps one onto the other, so sweeps
    only need b up to (q-1)/2."""
    return replace(params, b=params.field.neg(params.b))


def wanlidl_table(params: WanLidlParams):
    """Value table of f over all of F_q (vectorized via the field tables)."""
    import numpy as np

    ctx = params.field
    H = ctx.subgroup_H(params.d)
    w = np.array(params.h_values_on_H(), dtype=np.int64)
    pos = np.zeros(ctx.q, dtype=np.int64)
    pos[list(H)] = np.arange(params.d)
    hv = w[pos[ctx.power_map_table(params.d)]]
    F = ctx.mul_vec(ctx.pow_table(params.s), hv)
    F[0] = 0
    return F
