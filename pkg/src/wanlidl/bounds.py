"""Upper-bound formulas for the differential uniformity of Wan-Lidl
polynomials, and certification that a computed delta respects every bound
whose hypotheses the instance satisfies.

All arithmetic here is exact integers; a "violated" verdict contradicts a
proved theorem and is treated by callers as a build-breaking event.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import WrongCongruenceError
from .family import BinomialParams, WanLidlParams, negate_b_equivalent, wl_is_pp
from .fields import FieldCtx

GENERAL = "general"
BINOMIAL_EVEN_S = "binomial-even-s"
S2_EVEN_D = "s2-even-d"
B3_FAMILY = "b3-family"

ALL_BOUNDS = (GENERAL, BINOMIAL_EVEN_S, S2_EVEN_D, B3_FAMILY)


def bound_general(s: int, d: int) -> int:
    """d(sd-1)+2: holds for any x^s h(T(x)) with s > 1 and h nonvanishing
    on H; no permutation hypothesis."""
    if s <= 1:
        raise ValueError(f"the general bound needs s > 1, got s={s}")
    if d < 1:
        raise ValueError(f"d must be positive, got d={d}")
    return d * (s * d - 1) + 2


def bound_binomial_even_s(s: int) -> int:
    """4s-3: binomial-family permutations x^s(eta(x)+b) with even s."""
    if s < 2 or s % 2 != 0:
        raise ValueError(f"this bound needs even s >= 2, got s={s}")
    return 4 * s - 3


def bound_s2_even_d(d: int) -> int:
    """2d^2 - 3d/2: permutations x^2 h(T(x)) with d even, (q-1)/d odd."""
    if d < 2 or d % 2 != 0:
        raise ValueError(f"this bound needs even d >= 2, got d={d}")
    return 2 * d * d - (3 * d) // 2


@dataclass(frozen=True)
class AppliedBound:
    name: str
    applies: bool
    bound: int | None = None
    tight: bool | None = None


@dataclass(frozen=True)
class BoundCertificate:
    delta: int
    applicable: tuple[AppliedBound, ...]
    verdict: str  # "holds" or "violated"

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    @property
    def min_bound(self) -> int | None:
        vals = [e.bound for e in self.applicable if e.applies]
        return min(vals) if vals else None


def _binomial_shape(params: WanLidlParams) -> int | None:
    """The b with h = x + b when params is a monic degree-1, d=2 instance."""
    if params.d != 2 or len(params.h.coeffs) != 2 or params.h.coeffs[1] != 1:
        return None
    b = params.h.coeffs[0]
    q = params.field.q
    if b in (0, 1, q - 1):
        return None
    return b


def certify(params, du) -> BoundCertificate:
    """Evaluate every bound's hypotheses against a computed delta.

    Accepts WanLidlParams or BinomialParams; du is the DuResult (or bare
    delta) computed for the same polynomial.
    """
    delta = du if isinstance(du, int) else du.delta
    if isinstance(params, BinomialParams):
        wl = params.as_wanlidl()
        b = params.b
    else:
        wl = params
        b = _binomial_shape(params)
    ctx = wl.field
    q, s, d = ctx.q, wl.s, wl.d
    pp = bool(wl_is_pp(wl))
    h_nonvanishing = all(v != 0 for v in wl.h_values_on_H())

    entries = []

    general_ok = s > 1 and h_nonvanishing
    entries.append(
        AppliedBound(GENERAL, general_ok, bound_general(s, d) if general_ok else None)
    )

    binom_ok = b is not None and s % 2 == 0 and s >= 2 and q % 4 == 3 and pp
    entries.append(
        AppliedBound(
            BINOMIAL_EVEN_S, binom_ok, bound_binomial_even_s(s) if binom_ok else None
        )
    )

    s2_ok = s == 2 and d % 2 == 0 and ((q - 1) // d) % 2 == 1 and pp
    entries.append(
        AppliedBound(S2_EVEN_D, s2_ok, bound_s2_even_d(d) if s2_ok else None)
    )

    b3_ok = (
        b is not None
        and s == 2
        and q % 8 == 3
        and q > 3
        and b in (3 % q, (q - 3) % q)
        and pp
    )
    entries.append(AppliedBound(B3_FAMILY, b3_ok, 4 if b3_ok else None))

    applied = tuple(
        AppliedBound(e.name, e.applies, e.bound, delta == e.bound if e.applies else None)
        for e in entries
    )
    violated = any(e.applies and delta > e.bound for e in applied)
    return BoundCertificate(delta, applied, "violated" if violated else "holds")


@dataclass(frozen=True)
class CorollaryCertificate:
    """Facts for the x^2(eta(x) +- 3) family over a field with q = 3 mod 8."""

    q: int
    pp_plus: bool
    pp_minus: bool
    delta_plus: int
    delta_minus: int
    bound: int

    @property
    def holds(self) -> bool:
        return (
            self.pp_plus
            and self.pp_minus
            and self.delta_plus <= self.bound
            and self.delta_minus <= self.bound
        )


def corollary_b3_certify(ctx: FieldCtx) -> CorollaryCertificate:
    """Certify that both x^2(eta(x)+3) and x^2(eta(x)-3) are permutations
    with delta <= 4 over a field of order q = 3 mod 8, q > 3."""
    from .du import differential_uniformity, du_fast_binomial
    from .family import binomial_table

    q = ctx.q
    if q % 8 != 3:
        raise WrongCongruenceError(f"q={q} is not 3 mod 8")
    if q <= 3:
        raise ValueError("q must exceed 3 so that b=3 differs from 0 and +-1")
    plus = BinomialParams(ctx, 2, 3)
    minus = negate_b_equivalent(plus)
    results = {}
    flags = {}
    for tag, inst in (("plus", plus), ("minus", minus)):
        ok = bool(wl_is_pp(inst.as_wanlidl()))
        flags[tag] = ok
        if ok:
            results[tag] = du_fast_binomial(inst).delta
        else:
            results[tag] = differential_uniformity(ctx, binomial_table(inst)).delta
    return CorollaryCertificate(
        q=q,
        pp_plus=flags["plus"],
        pp_minus=flags["minus"],
        delta_plus=results["plus"],
        delta_minus=results["minus"],
        bound=4,
    )
