"""Runtime verification of the product-of-roots identities.

For fixed a != 0, c, and subgroup values lam (and optionally mu != lam), the
difference polynomial Delta_{f,a}(x) - c restricted to the case
(T(x+a), T(x)) = (lam, lam) is

    g(x) = ((x+a)^s - x^s) * h(lam) - c            (degree s-1)

and restricted to (lam, mu) with mu != lam it is

    g(x) = (x+a)^s * h(lam) - x^s * h(mu) - c      (degree s)

When g splits over F_q with full degree, the product of its roots and the
product of the shifted roots x_i + a equal closed-form expressions in a, c
and the h values; when every root additionally realizes the case pattern,
applying the power map T to those products pins lam (resp. mu) powers.
This module recomputes both sides exactly and reports pass/fail per
identity, or "not applicable" when the split hypothesis fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    IdenticalSubgroupValuesError,
    NotInSubgroupError,
    ZeroDirectionError,
)
from .family import WanLidlParams

PRODUCT_OF_ROOTS = "product_of_roots"
PRODUCT_OF_SHIFTED_ROOTS = "product_of_shifted_roots"
POWER_MAP_OF_ROOTS = "power_map_of_root_product"
POWER_MAP_OF_SHIFTED = "power_map_of_shifted_product"


@dataclass(frozen=True)
class IdentityReport:
    case: str  # "equal" (lam, lam) or "distinct" (lam, mu)
    applicable: bool
    reason: str | None
    degree: int | None
    roots: tuple[tuple[int, int], ...]  # (root, multiplicity)
    product_checks: dict[str, bool]
    pattern_holds: bool | None
    power_map_checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.product_checks.values()) and all(
            self.power_map_checks.values()
        )


def _not_applicable(case: str, reason: str, degree: int | None = None) -> IdentityReport:
    return IdentityReport(case, False, reason, degree, (), {}, None, {})


def _deflate(ctx, coeffs, r):
    """Synthetic division of a constant-first coefficient list by (x - r)."""
    high_first = list(reversed(coeffs))
    out = [high_first[0]]
    for c in high_first[1:]:
        out.append(ctx.add(c, ctx.mul(out[-1], r)))
    rem = out.pop()
    return list(reversed(out)), rem


def _eval_coeffs(ctx, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def roots_with_multiplicity(ctx, coeffs) -> tuple[tuple[int, int], ...]:
    """All roots in F_q by exhaustive evaluation; multiplicity by repeated
    deflation, so coincident roots are counted correctly.

    Works on raw constant-first coefficient lists: the case polynomials are
    formal objects whose degree may exceed q - 1 on tiny fields, so they are
    deliberately not funneled through the reduced-representative Poly type.
    """
    found = []
    for r in range(ctx.q):
        if _eval_coeffs(ctx, coeffs, r) != 0:
            continue
        mult = 0
        cur = list(coeffs)
        while len(cur) > 1:
            quo, rem = _deflate(ctx, cur, r)
            if rem != 0:
                break
            mult += 1
            cur = quo
        found.append((r, mult))
    return tuple(found)


def _shift_power_coeffs(ctx, s: int, a: int) -> list[int]:
    """Coefficients of (x + a)^s, constant-first."""
    return [
        ctx.mul(ctx.from_int(math.comb(s, k)), ctx.pow(a, s - k)) for k in range(s + 1)
    ]


def verify_root_products(
    params: WanLidlParams, a: int, c: int, lam: int, mu: int | None = None
) -> IdentityReport:
    """Check every applicable identity for one (a, c, lam[, mu]) configuration.

    Pass mu=None for the (lam, lam) case; a distinct mu selects the (lam, mu)
    case. Preconditions that break the full-degree hypothesis (p | s,
    h(lam) = 0, or h(lam) = h(mu)) yield "not applicable", never "fail".
    """
    ctx = params.field
    q, s, d = ctx.q, params.s, params.d
    if s < 2:
        raise ValueError("the identities are stated for s > 1")
    a %= q
    if a == 0:
        raise ZeroDirectionError("a must be nonzero")
    c %= q
    H = ctx.subgroup_H(d)
    if lam not in H:
        raise NotInSubgroupError(f"lam={lam} is not in the order-{d} subgroup")
    if mu is not None:
        if mu not in H:
            raise NotInSubgroupError(f"mu={mu} is not in the order-{d} subgroup")
        if mu == lam:
            raise IdenticalSubgroupValuesError("the (lam, mu) case needs mu != lam")

    case = "equal" if mu is None else "distinct"
    h_lam = params.h.eval(lam)
    shift = _shift_power_coeffs(ctx, s, a)

    if case == "equal":
        if s % ctx.p == 0:
            return _not_applicable(case, "p divides s: leading term vanishes")
        if h_lam == 0:
            return _not_applicable(case, "h(lam) = 0: leading term vanishes")
        # ((x+a)^s - x^s) h(lam) - c, degree exactly s-1
        coeffs = [ctx.mul(shift[k], h_lam) for k in range(s)]
        coeffs[0] = ctx.sub(coeffs[0], c)
        degree = s - 1
    else:
        h_mu = params.h.eval(mu)
        if h_lam == h_mu:
            return _not_applicable(case, "h(lam) = h(mu): leading term vanishes")
        # (x+a)^s h(lam) - x^s h(mu) - c, degree exactly s
        coeffs = [ctx.mul(shift[k], h_lam) for k in range(s + 1)]
        coeffs[s] = ctx.sub(coeffs[s], h_mu)
        coeffs[0] = ctx.sub(coeffs[0], c)
        degree = s

    assert coeffs[degree] != 0
    roots = roots_with_multiplicity(ctx, coeffs)
    if sum(m for _, m in roots) != degree:
        return _not_applicable(case, "does not split over F_q", degree)

    prod = 1
    prod_shift = 1
    for r, m in roots:
        for _ in range(m):
            prod = ctx.mul(prod, r)
            prod_shift = ctx.mul(prod_shift, ctx.add(r, a))

    sign = ctx.pow(ctx.neg(1), s)  # (-1)^s
    sign_prev = ctx.pow(ctx.neg(1), s - 1)  # (-1)^(s-1)
    a_s = ctx.pow(a, s)
    num_lam = ctx.sub(ctx.mul(a_s, h_lam), c)  # a^s h(lam) - c

    if case == "equal":
        den = ctx.mul(ctx.mul(ctx.from_int(s), a), h_lam)  # s*a*h(lam)
        inv_den = ctx.inv(den)
        expect_prod = ctx.mul(ctx.mul(sign_prev, num_lam), inv_den)
        shifted_num = ctx.add(ctx.mul(a_s, h_lam), ctx.mul(sign, c))
        expect_shift = ctx.mul(shifted_num, inv_den)
    else:
        den = ctx.sub(h_lam, h_mu)  # h(lam) - h(mu)
        inv_den = ctx.inv(den)
        expect_prod = ctx.mul(ctx.mul(sign, num_lam), inv_den)
        shifted_num = ctx.add(ctx.mul(a_s, h_mu), ctx.mul(sign, c))
        expect_shift = ctx.neg(ctx.mul(shifted_num, inv_den))

    product_checks = {
        PRODUCT_OF_ROOTS: prod == expect_prod,
        PRODUCT_OF_SHIFTED_ROOTS: prod_shift == expect_shift,
    }

    want = (lam, lam) if case == "equal" else (lam, mu)
    pattern = all(
        (ctx.power_map_T(d, ctx.add(r, a)), ctx.power_map_T(d, r)) == want
        for r, _ in roots
    )

    power_map_checks: dict[str, bool] = {}
    if pattern:
        def T(v):
            return ctx.power_map_T(d, v)

        t_minus1 = T(ctx.neg(1))
        if case == "equal":
            # both identities pin lam^(s-1)
            lhs = ctx.pow(lam, s - 1)
            den_t = ctx.mul(T(ctx.mul(ctx.from_int(s), a)), T(h_lam))
            inv_den_t = ctx.inv(den_t)
            rhs1 = ctx.mul(ctx.mul(ctx.pow(t_minus1, s - 1), T(num_lam)), inv_den_t)
            rhs2 = ctx.mul(T(shifted_num), inv_den_t)
            power_map_checks[POWER_MAP_OF_ROOTS] = lhs == rhs1
            power_map_checks[POWER_MAP_OF_SHIFTED] = lhs == rhs2
        else:
            inv_den_t = ctx.inv(T(den))
            rhs1 = ctx.mul(ctx.mul(ctx.pow(t_minus1, s), T(num_lam)), inv_den_t)
            rhs2 = ctx.mul(ctx.mul(t_minus1, T(shifted_num)), inv_den_t)
            power_map_checks[POWER_MAP_OF_ROOTS] = ctx.pow(mu, s) == rhs1
            power_map_checks[POWER_MAP_OF_SHIFTED] = ctx.pow(lam, s) == rhs2

    return IdentityReport(
        case=case,
        applicable=True,
        reason=None,
        degree=degree,
        roots=roots,
        product_checks=product_checks,
        pattern_holds=pattern,
        power_map_checks=power_map_checks,
    )
