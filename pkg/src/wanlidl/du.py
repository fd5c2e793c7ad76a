"""Exact differential-uniformity engines.

Four routes, cross-validated against each other in the test suite:

* the general O(q^2) kernel: works on any value table, no structure assumed;
* a single-direction O(q) row kernel;
* the fast O(q) path for the d=2 binomial permutation family, which needs
  only the a=1 row (rows for other directions are the same count array up
  to rescaling and the b -> -b partner, whose a=1 row is identical);
* an O(d*q) structured engine for any Wan-Lidl polynomial: substituting
  x = a*y turns the direction-a row of f into the direction-1 row of the
  same polynomial with h twisted by T(a), and T(a) only takes the d values
  in H.

All engines count into reusable buffers via bincount on canonical values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotAPermutationError, ZeroDirectionError
from .family import BinomialParams, WanLidlParams, binomial_table, wl_is_pp
from .fields import FieldCtx
from .polys import Poly


@dataclass(frozen=True)
class DuResult:
    """delta plus a re-verifiable witness pair (a, c) attaining it."""

    delta: int
    witness_a: int
    witness_c: int
    per_a_max: np.ndarray | None = None


@dataclass(frozen=True)
class DeltaRow:
    max_count: int
    witness_c: int
    counts: np.ndarray


@dataclass(frozen=True)
class DiffSpectrum:
    """Histogram: solution count k -> number of (a, c) cells with exactly k."""

    histogram: dict[int, int]
    q: int

    @property
    def total_cells(self) -> int:
        return sum(self.histogram.values())

    @property
    def total_solutions(self) -> int:
        return sum(k * n for k, n in self.histogram.items())


def as_table(ctx: FieldCtx, f) -> np.ndarray:
    """Value table of f over F_q from a table, Poly, or evaluatable."""
    if isinstance(f, np.ndarray):
        if f.shape != (ctx.q,):
            raise ValueError(f"table must have shape ({ctx.q},)")
        return f.astype(np.int64, copy=False)
    if isinstance(f, Poly):
        return f.table()
    return np.fromiter((f(x) for x in range(ctx.q)), dtype=np.int64, count=ctx.q)


def _row_counts(ctx: FieldCtx, tab: np.ndarray, a: int) -> np.ndarray:
    idx = ctx.shift_perm(a)[0]
    diffs = ctx.sub_vec(tab[idx], tab)
    return np.bincount(diffs, minlength=ctx.q)


def _chunk_size(q: int) -> int:
    return max(1, min(512, (1 << 21) // max(q, 1)))


def _row_maxes(ctx: FieldCtx, tab: np.ndarray) -> np.ndarray:
    """Max solution count per direction a; index 0 unused."""
    q = ctx.q
    out = np.zeros(q, dtype=np.int64)
    chunk = _chunk_size(q)
    offsets = None
    for start in range(1, q, chunk):
        a_vals = np.arange(start, min(start + chunk, q), dtype=np.int64)
        idx = ctx.shift_perm(a_vals)
        diffs = ctx.sub_vec(tab[idx], tab[None, :])
        rows = len(a_vals)
        if offsets is None or len(offsets) < rows:
            offsets = np.arange(chunk, dtype=np.int64)[:, None] * q
        flat = (diffs + offsets[:rows]).ravel()
        counts = np.bincount(flat, minlength=rows * q).reshape(rows, q)
        out[a_vals] = counts.max(axis=1)
    return out


def delta_row(ctx: FieldCtx, f, a: int) -> DeltaRow:
    """Counts of f(x+a) - f(x) = c over all c, for one nonzero direction."""
    a = a % ctx.q
    if a == 0:
        raise ZeroDirectionError("direction a must be nonzero")
    counts = _row_counts(ctx, as_table(ctx, f), a)
    m = int(counts.max())
    return DeltaRow(max_count=m, witness_c=int(np.argmax(counts)), counts=counts)


def solution_count(ctx: FieldCtx, f, a: int, c: int) -> int:
    """Exact |{x : f(x+a) - f(x) = c}|."""
    a = a % ctx.q
    if a == 0:
        raise ZeroDirectionError("direction a must be nonzero")
    tab = as_table(ctx, f)
    idx = ctx.shift_perm(a)[0]
    return int((ctx.sub_vec(tab[idx], tab) == c % ctx.q).sum())


def differential_uniformity(ctx: FieldCtx, f, *, keep_per_a: bool = False) -> DuResult:
    """Exhaustive max over all (a, c); witness is the smallest a, then the
    smallest c, attaining delta."""
    tab = as_table(ctx, f)
    per_a = _row_maxes(ctx, tab)
    delta = int(per_a[1:].max())
    witness_a = int(np.argmax(per_a == delta))
    counts = _row_counts(ctx, tab, witness_a)
    witness_c = int(np.argmax(counts == delta))
    return DuResult(delta, witness_a, witness_c, per_a if keep_per_a else None)


def differential_spectrum(ctx: FieldCtx, f) -> DiffSpectrum:
    """Full histogram over all (q-1)*q cells, zero-count cells included."""
    tab = as_table(ctx, f)
    q = ctx.q
    hist = np.zeros(q + 1, dtype=np.int64)
    chunk = _chunk_size(q)
    offsets = None
    for start in range(1, q, chunk):
        a_vals = np.arange(start, min(start + chunk, q), dtype=np.int64)
        idx = ctx.shift_perm(a_vals)
        diffs = ctx.sub_vec(tab[idx], tab[None, :])
        rows = len(a_vals)
        if offsets is None or len(offsets) < rows:
            offsets = np.arange(chunk, dtype=np.int64)[:, None] * q
        flat = (diffs + offsets[:rows]).ravel()
        counts = np.bincount(flat, minlength=rows * q)
        hist += np.bincount(counts, minlength=q + 1)[: q + 1]
    return DiffSpectrum({k: int(n) for k, n in enumerate(hist) if n}, q)


def du_fast_binomial(params: BinomialParams) -> DuResult:
    """delta of a binomial-family PP from the single a=1 row, O(q).

    Refuses non-PP inputs: the row reduction is derived in the PP setting,
    and the general engine is always available for everything else.
    """
    check = wl_is_pp(params.as_wanlidl())
    if not check:
        raise NotAPermutationError(
            f"binomial instance (q={params.field.q}, s={params.s}, b={params.b}) "
            f"fails {check.failed}; use the general engine"
        )
    ctx = params.field
    counts = _row_counts(ctx, binomial_table(params), 1)
    delta = int(counts.max())
    return DuResult(delta, 1, int(np.argmax(counts)))


def binomial_delta_batch(ctx: FieldCtx, s: int, b_values) -> np.ndarray:
    """a=1-row deltas for a batch of binomial-family instances x^s(eta(x)+b).

    Callers are responsible for passing only b values that define
    permutations; for those the a=1 row max is the full delta.
    """
    q = ctx.q
    bs = np.asarray(b_values, dtype=np.int64)
    et = ctx.eta_table
    eta_elem = np.where(et > 0, 1, np.where(et < 0, ctx.neg(1), 0)).astype(np.int64)
    pow_s = ctx.pow_table(s)
    perm1 = ctx.shift_perm(1)[0]
    out = np.zeros(len(bs), dtype=np.int64)
    chunk = max(1, (1 << 20) // max(q, 1))
    for i0 in range(0, len(bs), chunk):
        bc = bs[i0 : i0 + chunk]
        rows = len(bc)
        hv = ctx.add_vec(eta_elem[None, :], bc[:, None])
        F = ctx.mul_vec(pow_s[None, :], hv)
        diffs = ctx.sub_vec(F[:, perm1], F)
        offsets = np.arange(rows, dtype=np.int64)[:, None] * q
        counts = np.bincount((diffs + offsets).ravel(), minlength=rows * q)
        out[i0 : i0 + chunk] = counts.reshape(rows, q).max(axis=1)
    return out


def _twist_tables(ctx: FieldCtx, d: int):
    """Index of T(x) in H for x != 0, and the a=1 shift permutation."""
    H = ctx.subgroup_H(d)
    pos = np.zeros(ctx.q, dtype=np.int64)
    pos[list(H)] = np.arange(d)
    t_idx = pos[ctx.power_map_table(d)]
    return t_idx, ctx.shift_perm(1)[0]


def du_wanlidl_rows(params: WanLidlParams) -> DuResult:
    """Exact delta for any Wan-Lidl polynomial in O(d*q).

    For a != 0 and rho = T(a), the substitution x = a*y gives
    Delta_{f,a}(a*y) = a^s * Delta_{f_rho,1}(y) with f_rho = x^s h(rho*T(x)),
    so the direction-a count array is the direction-1 count array of the
    rho-twisted polynomial up to relabeling c. One row per rho suffices.
    """
    ctx = params.field
    q, s, d = ctx.q, params.s, params.d
    w = np.array(params.h_values_on_H(), dtype=np.int64)
    t_idx, perm1 = _twist_tables(ctx, d)
    pow_s = ctx.pow_table(s)
    best = (-1, None, None)
    for j in range(d):
        fj = ctx.mul_vec(pow_s, w[(t_idx + j) % d])
        fj[0] = 0
        counts = np.bincount(ctx.sub_vec(fj[perm1], fj), minlength=q)
        m = int(counts.max())
        if m > best[0]:
            best = (m, j, int(np.argmax(counts)))
    delta, j_star, c1 = best
    nz = np.arange(1, q)
    a_star = int(nz[np.argmax(t_idx[1:] == j_star)])
    witness_c = ctx.mul(ctx.pow(a_star, s), c1)
    return DuResult(delta, a_star, witness_c)


def wanlidl_delta_batch(
    ctx: FieldCtx, s: int, d: int, h_values: np.ndarray
) -> np.ndarray:
    """Exact deltas for a batch of Wan-Lidl instances given as value-vectors
    of h on H, shape (n, d); same reduction as du_wanlidl_rows."""
    ctx._require_divisor(d)
    q = ctx.q
    W = np.asarray(h_values, dtype=np.int64)
    if W.ndim != 2 or W.shape[1] != d:
        raise ValueError(f"h_values must have shape (n, {d})")
    t_idx, perm1 = _twist_tables(ctx, d)
    pow_s = ctx.pow_table(s)
    n = len(W)
    out = np.zeros(n, dtype=np.int64)
    chunk = max(1, (1 << 20) // max(q, 1))
    for n0 in range(0, n, chunk):
        Wc = W[n0 : n0 + chunk]
        rows = len(Wc)
        offsets = np.arange(rows, dtype=np.int64)[:, None] * q
        best = np.zeros(rows, dtype=np.int64)
        for j in range(d):
            F = ctx.mul_vec(pow_s[None, :], Wc[:, (t_idx + j) % d])
            F[:, 0] = 0
            diffs = ctx.sub_vec(F[:, perm1], F)
            counts = np.bincount(
                (diffs + offsets).ravel(), minlength=rows * q
            ).reshape(rows, q)
            np.maximum(best, counts.max(axis=1), out=best)
        out[n0 : n0 + chunk] = best
    return out
