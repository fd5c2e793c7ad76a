"""Parameter sweeps over prime fields for the binomial family x^s(eta(x)+b).

For an even s, a prime p is admissible when gcd(s, (p-1)/2) = 1 (for
s in {2, 4} that is p = 3 mod 4; s = 6 additionally needs p = 5 mod 6).
Each admissible prime contributes one histogram row: for every
b in [2, (p-1)/2] that passes the permutation criterion, the exact delta
is computed and binned. b and -b give linearly equivalent polynomials, so
the upper half of the b range is never tested.

Rows are independent; run_sweep distributes them across processes and
merges deterministically, so output bytes do not depend on the worker
count.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import sympy

from .du import binomial_delta_batch, differential_uniformity
from .errors import NotAdmissibleError
from .family import BinomialParams, binomial_table
from .fields import make_field

ENGINES = ("fast", "general", "both")
MIN_PRIME = 7


@dataclass(frozen=True)
class SweepConfig:
    s: int
    p_min: int
    p_max: int
    engine: str = "fast"
    jobs: int | None = None

    def __post_init__(self):
        if self.s < 2 or self.s % 2 != 0:
            raise ValueError(f"s must be a positive even integer, got {self.s}")
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}")

    @property
    def bound(self) -> int:
        return 4 * self.s - 3


@dataclass(frozen=True)
class TableRow:
    """Histogram of exact deltas over the permutation instances at one prime."""

    p: int
    counts: dict[int, int]
    pp_count: int
    tested: int
    tight: tuple[tuple[int, int], ...]  # (b, delta) pairs meeting 4s-3

    @property
    def max_delta(self) -> int:
        return max(self.counts) if self.counts else 0


def admissible_primes(s: int, p_min: int, p_max: int) -> list[int]:
    """Primes in [p_min, p_max] with gcd(s, (p-1)/2) = 1, never below 7."""
    if s < 2 or s % 2 != 0:
        raise ValueError(f"s must be a positive even integer, got {s}")
    lo = max(p_min, MIN_PRIME)
    return [
        int(p)
        for p in sympy.primerange(lo, p_max + 1)
        if math.gcd(s, (p - 1) // 2) == 1
    ]


def _pp_b_values(ctx, upper: int) -> np.ndarray:
    """b in [2, upper] passing the criterion: eta(b+1) = -eta(b-1), b != +-1."""
    if upper < 2:
        return np.zeros(0, dtype=np.int64)
    bs = np.arange(2, upper + 1, dtype=np.int64)
    et = ctx.eta_table
    keep = et[bs + 1].astype(np.int64) * et[bs - 1].astype(np.int64) == -1
    return bs[keep]


def sweep_row(p: int, s: int, engine: str = "fast") -> TableRow:
    """One table row: delta histogram over all PP b in [2, (p-1)/2]."""
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}")
    if not sympy.isprime(p) or p < MIN_PRIME or math.gcd(s, (p - 1) // 2) != 1:
        raise NotAdmissibleError(f"p={p} is not admissible for s={s}")
    ctx = make_field(p)
    upper = (p - 1) // 2
    pp_bs = _pp_b_values(ctx, upper)
    tested = max(upper - 1, 0)

    if engine in ("fast", "both"):
        deltas = binomial_delta_batch(ctx, s, pp_bs)
    else:
        deltas = np.array(
            [
                differential_uniformity(
                    ctx, binomial_table(BinomialParams(ctx, s, int(b)))
                ).delta
                for b in pp_bs
            ],
            dtype=np.int64,
        )
    if engine == "both":
        for b, fast_delta in zip(pp_bs, deltas):
            general = differential_uniformity(
                ctx, binomial_table(BinomialParams(ctx, s, int(b)))
            ).delta
            if general != int(fast_delta):
                raise RuntimeError(
                    f"engine disagreement at p={p}, s={s}, b={int(b)}: "
                    f"fast={int(fast_delta)}, general={general}"
                )

    bound = 4 * s - 3
    counts: dict[int, int] = {}
    tight = []
    for b, delta in zip(pp_bs, deltas):
        delta = int(delta)
        if delta > bound:
            raise RuntimeError(
                f"delta={delta} exceeds the {bound} bound at p={p}, s={s}, "
                f"b={int(b)}: this contradicts a proved theorem"
            )
        counts[delta] = counts.get(delta, 0) + 1
        if delta == bound:
            tight.append((int(b), delta))
    return TableRow(
        p=p,
        counts=dict(sorted(counts.items())),
        pp_count=int(len(pp_bs)),
        tested=tested,
        tight=tuple(tight),
    )


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    rows: tuple[TableRow, ...]
    summary: dict


def _row_task(args) -> TableRow:
    p, s, engine = args
    return sweep_row(p, s, engine)


def default_jobs() -> int:
    env = os.environ.get("WANLIDL_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_sweep(config: SweepConfig) -> SweepResult:
    """All admissible rows in range, computed concurrently, merged in
    ascending prime order (output is identical for any worker count)."""
    primes = admissible_primes(config.s, config.p_min, config.p_max)
    jobs = config.jobs if config.jobs is not None else default_jobs()
    tasks = [(p, config.s, config.engine) for p in primes]
    if jobs > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(primes))) as pool:
            rows = list(pool.map(_row_task, tasks))
    else:
        rows = [_row_task(t) for t in tasks]
    rows.sort(key=lambda r: r.p)

    tight = [
        (row.p, b, delta)
        for row in rows
        for b, delta in row.tight
    ]
    last_prime_with_delta: dict[int, int] = {}
    for row in rows:
        for delta in row.counts:
            last_prime_with_delta[delta] = row.p
    summary = {
        "primes": len(rows),
        "tested_b": sum(r.tested for r in rows),
        "total_pp": sum(r.pp_count for r in rows),
        "max_delta": max((r.max_delta for r in rows), default=0),
        "bound": config.bound,
        "tight": tight,
        "last_prime_with_delta": dict(sorted(last_prime_with_delta.items())),
    }
    return SweepResult(config=config, rows=tuple(rows), summary=summary)


def find_bound_achievers(config: SweepConfig) -> list[tuple[int, int, int, int]]:
    """(p, b, delta, bound) for every instance whose delta meets 4s-3."""
    result = run_sweep(config)
    return [(p, b, delta, config.bound) for p, b, delta in result.summary["tight"]]


# -- serialization ------------------------------------------------------------


def rows_to_csv_long(rows) -> str:
    """One line per (p, delta) pair: p,delta,count ascending."""
    lines = ["p,delta,count"]
    for row in rows:
        for delta, count in sorted(row.counts.items()):
            lines.append(f"{row.p},{delta},{count}")
    return "\n".join(lines) + "\n"


def rows_to_csv_wide(rows, s: int) -> str:
    """Paper-style layout: one line per prime, columns d2..d{4s-3}."""
    bound = 4 * s - 3
    header = ["p"] + [f"d{k}" for k in range(2, bound + 1)]
    lines = [",".join(header)]
    for row in rows:
        if any(k < 2 for k in row.counts):
            raise ValueError(f"row p={row.p} has a delta below 2")
        cells = [str(row.counts.get(k, 0)) for k in range(2, bound + 1)]
        lines.append(",".join([str(row.p)] + cells))
    return "\n".join(lines) + "\n"


def result_to_json(result: SweepResult) -> str:
    payload = {
        "s": result.config.s,
        "p_min": result.config.p_min,
        "p_max": result.config.p_max,
        "engine": result.config.engine,
        "rows": [
            {
                "p": row.p,
                "counts": {str(k): v for k, v in sorted(row.counts.items())},
                "pp_count": row.pp_count,
                "tested": row.tested,
            }
            for row in result.rows
        ],
        "summary": result.summary,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
