"""Command-line surface.

Exit codes: 0 success, 1 a mathematical claim failed verification (which
means an implementation bug or a broken theorem - reproduction data is in
the output), 2 usage error. Output on stdout is machine-parseable (JSON or
CSV) and byte-identical across runs of the same invocation; the timing
line goes to stderr and is suppressed by --no-timing.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bounds as bounds_mod
from . import verify as verify_mod
from .du import (
    differential_spectrum,
    differential_uniformity,
    du_fast_binomial,
    du_wanlidl_rows,
    solution_count,
)
from .family import (
    BinomialParams,
    WanLidlParams,
    binomial_table,
    wanlidl_table,
    wl_is_pp,
)
from .fields import make_field
from .identities import verify_root_products
from .polys import Poly, is_permutation_bruteforce
from .sweep import (
    SweepConfig,
    find_bound_achievers,
    result_to_json,
    rows_to_csv_long,
    rows_to_csv_wide,
    run_sweep,
)

THEOREM_ALIASES = {
    "general": "general",
    "1.1": "general",
    "binomial": "binomial",
    "1.2": "binomial",
    "s2-even-d": "s2-even-d",
    "1.4": "s2-even-d",
    "b3": "b3",
    "1.3": "b3",
    "wl-criterion": "wl-criterion",
    "engines": "engines",
}


def _emit(payload: dict, pretty: bool) -> None:
    if pretty:
        for line in _pretty_lines(payload):
            print(line)
    else:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _pretty_lines(payload, prefix=""):
    if isinstance(payload, dict):
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)) and v:
                yield f"{prefix}{k}:"
                yield from _pretty_lines(v, prefix + "  ")
            else:
                yield f"{prefix}{k} = {v}"
    elif isinstance(payload, list):
        for v in payload:
            if isinstance(v, (dict, list)):
                yield from _pretty_lines(v, prefix + "  ")
                yield f"{prefix}  -"
            else:
                yield f"{prefix}- {v}"
    else:
        yield f"{prefix}{payload}"


def _add_field_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, required=True, help="field characteristic (odd prime)")
    p.add_argument("--e", type=int, default=1, help="field extension degree (default 1)")


def _add_function_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--poly", help="dense polynomial, constant term first: 'c0,c1,...'")
    p.add_argument("--binomial", action="store_true", help="use f = x^s(eta(x)+b)")
    p.add_argument("--s", type=int, help="exponent s")
    p.add_argument("--d", type=int, help="subgroup order d (divides q-1)")
    p.add_argument("--h", help="h coefficients, constant term first: 'c0,c1,...'")
    p.add_argument("--b", type=int, help="binomial translation b")


def _parse_function(args, parser):
    """Returns (ctx, kind, obj) with kind in {poly, binomial, wanlidl}."""
    ctx = make_field(args.p, args.e)
    if args.poly is not None:
        return ctx, "poly", Poly.parse(ctx, args.poly)
    if args.binomial:
        if args.s is None or args.b is None:
            parser.error("--binomial needs --s and --b")
        return ctx, "binomial", BinomialParams(ctx, args.s, args.b)
    if args.s is not None and args.d is not None and args.h is not None:
        return ctx, "wanlidl", WanLidlParams(ctx, args.s, args.d, Poly.parse(ctx, args.h))
    parser.error("specify --poly, or --binomial --s --b, or --s --d --h")


def _function_table(ctx, kind, obj):
    if kind == "poly":
        return obj.table()
    if kind == "binomial":
        return binomial_table(obj)
    return wanlidl_table(obj)


def cmd_du(args, parser) -> int:
    ctx, kind, obj = _parse_function(args, parser)
    engine = args.engine
    if engine == "auto":
        if kind == "binomial" and wl_is_pp(obj.as_wanlidl()):
            engine = "fast"
        elif kind == "wanlidl":
            engine = "rows"
        else:
            engine = "general"
    if engine == "fast":
        if kind != "binomial":
            parser.error("--engine fast needs --binomial parameters")
        res = du_fast_binomial(obj)
    elif engine == "rows":
        if kind == "binomial":
            res = du_wanlidl_rows(obj.as_wanlidl())
        elif kind == "wanlidl":
            res = du_wanlidl_rows(obj)
        else:
            parser.error("--engine rows needs structured parameters")
    else:
        res = differential_uniformity(ctx, _function_table(ctx, kind, obj))

    payload = {
        "q": ctx.q,
        "engine": engine,
        "delta": res.delta,
        "witness_a": res.witness_a,
        "witness_c": res.witness_c,
        "witness_count": solution_count(
            ctx, _function_table(ctx, kind, obj), res.witness_a, res.witness_c
        ),
    }
    exit_code = 0
    if kind in ("binomial", "wanlidl"):
        cert = bounds_mod.certify(obj, res)
        payload["bounds"] = [
            {"name": e.name, "applies": e.applies, "bound": e.bound, "tight": e.tight}
            for e in cert.applicable
        ]
        payload["verdict"] = cert.verdict
        if not cert.holds:
            exit_code = 1
    _emit(payload, args.pretty)
    return exit_code


def cmd_is_pp(args, parser) -> int:
    ctx, kind, obj = _parse_function(args, parser)
    payload = {"q": ctx.q}
    if kind == "poly":
        payload["is_pp"] = is_permutation_bruteforce(ctx, obj)
        payload["method"] = "brute-force"
    else:
        wl = obj.as_wanlidl() if kind == "binomial" else obj
        check = wl_is_pp(wl)
        payload["is_pp"] = check.is_pp
        payload["failed_condition"] = check.failed
        payload["method"] = "criterion"
        if args.brute:
            brute = is_permutation_bruteforce(ctx, wl.as_function())
            payload["brute_force"] = brute
            if brute != check.is_pp:
                payload["error"] = "criterion disagrees with brute force"
                _emit(payload, args.pretty)
                return 1
    _emit(payload, args.pretty)
    return 0


def cmd_spectrum(args, parser) -> int:
    ctx, kind, obj = _parse_function(args, parser)
    spec = differential_spectrum(ctx, _function_table(ctx, kind, obj))
    payload = {
        "q": ctx.q,
        "histogram": {str(k): v for k, v in sorted(spec.histogram.items())},
        "cells": spec.total_cells,
        "total_solutions": spec.total_solutions,
    }
    _emit(payload, args.pretty)
    return 0


def cmd_sweep(args, parser) -> int:
    config = SweepConfig(
        s=args.s,
        p_min=args.p_min,
        p_max=args.p_max,
        engine=args.engine,
        jobs=args.jobs,
    )
    result = run_sweep(config)
    if args.format == "csv":
        body = rows_to_csv_long(result.rows)
    elif args.format == "wide":
        body = rows_to_csv_wide(result.rows, config.s)
    else:
        body = result_to_json(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(body)
        _emit({"output": args.output, "summary": result.summary}, args.pretty)
    else:
        sys.stdout.write(body)
    return 0


def cmd_achievers(args, parser) -> int:
    config = SweepConfig(
        s=args.s, p_min=args.p_min, p_max=args.p_max, engine=args.engine, jobs=args.jobs
    )
    hits = find_bound_achievers(config)
    _emit(
        {
            "bound": config.bound,
            "achievers": [
                {"p": p, "b": b, "delta": delta, "bound": bound}
                for p, b, delta, bound in hits
            ],
        },
        args.pretty,
    )
    return 0


def cmd_verify_bounds(args, parser) -> int:
    name = THEOREM_ALIASES.get(args.theorem)
    if name is None:
        parser.error(
            f"unknown theorem selector {args.theorem!r}; "
            f"choose from {sorted(set(THEOREM_ALIASES))}"
        )
    kwargs = {}
    if name == "general":
        report = verify_mod.verify_general_bound(
            n_samples=args.random or 500,
            q_max=args.qmax or 500,
            seed=args.seed,
        )
    elif name == "binomial":
        report = verify_mod.verify_binomial_bound(p_max=args.to or args.qmax or 1000)
    elif name == "s2-even-d":
        d_values = (args.d,) if args.d else (2, 4, 6)
        report = verify_mod.verify_s2_even_d(
            q_max=args.qmax or 500, d_values=d_values, seed=args.seed
        )
    elif name == "b3":
        report = verify_mod.verify_b3_family(q_max=args.to or 2000)
    elif name == "wl-criterion":
        report = verify_mod.verify_pp_criterion_equivalence(
            q_max=args.qmax or 50, seed=args.seed
        )
    else:
        report = verify_mod.verify_engine_agreement(p_max=args.to or args.qmax or 200)
    _emit(report.as_dict(), args.pretty)
    return 0 if report.ok else 1


def cmd_lemma_check(args, parser) -> int:
    if args.random:
        report = verify_mod.verify_root_product_suite(
            n_applicable=args.random, q_max=args.qmax or 100, seed=args.seed
        )
        _emit(report.as_dict(), args.pretty)
        return 0 if report.ok else 1
    required = (args.p, args.s, args.d, args.h, args.a, args.c, args.lam)
    if any(v is None for v in required):
        parser.error("lemma-check needs --p --s --d --h --a --c --lam (or --random N)")
    ctx = make_field(args.p, args.e)
    params = WanLidlParams(ctx, args.s, args.d, Poly.parse(ctx, args.h))
    rep = verify_root_products(params, args.a, args.c, args.lam, args.mu)
    payload = {
        "case": rep.case,
        "applicable": rep.applicable,
        "reason": rep.reason,
        "degree": rep.degree,
        "roots": [list(r) for r in rep.roots],
        "product_checks": rep.product_checks,
        "pattern_holds": rep.pattern_holds,
        "power_map_checks": rep.power_map_checks,
        "passed": rep.passed,
    }
    _emit(payload, args.pretty)
    return 0 if (not rep.applicable or rep.passed) else 1


def cmd_corollary_check(args, parser) -> int:
    if args.q is not None:
        cert = bounds_mod.corollary_b3_certify(make_field(args.q, args.e))
        payload = {
            "q": cert.q,
            "pp_plus": cert.pp_plus,
            "pp_minus": cert.pp_minus,
            "delta_plus": cert.delta_plus,
            "delta_minus": cert.delta_minus,
            "bound": cert.bound,
            "holds": cert.holds,
        }
        _emit(payload, args.pretty)
        return 0 if cert.holds else 1
    if args.to is None:
        parser.error("corollary-check needs --q or --to")
    report = verify_mod.verify_b3_family(q_max=args.to)
    _emit(report.as_dict(), args.pretty)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wanlidl",
        description="Wan-Lidl polynomials: permutation tests, exact "
        "differential uniformity, bound certificates, and table sweeps.",
    )
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    parser.add_argument(
        "--no-timing", action="store_true", help="suppress the stderr timing line"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_du = sub.add_parser("du", help="exact differential uniformity + bound certificates")
    _add_field_args(p_du)
    _add_function_args(p_du)
    p_du.add_argument(
        "--engine",
        choices=("auto", "fast", "rows", "general"),
        default="auto",
        help="auto = fast path for binomial PPs, structured rows for (s,d,h)",
    )
    p_du.set_defaults(func=cmd_du)

    p_pp = sub.add_parser("is-pp", help="permutation test (criterion or brute force)")
    _add_field_args(p_pp)
    _add_function_args(p_pp)
    p_pp.add_argument("--brute", action="store_true", help="cross-check with brute force")
    p_pp.set_defaults(func=cmd_is_pp)

    p_sp = sub.add_parser("spectrum", help="full differential spectrum histogram")
    _add_field_args(p_sp)
    _add_function_args(p_sp)
    p_sp.set_defaults(func=cmd_spectrum)

    p_sw = sub.add_parser("sweep", help="per-prime delta histograms for x^s(eta(x)+b)")
    p_sw.add_argument("--s", type=int, required=True, help="even exponent s")
    p_sw.add_argument("--from", dest="p_min", type=int, required=True)
    p_sw.add_argument("--to", dest="p_max", type=int, required=True)
    p_sw.add_argument("--engine", choices=("fast", "general", "both"), default="fast")
    p_sw.add_argument("--jobs", type=int, default=None, help="worker processes (default: WANLIDL_JOBS or all cores)")
    p_sw.add_argument("--format", choices=("csv", "wide", "json"), default="csv")
    p_sw.add_argument("--output", help="write the table here instead of stdout")
    p_sw.set_defaults(func=cmd_sweep)

    p_ac = sub.add_parser("achievers", help="instances whose delta meets 4s-3")
    p_ac.add_argument("--s", type=int, required=True)
    p_ac.add_argument("--from", dest="p_min", type=int, required=True)
    p_ac.add_argument("--to", dest="p_max", type=int, required=True)
    p_ac.add_argument("--engine", choices=("fast", "general", "both"), default="fast")
    p_ac.add_argument("--jobs", type=int, default=None)
    p_ac.set_defaults(func=cmd_achievers)

    p_vb = sub.add_parser("verify-bounds", help="run a bound/oracle suite")
    p_vb.add_argument(
        "--theorem",
        required=True,
        help="general|binomial|s2-even-d|b3|wl-criterion|engines "
        "(aliases: 1.1, 1.2, 1.4, 1.3)",
    )
    p_vb.add_argument("--random", type=int, help="number of random instances")
    p_vb.add_argument("--qmax", type=int, help="field size limit")
    p_vb.add_argument("--to", type=int, help="prime limit for exhaustive suites")
    p_vb.add_argument("--d", type=int, help="restrict the s=2 suite to one d")
    p_vb.add_argument("--seed", type=int, default=0, help="RNG seed")
    p_vb.set_defaults(func=cmd_verify_bounds)

    p_lc = sub.add_parser("lemma-check", help="product-of-roots identity check")
    p_lc.add_argument("--p", type=int, help="field characteristic")
    p_lc.add_argument("--e", type=int, default=1)
    p_lc.add_argument("--s", type=int)
    p_lc.add_argument("--d", type=int)
    p_lc.add_argument("--h", help="h coefficients 'c0,c1,...'")
    p_lc.add_argument("--a", type=int, help="direction (nonzero)")
    p_lc.add_argument("--c", type=int, help="target value")
    p_lc.add_argument("--lam", type=int, help="subgroup value")
    p_lc.add_argument("--mu", type=int, help="second subgroup value (distinct case)")
    p_lc.add_argument("--random", type=int, help="run N random applicable configs")
    p_lc.add_argument("--qmax", type=int, help="field size limit for --random")
    p_lc.add_argument("--seed", type=int, default=0)
    p_lc.set_defaults(func=cmd_lemma_check)

    p_cc = sub.add_parser("corollary-check", help="certify x^2(eta(x) +- 3)")
    p_cc.add_argument("--q", type=int, help="one field order (prime, 3 mod 8)")
    p_cc.add_argument("--e", type=int, default=1)
    p_cc.add_argument("--to", type=int, help="certify every prime q = 3 mod 8 below this")
    p_cc.set_defaults(func=cmd_corollary_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        code = args.func(args, parser)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not args.no_timing:
        print(f"elapsed_seconds={time.perf_counter() - started:.3f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
