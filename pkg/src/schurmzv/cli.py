"""Command-line interface: ``schurmzv <command> ...``.

Exit codes: 0 success/pass, 1 numeric mismatch, 2 input or structural error.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from pathlib import Path

from .cache import MzvCache, resolve_cache_path
from .duality import (
    StructuralError,
    dual_tableau,
    random_dualizable,
    verify_duality,
    verify_lemma31,
    verify_ohno,
)
from .jacobi_trudi import determinant_symbolic, jt_eval, jt_matrix
from .mzv import NotAdmissibleError, dual_index, zeta_mzv
from .rims import enumerate_e_rim_decompositions
from .shapes import SkewShape
from .ssyt import RegionError, zeta_schur_direct
from .tableaux import TableauError, parse_tableau

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_SEED = 20240601


class InputError(ValueError):
    pass


def _load_json_arg(arg: str):
    """Inline JSON or a path to a JSON file."""
    text = arg.strip()
    if text[:1] in "[{":
        return json.loads(text)
    path = Path(arg)
    if not path.exists():
        raise InputError(f"no such file: {arg}")
    return json.loads(path.read_text(encoding="utf-8"))


def _tableau(args):
    if not args.tableau:
        raise InputError("--tableau is required")
    return parse_tableau(_load_json_arg(args.tableau))


def _cache(args):
    if args.no_cache:
        return None
    return MzvCache(resolve_cache_path(args.cache))


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _fmt_result(label: str, res) -> str:
    return f"{label} = {res.value:.15g}  (err <= {res.err:.3g})"


# ---------------------------------------------------------------------------
# commands

def cmd_eval(args) -> int:
    t = _tableau(args)
    cache = _cache(args)
    if args.method == "jt":
        res = jt_eval(t, args.terms, cache)
    else:
        res = zeta_schur_direct(t, args.bound, cache)
    payload = {"tableau": t.to_json(), "value": res.value, "err": res.err, "meta": res.meta}
    _emit(args, payload, f"{t}\n" + _fmt_result("zeta", res) + f"  [{args.method}]")
    return EXIT_OK


def cmd_mzv(args) -> int:
    k = tuple(args.index)
    res = zeta_mzv(k, args.terms, _cache(args))
    payload = {"index": list(k), "dual": list(dual_index(k)), "value": res.value, "err": res.err, "meta": res.meta}
    _emit(args, payload, _fmt_result(f"zeta{k}", res) + f"\ndual index: {dual_index(k)}")
    return EXIT_OK


def cmd_dual(args) -> int:
    t = _tableau(args)
    d = dual_tableau(t)
    payload = {"tableau": t.to_json(), "dual": d.to_json()}
    _emit(args, payload, f"{t}\n--- dual on {d.dual_shape} ---\n{d.dual_tableau}")
    return EXIT_OK


def cmd_verify(args) -> int:
    t = _tableau(args)
    cache = _cache(args)
    start = time.perf_counter()
    if args.kind == "duality":
        method = args.method or "direct"
        rep = verify_duality(t, args.tol, method, args.bound, args.terms, cache)
    elif args.kind == "ohno":
        method = args.method or "direct"
        if method not in ("direct", "rims"):
            raise InputError("ohno supports --method direct or rims")
        rep = verify_ohno(t, args.ell, args.tol, method, args.bound, args.terms, cache)
    else:
        rep = verify_lemma31(t, args.tol, args.bound, args.terms, cache)
    if args.timing:
        rep.wall_time_ms = round((time.perf_counter() - start) * 1000, 3)
    verdict = "PASS" if rep.passed else "FAIL"
    text = (
        f"{args.kind}: lhs = {rep.lhs:.15g} (err {rep.lhs_err:.3g}), rhs = {rep.rhs:.15g} (err {rep.rhs_err:.3g})\n"
        f"diff = {rep.diff:.3g}, tol = {rep.tol:g}: {verdict}"
    )
    _emit(args, rep.to_json(), text)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_rims(args) -> int:
    if not args.shape:
        raise InputError("--shape is required")
    shape = SkewShape.from_json(_load_json_arg(args.shape))
    decs = enumerate_e_rim_decompositions(shape)
    payload = {"shape": shape.to_json(), "count": len(decs), "decompositions": [d.to_json() for d in decs]}
    lines = [f"{len(decs)} E-rim decomposition(s) of {shape}"]
    for d in decs:
        lines.append(f"sigma={d.sigma} sign={'+' if d.sign > 0 else '-'} labels={d.label_rows()}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_jt(args) -> int:
    t = _tableau(args)
    m = jt_matrix(t)
    payload = {"tableau": t.to_json(), "matrix": [[e.to_json() for e in row] for row in m]}
    lines = ["[" + ", ".join(str(e) for e in row) + "]" for row in m]
    if args.symbolic:
        terms = determinant_symbolic(m)
        payload["expansion"] = [x.to_json() for x in terms]
        for x in terms:
            lines.append(("+ " if x.sign > 0 else "- ") + (" ".join("ζ(" + ",".join(map(str, f)) + ")" for f in x.factors) or "1"))
    else:
        res = jt_eval(t, args.terms, _cache(args))
        payload.update(value=res.value, err=res.err)
        lines.append(_fmt_result("det", res))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_cache(args) -> int:
    cache = MzvCache(resolve_cache_path(args.cache))
    if args.action == "clear":
        cache.clear()
    stats = cache.stats()
    _emit(args, stats, "\n".join(f"{k}: {v}" for k, v in stats.items()))
    return EXIT_OK


def _sweep_case(job):
    seed, idx, min_cells, max_cells, max_entry, numeric, bound, terms, tol = job
    rng = random.Random(f"{seed}:{idx}")
    k = random_dualizable(rng, min_cells, max_cells, max_entry)
    d = dual_tableau(k)
    dd = dual_tableau(d.dual_tableau)
    case = {
        "tableau": k.to_json(),
        "dual": d.to_json(),
        "involution": dd.dual_tableau == k.normalized(),
        "weight": d.dual_tableau.weight == k.weight,
    }
    ok = case["involution"] and case["weight"]
    if numeric:
        rep = verify_duality(k, tol, "direct", bound, terms)
        case.update(lhs=rep.lhs, rhs=rep.rhs, diff=rep.diff, numeric=rep.passed)
        ok = ok and rep.passed
    case["pass"] = ok
    return case


def cmd_sweep(args) -> int:
    jobs = [
        (args.seed, i, args.min_cells, args.max_cells, args.max_entry, args.numeric, args.bound, args.terms, args.tol)
        for i in range(args.count)
    ]
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(args.jobs) as pool:
            cases = list(pool.map(_sweep_case, jobs))
    else:
        cases = [_sweep_case(j) for j in jobs]
    passed = all(c["pass"] for c in cases)
    payload = {"seed": args.seed, "count": args.count, "pass": passed, "cases": cases}
    text = f"sweep seed={args.seed}: {sum(c['pass'] for c in cases)}/{len(cases)} cases passed"
    _emit(args, payload, text)
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tableau", help="tableau JSON file or inline JSON")
    common.add_argument("--bound", type=int, default=4000, help="entry bound N for direct sums (default 4000)")
    common.add_argument("--terms", type=int, default=10**6, help="outer bound M for classical MZVs (default 10^6)")
    common.add_argument("--tol", type=float, default=1e-4, help="verification tolerance (default 1e-4)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cache", help="cache file (default $SCHURMZV_CACHE or ./schurmzv-cache.jsonl)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the value cache")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--timing", action="store_true", help="include wall_time_ms in reports")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="schurmzv", description="Schur multiple zeta values: evaluation, duality and Ohno checks.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate ζ_δ(s) for a tableau")
    e.add_argument("--method", choices=["direct", "jt"], default="direct")
    e.set_defaults(func=cmd_eval)

    m = sub.add_parser("mzv", parents=[common], help="evaluate a classical MZV")
    m.add_argument("index", type=int, nargs="+")
    m.set_defaults(func=cmd_mzv)

    d = sub.add_parser("dual", parents=[common], help="construct the dual tableau")
    d.set_defaults(func=cmd_dual)

    v = sub.add_parser("verify", parents=[common], help="check duality, Ohno or the rim identity numerically")
    v.add_argument("kind", choices=["duality", "ohno", "lemma31"])
    v.add_argument("--ell", type=int, default=1)
    v.add_argument("--method", choices=["direct", "jt", "rims"], default=None)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("rims", parents=[common], help="list E-rim decompositions of a shape")
    r.add_argument("--shape", help='shape JSON, e.g. \'{"lambda":[2,2]}\' or a file')
    r.set_defaults(func=cmd_rims)

    j = sub.add_parser("jt", parents=[common], help="Jacobi–Trudi matrix and determinant")
    j.add_argument("--symbolic", action="store_true", help="print the signed expansion instead of a value")
    j.set_defaults(func=cmd_jt)

    c = sub.add_parser("cache", parents=[common], help="cache statistics or reset")
    c.add_argument("action", choices=["stats", "clear"])
    c.set_defaults(func=cmd_cache)

    s = sub.add_parser("sweep", parents=[common], help="seeded random dual-tableau sweep")
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--min-cells", type=int, default=2)
    s.add_argument("--max-cells", type=int, default=8)
    s.add_argument("--max-entry", type=int, default=4)
    s.add_argument("--numeric", action="store_true", help="also compare both sides numerically")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    for name in ("bound", "terms", "jobs"):
        if getattr(args, name) < 1:
            print(f"error: --{name} must be positive", file=sys.stderr)
            return EXIT_INPUT
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "ell", 0) < 0:
        print("error: --ell must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, TableauError, StructuralError, RegionError, NotAdmissibleError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
