"""Command-line entry point binding all modules.

Exit codes: 0 success (and Property P holds / all bounds pass), 1 on a
property violation or bound failure, 2 on usage, domain or resource
errors.  JSON is the stable machine interface; integers beyond 2^53 are
emitted as decimal strings so consumers never lose precision.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict
from decimal import Decimal, InvalidOperation

from . import constants, construct, counting, primes, seqfile, verify
from .errors import PropPError

SCHEMA_VERSION = "1"

_JSON_INT_LIMIT = 1 << 53


def _jsonable(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > _JSON_INT_LIMIT else obj
    if isinstance(obj, float):
        if math.isfinite(obj):
            return obj
        return repr(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _dump_json(payload: dict, stream) -> None:
    body = {"schema_version": SCHEMA_VERSION}
    body.update(payload)
    json.dump(_jsonable(body), stream, indent=2)
    stream.write("\n")


def _open_out(args):
    if getattr(args, "out", None):
        return open(args.out, "w", encoding="utf-8"), True
    return sys.stdout, False


def _write(args, emit_fn) -> None:
    stream, close = _open_out(args)
    try:
        emit_fn(stream)
    finally:
        if close:
            stream.close()


def _magnitude(text: str):
    """Parse a possibly huge numeric argument: exact int when integral."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if d == d.to_integral_value():
        return int(d)
    return float(d)


def _int_arg(text: str) -> int:
    v = _magnitude(text)
    if not isinstance(v, int):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return v


def _int_list(text: str) -> list[int]:
    return [_int_arg(part) for part in text.split(",") if part]


def _default_plimit() -> int:
    env = os.environ.get("PROPP_PLIMIT")
    return int(env) if env else constants.DEFAULT_CONSTANT_PLIMIT


def cmd_sieve(args) -> int:
    table = primes.sieve(args.limit, threads=args.threads)
    def emit(stream):
        if args.emit == "csv":
            for q in table.class3:
                stream.write(f"{int(q)}\n")
        else:
            _dump_json({
                "limit": table.limit,
                "prime_count": len(table.primes),
                "class3_count": len(table.class3),
                "class3": [int(q) for q in table.class3],
            }, stream)
    _write(args, emit)
    return 0


def cmd_construct(args) -> int:
    if args.all == (args.set_index is not None):
        raise PropPError("exactly one of --set-index and --all is required")
    if args.all:
        elements = construct.enumerate_s(args.limit, exclude_qi=args.exclude_qi)
    else:
        elements = construct.enumerate_s_i(args.set_index, args.limit,
                                           exclude_qi=args.exclude_qi)
    def emit(stream):
        if args.emit == "json":
            _dump_json({
                "limit": args.limit,
                "exclude_qi": args.exclude_qi,
                "count": len(elements),
                "elements": [asdict(e) for e in elements],
            }, stream)
        else:
            seqfile.write_sequence((e.value for e in elements), stream)
    _write(args, emit)
    return 0


def cmd_baseline(args) -> int:
    if args.kind == "squares":
        if args.limit is None:
            raise PropPError("--kind squares requires --limit")
        values = construct.baseline_squares(args.limit)
    else:
        if args.x is None:
            raise PropPError("--kind block requires --x")
        values = construct.finite_block(args.x)
    def emit(stream):
        if args.emit == "json":
            _dump_json({"kind": args.kind, "count": len(values),
                        "values": values}, stream)
        else:
            seqfile.write_sequence(values, stream)
    _write(args, emit)
    return 0


def cmd_verify(args) -> int:
    values = seqfile.read_sequence(args.input)
    kwargs = {"force": args.force, "threads": args.threads}
    if args.cap is not None:
        kwargs["cap"] = args.cap
    verdict = verify.check_property_p(values, **kwargs)
    def emit(stream):
        _dump_json({
            "holds": verdict.holds,
            "witness": list(verdict.witness) if verdict.witness else None,
            "witness_indices": (list(verdict.witness_indices)
                                if verdict.witness_indices else None),
            "triples_checked": verdict.triples_checked,
            "elements": len(values),
        }, stream)
    _write(args, emit)
    return 0 if verdict.holds else 1


def cmd_lemma1(args) -> int:
    result = verify.check_lemma1(args.n1, args.n2, args.n3)
    def emit(stream):
        if args.emit == "json":
            _dump_json({"outcome": result.outcome, "prime": result.prime}, stream)
        elif result.prime is None:
            stream.write(f"{result.outcome}\n")
        else:
            stream.write(f"{result.outcome} p={result.prime}\n")
    _write(args, emit)
    return 0 if result.outcome != verify.APPLICABLE_VIOLATED else 1


def _meng_kwargs(args) -> dict:
    return {"c34_limit": args.plimit, "h_plimit": args.h_plimit}


def cmd_pik(args) -> int:
    payload: dict = {"x": args.x, "k": args.k, "mode": args.mode}
    if args.mode in ("exact", "all"):
        payload["exact"] = counting.pi_k_exact(args.x, args.k, threads=args.threads)
    if args.mode in ("main", "all"):
        payload["meng_main"] = counting.meng_estimate(
            args.x, args.k, "main", **_meng_kwargs(args))
    if args.mode in ("full", "all"):
        payload["meng_full"] = counting.meng_estimate(
            args.x, args.k, "full", **_meng_kwargs(args))
        payload["neglected_term_scale"] = counting.meng_neglected_scale(args.x, args.k)
        payload["c34_truncation"] = args.plimit
    if args.mode == "all":
        payload["landau"] = counting.landau_term(args.x, args.k)
        if payload.get("meng_main"):
            payload["ratio_exact_to_main"] = payload["exact"] / payload["meng_main"]
    _write(args, lambda stream: _dump_json(payload, stream))
    return 0


_COMPARE_COLUMNS = ("x", "k", "exact", "landau", "meng_main", "meng_full", "ratio")


def cmd_compare(args) -> int:
    reports = counting.compare(args.x_grid, args.k_set, threads=args.threads,
                               **_meng_kwargs(args))
    def emit(stream):
        if args.emit == "json":
            _dump_json({"reports": [asdict(r) for r in reports]}, stream)
        else:
            stream.write(",".join(_COMPARE_COLUMNS) + "\n")
            for r in reports:
                cells = [str(r.x), str(r.k), str(r.exact)]
                for v in (r.landau, r.meng_main, r.meng_full, r.ratio_exact_to_main):
                    cells.append("" if v is None else f"{v:.10g}")
                stream.write(",".join(cells) + "\n")
    _write(args, emit)
    return 0


def cmd_count_s(args) -> int:
    per_index = {}
    total = 0
    for i in range(1, construct.max_set_index(args.limit,
                                              args.exclude_qi) + 1):
        count = len(construct.enumerate_s_i(i, args.limit, args.exclude_qi))
        per_index[i] = count
        total += count
    baseline = len(construct.baseline_squares(args.limit))
    try:
        env = constants.envelope(args.limit)
    except PropPError:
        env = None
    def emit(stream):
        if args.emit == "plain":
            for i, c in per_index.items():
                stream.write(f"S_{i}: {c}\n")
            stream.write(f"total: {total}\n")
            stream.write(f"baseline_squares: {baseline}\n")
            stream.write(f"envelope: {env}\n")
        else:
            _dump_json({
                "limit": args.limit,
                "per_index": per_index,
                "total": total,
                "baseline_squares": baseline,
                "envelope": env,
            }, stream)
    _write(args, emit)
    return 0


def cmd_constants(args) -> int:
    m_est = constants.mertens_m34(args.plimit, threads=args.threads)
    c_est = constants.c34(args.plimit, threads=args.threads)
    # the published 0.1485/0.1486 chain is specifically about the 1e4 truncation
    lp2 = constants.lambda_p2_sum(10 ** 4, threads=args.threads)
    h2 = constants.h_second(1.0 / 3.0, args.h_plimit, "analytic",
                            threads=args.threads)
    cc = constants.corollary_constant(1.0 / 3.0, c34_limit=args.plimit,
                                      h_plimit=args.h_plimit,
                                      threads=args.threads)
    checks = constants.bounds_report(args.plimit, args.h_plimit,
                                     threads=args.threads)
    payload = {
        "plimit": args.plimit,
        "h_plimit": args.h_plimit,
        "euler_mascheroni": constants.EULER_GAMMA,
        "m34": asdict(m_est),
        "c34": asdict(c_est),
        "lambda_p2": asdict(lp2),
        "h_second_at_one_third": h2,
        "corollary_constant": cc,
        "checks": [asdict(c) for c in checks],
        "all_passed": all(c.passed for c in checks),
    }
    _write(args, lambda stream: _dump_json(payload, stream))
    return 0


def cmd_bounds(args) -> int:
    checks = constants.bounds_report(args.plimit, args.h_plimit,
                                     threads=args.threads)
    ok = all(c.passed for c in checks)
    def emit(stream):
        if args.emit == "json":
            _dump_json({"checks": [asdict(c) for c in checks],
                        "all_passed": ok}, stream)
        else:
            for c in checks:
                status = "PASS" if c.passed else "FAIL"
                stream.write(f"{status} {c.name}: value={c.value:.6g} "
                             f"requirement: {c.requirement}\n")
    _write(args, emit)
    return 0 if ok else 1


def cmd_envelope(args) -> int:
    value = constants.envelope(args.x)
    _write(args, lambda stream: _dump_json({"x": args.x, "value": value}, stream))
    return 0


def cmd_theorem_terms(args) -> int:
    if (args.x is None) == (args.log_x is None):
        raise PropPError("exactly one of --x and --log-x is required")
    if args.x is not None:
        terms = constants.theorem_terms(args.x, args.j)
        shown = args.x
    else:
        terms = constants.theorem_terms_from_logs(args.log_x, args.j)
        shown = None
    payload = asdict(terms)
    if shown is not None:
        payload["x"] = shown
    else:
        payload["log_x"] = args.log_x
    _write(args, lambda stream: _dump_json(payload, stream))
    return 0


def _add_common(parser, emits, default_emit):
    parser.add_argument("--emit", choices=emits, default=default_emit)
    parser.add_argument("--out", help="write the report to this path")
    parser.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="propp",
        description="Property-P set construction, verification and counting")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="list primes in the class 3 mod 4")
    p.add_argument("--limit", type=_int_arg, required=True)
    _add_common(p, ("json", "csv"), "csv")
    p.set_defaults(fn=cmd_sieve)

    p = sub.add_parser("construct", help="enumerate the set S or one layer S_i")
    p.add_argument("--set-index", type=_int_arg)
    p.add_argument("--all", action="store_true")
    p.add_argument("--limit", type=_int_arg, required=True)
    p.add_argument("--exclude-qi", action="store_true",
                   help="require nu coprime to q_i")
    _add_common(p, ("plain", "json"), "plain")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("baseline", help="classical baseline sequences")
    p.add_argument("--kind", choices=("squares", "block"), required=True)
    p.add_argument("--limit", type=_int_arg)
    p.add_argument("--x", type=_int_arg)
    _add_common(p, ("plain", "json"), "plain")
    p.set_defaults(fn=cmd_baseline)

    p = sub.add_parser("verify", help="decide Property P for a sequence file")
    p.add_argument("--input", required=True)
    p.add_argument("--force", action="store_true")
    p.add_argument("--cap", type=_int_arg)
    _add_common(p, ("json",), "json")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("lemma1", help="square-sum divisibility witness test")
    p.add_argument("n1", type=_int_arg)
    p.add_argument("n2", type=_int_arg)
    p.add_argument("n3", type=_int_arg)
    _add_common(p, ("plain", "json"), "plain")
    p.set_defaults(fn=cmd_lemma1)

    p = sub.add_parser("pik", help="count k-almost-primes in the class")
    p.add_argument("--x", type=_int_arg, required=True)
    p.add_argument("--k", type=_int_arg, required=True)
    p.add_argument("--mode", choices=("exact", "main", "full", "all"),
                   default="exact")
    p.add_argument("--plimit", type=_int_arg, default=_default_plimit())
    p.add_argument("--h-plimit", type=_int_arg,
                   default=constants.DEFAULT_H_PLIMIT)
    _add_common(p, ("json",), "json")
    p.set_defaults(fn=cmd_pik)

    p = sub.add_parser("compare", help="exact counts against the asymptotics")
    p.add_argument("--x-grid", type=_int_list, required=True)
    p.add_argument("--k-set", type=_int_list, required=True)
    p.add_argument("--plimit", type=_int_arg, default=_default_plimit())
    p.add_argument("--h-plimit", type=_int_arg,
                   default=constants.DEFAULT_H_PLIMIT)
    _add_common(p, ("csv", "json"), "csv")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("count-s", help="per-layer counts and the envelope")
    p.add_argument("--limit", type=_int_arg, required=True)
    p.add_argument("--exclude-qi", action="store_true")
    _add_common(p, ("json", "plain"), "json")
    p.set_defaults(fn=cmd_count_s)

    p = sub.add_parser("constants", help="all named constants with bound checks")
    p.add_argument("--plimit", type=_int_arg, default=_default_plimit())
    p.add_argument("--h-plimit", type=_int_arg,
                   default=constants.DEFAULT_H_PLIMIT)
    _add_common(p, ("json",), "json")
    p.set_defaults(fn=cmd_constants)

    p = sub.add_parser("bounds", help="run the inequality suite, exit 1 on failure")
    p.add_argument("--plimit", type=_int_arg, default=_default_plimit())
    p.add_argument("--h-plimit", type=_int_arg,
                   default=constants.DEFAULT_H_PLIMIT)
    _add_common(p, ("plain", "json"), "plain")
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("envelope", help="the counting-function envelope at x")
    p.add_argument("--x", type=_magnitude, required=True)
    _add_common(p, ("json",), "json")
    p.set_defaults(fn=cmd_envelope)

    p = sub.add_parser("theorem-terms", help="per-layer bound factors at (x, j)")
    p.add_argument("--x", type=_magnitude)
    p.add_argument("--log-x", type=float)
    p.add_argument("--j", type=_int_arg, required=True)
    _add_common(p, ("json",), "json")
    p.set_defaults(fn=cmd_theorem_terms)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except PropPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
