"""Command-line front end: verify, census, classify, demo and list."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .gf_tower import field
from .verify import (CENSUS_KINDS, ORDER, STATEMENTS, CheckParams, HypothesisError, UsageError,
                     census, classify_point_set, demo_plan, run_check, run_many)
from .verify.classify import point_set_from_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _field_args(p: argparse.ArgumentParser, required: bool = True):
    g = p.add_argument_group("field")
    g.add_argument("--p", type=int, help="characteristic")
    g.add_argument("--h", type=int, default=1, help="q = p^h")
    g.add_argument("--n", type=int, help="extension degree of F_(q^n) over F_q")
    g.add_argument("--field-spec", type=Path, help="JSON file {p, h, n, irreducible}")


def _out_args(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--output", type=Path, help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="abbrep", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run one statement check")
    v.add_argument("--stmt", required=True, help="statement id (see `list`)")
    _field_args(v)
    v.add_argument("--k", type=int)
    v.add_argument("--mode", choices=("exhaustive", "sample"), default="sample")
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    _out_args(v)

    c = sub.add_parser("census", help="run one counting census")
    c.add_argument("--kind", required=True, choices=CENSUS_KINDS)
    _field_args(c)
    c.add_argument("--k", type=int)
    _out_args(c)

    k = sub.add_parser("classify", help="classify a JSON point set of Sigma")
    k.add_argument("points", type=Path, help="JSON list of points, or {field, points}")
    _field_args(k, required=False)
    _out_args(k)

    d = sub.add_parser("demo", help="run the default parameter grid")
    d.add_argument("--seed", type=int, default=0)
    _out_args(d)

    sub.add_parser("list", help="list statement ids")
    return ap


def _field_spec(args) -> dict:
    if args.field_spec is not None:
        try:
            spec = json.loads(args.field_spec.read_text())
        except (OSError, ValueError) as e:
            raise UsageError(f"cannot read field spec: {e}")
        return {"p": int(spec["p"]), "h": int(spec.get("h", 1)), "n": int(spec["n"]),
                "irreducible": spec.get("irreducible")}
    if args.p is None or args.n is None:
        raise UsageError("give --p and --n, or --field-spec")
    return {"p": args.p, "h": args.h, "n": args.n, "irreducible": None}


def _ctx(spec):
    try:
        return field(spec["p"], spec["h"], spec["n"], spec["irreducible"])
    except ValueError as e:
        raise UsageError(str(e))


def _emit(args, text: str):
    if args.output is not None:
        args.output.write_text(text + "\n")
    else:
        print(text)


def _report_text(r) -> str:
    p = r.params
    k = "" if p.get("k") is None else f" k={p['k']}"
    return (f"{r.statement} q={p['q']} n={p['n']}{k} {r.mode}: {r.verdict} "
            f"(checked {r.checked}, failed {r.failed}, {r.elapsed_ms} ms)")


def _cmd_verify(args) -> int:
    spec = _field_spec(args)
    _ctx(spec)
    irr = tuple(spec["irreducible"]) if spec["irreducible"] else None
    cp = CheckParams(args.stmt, spec["p"], spec["h"], spec["n"], args.k, args.mode, args.samples,
                     args.seed, irr)
    r = run_check(cp)
    _emit(args, r.dumps() if args.format == "json" else _report_text(r))
    return EXIT_OK if r.verdict == "pass" else EXIT_FAIL


def _cmd_census(args) -> int:
    ctx = _ctx(_field_spec(args))
    res = census(args.kind, ctx, args.k)
    if args.format == "json":
        _emit(args, json.dumps(res.to_json(), sort_keys=True))
    else:
        _emit(args, f"{res.kind} q={ctx.q} n={ctx.n}: computed {res.computed} vs formula {res.formula} "
                    f"({res.verdict})")
    return EXIT_OK if res.passed else EXIT_FAIL


def _cmd_classify(args) -> int:
    try:
        data = json.loads(args.points.read_text())
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read point set: {e}")
    if isinstance(data, dict):
        spec = data.get("field")
        pts = data.get("points", [])
        if spec is None:
            spec = _field_spec(args)
        else:
            spec = {"p": spec["p"], "h": spec.get("h", 1), "n": spec["n"], "irreducible": spec.get("irreducible")}
    else:
        spec, pts = _field_spec(args), data
    ctx = _ctx(spec)
    try:
        points = point_set_from_json(ctx, pts)
    except (ValueError, TypeError, KeyError) as e:
        raise UsageError(f"bad point: {e}")
    rec = classify_point_set(ctx, points)
    if args.format == "json":
        _emit(args, json.dumps(rec, sort_keys=True))
    else:
        extra = f", k={rec['k']}, {rec['theorem']}" if "k" in rec else f" ({rec.get('reason')})"
        _emit(args, f"{rec['match']}{extra}")
    return EXIT_OK


def _cmd_demo(args) -> int:
    reports = run_many(demo_plan(args.seed))
    if args.format == "json":
        _emit(args, "\n".join(r.dumps() for r in reports))
    else:
        _emit(args, "\n".join(_report_text(r) for r in reports))
    return EXIT_OK if all(r.verdict == "pass" for r in reports) else EXIT_FAIL


def _cmd_list(args) -> int:
    for sid in ORDER:
        print(f"{sid:6} {STATEMENTS[sid].anchor}")
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return {"verify": _cmd_verify, "census": _cmd_census, "classify": _cmd_classify,
                "demo": _cmd_demo, "list": _cmd_list}[args.command](args)
    except HypothesisError as e:
        print(f"hypothesis violation: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
