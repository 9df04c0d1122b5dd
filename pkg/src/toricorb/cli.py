"""Command line front end.

Exit codes: 0 success, 1 usage, 2 input or validation error, 3 internal
invariant breach (a computed result contradicts a proven statement).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys

from . import charpair, properiso, suites
from .cellmodel import CellModel, DomainError, models_in_range, toric_witness_exists
from .lensoracle import verify_lens_proposition

OK, USAGE, BAD_INPUT, BREACH = 0, 1, 2, 3


class InputError(Exception):
    pass


class Breach(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE)


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out: str = None):
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _dump(obj) -> str:
    return json.dumps(obj)


def _load_model(path: str) -> CellModel:
    try:
        return CellModel.from_json(_read(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_analyze(args) -> int:
    text = _read(args.path)
    try:
        pair = charpair.CharacteristicPair.from_json(text)
    except ValueError as exc:
        raise InputError(f"{args.path}: {exc}") from exc
    try:
        report = charpair.analyze(pair)
    except charpair.InvalidPairError as exc:
        raise InputError("invalid characteristic pair:\n  " + "\n  ".join(exc.violations))
    except charpair.AnomalyError as exc:
        raise Breach(str(exc))
    _emit(json.dumps(report), args.out)
    return OK


def cmd_decide(args) -> int:
    X, Y = _load_model(args.path_a), _load_model(args.path_b)
    if (X.n, X.g) != (Y.n, Y.g):
        raise InputError(f"models differ in (n, g): {(X.n, X.g)} vs {(Y.n, Y.g)}")
    v = properiso.decide(X, Y, args.bound)
    problems = []
    if v.homotopy_equivalent and not v.properly_isomorphic:
        problems.append("homotopy equivalent but not properly isomorphic")
    if v.witness is not None and properiso.check_proper_iso(v.witness, X, Y):
        problems.append("witness fails check_proper_iso")
    if X.n <= 1 and not v.complete:
        problems.append("search reported incomplete for n <= 1")
    _emit(_dump(v.to_dict()), args.out)
    if problems:
        raise Breach("; ".join(problems))
    return OK


def parse_range(text: str) -> range:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text or "")
    if not m:
        raise InputError(f"--a-range must look like lo..hi, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise InputError(f"--a-range is empty: {text}")
    return range(lo, hi + 1)


def classification_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["model", "n", "g", "A", "b", "c", "pi_class", "he_class", "h"])
    pi_of = {i: k for k, cls in enumerate(report["pi_classes"]) for i in cls}
    he_of = {i: k for k, cls in enumerate(report["he_classes"]) for i in cls}
    for i, m in enumerate(report["models"]):
        w.writerow([i, m["n"], m["g"], json.dumps(m["A"]), json.dumps(m["b"]), m["c"],
                    pi_of[i], he_of[i], report["h_values"][pi_of[i]]])
    return buf.getvalue()


def classify_family(n: int, g: int, a_values, toric_only: bool, bound: int) -> dict:
    family = models_in_range(n, g, list(a_values))
    if toric_only:
        if g % 2:
            raise InputError("--toric-only needs g even (the witness lives over Z/2^r, r >= 1)")
        family = [X for X in family
                  if all(X.A[i][i] % 2 == 0 for i in range(n)) and toric_witness_exists(X)]
    if not family:
        raise InputError("no models in the requested range")
    report = properiso.classify(family, bound)
    out = report.to_dict()
    out["parameters"] = {"n": n, "g": g, "a_range": [min(a_values), max(a_values)],
                         "toric_only": toric_only, "bound": bound}
    out["theorem_check"] = {
        "odd_g_all_h_one": (g % 2 == 0) or all(h == 1 for h in report.h_values),
        "all_h_at_most_two": all(h <= 2 for h in report.h_values),
        "he_refines_pi": not any("homotopy class" in v for v in report.violations),
        "pass": not report.violations,
    }
    return out


def cmd_classify(args) -> int:
    if args.n < 0 or args.g < 1:
        raise InputError("need --n >= 0 and --g >= 1")
    a_values = parse_range(args.a_range)
    params = {"n": args.n, "g": args.g, "a_range": [a_values[0], a_values[-1]],
              "toric_only": args.toric_only, "bound": args.bound}
    report = None
    if args.out and os.path.exists(args.out):
        # reuse a cached result for identical parameters
        try:
            with open(args.out) as fh:
                cached = json.load(fh)
            if cached.get("parameters") == params:
                properiso.ClassificationReport.from_dict(cached)
                report = cached
        except (ValueError, KeyError, TypeError):
            report = None
    if report is None:
        report = classify_family(args.n, args.g, a_values, args.toric_only, args.bound)
        _emit(_dump(report), args.out)
    elif not args.out:
        _emit(_dump(report))
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(classification_csv(report))
    if args.out:
        print(f"classified {len(report['models'])} models into {len(report['pi_classes'])} "
              f"proper classes, max h = {report['max_h']} -> {args.out}", file=sys.stderr)
    if not report["theorem_check"]["pass"]:
        raise Breach("; ".join(report["theorem_violations"]))
    return OK


def cmd_lens_verify(args) -> int:
    try:
        report = verify_lens_proposition(args.b, args.a, args.s_max)
    except (DomainError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    _emit(_dump(report), args.out)
    if not report["pass"]:
        raise Breach("lens proposition check failed")
    return OK


def run_selftest(seed: int = 0, quick: bool = False) -> dict:
    if quick:
        runs = {
            "pontryagin_axioms": suites.pontryagin_axioms(seed, instances=100),
            "commutator_calculus": suites.commutator_calculus(gs=(2,)),
            "lens_properties": suites.lens_properties(seed, lenses=((2, 1), (4, 1)), trials=1),
        }
    else:
        runs = {
            "pontryagin_axioms": suites.pontryagin_axioms(seed),
            "commutator_calculus": suites.commutator_calculus(),
            "lens_properties": suites.lens_properties(seed),
        }
    return runs


def cmd_selftest(args) -> int:
    runs = run_selftest(args.seed, args.quick)
    summary = {name: {"pass": suites.all_passed(res), "checks": suites.summarize(res)}
               for name, res in runs.items()}
    _emit(_dump({"seed": args.seed, "quick": args.quick, "suites": summary,
                 "pass": all(s["pass"] for s in summary.values())}), args.out)
    for name, res in runs.items():
        for check, r in res.items():
            if not r.passed:
                first = r.failures[0] if r.failures else "no instances evaluated"
                raise Breach(f"{name}/{check} failed: {first}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toricorb", description="Homotopy types of 4-dimensional toric orbifolds.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="invariants of a characteristic pair")
    a.add_argument("path")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("decide", help="proper isomorphism / homotopy equivalence of two models")
    d.add_argument("path_a")
    d.add_argument("path_b")
    d.add_argument("--bound", type=int, default=3)
    d.set_defaults(func=cmd_decide)

    c = sub.add_parser("classify", help="classify all models in a range")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--g", type=int, required=True)
    c.add_argument("--a-range", required=True, help="diagonal entries, e.g. -2..2")
    c.add_argument("--toric-only", action="store_true")
    c.add_argument("--bound", type=int, default=3)
    c.add_argument("--csv", help="also write a CSV table to this path")
    c.set_defaults(func=cmd_classify)

    l = sub.add_parser("lens-verify", help="check Postnikov squares on L(b; a)")
    l.add_argument("--b", type=int, required=True)
    l.add_argument("--a", type=int, required=True)
    l.add_argument("--s-max", type=int, default=3)
    l.set_defaults(func=cmd_lens_verify)

    s = sub.add_parser("selftest", help="run the invariant suites")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--quick", action="store_true")
    s.set_defaults(func=cmd_selftest)

    for sp in (a, d, c, l, s):
        sp.add_argument("--out", help="write the report here instead of standard output")
    return p


def _glue_ranges(argv):
    # "--a-range -2..2" would otherwise be read as an option
    out = list(argv)
    for i in range(len(out) - 1):
        if out[i] == "--a-range" and out[i + 1].startswith("-"):
            out[i:i + 2] = [f"--a-range={out[i + 1]}", ""]
    return [x for x in out if x != ""]


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(_glue_ranges(argv))
    if getattr(args, "bound", 1) < 1:
        print("error: --bound must be positive", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except Breach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return BREACH


if __name__ == "__main__":
    sys.exit(main())
