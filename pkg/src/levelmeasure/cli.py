"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import warnings
from fractions import Fraction
from importlib import resources

from .glm import (
    bounds_chain_check,
    duality_identity_check,
    example_step_data,
    glm,
    glm_const,
    glm_step,
    gsf,
    gsf_const,
    gsf_step,
    level_measure,
    level_step,
    product_table_data,
    survival_function,
    survival_step,
)
from . import integrals as I
from .cao import Cao, Pfca, builtin, check_C1_C2, check_property, check_sandwich
from .measure import MeasureViolation, validate_monotone
from .numeric import fmt
from .scientometrics import (
    UnsortedRecordWarning,
    compute_indices,
    glm_index,
    index_spec,
    read_records,
)
from .specs import (
    SpecError,
    dump_number,
    parse_cao,
    parse_function,
    parse_measure,
    parse_paving,
    parse_semicopula,
)

EXIT_OK, EXIT_INVALID, EXIT_INPUT = 0, 1, 2
DEFAULT_INDICES = ("h", "g", "h2", "t", "f", "p")


class ValidationFailure(Exception):
    pass


# --- output ----------------------------------------------------------------------

def _cell(v) -> str:
    return v if isinstance(v, str) else fmt(v)


def render_rows(rows: list[dict], form: str) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    if form == "json":
        return json.dumps([{k: (v if isinstance(v, str) else dump_number(v)) for k, v in r.items()}
                           for r in rows], indent=2)
    if form == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r[c]) for c in cols])
        return buf.getvalue().rstrip("\n")
    cells = [[str(c) for c in cols]] + [[_cell(r[c]) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    lines = ["  ".join(s.rjust(w) for s, w in zip(row, widths)) for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_step(step, form: str) -> str:
    if form == "json":
        return step.to_json()
    if form == "csv":
        return step.to_csv().rstrip("\n")
    return step.describe()


# --- subcommands -----------------------------------------------------------------------

def cmd_indices(args) -> int:
    text = _read_text(args.records)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnsortedRecordWarning)
        try:
            records = read_records(text, sort=not args.strict)
        except ValueError as e:
            raise SpecError(f"{args.records}: {e}") from None
    names = [s.strip() for s in args.index.split(",") if s.strip()] if args.index else list(DEFAULT_INDICES)
    for name in names:
        index_spec(name)  # reject unknown names early
    rows = compute_indices(records, names)
    if args.verify:
        for rec, row in zip(records, rows):
            for name in names:
                via_glm = glm_index(index_spec(name), rec)
                if via_glm != row[name]:
                    raise ValidationFailure(f"{name}: formula {row[name]} != operator form {via_glm}")
    print(render_rows(rows, args.format))
    return EXIT_OK


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise SpecError(str(e)) from None


def _inputs(args):
    mu = parse_measure(args.measure)
    f = parse_function(args.function, mu.n)
    paving = parse_paving(args.paving, mu.n) if getattr(args, "paving", None) else None
    return mu, f, paving


def cmd_glm(args) -> int:
    mu, f, paving = _inputs(args)
    op = parse_cao(args.cao, mu) if args.cao else builtin("inf")
    if args.kind in ("level", "survival"):
        if args.at:
            fn = level_measure if args.kind == "level" else survival_function
            rows = [{"a": a, args.kind: fn(mu, f, a)} for a in args.at]
            print(render_rows(rows, args.format))
        else:
            step = level_step(mu, f) if args.kind == "level" else survival_step(mu, f)
            print(render_step(step, args.format))
        return EXIT_OK
    if isinstance(op, Pfca):
        if not args.at:
            raise SpecError("parametric families are evaluated pointwise; pass --at")
        if paving is not None:
            raise SpecError("parametric families carry their own pavings")
        fn = glm if args.kind == "glm" else gsf
        rows = [{"t": t, args.kind: fn(op, mu, f, t)} for t in args.at]
        print(render_rows(rows, args.format))
        return EXIT_OK
    if args.kind == "glm":
        op = op.with_empty(float("inf"))
        point, step = glm_const, glm_step
    else:
        op = op.with_empty(0)
        point, step = gsf_const, gsf_step
    if args.at:
        rows = [{"a": a, args.kind: point(op, mu, f, a, paving)} for a in args.at]
        print(render_rows(rows, args.format))
    else:
        print(render_step(step(op, mu, f, paving), args.format))
    return EXIT_OK


def cmd_integrate(args) -> int:
    mu, f, paving = _inputs(args)
    kind = args.kind
    if kind == "choquet":
        value = I.choquet(mu, f, args.variant)
    elif kind == "sugeno":
        value = I.sugeno(mu, f, args.variant)
    elif kind == "seminormed":
        S = parse_semicopula(args.semicopula or "min")
        value = I.seminormed(S, mu, f, args.variant)
    else:
        op = parse_cao(args.cao, mu) if args.cao else builtin("inf")
        if not isinstance(op, Cao):
            raise SpecError("functionals need a single operator, not a parametric family")
        fn = I.glm_functional if kind == "glm_functional" else I.gsf_functional
        value = fn(op, mu, f, paving)
    print(render_rows([{"integral": kind, "variant": args.variant, "value": value}], args.format))
    return EXIT_OK


def cmd_check(args) -> int:
    target = args.target
    spec = args.spec
    if target == "measure":
        try:
            mu = parse_measure(spec)
        except MeasureViolation as e:
            print(f"FAIL: {e}")
            return EXIT_INVALID
        print(f"pass: monotone measure on {mu.n} elements, mu(X) = {fmt(mu.total)}")
        return EXIT_OK
    if target == "semicopula":
        S = parse_semicopula(spec)
        try:
            I.validate_semicopula(S)
        except ValueError as e:
            print(f"FAIL: {e}")
            return EXIT_INVALID
        note = " (jumps along a = 1/2; left limits supplied)" if S.name == "jump_example" else ""
        print(f"pass: {S.name} is a semicopula on the grid{note}")
        return EXIT_OK
    n = args.n
    measure = parse_measure(args.measure) if args.measure else None
    if n is None:
        n = measure.n if measure is not None else 3
    op = parse_cao(spec, measure, n)
    results = []
    if target == "cao":
        if not isinstance(op, Cao):
            raise SpecError("expected a single operator; use 'check pfca' for families")
        results.append(check_C1_C2(op, n, trials=args.trials, seed=args.seed, exhaustive=n <= 3))
        if args.sandwich:
            results.append(check_sandwich(op, n, trials=args.trials, seed=args.seed))
    elif target == "pfca":
        if not isinstance(op, Pfca):
            raise SpecError("expected a parametric family")
        for tag, val in sorted(op.tags.items()):
            if tag in ("nondecreasing", "nonincreasing"):
                results.append(check_property(op, "pfca_monotone", n, args.trials, args.seed, direction=tag))
            elif tag in ("nondecreasing_wrt_sets", "nonincreasing_wrt_sets"):
                results.append(check_property(op, "monotone_wrt_sets", n, args.trials, args.seed,
                                              direction=tag.split("_")[0]))
            elif tag in ("homogeneous", "superhomogeneous"):
                results.append(check_property(op, tag, n, args.trials, args.seed, theta=val))
            elif tag in ("quasi_superadditive", "quasi_subadditive"):
                results.append(check_property(op, tag, n, args.trials, args.seed, c=val))
    ok = True
    for r in results:
        line = str(r)
        if not r.ok and r.witness:
            line += " " + json.dumps({k: _jsonable(v) for k, v in r.witness.items()})
        print(line)
        ok &= r.ok
    return EXIT_OK if ok else EXIT_INVALID


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return dump_number(v) if not isinstance(v, (int, str)) else v


# --- demos ----------------------------------------------------------------------------

def _demo_ex43c() -> str:
    cao, mu, f, paving = example_step_data()
    step = glm_step(cao, mu, f, paving)
    return "\n".join(["sup operator, paving {0, {1}, {2}, {2,3}}, f = (0.25, 0.75, 1)",
                      step.describe(), step.to_json()])


def _demo_ex321() -> str:
    mu, f = ex321_data()
    S = I.semicopula("jump_example")
    lvl = I.seminormed(S, mu, f, "level")
    srv = I.seminormed(S, mu, f, "survival")
    return f"level variant: {fmt(lvl)}\nsurvival variant: {fmt(srv)}"


def ex321_data():
    from .measure import measure_from_function
    mu = measure_from_function(3, lambda m: Fraction(1, 2) if m else 0)
    return mu, (Fraction(1, 2), 0, 0)


def _demo_table1() -> str:
    cao, mu, f = product_table_data()
    step = glm_step(cao, mu, f)
    names = {v: m for m, v in enumerate(mu.values)}
    lines = ["interval -> value (set attaining it)"]
    for i, (lo, hi, v) in enumerate(step.pieces()):
        left = "[" if i == 0 else "("
        right = ")" if hi == float("inf") else "]"
        where = mu.ground.describe(names[v]) if v else "-"
        lines.append(f"{left}{_frac(lo)}, {_frac(hi)}{right} -> {fmt(v)} {where}")
    return "\n".join(lines)


def _frac(x) -> str:
    if x == float("inf"):
        return "inf"
    q = Fraction(x)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def duality_demo_data():
    from .cao import moment_family
    from .measure import MeasureFamily, possibility_measure

    def pi(t):
        return (1, Fraction(1, 2), Fraction(1, 4)) if t <= Fraction(1, 2) else (Fraction(1, 4), 1, Fraction(1, 2))

    family = MeasureFamily(lambda t: possibility_measure(pi(t)), "general", True)
    pf = moment_family([1, 1, 1], n=3)
    f = (1, Fraction(1, 16), Fraction(1, 256))
    return pf, family, f, [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]


def _demo_duality() -> str:
    pf, family, f, ts = duality_demo_data()
    lines = ["possibility family, A_t = E_P(f^t | E) with uniform P, b = 1",
             "t  glm(f, t)  mu_0(X) - gsf_dual(1 - f, 1 - t)"]
    for t in ts:
        lhs, rhs = duality_identity_check(pf, family, 1, f, t)
        lines.append(f"{_frac(t)}  {fmt(lhs)}  {fmt(rhs)}  {'equal' if lhs == rhs else 'DIFFERENT'}")
    return "\n".join(lines)


def _demo_bounds() -> str:
    mu = validate_monotone([0, Fraction(1, 4), Fraction(1, 8), Fraction(1, 2),
                            Fraction(3, 8), Fraction(1, 2), Fraction(5, 8), 1])
    f = (Fraction(1, 4), 1, Fraction(1, 2))
    cao = builtin("geo_mean")
    lines = ["geometric mean, f = (1/4, 1, 1/2)", "a  gsf  mu(f>a)  mu(f>=a)  glm"]
    for a in (0, Fraction(1, 8), Fraction(1, 4), Fraction(3, 8), Fraction(1, 2), Fraction(3, 4), 1, 2):
        c = bounds_chain_check(cao, mu, f, a)
        lines.append("  ".join([_frac(a), *(fmt(v) for v in c)]))
    return "\n".join(lines)


DEMOS = {
    "ex43c": _demo_ex43c,
    "ex321": _demo_ex321,
    "table1": _demo_table1,
    "duality": _demo_duality,
    "bounds": _demo_bounds,
}


def expected_output(name: str) -> str:
    return resources.files("levelmeasure").joinpath("expected", f"{name}.txt").read_text().rstrip("\n")


def cmd_demo(args) -> int:
    names = list(DEMOS) if args.name == "all" else [args.name]
    ok = True
    for name in names:
        got = DEMOS[name]()
        want = expected_output(name)
        print(f"== {name}")
        print(got)
        if got == want:
            print("matches stored output")
        else:
            ok = False
            import difflib
            print("MISMATCH against stored output:")
            print("\n".join(difflib.unified_diff(want.splitlines(), got.splitlines(),
                                                 "expected", "computed", lineterm="")))
    return EXIT_OK if ok else EXIT_INVALID


# --- parser ------------------------------------------------------------------------------

def _number(s: str):
    from .numeric import to_number
    try:
        v = to_number(s)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("query points must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="levelmeasure", description="Generalized level measures and friends.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("indices", parents=[common], help="citation indices for records")
    s.add_argument("--records", required=True, help="CSV or JSON records file ('-' for stdin)")
    s.add_argument("--index", help="comma-separated names, e.g. h,g,h_a(2),media(1000)")
    s.add_argument("--strict", action="store_true", help="reject unsorted records")
    s.add_argument("--verify", action="store_true", help="cross-check against the operator form")
    s.set_defaults(func=cmd_indices)

    def measure_inputs(sp):
        sp.add_argument("--measure", required=True, help="measure spec (JSON file or inline)")
        sp.add_argument("--function", required=True, help="values like 0.25,0.75,1")
        sp.add_argument("--paving", help="paving spec (default: all subsets)")
        sp.add_argument("--cao", help="operator spec (default: infimum)")

    s = sub.add_parser("glm", parents=[common], help="generalized level measure / survival function")
    measure_inputs(s)
    s.add_argument("--kind", choices=("glm", "gsf", "level", "survival"), default="glm")
    s.add_argument("--at", type=_number, nargs="+", help="evaluate at these points instead of a step function")
    s.set_defaults(func=cmd_glm)

    s = sub.add_parser("integrate", parents=[common], help="nonadditive integrals")
    s.add_argument("kind", choices=("choquet", "sugeno", "seminormed", "glm_functional", "gsf_functional"))
    measure_inputs(s)
    s.add_argument("--variant", choices=I.VARIANTS, default="level")
    s.add_argument("--semicopula", help="min, prod, lukasiewicz or jump_example")
    s.set_defaults(func=cmd_integrate)

    s = sub.add_parser("check", parents=[common], help="validate a measure, operator, family or semicopula")
    s.add_argument("target", choices=("measure", "cao", "pfca", "semicopula"))
    s.add_argument("--spec", required=True)
    s.add_argument("--measure", help="measure for ess_inf operators")
    s.add_argument("--n", type=int, help="ground-set size for operator checks")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--sandwich", action="store_true", help="also check inf <= A <= sup")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("demo", parents=[common], help="recompute a worked example")
    s.add_argument("name", choices=(*DEMOS, "all"))
    s.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    try:
        return args.func(args)
    except MeasureViolation as e:
        print(f"invalid measure: {e}", file=sys.stderr)
        return EXIT_INVALID
    except ValidationFailure as e:
        print(f"validation failed: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (SpecError, ValueError, TypeError, KeyError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
