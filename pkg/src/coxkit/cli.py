"""``coxkit`` command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, List, Optional

from . import fixtures
from .classify import INFINITE, classify_all, describe, group_order
from .closure import (
    ClosureError,
    check_hypothesis,
    closure_matrix,
    generator_count,
    is_right_angled_closure,
    serialize_closure,
)
from .diagram import DiagramError, parse_diagram, serialize
from .growth import GrowthError, closure_growth_by_specialization, growth, growth_from_f
from .nerve import NerveError, enumerate_sigma, f_by_grade, f_closure, f_link, load_linkspec
from .numeric import RootError, approx_roots, format_root, poles_of_growth, round_sig, sturm_real_count
from .series import MultiPoly, RationalFn
from .words import CapExceeded, reduce


class InputError(Exception):
    pass


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any
    passed: bool
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "expected": _jsonable(self.expected), "actual": _jsonable(self.actual),
                "pass": self.passed}


@dataclass
class RunReport:
    command: List[str]
    fingerprint: str = ""
    results: dict = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "fingerprint": self.fingerprint,
            "results": self.results,
            "checks": [c.to_json() for c in self.checks],
        }


def _jsonable(x):
    if isinstance(x, (MultiPoly, RationalFn)):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if x is INFINITE:
        return "inf"
    return x


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    text = _read(path)
    try:
        return parse_diagram(text)
    except DiagramError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(args, report: RunReport, lines: List[str]):
    if getattr(args, "json", False):
        print(dump_json(report.to_json()))
    else:
        for line in lines:
            print(line)


# -- thin subcommands ----------------------------------------------------------


def cmd_validate(args) -> RunReport:
    d = _load(args.file)
    report = RunReport(args.argv, d.fingerprint())
    report.results = {"rank": d.rank, "T": d.names_of(d.T), "partition": list(d.phi())}
    lines = [f"ok: {d.rank} generators, fingerprint {d.fingerprint()}"]
    if d.t_set is not None:
        lines.append("T = {" + " ".join(d.names_of(d.T)) + "}")
        violation = check_hypothesis(d)
        if violation is not None:
            lines.append(f"closure hypothesis fails: {violation}")
            report.results["closure_hypothesis"] = str(violation)
    if args.canonical:
        lines.append(serialize(d).rstrip("\n"))
    _emit(args, report, lines)
    return report


def cmd_classify(args) -> RunReport:
    d = _load(args.file)
    a = d.mask(args.subset.split(",")) if args.subset else d.full
    report = RunReport(args.argv, d.fingerprint())
    order = group_order(d, a)
    report.results = {
        "components": [{"generators": names, "type": str(t)} for names, t in classify_all(d, a)],
        "order": order,
    }
    lines = [describe(d, a)]
    if len(report.results["components"]) > 1:
        lines += [f"  {' '.join(c['generators'])}: {c['type']}" for c in report.results["components"]]
    _emit(args, report, lines)
    return report


def cmd_growth(args) -> RunReport:
    d = _load(args.file)
    report = RunReport(args.argv, d.fingerprint())
    if args.closure:
        res = closure_growth_by_specialization(d)
    else:
        res = growth(d)
    report.results = res.to_json()
    lines = [f"route: {res.route}", f"W = {res.series}"]
    if args.taylor is not None:
        single = growth(d, phi=("x",) * d.rank) if not args.closure else res
        flat = single.series.rename({v: "x" for v in single.series.vars})
        coeffs = flat.taylor("x", args.taylor)
        report.results["taylor"] = [str(c) for c in coeffs]
        lines.append(",".join(str(c) for c in coeffs))
    _emit(args, report, lines)
    return report


def cmd_closure(args) -> RunReport:
    d = _load(args.file)
    if d.t_set is None:
        raise InputError("diagram declares no T")
    report = RunReport(args.argv, d.fingerprint())
    counts = generator_count(d)
    ra = is_right_angled_closure(d)
    report.results = {"generators": counts, "total": sum(counts.values()), "right_angled": ra}
    lines = [f"closure generators: {sum(counts.values())} ("
             + ", ".join(f"{k}: {v}" for k, v in counts.items()) + ")",
             f"right-angled: {'yes' if ra else 'no'}"]
    if args.matrix or args.emit_diagram:
        pres = closure_matrix(d, workers=args.threads)
        if pres.matrix is None:
            raise InputError(f"{len(pres.generators)} generators exceed the pair limit; matrix not built")
        names = [g.name(d) for g in pres.generators]
        if args.matrix:
            report.results["names"] = names
            report.results["matrix"] = [[_jsonable(m) for m in row] for row in pres.matrix]
            width = max(len(n) for n in names)
            for n, row in zip(names, pres.matrix):
                lines.append(f"{n:<{width}}  " + " ".join(f"{str(m):>3}" for m in row))
        if args.emit_diagram:
            with open(args.emit_diagram, "w", encoding="utf-8") as fh:
                fh.write(serialize_closure(d, pres))
            lines.append(f"wrote {args.emit_diagram}")
    _emit(args, report, lines)
    return report


def cmd_nerve_f(args) -> RunReport:
    d = _load(args.file)
    report = RunReport(args.argv, d.fingerprint())
    phi = "t" if args.diagonal else None
    if args.link:
        spec = _read(args.link) if os.path.exists(args.link) else args.link
        sigma = load_linkspec(d, spec)
        f = f_link(d, None, sigma, phi)
        report.results["link"] = sigma.describe(d)
    else:
        f = f_closure(d, None, phi)
    report.results["f"] = f.to_json()
    if args.diagonal:
        report.results["coefficients"] = [str(c) for c in f.coefficients("t")]
    lines = [f"f = {f}"]
    if args.families:
        for fam in enumerate_sigma(d):
            lines.append(f"  [{fam.total}] {fam.describe(d)}")
    _emit(args, report, lines)
    return report


def _parse_poly_arg(text: str):
    try:
        return [Fraction(c.strip()) for c in text.split(",") if c.strip()]
    except ValueError:
        raise InputError(f"bad coefficient list {text!r}") from None


def cmd_roots(args) -> RunReport:
    report = RunReport(args.argv)
    if args.poly:
        rep = approx_roots(_parse_poly_arg(args.poly), args.digits)
    else:
        text = _read(args.file).strip()
        if text.startswith("{"):
            obj = json.loads(text)
            if "num" in obj:
                rep = poles_of_growth(RationalFn.from_json(obj), args.digits)
            else:
                rep = approx_roots(MultiPoly.from_json(obj), args.digits)
        else:
            rep = approx_roots(_parse_poly_arg(text.replace("\n", ",")), args.digits)
    report.results = rep.to_json()
    lines = [f"distinct real roots (exact): {rep.real_count}",
             "roots: " + ", ".join(rep.rounded()),
             f"max scaled residual: {rep.residual:.3g}"]
    if not rep.converged:
        report.checks.append(Check("convergence", True, False, False))
        lines.append("warning: iteration did not converge to the residual bound")
    _emit(args, report, lines)
    return report


def cmd_reduce(args) -> RunReport:
    d = _load(args.file)
    w = d.word(args.word)
    e = reduce(d, w, backend=args.backend)
    report = RunReport(args.argv, d.fingerprint())
    report.results = {"input": list(args.word), "normal_form": d.word_names(e.word), "length": e.length}
    _emit(args, report, [f"{e.format(d)}  (length {e.length})"])
    return report


# -- the bundled example -------------------------------------------------------------


def _timed(report: RunReport, name: str, expected, compute: Callable[[], Any],
           compare: Optional[Callable[[Any, Any], bool]] = None):
    t0 = time.perf_counter()
    try:
        actual = compute()
        passed = compare(expected, actual) if compare else actual == expected
    except (GrowthError, NerveError, ClosureError, RootError, CapExceeded, ArithmeticError) as exc:
        actual, passed = f"error: {exc}", False
    report.checks.append(Check(name, expected, actual, passed, time.perf_counter() - t0))
    return actual


def _inverse_growth_target(var: str) -> RationalFn:
    num = MultiPoly.from_coeffs(fixtures.INVERSE_GROWTH_NUMERATOR, var)
    one_plus = MultiPoly.from_coeffs([1, 1], var)
    return RationalFn(num, one_plus ** fixtures.INVERSE_GROWTH_DENOMINATOR_POWER)


def _same_pole(expected: complex, actual: complex) -> bool:
    digits = fixtures.POLE_DIGITS
    return (round_sig(actual.real, digits) == round_sig(expected.real, digits)
            and round_sig(actual.imag, digits) == round_sig(expected.imag, digits))


def run_example(route: str = "both", text: Optional[str] = None) -> RunReport:
    """All checks for the bundled ten-generator example."""
    text = fixtures.data_text(fixtures.EXAMPLE_DIAGRAM) if text is None else text
    d = parse_diagram(text)
    report = RunReport(["example", "--route", route], d.fingerprint())
    other = d.full & ~d.T

    for key, (tag, order) in fixtures.ORDERS.items():
        mask = other
        if key.endswith("-s8"):
            mask &= ~d.mask(["s8"])
        elif key.endswith("-s2"):
            mask &= ~d.mask(["s2"])
        _timed(report, f"order of {key}", f"{tag} {order}", lambda m=mask: describe(d, m).replace(", order ", " "))

    _timed(report, "closure generator counts", fixtures.GENERATOR_COUNTS, lambda: generator_count(d))
    _timed(report, "right-angled closure", True, lambda: is_right_angled_closure(d))
    _timed(report, "sigma families", fixtures.SIGMA_FAMILY_COUNT, lambda: len(enumerate_sigma(d)))

    two_var = MultiPoly.from_exponents(("t1", "t2"), fixtures.F_TWO_VAR)
    f2 = _timed(report, "f-polynomial in t1, t2", two_var, lambda: f_closure(d))
    grades = {g: MultiPoly.from_exponents(("t1", "t2"), terms) * fixtures.F_PREFACTOR
              for g, terms in fixtures.F_BY_GRADE.items()}
    _timed(report, "f-polynomial by grade", grades, lambda: f_by_grade(d))

    diag = MultiPoly.from_coeffs(fixtures.F_DIAGONAL, "t")
    f1 = _timed(report, "f-polynomial diagonal", diag, lambda: f_closure(d, phi="t"))
    _timed(report, "diagonal of the two-variable f", diag,
           lambda: f2.rename({"t1": "t", "t2": "t"}) if isinstance(f2, MultiPoly) else f2)
    _timed(report, "f(-1) on the diagonal", 1, lambda: diag.evaluate({"t": -1}))

    series = None
    if route in ("both", "serre-only"):
        r = _timed(report, "1/growth by specialization", _inverse_growth_target("x"),
                   lambda: closure_growth_by_specialization(d).series.inverse())
        if isinstance(r, RationalFn):
            series = r.inverse()
    if route in ("both", "f-only"):
        r = _timed(report, "1/growth from f", _inverse_growth_target("t"),
                   lambda: growth_from_f(f1 if isinstance(f1, MultiPoly) else diag, ("t",)).inverse())
        if isinstance(r, RationalFn):
            if series is not None:
                _timed(report, "route equality", True,
                       lambda: series == r.inverse().rename({"t": "x"}))
            series = series if series is not None else r.inverse()

    _timed(report, "distinct real roots of f(t,t)", fixtures.F_DIAGONAL_REAL_ROOTS,
           lambda: sturm_real_count(diag))

    if series is not None:
        poles = _timed(report, "pole count", len(fixtures.POLES), lambda: len(poles_of_growth(series).roots))
        roots = poles_of_growth(series).roots if poles == len(fixtures.POLES) else []
        for expected in fixtures.POLES:
            best = min(roots, key=lambda z: abs(z - expected), default=None)
            _timed(report, f"pole {format_root(expected)}", expected,
                   lambda b=best: b, lambda e, a: a is not None and _same_pole(e, a))

    k = load_linkspec(d, fixtures.data_text(fixtures.LINK_K))
    _timed(report, "link K", MultiPoly.from_coeffs(fixtures.F_LINK_K, "t"), lambda: f_link(d, None, k, "t"))
    ll = load_linkspec(d, fixtures.data_text(fixtures.LINK_L))
    _timed(report, "link L at -1/2 is nonzero", True,
           lambda: f_link(d, None, ll, "t").evaluate({"t": fixtures.F_LINK_L_AT}) != 0)
    return report


def cmd_example(args) -> RunReport:
    text = _read(args.file) if args.file else None
    try:
        report = run_example(args.route, text)
    except DiagramError as exc:
        raise InputError(f"bundled example: {exc}") from None
    report.command = args.argv
    lines = []
    width = max(len(c.name) for c in report.checks)
    for c in report.checks:
        mark = "PASS" if c.passed else "FAIL"
        shown = c.actual
        if isinstance(shown, complex):
            shown = format_root(shown, 2 if c.passed else 5)
        if isinstance(shown, dict):
            shown = "{" + ", ".join(f"{k}: {v}" for k, v in shown.items()) + "}"
        line = f"{mark}  {c.name:<{width}}  {_short(shown)}"
        if not c.passed:
            line += f"   (expected {_short(c.expected if not isinstance(c.expected, complex) else format_root(c.expected))})"
        lines.append(line + f"  [{c.seconds:.2f}s]")
    passed = sum(c.passed for c in report.checks)
    lines.append(f"{passed}/{len(report.checks)} checks passed")
    _emit(args, report, lines)
    return report


def _short(x, limit: int = 90) -> str:
    s = str(x)
    return s if len(s) <= limit else s[: limit - 3] + "..."


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxkit", description="Coxeter groups, normal closures, growth series.")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker processes for parallel stages (default: all cores)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, file_arg=True):
        sp = sub.add_parser(name, help=help_text)
        if file_arg:
            sp.add_argument("file", help="diagram file")
        sp.add_argument("--json", action="store_true", help="JSON report instead of text")
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "parse and check a diagram")
    sp.add_argument("--canonical", action="store_true", help="print the canonical serialization")
    sp = add("classify", cmd_classify, "finite type and order")
    sp.add_argument("--subset", help="comma-separated generators (default: all)")
    sp = add("growth", cmd_growth, "growth series")
    sp.add_argument("--taylor", type=int, metavar="N", help="word counts by length up to N")
    sp.add_argument("--closure", action="store_true", help="growth of the normal closure of W_T")
    sp = add("closure", cmd_closure, "normal closure of W_T")
    sp.add_argument("--matrix", action="store_true", help="print the closure's Coxeter matrix")
    sp.add_argument("--emit-diagram", metavar="OUT", help="write the closure as a diagram file")
    sp = add("nerve-f", cmd_nerve_f, "f-polynomial of the closure's nerve")
    sp.add_argument("--diagonal", action="store_true", help="one variable t for all of T")
    sp.add_argument("--link", metavar="LINKSPEC", help="'t:k' items or a file of them")
    sp.add_argument("--families", action="store_true", help="list the chain families")
    sp = add("roots", cmd_roots, "real-root count and complex roots", file_arg=False)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="coefficients, or a JSON polynomial / rational function")
    src.add_argument("--poly", help="comma-separated coefficients, constant term first")
    sp.add_argument("--digits", type=int, default=2, help="significant digits shown")
    sp = add("reduce", cmd_reduce, "normal form of a word")
    sp.add_argument("word", nargs="*", help="generator names")
    sp.add_argument("--backend", choices=["auto", "tits"], default="auto")
    sp = add("example", cmd_example, "run the bundled ten-generator example", file_arg=False)
    sp.add_argument("--route", choices=["both", "serre-only", "f-only"], default="both")
    sp.add_argument("--file", help="use this diagram instead of the bundled one")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    try:
        report = args.func(args)
    except (InputError, DiagramError) as exc:
        print(f"coxkit: {exc}", file=sys.stderr)
        return 2
    except (GrowthError, ClosureError, NerveError, RootError, CapExceeded) as exc:
        print(f"coxkit: {exc}", file=sys.stderr)
        return 2
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
