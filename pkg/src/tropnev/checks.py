"""Run a scenario document through the harness and compare with its expectations.

Each check yields one primary result plus named extras (slopes, counts,
sub-verdicts).  Without an expectation a verdict passes when it is
HoldsEventually, a boolean passes when true, and any other value is
informational.  Expectations in ``[expect]`` may be

* a verdict or value, with ``|`` separating accepted alternatives;
* a comparison such as ``> 0.6``;
* an affine tail such as ``7/2*r - 16`` or ``7/2*r - 16 for r > 12``;
* an expression over the document's functions, for function-valued checks.
"""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass
from fractions import Fraction

from . import harness as hz
from . import nevanlinna as nev
from . import plfun
from .casorati import CasoratiSpec, casorati, casorati_properties_check
from .core import BOTTOM, scalar
from .curves import (
    compose,
    ddg,
    ddg_star,
    default_candidates,
    find_dependence_witness,
    is_nondegenerate,
    verify_dependence_witness,
)
from .errors import (
    NoIndependentSubset,
    NotComplete,
    NotGeneralPosition,
    TooFew,
    TropError,
    WindowedCurve,
)
from .expr import format_expression, parse_expression, to_json
from .linalg import (
    check_balance,
    cramer_matrix,
    cramer_permanents,
    cramer_upper_bound,
    general_position,
    is_singular,
    tmat_mul,
    tropical_determinant,
    vectors_independent,
)
from .plfun import PLFunction
from .report import DEFAULT_PRECISION, Table, format_cell

# errors meaning "this check does not apply here" rather than "this check failed"
PRECONDITION_ERRORS = (NotGeneralPosition, TooFew, NoIndependentSubset, WindowedCurve, NotComplete)

CURVE_CHECKS = ("general_position", "nondegenerate", "fmt", "smt_main", "smt_casorati",
                "casorati_counting", "product_to_sum", "complete_hyperplane", "defect_relation",
                "cc410", "general_smt", "growth", "casorati", "casorati_properties")
VALUE_CHECKS = ("poles", "roots", "proximity", "counting_poles", "counting_poles_truncated",
                "counting_roots", "characteristic", "jensen", "truncated_value_counting",
                "meromorphic_smt", "truncated_smt", "untruncated_smt")
SECTION_CHECKS = ("linalg", "witness", "ddg", "eval")
KNOWN_CHECKS = CURVE_CHECKS + VALUE_CHECKS + SECTION_CHECKS


@dataclass(frozen=True)
class RunOptions:
    grid: tuple | None = None
    c: Fraction | None = None
    truncate: bool | None = None
    precision: int = DEFAULT_PRECISION


@dataclass(frozen=True)
class Tail:
    """Affine piece ``slope*r + intercept`` of a profile beyond ``start``."""

    slope: Fraction
    intercept: Fraction
    start: Fraction | None

    def __str__(self) -> str:
        text = _affine_text(self.slope, self.intercept)
        return text if self.start is None else f"{text} for r > {format_cell(self.start)}"


@dataclass
class CheckResult:
    name: str
    observed: str
    expected: str | None
    passed: bool
    report: Table | None = None
    primary: bool = True
    note: str = ""
    scenario: str = ""


# -- values and matching -------------------------------------------------------------------


def _affine_text(s: Fraction, b: Fraction) -> str:
    if s == 0:
        return format_cell(b)
    head = "r" if s == 1 else "-r" if s == -1 else f"{format_cell(s)}*r"
    if b == 0:
        return head
    return f"{head} {'-' if b < 0 else '+'} {format_cell(abs(b))}"


def profile_tail(p: PLFunction) -> Tail:
    s = hz.tail_slope(p)
    bps = [b for b in p.breakpoints if p.window is None or b < p.window[1]]
    start = bps[-1] if bps else None
    x0 = start if start is not None else (p.window[1] if p.window is not None else Fraction(0))
    return Tail(s, p._eval(x0) - s * x0, start)


def render(value) -> str:
    if isinstance(value, PLFunction):
        if value.is_bottom:
            return "0_T"
        return format_expression(value) if value.window is None else to_json(value)
    if isinstance(value, float):
        return f"{value:.6f}"
    return format_cell(value)


_LIT_RE = re.compile(r"[()\[\],]|[^()\[\],\s]+")


def parse_literal(text: str):
    """Nested tuples of rationals, ``-inf``, booleans and bare words."""
    tokens = _LIT_RE.findall(text)
    pos = 0

    def atom(tok):
        low = tok.lower()
        if low in ("true", "false"):
            return low == "true"
        try:
            return scalar(tok)
        except (ValueError, ZeroDivisionError):
            return tok

    def value():
        nonlocal pos
        tok = tokens[pos]
        if tok in "([":
            close = ")" if tok == "(" else "]"
            pos += 1
            items = []
            while tokens[pos] != close:
                items.append(value())
                if tokens[pos] == ",":
                    pos += 1
            pos += 1
            return tuple(items)
        pos += 1
        return atom(tok)

    if not tokens:
        raise ValueError("empty literal")
    out = value()
    if pos != len(tokens):
        # a bare comma list without brackets
        out = parse_literal(f"({text})")
    return out


def _as_number(v):
    if isinstance(v, bool) or v is BOTTOM:
        return None
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, float):
        return v
    return None


def _parse_tail(text: str, env) -> Tail:
    start = None
    if " for " in text:
        text, cond = text.split(" for ", 1)
        m = re.fullmatch(r"\s*r\s*>\s*(\S+)\s*", cond)
        if not m:
            raise ValueError(f"cannot read condition {cond!r}")
        start = Fraction(m.group(1))
    f = parse_expression(re.sub(r"\br\b", "x", text), env)
    if f.breakpoints:
        raise ValueError(f"{text!r} is not affine")
    return Tail(f.slopes[0], f.anchor[1] - f.slopes[0] * f.anchor[0], start)


def matches(observed, expected: str, env=None) -> bool:
    """Whether the observed value satisfies the expectation text."""
    expected = expected.strip()
    if "|" in expected and not isinstance(observed, (PLFunction, Tail)):
        return any(matches(observed, alt, env) for alt in expected.split("|"))
    m = re.fullmatch(r"(>=|<=|>|<|==)\s*(.+)", expected)
    if m:
        x = _as_number(observed)
        if x is None:
            return False
        bound = Fraction(m.group(2)) if not isinstance(x, float) else float(Fraction(m.group(2)))
        return {">": x > bound, "<": x < bound, ">=": x >= bound, "<=": x <= bound,
                "==": x == bound}[m.group(1)]
    if isinstance(observed, Tail):
        want = _parse_tail(expected, env)
        if (want.slope, want.intercept) != (observed.slope, observed.intercept):
            return False
        return want.start is None or want.start == observed.start
    if isinstance(observed, PLFunction):
        want = parse_expression(expected, env)
        if observed.window is not None and not want.is_bottom:
            want = plfun.restrict(want, observed.window)
        return want == observed
    if isinstance(observed, str):
        return observed == expected
    if isinstance(observed, float):
        return abs(observed - float(Fraction(expected))) < 1e-9
    return format_cell(parse_literal(expected)) == format_cell(observed)


def _default_pass(value, primary: bool) -> bool:
    if isinstance(value, str) and value in (hz.HOLDS, hz.FAILS, hz.INCONCLUSIVE):
        return value == hz.HOLDS
    if isinstance(value, bool):
        return value
    return True


# -- the runner -----------------------------------------------------------------------------


class _Run:
    def __init__(self, doc, options: RunOptions):
        self.doc = doc
        self.options = options
        self.results: list = []

    def add(self, name: str, value, report: Table | None = None, primary: bool = True,
            note: str = "") -> None:
        expected = self.doc.expect.get(name)
        if expected is None:
            if not primary:
                self.results.append(CheckResult(name, render(value), None, True, report, False, note))
                return
            passed = _default_pass(value, primary)
        else:
            try:
                passed = matches(value, expected, self.doc.functions)
            except (ValueError, TropError, KeyError) as exc:
                passed, note = False, f"cannot compare: {exc}"
        self.results.append(CheckResult(name, render(value), expected, passed, report, primary, note))

    def add_error(self, name: str, exc: Exception) -> None:
        label = type(exc).__name__
        expected = self.doc.expect.get(name)
        passed = expected is not None and matches(label, expected)
        self.results.append(CheckResult(name, label, expected, passed, None, True, str(exc)))

    def verdict(self, name: str, v: hz.SlopeVerdict, note: str = "") -> None:
        self.add(name, v.verdict, Table(v.columns, v.rows), note=note)
        deficit = v.details["deficit_profile"]
        rows = v.rows
        lhs = [r[-3] for r in rows]
        rhs = [r[-2] for r in rows]
        tail = lhs[len(lhs) // 2:]
        extras = {
            "lhs_slope": v.lhs_tail_slope,
            "rhs_slope": v.rhs_tail_slope,
            "deficit_slope": hz.tail_slope(deficit),
            "deficit_min": v.difference_min_on_grid,
            "deficit_zero": all(r[-1] == 0 for r in rows),
            "rhs_zero": all(x == 0 for x in rhs),
            "lhs_increasing": len(tail) >= 2 and all(a < b for a, b in zip(tail, tail[1:])),
            "clipped_grid_points": v.details.get("clipped_grid_points", 0),
        }
        for key, value in extras.items():
            self.add(f"{name}.{key}", value, primary=False)


def apply_options(doc, options: RunOptions):
    """Copy of ``doc`` with command-line overrides folded into its options."""
    opts = dict(doc.options)
    if options.grid is not None:
        opts["grid"] = tuple(options.grid)
    if options.c is not None:
        opts["c"] = Fraction(options.c)
    if options.truncate is not None:
        opts["truncate"] = options.truncate
    return dataclasses.replace(doc, options=opts)


def selected_checks(doc) -> list:
    if doc.checks is not None:
        return list(doc.checks)
    out = []
    if doc.curve is not None:
        out += list(CURVE_CHECKS)
    if doc.values is not None:
        out += list(VALUE_CHECKS)
    out += [name for name, present in (("linalg", doc.linalg), ("witness", doc.witness),
                                       ("ddg", doc.ddg), ("eval", doc.evals)) if present]
    return out


def run_document(doc, options: RunOptions | None = None) -> list:
    """All selected checks of ``doc``, in a fixed order."""
    options = options or RunOptions()
    doc = apply_options(doc, options)
    run = _Run(doc, options)
    explicit = doc.checks is not None
    for name in selected_checks(doc):
        fn = _CHECKS.get(name)
        if fn is None:
            run.add_error(name, ValueError(f"unknown check {name!r}"))
            continue
        try:
            fn(run)
        except PRECONDITION_ERRORS as exc:
            if explicit:
                run.add_error(name, exc)
        except (TropError, ValueError, ArithmeticError) as exc:
            run.add_error(name, exc)
    for r in run.results:
        r.scenario = doc.name
    missing = set(doc.expect) - {r.name for r in run.results}
    for name in sorted(missing):
        run.results.append(CheckResult(name, "not run", doc.expect[name], False, None, True,
                                       "expectation has no matching check", doc.name))
    return run.results


# -- curve checks ------------------------------------------------------------------------------


def _sc(run):
    sc = run.doc.scenario
    if sc is None:
        raise ValueError("this check needs a [curve]")
    return sc


def _general_position(run):
    sc = _sc(run)
    run.add("general_position", general_position(sc.hyperplanes, sc.n))


def _nondegenerate(run):
    sc = _sc(run)
    bound = run.doc.options.get("candidate_bound")
    cands = default_candidates(sc.curve, bound) if bound is not None else None
    run.add("nondegenerate", is_nondegenerate(sc.curve, cands))


def _fmt(run):
    sc = _sc(run)
    names = [n for n, _ in run.doc.hyperplanes]
    for name, res in zip(names, hz.fmt_report(sc)):
        want = hz.fmt_expected_constant(sc.curve, res.hyperplane)
        key = f"fmt.{name}"
        run.add(key, res.constant, Table(res.columns, res.rows))
        if run.results[-1].expected is None:
            run.results[-1].passed = res.constant == want
        run.add(f"{key}.formula", want, primary=False)


def _simple_verdict(name, fn):
    def check(run):
        run.verdict(name, fn(_sc(run)))
    return check


def _smt_casorati(run):
    v = hz.smt_casorati_report(_sc(run))
    run.verdict("smt_casorati", v)


def _complete(run):
    sc = _sc(run)
    found = False
    for i, (name, H) in enumerate(run.doc.hyperplanes):
        if H.is_complete:
            found = True
            run.verdict(f"complete_hyperplane.{name}", hz.complete_hyperplane_identity(sc, i))
    if not found:
        raise NotComplete("no hyperplane has all coefficients real")


def _defect(run):
    out = hz.defect_relation_report(_sc(run))
    run.add("defect_relation", out["holds"])
    run.add("defect_relation.sum", out["sum"], primary=False)
    run.add("defect_relation.defects", tuple(out["defects"]), primary=False)


def _cc410(run):
    v = hz.cc410_report(_sc(run))
    run.verdict("cc410", v)
    for key in ("lambda_star", "lambda_star_head", "lambda", "ddg_star_length", "ddg_length"):
        run.add(f"cc410.{key}", v.details[key], primary=False)
    eq = v.details["equality"]
    if eq is not None:
        run.add("cc410.equality", eq.verdict, primary=False)
        run.add("cc410.equality.deficit_slope", hz.tail_slope(eq.details["deficit_profile"]),
                primary=False)


def _growth(run):
    sc = _sc(run)
    g = hz.growth_indicator(sc.curve, sc.grid)
    run.add("growth", g.classification, Table(("r", "log_T_over_r"), g.samples))
    run.add("growth.final", g.final, primary=False)


def _casorati(run):
    sc = _sc(run)
    run.add("casorati", casorati(CasoratiSpec(sc.curve.components, sc.c)))


def _casorati_properties(run):
    sc = _sc(run)
    rep = casorati_properties_check(CasoratiSpec(sc.curve.components, sc.c))
    run.add("casorati_properties", rep.passed)
    for key in ("symmetry", "one_dominates_shift", "bottom_absorbs"):
        run.add(f"casorati_properties.{key}", getattr(rep, key), primary=False)


# -- one-variable checks ----------------------------------------------------------------------


def _values(run):
    if run.doc.values is None:
        raise ValueError("this check needs a [values] section")
    fname, vals = run.doc.values
    return run.doc.functions[fname], vals


def _crossing_list(cs):
    return tuple((c.location, c.jump) for c in cs)


def _poles(run):
    f, _ = _values(run)
    run.add("poles", _crossing_list(plfun.poles(f)))


def _roots(run):
    f, _ = _values(run)
    run.add("roots", _crossing_list(plfun.roots(f)))


def _profile_check(name, build):
    def check(run):
        f, _ = _values(run)
        R = nev.profile_radius([f])
        run.add(name, profile_tail(build(f, R)))
    return check


def _jensen(run):
    f, _ = _values(run)
    grid = hz._fit_grid(run.doc.options.get("grid"), [f], nev.profile_radius([f]))[0]
    rows = [(r, nev.jensen_defect(f, r)) for r in grid]
    run.add("jensen", all(d == 0 for _, d in rows), Table(("r", "jensen_defect"), rows))


def _value_counting(run):
    f, vals = _values(run)
    R = nev.profile_radius([f])
    for i, a in enumerate(vals, 1):
        g = hz._join(f, a)
        run.add(f"truncated_value_counting.a{i}", profile_tail(nev.counting_profile(g, "roots", True, R)))


def _meromorphic(run):
    f, vals = _values(run)
    v = hz.meromorphic_smt_report(f, vals, run.doc.options.get("grid"))
    run.verdict("meromorphic_smt", v)
    run.add("meromorphic_smt.simplified_hypothesis", v.details["simplified_hypothesis"], primary=False)
    if "simplified" in v.details:
        run.add("meromorphic_smt.simplified", v.details["simplified"].verdict, primary=False)


def _truncated(run):
    f, vals = _values(run)
    run.verdict("truncated_smt", hz.truncated_counterexample(f, vals, run.doc.options.get("grid"), True))


def _untruncated(run):
    f, vals = _values(run)
    forced = bool(run.doc.options.get("truncate", False))
    v = hz.truncated_counterexample(f, vals, run.doc.options.get("grid"), forced)
    run.verdict("untruncated_smt", v, "truncation forced on" if forced else "")


# -- section checks ---------------------------------------------------------------------------


def _linalg(run):
    mats = run.doc.matrices
    for key, args in run.doc.linalg:
        op = key.split(".")[0]
        if op == "determinant":
            cert = tropical_determinant(mats[args[0]])
            run.add(key, cert.value)
            run.add(f"{key}.singular", is_singular(mats[args[0]]), primary=False)
            run.add(f"{key}.multiplicity", cert.multiplicity, primary=False)
        elif op == "cramer":
            A, b = mats[args[0]], mats[args[1]]
            run.add(key, tuple(cramer_permanents(A, b)))
            run.add(f"{key}.det", tropical_determinant(A).value, primary=False)
            run.add(f"{key}.singular",
                    tuple(is_singular(cramer_matrix(A, b, i)) for i in range(A.cols)), primary=False)
            bound = cramer_upper_bound(A, b)
            run.add(f"{key}.upper_bound", tuple(bound), primary=False)
            run.add(f"{key}.balanced_at_bound", check_balance(A, bound, b), primary=False)
        elif op == "product":
            A, B = mats[args[0]], mats[args[1]]
            C = tmat_mul(A, B)
            dets = [tropical_determinant(M).value for M in (A, B, C)]
            run.add(key, tuple(tuple(r) for r in C.to_rows()))
            run.add(f"{key}.det", dets[2], primary=False)
            run.add(f"{key}.inequality", BOTTOM in dets[:2] or dets[0] + dets[1] <= dets[2])
            run.add(f"{key}.strict", BOTTOM not in dets and dets[0] + dets[1] < dets[2], primary=False)
        elif op == "independent":
            cols = [list(c) for c in zip(*mats[args[0]].to_rows())]
            run.add(key, vectors_independent(cols))


def _witness(run):
    w = run.doc.witness
    fns = [run.doc.functions[n] for n in w["functions"]]
    for key, alpha in w["alphas"].items():
        run.add(f"witness.{key}", verify_dependence_witness(fns, alpha, w["window"]))
    found = find_dependence_witness(fns if w["window"] is None
                                    else [plfun.restrict(f, w["window"]) for f in fns])
    run.add("witness.search", "none" if found is None else tuple(found), primary=False)


def _ddg(run):
    curve = run.doc.curve
    for key, names in run.doc.ddg.items():
        specs = [run.doc.hyperplane(n) for n in names]
        run.add(f"ddg.{key}", (ddg if key == "ddg" else ddg_star)(specs, curve))


def _eval(run):
    for name, points in run.doc.evals:
        f = run.doc.functions[name]
        vals = tuple(plfun.evaluate(f, x) for x in points)
        run.add(f"eval.{name}", vals[0] if len(vals) == 1 else vals,
                Table(("x", name), list(zip(points, vals))))


_CHECKS = {
    "general_position": _general_position,
    "nondegenerate": _nondegenerate,
    "fmt": _fmt,
    "smt_main": _simple_verdict("smt_main", hz.smt_main_report),
    "smt_casorati": _smt_casorati,
    "casorati_counting": _simple_verdict("casorati_counting", hz.casorati_counting_check),
    "product_to_sum": _simple_verdict("product_to_sum", hz.product_to_sum_report),
    "complete_hyperplane": _complete,
    "defect_relation": _defect,
    "cc410": _cc410,
    "general_smt": _simple_verdict("general_smt", hz.general_smt_report),
    "growth": _growth,
    "casorati": _casorati,
    "casorati_properties": _casorati_properties,
    "poles": _poles,
    "roots": _roots,
    "proximity": _profile_check("proximity", lambda f, R: nev.proximity_profile(f, R)),
    "counting_poles": _profile_check("counting_poles", lambda f, R: nev.counting_profile(f, "poles", False, R)),
    "counting_poles_truncated": _profile_check(
        "counting_poles_truncated", lambda f, R: nev.counting_profile(f, "poles", True, R)),
    "counting_roots": _profile_check("counting_roots", lambda f, R: nev.counting_profile(f, "roots", False, R)),
    "characteristic": _profile_check("characteristic", lambda f, R: nev.characteristic_profile(f, R)),
    "jensen": _jensen,
    "truncated_value_counting": _value_counting,
    "meromorphic_smt": _meromorphic,
    "truncated_smt": _truncated,
    "untruncated_smt": _untruncated,
    "linalg": _linalg,
    "witness": _witness,
    "ddg": _ddg,
    "eval": _eval,
}

assert set(_CHECKS) == set(KNOWN_CHECKS)
