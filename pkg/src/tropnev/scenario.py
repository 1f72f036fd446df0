"""Scenario documents: INI-style files declaring functions, curves,
hyperplanes, matrices and expected results.

Example::

    [scenario]
    name = example
    grid = default            # or a comma list of positive rationals
    c = 1

    [functions]
    zero = 0
    e = e2 [-8, 8]            # generator tag with its window
    p = terms (1, -1) (1, 0) (-1, 1)
    f = max(0, x) - p

    [curve]
    components = zero, e

    [hyperplanes]
    P1 = 0, -inf
    P2 = -inf, 0

    [expect]
    smt_casorati = FailsEventually

Problems are collected across the whole document and raised together as
ValidationErrors.
"""

from __future__ import annotations

import configparser
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import plfun
from .checks import KNOWN_CHECKS
from .core import scalar
from .curves import Curve, Hyperplane
from .errors import MissingBundle, ScenarioSyntaxError, UnknownName, ValidationErrors
from .expr import parse_expression
from .harness import Scenario
from .linalg import TropMatrix

RESERVED = {"x", "max", "min", "shift"}
KNOWN_SECTIONS = {"scenario", "functions", "curve", "hyperplanes", "values", "matrices",
                  "linalg", "witness", "eval", "ddg", "expect"}
LINALG_OPS = {"determinant", "cramer", "product", "independent"}

_E2_RE = re.compile(r"^e2\s*\[\s*([^,\]]+)\s*,\s*([^\]]+)\]\s*$")
_TERMS_RE = re.compile(r"\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\)")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


@dataclass
class ScenarioDocument:
    name: str
    description: str = ""
    options: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    curve: Curve | None = None
    hyperplanes: list = field(default_factory=list)
    values: tuple | None = None
    matrices: dict = field(default_factory=dict)
    linalg: list = field(default_factory=list)
    witness: dict | None = None
    evals: list = field(default_factory=list)
    ddg: dict = field(default_factory=dict)
    expect: dict = field(default_factory=dict)
    checks: list | None = None

    @property
    def scenario(self) -> Scenario | None:
        """The harness scenario for the declared curve and hyperplanes."""
        if self.curve is None:
            return None
        return Scenario(
            curve=self.curve,
            hyperplanes=tuple(H for _, H in self.hyperplanes),
            grid=self.options.get("grid"),
            c=self.options.get("c", Fraction(1)),
            truncate=self.options.get("truncate", False),
            assume_nondegenerate=self.options.get("assume_nondegenerate", False),
            window=self.options.get("window"),
            name=self.name,
        )

    def hyperplane(self, name: str) -> Hyperplane:
        for key, H in self.hyperplanes:
            if key == name:
                return H
        raise UnknownName(name)


# -- small literal parsers ------------------------------------------------------------


def parse_rational_list(text: str) -> list:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise ValueError("empty list")
    return [scalar(t) for t in items]


def parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "on", "1"):
        return True
    if t in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def parse_grid(text: str):
    t = text.strip().lower()
    if t in ("", "default"):
        return None
    grid = [Fraction(v) for v in parse_rational_list(text)]
    if any(r <= 0 for r in grid) or any(a >= b for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing and positive")
    return tuple(grid)


def parse_window(text: str) -> tuple:
    vals = parse_rational_list(text)
    if len(vals) != 2 or not vals[0] < vals[1]:
        raise ValueError(f"window must be 'lo, hi' with lo < hi, got {text!r}")
    return (Fraction(vals[0]), Fraction(vals[1]))


def parse_array(text: str):
    """Nested bracketed lists of rational or ``-inf`` tokens."""
    tokens = re.findall(r"\[|\]|,|[^\[\],\s]+", text)
    pos = 0

    def value():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of array literal")
        tok = tokens[pos]
        if tok == "[":
            pos += 1
            items = []
            if pos < len(tokens) and tokens[pos] == "]":
                pos += 1
                return items
            while True:
                items.append(value())
                if pos >= len(tokens):
                    raise ValueError("unclosed '['")
                if tokens[pos] == ",":
                    pos += 1
                    continue
                if tokens[pos] == "]":
                    pos += 1
                    return items
                raise ValueError(f"unexpected {tokens[pos]!r} in array literal")
        if tok in ("]", ","):
            raise ValueError(f"unexpected {tok!r} in array literal")
        pos += 1
        return scalar(tok)

    out = value()
    if pos != len(tokens):
        raise ValueError("trailing characters after array literal")
    return out


def split_top_level(text: str) -> list:
    """Split on commas that are not inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _parse_function(text: str, env: dict):
    text = text.strip()
    m = _E2_RE.match(text)
    if m:
        return plfun.e2_function((Fraction(m.group(1).strip()), Fraction(m.group(2).strip())))
    if text.startswith("terms"):
        body = text[len("terms"):]
        terms = [(scalar(a), Fraction(n)) for a, n in _TERMS_RE.findall(body)]
        if not terms or _TERMS_RE.sub("", body).strip():
            raise ValueError("terms must be a list of '(a, n)' pairs")
        return plfun.from_tropical_polynomial(terms)
    return parse_expression(text, env)


def _references(text: str, names) -> set:
    text = text.strip()
    if _E2_RE.match(text) or text.startswith("terms"):
        return set()
    return {tok for tok in _NAME_RE.findall(text) if tok in names}


# -- document parsing ---------------------------------------------------------------------


def _resolve_functions(raw: dict, problems: list) -> dict:
    """Parse definitions in dependency order; cycles and unknown names are reported."""
    env: dict = {}
    state: dict = {}

    def visit(name: str, stack: list):
        if state.get(name) == "done":
            return
        if state.get(name) == "active":
            cycle = " -> ".join(stack[stack.index(name):] + [name])
            problems.append(f"functions: cyclic definition {cycle}")
            state[name] = "done"
            return
        state[name] = "active"
        for dep in sorted(_references(raw[name], raw.keys())):
            if dep != name:
                visit(dep, stack + [name])
            else:
                problems.append(f"functions.{name}: refers to itself")
        try:
            env[name] = _parse_function(raw[name], env)
        except ScenarioSyntaxError as exc:
            problems.append(f"functions.{name}: {exc}")
        except UnknownName as exc:
            problems.append(f"functions.{name}: unknown name {exc}")
        except (ValueError, ArithmeticError) as exc:
            problems.append(f"functions.{name}: {exc}")
        state[name] = "done"

    for name in raw:
        if name in RESERVED:
            problems.append(f"functions.{name}: '{name}' is reserved")
            continue
        visit(name, [])
    return env


def _component(token: str, env: dict):
    token = token.strip()
    if token in env:
        return env[token]
    return parse_expression(token, env)


def parse_scenario(text: str, source: str = "<string>") -> ScenarioDocument:
    """Parse a scenario document; every problem found is reported at once."""
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",),
                                   comment_prefixes=("#", ";"), strict=True)
    cp.optionxform = str
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ValidationErrors([f"{source}: {exc}".replace("\n", " ")]) from None

    problems: list = []
    for sec in cp.sections():
        if sec not in KNOWN_SECTIONS:
            problems.append(f"unknown section [{sec}]")

    meta = cp["scenario"] if cp.has_section("scenario") else {}
    doc = ScenarioDocument(name=meta.get("name", Path(source).stem))
    doc.description = meta.get("description", "")
    opts = doc.options
    for key, parser in (("grid", parse_grid), ("c", lambda t: Fraction(scalar(t))),
                        ("truncate", parse_bool), ("assume_nondegenerate", parse_bool),
                        ("window", parse_window), ("candidate_bound", int)):
        if key in meta:
            try:
                opts[key] = parser(meta[key])
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                problems.append(f"scenario.{key}: {exc}")
    if opts.get("c") == 0:
        problems.append("scenario.c: the shift c must be nonzero")
    if "checks" in meta:
        doc.checks = [t.strip() for t in meta["checks"].split(",") if t.strip()]
        unknown = [c for c in doc.checks if c not in KNOWN_CHECKS]
        if unknown:
            problems.append(f"scenario.checks: unknown checks {unknown}")
    for key in meta:
        if key not in {"name", "description", "grid", "c", "truncate", "assume_nondegenerate",
                       "window", "candidate_bound", "checks"}:
            problems.append(f"scenario.{key}: unknown option")

    if cp.has_section("functions"):
        doc.functions = _resolve_functions(dict(cp["functions"]), problems)
    env = doc.functions

    if cp.has_section("hyperplanes"):
        for name, value in cp["hyperplanes"].items():
            try:
                doc.hyperplanes.append((name, Hyperplane(tuple(parse_rational_list(value)))))
            except (ValueError, TypeError) as exc:
                problems.append(f"hyperplanes.{name}: {exc}")

    if cp.has_section("curve"):
        sec = cp["curve"]
        if "components" not in sec:
            problems.append("curve: missing 'components'")
        else:
            comps = []
            tokens = split_top_level(sec["components"])
            for tok in tokens:
                try:
                    comps.append(_component(tok, env))
                except UnknownName as exc:
                    problems.append(f"curve.components: unknown name {exc}")
                except (ScenarioSyntaxError, ValueError) as exc:
                    problems.append(f"curve.components: {exc}")
            if len(comps) == len(tokens):
                try:
                    doc.curve = Curve.reduced(comps)
                except (ValueError, ArithmeticError) as exc:
                    problems.append(f"curve: {exc}")
        if doc.curve is not None:
            for name, H in doc.hyperplanes:
                if H.dimension != doc.curve.n:
                    problems.append(
                        f"hyperplanes.{name}: {H.dimension + 1} coefficients but the curve has "
                        f"{doc.curve.n + 1} components"
                    )
            if "window" in opts:
                try:
                    doc.scenario
                except (ValueError, ArithmeticError) as exc:
                    problems.append(f"scenario.window: {exc}")

    if cp.has_section("values"):
        sec = cp["values"]
        fname = sec.get("function", "").strip()
        if fname not in env:
            problems.append(f"values.function: unknown function {fname!r}")
        try:
            vals = parse_rational_list(sec.get("values", ""))
        except ValueError as exc:
            problems.append(f"values.values: {exc}")
            vals = []
        if fname in env and vals:
            doc.values = (fname, vals)

    if cp.has_section("matrices"):
        for name, value in cp["matrices"].items():
            try:
                arr = parse_array(value)
                if arr and isinstance(arr[0], list):
                    doc.matrices[name] = TropMatrix.from_rows(arr)
                else:
                    doc.matrices[name] = list(arr)
            except (ValueError, TypeError) as exc:
                problems.append(f"matrices.{name}: {exc}")

    if cp.has_section("linalg"):
        for op, value in cp["linalg"].items():
            base = op.split(".")[0]
            args = [t.strip() for t in value.split(",") if t.strip()]
            if base not in LINALG_OPS:
                problems.append(f"linalg.{op}: unknown operation")
                continue
            missing = [a for a in args if a not in doc.matrices]
            if missing:
                problems.append(f"linalg.{op}: unknown matrices {missing}")
                continue
            doc.linalg.append((op, args))

    if cp.has_section("witness"):
        sec = dict(cp["witness"])
        names = [t.strip() for t in sec.pop("functions", "").split(",") if t.strip()]
        unknown = [n for n in names if n not in env]
        if not names or unknown:
            problems.append(f"witness.functions: unknown or missing functions {unknown}")
        window = None
        if "window" in sec:
            try:
                window = parse_window(sec.pop("window"))
            except ValueError as exc:
                problems.append(f"witness.window: {exc}")
        alphas = {}
        for key, value in sec.items():
            try:
                alpha = parse_rational_list(value)
            except ValueError as exc:
                problems.append(f"witness.{key}: {exc}")
                continue
            if names and len(alpha) != len(names):
                problems.append(f"witness.{key}: {len(alpha)} coefficients for {len(names)} functions")
            alphas[key] = alpha
        doc.witness = {"functions": names, "window": window, "alphas": alphas}

    if cp.has_section("eval"):
        for name, value in cp["eval"].items():
            if name not in env:
                problems.append(f"eval.{name}: unknown function")
                continue
            try:
                doc.evals.append((name, [Fraction(v) for v in parse_rational_list(value)]))
            except (ValueError, TypeError) as exc:
                problems.append(f"eval.{name}: {exc}")

    if cp.has_section("ddg"):
        for key, value in cp["ddg"].items():
            if key not in ("ddg", "ddg_star"):
                problems.append(f"ddg.{key}: expected 'ddg' or 'ddg_star'")
                continue
            names = [t.strip() for t in value.split(",") if t.strip()]
            known = {n for n, _ in doc.hyperplanes}
            bad = [n for n in names if n not in known]
            if bad:
                problems.append(f"ddg.{key}: unknown hyperplanes {bad}")
            else:
                doc.ddg[key] = names
        if doc.ddg and doc.curve is None:
            problems.append("ddg: needs a [curve]")

    if cp.has_section("expect"):
        doc.expect = {k: v.strip() for k, v in cp["expect"].items()}

    if problems:
        raise ValidationErrors(problems)
    return doc


def load_scenario(path) -> ScenarioDocument:
    path = Path(path)
    return parse_scenario(path.read_text(encoding="utf-8"), source=str(path))


# -- bundled scenarios ---------------------------------------------------------------------

BUNDLE_ORDER = (
    "example_2_4",
    "example_3_9",
    "example_3_13",
    "intro_tp2",
    "example_1_5",
    "example_1_9",
    "example_5_7",
    "complete_hyperplane",
    "theorem_6_2",
)


def bundled_dir() -> Path:
    return Path(str(resources.files("tropnev") / "scenarios"))


def bundled_paths(directory=None) -> list:
    """Bundled scenario files in the fixed reporting order, then any others by name."""
    directory = Path(directory) if directory is not None else bundled_dir()
    files = sorted(directory.glob("*.ini")) if directory.is_dir() else []
    if not files:
        raise MissingBundle(f"no scenario files in {directory}")
    rank = {name: i for i, name in enumerate(BUNDLE_ORDER)}
    return sorted(files, key=lambda p: (rank.get(p.stem, len(rank)), p.stem))


def load_bundled(name: str) -> ScenarioDocument:
    path = bundled_dir() / f"{name}.ini"
    if not path.is_file():
        raise MissingBundle(f"no bundled scenario named {name!r}")
    return load_scenario(path)
