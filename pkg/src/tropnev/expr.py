"""Expression language for piecewise-linear functions.

Grammar (whitespace is free, ``*`` is required between a number and ``x``)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*          at most one non-constant factor
    unary   := "-" unary | primary
    primary := NUMBER | "x" | NAME
             | "max" "(" expr ("," expr)* ")"
             | "min" "(" expr ("," expr)* ")"
             | "shift" "(" expr "," signed-number ")"
             | "(" expr ")"

NUMBER is ``p``, ``p/q`` or a decimal such as ``0.25``; all are exact.
NAME refers to a previously defined function in the environment.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import plfun
from .core import format_scalar
from .errors import ScenarioSyntaxError, UnknownName
from .plfun import PLFunction

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ScenarioSyntaxError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1, src)
        kind = m.lastgroup
        text = m.group()
        if kind == "ws":
            for i, ch in enumerate(text):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            tokens.append(Token(kind, text, line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _is_constant(f: PLFunction) -> bool:
    return not f.is_bottom and not f.breakpoints and f.slopes[0] == 0


class _Parser:
    def __init__(self, src: str, env: Mapping[str, PLFunction]):
        self.src = src
        self.env = env
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ScenarioSyntaxError(message, tok.line, tok.col, self.src)

    def take(self, text: str | None = None, kind: str | None = None) -> Token:
        tok = self.tok
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            wanted = repr(text) if text is not None else kind
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.error(f"expected {wanted}, found {found}")
        self.i += 1
        return tok

    def parse(self) -> PLFunction:
        f = self.expr()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")
        return f

    def expr(self) -> PLFunction:
        f = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take().text
            g = self.term()
            f = plfun.add_combine(f, g) if op == "+" else plfun.sub_combine(f, g)
        return f

    def term(self) -> PLFunction:
        start = self.tok
        f = self.unary()
        while self.tok.text == "*":
            self.take("*")
            g = self.unary()
            if _is_constant(f):
                f = plfun.scale(g, f.anchor[1])
            elif _is_constant(g):
                f = plfun.scale(f, g.anchor[1])
            else:
                self.error("product of two non-constant expressions is not piecewise linear", start)
        return f

    def unary(self) -> PLFunction:
        if self.tok.text == "-":
            self.take("-")
            return plfun.negate(self.unary())
        return self.primary()

    def number(self) -> Fraction:
        tok = self.take(kind="num")
        return Fraction(tok.text)

    def signed_number(self) -> Fraction:
        if self.tok.text == "-":
            self.take("-")
            return -self.number()
        if self.tok.text == "+":
            self.take("+")
        return self.number()

    def args(self) -> list:
        self.take("(")
        out = [self.expr()]
        while self.tok.text == ",":
            self.take(",")
            out.append(self.expr())
        self.take(")")
        return out

    def primary(self) -> PLFunction:
        tok = self.tok
        if tok.kind == "num":
            return plfun.constant(self.number())
        if tok.text == "(":
            self.take("(")
            f = self.expr()
            self.take(")")
            return f
        if tok.kind == "name":
            self.take()
            if tok.text == "x":
                return plfun.IDENTITY
            if tok.text == "max":
                return plfun.max_all(self.args())
            if tok.text == "min":
                fs = self.args()
                out = fs[0]
                for g in fs[1:]:
                    out = plfun.min_combine(out, g)
                return out
            if tok.text == "shift":
                self.take("(")
                f = self.expr()
                self.take(",")
                c = self.signed_number()
                self.take(")")
                return plfun.shift(f, c)
            if tok.text in self.env:
                return self.env[tok.text]
            raise UnknownName(tok.text)
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        self.error(f"expected an expression, found {found}")


def parse_expression(src: str, env: Mapping[str, PLFunction] | None = None) -> PLFunction:
    """Parse ``src`` into a canonical PLFunction."""
    return _Parser(src, env or {}).parse()


# -- printing ------------------------------------------------------------------------


def _coef(c: Fraction) -> str:
    return format_scalar(c)


def format_expression(f: PLFunction) -> str:
    """Canonical text for a global function: ``s*x + c + sum w*max(0, x - b)``.

    ``s`` is the left tail slope and each breakpoint contributes its slope jump
    ``w`` times a ramp, so ``parse_expression(format_expression(f)) == f``.
    """
    if f.is_bottom:
        raise ValueError("0_T has no expression form")
    if f.window is not None:
        raise ValueError("windowed functions have no expression form; use to_json")
    s0 = f.slopes[0]
    jumps = [(c.location, c.jump) for c in plfun.crossings(f)]
    c0 = f._eval(Fraction(0)) - sum(w * max(Fraction(0), -b) for b, w in jumps)
    parts = []
    if s0 != 0:
        parts.append(f"{_coef(s0)}*x")
    if c0 != 0 or not parts and not jumps:
        parts.append(_coef(c0))
    for b, w in jumps:
        if b == 0:
            ramp = "max(0, x)"
        elif b > 0:
            ramp = f"max(0, x - {_coef(b)})"
        else:
            ramp = f"max(0, x + {_coef(-b)})"
        parts.append(f"{_coef(w)}*{ramp}")
    text = parts[0]
    for p in parts[1:]:
        text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return text


# -- JSON ------------------------------------------------------------------------------


def to_dict(f: PLFunction) -> dict:
    if f.is_bottom:
        return {"form": "bottom"}
    out = {
        "form": "global" if f.window is None else "windowed",
        "anchor": [_coef(f.anchor[0]), _coef(f.anchor[1])],
        "breakpoints": [_coef(b) for b in f.breakpoints],
        "slopes": [_coef(s) for s in f.slopes],
    }
    if f.window is not None:
        out["window"] = [_coef(f.window[0]), _coef(f.window[1])]
    return out


def from_dict(d: Mapping) -> PLFunction:
    form = d.get("form")
    if form == "bottom":
        return plfun.BOTTOM_FUNCTION
    if form not in ("global", "windowed"):
        raise ValueError(f"unknown form {form!r}")
    window = None
    if form == "windowed":
        window = (Fraction(d["window"][0]), Fraction(d["window"][1]))
    return PLFunction(
        anchor=(Fraction(d["anchor"][0]), Fraction(d["anchor"][1])),
        breakpoints=tuple(Fraction(b) for b in d["breakpoints"]),
        slopes=tuple(Fraction(s) for s in d["slopes"]),
        window=window,
    )


def to_json(f: PLFunction) -> str:
    return json.dumps(to_dict(f), sort_keys=True)


def from_json(text: str) -> PLFunction:
    return from_dict(json.loads(text))
