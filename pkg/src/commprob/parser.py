"""Parser and printer for the group-expression language.

Grammar (whitespace is ignored)::

    expr := term { "x" term }
    term := atom [ "^" NAT ]
    atom := "GL(" NAT ")" | "SL(" NAT ")" | "SO(" NAT ")" | "Sp(" EVEN ")"
          | "G2" | "F4" | "E6" | "E7" | "E8"
          | "Gm" | "Ga" | "T(" NAT ")" | "1"
          | "U(" simple ")" | "B(" simple ")"

``Gm^d`` and ``Ga^d`` are a single torus / vector group of dimension ``d``;
on every other atom ``^k`` is a k-fold direct product.
"""

from __future__ import annotations

import re
from itertools import groupby

from .algebra import (
    EXCEPTIONAL,
    GL,
    Additive,
    Borel,
    GroupExpr,
    Product,
    Simple,
    SimpleType,
    Torus,
    Trivial,
    UnipotentRadical,
    product,
)

_TOKEN = re.compile(r"\s*(?:(GL|SL|SO|Sp|G2|F4|E6|E7|E8|Gm|Ga|T|U|B|x)|(\d+)|([()^]))")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def classical(kind: str, n: int) -> SimpleType:
    """Normalize ``SL(n)``, ``SO(n)``, ``Sp(n)`` to a canonical simple type.

    Low-rank coincidences are folded onto the canonical family
    (Sp(2) = SL(2), Sp(4) ~ SO(5), SO(6) ~ SL(4)).  SO(3), SO(4) and the
    abelian cases are rejected.
    """
    label = f"{kind}({n})"
    if kind == "SL":
        if n < 2:
            raise ValueError(f"{label} is not a simple group")
        return SimpleType("A", n - 1, label)
    if kind == "Sp":
        if n % 2 or n < 2:
            raise ValueError(f"{label}: symplectic groups need even degree >= 2")
        m = n // 2
        if m == 1:
            return SimpleType("A", 1, label)
        if m == 2:
            return SimpleType("B", 2, label)
        return SimpleType("C", m, label)
    if kind == "SO":
        if n % 2:
            if n < 5:
                raise ValueError(f"{label} is outside the B-series range (n >= 2)")
            return SimpleType("B", (n - 1) // 2, label)
        if n == 6:
            return SimpleType("A", 3, label)
        if n < 8:
            raise ValueError(f"{label} is not a simple group")
        return SimpleType("D", n // 2, label)
    raise ValueError(f"unknown classical group {kind}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if m is None:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[start]!r}", start)
            name, num, punct = m.groups()
            start = m.start(m.lastindex)
            if name is not None:
                self.tokens.append(("name", name, start))
            elif num is not None:
                self.tokens.append(("num", num, start))
            else:
                self.tokens.append((punct, punct, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("eof", "", len(self.text))

    def take(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def nat(self) -> int:
        tok = self.take("num")
        value = int(tok[1])
        if value < 1:
            raise ParseError("expected a positive integer", tok[2])
        return value

    def expr(self) -> GroupExpr:
        terms = [self.term()]
        while self.peek()[:2] == ("name", "x"):
            self.i += 1
            terms.append(self.term())
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return product(*terms)

    def term(self) -> GroupExpr:
        head = self.peek()
        atom = self.atom()
        if self.peek()[0] == "^":
            self.i += 1
            k = self.nat()
            if head[1] == "Gm":
                return Torus(k)
            if head[1] == "Ga":
                return Additive(k)
            return product(*([atom] * k))
        return atom

    def _paren_nat(self) -> tuple[int, int]:
        self.take("(")
        tok = self.peek()
        n = self.nat()
        self.take(")")
        return n, tok[2]

    def simple(self) -> SimpleType:
        tok = self.take("name")
        name, pos = tok[1], tok[2]
        if name in EXCEPTIONAL:
            return SimpleType.exceptional(name)
        if name in ("SL", "SO", "Sp"):
            n, npos = self._paren_nat()
            try:
                return classical(name, n)
            except ValueError as exc:
                raise ParseError(str(exc), npos) from None
        raise ParseError(f"expected a simple group, got {name!r}", pos)

    def atom(self) -> GroupExpr:
        tok = self.peek()
        kind, value, pos = tok
        if kind == "num":
            if value != "1":
                raise ParseError(f"unexpected number {value!r}", pos)
            self.i += 1
            return Trivial()
        if kind != "name" or value == "x":
            raise ParseError(f"expected a group, got {value or 'end of input'!r}", pos)
        if value in ("SL", "SO", "Sp") or value in EXCEPTIONAL:
            return Simple(self.simple())
        self.i += 1
        if value == "GL":
            return GL(self._paren_nat()[0])
        if value == "T":
            return Torus(self._paren_nat()[0])
        if value == "Gm":
            return Torus(1)
        if value == "Ga":
            return Additive(1)
        # U( simple ) | B( simple )
        self.take("(")
        st = self.simple()
        self.take(")")
        return UnipotentRadical(st) if value == "U" else Borel(st)


def parse_group_expr(text: str) -> GroupExpr:
    """Parse ``text`` into a group expression; raises :class:`ParseError`."""
    return _Parser(text).expr()


def _format_atom(g) -> str:
    if isinstance(g, Simple):
        return g.type.classical_name()
    if isinstance(g, GL):
        return f"GL({g.n})"
    if isinstance(g, Torus):
        return "Gm" if g.d == 1 else f"Gm^{g.d}"
    if isinstance(g, Additive):
        return "Ga" if g.d == 1 else f"Ga^{g.d}"
    if isinstance(g, UnipotentRadical):
        return f"U({g.type.classical_name()})"
    if isinstance(g, Borel):
        return f"B({g.type.classical_name()})"
    raise TypeError(f"not an atom: {g!r}")


def _format_run(g, k: int) -> str:
    if k == 1:
        return _format_atom(g)
    if isinstance(g, Torus):
        return f"T({g.d})^{k}"
    if isinstance(g, Additive):
        # no grammar for a repeated Ga^d block other than spelling it out
        return " x ".join([_format_atom(g)] * k)
    return f"{_format_atom(g)}^{k}"


def format_group_expr(g: GroupExpr) -> str:
    """Inverse of :func:`parse_group_expr` (up to the spelling of aliases)."""
    if isinstance(g, Trivial):
        return "1"
    fs = g.factors if isinstance(g, Product) else (g,)
    return " x ".join(_format_run(f, len(list(run))) for f, run in groupby(fs))
