"""Rows for the simple-group and unipotent-radical probability tables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    EXCEPTIONAL,
    GL,
    MIN_RANK,
    Simple,
    SimpleType,
    UnipotentRadical,
    commuting_probability,
    dimension,
    regular_rank,
)

# (label, dim, rank, p) with n the matrix size / series index
SIMPLE_FORMULAS = [
    ("GL(n), n >= 1", "n^2", "n", "1/2 + 1/2n"),
    ("SL(n) = A(n-1), n >= 2", "n^2-1", "n-1", "1/2 + 1/2(n+1)"),
    ("SO(2n+1) = B(n), n >= 2", "2n^2+n", "n", "1/2 + 1/2(2n+1)"),
    ("Sp(2n) = C(n), n >= 3", "2n^2+n", "n", "1/2 + 1/2(2n+1)"),
    ("SO(2n) = D(n), n >= 4", "2n^2-n", "n", "1/2 + 1/2(2n-1)"),
]

UNIPOTENT_FORMULAS = [
    ("U(SL(n)), n >= 2", "n(n-1)/2", "n-1", "1/2 + 1/n"),
    ("U(SO(2n+1)), n >= 2", "n^2", "n", "1/2 + 1/2n"),
    ("U(Sp(2n)), n >= 3", "n^2", "n", "1/2 + 1/2n"),
    ("U(SO(2n)), n >= 4", "n^2-n", "n", "1/2 + 1/(2n-2)"),
]


@dataclass(frozen=True)
class Row:
    group: str
    dim: int | str
    rank: int | str
    p: Fraction | str


def _classical_types(max_rank: int) -> list[SimpleType]:
    return [SimpleType(f, r) for f, lo in MIN_RANK.items() for r in range(lo, max_rank + 1)]


def _exceptional_types() -> list[SimpleType]:
    return [SimpleType.exceptional(name) for name in EXCEPTIONAL]


def simple_rows(max_rank: int = 8) -> list[Row]:
    rows = [Row(*f) for f in SIMPLE_FORMULAS]
    for n in range(1, max_rank + 1):
        g = GL(n)
        rows.append(Row(f"GL({n})", dimension(g), regular_rank(g), commuting_probability(g)))
    for st in _classical_types(max_rank) + _exceptional_types():
        g = Simple(st)
        rows.append(Row(st.name, dimension(g), regular_rank(g), commuting_probability(g)))
    return rows


def unipotent_rows(max_rank: int = 8) -> list[Row]:
    rows = [Row(*f) for f in UNIPOTENT_FORMULAS]
    for st in _classical_types(max_rank) + _exceptional_types():
        g = UnipotentRadical(st)
        rows.append(Row(f"U({st.name})", dimension(g), regular_rank(g), commuting_probability(g)))
    return rows
