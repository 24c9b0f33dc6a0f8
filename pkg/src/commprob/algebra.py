"""Symbolic connected linear algebraic groups and their commuting probability.

A group is described by a small expression tree (simple types, ``GL(n)``,
tori, vector groups, unipotent radicals and Borel subgroups of simple
groups, and direct products).  For such a group ``G`` of dimension ``n`` and
regular rank ``r`` the commuting probability is ``(n + r) / 2n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

# family -> smallest admissible rank; exceptional families have fixed rank
MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
EXCEPTIONAL = {"G2": (2, 14), "F4": (4, 52), "E6": (6, 78), "E7": (7, 133), "E8": (8, 248)}
FAMILIES = ("A", "B", "C", "D", "G2", "F4", "E6", "E7", "E8")


def _classical_dim(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 2)
    if family in ("B", "C"):
        return rank * (2 * rank + 1)
    return rank * (2 * rank - 1)


@dataclass(frozen=True)
class SimpleType:
    """A simple algebraic group up to isogeny, e.g. ``SimpleType("B", 3)``.

    ``label`` remembers the spelling the group was written in (``Sp(4)`` is
    stored as B2) and is ignored by equality.
    """

    family: str
    rank: int
    label: str | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.family in EXCEPTIONAL:
            expected = EXCEPTIONAL[self.family][0]
            if self.rank != expected:
                raise ValueError(f"{self.family} has rank {expected}, got {self.rank}")
        elif self.family in MIN_RANK:
            if not isinstance(self.rank, int) or self.rank < MIN_RANK[self.family]:
                raise ValueError(
                    f"type {self.family} needs rank >= {MIN_RANK[self.family]}, got {self.rank}"
                )
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def exceptional(cls, name: str) -> SimpleType:
        return cls(name, EXCEPTIONAL[name][0])

    @property
    def dim(self) -> int:
        if self.family in EXCEPTIONAL:
            return EXCEPTIONAL[self.family][1]
        return _classical_dim(self.family, self.rank)

    @property
    def positive_roots(self) -> int:
        return (self.dim - self.rank) // 2

    @property
    def name(self) -> str:
        """Cartan label such as ``A3`` or ``E8``."""
        if self.family in EXCEPTIONAL:
            return self.family
        return f"{self.family}{self.rank}"

    def classical_name(self) -> str:
        """Matrix-group spelling used by the expression grammar."""
        if self.label is not None:
            return self.label
        r = self.rank
        return {
            "A": f"SL({r + 1})",
            "B": f"SO({2 * r + 1})",
            "C": f"Sp({2 * r})",
            "D": f"SO({2 * r})",
        }.get(self.family, self.family)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.dim, FAMILIES.index(self.family), self.rank)


# ---------------------------------------------------------------------------
# Expression tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Simple:
    type: SimpleType


@dataclass(frozen=True)
class GL:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("GL(n) needs n >= 1")


@dataclass(frozen=True)
class Torus:
    """The split torus ``Gm^d``."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("Torus(d) needs d >= 1")


@dataclass(frozen=True)
class Additive:
    """The vector group ``Ga^d``."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("Additive(d) needs d >= 1")


@dataclass(frozen=True)
class UnipotentRadical:
    """Unipotent radical of a Borel subgroup of a simple group."""

    type: SimpleType


@dataclass(frozen=True)
class Borel:
    type: SimpleType


@dataclass(frozen=True)
class Trivial:
    pass


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise ValueError("empty product")
        for f in self.factors:
            if isinstance(f, (Product, Trivial)):
                raise ValueError("product factors must be non-trivial and unnested")


GroupExpr = Union[Simple, GL, Torus, Additive, UnipotentRadical, Borel, Trivial, Product]
ATOMS = (Simple, GL, Torus, Additive, UnipotentRadical, Borel)


def product(*groups: GroupExpr) -> GroupExpr:
    """Direct product with nested products flattened and trivial factors dropped."""
    flat: list = []
    for g in groups:
        if isinstance(g, Product):
            flat.extend(g.factors)
        elif not isinstance(g, Trivial):
            flat.append(g)
    if not flat:
        return Trivial()
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def factors(g: GroupExpr) -> tuple:
    if isinstance(g, Product):
        return g.factors
    if isinstance(g, Trivial):
        return ()
    return (g,)


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------


def _atom_dim(g) -> int:
    if isinstance(g, Simple):
        return g.type.dim
    if isinstance(g, GL):
        return g.n * g.n
    if isinstance(g, (Torus, Additive)):
        return g.d
    if isinstance(g, UnipotentRadical):
        return g.type.positive_roots
    if isinstance(g, Borel):
        return g.type.positive_roots + g.type.rank
    raise TypeError(f"not a group expression: {g!r}")


def _atom_regular_rank(g) -> int:
    if isinstance(g, GL):
        return g.n
    if isinstance(g, (Torus, Additive)):
        return g.d
    if isinstance(g, (Simple, UnipotentRadical, Borel)):
        # U and B of a simple group both have regular rank equal to rank(G)
        return g.type.rank
    raise TypeError(f"not a group expression: {g!r}")


def dimension(g: GroupExpr) -> int:
    return sum(_atom_dim(f) for f in factors(g))


def regular_rank(g: GroupExpr) -> int:
    """Dimension of the centralizer of a regular element."""
    return sum(_atom_regular_rank(f) for f in factors(g))


def commuting_probability(g: GroupExpr) -> Fraction:
    """Exact ``(n + r) / 2n``; the trivial group gets 1."""
    n = dimension(g)
    if n == 0:
        return Fraction(1)
    return Fraction(n + regular_rank(g), 2 * n)


@dataclass(frozen=True)
class GroupProfile:
    dim: int
    regular_rank: int
    is_reductive: bool
    is_nilpotent: bool
    is_abelian: bool

    @property
    def p(self) -> Fraction:
        if self.dim == 0:
            return Fraction(1)
        return Fraction(self.dim + self.regular_rank, 2 * self.dim)


def _atom_abelian(g) -> bool:
    if isinstance(g, (Torus, Additive)):
        return True
    if isinstance(g, GL):
        return g.n == 1
    if isinstance(g, UnipotentRadical):
        return g.type.positive_roots == 1  # U(A1) = Ga
    return False


def _atom_nilpotent(g) -> bool:
    if isinstance(g, (UnipotentRadical, Additive, Torus)):
        return True
    return _atom_abelian(g)


def profile(g: GroupExpr) -> GroupProfile:
    fs = factors(g)
    return GroupProfile(
        dim=dimension(g),
        regular_rank=regular_rank(g),
        is_reductive=not any(isinstance(f, (Additive, UnipotentRadical, Borel)) for f in fs),
        is_nilpotent=all(_atom_nilpotent(f) for f in fs),
        is_abelian=all(_atom_abelian(f) for f in fs),
    )


def format_rational(x: Fraction) -> str:
    """``"p/q"`` in lowest terms, or the bare integer when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def simple_types(max_rank: int):
    """Every simple type of rank <= max_rank, each isogeny class once."""
    out = []
    for fam, lo in MIN_RANK.items():
        out.extend(SimpleType(fam, r) for r in range(lo, max_rank + 1))
    out.extend(SimpleType.exceptional(name) for name, (r, _) in EXCEPTIONAL.items() if r <= max_rank)
    return sorted(out, key=SimpleType.sort_key)
