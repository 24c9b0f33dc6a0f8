"""Brute-force laboratory on finite matrix groups over prime fields."""

from ..algebra import GL, Borel, GroupExpr, Simple, SimpleType, Torus, UnipotentRadical, product
from .classes import (
    ClassPartition,
    centralizer,
    centralizer_orders,
    commuting_pairs,
    commuting_probability_finite,
    conjugacy_classes,
    dz_classes,
    iz_classes,
    partitions,
    regular_elements,
    z_classes,
)
from .groups import (
    DEFAULT_MAX_ORDER,
    FiniteGroupTable,
    OrderCapExceeded,
    PrimeField,
    enumerate_group,
    group_order,
)
from .growth import InsufficientSamples, NotPolynomial, growth_degree


def algebraic_group(family: str, n: int) -> GroupExpr:
    """The algebraic group whose F_q-points the table ``family(n, q)`` holds."""
    a = SimpleType("A", n - 1)
    if family == "GL":
        return GL(n)
    if family == "SL":
        return Simple(a)
    if family == "U":
        return UnipotentRadical(a)
    if family == "B":
        # upper triangular matrices in GL(n): Borel of SL(n) times the centre
        return product(Borel(a), Torus(1))
    raise ValueError(f"unknown family {family!r}")
