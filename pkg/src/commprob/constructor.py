"""Inverse problems: groups with a prescribed commuting probability."""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor

from .algebra import (
    EXCEPTIONAL,
    GL,
    MIN_RANK,
    Additive,
    GroupExpr,
    Simple,
    SimpleType,
    Torus,
    UnipotentRadical,
    commuting_probability,
    product,
)
from .parser import classical

HALF = Fraction(1, 2)


def _check_target(target) -> Fraction:
    t = Fraction(target)
    if not HALF < t <= 1:
        raise ValueError(
            f"commuting probabilities of connected groups lie in (1/2, 1]; got {t}"
        )
    return t


def _gl_torus_parameters(t: Fraction) -> tuple[int, int, int]:
    """Minimal n with (n+1)/2n <= t, and the multiplicities a (of the
    n^2-dimensional block) and b (of the rank-one abelian block)."""
    p, q = t.numerator, t.denominator
    n = max(1, ceil(Fraction(q, 2 * p - q)))
    a = q - p
    twice_b = 2 * n * n * p - n * n * q - n * q
    assert twice_b % 2 == 0, "n^2 - n is even, so b must be an integer"
    b = twice_b // 2
    assert b >= 0 and a >= 0
    return n, a, b


def construct_reductive(target) -> GroupExpr:
    """A group ``GL(n)^a x Gm^b`` with commuting probability ``target``."""
    t = _check_target(target)
    if t == 1:
        return Torus(1)
    n, a, b = _gl_torus_parameters(t)
    g = product(*([GL(n)] * a), *([Torus(b)] if b else []))
    assert commuting_probability(g) == t
    return g


def construct_nilpotent(target) -> GroupExpr:
    """Like :func:`construct_reductive` with ``U(Sp(2n))`` for ``GL(n)`` and
    ``Ga`` for ``Gm``: both substitutes have the same dimension and regular
    rank as the groups they replace."""
    t = _check_target(target)
    if t == 1:
        return Additive(1)
    n, a, b = _gl_torus_parameters(t)
    u = UnipotentRadical(classical("Sp", 2 * n))
    g = product(*([u] * a), *([Additive(b)] if b else []))
    assert commuting_probability(g) == t
    return g


def threshold_ratio_bound(threshold) -> Fraction:
    """Simple groups with p > p/q satisfy dim/rank < q / (2p - q)."""
    t = Fraction(threshold)
    p, q = t.numerator, t.denominator
    return Fraction(q, 2 * p - q)


def simple_groups_above(threshold) -> list[GroupExpr]:
    """All simple groups (one per isogeny class) with ``p(G) > threshold``,
    sorted by dimension."""
    t = Fraction(threshold)
    if not HALF < t < 1:
        raise ValueError(f"threshold must lie in (1/2, 1), got {t}")
    bound = threshold_ratio_bound(t)
    found = []
    # dim/rank is r + 2 for A_r, 2r + 1 for B_r and C_r, 2r - 1 for D_r
    slopes = {"A": (1, 2), "B": (2, 1), "C": (2, 1), "D": (2, -1)}
    for fam, lo in MIN_RANK.items():
        k, c = slopes[fam]
        r = lo
        while k * r + c < bound:
            found.append(SimpleType(fam, r))
            r += 1
    for name, (rank, dim) in EXCEPTIONAL.items():
        if Fraction(dim, rank) < bound:
            found.append(SimpleType.exceptional(name))
    groups = [Simple(s) for s in sorted(found, key=SimpleType.sort_key)]
    return [g for g in groups if commuting_probability(g) > t]


def simplest_rational_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with the smallest denominator in the half-open ``(lo, hi]``.

    Stern-Brocot descent done by continued-fraction steps.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    inner = _simplest_open(lo, hi)
    if hi.denominator < inner.denominator:
        return hi
    return inner


def _simplest_open(a: Fraction, b: Fraction) -> Fraction:
    n = floor(a)
    if n + 1 < b:
        return Fraction(n + 1)
    if a == n:
        return n + Fraction(1, floor(1 / (b - n)) + 1)
    return n + 1 / _simplest_open(1 / (b - n), 1 / (a - n))


def approach_target(alpha, eps) -> GroupExpr:
    """A group whose commuting probability is within ``eps`` of ``alpha``.

    ``alpha`` may be any real in [1/2, 1] (floats are taken at their exact
    binary value); the result always has ``p`` strictly above 1/2.
    """
    a, e = Fraction(alpha), Fraction(eps)
    if not HALF <= a <= 1:
        raise ValueError(f"alpha must lie in [1/2, 1], got {alpha}")
    if e <= 0:
        raise ValueError("eps must be positive")
    lo = max(HALF, a - e)
    hi = min(Fraction(1), a + e)
    return construct_reductive(simplest_rational_between(lo, hi))
