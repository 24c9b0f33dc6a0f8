from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest

from commprob.algebra import dimension, regular_rank
from commprob.finite import (
    OrderCapExceeded,
    algebraic_group,
    centralizer,
    centralizer_orders,
    commuting_pairs,
    commuting_probability_finite,
    conjugacy_classes,
    dz_classes,
    enumerate_group,
    group_order,
    growth_degree,
    iz_classes,
    partitions,
    regular_elements,
    z_classes,
)
from commprob.finite.growth import NotPolynomial, evaluate, fit_degree, lagrange_coefficients, log_ratio
from commprob.finite.iso import closure, fingerprint, is_isomorphic


# -- pure-Python oracle, independent of the numpy table ----------------------

def _mul(a, b, n, q):
    return tuple(
        sum(a[i * n + k] * b[k * n + j] for k in range(n)) % q for i in range(n) for j in range(n)
    )


def _det(m, n, q):
    if n == 1:
        return m[0] % q
    total = 0
    for j in range(n):
        minor = tuple(m[r * n + c] for r in range(1, n) for c in range(n) if c != j)
        total += (-1) ** j * m[j] * _det(minor, n - 1, q)
    return total % q


def naive_group(family, n, q):
    out = []
    for m in product(range(q), repeat=n * n):
        d = _det(m, n, q)
        lower_zero = all(m[i * n + j] == 0 for i in range(n) for j in range(i))
        diag_one = all(m[i * n + i] == 1 for i in range(n))
        if family == "GL" and d:
            out.append(m)
        elif family == "SL" and d == 1:
            out.append(m)
        elif family == "B" and d and lower_zero:
            out.append(m)
        elif family == "U" and lower_zero and diag_one:
            out.append(m)
    return out


def naive_pairs(elems, n, q):
    return sum(_mul(a, b, n, q) == _mul(b, a, n, q) for a in elems for b in elems)


def naive_class_count(elems, n, q):
    inv = {}
    ident = tuple(int(i == j) for i in range(n) for j in range(n))
    for a in elems:
        for b in elems:
            if _mul(a, b, n, q) == ident:
                inv[a] = b
    classes = {frozenset(_mul(_mul(x, g, n, q), inv[x], n, q) for x in elems) for g in elems}
    return len(classes)


SMALL = [("GL", 2, 2), ("GL", 2, 3), ("SL", 2, 3), ("U", 3, 2), ("U", 3, 3), ("B", 2, 3), ("B", 3, 2), ("SL", 2, 5)]


@pytest.fixture(scope="module")
def tables():
    cache = {}

    def get(family, n, q):
        key = (family, n, q)
        if key not in cache:
            cache[key] = enumerate_group(family, n, q)
        return cache[key]

    return get


# -- enumeration --------------------------------------------------------------

@pytest.mark.parametrize("family, n, q, order", [("GL", 2, 2, 6), ("U", 3, 3, 27), ("SL", 2, 3, 24),
                                                  ("B", 2, 5, 80), ("GL", 3, 2, 168), ("U", 4, 2, 64)])
def test_orders(tables, family, n, q, order):
    assert group_order(family, n, q) == order
    assert tables(family, n, q).order == order


@pytest.mark.parametrize("family, n, q", SMALL)
def test_table_matches_naive_enumeration(tables, family, n, q):
    t = tables(family, n, q)
    assert sorted(t.element(i) for i in range(t.order)) == sorted(naive_group(family, n, q))


@pytest.mark.parametrize("family, n, q", SMALL + [("GL", 3, 2), ("SL", 3, 3), ("B", 3, 3)])
def test_generators_generate_and_table_is_closed(tables, family, n, q):
    t = tables(family, n, q)
    gens = [t.index(g) for g in t.gens]
    assert len(closure(t, gens)) == t.order
    idx = np.arange(t.order)
    assert (t.mul(idx, t.inverses) == t.identity).all()
    rng = np.random.default_rng(0)
    a, b = rng.integers(0, t.order, 200), rng.integers(0, t.order, 200)
    t.mul(a, b)  # raises KeyError if a product leaves the table


def test_order_cap_and_prime_checks():
    with pytest.raises(OrderCapExceeded) as info:
        enumerate_group("GL", 3, 7)
    assert info.value.order == group_order("GL", 3, 7)
    with pytest.raises(ValueError):
        enumerate_group("GL", 2, 4)
    with pytest.raises(ValueError):
        enumerate_group("GL", 5, 2)
    with pytest.raises(ValueError):
        enumerate_group("PGL", 2, 3)


def test_index_lookup(tables):
    t = tables("GL", 2, 3)
    for i in (0, 5, 47):
        assert t.index(t.element(i)) == i
    with pytest.raises(KeyError):
        t.index((0, 0, 0, 0))


# -- centralizers and commuting probability -----------------------------------

def test_centralizer_examples(tables):
    t = tables("U", 3, 2)
    assert centralizer(t, t.identity) == frozenset(range(t.order))
    centre = {i for i in range(t.order) if len(centralizer(t, i)) == t.order}
    assert len(centre) == 2
    for g in set(range(t.order)) - centre:
        c = centralizer(t, g)
        assert len(c) == 4 and g in c and t.identity in c

    s3 = tables("GL", 2, 2)
    involutions = [i for i in range(6) if s3.orders[i] == 2]
    assert len(involutions) == 3
    assert all(len(centralizer(s3, i)) == 2 for i in involutions)


@pytest.mark.parametrize("family, n, q", SMALL)
def test_pair_count_matches_naive(tables, family, n, q):
    t = tables(family, n, q)
    elems = naive_group(family, n, q)
    assert commuting_pairs(t) == naive_pairs(elems, n, q)
    assert len(conjugacy_classes(t)) == naive_class_count(elems, n, q)


@pytest.mark.parametrize("family, n, q", SMALL + [("GL", 3, 2), ("GL", 2, 7)])
def test_centralizer_orders_match_direct_check(tables, family, n, q):
    t = tables(family, n, q)
    direct = [len(centralizer(t, g)) for g in range(t.order)]
    assert centralizer_orders(t).tolist() == direct


def test_finite_probability_examples(tables):
    assert commuting_probability_finite(tables("U", 3, 2)) == F(5, 8)
    assert commuting_probability_finite(tables("GL", 2, 2)) == F(1, 2)
    # B(2, 2) has trivial diagonal, so it is abelian of order 2
    assert commuting_probability_finite(tables("B", 2, 2)) == 1


@pytest.mark.parametrize("family, n, q, k", [("GL", 2, 3, 8), ("U", 3, 2, 5), ("SL", 2, 3, 7), ("GL", 2, 5, 24)])
def test_class_counts(tables, family, n, q, k):
    part = conjugacy_classes(tables(family, n, q))
    assert len(part) == k
    assert sum(part.block_sizes()) == tables(family, n, q).order


@pytest.mark.parametrize("family, n, q", SMALL)
def test_class_equation(tables, family, n, q):
    t = tables(family, n, q)
    part = conjugacy_classes(t)
    orders = centralizer_orders(t)
    for block in part.blocks:
        sizes = {int(orders[i]) for i in block}
        assert len(sizes) == 1
        assert len(block) * sizes.pop() == t.order


# -- partitions ---------------------------------------------------------------

@pytest.mark.parametrize("q", [2, 3, 5])
def test_u3_z_classes(tables, q):
    assert len(z_classes(tables("U", 3, q))) == q + 2


def test_gl23_partitions(tables):
    t = tables("GL", 2, 3)
    assert len(z_classes(t)) == 4
    iz = iz_classes(t)
    assert len(iz) == 4 and not iz.unresolved
    assert sorted(len(centralizer(t, b_min)) for b_min in (min(b) for b in iz.blocks)) == [4, 6, 8, 48]


def test_u32_iz_separates_cyclic_and_klein(tables):
    t = tables("U", 3, 2)
    iz = iz_classes(t)
    # centre (whole group), C4-type and V4-type centralizers
    assert len(iz) == 3
    fps = {fingerprint(t, sorted(centralizer(t, min(b))))[:2] for b in iz.blocks}
    assert (4, True) in fps and (8, False) in fps


def test_dz_examples(tables):
    assert len(dz_classes(tables("U", 3, 2))) == 2
    assert sorted(dz_classes(tables("GL", 2, 2)).block_sizes()) == [1, 2, 3]


def test_abelian_table_single_blocks(tables):
    t = tables("B", 2, 2)  # order 2
    for part in partitions(t).values():
        if part.kind == "conjugacy":
            assert len(part) == t.order
        else:
            assert len(part) == 1
    assert regular_elements(t) == frozenset(range(t.order))


def test_regular_elements_examples(tables):
    s3 = tables("GL", 2, 2)
    assert regular_elements(s3) == frozenset(i for i in range(6) if s3.orders[i] == 2)
    u = tables("U", 3, 2)
    assert len(regular_elements(u)) == 6


@pytest.mark.parametrize("family, n, q", SMALL + [("U", 4, 2), ("GL", 3, 2)])
def test_refinement_chain(tables, family, n, q):
    t = tables(family, n, q)
    parts = partitions(t)
    assert parts["conjugacy"].refines(parts["z"])
    assert parts["z"].refines(parts["iz"])
    assert parts["iz"].refines(parts["dz"])
    orders = centralizer_orders(t)
    for kind in ("z", "iz"):
        for block in parts[kind].blocks:
            assert len({int(orders[i]) for i in block}) == 1
    reg = regular_elements(t)
    assert reg
    for block in parts["conjugacy"].blocks:
        assert block <= reg or not (block & reg)


def test_isomorphism_search_on_nonabelian(tables):
    t = tables("GL", 2, 3)
    sl = np.array(sorted(i for i in range(t.order) if (np.linalg.det(t.elements[i]).round() % 3) == 1))
    assert len(sl) == 24
    assert is_isomorphic(t, sl, sl)
    s3 = tables("GL", 2, 2)
    assert is_isomorphic(s3, np.arange(6), np.arange(6))


def test_dihedral_vs_quaternion_not_isomorphic():
    # U(3,2) is dihedral of order 8; the 2-Sylow of SL(2,3) is quaternion
    u = enumerate_group("U", 3, 2)
    sl = enumerate_group("SL", 2, 3)
    q8 = np.flatnonzero(np.isin(sl.orders, [1, 2, 4]))
    assert len(q8) == 8
    assert fingerprint(u, np.arange(8))[5] != fingerprint(sl, q8)[5]


# -- growth -------------------------------------------------------------------

def test_lagrange_recovers_polynomial():
    xs = [2, 3, 5, 7, 11]
    poly = lambda x: 3 * x**3 - x + 7  # noqa: E731
    coeffs = lagrange_coefficients(xs, [poly(x) for x in xs])
    assert coeffs == [7, -1, 0, 3]
    assert evaluate(coeffs, 13) == poly(13)
    assert fit_degree(xs, [poly(x) for x in xs])[0] == 3
    with pytest.raises(NotPolynomial):
        fit_degree([2, 3, 5], [1, 8, 125])


@pytest.mark.parametrize(
    "family, n, formula, qs",
    [
        ("GL", 2, lambda q: q * q - 1, [2, 3, 5, 7]),
        ("U", 3, lambda q: q * q + q - 1, [2, 3, 5, 7]),
        ("SL", 2, lambda q: q + 4, [3, 5, 7]),
        ("B", 2, lambda q: (q - 1) * q, [2, 3, 5, 7]),
    ],
)
def test_class_count_formulas(tables, family, n, formula, qs):
    for q in qs:
        assert len(conjugacy_classes(tables(family, n, q))) == formula(q)


@pytest.mark.parametrize(
    "family, n, counter, primes, expected",
    [
        ("GL", 2, "order", [2, 3, 5, 7, 11, 13], 4),
        ("GL", 2, "class_count", [3, 5, 7, 11], 2),
        ("U", 3, "class_count", [2, 3, 5, 7], 2),
        ("U", 3, "order", [2, 3, 5, 7, 11], 3),
        ("SL", 2, "class_count", [2, 3, 5, 7, 11], 1),
        ("B", 2, "order", [2, 3, 5, 7, 11], 3),
    ],
)
def test_growth_degree(family, n, counter, primes, expected):
    assert growth_degree(family, n, counter, primes) == expected


def test_growth_degree_needs_enough_primes():
    with pytest.raises(NotPolynomial):
        growth_degree("U", 3, "order", [2, 3, 5])
    with pytest.raises(ValueError):
        growth_degree("U", 3, "order", [2])


@pytest.mark.parametrize("family, n", [("GL", 2), ("SL", 2), ("U", 3), ("B", 2)])
def test_algebraic_group_map(family, n):
    g = algebraic_group(family, n)
    expected = {"GL": (4, 2), "SL": (3, 1), "U": (3, 2), "B": (3, 2)}[family]
    assert (dimension(g), regular_rank(g)) == expected


@pytest.mark.parametrize(
    "family, n, primes",
    [("GL", 2, [2, 3, 5, 7, 11]), ("U", 3, [2, 3, 5, 7, 11]), ("B", 2, [2, 3, 5, 7, 11]), ("SL", 2, [3, 5, 7, 11])],
)
def test_log_ratio_approaches_algebraic_p(tables, family, n, primes):
    g = algebraic_group(family, n)
    target = float(F(dimension(g) + regular_rank(g), 2 * dimension(g)))
    gaps = []
    for q in primes:
        t = tables(family, n, q)
        gaps.append(abs(log_ratio(commuting_pairs(t), t.order) - target))
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
