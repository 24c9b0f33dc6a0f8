"""Isomorphism invariants and small-group isomorphism testing for subgroups
of a :class:`FiniteGroupTable` given as sorted index arrays."""

from __future__ import annotations

from collections import Counter
from math import lcm

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .groups import FiniteGroupTable


def closure(t: FiniteGroupTable, gens) -> np.ndarray:
    """Sorted indices of the subgroup generated by ``gens``."""
    gens = [int(g) for g in gens]
    seen = np.zeros(t.order, dtype=bool)
    ident = t.identity
    seen[ident] = True
    frontier = np.array([ident])
    while frontier.size:
        new = []
        for g in gens:
            prods = t.mul(frontier, g)
            prods = np.unique(prods[~seen[prods]])
            seen[prods] = True
            new.append(prods)
        frontier = np.unique(np.concatenate(new)) if new else np.array([], dtype=np.int64)
    return np.flatnonzero(seen)


def generating_set(t: FiniteGroupTable, sub: np.ndarray) -> list[int]:
    """A small generating set for ``sub``, picking high-order elements first."""
    sub = np.sort(np.asarray(sub))
    by_order = sub[np.lexsort((sub, -t.orders[sub]))]
    gens: list[int] = []
    have = closure(t, gens)
    while len(have) < len(sub):
        missing = by_order[~np.isin(by_order, have)]
        gens.append(int(missing[0]))
        have = closure(t, gens)
    return gens


def _commutes(t: FiniteGroupTable, xs: np.ndarray, g: int) -> np.ndarray:
    a = t.elements[xs]
    b = t.elements[g]
    return ((a @ b) % t.q == (b @ a) % t.q).all(axis=(1, 2))


def _local_orbit_count(t: FiniteGroupTable, sub: np.ndarray, gens: list[int]) -> int:
    """Number of conjugacy classes of the subgroup itself."""
    m = len(sub)
    if not gens:
        return m
    rows, cols = [], []
    elems = t.elements[sub]
    for g in gens:
        s = t.elements[g]
        s_inv = t.elements[int(t.inverses[g])]
        img = t.lookup((s @ elems % t.q) @ s_inv % t.q)
        rows.append(np.arange(m))
        cols.append(np.searchsorted(sub, img))
    rows, cols = np.concatenate(rows), np.concatenate(cols)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(m, m))
    return int(connected_components(graph, directed=True, connection="weak")[0])


def fingerprint(t: FiniteGroupTable, sub) -> tuple:
    """(order, abelian, |center|, exponent, class count, element-order histogram)."""
    sub = np.sort(np.asarray(sub))
    gens = generating_set(t, sub)
    central = np.ones(len(sub), dtype=bool)
    for g in gens:
        central &= _commutes(t, sub, g)
    center = int(central.sum())
    orders = t.orders[sub].tolist()
    return (
        len(sub),
        center == len(sub),
        center,
        lcm(*orders),
        _local_orbit_count(t, sub, gens),
        tuple(sorted(Counter(orders).items())),
    )


def cayley_table(t: FiniteGroupTable, sub) -> np.ndarray:
    """Multiplication table of ``sub`` in local indices (position in ``sub``)."""
    sub = np.sort(np.asarray(sub))
    prods = t.mul(sub[:, None], sub[None, :])
    return np.searchsorted(sub, prods)


def _extend(table1, table2, gens, images, e1, e2):
    """The homomorphism on <gens> sending gens to images, or None."""
    phi = {e1: e2}
    queue = [e1]
    for x in queue:
        fx = phi[x]
        for g, h in zip(gens, images):
            y = int(table1[x, g])
            v = int(table2[fx, h])
            old = phi.get(y)
            if old is None:
                phi[y] = v
                queue.append(y)
            elif old != v:
                return None
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def is_isomorphic(t: FiniteGroupTable, sub1, sub2) -> bool:
    """Exhaustive isomorphism test of two subgroups (meant for small orders)."""
    sub1, sub2 = np.sort(np.asarray(sub1)), np.sort(np.asarray(sub2))
    if len(sub1) != len(sub2):
        return False
    fp1, fp2 = fingerprint(t, sub1), fingerprint(t, sub2)
    if fp1 != fp2:
        return False
    if fp1[1]:
        # finite abelian groups are determined by their element-order counts
        return True
    table1, table2 = cayley_table(t, sub1), cayley_table(t, sub2)
    e1 = int(np.searchsorted(sub1, t.identity))
    e2 = int(np.searchsorted(sub2, t.identity))
    gens = [int(np.searchsorted(sub1, g)) for g in generating_set(t, sub1)]
    ord1, ord2 = t.orders[sub1], t.orders[sub2]
    candidates = [np.flatnonzero(ord2 == ord1[g]).tolist() for g in gens]

    def search(k: int, images: list[int]) -> bool:
        phi = _extend(table1, table2, gens[:k], images, e1, e2)
        if phi is None:
            return False
        if k == len(gens):
            return len(phi) == len(sub1)
        return any(search(k + 1, images + [c]) for c in candidates[k])

    return search(0, [])

