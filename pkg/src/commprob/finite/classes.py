"""Centralizers, commuting pairs and the conjugacy / z / iz / dz partitions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from weakref import WeakKeyDictionary

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .groups import FiniteGroupTable, PrimeField
from .iso import fingerprint, is_isomorphic

ISO_SEARCH_LIMIT = 128
KINDS = ("conjugacy", "z", "iz", "dz")


@dataclass(frozen=True, eq=False)
class ClassPartition:
    """A partition of a table's element indices.

    ``labels[i]`` is the block of element ``i``; blocks are numbered in order
    of their smallest element.  ``unresolved`` lists blocks whose merging
    rests on matching fingerprints alone.
    """

    kind: str
    labels: np.ndarray = field(repr=False)
    unresolved: frozenset = frozenset()

    def __post_init__(self):
        # renumber by first occurrence so equal partitions compare equal
        uniq, first, inverse = np.unique(self.labels, return_index=True, return_inverse=True)
        rank = np.argsort(np.argsort(first))
        remap = dict(zip(uniq.tolist(), rank.tolist()))
        labels = rank[inverse.ravel()]
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "unresolved", frozenset(remap[b] for b in self.unresolved))

    def __len__(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    @property
    def blocks(self) -> list[frozenset]:
        order = np.argsort(self.labels, kind="stable")
        cuts = np.flatnonzero(np.diff(self.labels[order])) + 1
        return [frozenset(int(i) for i in chunk) for chunk in np.split(order, cuts)]

    def block_sizes(self) -> list[int]:
        return np.bincount(self.labels).tolist()

    def refines(self, other: ClassPartition) -> bool:
        """True when every block of ``self`` lies inside a block of ``other``."""
        seen = {}
        for mine, theirs in zip(self.labels.tolist(), other.labels.tolist()):
            if seen.setdefault(mine, theirs) != theirs:
                return False
        return True

    def __eq__(self, other):
        return isinstance(other, ClassPartition) and np.array_equal(self.labels, other.labels)

    __hash__ = None


def centralizer(t: FiniteGroupTable, g: int) -> frozenset:
    """Indices of all h with hg = gh, by checking every h."""
    return frozenset(np.flatnonzero(_commutes_with(t, g)).tolist())


def _commutes_with(t: FiniteGroupTable, g: int) -> np.ndarray:
    m = t.elements[g]
    left = np.matmul(m, t.elements) % t.q
    right = np.matmul(t.elements, m) % t.q
    return (left == right).all(axis=(1, 2))


def _commutator_operators(mats: np.ndarray, q: int) -> np.ndarray:
    """For each g the matrix of vec(h) -> vec(gh - hg) (row-major vec), mod q."""
    n = mats.shape[-1]
    eye = np.eye(n, dtype=np.int64)
    left = np.einsum("bij,kl->bikjl", mats, eye)
    right = np.einsum("ij,blk->bikjl", eye, mats)
    return ((left - right) % q).reshape(len(mats), n * n, n * n)


def _batched_rref(a: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-reduce a stack of matrices mod q.

    Returns the reduced stack and a boolean (batch, column) pivot mask.
    """
    a = a.copy() % q
    b, m, k = a.shape
    inv = PrimeField(q).inverse_table()
    rank = np.zeros(b, dtype=np.int64)
    pivots = np.zeros((b, k), dtype=bool)
    rows = np.arange(m)
    ib = np.arange(b)
    for col in range(k):
        cand = (a[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = ib[has]
        piv = cand[has].argmax(axis=1)
        r = rank[has]
        top, prow = a[sel, r].copy(), a[sel, piv].copy()
        a[sel, r], a[sel, piv] = prow, top
        a[sel, r] = a[sel, r] * inv[a[sel, r, col]][:, None] % q
        factor = a[sel, :, col].copy()
        factor[np.arange(len(sel)), r] = 0
        a[sel] = (a[sel] - factor[:, :, None] * a[sel, r][:, None, :]) % q
        pivots[sel, col] = True
        rank[has] += 1
    return a, pivots


def _kernel_vectors(rref: np.ndarray, pivots: np.ndarray, q: int) -> np.ndarray:
    """All solutions of R x = 0 for one reduced matrix R, shape (q^d, k)."""
    k = len(pivots)
    free = np.flatnonzero(~pivots)
    piv = np.flatnonzero(pivots)
    d = len(free)
    codes = np.arange(q**d, dtype=np.int64)
    params = (codes[:, None] // q ** np.arange(d - 1, -1, -1, dtype=np.int64)) % q
    x = np.zeros((q**d, k), dtype=np.int64)
    x[:, free] = params
    x[:, piv] = (-params @ rref[: len(piv)][:, free].T) % q
    return x


def centralizer_orders(t: FiniteGroupTable, chunk: int = 4096) -> np.ndarray:
    """|Z(g)| for every element, counted exactly without conjugacy data.

    h commutes with g iff vec(h) lies in the kernel of A_g: vec(h) -> vec(gh - hg).
    When that kernel (the centralizer of g in the full matrix algebra) has at
    most |G| vectors they are enumerated and looked up in the table; otherwise
    A_g is applied to every group element instead.
    """
    flat = t.elements.reshape(t.order, -1)
    out = np.empty(t.order, dtype=np.int64)
    for start in range(0, t.order, chunk):
        ops = _commutator_operators(t.elements[start:start + chunk], t.q)
        rref, pivots = _batched_rref(ops, t.q)
        for j in range(len(ops)):
            free = int((~pivots[j]).sum())
            if t.q**free <= t.order:
                kernel = _kernel_vectors(rref[j], pivots[j], t.q).reshape(-1, t.n, t.n)
                out[start + j] = _count_members(t, kernel)
            else:
                out[start + j] = int((((flat @ ops[j].T) % t.q) == 0).all(axis=1).sum())
    return out


def _count_members(t: FiniteGroupTable, mats: np.ndarray) -> int:
    c = t.encode(mats)
    pos = np.minimum(np.searchsorted(t.codes, c), t.order - 1)
    return int((t.codes[pos] == c).sum())


def commuting_pairs(t: FiniteGroupTable) -> int:
    """|{(g, h) : gh = hg}|."""
    return int(centralizer_orders(t).sum())


def conjugation_perms(t: FiniteGroupTable) -> list[np.ndarray]:
    return [t.conjugation_perm(s) for s in t.gens]


def _orbits(size: int, perms: list[np.ndarray]) -> np.ndarray:
    if not perms:
        return np.arange(size)
    rows = np.concatenate([np.arange(size)] * len(perms))
    cols = np.concatenate(perms)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


def conjugacy_classes(t: FiniteGroupTable) -> ClassPartition:
    """Conjugation orbits, closed under conjugation by the table's generators."""
    part = ClassPartition("conjugacy", _orbits(t.order, conjugation_perms(t)))
    for size in part.block_sizes():
        assert t.order % size == 0, "orbit size must divide |G|"
    return part


def commuting_probability_finite(t: FiniteGroupTable) -> Fraction:
    """Fraction of commuting ordered pairs; checked against k/|G|."""
    pairs = commuting_pairs(t)
    k = len(conjugacy_classes(t))
    assert pairs == k * t.order, f"{t.name}: {pairs} commuting pairs but k|G| = {k * t.order}"
    return Fraction(pairs, t.order**2)


def regular_elements(t: FiniteGroupTable) -> frozenset:
    """Elements whose centralizer has the smallest order."""
    orders = class_data(t).centralizer_order_by_element
    return frozenset(np.flatnonzero(orders == orders.min()).tolist())


class ClassData:
    """Per-table cache of conjugacy classes and representative centralizers.

    All four equivalences are unions of conjugacy classes, so they are
    decided on one representative per class.
    """

    def __init__(self, t: FiniteGroupTable):
        self.table = t

    @cached_property
    def perms(self) -> list[np.ndarray]:
        return conjugation_perms(self.table)

    @cached_property
    def conjugacy(self) -> ClassPartition:
        return conjugacy_classes(self.table)

    @cached_property
    def reps(self) -> np.ndarray:
        _, first = np.unique(self.conjugacy.labels, return_index=True)
        return first

    @cached_property
    def rep_centralizers(self) -> list[np.ndarray]:
        return [np.flatnonzero(_commutes_with(self.table, int(r))) for r in self.reps]

    @cached_property
    def centralizer_order_by_element(self) -> np.ndarray:
        sizes = np.array([len(c) for c in self.rep_centralizers], dtype=np.int64)
        return sizes[self.conjugacy.labels]

    def subgroup_orbit(self, sub: np.ndarray) -> set[bytes]:
        """Keys of all conjugates of the subgroup ``sub``."""
        start = np.sort(sub).tobytes()
        seen = {start}
        frontier = [np.sort(sub)]
        while frontier:
            nxt = []
            for s in frontier:
                for perm in self.perms:
                    img = np.sort(perm[s])
                    key = img.tobytes()
                    if key not in seen:
                        seen.add(key)
                        nxt.append(img)
            frontier = nxt
        return seen

    @cached_property
    def z_of_class(self) -> np.ndarray:
        """z-class id for each conjugacy class."""
        owner: dict[bytes, int] = {}
        ids = np.empty(len(self.reps), dtype=np.int64)
        next_id = 0
        for c, cent in enumerate(self.rep_centralizers):
            key = np.sort(cent).tobytes()
            if key not in owner:
                for k in self.subgroup_orbit(cent):
                    owner[k] = next_id
                next_id += 1
            ids[c] = owner[key]
        return ids

    @cached_property
    def iz_of_class(self) -> tuple[np.ndarray, frozenset]:
        z = self.z_of_class
        # one representative centralizer per z-class
        z_rep = {}
        for c, zid in enumerate(z.tolist()):
            z_rep.setdefault(zid, c)
        groups: list[list] = []  # [fingerprint, centralizer, iz id, resolved]
        iz_of_z = {}
        unresolved = set()
        for zid, c in z_rep.items():
            cent = self.rep_centralizers[c]
            fp = fingerprint(self.table, cent)
            for entry in groups:
                if entry[0] != fp:
                    continue
                if len(cent) <= ISO_SEARCH_LIMIT:
                    if is_isomorphic(self.table, cent, entry[1]):
                        iz_of_z[zid] = entry[2]
                        break
                else:
                    iz_of_z[zid] = entry[2]
                    unresolved.add(entry[2])
                    break
            else:
                iz_of_z[zid] = len(groups)
                groups.append([fp, cent, len(groups)])
        ids = np.array([iz_of_z[zid] for zid in z.tolist()], dtype=np.int64)
        return ids, frozenset(unresolved)


_CLASS_DATA: WeakKeyDictionary = WeakKeyDictionary()


def class_data(t: FiniteGroupTable) -> ClassData:
    data = _CLASS_DATA.get(t)
    if data is None:
        data = _CLASS_DATA[t] = ClassData(t)
    return data


def _lift(t: FiniteGroupTable, kind: str, class_ids: np.ndarray, unresolved=frozenset()) -> ClassPartition:
    data = class_data(t)
    labels = np.asarray(class_ids)[data.conjugacy.labels]
    return ClassPartition(kind, labels, frozenset(unresolved))


def z_classes(t: FiniteGroupTable) -> ClassPartition:
    """g ~ h when their centralizers are conjugate in the group."""
    return _lift(t, "z", class_data(t).z_of_class)


def iz_classes(t: FiniteGroupTable) -> ClassPartition:
    """g ~ h when their centralizers are isomorphic as abstract groups.

    Centralizers with equal fingerprints are compared by exhaustive search up
    to order 128; larger ones are merged on the fingerprint and reported in
    ``unresolved``.
    """
    ids, unresolved = class_data(t).iz_of_class
    return _lift(t, "iz", ids, unresolved)


def dz_classes(t: FiniteGroupTable) -> ClassPartition:
    """g ~ h when their centralizers have the same order.

    This is the finite stand-in for equal centralizer dimension and can split
    classes that share a dimension (e.g. split tori and unipotent centralizers
    in SL2); use growth degrees for dimension-faithful statements.
    """
    sizes = np.array([len(c) for c in class_data(t).rep_centralizers])
    _, ids = np.unique(sizes, return_inverse=True)
    return _lift(t, "dz", ids.ravel())


def partitions(t: FiniteGroupTable) -> dict[str, ClassPartition]:
    data = class_data(t)
    return {
        "conjugacy": data.conjugacy,
        "z": z_classes(t),
        "iz": iz_classes(t),
        "dz": dz_classes(t),
    }
