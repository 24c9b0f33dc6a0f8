"""Fully materialized matrix groups over prime fields.

Elements are n x n matrices with entries in ``0..p-1``.  A table stores them
sorted by their base-p code (row-major digits), so an element's index is a
binary search away and whole arrays of products can be looked up at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from math import prod

import numpy as np

DEFAULT_MAX_ORDER = 2_000_000
FAMILIES = ("GL", "SL", "B", "U")


class OrderCapExceeded(ValueError):
    def __init__(self, family: str, n: int, q: int, order: int, cap: int):
        super().__init__(f"|{family}({n},{q})| = {order} exceeds the order cap {cap}")
        self.order = order
        self.cap = cap


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = {f for f in range(2, p) if (p - 1) % f == 0 and is_prime(f)}
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise ValueError(f"no primitive root mod {p}")


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def generator(self) -> int:
        return primitive_root(self.p)

    def inverse_table(self) -> np.ndarray:
        """``inv[x]`` is the multiplicative inverse of x (``inv[0] = 0``)."""
        p = self.p
        return np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)


def group_order(family: str, n: int, q: int) -> int:
    """Closed-form order of the finite group."""
    gl = prod(q**n - q**i for i in range(n))
    unip = q ** (n * (n - 1) // 2)
    if family == "GL":
        return gl
    if family == "SL":
        return gl // (q - 1)
    if family == "B":
        return (q - 1) ** n * unip
    if family == "U":
        return unip
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def det_mod(mats: np.ndarray, q: int) -> np.ndarray:
    """Determinants mod q of a stack of k x k integer matrices (Leibniz)."""
    k = mats.shape[-1]
    if k == 0:
        return np.ones(mats.shape[:-2], dtype=np.int64)
    total = np.zeros(mats.shape[:-2], dtype=np.int64)
    for perm in permutations(range(k)):
        sign = 1
        for i in range(k):
            for j in range(i + 1, k):
                if perm[i] > perm[j]:
                    sign = -sign
        term = np.ones(mats.shape[:-2], dtype=np.int64)
        for i, j in enumerate(perm):
            term = term * mats[..., i, j] % q
        total = (total + sign * term) % q
    return total


def inverse_mod(mats: np.ndarray, q: int) -> np.ndarray:
    """Inverses mod q of a stack of invertible matrices, via the adjugate."""
    k = mats.shape[-1]
    inv_det = PrimeField(q).inverse_table()[det_mod(mats, q)]
    adj = np.empty_like(mats)
    idx = np.arange(k)
    for i in range(k):
        for j in range(k):
            minor = mats[..., idx != i, :][..., :, idx != j]
            adj[..., j, i] = (-1) ** (i + j) * det_mod(minor, q)
    return adj * inv_det[..., None, None] % q


def matmul_mod(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    return np.matmul(a, b) % q


def _candidates(family: str, n: int, q: int) -> np.ndarray:
    if family in ("GL", "SL"):
        weights = q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
        total = q ** (n * n)
        chunks = []
        for start in range(0, total, 1 << 18):
            codes = np.arange(start, min(total, start + (1 << 18)), dtype=np.int64)
            mats = ((codes[:, None] // weights) % q).reshape(-1, n, n)
            d = det_mod(mats, q)
            chunks.append(mats[d == 1] if family == "SL" else mats[d != 0])
        return np.concatenate(chunks)
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    diag_values = range(1, q) if family == "B" else [1]
    diags = list(product(diag_values, repeat=n))
    offs = list(product(range(q), repeat=len(upper)))
    mats = np.zeros((len(diags) * len(offs), n, n), dtype=np.int64)
    d = np.repeat(np.array(diags, dtype=np.int64), len(offs), axis=0)
    o = np.tile(np.array(offs, dtype=np.int64).reshape(len(offs), len(upper)), (len(diags), 1))
    for k in range(n):
        mats[:, k, k] = d[:, k]
    for c, (i, j) in enumerate(upper):
        mats[:, i, j] = o[:, c]
    return mats


def _elementary(n: int, i: int, j: int) -> np.ndarray:
    m = np.eye(n, dtype=np.int64)
    m[i, j] = 1
    return m


def generators(family: str, n: int, q: int) -> list[np.ndarray]:
    """A generating set: elementary transvections plus diagonal generators."""
    w = primitive_root(q)
    if family in ("GL", "SL"):
        gens = [_elementary(n, i, j) for i in range(n) for j in range(n) if i != j]
        if family == "GL" and w != 1:
            d = np.eye(n, dtype=np.int64)
            d[0, 0] = w
            gens.append(d)
        return gens
    gens = [_elementary(n, i, j) for i in range(n) for j in range(i + 1, n)]
    if family == "B" and w != 1:
        for k in range(n):
            d = np.eye(n, dtype=np.int64)
            d[k, k] = w
            gens.append(d)
    return gens


@dataclass(frozen=True, eq=False)
class FiniteGroupTable:
    """An immutable finite matrix group with index-based multiplication."""

    family: str
    n: int
    q: int
    elements: np.ndarray = field(repr=False)  # (N, n, n), sorted by code
    codes: np.ndarray = field(repr=False)
    gens: tuple = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.codes)

    def __len__(self) -> int:
        return self.order

    @property
    def name(self) -> str:
        return f"{self.family}({self.n},{self.q})"

    def encode(self, mats: np.ndarray) -> np.ndarray:
        flat = mats.reshape(*mats.shape[:-2], self.n * self.n)
        weights = self.q ** np.arange(self.n * self.n - 1, -1, -1, dtype=np.int64)
        return flat @ weights

    def lookup(self, mats: np.ndarray) -> np.ndarray:
        """Indices of a stack of matrices; raises KeyError for non-members."""
        c = self.encode(np.asarray(mats, dtype=np.int64))
        pos = np.searchsorted(self.codes, c)
        pos = np.minimum(pos, self.order - 1)
        if not np.array_equal(self.codes[pos], c):
            raise KeyError("matrix not in group")
        return pos

    def index(self, element) -> int:
        """Index of a single element given as nested rows or a flat tuple."""
        m = np.asarray(element, dtype=np.int64).reshape(self.n, self.n) % self.q
        return int(self.lookup(m[None])[0])

    def element(self, i: int) -> tuple:
        """Flattened row-major entry tuple of element ``i``."""
        return tuple(int(x) for x in self.elements[i].ravel())

    @property
    def identity(self) -> int:
        return self.index(np.eye(self.n, dtype=np.int64))

    def mul(self, i, j) -> np.ndarray:
        """Indices of products ``elements[i] @ elements[j]`` (broadcasting)."""
        return self.lookup(matmul_mod(self.elements[i], self.elements[j], self.q))

    @cached_property
    def inverses(self) -> np.ndarray:
        """The inverse map as an index array."""
        inv = self.lookup(inverse_mod(self.elements, self.q))
        inv.setflags(write=False)
        return inv

    def conjugation_perm(self, s: np.ndarray) -> np.ndarray:
        """Index permutation ``g -> s g s^-1`` for a matrix ``s`` of the group."""
        s_inv = inverse_mod(s[None], self.q)[0]
        return self.lookup(matmul_mod(matmul_mod(s, self.elements, self.q), s_inv, self.q))

    @cached_property
    def orders(self) -> np.ndarray:
        """Multiplicative order of every element."""
        orders = np.zeros(self.order, dtype=np.int64)
        ident = self.identity
        cur = np.arange(self.order)
        k = 1
        pending = np.ones(self.order, dtype=bool)
        while pending.any():
            hit = pending & (cur == ident)
            orders[hit] = k
            pending &= ~hit
            idx = np.nonzero(pending)[0]
            if idx.size:
                cur[idx] = self.mul(cur[idx], idx)
            k += 1
        orders.setflags(write=False)
        return orders


def enumerate_group(family: str, n: int, q: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroupTable:
    """Materialize ``family(n, q)``: GL, SL, B (upper triangular) or U (unitriangular)."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if n not in (2, 3, 4):
        raise ValueError("n must be 2, 3 or 4")
    PrimeField(q)
    order = group_order(family, n, q)
    if order > max_order:
        raise OrderCapExceeded(family, n, q, order, max_order)
    mats = _candidates(family, n, q)
    weights = q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    codes = mats.reshape(len(mats), n * n) @ weights
    perm = np.argsort(codes, kind="stable")
    mats, codes = mats[perm], codes[perm]
    assert len(codes) == order, f"enumerated {len(codes)} elements, expected {order}"
    for arr in (mats, codes):
        arr.setflags(write=False)
    return FiniteGroupTable(family, n, q, mats, codes, tuple(generators(family, n, q)))
