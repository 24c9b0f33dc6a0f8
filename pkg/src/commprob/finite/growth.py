"""Polynomial growth in q of group orders and class counts.

Counts are interpolated exactly over sample primes (rational Lagrange
interpolation) and the fit is checked on one held-out prime.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .classes import class_data
from .groups import DEFAULT_MAX_ORDER, enumerate_group

COUNTERS = ("order", "class_count")


class InsufficientSamples(ValueError):
    pass


class NotPolynomial(ValueError):
    pass


def _poly_mul_linear(poly: list[Fraction], root) -> list[Fraction]:
    """poly * (x - root); coefficients lowest degree first."""
    out = [Fraction(0)] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] += c
        out[i] -= c * root
    return out


def lagrange_coefficients(xs, ys) -> list[Fraction]:
    """Coefficients (lowest degree first) of the interpolating polynomial."""
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    coeffs = [Fraction(0)] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = _poly_mul_linear(basis, xj)
                denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def evaluate(coeffs, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def degree(coeffs) -> int:
    """Degree of a coefficient list; the zero polynomial gets -1."""
    if len(coeffs) == 1 and coeffs[0] == 0:
        return -1
    return len(coeffs) - 1


def fit_degree(xs, ys) -> tuple[int, list[Fraction]]:
    """Interpolate all but the last point, validate on the last.

    Raises NotPolynomial when the held-out value disagrees.
    """
    if len(xs) < 2:
        raise InsufficientSamples("need at least one interpolation point and one hold-out")
    coeffs = lagrange_coefficients(xs[:-1], ys[:-1])
    if evaluate(coeffs, xs[-1]) != ys[-1]:
        raise NotPolynomial(
            f"no polynomial of degree <= {len(xs) - 2} through the samples at q = {list(xs)}"
        )
    return degree(coeffs), coeffs


def count(family: str, n: int, q: int, counter: str, max_order: int = DEFAULT_MAX_ORDER) -> int:
    t = enumerate_group(family, n, q, max_order=max_order)
    if counter == "order":
        return t.order
    if counter == "class_count":
        return len(class_data(t).conjugacy)
    raise ValueError(f"unknown counter {counter!r}; expected one of {COUNTERS}")


def growth_degree(family: str, n: int, counter: str, primes, max_order: int = DEFAULT_MAX_ORDER) -> int:
    """Degree in q of ``counter`` for ``family(n, q)``, from brute-force counts.

    If the fit fails on all given primes it is retried on the odd ones, since
    some class counts depend on the parity of q.
    """
    primes = sorted(set(primes))
    if len(primes) < 2:
        raise InsufficientSamples("need at least two sample primes")
    values = {q: count(family, n, q, counter, max_order) for q in primes}
    attempts = [primes]
    if 2 in primes:
        attempts.append([q for q in primes if q != 2])
    err = None
    for qs in attempts:
        if len(qs) < 2:
            break
        try:
            deg, _ = fit_degree(qs, [values[q] for q in qs])
            return deg
        except NotPolynomial as exc:
            err = exc
    raise NotPolynomial(
        f"{family}({n},q) {counter} is not polynomial on sampled primes ({err}); "
        "a degree-d count needs at least d + 2 primes"
    )


def log_ratio(pairs: int, order: int) -> float:
    """log(commuting pairs) / log(|G|^2), the finite analogue of p(G)."""
    return math.log(pairs) / (2 * math.log(order))
