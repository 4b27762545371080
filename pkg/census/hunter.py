"""
Hunter search boxes for cubic and quartic fields of bounded discriminant
"""

from dataclasses import dataclass
from math import ceil, floor, isqrt
from typing import Iterator, List, Optional, Tuple

import numpy as np

from arith.factor import factorize, is_fundamental_discriminant
from orders.canonical import canonical_polynomial
from orders.maximal import maximal_order
from poly.intpoly import IntPolynomial, is_irreducible, poly_discriminant

T2_SLACK = 1e-9


def hunter_bound(degree: int, trace: int, max_disc: int) -> float:
    """
    Hunter's T2 bound for a generator of trace t:
    t^2/n + gamma_{n-1} (X/n)^(1/(n-1)), with gamma_2 = sqrt(4/3) and
    gamma_3 = 2^(1/3).
    """
    if degree == 3:
        return trace * trace / 3 + (4 / 3) ** 0.5 * (max_disc / 3) ** 0.5
    if degree == 4:
        return trace * trace / 4 + 2 ** (1 / 3) * (max_disc / 4) ** (1 / 3)
    raise ValueError(f"Hunter search is implemented for degrees 3 and 4, got {degree}")


def traces(degree: int) -> range:
    """0 <= Tr(theta) <= n/2 after translating by integers and negating."""
    return range(0, degree // 2 + 1)


@dataclass(frozen=True)
class SearchChunk:
    """All characteristic polynomials with fixed e1 and e2."""
    degree: int
    max_disc: int
    e1: int
    e2: int


def e2_range(degree: int, e1: int, bound: float) -> range:
    """|p2| = |e1^2 - 2 e2| <= T2."""
    lo = ceil((e1 * e1 - bound) / 2 - T2_SLACK)
    hi = floor((e1 * e1 + bound) / 2 + T2_SLACK)
    return range(lo, hi + 1)


def search_chunks(degree: int, max_disc: int) -> List[SearchChunk]:
    """The (e1, e2) grid, in a fixed order."""
    chunks = []
    for e1 in traces(degree):
        bound = hunter_bound(degree, e1, max_disc)
        for e2 in e2_range(degree, e1, bound):
            chunks.append(SearchChunk(degree, max_disc, e1, e2))
    return chunks


def _candidates(chunk: SearchChunk) -> Iterator[IntPolynomial]:
    """
    Monic polynomials x^n - e1 x^(n-1) + e2 x^(n-2) - ... in the box.

    p3 = e1^3 - 3 e1 e2 + 3 e3 and |p3| <= T2^(3/2); |e_n| <= (T2/n)^(n/2).
    """
    n, e1, e2 = chunk.degree, chunk.e1, chunk.e2
    bound = hunter_bound(n, e1, chunk.max_disc)
    last = int(floor((bound / n) ** (n / 2) + T2_SLACK))
    if n == 3:
        for e3 in range(-last, last + 1):
            if e3:
                yield IntPolynomial.from_descending([1, -e1, e2, -e3])
        return
    p3_max = bound ** 1.5
    base = e1 ** 3 - 3 * e1 * e2
    e3_lo = ceil((-p3_max - base) / 3 - T2_SLACK)
    e3_hi = floor((p3_max - base) / 3 + T2_SLACK)
    for e3 in range(e3_lo, e3_hi + 1):
        for e4 in range(-last, last + 1):
            if e4:
                yield IntPolynomial.from_descending([1, -e1, e2, -e3, e4])


def _t2(f: IntPolynomial) -> float:
    roots = np.roots(np.array(f.descending(), dtype=float))
    return float(np.sum(np.abs(roots) ** 2))


def _may_have_small_field_disc(disc: int, max_disc: int) -> bool:
    """Is |disc| / i^2 <= X for the largest i with i^2 | disc?"""
    square = 1
    for p, e in factorize(disc).pairs:
        square *= p ** (e - e % 2)
    return abs(disc) // square <= max_disc


def field_from_candidate(f: IntPolynomial, max_disc: int, bound: float) -> Optional[IntPolynomial]:
    """Canonical polynomial of the field of f when f passes every filter, else None."""
    if _t2(f) > bound * (1 + T2_SLACK) + T2_SLACK:
        return None
    disc = poly_discriminant(f)
    if disc == 0 or not _may_have_small_field_disc(disc, max_disc):
        return None
    if not is_irreducible(f):
        return None
    if maximal_order(f).field_disc_abs > max_disc:
        return None
    return canonical_polynomial(f)


def search_chunk(chunk: SearchChunk) -> List[Tuple[int, ...]]:
    """Canonical coefficient tuples of the fields found in one chunk, sorted."""
    bound = hunter_bound(chunk.degree, chunk.e1, chunk.max_disc)
    found = set()
    for f in _candidates(chunk):
        g = field_from_candidate(f, chunk.max_disc, bound)
        if g is not None:
            found.add(g.coefficients)
    return sorted(found)


@dataclass(frozen=True)
class QuadraticRing:
    """
    Z[w] for the quadratic field of fundamental discriminant D, w^2 = s w - c.

    Elements are coordinate pairs (x0, x1) meaning x0 + x1 w.
    """
    D: int

    @property
    def s(self) -> int:
        return self.D % 2

    @property
    def c(self) -> int:
        return (1 - self.D) // 4 if self.D % 4 == 1 else -self.D // 4

    def trace(self, x: Tuple[int, int]) -> int:
        return 2 * x[0] + self.s * x[1]

    def norm(self, x: Tuple[int, int]) -> int:
        return x[0] * x[0] + self.s * x[0] * x[1] + self.c * x[1] * x[1]

    def mul(self, x: Tuple[int, int], y: Tuple[int, int]) -> Tuple[int, int]:
        return (x[0] * y[0] - self.c * x[1] * y[1],
                x[0] * y[1] + x[1] * y[0] + self.s * x[1] * y[1])

    def conjugate(self, x: Tuple[int, int]) -> Tuple[int, int]:
        return x[0] + self.s * x[1], -x[1]

    def t2(self, x: Tuple[int, int]) -> int:
        """Sum of |sigma(x)|^2 over both embeddings."""
        if self.D < 0:
            return 2 * self.norm(x)
        return self.trace(self.mul(x, x))

    def trace_representatives(self) -> List[Tuple[int, int]]:
        """The element of least T2 in each class of Z[w] / 2 Z[w]."""
        reps = []
        for a0 in (0, 1):
            for a1 in (0, 1):
                cls = [(a0 + 2 * u, a1 + 2 * v) for u in range(-2, 3) for v in range(-2, 3)]
                reps.append(min(cls, key=lambda x: (self.t2(x), x)))
        return reps


def quadratic_fields(max_disc: int) -> List[int]:
    """Fundamental discriminants D with D^2 <= X, the possible quadratic subfields."""
    limit = isqrt(max_disc)
    return [D for D in range(-limit, limit + 1) if D != 1 and is_fundamental_discriminant(D)]


def relative_bound(ring: QuadraticRing, alpha: Tuple[int, int], max_disc: int) -> float:
    """
    T2 bound for a generator of K over k with relative trace alpha:
    T2_k(alpha)/2 + gamma_2 (X / (4 |D|))^(1/2). The second term bounds the
    part of theta orthogonal to k, by Hermite on the projected lattice.
    """
    return ring.t2(alpha) / 2 + (max_disc / (3 * abs(ring.D))) ** 0.5


@dataclass(frozen=True)
class RelativeChunk:
    """Relative polynomials x^2 - alpha x + beta over one quadratic field, alpha fixed."""
    max_disc: int
    D: int
    alpha: Tuple[int, int]


def relative_chunks(max_disc: int) -> List[RelativeChunk]:
    """Chunks for the quartic fields with a quadratic subfield, in a fixed order."""
    chunks = []
    for D in quadratic_fields(max_disc):
        for alpha in QuadraticRing(D).trace_representatives():
            chunks.append(RelativeChunk(max_disc, D, alpha))
    return chunks


def _betas(ring: QuadraticRing, bound: float) -> Iterator[Tuple[int, int]]:
    """
    beta with T2_k(beta) <= (bound/2)^2, since |sigma(beta)| is at most half
    of |sigma(theta)|^2 + |sigma(theta')|^2.
    """
    R = bound * bound / 4
    s, w = ring.s, ring.t2((0, 1))
    b1_max = int(floor((2 * R / abs(ring.D)) ** 0.5 + T2_SLACK))
    for b1 in range(-b1_max, b1_max + 1):
        disc = 2 * R - abs(ring.D) * b1 * b1
        if disc < -T2_SLACK:
            continue
        root = max(disc, 0.0) ** 0.5
        lo = ceil((-s * b1 - root) / 2 - T2_SLACK)
        hi = floor((-s * b1 + root) / 2 + T2_SLACK)
        for b0 in range(lo, hi + 1):
            if 2 * b0 * b0 + 2 * s * b0 * b1 + w * b1 * b1 <= R * (1 + T2_SLACK) + T2_SLACK:
                yield b0, b1


def absolute_polynomial(ring: QuadraticRing, alpha: Tuple[int, int], beta: Tuple[int, int],
                        t: int = 0) -> IntPolynomial:
    """
    Characteristic polynomial over Q of theta + t w, theta a root of
    x^2 - alpha x + beta over k.
    """
    if t:
        tw = (0, t)
        shift = ring.mul(tw, alpha)
        square = ring.mul(tw, tw)
        beta = (beta[0] + shift[0] + square[0], beta[1] + shift[1] + square[1])
        alpha = (alpha[0], alpha[1] + 2 * t)
    return IntPolynomial.from_descending([
        1,
        -ring.trace(alpha),
        ring.norm(alpha) + ring.trace(beta),
        -ring.trace(ring.mul(alpha, ring.conjugate(beta))),
        ring.norm(beta),
    ])


def search_relative_chunk(chunk: RelativeChunk) -> List[Tuple[int, ...]]:
    """
    Canonical coefficient tuples of the quartic fields K = k(theta) found
    in one chunk, sorted.

    theta + t w generates K for all but at most two t, one per quadratic
    subfield other than k, so t = 0, 1, 2 suffices; when none works theta
    lies in k and beta is skipped.
    """
    ring = QuadraticRing(chunk.D)
    bound = relative_bound(ring, chunk.alpha, chunk.max_disc)
    found = set()
    for beta in _betas(ring, bound):
        g = absolute_polynomial(ring, chunk.alpha, beta)
        if _t2(g) > bound * (1 + T2_SLACK) + T2_SLACK:
            continue
        for t in range(3):
            f = absolute_polynomial(ring, chunk.alpha, beta, t)
            if not is_irreducible(f):
                continue
            disc = poly_discriminant(f)
            if _may_have_small_field_disc(disc, chunk.max_disc) \
                    and maximal_order(f).field_disc_abs <= chunk.max_disc:
                found.add(canonical_polynomial(f).coefficients)
            break
    return sorted(found)


def box_search(degree: int, max_disc: int, coefficient_bound: int) -> List[Tuple[int, ...]]:
    """
    Fields of all monic polynomials with |coefficients| <= bound and
    |field disc| <= X; an independent check on the Hunter search.
    """
    found = set()
    ranges = [range(-coefficient_bound, coefficient_bound + 1)] * degree
    for coeffs in np.ndindex(*(len(r) for r in ranges)):
        lower = [ranges[i][c] for i, c in enumerate(coeffs)]
        if lower[0] == 0:
            continue
        f = IntPolynomial.from_coefficients(lower + [1])
        disc = poly_discriminant(f)
        if disc == 0 or not _may_have_small_field_disc(disc, max_disc) or not is_irreducible(f):
            continue
        if maximal_order(f).field_disc_abs <= max_disc:
            found.add(canonical_polynomial(f).coefficients)
    return sorted(found)
