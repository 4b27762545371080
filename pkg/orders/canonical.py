"""
Field isomorphism and canonical defining polynomials
"""

from functools import lru_cache
from typing import List, Optional, Tuple

import mpmath
from sympy import primerange

from orders.arithmetic import OrderArithmetic, order_arithmetic
from orders.lattice import short_vectors
from orders.maximal import maximal_order, splitting_type
from poly.intpoly import IntPolynomial
from utils.logger import setup_logger

logger = setup_logger(__name__)

FINGERPRINT_PRIMES = tuple(primerange(2, 72))  # the first 20 primes
T2_TOLERANCE = 1e-7


class DegreeMismatchError(ValueError):
    """The two polynomials have different degrees."""


def root_t2(g: IntPolynomial) -> float:
    """Sum of |r|^2 over the complex roots of g."""
    with mpmath.workdps(30):
        roots = mpmath.polyroots(g.descending(), maxsteps=200, extraprec=60)
        return float(sum(abs(r) ** 2 for r in roots))


def splitting_fingerprint(f: IntPolynomial) -> Tuple:
    order = maximal_order(f)
    return tuple(splitting_type(order, p).pairs for p in FINGERPRINT_PRIMES)


def _find_root(arith: OrderArithmetic, g: IntPolynomial) -> Optional[Tuple[int, ...]]:
    """
    A root of g in the order, or None.

    Any root beta of g maps to the roots of g under the embeddings, so
    T2(beta) equals the root T2 of g; enumerating that ellipsoid is a
    complete search.
    """
    bound = root_t2(g) * (1 + T2_TOLERANCE) + T2_TOLERANCE
    zero = tuple(0 for _ in range(arith.n))
    if g(0) == 0:
        return zero
    for v, _ in short_vectors(arith.gram, bound):
        for w in (v, arith.scale(-1, v)):
            if arith.evaluate(g, w) == zero:
                return w
    return None


def is_isomorphic(f: IntPolynomial, g: IntPolynomial) -> bool:
    """
    Decide whether Q[x]/(f) and Q[x]/(g) are isomorphic.

    Cheap invariants (field discriminant, signature, splitting of the
    first 20 primes) filter first; then a root of g is searched for
    exactly in the maximal order of f.

    Raises:
        DegreeMismatchError: if the degrees differ
    """
    if f.degree != g.degree:
        raise DegreeMismatchError(f"degrees {f.degree} and {g.degree} differ")
    if f == g:
        return True
    of, og = maximal_order(f), maximal_order(g)
    if of.field_disc_signed != og.field_disc_signed or of.signature != og.signature:
        return False
    if splitting_fingerprint(f) != splitting_fingerprint(g):
        return False
    return _find_root(order_arithmetic(of), g) is not None


def _canonical_key(poly: IntPolynomial) -> Tuple:
    lower = poly.descending()[1:]
    return tuple(abs(c) for c in lower), tuple(lower)


@lru_cache(maxsize=16384)
def canonical_polynomial(f: IntPolynomial) -> IntPolynomial:
    """
    Canonical defining polynomial of the field of f.

    Among primitive integral elements of minimal T2 the characteristic
    polynomials of +-alpha are compared by the absolute values of their
    coefficients from x^(n-1) down, then by the signed coefficients.
    The result depends only on the field, so it is idempotent and equal
    for isomorphic inputs.
    """
    order = maximal_order(f)
    arith = order_arithmetic(order)
    n = arith.n
    cap = arith.t2(arith.theta())
    bound = min(float(n) * 1.5, cap)
    while True:
        candidates: List[Tuple[float, Tuple[int, ...]]] = []
        for v, value in short_vectors(arith.gram, bound):
            if arith.is_primitive(v):
                candidates.append((value, v))
        if candidates or bound >= cap:
            break
        bound = min(bound * 2, cap)
    if not candidates:
        raise RuntimeError(f"no primitive element found below T2 = {cap} for {f}")

    best = min(value for value, _ in candidates)
    window = best * (1 + T2_TOLERANCE) + T2_TOLERANCE
    polys = set()
    for value, v in candidates:
        if value <= window:
            cp = arith.charpoly(v)
            polys.add(cp)
            polys.add(cp.negate_variable())
    result = min(polys, key=_canonical_key)
    logger.debug(f"canonical polynomial of {f} is {result} (T2 {best:.4f})")
    return result
