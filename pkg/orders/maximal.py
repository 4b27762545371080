"""
Maximal orders, field discriminants, signatures and splitting types
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from sympy import Poly, Rational, eye, ilcm
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.numberfields.modules import PowerBasis
from sympy.polys.numberfields.primes import prime_decomp

from arith.factor import factorize, is_square
from orders.round2 import p_maximal_basis
from poly.intpoly import (
    X,
    IntPolynomial,
    ReduciblePolynomialError,
    UnsupportedDegreeError,
    is_irreducible,
    poly_discriminant,
)
from utils.logger import setup_logger

logger = setup_logger(__name__)

FracMatrix = Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class SplittingType:
    """(e, f) pairs of p O_K, sorted in decreasing order."""
    prime: int
    pairs: Tuple[Tuple[int, int], ...]

    @classmethod
    def build(cls, prime: int, pairs) -> 'SplittingType':
        return cls(prime, tuple(sorted(((int(e), int(f)) for e, f in pairs), reverse=True)))

    @property
    def degree(self) -> int:
        return sum(e * f for e, f in self.pairs)

    def is_ramified(self) -> bool:
        return any(e > 1 for e, _ in self.pairs)

    def is_totally_ramified(self) -> bool:
        return len(self.pairs) == 1 and self.pairs[0][1] == 1 and self.pairs[0][0] == self.degree

    def splits_completely(self) -> bool:
        return all(e == 1 and f == 1 for e, f in self.pairs)

    def prime_count(self) -> int:
        return len(self.pairs)

    def to_list(self) -> List[List[int]]:
        return [[e, f] for e, f in self.pairs]


@dataclass(frozen=True)
class MaximalOrder:
    """Integral basis (rows, power-basis coordinates) of the ring of integers."""
    defining_poly: IntPolynomial
    basis: FracMatrix
    field_disc_signed: int
    signature: Tuple[int, int]
    index: int = 1

    @property
    def degree(self) -> int:
        return self.defining_poly.degree

    @property
    def field_disc_abs(self) -> int:
        return abs(self.field_disc_signed)

    def is_power_basis(self) -> bool:
        return self.index == 1


def factor_mod(f: IntPolynomial, p: int):
    """Irreducible factors of f mod p as (sympy Poly over ZZ, multiplicity)."""
    _, factors = Poly(f.descending(), X, modulus=p).factor_list()
    return [(Poly(g.as_expr(), X, domain='ZZ'), e) for g, e in factors]


def dedekind_criterion(f: IntPolynomial, p: int) -> bool:
    """
    True iff Z[theta] is p-maximal.

    With f = prod g_i^e_i mod p, g = prod g_i and h = prod g_i^(e_i - 1)
    lifted to Z[x], put F = (f - g h) / p. Z[theta] is p-maximal iff
    gcd(F, g, h) = 1 in F_p[x].
    """
    factors = factor_mod(f, p)
    f_z = f.to_sympy()
    g = Poly(1, X, domain='ZZ')
    h = Poly(1, X, domain='ZZ')
    repeated = Poly(1, X, domain='ZZ')
    for gi, ei in factors:
        g = g * gi
        h = h * gi ** (ei - 1)
        if ei > 1:
            repeated = repeated * gi
    if repeated.degree() == 0:
        return True
    F = (f_z - g * h).exquo_ground(p)
    F_p = Poly(F.as_expr(), X, modulus=p)
    common = F_p.gcd(Poly(repeated.as_expr(), X, modulus=p))
    return common.degree() <= 0


def _fraction(value) -> Fraction:
    r = Rational(value)
    return Fraction(int(r.p), int(r.q))


def signature(f: IntPolynomial) -> Tuple[int, int]:
    """(r1, r2) by exact real-root counting (Sturm sequences)."""
    r1 = int(f.to_sympy().count_roots())
    return r1, (f.degree - r1) // 2


@lru_cache(maxsize=8192)
def maximal_order(f: IntPolynomial) -> MaximalOrder:
    """
    Ring of integers of Q[x]/(f).

    Dedekind's criterion is tried at every p with p^2 | disc(f); only
    the primes where it fails go through the Round-2 enlargement.

    Args:
        f: Monic irreducible polynomial of degree 2, 3 or 4

    Returns:
        MaximalOrder with signed field discriminant and signature

    Raises:
        UnsupportedDegreeError: degree outside {2, 3, 4}
        ReduciblePolynomialError: f reducible
    """
    if f.degree not in (2, 3, 4):
        raise UnsupportedDegreeError(f"maximal orders are supported for degrees 2-4, got {f.degree}")
    if not f.is_monic():
        raise ValueError(f"{f} is not monic")
    if not is_irreducible(f):
        raise ReduciblePolynomialError(f"{f} is reducible")

    n = f.degree
    disc = poly_discriminant(f)
    suspects = [p for p, e in factorize(disc).pairs if e >= 2]
    failing = [p for p in suspects if not dedekind_criterion(f, p)]

    basis = eye(n)
    for p in failing:
        logger.debug(f"Z[theta] not maximal at {p} for {f}; running Round 2")
        basis = p_maximal_basis(basis, f.coefficients, p)
    det = basis.det()
    field_disc = int(disc * det ** 2)

    if disc % field_disc or not is_square(disc // field_disc):
        raise RuntimeError(f"index^2 check failed for {f}: disc {disc}, field disc {field_disc}")
    index = int(1 / det)
    for p in suspects:
        if p not in failing and index % p == 0:
            raise RuntimeError(f"Round 2 enlarged {f} at {p}, where Z[theta] is already maximal")
    sig = signature(f)
    if (field_disc < 0) != (sig[1] % 2 == 1):
        raise RuntimeError(f"sign of field discriminant {field_disc} contradicts signature {sig}")
    rows = tuple(tuple(_fraction(basis[i, j]) for j in range(n)) for i in range(n))
    return MaximalOrder(f, rows, field_disc, sig, index)


@lru_cache(maxsize=4096)
def sympy_maximal_order(order: MaximalOrder):
    """The integral basis as a sympy submodule of the power basis of f."""
    n = order.degree
    denom = int(ilcm(*[c.denominator for row in order.basis for c in row], 1))
    cols = [[ZZ(int(order.basis[j][i] * denom)) for j in range(n)] for i in range(n)]
    T = Poly(order.defining_poly.descending(), X, domain='ZZ')
    return PowerBasis(T).submodule_from_matrix(DomainMatrix(cols, (n, n), ZZ), denom=denom)


def sympy_prime_decomposition(order: MaximalOrder, p: int):
    T = Poly(order.defining_poly.descending(), X, domain='ZZ')
    primes = prime_decomp(p, T=T, ZK=sympy_maximal_order(order), dK=order.field_disc_signed)
    if sum(int(P.e) * int(P.f) for P in primes) != order.degree:
        raise RuntimeError(f"sum of e*f above {p} is not the degree for {order.defining_poly}")
    return primes


def splitting_type(order: MaximalOrder, p: int) -> SplittingType:
    """
    Decomposition shape of p in the maximal order.

    Primes not dividing the index split like f mod p (Dedekind-Kummer);
    index primes go through the prime decomposition of the maximal order.
    """
    f = order.defining_poly
    if order.index % p:
        return SplittingType.build(p, [(e, g.degree()) for g, e in factor_mod(f, p)])
    return SplittingType.build(p, [(P.e, P.f) for P in sympy_prime_decomposition(order, p)])
