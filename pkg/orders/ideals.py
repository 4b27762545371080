"""
Integral ideals as Hermite-normal-form lattices, and the prime ideals above p
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from arith.factor import valuation
from orders.arithmetic import OrderArithmetic, Vector, order_arithmetic
from orders.maximal import MaximalOrder, factor_mod, sympy_prime_decomposition
from utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class Ideal:
    """
    Full-rank sublattice of the order, stored as an upper triangular HNF.

    Column j of the matrix is the j-th basis vector in integral-basis
    coordinates; rows are returned as tuples.
    """
    hnf: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.hnf)

    @property
    def norm(self) -> int:
        result = 1
        for i in range(self.n):
            result *= self.hnf[i][i]
        return abs(result)

    def columns(self) -> List[Vector]:
        return [tuple(self.hnf[i][j] for i in range(self.n)) for j in range(self.n)]

    @classmethod
    def from_generators(cls, generators: Sequence[Sequence[int]], n: int) -> 'Ideal':
        gens = [list(g) for g in generators if any(g)]
        M = Matrix(n, len(gens), lambda i, j: gens[j][i])
        H = hermite_normal_form(M)
        if H.shape != (n, n):
            raise ValueError(f"generators span a lattice of rank {H.shape[1]} < {n}")
        return cls(tuple(tuple(int(H[i, j]) for j in range(n)) for i in range(n)))

    def contains(self, v: Sequence[int]) -> bool:
        """Back substitution against the upper triangular basis."""
        n = self.n
        coeffs = [0] * n
        for i in range(n - 1, -1, -1):
            rest = v[i] - sum(self.hnf[i][j] * coeffs[j] for j in range(i + 1, n))
            if rest % self.hnf[i][i]:
                return False
            coeffs[i] = rest // self.hnf[i][i]
        return True

    def multiply(self, other: 'Ideal', arith: OrderArithmetic) -> 'Ideal':
        gens = [arith.mul(a, b) for a in self.columns() for b in other.columns()]
        return Ideal.from_generators(gens, self.n)


def principal_ideal(arith: OrderArithmetic, alpha: Sequence[int]) -> Ideal:
    n = arith.n
    return Ideal.from_generators([arith.mul(alpha, tuple(int(i == j) for i in range(n))) for j in range(n)], n)


@dataclass
class PrimeIdeal:
    """A prime of the order above p, with (e, f) and a two-element generator."""
    p: int
    e: int
    f: int
    generator: Vector
    lattice: Ideal
    label: str = ''
    _powers: List[Ideal] = field(default_factory=list, repr=False)

    @property
    def norm(self) -> int:
        return self.p ** self.f

    def power(self, k: int, arith: OrderArithmetic) -> Ideal:
        if not self._powers:
            self._powers.append(self.lattice)
        while len(self._powers) < k:
            self._powers.append(self._powers[-1].multiply(self.lattice, arith))
        return self._powers[k - 1]

    def valuation(self, alpha: Sequence[int], arith: OrderArithmetic, max_k: int) -> int:
        """v_P(alpha) for nonzero alpha, assuming it is at most max_k."""
        k = 0
        while k < max_k and self.power(k + 1, arith).contains(alpha):
            k += 1
        return k


def _two_element_ideal(arith: OrderArithmetic, p: int, alpha: Vector) -> Ideal:
    n = arith.n
    gens = [tuple(p * int(i == j) for i in range(n)) for j in range(n)]
    gens += [arith.mul(alpha, tuple(int(i == j) for i in range(n))) for j in range(n)]
    return Ideal.from_generators(gens, n)


@lru_cache(maxsize=4096)
def _prime_ideals_cached(order: MaximalOrder, p: int) -> Tuple[PrimeIdeal, ...]:
    arith = order_arithmetic(order)
    primes: List[PrimeIdeal] = []
    if order.index % p:
        for g, e in factor_mod(order.defining_poly, p):
            coeffs = [Fraction(int(c)) for c in reversed(g.all_coeffs())]
            coeffs += [Fraction(0)] * (arith.n - len(coeffs))
            if len(coeffs) > arith.n:
                # g = f mod p only when f is irreducible mod p
                alpha = tuple(0 for _ in range(arith.n))
            else:
                alpha = arith.from_power(coeffs)
            primes.append(PrimeIdeal(p, e, g.degree(), alpha, _two_element_ideal(arith, p, alpha)))
    else:
        for P in sympy_prime_decomposition(order, p):
            element = P.alpha.over_power_basis()
            denom = int(element.denom)
            coeffs = [Fraction(int(c), denom) for c in element.coeffs]
            coeffs += [Fraction(0)] * (arith.n - len(coeffs))
            alpha = arith.from_power(coeffs)
            primes.append(PrimeIdeal(p, int(P.e), int(P.f), alpha, _two_element_ideal(arith, p, alpha)))

    primes.sort(key=lambda P: (P.f, P.e, P.lattice.hnf))
    for i, P in enumerate(primes):
        if P.lattice.norm != P.norm:
            raise RuntimeError(f"prime above {p} in {order.defining_poly} has lattice norm "
                               f"{P.lattice.norm}, expected {P.norm}")
        P.label = f"P{p}_{i}"
    if sum(P.e * P.f for P in primes) != order.degree:
        raise RuntimeError(f"sum of e*f above {p} is not the degree for {order.defining_poly}")
    logger.debug(f"{order.defining_poly}: {len(primes)} primes above {p}")
    return tuple(primes)


def prime_ideals_above(order: MaximalOrder, p: int) -> List[PrimeIdeal]:
    """Prime ideals of the maximal order above the rational prime p."""
    return list(_prime_ideals_cached(order, p))


def element_valuations(primes: Sequence[PrimeIdeal], alpha: Sequence[int], norm: int,
                       arith: OrderArithmetic) -> Dict[str, int]:
    """
    Valuations of alpha at the given primes, checked against |N(alpha)|.

    When a single prime lies above p the valuation follows from the norm.
    """
    by_p: Dict[int, List[PrimeIdeal]] = {}
    for P in primes:
        by_p.setdefault(P.p, []).append(P)
    result: Dict[str, int] = {}
    for p, group in by_p.items():
        vp = valuation(norm, p)
        if len(group) == 1:
            P = group[0]
            if vp % P.f:
                raise RuntimeError(f"v_{p}(N) = {vp} is not divisible by f = {P.f}")
            result[P.label] = vp // P.f
            continue
        total = 0
        for P in group:
            k = P.valuation(alpha, arith, vp // P.f) if vp else 0
            result[P.label] = k
            total += k * P.f
        if total != vp:
            raise RuntimeError(f"valuations above {p} account for {total} of v_{p}(N) = {vp}")
    return result
