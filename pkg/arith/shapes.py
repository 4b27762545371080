"""
Discriminant and conductor shapes: d = 2^e2 3^e3 d1 d2^2 d3^3 and
N = 2^n2 3^n3 N11 N12 N2^2
"""

from dataclasses import dataclass, asdict
from itertools import combinations
from typing import Dict, List, Tuple

from arith.factor import factorize, omega


class NotAnS4Shape(ValueError):
    """Some p > 3 divides the discriminant to a power outside {1, 2, 3}."""


class NotAConductorShape(ValueError):
    """Some p > 3 divides the conductor to a power outside {1, 2}."""


@dataclass(frozen=True)
class DiscriminantShape:
    e2: int
    e3: int
    d1: int
    d2: int
    d3: int

    def reconstruct(self) -> int:
        return 2 ** self.e2 * 3 ** self.e3 * self.d1 * self.d2 ** 2 * self.d3 ** 3

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


@dataclass(frozen=True)
class ConductorShape:
    n2: int
    n3: int
    N11: int
    N12: int
    N2: int

    def reconstruct(self) -> int:
        return 2 ** self.n2 * 3 ** self.n3 * self.N11 * self.N12 * self.N2 ** 2

    def omega(self) -> int:
        """Number of primes of N, the flags at 2 and 3 included."""
        return omega(self.N11 * self.N12 * self.N2) + (self.n2 > 0) + (self.n3 > 0)

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


def parse_discriminant_shape(d: int) -> DiscriminantShape:
    """
    Split a discriminant by exponent of its primes above 3.

    Args:
        d: Positive integer (absolute discriminant)

    Returns:
        DiscriminantShape with d1, d2, d3 collecting primes of exponent 1, 2, 3

    Raises:
        NotAnS4Shape: if some p > 3 has exponent 4 or more
    """
    if d < 1:
        raise ValueError(f"discriminant shape expects a positive integer, got {d}")
    parts = {1: 1, 2: 1, 3: 1}
    e2 = e3 = 0
    for p, e in factorize(d).pairs:
        if p == 2:
            e2 = e
        elif p == 3:
            e3 = e
        elif e in parts:
            parts[e] *= p
        else:
            raise NotAnS4Shape(f"v_{p}({d}) = {e} is not in {{1, 2, 3}}")
    return DiscriminantShape(e2, e3, parts[1], parts[2], parts[3])


def parse_conductor_shape(N: int) -> ConductorShape:
    """
    Split a conductor into its {2,3}-part and tame primes.

    Exponent-one primes go to N11 or N12 according to their residue mod 3.

    Raises:
        NotAConductorShape: if some p > 3 has exponent 3 or more
    """
    if N < 1:
        raise ValueError(f"conductor shape expects a positive integer, got {N}")
    n2 = n3 = 0
    N11 = N12 = N2 = 1
    for p, e in factorize(N).pairs:
        if p == 2:
            n2 = e
        elif p == 3:
            n3 = e
        elif e == 1 and p % 3 == 1:
            N11 *= p
        elif e == 1:
            N12 *= p
        elif e == 2:
            N2 *= p
        else:
            raise NotAConductorShape(f"v_{p}({N}) = {e} is not in {{1, 2}}")
    return ConductorShape(n2, n3, N11, N12, N2)


def candidate_triples(shape: DiscriminantShape) -> List[Tuple[int, int, int]]:
    """
    S-part triples (a, b, c) compatible with a discriminant shape.

    Every S4 field of that discriminant has a^S = d1 d3, d3 | c^S and
    (b c)^S = d2 d3 with b, c coprime, so b^S is a divisor of d2 and
    c^S = d3 * (d2 / b^S). Exactly 2^omega(d2) triples, sorted.
    """
    a = shape.d1 * shape.d3
    d2_primes = factorize(shape.d2).primes
    triples = []
    for k in range(len(d2_primes) + 1):
        for chosen in combinations(d2_primes, k):
            b = 1
            for p in chosen:
                b *= p
            triples.append((a, b, shape.d3 * (shape.d2 // b)))
    return sorted(triples)
