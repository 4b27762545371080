"""
Factorization and the radical / omega / S-part operators
"""

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Dict, List, Tuple

from sympy import factorint
from sympy.ntheory import jacobi_symbol

S_PRIMES = (2, 3)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of |n| as sorted (prime, exponent) pairs."""
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.pairs]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.pairs)

    def value(self) -> int:
        result = 1
        for p, e in self.pairs:
            result *= p ** e
        return result

    def valuation(self, p: int) -> int:
        return self.as_dict().get(p, 0)


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """
    Factor a nonzero integer.

    Args:
        n: Nonzero integer (sign is ignored)

    Returns:
        Factorization of |n|

    Raises:
        ValueError: if n == 0
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(int(n))
    if n == 1:
        return Factorization(())
    return Factorization(tuple(sorted((int(p), int(e)) for p, e in factorint(n).items())))


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def radical(n: int) -> int:
    """Product of the distinct primes dividing n (radical(1) = 1)."""
    if n < 1:
        raise ValueError(f"radical expects a positive integer, got {n}")
    result = 1
    for p in factorize(n).primes:
        result *= p
    return result


def omega(n: int) -> int:
    """Number of distinct prime divisors of n."""
    if n < 1:
        raise ValueError(f"omega expects a positive integer, got {n}")
    return len(factorize(n).pairs)


def prime_to_S_part(n: int) -> int:
    """Remove every factor 2 and 3 from n."""
    if n < 1:
        raise ValueError(f"prime_to_S_part expects a positive integer, got {n}")
    for p in S_PRIMES:
        while n % p == 0:
            n //= p
    return n


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(n).pairs)


def is_square(n: int) -> bool:
    """True for perfect squares of integers (0 included)."""
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: n = squarefree_part(n) * m**2."""
    if n == 0:
        raise ValueError("squarefree part of 0 is undefined")
    result = -1 if n < 0 else 1
    for p, e in factorize(n).pairs:
        if e % 2:
            result *= p
    return result


def fundamental_discriminant(n: int) -> int:
    """
    Fundamental discriminant of Q(sqrt(n)).

    Args:
        n: Nonzero integer that is not a perfect square

    Returns:
        m if m = 1 mod 4, else 4m, where m is the squarefree part of n
    """
    m = squarefree_part(n)
    if m == 1:
        raise ValueError(f"{n} is a square; Q(sqrt({n})) is not a quadratic field")
    return m if m % 4 == 1 else 4 * m


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1) or is_square(D):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def kronecker_symbol(D: int, n: int) -> int:
    """
    Kronecker symbol (D/n) for n >= 1.

    The factor 2 follows the usual convention: (D/2) is 0 for even D,
    1 for D = +-1 mod 8 and -1 for D = +-3 mod 8.
    """
    if n < 1:
        raise ValueError(f"kronecker_symbol expects n >= 1, got {n}")
    result = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi_symbol(D % n, n)


def quadratic_discriminants_for_radical(a: int) -> List[int]:
    """
    Fundamental discriminants D with Rad(|D|) = a.

    For odd a this is the single field Q(sqrt(+-a)) with the sign
    making +-a = 1 mod 4; for even a the candidates are Q(sqrt(a)),
    Q(sqrt(-a)) and Q(sqrt(+-a/2)). There are at most three.
    """
    if a < 1 or not is_squarefree(a) and a != 1:
        raise ValueError(f"{a} is not a positive squarefree integer")
    if a == 1:
        return []
    if a % 2:
        m = a if a % 4 == 1 else -a
        candidates = [m]
    else:
        half = a // 2
        candidates = [a, -a, half if half % 4 == 3 else -half]
    result = set()
    for m in candidates:
        if m == 1:
            continue
        D = fundamental_discriminant(m)
        if radical(abs(D)) == a:
            result.add(D)
    return sorted(result)
