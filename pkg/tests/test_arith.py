"""
Tests for factorization helpers and discriminant / conductor shapes
Run with: pytest tests/
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from arith.factor import (
    factorize,
    fundamental_discriminant,
    is_fundamental_discriminant,
    is_square,
    is_squarefree,
    kronecker_symbol,
    omega,
    prime_to_S_part,
    quadratic_discriminants_for_radical,
    radical,
    squarefree_part,
    valuation,
)
from arith.shapes import (
    NotAConductorShape,
    NotAnS4Shape,
    candidate_triples,
    parse_conductor_shape,
    parse_discriminant_shape,
)


def _trial_division(n):
    pairs = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            pairs.append((p, e))
        p += 1
    if n > 1:
        pairs.append((n, 1))
    return tuple(pairs)


def test_factorize_matches_trial_division():
    """Factorizations agree with naive trial division"""
    for n in list(range(2, 500)) + [283, 1001, 2 ** 10 * 3 ** 5, 999983]:
        assert factorize(n).pairs == _trial_division(n)
        assert factorize(-n).pairs == factorize(n).pairs
        assert factorize(n).value() == n


def test_factorize_edge_cases():
    """1 has no primes; 0 is rejected"""
    assert factorize(1).pairs == ()
    with pytest.raises(ValueError):
        factorize(0)


def test_radical_omega_s_part():
    """Radical, omega and the S-part operator"""
    assert radical(1) == 1
    assert radical(72) == 6
    assert radical(283) == 283
    assert omega(1) == 0
    assert omega(30) == 3
    assert prime_to_S_part(4 * 3 * 5 * 7) == 35
    assert prime_to_S_part(6 ** 5) == 1
    assert valuation(-48, 2) == 4
    for bad in (radical, omega, prime_to_S_part):
        with pytest.raises(ValueError):
            bad(0)


def test_squares_and_squarefree():
    assert is_square(0)
    assert is_square(144)
    assert not is_square(-4)
    assert is_squarefree(30)
    assert not is_squarefree(12)
    assert squarefree_part(-12) == -3
    assert squarefree_part(50) == 2


def test_fundamental_discriminants():
    """Fundamental discriminant of Q(sqrt(n))"""
    assert fundamental_discriminant(-283) == -283
    assert fundamental_discriminant(-1) == -4
    assert fundamental_discriminant(5) == 5
    assert fundamental_discriminant(12) == 12
    assert fundamental_discriminant(-23 * 4) == -23
    with pytest.raises(ValueError):
        fundamental_discriminant(49)

    assert is_fundamental_discriminant(-4)
    assert is_fundamental_discriminant(-8)
    assert is_fundamental_discriminant(229)
    assert not is_fundamental_discriminant(-16)
    assert not is_fundamental_discriminant(1)
    assert not is_fundamental_discriminant(3)


def test_kronecker_symbol():
    """The factor 2 follows the mod 8 rule; odd n is Jacobi"""
    assert kronecker_symbol(-4, 3) == -1
    assert kronecker_symbol(5, 2) == -1
    assert kronecker_symbol(-7, 2) == 1
    assert kronecker_symbol(8, 2) == 0
    assert kronecker_symbol(-23, 1) == 1
    assert kronecker_symbol(-23, 2) == 1
    assert kronecker_symbol(-23, 3) == 1
    with pytest.raises(ValueError):
        kronecker_symbol(5, 0)


def test_quadratic_discriminants_for_radical():
    """At most three quadratic fields share a radical"""
    assert quadratic_discriminants_for_radical(1) == []
    assert quadratic_discriminants_for_radical(5) == [5]
    assert quadratic_discriminants_for_radical(3) == [-3]
    assert quadratic_discriminants_for_radical(2) == [-8, -4, 8]
    assert quadratic_discriminants_for_radical(6) == [-24, 12, 24]
    for a in range(1, 200):
        if is_squarefree(a):
            found = quadratic_discriminants_for_radical(a)
            assert len(found) <= 3
            assert all(radical(abs(D)) == a for D in found)
    with pytest.raises(ValueError):
        quadratic_discriminants_for_radical(4)


class TestShapes:
    """Discriminant and conductor shapes"""

    def test_prime_discriminant(self):
        shape = parse_discriminant_shape(283)
        assert (shape.e2, shape.e3, shape.d1, shape.d2, shape.d3) == (0, 0, 283, 1, 1)

    def test_mixed_discriminant(self):
        d = 2 ** 2 * 3 * 5 * 7 ** 2 * 11 ** 3
        shape = parse_discriminant_shape(d)
        assert (shape.e2, shape.e3, shape.d1, shape.d2, shape.d3) == (2, 1, 5, 7, 11)
        assert shape.reconstruct() == d

    def test_discriminant_shape_errors(self):
        with pytest.raises(NotAnS4Shape):
            parse_discriminant_shape(5 ** 4)
        with pytest.raises(ValueError):
            parse_discriminant_shape(0)

    def test_conductor_shape(self):
        N = 4 * 7 * 5 * 11 ** 2
        shape = parse_conductor_shape(N)
        assert (shape.n2, shape.n3, shape.N11, shape.N12, shape.N2) == (2, 0, 7, 5, 11)
        assert shape.reconstruct() == N
        assert shape.omega() == 4
        with pytest.raises(NotAConductorShape):
            parse_conductor_shape(5 ** 3)

    def test_candidate_triples(self):
        shape = parse_discriminant_shape(5 * (7 * 13) ** 2 * 11 ** 3)
        triples = candidate_triples(shape)
        assert triples == [(55, 1, 1001), (55, 7, 143), (55, 13, 77), (55, 91, 11)]
        assert len(triples) == 2 ** omega(shape.d2)

    def test_candidate_triples_reconstruct(self):
        """a (b c)^2 recovers the prime-to-6 discriminant for every candidate"""
        d = 5 * (7 * 13) ** 2 * 11 ** 3
        for a, b, c in candidate_triples(parse_discriminant_shape(d)):
            assert a * b * b * c * c == d


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
