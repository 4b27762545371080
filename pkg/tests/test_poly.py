"""
Tests for integer polynomials, resolvent cubics and Galois labels
"""

import sys
from pathlib import Path

import pytest
from sympy import Poly, Symbol, galois_group as sympy_galois_group
from sympy.polys.subresultants_qq_zz import sylvester

sys.path.insert(0, str(Path(__file__).parent.parent))

from poly.galois import GaloisLabel, galois_group_cubic, galois_group_quartic, resolvent_cubic
from poly.intpoly import (
    IntPolynomial,
    PolynomialParseError,
    ReduciblePolynomialError,
    UnsupportedDegreeError,
    is_irreducible,
    parse_polynomial,
    poly_discriminant,
    rational_roots,
)

x = Symbol('x')


def P(text):
    return parse_polynomial(text)


class TestParsing:

    def test_expression_and_coefficient_list(self):
        assert P('x^4-x-1').coefficients == (-1, -1, 0, 0, 1)
        assert P('-1,-1,0,0,1') == P('x^4 - x - 1')
        assert P('x**3 + 4*x - 1').coefficients == (-1, 4, 0, 1)
        assert P('x^3+4x-1').coefficients == (-1, 4, 0, 1)

    def test_rejects_bad_input(self):
        for text in ('', 'x^2 + y', 'x/2 + 1', '1,a,3'):
            with pytest.raises(PolynomialParseError):
                P(text)

    def test_str_round_trip(self):
        f = P('x^4-x-1')
        assert str(f) == 'x^4 - x - 1'
        assert P(str(f)) == f

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            IntPolynomial.from_coefficients([0, 0])


class TestDiscriminant:

    def test_known_values(self):
        assert poly_discriminant(P('x^4-x-1')) == -283
        assert poly_discriminant(P('x^3-x-1')) == -23
        assert poly_discriminant(P('x^3-3x-1')) == 81
        assert poly_discriminant(P('x^2+3')) == -12

    def test_matches_sylvester_resultant(self):
        """disc(f) = (-1)^(n(n-1)/2) Res(f, f') for monic f"""
        for text in ('x^4-x-1', 'x^4+x^2-x+1', 'x^4-2x^3+5x-7', 'x^3-7', 'x^3+4x-1'):
            f = P(text)
            expr = f.to_sympy().as_expr()
            res = sylvester(expr, expr.diff(x), x).det()
            n = f.degree
            assert poly_discriminant(f) == (-1) ** (n * (n - 1) // 2) * int(res)


class TestIrreducibility:

    def test_rational_roots(self):
        assert rational_roots(P('x^3-x')) == [-1, 0, 1]
        assert rational_roots(P('x^3-x-1')) == []

    @pytest.mark.parametrize('text,expected', [
        ('x^4-x-1', True),
        ('x^4+1', True),
        ('x^4+4', False),
        ('x^4+3x^2+2', False),
        ('x^4-10x^2+1', True),
        ('x^4-2', True),
        ('x^3-7', True),
        ('x^3-8', False),
        ('x^2+3', True),
    ])
    def test_known_cases(self, text, expected):
        assert is_irreducible(P(text)) == expected

    def test_agrees_with_sympy(self):
        """Exhaustive over a small box of monic quartics"""
        for a in range(-2, 3):
            for b in range(-2, 3):
                for c in range(-2, 3):
                    for d in range(-2, 3):
                        if d == 0:
                            continue
                        f = IntPolynomial.from_descending([1, a, b, c, d])
                        assert is_irreducible(f) == bool(Poly(f.descending(), x).is_irreducible), str(f)

    def test_unsupported_degree(self):
        with pytest.raises(UnsupportedDegreeError):
            is_irreducible(P('x^5-x-1'))


class TestGalois:

    def test_resolvent_cubic(self):
        assert resolvent_cubic(P('x^4-x-1')).coefficients == (-1, 4, 0, 1)
        for text in ('x^4-x-1', 'x^4+x^2-x+1', 'x^4-2x^3+5x-7'):
            f = P(text)
            assert poly_discriminant(resolvent_cubic(f)) == poly_discriminant(f)

    @pytest.mark.parametrize('text,label', [
        ('x^4-x-1', GaloisLabel.S4),
        ('x^4-x+1', GaloisLabel.S4),
        ('x^4+8x+12', GaloisLabel.A4),
        ('x^4-2', GaloisLabel.D4),
        ('x^4+x^3+x^2+x+1', GaloisLabel.C4),
        ('x^4+1', GaloisLabel.V4),
        ('x^4-10x^2+1', GaloisLabel.V4),
    ])
    def test_quartic_labels(self, text, label):
        assert galois_group_quartic(P(text)) == label

    def test_quartic_labels_agree_with_sympy(self):
        orders = {GaloisLabel.S4: 24, GaloisLabel.A4: 12, GaloisLabel.D4: 8, GaloisLabel.C4: 4, GaloisLabel.V4: 4}
        for text in ('x^4-x-1', 'x^4+8x+12', 'x^4-2', 'x^4+x^3+x^2+x+1', 'x^4+1', 'x^4+x^2-x+1'):
            f = P(text)
            group, _ = sympy_galois_group(Poly(f.descending(), x))
            assert group.order() == orders[galois_group_quartic(f)]

    def test_cubic_labels(self):
        assert galois_group_cubic(P('x^3-x-1')) == GaloisLabel.S3
        assert galois_group_cubic(P('x^3-3x-1')) == GaloisLabel.C3
        assert galois_group_cubic(P('x^3-x^2-2x+1')) == GaloisLabel.C3

    def test_reducible_and_non_monic(self):
        with pytest.raises(ReduciblePolynomialError):
            galois_group_quartic(P('x^4+4'))
        with pytest.raises(ValueError):
            galois_group_quartic(P('2x^4+1'))
        with pytest.raises(UnsupportedDegreeError):
            galois_group_cubic(P('x^4-x-1'))


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
