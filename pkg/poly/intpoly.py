"""
Integer polynomials with constant-first coefficient storage
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, List, Sequence, Tuple

from sympy import Poly, Symbol, divisors, primerange
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

X = Symbol('x')

_TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)


class PolynomialParseError(ValueError):
    """Polynomial text could not be read as an integer polynomial in x."""


class UnsupportedDegreeError(ValueError):
    """Operation is only defined for a fixed set of degrees."""


class ReduciblePolynomialError(ValueError):
    """A field-defining polynomial turned out to be reducible."""


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, constant term first."""
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs or (len(coeffs) == 1 and coeffs[0] == 0):
            raise ValueError("the zero polynomial is not allowed")
        object.__setattr__(self, 'coefficients', tuple(int(c) for c in coeffs))

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int]) -> 'IntPolynomial':
        return cls(tuple(coeffs))

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> 'IntPolynomial':
        return cls(tuple(reversed(list(coeffs))))

    @classmethod
    def from_sympy(cls, poly: Poly) -> 'IntPolynomial':
        return cls.from_descending([int(c) for c in poly.all_coeffs()])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1]

    def is_monic(self) -> bool:
        return self.leading == 1

    def descending(self) -> List[int]:
        return list(reversed(self.coefficients))

    def to_sympy(self) -> Poly:
        return Poly(self.descending(), X)

    def __call__(self, value):
        result = 0
        for c in reversed(self.coefficients):
            result = result * value + c
        return result

    def shift(self, c: int) -> 'IntPolynomial':
        """f(x + c)."""
        return IntPolynomial.from_sympy(Poly(self.to_sympy().as_expr().subs(X, X + c), X))

    def negate_variable(self) -> 'IntPolynomial':
        """(-1)^n f(-x): the monic polynomial of -theta."""
        n = self.degree
        return IntPolynomial(tuple(c * (-1) ** (n - i) for i, c in enumerate(self.coefficients)))

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = 'x' if i == 1 else f'x^{i}'
                body = power if mag == 1 else f'{mag}*{power}'
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in terms[1:]:
            text += f' {sign} {body}'
        return text


def parse_polynomial(text: str) -> IntPolynomial:
    """
    Read a polynomial from CLI text.

    Accepts "x^4-x-1" style expressions in the single variable x, or a
    comma-separated coefficient list with the constant term first.

    Raises:
        PolynomialParseError: on anything else
    """
    text = text.strip()
    if not text:
        raise PolynomialParseError("empty polynomial")
    if 'x' not in text:
        try:
            return IntPolynomial.from_coefficients(int(c) for c in text.replace(' ', '').split(','))
        except ValueError as e:
            raise PolynomialParseError(f"bad coefficient list '{text}': {e}") from e
    try:
        expr = parse_expr(text.replace('−', '-'), local_dict={'x': X}, transformations=_TRANSFORMS)
        poly = Poly(expr, X)
    except Exception as e:
        raise PolynomialParseError(f"cannot parse '{text}': {e}") from e
    if expr.free_symbols - {X}:
        raise PolynomialParseError(f"'{text}' uses variables other than x")
    coeffs = poly.all_coeffs()
    if not all(c.is_integer for c in coeffs):
        raise PolynomialParseError(f"'{text}' has non-integer coefficients")
    return IntPolynomial.from_sympy(poly)


def poly_discriminant(f: IntPolynomial) -> int:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    if f.degree < 1:
        raise ValueError("discriminant needs degree >= 1")
    return int(f.to_sympy().discriminant())


def mul_mod(a: Sequence, b: Sequence, f: Sequence[int]) -> List:
    """Product of two power-basis vectors reduced modulo the monic f (constant first)."""
    n = len(f) - 1
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(n):
                prod[k - n + i] -= c * f[i]
    return prod[:n]


def rational_roots(f: IntPolynomial) -> List[int]:
    """Integer roots of a monic polynomial (all rational roots, by Gauss)."""
    if f.coefficients[0] == 0:
        rest = IntPolynomial(f.coefficients[1:]) if f.degree > 0 else f
        return sorted(set([0] + (rational_roots(rest) if rest.degree > 0 else [])))
    roots = set()
    for d in divisors(abs(f.coefficients[0])):
        for r in (d, -d):
            if f(r) == 0:
                roots.add(r)
    return sorted(roots)


def _has_rational_root(f: IntPolynomial) -> bool:
    if f.is_monic():
        return bool(rational_roots(f))
    lead, const = abs(f.leading), abs(f.coefficients[0])
    if const == 0:
        return True
    for p in divisors(const):
        for q in divisors(lead):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if f(r) == 0:
                    return True
    return False


def _factor_degrees_mod(f: IntPolynomial, p: int) -> List[int]:
    _, factors = Poly(f.descending(), X, modulus=p).factor_list()
    return sorted(g.degree() for g, e in factors for _ in range(e))


def _has_monic_quadratic_factor(f: IntPolynomial) -> bool:
    """Exhaustive (x^2+ax+b)(x^2+cx+d) search over divisor pairs b*d = a0."""
    a0, a1, a2, a3 = f.coefficients[:4]
    for b in divisors(abs(a0)):
        for b_signed in (b, -b):
            d = a0 // b_signed
            if d != b_signed:
                num = a1 - b_signed * a3
                den = d - b_signed
                if num % den:
                    continue
                a = num // den
                c = a3 - a
                if b_signed + d + a * c == a2:
                    return True
            else:
                if b_signed * a3 != a1:
                    continue
                # a + c = a3, a*c = a2 - 2b
                disc = a3 * a3 - 4 * (a2 - 2 * b_signed)
                if disc >= 0 and isqrt(disc) ** 2 == disc and (a3 + isqrt(disc)) % 2 == 0:
                    return True
    return False


def is_irreducible(f: IntPolynomial) -> bool:
    """
    Irreducibility over Q for degrees 2, 3 and 4.

    Degrees 2 and 3 reduce to the rational root test. In degree 4 a
    modular pre-filter settles most inputs; the rest go through an exact
    search for a monic quadratic factor.

    Raises:
        UnsupportedDegreeError: for degrees outside {2, 3, 4}
    """
    if f.degree not in (2, 3, 4):
        raise UnsupportedDegreeError(f"irreducibility test supports degrees 2-4, got {f.degree}")
    if _has_rational_root(f):
        return False
    if f.degree < 4:
        return True
    if not f.is_monic():
        return bool(f.to_sympy().is_irreducible)

    disc = poly_discriminant(f)
    if disc == 0:
        return False
    for p in primerange(2, 60):
        if disc % p == 0:
            continue
        degrees = _factor_degrees_mod(f, p)
        # no rational root, so any factorization over Q is 2 + 2
        if degrees == [4] or degrees == [1, 3]:
            return True
    return not _has_monic_quadratic_factor(f)
