"""
Resolvent cubics and Galois groups of cubic and quartic polynomials
"""

from enum import Enum
from typing import Optional

from arith.factor import is_square
from poly.intpoly import (
    IntPolynomial,
    ReduciblePolynomialError,
    UnsupportedDegreeError,
    is_irreducible,
    poly_discriminant,
    rational_roots,
)


class GaloisLabel(str, Enum):
    S4 = 'S4'
    A4 = 'A4'
    D4 = 'D4'
    C4 = 'C4'
    V4 = 'V4'
    S3 = 'S3'
    C3 = 'C3'
    C2 = 'C2'

    def __str__(self) -> str:
        return self.value


def _require_monic(f: IntPolynomial, degree: int) -> None:
    if f.degree != degree:
        raise UnsupportedDegreeError(f"expected degree {degree}, got {f.degree}")
    if not f.is_monic():
        raise ValueError(f"{f} is not monic")


def resolvent_cubic(f: IntPolynomial) -> IntPolynomial:
    """
    Resolvent cubic of a monic quartic.

    For x^4 + a x^3 + b x^2 + c x + d this is the polynomial with roots
    r1 r2 + r3 r4 (and conjugates):
    y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2).
    On a depressed quartic x^4 + p x^2 + q x + r it reads
    y^3 - p y^2 - 4r y + (4pr - q^2); both forms have disc equal to disc(f).
    """
    _require_monic(f, 4)
    d, c, b, a = f.coefficients[:4]
    return IntPolynomial.from_descending([1, -b, a * c - 4 * d, -(a * a * d - 4 * b * d + c * c)])


def _splits_over_sqrt(u: int, v: int, disc: int) -> bool:
    """Does x^2 + u x + v split over Q(sqrt(disc))?"""
    delta = u * u - 4 * v
    if delta == 0 or is_square(delta):
        return True
    return is_square(delta * disc)


def galois_group_quartic(f: IntPolynomial) -> GaloisLabel:
    """
    Galois group of a monic irreducible quartic.

    Resolvent cubic factorization plus the square class of disc(f); the
    D4 / C4 split uses the Kappe-Warren test on the one rational root r
    of the resolvent: the group is C4 iff both x^2 - r x + d and
    x^2 + a x + (b - r) split over Q(sqrt(disc f)).

    Raises:
        ReduciblePolynomialError: if f is reducible
    """
    _require_monic(f, 4)
    if not is_irreducible(f):
        raise ReduciblePolynomialError(f"{f} is reducible")
    disc = poly_discriminant(f)
    resolvent = resolvent_cubic(f)
    roots = rational_roots(resolvent)
    if not roots:
        return GaloisLabel.A4 if is_square(disc) else GaloisLabel.S4
    if len(roots) > 1:
        return GaloisLabel.V4
    r = roots[0]
    d, c, b, a = f.coefficients[:4]
    if _splits_over_sqrt(-r, d, disc) and _splits_over_sqrt(a, b - r, disc):
        return GaloisLabel.C4
    return GaloisLabel.D4


def galois_group_cubic(f: IntPolynomial, field_disc: Optional[int] = None) -> GaloisLabel:
    """
    Galois group of a monic irreducible cubic.

    C3 iff the field discriminant is a square. The field discriminant
    differs from disc(f) by a square factor, so disc(f) is used when
    the field discriminant is not supplied.

    Raises:
        ReduciblePolynomialError: if f is reducible
    """
    _require_monic(f, 3)
    if not is_irreducible(f):
        raise ReduciblePolynomialError(f"{f} is reducible")
    disc = field_disc if field_disc is not None else poly_discriminant(f)
    return GaloisLabel.C3 if is_square(disc) else GaloisLabel.S3
