"""
Cubic and quartic fields: a canonical polynomial with cached invariants
"""

from functools import cached_property
from typing import Dict, Optional

from arith.factor import factorize
from orders.canonical import canonical_polynomial
from orders.maximal import MaximalOrder, SplittingType, maximal_order, splitting_type
from poly.galois import GaloisLabel, galois_group_cubic, galois_group_quartic, resolvent_cubic
from poly.intpoly import IntPolynomial, is_irreducible


class NumberField:
    """A field Q[x]/(f) given by a monic irreducible integer polynomial."""

    def __init__(self, poly: IntPolynomial, canonical: bool = True):
        self.poly = canonical_polynomial(poly) if canonical else poly
        self._splitting: Dict[int, SplittingType] = {}

    @cached_property
    def order(self) -> MaximalOrder:
        return maximal_order(self.poly)

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def disc(self) -> int:
        return self.order.field_disc_signed

    @property
    def disc_abs(self) -> int:
        return abs(self.disc)

    @property
    def signature(self):
        return self.order.signature

    def splitting_type(self, p: int) -> SplittingType:
        if p not in self._splitting:
            self._splitting[p] = splitting_type(self.order, p)
        return self._splitting[p]

    def ramified_primes(self):
        return factorize(self.disc).primes

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.poly}, disc={self.disc})"


class CubicField(NumberField):

    @cached_property
    def galois(self) -> GaloisLabel:
        return galois_group_cubic(self.poly, self.disc)


class QuarticField(NumberField):

    @cached_property
    def galois(self) -> GaloisLabel:
        return galois_group_quartic(self.poly)

    @cached_property
    def resolvent(self) -> Optional[CubicField]:
        """The cubic resolvent field M (S4 and A4 only)."""
        cubic = resolvent_cubic(self.poly)
        if not is_irreducible(cubic):
            return None
        return CubicField(cubic)
