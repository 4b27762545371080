"""
The triple (a, b, c) of an S4 quartic field and its conductor S-part
"""

from dataclasses import dataclass
from math import isqrt
from typing import Any, Dict, List

from arith.factor import fundamental_discriminant, prime_to_S_part, radical
from orders.fields import QuarticField
from poly.galois import GaloisLabel
from s4param.tables import TameClass, classify_tame_prime


class NotS4Error(ValueError):
    """The quartic field does not have Galois group S4."""


class InconsistentTriple(RuntimeError):
    """The triple does not reconstruct the discriminant of its field."""


@dataclass(frozen=True)
class FieldTriple:
    """
    (Rad d_k, Rad N(d_{L/k}), prime-to-6 part of Rad N(d_{N/L})).

    The 2- and 3-parts of c are never determined.
    """
    a: int
    b: int
    cS: int
    c_23_known: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {'a': self.a, 'b': self.b, 'cS': self.cS}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'FieldTriple':
        return cls(int(data['a']), int(data['b']), int(data['cS']))

    def key(self):
        return self.a, self.b, self.cS


def _require_s4(K: QuarticField) -> None:
    if K.galois != GaloisLabel.S4:
        raise NotS4Error(f"{K.poly} has Galois group {K.galois}, not S4")


def quadratic_resolvent_disc(K: QuarticField) -> int:
    """Fundamental discriminant of k = Q(sqrt(d_K))."""
    _require_s4(K)
    return fundamental_discriminant(K.disc)


def tame_rows(K: QuarticField) -> List[TameClass]:
    """Table rows of the ramified primes p > 3 of K, by p."""
    _require_s4(K)
    M = K.resolvent
    return [classify_tame_prime(K.splitting_type(p), M.splitting_type(p), p)
            for p in K.ramified_primes() if p > 3]


def compute_triple(K: QuarticField) -> FieldTriple:
    """
    Triple of an S4 field.

    b comes from d_M = d_k f^2 as Rad(f); cS collects the tame primes
    whose table row puts them in c.

    Raises:
        NotS4Error: for non-S4 input
        InconsistentTriple: if d_M / d_k is not a square or the
            S-parts fail to reconstruct d_K
    """
    d_k = quadratic_resolvent_disc(K)
    M = K.resolvent
    a = radical(abs(d_k))
    if M.disc_abs % abs(d_k):
        raise InconsistentTriple(f"{K.poly}: |d_M| = {M.disc_abs} is not divisible by |d_k| = {abs(d_k)}")
    quotient = M.disc_abs // abs(d_k)
    f = isqrt(quotient)
    if f * f != quotient:
        raise InconsistentTriple(f"{K.poly}: d_M / d_k = {quotient} is not a square")
    b = radical(f)

    cS = 1
    for row in tame_rows(K):
        if 'c' in row.membership:
            cS *= row.p

    expected = prime_to_S_part(a) * prime_to_S_part(b) ** 2 * cS ** 2
    if prime_to_S_part(K.disc_abs) != expected:
        raise InconsistentTriple(
            f"{K.poly}: prime-to-6 part of d_K = {K.disc_abs} is {prime_to_S_part(K.disc_abs)}, "
            f"but (a, b, cS) = ({a}, {b}, {cS}) gives {expected}")
    return FieldTriple(a, b, cS)


def conductor_S_part(K: QuarticField) -> int:
    """prod p^v_N over the tame primes of K."""
    N = 1
    for row in tame_rows(K):
        N *= row.p ** row.v_N
    return N


@dataclass(frozen=True)
class ConductorDecomposition:
    """a = a1 a2, b = b1 b2, c = c0 c1 c2 with N^S = (a1 a2^2 b1 b2^2 c1 c2^2)^S."""
    a1: int
    a2: int
    b1: int
    b2: int
    c0: int
    c1: int
    c2: int

    def conductor(self) -> int:
        return self.a1 * self.a2 ** 2 * self.b1 * self.b2 ** 2 * self.c1 * self.c2 ** 2

    def to_dict(self) -> Dict[str, int]:
        return {k: getattr(self, k) for k in ('a1', 'a2', 'b1', 'b2', 'c0', 'c1', 'c2')}


def conductor_decomposition(K: QuarticField) -> ConductorDecomposition:
    """Split the tame primes of the triple by conductor exponent."""
    parts = dict(a1=1, a2=1, b1=1, b2=1, c0=1, c1=1, c2=1)
    for row in tame_rows(K):
        if row.membership == frozenset('ac'):
            parts['c0'] *= row.p
        letter = 'a' if 'a' in row.membership else next(iter(row.membership))
        parts[f"{letter}{row.v_N}"] *= row.p
    decomposition = ConductorDecomposition(**parts)
    if decomposition.conductor() != conductor_S_part(K):
        raise InconsistentTriple(f"{K.poly}: conductor decomposition {decomposition} does not multiply out")
    for row in tame_rows(K):
        if 'b' in row.membership and row.v_N != (1 if row.p % 3 == 1 else 2):
            raise InconsistentTriple(f"{K.poly}: prime {row.p} of b has v_N = {row.v_N}")
    return decomposition
