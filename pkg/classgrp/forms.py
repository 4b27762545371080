"""
Positive definite binary quadratic forms: reduction, composition and the
form class group of a negative discriminant
"""

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Dict, List, Tuple

from gmpy2 import gcdext

from classgrp.structure import Certification, ClassGroupData, invariants_from_relations
from utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True, order=True)
class BinaryQF:
    """The form a x^2 + b xy + c y^2."""
    a: int
    b: int
    c: int

    def __repr__(self) -> str:
        return f"({self.a},{self.b},{self.c})"

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (-a < b <= a <= c):
            return False
        return not (a == c and b < 0)

    def inverse(self) -> 'BinaryQF':
        return reduce_form(BinaryQF(self.a, -self.b, self.c))

    def to_list(self) -> List[int]:
        return [self.a, self.b, self.c]


def principal_form(D: int) -> BinaryQF:
    """The identity (1, k, (k^2 - D)/4) with k = D mod 2."""
    k = D % 2
    return BinaryQF(1, k, (k * k - D) // 4)


def _normalize(a: int, b: int, c: int) -> Tuple[int, int, int]:
    r = (a - b) // (2 * a)
    return a, b + 2 * r * a, a * r * r + b * r + c


def reduce_form(f: BinaryQF) -> BinaryQF:
    """Unique reduced form equivalent to the positive definite form f."""
    if f.a <= 0 or f.discriminant >= 0:
        raise ValueError(f"{f} is not positive definite")
    a, b, c = _normalize(f.a, f.b, f.c)
    while a > c or (a == c and b < 0):
        s = (c + b) // (2 * c)
        a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
    return BinaryQF(a, b, c)


def compose(f: BinaryQF, g: BinaryQF) -> BinaryQF:
    """
    Gaussian composition followed by reduction.

    Both forms must be primitive of the same discriminant.
    """
    D = f.discriminant
    if g.discriminant != D:
        raise ValueError(f"cannot compose {f} and {g}: discriminants {D} and {g.discriminant}")
    if f.a > g.a:
        f, g = g, f
    a1, b1 = f.a, f.b
    a2, b2, c2 = g.a, g.b, g.c
    s = (b1 + b2) // 2
    n = b2 - s

    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = (int(x) for x in gcdext(a2, a1))
        y1 = u

    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = (int(x) for x in gcdext(s, d))
        y2 = -y2

    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (b3 * b3 - D) // (4 * a3)
    return reduce_form(BinaryQF(a3, b3, c3))


def power(f: BinaryQF, k: int) -> BinaryQF:
    """f^k by square-and-multiply (k may be negative)."""
    if k < 0:
        return power(f.inverse(), -k)
    result = principal_form(f.discriminant)
    base = f
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def reduced_forms(D: int) -> List[BinaryQF]:
    """
    All primitive reduced forms of discriminant D < 0, sorted.

    Reduced means |b| <= a <= c, with b >= 0 whenever |b| = a or a = c,
    so a <= sqrt(|D|/3).
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    forms: List[BinaryQF] = []
    a_max = isqrt(-D // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append(BinaryQF(a, b, c))
    return sorted(forms)


def form_class_group(D: int) -> ClassGroupData:
    """
    Structure of the form class group of D < 0.

    Generators are adjoined in sorted order. For a new generator g the
    least m with g^m in the current subgroup H gives the relation
    g^m = (known word); H then grows to H * <g>. The relation rows
    are triangular of full rank and generate all relations.
    """
    forms = reduced_forms(D)
    h = len(forms)
    identity = principal_form(D)
    # element -> exponent vector over the generators chosen so far
    subgroup: Dict[BinaryQF, Tuple[int, ...]] = {identity: ()}
    generators: List[BinaryQF] = []
    relations: List[List[int]] = []

    for g in forms:
        if len(subgroup) == h:
            break
        if g in subgroup:
            continue
        k = len(generators)
        m, x = 1, g
        while x not in subgroup:
            x = compose(x, g)
            m += 1
        word = subgroup[x]
        relations.append([-e for e in word] + [0] * (k - len(word)) + [m])
        generators.append(g)

        grown: Dict[BinaryQF, Tuple[int, ...]] = {}
        for elem, exps in subgroup.items():
            y = elem
            base = exps + (0,) * (k - len(exps))
            for j in range(m):
                grown[y] = base + (j,)
                y = compose(y, g)
        subgroup = grown

    ngens = len(generators)
    rows = [row + [0] * (ngens - len(row)) for row in relations]
    divisors = invariants_from_relations(rows, ngens)
    cg = ClassGroupData(divisors, Certification.FORMS_EXHAUSTIVE,
                        {'forms': h, 'generators': [f.to_list() for f in generators]})
    if cg.h != h:
        raise RuntimeError(f"form group of {D}: structure {divisors} has order {cg.h}, expected {h}")
    logger.debug(f"Form class group of {D}: {divisors}")
    return cg


def count_killed_by(D: int, k: int) -> int:
    """Number of form classes f of discriminant D < 0 with f^k = 1."""
    identity = principal_form(D)
    return sum(1 for f in reduced_forms(D) if power(f, k) == identity)
