"""
Finite abelian group data: elementary divisors, p-ranks and the trivial bound
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Sequence

import mpmath
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from arith.factor import factorize


class Certification(str, Enum):
    FORMS_EXHAUSTIVE = 'FormsExhaustive'
    IDEAL_ENUM_CERTIFIED = 'IdealEnumCertified'

    def __str__(self) -> str:
        return self.value


def normalize_invariants(values: Iterable[int]) -> List[int]:
    """
    Elementary divisors d_1 | d_2 | ... | d_k (all >= 2) of the group
    Z/v_1 x Z/v_2 x ... for positive v_i.

    Prime powers are regrouped, so the input need not satisfy the
    divisibility chain.
    """
    powers: Dict[int, List[int]] = {}
    for v in values:
        v = abs(int(v))
        if v == 0:
            raise ValueError("infinite cyclic factor in a class group")
        if v == 1:
            continue
        for p, e in factorize(v).pairs:
            powers.setdefault(p, []).append(p ** e)
    if not powers:
        return []
    k = max(len(lst) for lst in powers.values())
    divisors = [1] * k
    for lst in powers.values():
        lst.sort()
        for i, q in enumerate(lst):
            divisors[k - len(lst) + i] *= q
    return divisors


def invariants_from_relations(rows: Sequence[Sequence[int]], ngens: int) -> List[int]:
    """Elementary divisors of Z^ngens modulo the lattice spanned by rows."""
    if ngens == 0:
        return []
    if len(rows) < ngens:
        raise ValueError(f"{len(rows)} relations cannot have full rank in Z^{ngens}")
    factors = invariant_factors(Matrix([list(r) for r in rows]), domain=ZZ)
    factors = [int(f) for f in factors]
    if len(factors) < ngens or any(f == 0 for f in factors):
        raise ValueError("relation lattice is not of full rank")
    return normalize_invariants(factors)


@dataclass
class ClassGroupData:
    """
    A finite abelian group given by its elementary divisors.

    The empty list is the trivial group.
    """
    elementary_divisors: List[int]
    certification: Certification
    certificate: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.elementary_divisors = [int(d) for d in self.elementary_divisors]
        self.certification = Certification(self.certification)
        for d in self.elementary_divisors:
            if d < 2:
                raise ValueError(f"elementary divisor {d} < 2 in {self.elementary_divisors}")
        for d, e in zip(self.elementary_divisors, self.elementary_divisors[1:]):
            if e % d:
                raise ValueError(f"divisibility chain broken: {self.elementary_divisors}")

    @property
    def h(self) -> int:
        result = 1
        for d in self.elementary_divisors:
            result *= d
        return result

    @property
    def ranks(self) -> 'RankProfile':
        return RankProfile.of(self)

    def to_dict(self) -> Dict[str, Any]:
        ranks = self.ranks
        return {
            'h': self.h,
            'elementary_divisors': list(self.elementary_divisors),
            'rk2': ranks.rk2,
            'rk3': ranks.rk3,
            'certification': self.certification.value,
            'certificate': self.certificate,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ClassGroupData':
        cg = cls(data['elementary_divisors'], data['certification'], data.get('certificate') or {})
        if 'h' in data and data['h'] != cg.h:
            raise ValueError(f"stored h = {data['h']} disagrees with divisors {cg.elementary_divisors}")
        return cg


@dataclass(frozen=True)
class RankProfile:
    rk2: int
    rk3: int

    @classmethod
    def of(cls, cg: ClassGroupData) -> 'RankProfile':
        return cls(p_rank(cg, 2), p_rank(cg, 3))


def p_rank(cg: ClassGroupData, p: int) -> int:
    """Number of elementary divisors divisible by p."""
    return sum(1 for d in cg.elementary_divisors if d % p == 0)


def trivial_bound_check(cg: ClassGroupData, field_disc_abs: int, degree: int) -> mpmath.mpf:
    """
    h / (d^(1/2) log(d)^(n-1)), the empirical constant of the trivial
    class number bound.
    """
    if field_disc_abs < 3:
        raise ValueError(f"trivial bound needs d >= 3, got {field_disc_abs}")
    with mpmath.workdps(30):
        d = mpmath.mpf(field_disc_abs)
        return mpmath.mpf(cg.h) / (mpmath.sqrt(d) * mpmath.log(d) ** (degree - 1))
