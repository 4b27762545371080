"""
Gerth's relation between the 3-ranks of a non-cyclic cubic field M and
of its quadratic resolvent k
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from arith.factor import fundamental_discriminant
from classgrp.compute import cubic_class_group, quadratic_class_group, quadratic_order
from classgrp.structure import ClassGroupData
from orders.fields import CubicField
from orders.maximal import SplittingType, splitting_type
from poly.galois import GaloisLabel
from utils.cache import Cache
from utils.logger import setup_logger

logger = setup_logger(__name__)


class CyclicCubicError(ValueError):
    """Gerth's relation needs a non-Galois cubic field."""


@dataclass
class GerthReport:
    rk3_k: int
    rk3_M: int
    t: int
    u: int
    slack: int
    verdicts: Dict[str, Optional[bool]] = field(default_factory=dict)
    d_k: Optional[int] = None
    d_M: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.verdicts.values())

    def to_dict(self) -> Dict:
        return {
            'd_k': self.d_k,
            'd_M': self.d_M,
            'rk3_k': self.rk3_k,
            'rk3_M': self.rk3_M,
            't': self.t,
            'u': self.u,
            'slack': self.slack,
            'verdicts': dict(self.verdicts),
            'passed': self.passed,
        }


def gerth_check(rk3_k: int, rk3_M: int,
                splittings: Sequence[Tuple[SplittingType, SplittingType]]) -> GerthReport:
    """
    Check Gerth's three rank relations.

    A prime p contributes to t when M is totally ramified at p (then
    the primes of k above p ramify in the cyclic cubic extension L/k),
    with the number of primes of k above p as its contribution; u counts
    those p that also split in k. With slack = rk3_k + t - 1 - rk3_M:
    (i) t = 0 forces slack = 0; (ii) otherwise 0 <= slack <= t - 1 + u;
    (iii) rk3_M >= rk3_k - u.

    Args:
        rk3_k: 3-rank of the class group of k
        rk3_M: 3-rank of the class group of M
        splittings: (splitting in k, splitting in M) for each prime
            ramified in M; primes not totally ramified in M are ignored
    """
    t = u = 0
    for split_k, split_M in splittings:
        if not split_M.is_totally_ramified():
            continue
        t += split_k.prime_count()
        if split_k.prime_count() == 2:
            u += 1
    slack = rk3_k + t - 1 - rk3_M
    verdicts: Dict[str, Optional[bool]] = {}
    if t == 0:
        verdicts['i'] = slack == 0
        verdicts['ii'] = None
    else:
        verdicts['i'] = None
        verdicts['ii'] = 0 <= slack <= t - 1 + u
    verdicts['iii'] = rk3_M >= rk3_k - u
    return GerthReport(rk3_k, rk3_M, t, u, slack, verdicts)


def gerth_for_field(M: CubicField, config: Optional[Dict] = None, cache: Optional[Cache] = None,
                    cl_k: Optional[ClassGroupData] = None,
                    cl_M: Optional[ClassGroupData] = None) -> GerthReport:
    """
    Gerth report of a cubic field with both 3-ranks computed exactly.

    Class groups already at hand can be passed in as cl_k and cl_M.

    Raises:
        CyclicCubicError: if M is cyclic
    """
    if M.galois == GaloisLabel.C3:
        raise CyclicCubicError(f"{M.poly} is cyclic")
    d_k = fundamental_discriminant(M.disc)
    k_order = quadratic_order(d_k)
    splittings: List[Tuple[SplittingType, SplittingType]] = [
        (splitting_type(k_order, p), M.splitting_type(p)) for p in M.ramified_primes()
    ]
    cl_k = cl_k or quadratic_class_group(d_k, config, cache)
    cl_M = cl_M or cubic_class_group(M.order, config, cache)
    report = gerth_check(cl_k.ranks.rk3, cl_M.ranks.rk3, splittings)
    report.d_k = d_k
    report.d_M = M.disc
    if not report.passed:
        logger.error(f"Gerth relation fails for {M.poly}: {report.to_dict()}")
    return report
