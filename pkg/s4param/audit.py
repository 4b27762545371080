"""
Fiber audit: observed fiber sizes of the triple map against the bound
computed from the true ranks
"""

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from arith.factor import omega
from classgrp.structure import ClassGroupData, RankProfile
from s4param.bounds import corollary_fiber_bound, eq_number_bound, eq_number_closed_form
from s4param.triple import FieldTriple
from utils.logger import setup_logger

logger = setup_logger(__name__)


class FiberBoundViolation(RuntimeError):
    """A fiber of the triple map is larger than its bound."""


@dataclass
class BoundReport:
    triple: FieldTriple
    r1: int
    r2: int
    eq_number_value: int
    closed_form_value: int
    corollary_value: Optional[float]
    observed_fiber: int
    rk3_k: int
    rk2_M: int
    members: List[List[int]]

    @property
    def passed(self) -> bool:
        return self.observed_fiber <= self.eq_number_value <= self.closed_form_value

    def to_dict(self) -> Dict:
        return {
            'triple': self.triple.to_dict(),
            'r1': self.r1,
            'r2': self.r2,
            'eq_number': self.eq_number_value,
            'closed_form': self.closed_form_value,
            'corollary_C1': self.corollary_value,
            'observed': self.observed_fiber,
            'rk3_k': self.rk3_k,
            'rk2_M': self.rk2_M,
            'members': self.members,
        }


def fiber_report(triple: FieldTriple, members: Sequence, rk3_k: int, rk2_M: int) -> BoundReport:
    """BoundReport for one fiber; members only need a .poly with coefficients."""
    r1, r2, value = eq_number_bound(rk3_k, rk2_M, omega(triple.b), omega(triple.cS))
    closed = eq_number_closed_form(rk3_k, rk2_M, omega(triple.b), omega(triple.cS))
    corollary = None
    if triple.a * triple.b ** 2 >= 3:
        corollary = corollary_fiber_bound(triple.a, triple.b, triple.cS)
    return BoundReport(triple, r1, r2, value, closed, corollary, len(members), rk3_k, rk2_M,
                       [list(m.poly.coefficients) for m in members])


def _ranks(cg: Optional[ClassGroupData], what: str, poly) -> RankProfile:
    if cg is None:
        raise ValueError(f"record {poly} has no {what} class group")
    return cg.ranks


def fiber_audit(records: Sequence) -> List[BoundReport]:
    """
    Group S4 records by triple and bound every fiber.

    The ranks of a fiber are the maxima over its members, which bounds
    the count for each member's own ranks. Records need .galois,
    .triple, .class_data_k, .class_data_M and .poly.

    Raises:
        FiberBoundViolation: with the offending fiber serialized
    """
    fibers: Dict[tuple, List] = {}
    for record in records:
        if str(record.galois) != 'S4':
            continue
        fibers.setdefault(record.triple.key(), []).append(record)

    reports: List[BoundReport] = []
    for key in sorted(fibers):
        members = fibers[key]
        rk3_k = max(_ranks(m.class_data_k, 'quadratic', m.poly).rk3 for m in members)
        rk2_M = max(_ranks(m.class_data_M, 'cubic', m.poly).rk2 for m in members)
        report = fiber_report(members[0].triple, members, rk3_k, rk2_M)
        if not report.passed:
            raise FiberBoundViolation(f"fiber bound violated: {json.dumps(report.to_dict())}")
        reports.append(report)
    logger.info(f"Audited {len(reports)} fibers of {sum(len(f) for f in fibers.values())} S4 fields")
    return reports
