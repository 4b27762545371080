"""
Verification checks over census records

Record checks read only the stored record data, so a corrupted record
is caught without recomputing its field.
"""

from dataclasses import dataclass, field
from math import isqrt
from typing import Any, Dict, Optional, Sequence

from arith.factor import (
    factorize,
    fundamental_discriminant,
    is_square,
    omega,
    prime_to_S_part,
    radical,
    valuation,
)
from arith.shapes import NotAnS4Shape, candidate_triples, parse_conductor_shape, parse_discriminant_shape
from census.dedup import DuplicateFieldError, FieldDeduplicator
from classgrp.structure import p_rank
from orders.fields import QuarticField
from poly.galois import GaloisLabel
from utils.logger import setup_logger

logger = setup_logger(__name__)


class CensusRangeError(RuntimeError):
    """The census does not reach the discriminant range a count needs."""


@dataclass
class CheckResult:
    """Outcome of one named check with the first counterexample, if any."""
    name: str
    passed: bool = True
    checked: int = 0
    skipped: int = 0
    counterexample: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def fail(self, counterexample: Dict[str, Any]) -> None:
        if self.passed:
            self.counterexample = counterexample
        self.passed = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'checked': self.checked,
            'skipped': self.skipped,
            'counterexample': self.counterexample,
            'details': self.details,
        }


def _is_s4(record) -> bool:
    return record.galois == GaloisLabel.S4


# -- per-record checks -----------------------------------------------------

def check_tables(record) -> bool:
    """
    Every tame prime of d_K has a table row whose v_d is the actual
    exponent and whose membership matches the triple.
    """
    if record.triple is None:
        return False
    tame = [p for p in factorize(record.disc).primes if p > 3]
    if sorted(row.p for row in record.tame_rows) != tame:
        return False
    t = record.triple
    for row in record.tame_rows:
        p = row.p
        if valuation(record.disc, p) != row.v_d:
            return False
        in_a, in_b, in_c = t.a % p == 0, t.b % p == 0, t.cS % p == 0
        if (in_a, in_b, in_c) != ('a' in row.membership, 'b' in row.membership, 'c' in row.membership):
            return False
        if (in_a and in_c) != (row.v_d == 3):
            return False
        if in_b and (in_a or in_c):
            return False
    return True


def check_shape(record) -> bool:
    """Discriminant shape parses, matches the stored one, and d^S = a^S (b^S)^2 cS^2."""
    if record.triple is None:
        return False
    try:
        shape = parse_discriminant_shape(record.disc_abs)
    except NotAnS4Shape:
        return False
    if record.disc_shape is not None and shape != record.disc_shape:
        return False
    t = record.triple
    expected = prime_to_S_part(t.a) * prime_to_S_part(t.b) ** 2 * t.cS ** 2
    return shape.reconstruct() == record.disc_abs and prime_to_S_part(record.disc_abs) == expected


def check_fiber_membership(record) -> bool:
    """The S-part triple is one of the candidates of the discriminant shape."""
    if record.triple is None:
        return False
    try:
        shape = parse_discriminant_shape(record.disc_abs)
    except NotAnS4Shape:
        return False
    t = record.triple
    return (prime_to_S_part(t.a), prime_to_S_part(t.b), t.cS) in candidate_triples(shape)


def check_conductor_corollary(record) -> bool:
    """
    With gcd(d_K, 6) = 1 a conductor S-part p or p^2 forces p | a, and
    the primes of b that are 1 mod 3 always divide N11.
    """
    if record.triple is None or record.conductor_S is None:
        return False
    t = record.triple
    N = record.conductor_S
    primes = factorize(N).primes
    if record.disc % 2 and record.disc % 3 and len(primes) == 1:
        if t.a % primes[0]:
            return False
    shape = parse_conductor_shape(N)
    b1 = 1
    for p in factorize(t.b).primes:
        if p > 3 and p % 3 == 1:
            b1 *= p
    return shape.N11 % b1 == 0


def record_verdicts(record, gerth_passed: Optional[bool] = None) -> Dict[str, bool]:
    """Verdict map stored with an S4 record."""
    verdicts = {
        'tables': check_tables(record),
        'shape': check_shape(record),
        'fiber_membership': check_fiber_membership(record),
        'conductor_corollary': check_conductor_corollary(record),
    }
    if gerth_passed is not None:
        verdicts['gerth_resolvent'] = gerth_passed
    return verdicts


def run_record_check(name: str, check, records: Sequence) -> CheckResult:
    result = CheckResult(name)
    for record in records:
        if not _is_s4(record):
            continue
        result.checked += 1
        if not check(record):
            logger.error(f"Check {name} fails for {record.poly}")
            result.fail(record.to_dict())
    return result


def check_no_duplicates(records: Sequence) -> CheckResult:
    result = CheckResult('no_duplicates')
    polys = [r.poly for r in records]
    keys = [p.coefficients for p in polys]
    if len(set(keys)) != len(keys):
        result.fail({'repeated': [list(k) for k in keys if keys.count(k) > 1][:2]})
        return result
    try:
        result.checked = FieldDeduplicator({}).assert_pairwise_distinct(polys)
    except DuplicateFieldError as e:
        result.fail({'error': str(e)})
    return result


# -- counting lemmas -------------------------------------------------------

@dataclass
class LemmaCount:
    observed: int
    bound: int
    r: int
    required_range: int

    @property
    def passed(self) -> bool:
        return self.observed <= self.bound

    def to_dict(self) -> Dict[str, int]:
        return {'observed': self.observed, 'bound': self.bound, 'r': self.r, 'range': self.required_range}


def lemma1_range(d_k: int, b: int) -> int:
    """|d_k| prod_{p | b, p != 3} p^2, times 81 when 3 | b."""
    result = abs(d_k)
    for p in factorize(b).primes:
        result *= 81 if p == 3 else p * p
    return result


def lemma1_count_check(d_k: int, b: int, rk3_k: int, cubic_records: Sequence, census_max_disc: int) -> LemmaCount:
    """
    Cubic fields with quadratic resolvent k and Rad(f) | b, where
    d_M = d_k f^2, against (3^r - 1)/2 with r = rk3(Cl_k) + omega(b) + 2.

    Raises:
        CensusRangeError: if the cubic census stops below the needed range
    """
    needed = lemma1_range(d_k, b)
    if needed > census_max_disc:
        raise CensusRangeError(f"lemma 1 for d_k = {d_k}, b = {b} needs |d| <= {needed}, "
                               f"census reaches {census_max_disc}")
    observed = 0
    for record in cubic_records:
        if record.galois != GaloisLabel.S3 or fundamental_discriminant(record.disc) != d_k:
            continue
        quotient = record.disc_abs // abs(d_k)
        if not is_square(quotient):
            continue
        f = isqrt(quotient)
        if b % radical(f) == 0:
            observed += 1
    r = rk3_k + omega(b) + 2
    return LemmaCount(observed, (3 ** r - 1) // 2, r, needed)


def lemma2_range(d_M: int, c: int) -> int:
    """|d_M| (c^S)^2 with the room left at 2 and 3 when they divide c."""
    result = abs(d_M) * prime_to_S_part(c) ** 2
    if c % 2 == 0:
        result *= 2 ** (11 - valuation(d_M, 2))
    if c % 3 == 0:
        result *= 3 ** (5 - valuation(d_M, 3))
    return result


def lemma2_count_check(M_poly, d_M: int, c: int, rk2_M: int, quartic_records: Sequence,
                       census_max_disc: int) -> LemmaCount:
    """
    S4 quartic fields with resolvent field M whose N/L ramification
    lies above primes of c, against 2^r - 1 with r = rk2(Cl_M) + 3 omega(c) + 6.

    Raises:
        CensusRangeError: if the quartic census stops below the needed range
    """
    needed = lemma2_range(d_M, c)
    if needed > census_max_disc:
        raise CensusRangeError(f"lemma 2 for {M_poly}, c = {c} needs |d| <= {needed}, "
                               f"census reaches {census_max_disc}")
    observed = 0
    for record in quartic_records:
        if not _is_s4(record) or record.triple is None or c % record.triple.cS:
            continue
        if any(c % p and valuation(record.disc, p) != valuation(d_M, p) for p in (2, 3)):
            continue
        if fundamental_discriminant(record.disc) != fundamental_discriminant(d_M):
            continue
        if QuarticField(record.poly, canonical=False).resolvent.poly != M_poly:
            continue
        observed += 1
    r = rk2_M + 3 * omega(c) + 6
    return LemmaCount(observed, 2 ** r - 1, r, needed)


def class_rank(cg, p: int) -> int:
    if cg is None:
        raise ValueError("record carries no class group data")
    return p_rank(cg, p)
