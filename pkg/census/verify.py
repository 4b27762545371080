"""
Verification run over a census: every selected check, one report
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from tqdm import tqdm

from arith.factor import fundamental_discriminant, is_square, radical
from census.checks import (
    CensusRangeError,
    CheckResult,
    check_conductor_corollary,
    check_fiber_membership,
    check_no_duplicates,
    check_shape,
    check_tables,
    class_rank,
    lemma1_count_check,
    lemma2_count_check,
    run_record_check,
)
from census.enumerate import enumerate_cubic_fields, enumerate_quartic_fields
from census.profile import DEFAULT_EPSILONS, galois_counts, max_rank_relation_ratio, scaling_profile
from classgrp.compute import cache_from_config, quadratic_class_group
from orders.fields import CubicField, QuarticField
from poly.galois import GaloisLabel
from s4param.audit import FiberBoundViolation, fiber_audit
from s4param.gerth import gerth_for_field
from utils.config import section
from utils.logger import setup_logger

logger = setup_logger(__name__)

ALL_CHECKS = ('tables', 'shape', 'gerth', 'fibers', 'lemma1', 'lemma2', 'scaling', 'conductor', 'duplicates')
QUARTIC_CHECKS = {'tables', 'shape', 'fibers', 'lemma2', 'scaling', 'conductor', 'duplicates'}
CUBIC_CHECKS = {'gerth', 'lemma1', 'lemma2', 'duplicates'}


@dataclass
class VerifyReport:
    max_disc: int
    checks: Dict[str, CheckResult] = field(default_factory=dict)
    counts: Dict[str, Dict[str, int]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.checks.values())

    def failures(self) -> List[str]:
        return [name for name, result in self.checks.items() if not result.passed]

    def to_dict(self) -> Dict:
        return {
            'max_disc': self.max_disc,
            'passed': self.passed,
            'counts': self.counts,
            'checks': {name: result.to_dict() for name, result in self.checks.items()},
        }


def parse_checks(value: Optional[str]) -> List[str]:
    """Comma-separated check names, 'all' or empty for every check."""
    if not value or value.strip().lower() == 'all':
        return list(ALL_CHECKS)
    names = [name.strip().lower() for name in value.split(',') if name.strip()]
    unknown = [name for name in names if name not in ALL_CHECKS]
    if unknown:
        raise ValueError(f"Unknown checks {unknown}; choose from {', '.join(ALL_CHECKS)}")
    return names


def _s3(records: Sequence) -> List:
    return [r for r in records if r.galois == GaloisLabel.S3]


def _s4(records: Sequence) -> List:
    return [r for r in records if r.galois == GaloisLabel.S4]


def check_gerth(cubic_records: Sequence, max_disc: int, config: Optional[Dict] = None,
                progress: bool = False) -> CheckResult:
    """Gerth's relations for every S3 cubic field with |d| <= max_disc."""
    result = CheckResult('gerth')
    cache = cache_from_config(config)
    unramified = 0
    targets = [r for r in _s3(cubic_records) if r.disc_abs <= max_disc]
    for record in tqdm(targets, desc='Gerth', disable=not progress):
        M = CubicField(record.poly, canonical=False)
        report = gerth_for_field(M, config, cache, record.class_data_k, record.class_data_M)
        result.checked += 1
        if report.t == 0:
            unramified += 1
        if not report.passed:
            result.fail(report.to_dict())
    result.details = {'max_disc': max_disc, 'unramified': unramified}
    return result


def check_fibers(quartic_records: Sequence) -> CheckResult:
    """Fiber membership of every S4 record and the fiber-size bound of every fiber."""
    result = run_record_check('fibers', check_fiber_membership, quartic_records)
    try:
        reports = fiber_audit(quartic_records)
    except FiberBoundViolation as e:
        result.fail({'error': str(e)})
        return result
    result.details = {
        'fibers': len(reports),
        'largest_fiber': max((r.observed_fiber for r in reports), default=0),
        'max_rank_relation_ratio': max_rank_relation_ratio(quartic_records),
    }
    return result


def _rk3_of_quadratic(d_k: int, cubic_records: Sequence, config: Optional[Dict], cache) -> int:
    for record in cubic_records:
        if record.class_data_k is not None and fundamental_discriminant(record.disc) == d_k:
            return class_rank(record.class_data_k, 3)
    return class_rank(quadratic_class_group(d_k, config, cache), 3)


def _run_lemma(name: str, pairs: Sequence[Tuple], count: Callable) -> CheckResult:
    """
    Run one counting lemma over its (field, modulus) pairs.

    Pairs the census does not reach are skipped; when none is in range
    the check refuses to report.
    """
    result = CheckResult(name)
    for pair in pairs:
        try:
            outcome = count(*pair)
        except CensusRangeError as e:
            logger.debug(f"Skipping {name} pair {pair}: {e}")
            result.skipped += 1
            continue
        result.checked += 1
        if not outcome.passed:
            result.fail({'pair': [str(x) for x in pair], **outcome.to_dict()})
    if pairs and result.checked == 0:
        raise CensusRangeError(f"{name}: none of {len(pairs)} pairs lies within the census range")
    return result


def lemma1_pairs(cubic_records: Sequence) -> List[Tuple[int, int]]:
    """(d_k, b) with b = 1 and b = Rad(f) for each S3 cubic with d_M = d_k f^2."""
    pairs: Set[Tuple[int, int]] = set()
    for record in _s3(cubic_records):
        d_k = fundamental_discriminant(record.disc)
        quotient = record.disc_abs // abs(d_k)
        pairs.add((d_k, 1))
        if quotient > 1 and is_square(quotient):
            pairs.add((d_k, radical(quotient)))
    return sorted(pairs)


def check_lemma1(cubic_records: Sequence, max_disc: int, config: Optional[Dict] = None) -> CheckResult:
    cache = cache_from_config(config)
    ranks: Dict[int, int] = {}

    def count(d_k: int, b: int):
        if d_k not in ranks:
            ranks[d_k] = _rk3_of_quadratic(d_k, cubic_records, config, cache)
        return lemma1_count_check(d_k, b, ranks[d_k], cubic_records, max_disc)

    return _run_lemma('lemma1', lemma1_pairs(cubic_records), count)


def check_lemma2(quartic_records: Sequence, cubic_records: Sequence, max_disc: int) -> CheckResult:
    """
    Quartic fibers over resolvent fields: c = 1 for every S3 cubic of
    the census and c = cS for the resolvent of every S4 record.
    """
    fields: Dict[Tuple[int, ...], Tuple] = {}
    pairs: Set[Tuple[Tuple[int, ...], int]] = set()
    for record in _s3(cubic_records):
        if record.class_data_M is None:
            continue
        fields[record.poly.coefficients] = (record.poly, record.disc, class_rank(record.class_data_M, 2))
        pairs.add((record.poly.coefficients, 1))
    for record in _s4(quartic_records):
        if record.class_data_M is None or record.triple is None:
            continue
        M = QuarticField(record.poly, canonical=False).resolvent
        fields.setdefault(M.poly.coefficients, (M.poly, M.disc, class_rank(record.class_data_M, 2)))
        pairs.add((M.poly.coefficients, record.triple.cS))

    def count(key: Tuple[int, ...], c: int):
        poly, d_M, rk2 = fields[key]
        return lemma2_count_check(poly, d_M, c, rk2, quartic_records, max_disc)

    return _run_lemma('lemma2', sorted(pairs), count)


def check_scaling(quartic_records: Sequence, ceiling: float,
                  epsilons: Sequence[float] = DEFAULT_EPSILONS) -> CheckResult:
    result = CheckResult('scaling')
    profile = scaling_profile(quartic_records, epsilons)
    result.checked = len(profile.per_disc)
    result.details = profile.to_dict()
    if profile.squarefree_max_ratio > ceiling:
        result.fail({'d': profile.squarefree_argmax, 'ratio': profile.squarefree_max_ratio, 'ceiling': ceiling})
    return result


def census_verify(max_disc: int, checks: Optional[Sequence[str]] = None, config: Optional[Dict] = None,
                  quartic_records: Optional[Sequence] = None,
                  cubic_records: Optional[Sequence] = None) -> VerifyReport:
    """
    Run the selected checks over the census to max_disc.

    Censuses not passed in are enumerated. Record checks read the stored
    record data only, so a corrupted census file shows up as a failed
    check with the offending record as counterexample.

    Raises:
        ValueError: for unknown check names or a nonpositive bound
        CensusRangeError: if a counting lemma has no pair within range
    """
    if max_disc < 1:
        raise ValueError(f"max_disc must be positive, got {max_disc}")
    selected = list(checks) if checks else list(ALL_CHECKS)
    parse_checks(','.join(selected))
    options = section(config, 'verify')
    progress = section(config, 'census').get('progress', False)

    if quartic_records is None and QUARTIC_CHECKS & set(selected):
        quartic_records = enumerate_quartic_fields(max_disc, config)
    if cubic_records is None and CUBIC_CHECKS & set(selected):
        cubic_records = enumerate_cubic_fields(max_disc, config)
    quartic_records = quartic_records or []
    cubic_records = cubic_records or []

    report = VerifyReport(max_disc)
    report.counts = {'quartic': galois_counts(quartic_records), 'cubic': galois_counts(cubic_records)}

    for name in selected:
        logger.info(f"Running check {name} to X = {max_disc}")
        if name == 'tables':
            result = run_record_check('tables', check_tables, quartic_records)
        elif name == 'shape':
            result = run_record_check('shape', check_shape, quartic_records)
        elif name == 'conductor':
            result = run_record_check('conductor', check_conductor_corollary, quartic_records)
        elif name == 'gerth':
            gerth_max = min(max_disc, options.get('gerth_max_disc', 5000))
            result = check_gerth(cubic_records, gerth_max, config, progress)
        elif name == 'fibers':
            result = check_fibers(quartic_records)
        elif name == 'lemma1':
            result = check_lemma1(cubic_records, max_disc, config)
        elif name == 'lemma2':
            result = check_lemma2(quartic_records, cubic_records, max_disc)
        elif name == 'scaling':
            result = check_scaling(quartic_records, options.get('scaling_ceiling', 1.0),
                                   options.get('epsilons', DEFAULT_EPSILONS))
        else:
            result = check_no_duplicates(list(quartic_records))
            cubic = check_no_duplicates(list(cubic_records))
            result.checked += cubic.checked
            if not cubic.passed:
                result.fail(cubic.counterexample)
        result.name = name
        report.checks[name] = result
        status = 'pass' if result.passed else 'FAIL'
        logger.info(f"Check {name}: {status} ({result.checked} checked, {result.skipped} skipped)")

    if not report.passed:
        logger.error(f"Verification failed: {', '.join(report.failures())}")
    return report
