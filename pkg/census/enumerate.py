"""
Complete enumeration of cubic and quartic fields up to a discriminant
bound, and construction of their census records
"""

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional

from tqdm import tqdm

from arith.shapes import NotAnS4Shape, parse_discriminant_shape
from census.checks import record_verdicts
from census.dedup import FieldDeduplicator
from census.hunter import relative_chunks, search_chunk, search_chunks, search_relative_chunk
from census.records import CensusRecord
from classgrp.compute import cache_from_config, cubic_class_group, quadratic_class_group
from orders.fields import CubicField, QuarticField
from orders.maximal import maximal_order
from poly.galois import GaloisLabel
from poly.intpoly import IntPolynomial
from s4param.gerth import gerth_for_field
from s4param.triple import compute_triple, conductor_S_part, quadratic_resolvent_disc, tame_rows
from utils.config import section
from utils.logger import setup_logger

logger = setup_logger(__name__)


def default_jobs(config: Optional[Dict] = None) -> int:
    jobs = section(config, 'census').get('jobs') or os.getenv('S4CENSUS_JOBS')
    return max(1, int(jobs)) if jobs else 1


def _parallel_map(func, items: List, jobs: int, desc: str, progress: bool,
                  chunksize: Optional[int] = None) -> List:
    """Order-preserving map, in-process for jobs == 1."""
    if jobs <= 1:
        return [func(item) for item in tqdm(items, desc=desc, disable=not progress)]
    chunksize = chunksize or max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(tqdm(pool.map(func, items, chunksize=chunksize), total=len(items),
                         desc=desc, disable=not progress))


def find_fields(degree: int, max_disc: int, jobs: int = 1, progress: bool = False,
                config: Optional[Dict] = None) -> List[IntPolynomial]:
    """
    Canonical polynomials of the fields found by the Hunter search.

    In degree 4 the fields with a quadratic subfield are also searched
    relative to each quadratic k with d_k^2 <= X, since their small
    elements may all lie in k. Chunks are searched independently; the
    union is deduplicated and sorted by (|disc|, coefficients) afterwards,
    so the result does not depend on the number of workers.
    """
    chunks = search_chunks(degree, max_disc)
    logger.info(f"Hunter search: degree {degree}, X = {max_disc}, {len(chunks)} chunks, {jobs} jobs")
    found = set()
    chunksize = section(config, 'census').get('chunk_size')
    for coeffs in _parallel_map(search_chunk, chunks, jobs, f"degree {degree} search", progress, chunksize):
        found.update(coeffs)
    if degree == 4:
        relative = relative_chunks(max_disc)
        logger.info(f"Relative search over {len({c.D for c in relative})} quadratic fields, {len(relative)} chunks")
        for coeffs in _parallel_map(search_relative_chunk, relative, jobs, "quadratic subfields", progress):
            found.update(coeffs)
    polys = FieldDeduplicator(section(config, 'census')).deduplicate(
        [IntPolynomial.from_coefficients(c) for c in sorted(found)])
    return sorted(polys, key=lambda f: (maximal_order(f).field_disc_abs, f.coefficients))


def build_quartic_record(poly: IntPolynomial, class_groups: bool = True,
                         config: Optional[Dict] = None) -> CensusRecord:
    """Record of a quartic field; S4 fields get triple, tables, conductor and class data."""
    K = QuarticField(poly, canonical=False)
    record = CensusRecord(poly, K.disc, K.signature, K.galois)
    try:
        record.disc_shape = parse_discriminant_shape(K.disc_abs)
    except NotAnS4Shape:
        logger.debug(f"{poly}: discriminant {K.disc} has no S4 shape")
    if K.galois != GaloisLabel.S4:
        return record

    record.triple = compute_triple(K)
    record.tame_rows = tame_rows(K)
    record.conductor_S = conductor_S_part(K)
    gerth_passed = None
    if class_groups:
        cache = cache_from_config(config)
        record.class_data_k = quadratic_class_group(quadratic_resolvent_disc(K), config, cache)
        record.class_data_M = cubic_class_group(K.resolvent.order, config, cache)
        gerth_passed = gerth_for_field(K.resolvent, config, cache,
                                       record.class_data_k, record.class_data_M).passed
    record.verdicts = record_verdicts(record, gerth_passed)
    return record


def build_cubic_record(poly: IntPolynomial, class_groups: bool = True,
                       config: Optional[Dict] = None) -> CensusRecord:
    """Record of a cubic field; S3 fields carry Cl(k), Cl(M) and the Gerth verdict."""
    M = CubicField(poly, canonical=False)
    record = CensusRecord(poly, M.disc, M.signature, M.galois)
    try:
        record.disc_shape = parse_discriminant_shape(M.disc_abs)
    except NotAnS4Shape:
        pass
    if M.galois == GaloisLabel.S3 and class_groups:
        cache = cache_from_config(config)
        report = gerth_for_field(M, config, cache)
        record.class_data_k = quadratic_class_group(report.d_k, config, cache)
        record.class_data_M = cubic_class_group(M.order, config, cache)
        record.verdicts = {'gerth': report.passed}
    return record


class _RecordBuilder:
    """Picklable callable for the worker pool."""

    def __init__(self, degree: int, class_groups: bool, config: Optional[Dict]):
        self.degree = degree
        self.class_groups = class_groups
        self.config = config

    def __call__(self, coefficients) -> CensusRecord:
        poly = IntPolynomial.from_coefficients(coefficients)
        if self.degree == 4:
            return build_quartic_record(poly, self.class_groups, self.config)
        return build_cubic_record(poly, self.class_groups, self.config)


def _enumerate(degree: int, max_disc: int, config: Optional[Dict], jobs: Optional[int],
               class_groups: Optional[bool]) -> List[CensusRecord]:
    if max_disc < 1:
        raise ValueError(f"max_disc must be positive, got {max_disc}")
    options = section(config, 'census')
    jobs = jobs or default_jobs(config)
    progress = options.get('progress', False)
    if class_groups is None:
        class_groups = options.get('class_groups', True)
    polys = find_fields(degree, max_disc, jobs, progress, config)
    builder = _RecordBuilder(degree, class_groups, config)
    records = _parallel_map(builder, [f.coefficients for f in polys], jobs,
                            f"degree {degree} records", progress)
    records.sort(key=CensusRecord.sort_key)
    logger.info(f"Degree {degree} census to {max_disc}: {len(records)} fields")
    return records


def enumerate_quartic_fields(max_disc: int, config: Optional[Dict] = None, jobs: Optional[int] = None,
                             class_groups: Optional[bool] = None) -> List[CensusRecord]:
    """One record per quartic field with |d| <= max_disc, sorted by (|d|, polynomial)."""
    return _enumerate(4, max_disc, config, jobs, class_groups)


def enumerate_cubic_fields(max_disc: int, config: Optional[Dict] = None, jobs: Optional[int] = None,
                           class_groups: Optional[bool] = None) -> List[CensusRecord]:
    """One record per cubic field with |d| <= max_disc, labelled S3 or C3."""
    return _enumerate(3, max_disc, config, jobs, class_groups)


def filter_group(records: Iterable[CensusRecord], group: str) -> List[CensusRecord]:
    """Keep records of one Galois group ('all' keeps everything)."""
    if group.lower() == 'all':
        return list(records)
    label = GaloisLabel(group.upper())
    return [r for r in records if r.galois == label]
