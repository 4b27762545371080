"""
Tests for the S4 parametrization: local tables, triples, bounds,
Gerth's relation and the fiber audit
"""

import sys
from pathlib import Path
from types import SimpleNamespace

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from arith.shapes import ConductorShape, DiscriminantShape
from classgrp.structure import Certification, ClassGroupData
from orders.fields import CubicField, QuarticField
from orders.maximal import SplittingType
from poly.intpoly import IntPolynomial, parse_polynomial
from s4param.audit import FiberBoundViolation, fiber_audit, fiber_report
from s4param.bounds import (
    conductor_count_bound,
    corollary_fiber_bound,
    discriminant_count_bound,
    eq_number_bound,
    eq_number_closed_form,
    rank_relation_ratio,
)
from s4param.gerth import CyclicCubicError, gerth_check, gerth_for_field
from s4param.tables import TableViolation, TameClass, classify_tame_prime
from s4param.triple import (
    FieldTriple,
    NotS4Error,
    compute_triple,
    conductor_decomposition,
    conductor_S_part,
    quadratic_resolvent_disc,
    tame_rows,
)


def split(p, *pairs):
    return SplittingType.build(p, pairs)


SPLIT_M = split(0, (1, 1), (1, 1), (1, 1))
INERT_M = split(0, (1, 1), (1, 2))


class TestTables:

    def test_transposition_rows(self):
        row = classify_tame_prime(split(5, (2, 1), (1, 1), (1, 1)), INERT_M, 5)
        assert (row.membership, row.v_d, row.v_N, row.decomposition) == (frozenset('a'), 1, 1, 'C2')
        row = classify_tame_prime(split(5, (2, 1), (1, 2)), INERT_M, 5)
        assert (row.membership, row.v_d, row.v_N, row.decomposition) == (frozenset('a'), 1, 2, 'C2xC2')

    def test_double_transposition_rows_use_resolvent(self):
        row = classify_tame_prime(split(7, (2, 2)), SPLIT_M, 7)
        assert (row.v_d, row.v_N, row.decomposition) == (2, 2, 'C2xC2')
        row = classify_tame_prime(split(7, (2, 2)), INERT_M, 7)
        assert (row.v_d, row.v_N, row.decomposition) == (2, 1, 'C4')
        row = classify_tame_prime(split(7, (2, 1), (2, 1)), SPLIT_M, 7)
        assert (row.v_N, row.decomposition) == (1, 'C2')
        row = classify_tame_prime(split(7, (2, 1), (2, 1)), INERT_M, 7)
        assert (row.v_N, row.decomposition) == (2, 'C2xC2')
        assert row.membership == frozenset('c')

    @pytest.mark.parametrize('p,v_N,decomposition', [(5, 1, 'C4'), (7, 2, 'D4')])
    def test_four_cycle_rows(self, p, v_N, decomposition):
        row = classify_tame_prime(split(p, (4, 1)), INERT_M, p)
        assert row.membership == frozenset('ac')
        assert (row.v_d, row.v_N, row.decomposition) == (3, v_N, decomposition)

    @pytest.mark.parametrize('p,v_N,decomposition', [(7, 1, 'C3'), (5, 2, 'D3')])
    def test_three_cycle_rows(self, p, v_N, decomposition):
        row = classify_tame_prime(split(p, (3, 1), (1, 1)), INERT_M, p)
        assert row.membership == frozenset('b')
        assert (row.v_d, row.v_N, row.decomposition) == (2, v_N, decomposition)

    def test_rejected_inputs(self):
        with pytest.raises(ValueError):
            classify_tame_prime(split(3, (2, 1), (1, 1), (1, 1)), INERT_M, 3)
        with pytest.raises(ValueError):
            classify_tame_prime(split(5, (1, 4)), INERT_M, 5)
        with pytest.raises(TableViolation):
            classify_tame_prime(split(5, (2, 2)), split(5, (3, 1)), 5)

    def test_tame_class_serialization(self):
        row = classify_tame_prime(split(7, (3, 1), (1, 1)), INERT_M, 7)
        data = row.to_dict()
        assert data['membership'] == ['b']
        assert TameClass.from_dict(data) == row


class TestTriple:

    # 283 splits its cofactor (row C2), 229 does not (row C2xC2)
    @pytest.mark.parametrize('text,d,triple,conductor', [
        ('x^4-x-1', -283, (283, 1, 1), 283),
        ('x^4-x+1', 229, (229, 1, 1), 229 ** 2),
    ])
    def test_prime_discriminant_triples(self, text, d, triple, conductor):
        K = QuarticField(parse_polynomial(text))
        assert K.disc == d
        assert quadratic_resolvent_disc(K) == d
        assert compute_triple(K).key() == triple
        assert conductor_S_part(K) == conductor

    def test_tame_rows_and_decomposition(self):
        K = QuarticField(parse_polynomial('x^4-x-1'))
        rows = tame_rows(K)
        assert [row.p for row in rows] == [283]
        assert rows[0].membership == frozenset('a')
        decomposition = conductor_decomposition(K)
        assert decomposition.a1 == 283
        assert decomposition.conductor() == 283
        assert decomposition.to_dict()['b1'] == 1

    def test_non_s4_fields_are_rejected(self):
        K = QuarticField(parse_polynomial('x^4-2'))
        with pytest.raises(NotS4Error):
            compute_triple(K)
        with pytest.raises(ValueError):
            tame_rows(K)

    def test_triple_serialization(self):
        triple = FieldTriple(5, 7, 11)
        assert triple.to_dict() == {'a': 5, 'b': 7, 'cS': 11}
        assert FieldTriple.from_dict({'a': '5', 'b': 7, 'cS': 11}) == triple


class TestBounds:

    @pytest.mark.parametrize('ranks,expected', [
        ((0, 0, 0, 0), (2, 6, 756)),
        ((1, 1, 1, 0), (4, 7, 15240)),
        ((0, 0, 0, 1), (2, 9, 6132)),
    ])
    def test_eq_number(self, ranks, expected):
        assert eq_number_bound(*ranks) == expected
        assert eq_number_bound(*ranks)[2] <= eq_number_closed_form(*ranks)

    def test_eq_number_rejects_negative_ranks(self):
        with pytest.raises(ValueError):
            eq_number_bound(-1, 0, 0, 0)

    def test_closed_form_dominates(self):
        for rk3 in range(3):
            for rk2 in range(3):
                for wb in range(3):
                    for wc in range(3):
                        assert eq_number_bound(rk3, rk2, wb, wc)[2] <= eq_number_closed_form(rk3, rk2, wb, wc)

    def test_corollary(self):
        assert corollary_fiber_bound(283, 1, 1) == pytest.approx(4.63e5, rel=5e-3)
        assert corollary_fiber_bound(5, 7, 1) == pytest.approx(3.69e6, rel=5e-3)
        assert corollary_fiber_bound(283, 1, 1, C=2.0) == pytest.approx(2 * corollary_fiber_bound(283, 1, 1))
        with pytest.raises(ValueError):
            corollary_fiber_bound(1, 1, 5)
        with pytest.raises(ValueError):
            corollary_fiber_bound(283, 1, 1, C=0)

    def test_discriminant_count_bound(self):
        assert discriminant_count_bound(DiscriminantShape(0, 0, 283, 1, 1)) == pytest.approx(536, rel=5e-3)
        assert discriminant_count_bound(DiscriminantShape(0, 0, 5, 7, 1)) == pytest.approx(8.52e3, rel=5e-3)
        assert discriminant_count_bound(DiscriminantShape(0, 0, 1, 1, 5)) == pytest.approx(46.3, rel=5e-3)

    def test_conductor_count_bound(self):
        assert conductor_count_bound(ConductorShape(0, 0, 283, 1, 1)) == pytest.approx(4.87e5, rel=5e-3)
        assert conductor_count_bound(ConductorShape(0, 0, 1, 1, 5)) == pytest.approx(2.80e3, rel=5e-3)
        assert conductor_count_bound(ConductorShape(0, 0, 1, 5, 1)) == pytest.approx(313, rel=5e-3)
        with pytest.raises(ValueError):
            conductor_count_bound(ConductorShape(0, 0, 1, 1, 1))

    def test_rank_relation_ratio(self):
        assert rank_relation_ratio(0, 0, 283, 1) < rank_relation_ratio(1, 0, 283, 1)
        with pytest.raises(ValueError):
            rank_relation_ratio(0, 0, 1, 1)


class TestGerth:

    def test_unramified_relation(self):
        report = gerth_check(1, 0, [(split(23, (2, 1)), split(23, (2, 1), (1, 1)))])
        assert (report.t, report.u, report.slack) == (0, 0, 0)
        assert report.verdicts == {'i': True, 'ii': None, 'iii': True}
        assert report.passed

    def test_violation_is_reported(self):
        report = gerth_check(0, 2, [])
        assert not report.passed
        assert report.verdicts['i'] is False

    def test_pure_cubic(self):
        report = gerth_for_field(CubicField(parse_polynomial('x^3-7')))
        assert (report.rk3_k, report.rk3_M) == (0, 1)
        assert (report.t, report.u, report.slack) == (3, 1, 1)
        assert report.passed
        assert report.to_dict()['d_k'] == -3

    def test_given_class_groups_are_used(self):
        cl = ClassGroupData([], Certification.FORMS_EXHAUSTIVE)
        cl_M = ClassGroupData([], Certification.IDEAL_ENUM_CERTIFIED)
        report = gerth_for_field(CubicField(parse_polynomial('x^3-x-1')), cl_k=cl, cl_M=cl_M)
        assert report.t == 0
        assert report.slack == -1
        assert not report.passed

    def test_cyclic_cubic_is_rejected(self):
        with pytest.raises(CyclicCubicError):
            gerth_for_field(CubicField(parse_polynomial('x^3-3x+1')))


def _member(coefficients, triple, rk3=0, rk2=0):
    return SimpleNamespace(
        poly=IntPolynomial.from_coefficients(coefficients),
        galois='S4',
        triple=triple,
        class_data_k=ClassGroupData([3] * rk3, Certification.FORMS_EXHAUSTIVE),
        class_data_M=ClassGroupData([2] * rk2, Certification.IDEAL_ENUM_CERTIFIED),
    )


class TestFiberAudit:

    def test_fiber_report(self):
        triple = FieldTriple(283, 1, 1)
        report = fiber_report(triple, [_member([-1, -1, 0, 0, 1], triple)], 1, 1)
        assert (report.r1, report.r2, report.eq_number_value) == (3, 7, 4953)
        assert report.observed_fiber == 1
        assert report.passed
        assert report.to_dict()['members'] == [[-1, -1, 0, 0, 1]]

    def test_small_fibers_pass(self):
        triple = FieldTriple(283, 1, 1)
        reports = fiber_audit([_member([-1, -1, 0, 0, 1], triple, rk3=1)])
        assert len(reports) == 1
        assert reports[0].eq_number_value == 2457

    def test_oversized_fiber_raises(self):
        triple = FieldTriple(5, 1, 1)
        members = [_member([i, 1, 0, 0, 1], triple) for i in range(757)]
        with pytest.raises(FiberBoundViolation):
            fiber_audit(members)

    def test_missing_class_data(self):
        member = _member([-1, -1, 0, 0, 1], FieldTriple(283, 1, 1))
        member.class_data_M = None
        with pytest.raises(ValueError):
            fiber_audit([member])


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
