"""
Tests for class groups: forms, analytic formulas, the relation engine
and the cached entry points
"""

import sys
from pathlib import Path

import mpmath
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from arith.factor import is_fundamental_discriminant
from classgrp.analytic import (
    fundamental_unit,
    imaginary_class_number,
    minkowski_bound,
    narrow_class_number,
    quadratic_class_number_analytic,
)
from classgrp.compute import cubic_class_group, quadratic_class_group, quadratic_order
from classgrp.forms import BinaryQF, compose, count_killed_by, form_class_group, power, principal_form, reduce_form, reduced_forms
from classgrp.relations import RelationLattice, regulator, rgcd
from classgrp.structure import (
    Certification,
    ClassGroupData,
    RankProfile,
    invariants_from_relations,
    normalize_invariants,
    p_rank,
    trivial_bound_check,
)
from orders.maximal import maximal_order
from poly.intpoly import UnsupportedDegreeError, parse_polynomial
from utils.cache import Cache


class TestStructure:

    def test_normalize_invariants(self):
        assert normalize_invariants([]) == []
        assert normalize_invariants([1, 1]) == []
        assert normalize_invariants([2, 3]) == [6]
        assert normalize_invariants([4, 2]) == [2, 4]
        assert normalize_invariants([12, 18]) == [6, 36]
        with pytest.raises(ValueError):
            normalize_invariants([0, 2])

    def test_invariants_from_relations(self):
        assert invariants_from_relations([[2, 0], [0, 3]], 2) == [6]
        assert invariants_from_relations([[2, 1], [0, 2]], 2) == [4]
        assert invariants_from_relations([], 0) == []
        with pytest.raises(ValueError):
            invariants_from_relations([[2, 0]], 2)
        with pytest.raises(ValueError):
            invariants_from_relations([[2, 0], [4, 0]], 2)

    def test_class_group_data(self):
        cg = ClassGroupData([2, 6], Certification.FORMS_EXHAUSTIVE)
        assert cg.h == 12
        assert p_rank(cg, 2) == 2
        assert p_rank(cg, 3) == 1
        assert p_rank(cg, 5) == 0
        assert RankProfile.of(cg) == RankProfile(2, 1)
        assert cg.ranks == RankProfile(2, 1)
        data = cg.to_dict()
        assert data['h'] == 12
        assert (data['rk2'], data['rk3']) == (2, 1)
        assert ClassGroupData.from_dict(data) == cg

    def test_class_group_data_validation(self):
        with pytest.raises(ValueError):
            ClassGroupData([2, 3], Certification.FORMS_EXHAUSTIVE)
        with pytest.raises(ValueError):
            ClassGroupData([1], Certification.FORMS_EXHAUSTIVE)
        with pytest.raises(ValueError):
            ClassGroupData.from_dict({'h': 4, 'elementary_divisors': [3], 'certification': 'FormsExhaustive'})

    def test_p_rank_zero_iff_p_does_not_divide_h(self):
        for divisors in ([], [2], [3], [2, 4], [6], [3, 9], [5, 10]):
            cg = ClassGroupData(divisors, Certification.FORMS_EXHAUSTIVE)
            for p in (2, 3, 5):
                assert (p_rank(cg, p) == 0) == (cg.h % p != 0)

    def test_trivial_bound(self):
        cg = ClassGroupData([3], Certification.FORMS_EXHAUSTIVE)
        assert float(trivial_bound_check(cg, 283, 2)) == pytest.approx(0.0316, abs=1e-4)
        with pytest.raises(ValueError):
            trivial_bound_check(cg, 2, 2)


class TestForms:

    def test_reduction(self):
        f = reduce_form(BinaryQF(3, 7, 6))
        assert f.is_reduced()
        assert f.discriminant == -23
        with pytest.raises(ValueError):
            reduce_form(BinaryQF(1, 3, 1))

    def test_reduced_forms(self):
        assert reduced_forms(-23) == [BinaryQF(1, 1, 6), BinaryQF(2, -1, 3), BinaryQF(2, 1, 3)]
        assert reduced_forms(-4) == [BinaryQF(1, 0, 1)]
        with pytest.raises(ValueError):
            reduced_forms(5)

    def test_composition(self):
        f = BinaryQF(2, 1, 3)
        assert compose(f, f) == BinaryQF(2, -1, 3)
        assert compose(f, f.inverse()) == principal_form(-23)
        assert compose(principal_form(-23), f) == f
        assert power(f, 3) == principal_form(-23)
        assert power(f, -1) == f.inverse()

    def test_composition_is_associative(self):
        forms = reduced_forms(-84)
        for f in forms:
            for g in forms:
                assert compose(f, g) == compose(g, f)
                for k in forms:
                    assert compose(compose(f, g), k) == compose(f, compose(g, k))

    @pytest.mark.parametrize('D,divisors', [
        (-3, []),
        (-4, []),
        (-23, [3]),
        (-283, [3]),
        (-56, [4]),
        (-84, [2, 2]),
        (-3299, [3, 9]),
    ])
    def test_form_class_group(self, D, divisors):
        cg = form_class_group(D)
        assert cg.elementary_divisors == divisors
        assert cg.certification == Certification.FORMS_EXHAUSTIVE

    def test_forms_agree_with_dirichlet(self):
        """Form count, group order and 3-torsion agree for every fundamental -1000 < D < 0"""
        for D in range(-999, 0):
            if not is_fundamental_discriminant(D):
                continue
            cg = form_class_group(D)
            assert cg.h == len(reduced_forms(D)) == imaginary_class_number(D), D
            assert count_killed_by(D, 3) == 3 ** p_rank(cg, 3), D


class TestAnalytic:

    def test_imaginary_class_numbers(self):
        assert imaginary_class_number(-4) == 1
        assert imaginary_class_number(-3) == 1
        assert imaginary_class_number(-23) == 3
        assert imaginary_class_number(-283) == 3
        with pytest.raises(ValueError):
            imaginary_class_number(-12)

    def test_real_class_numbers(self):
        assert quadratic_class_number_analytic(5) == 1
        assert quadratic_class_number_analytic(12) == 1
        assert quadratic_class_number_analytic(40) == 2
        assert quadratic_class_number_analytic(229) == 3

    def test_fundamental_units(self):
        assert fundamental_unit(5) == (1, 1, -1)
        assert fundamental_unit(12) == (4, 1, 1)
        assert narrow_class_number(5) == 1
        assert narrow_class_number(12) == 2
        with pytest.raises(ValueError):
            narrow_class_number(-23)

    def test_minkowski_bound(self):
        # sqrt(283) (4/pi) 3!/27 for a complex cubic
        assert minkowski_bound(3, 1, 283) == pytest.approx(4.7598, abs=1e-3)


class TestRelations:

    def test_relation_lattice_index(self):
        lattice = RelationLattice(2, 0)
        for row in ([2, 0], [0, 3], [4, 3]):
            lattice.insert(row, [])
        assert lattice.is_full()
        assert lattice.index() == 6
        assert invariants_from_relations(lattice.rows(), 2) == [6]

    def test_partial_lattice_has_no_index(self):
        lattice = RelationLattice(3, 0)
        lattice.insert([1, 0, 0], [])
        assert lattice.index() is None

    def test_rgcd(self):
        R = mpmath.mpf('0.9624236501192069')
        assert float(rgcd(3 * R, 5 * R)) == pytest.approx(float(R))
        assert float(regulator([[3 * R], [5 * R]], 1)) == pytest.approx(float(R))
        assert regulator([], 0) == 1


class TestCompute:

    def test_quadratic_class_group(self):
        cg = quadratic_class_group(-283)
        assert cg.elementary_divisors == [3]
        assert cg.certificate['analytic_h'] == 3

    def test_real_quadratic_class_group(self):
        cg = quadratic_class_group(229)
        assert cg.elementary_divisors == [3]
        assert cg.certification == Certification.IDEAL_ENUM_CERTIFIED
        assert cg.certificate['unit_norm'] == -1
        assert cg.certificate['narrow_h'] == 3

    def test_quadratic_input_errors(self):
        for D in (-12, 9, 1):
            with pytest.raises(ValueError):
                quadratic_class_group(D)

    def test_quadratic_order(self):
        assert quadratic_order(-23).field_disc_signed == -23
        assert quadratic_order(12).field_disc_signed == 12

    @pytest.mark.parametrize('text,h', [
        ('x^3-x-1', 1),
        ('x^3+4x-1', 2),
        ('x^3-7', 3),
    ])
    def test_cubic_class_numbers(self, text, h):
        cg = cubic_class_group(maximal_order(parse_polynomial(text)))
        assert cg.h == h
        assert cg.certification == Certification.IDEAL_ENUM_CERTIFIED

    def test_cubic_rank_two_anchor(self):
        cg = cubic_class_group(maximal_order(parse_polynomial('x^3+4x-1')))
        assert p_rank(cg, 2) == 1
        assert cg.certificate['minkowski_bound'] == pytest.approx(4.76, abs=0.01)

    def test_cubic_requires_degree_three(self):
        with pytest.raises(UnsupportedDegreeError):
            cubic_class_group(quadratic_order(-23))

    def test_cache_round_trip(self, tmp_path, mocker):
        """A cached entry is returned without recomputation"""
        cache = Cache(cache_dir=str(tmp_path))
        first = quadratic_class_group(-23, cache=cache)
        mock_forms = mocker.patch('classgrp.compute.form_class_group')
        second = quadratic_class_group(-23, cache=cache)
        mock_forms.assert_not_called()
        assert second.to_dict() == first.to_dict()


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
