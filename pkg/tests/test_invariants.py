import itertools
import random
from fractions import Fraction

import pytest

from conftest import random_unimodular
from nielsen_bip.errors import DegenerateSpecError, MultipleClassesError, SpecError
from nielsen_bip.exact_linalg import IntMatrix
from nielsen_bip.fibered_map import FiberedMapSpec, make_theorem1_family, make_theorem2_family
from nielsen_bip.groups import FiberElement
from nielsen_bip.invariants import (
    CertificateRow,
    Congruence,
    analyze,
    bip_certificate,
    class_index,
    fiber_lefschetz,
    fiber_nielsen,
    fixed_subgroup,
    fixed_surface_genus,
    reidemeister_structure,
    row_is_valid,
    same_reidemeister_class,
    total_lefschetz,
)
from nielsen_bip.oracles import random_nondegenerate_spec, torus_fixed_points


def spec(genus, R, xi):
    R, xi = IntMatrix.from_rows(R), IntMatrix.from_rows(xi)
    return FiberedMapSpec(genus, xi.rows, R, xi)


class TestLefschetz:
    def test_fiber_lefschetz(self):
        assert fiber_lefschetz(make_theorem2_family(3).fiber_matrix) == -3
        assert fiber_lefschetz(IntMatrix.from_rows([[8]])) == -7
        assert fiber_lefschetz(IntMatrix.zeros(2, 2)) == 1

    def test_fiber_nielsen(self):
        assert fiber_nielsen(make_theorem2_family(4).fiber_matrix) == 4
        assert fiber_nielsen(IntMatrix.identity(2).scale(2)) == 1
        with pytest.raises(DegenerateSpecError) as info:
            fiber_nielsen(IntMatrix.identity(2))
        assert info.value.code == "nielsen-undefined-degenerate"

    def test_total_lefschetz(self):
        assert total_lefschetz(make_theorem2_family(1)) == 2
        assert total_lefschetz(make_theorem1_family(9)) == 18

    def test_total_lefschetz_genus3_constant_fiber(self):
        s = spec(3, [[0] * 6], [[0]])
        assert total_lefschetz(s) == -4
        # the constant fiber map has one fixed point, of index +1
        fp = torus_fixed_points(s.fiber_matrix)
        assert fp.count == 1
        assert s.euler_characteristic * fp.count * 1 == -4


class TestReidemeister:
    @pytest.mark.parametrize("m", range(1, 11))
    def test_families_have_one_class(self, m):
        for factory in (make_theorem1_family, make_theorem2_family):
            structure = reidemeister_structure(factory(m))
            assert structure.cokernel.is_trivial
            assert structure.class_count == 1
            assert structure.empty_classes_exist

    def test_two_classes_without_retraction(self):
        s = spec(2, [[0, 0, 0, 0]], [[3]])
        assert reidemeister_structure(s).class_count == 2
        # x -> 3x on the circle fixes 0 and 1/2
        assert torus_fixed_points(s.fiber_matrix).points == ((Fraction(0),), (Fraction(1, 2),))
        assert not same_reidemeister_class(s, FiberElement.of(0), FiberElement.of(1))
        assert same_reidemeister_class(s, FiberElement.of(1), FiberElement.of(-1))

    def test_infinite_for_degenerate(self):
        s = spec(2, [[0, 0, 0, 0]], [[1]])
        assert reidemeister_structure(s).class_count == float("inf")


class TestFixedSubgroup:
    def test_theorem2_m2(self):
        report = fixed_subgroup(make_theorem2_family(2))
        assert report.lattice_conditions == (Congruence((1, 0, 0, 0), 2),)
        assert report.lattice_index == 2
        for alpha in itertools.product(range(-3, 4), repeat=4):
            k, l = alpha[0], alpha[1]
            assert report.contains(alpha) == (k % 2 == 0)
            assert report.fiber_formula(alpha) == (-l, l - Fraction(k, 2))
        assert str(report.lattice_conditions[0]) == "nu(a1) = 0 mod 2"
        assert str(report.fiber_formula) == "(-b1, -a1/2 + b1)"

    def test_theorem2_m1_is_everything(self):
        report = fixed_subgroup(make_theorem2_family(1))
        assert report.lattice_index == 1
        assert report.lattice_conditions == ()

    def test_theorem1_m6(self):
        report = fixed_subgroup(make_theorem1_family(6))
        assert report.lattice_index == 6
        assert report.fiber_formula((6, 5, -1, 2)) == (Fraction(-1),)

    def test_fiber_formula_solves_fixed_equation(self, rng):
        for _ in range(100):
            s = random_nondegenerate_spec(rng)
            report = fixed_subgroup(s)
            for _ in range(5):
                alpha = [rng.randint(-6, 6) for _ in range(2 * s.genus)]
                v = report.fiber_formula(alpha)
                rhs = [
                    sum(r * a for r, a in zip(s.retraction.row(i), alpha))
                    + sum(x * y for x, y in zip(s.fiber_matrix.row(i), v))
                    for i in range(s.fiber_rank)
                ]
                assert list(v) == rhs
                integral = all(x.denominator == 1 for x in v)
                assert integral == report.contains(alpha)

    def test_degenerate_refused(self):
        with pytest.raises(DegenerateSpecError):
            fixed_subgroup(spec(2, [[1, 0, 0, 0]], [[1]]))


class TestClassIndex:
    @pytest.mark.parametrize(
        "factory, m, expected",
        [(make_theorem2_family, 5, 10), (make_theorem1_family, 1, 2), (make_theorem2_family, 1, 2)],
    )
    def test_values(self, factory, m, expected):
        assert class_index(factory(m)) == expected

    def test_two_paths_agree(self):
        for m in range(1, 201):
            for factory in (make_theorem1_family, make_theorem2_family):
                s = factory(m)
                assert class_index(s) == abs(total_lefschetz(s)) == 2 * m

    def test_multiple_classes_refused(self):
        with pytest.raises(MultipleClassesError) as info:
            class_index(spec(2, [[0, 0, 0, 0]], [[3]]))
        assert info.value.code == "multiple-classes-index-not-aggregated"

    def test_report_when_several_classes(self):
        report = analyze(spec(2, [[0, 0, 0, 0]], [[3]]))
        assert report.class_count == 2 and report.class_index_abs is None
        assert report.fiber_nielsen == 2

    def test_cross_identity(self, rng):
        for _ in range(200):
            s = random_nondegenerate_spec(rng)
            count = reidemeister_structure(s).class_count
            assert fixed_subgroup(s).lattice_index * count == abs(fiber_lefschetz(s.fiber_matrix))

    def test_fiber_basis_change_invariance(self, rng):
        for _ in range(100):
            s = random_nondegenerate_spec(rng)
            P = random_unimodular(rng, s.fiber_rank)
            # P^-1 = adj(P) / det(P), det = +-1
            P_inv = P.adjugate().scale(P.det())
            moved = FiberedMapSpec(s.genus, s.fiber_rank, P @ s.retraction, P @ s.fiber_matrix @ P_inv)
            assert analyze(moved) == analyze(s)
            assert fixed_subgroup(moved).lattice_index == fixed_subgroup(s).lattice_index


class TestReport:
    def test_invariants_hold(self, rng):
        for _ in range(100):
            s = random_nondegenerate_spec(rng)
            r = analyze(s)
            assert r.fiber_nielsen == abs(r.fiber_lefschetz)
            assert r.total_lefschetz == r.euler_characteristic * r.fiber_lefschetz
            if r.class_count == 1:
                assert r.class_index_abs == abs(r.total_lefschetz)

    def test_degenerate_refused(self):
        with pytest.raises(DegenerateSpecError):
            analyze(spec(2, [[1, 0, 0, 0]], [[1]]))


class TestFixedSurfaceGenus:
    @pytest.mark.parametrize("m, g", [(1, 2), (4, 5)])
    def test_values(self, m, g):
        assert fixed_surface_genus(m) == g

    def test_chi_consistency(self):
        for m in range(1, 51):
            chi = -2 * m
            assert fixed_surface_genus(m) == 1 - chi // 2 == m + 1

    @pytest.mark.parametrize("m", [0, -3])
    def test_rejects(self, m):
        with pytest.raises(SpecError):
            fixed_surface_genus(m)


class TestCertificate:
    def test_theorem2_three_rows(self):
        cert = bip_certificate("theorem2", 3)
        assert [(r.m, r.total_lefschetz, r.class_count, r.class_index_abs) for r in cert.rows] == [
            (1, 2, 1, 2),
            (2, 4, 1, 4),
            (3, 6, 1, 6),
        ]
        assert cert.valid

    def test_theorem1_single_row(self):
        cert = bip_certificate("theorem1", 1)
        assert [(r.m, r.total_lefschetz, r.class_count, r.class_index_abs) for r in cert.rows] == [(1, 2, 1, 2)]

    @pytest.mark.parametrize("family", ["theorem1", "theorem2"])
    def test_empty_rejected(self, family):
        with pytest.raises(SpecError):
            bip_certificate(family, 0)

    def test_validator_rejects_perturbations(self):
        row = CertificateRow(5, 10, 1, 10)
        assert row_is_valid(row)
        for field in ("m", "total_lefschetz", "class_count", "class_index_abs"):
            for delta in (-1, 1):
                bad = CertificateRow(**{**row.__dict__, field: getattr(row, field) + delta})
                assert not row_is_valid(bad), (field, delta)
        assert not row_is_valid(CertificateRow(5, 10, 1, None))
