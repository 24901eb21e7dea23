import itertools
import random
from fractions import Fraction

import pytest

from shiftlap import (
    Alphabet,
    ArityError,
    BoundaryMismatchError,
    Constant,
    CoordinateSeries,
    CylinderFunction,
    GreenApplication,
    IncompatibleBoundaryError,
    LevelFunction,
    LevelOrderError,
    LevelTooSmallError,
    SolutionFunction,
    chi_extension,
    classify_harmonic,
    gauss_green_check,
    laplacian_estimate,
    neumann_derivative,
    restrict,
    solve_dirichlet,
    solve_neumann,
    vertex_set,
    weak_residual,
)


def random_cylinder(alphabet, level, rng, span=9):
    values = [
        Fraction(rng.randint(-span, span), rng.randint(1, 4))
        for _ in range(alphabet.size ** (level + 1))
    ]
    return CylinderFunction(alphabet, level, values)


def negated_green(load):
    zero = CylinderFunction(load.alphabet, 0, [0] * load.alphabet.size)
    return SolutionFunction(zero, GreenApplication(load))


class TestLaplacianEstimate:
    def test_cylinder_functions_are_harmonic_over_matching_boundaries(self, binary):
        rng = random.Random(2)
        for level in (0, 1, 2):
            h = random_cylinder(binary, level, rng)
            zero = Constant(binary, 0)
            est = laplacian_estimate(h, zero, boundary_level=level, m_max=level + 3)
            assert est.all_zero
            assert est.nonincreasing

    def test_boundary_below_the_cylinder_level_is_detected(self, binary):
        chi = chi_extension(binary.point("12"), 1)
        est = laplacian_estimate(chi, Constant(binary, 0), boundary_level=0, m_max=3)
        assert not est.all_zero

    def test_green_solution_reproduces_constant_load(self, binary, ternary):
        for alphabet, c in ((binary, Fraction(3)), (ternary, Fraction(-2, 5))):
            f = CylinderFunction.constant(alphabet, c)
            est = laplacian_estimate(negated_green(f), f, boundary_level=0, m_max=4)
            assert est.all_zero

    def test_green_solution_reproduces_random_cylinder_loads(self, binary):
        rng = random.Random(4)
        for _ in range(5):
            level = rng.randint(0, 2)
            f = random_cylinder(binary, level, rng)
            est = laplacian_estimate(negated_green(f), f, boundary_level=0, m_max=5)
            for m, r in est.residuals:
                if m >= level:
                    assert r == 0

    def test_series_load_residuals_obey_the_oscillation_bound(self, binary):
        f = CoordinateSeries(binary, Fraction(1, 2), symbol=0)
        est = laplacian_estimate(negated_green(f), f, boundary_level=0, m_max=7)
        assert est.bounds is not None
        for (m, r), (_, eps) in zip(est.residuals, est.bounds):
            assert r <= eps
        values = [r for _, r in est.residuals[2:]]
        for a, b in zip(values, values[1:]):
            assert b * 1 <= a * Fraction(1, 2)  # exact geometric decay at ratio 1/2


class TestWeakResidual:
    def test_green_solution_satisfies_the_weak_form(self, binary):
        rng = random.Random(6)
        for _ in range(4):
            f = random_cylinder(binary, rng.randint(0, 2), rng)
            u = negated_green(f)
            for m in (1, 2, 3, 4):
                assert weak_residual(u, f, boundary_level=0, m=m) == 0

    def test_harmonic_cylinder_with_adequate_boundary(self, binary):
        chi = chi_extension(binary.point("12"), 1)
        zero = CylinderFunction.constant(binary, 0)
        for m in (2, 3, 4):
            assert weak_residual(chi, zero, boundary_level=1, m=m) == 0

    def test_wrong_boundary_is_detected_with_unit_defect(self, binary):
        # the pairing at the indicator of [12] equals minus the operator value
        # there, which is 1 for this function
        chi = chi_extension(binary.point("12"), 1)
        zero = CylinderFunction.constant(binary, 0)
        assert weak_residual(chi, zero, boundary_level=0, m=1) == 1

    def test_level_must_exceed_boundary(self, binary):
        chi = chi_extension(binary.point("12"), 1)
        zero = CylinderFunction.constant(binary, 0)
        with pytest.raises(LevelTooSmallError):
            weak_residual(chi, zero, boundary_level=1, m=1)


class TestClassifyHarmonic:
    def test_coarse_cylinder_restrictions_pass(self, binary):
        h = CylinderFunction(binary, 0, [Fraction(2), Fraction(-1)])
        verdict = classify_harmonic(restrict(h, 3), boundary_level=0)
        assert verdict.compatible
        assert verdict.cylinder_values == {"1": 2, "2": -1}

    def test_indicator_fails_at_boundary_zero(self, binary):
        u = LevelFunction(binary, 1, [0, 1, 0, 0])
        verdict = classify_harmonic(u, boundary_level=0)
        assert not verdict.compatible
        assert "[1]" in verdict.violation

    def test_constants_always_pass(self, ternary):
        u = LevelFunction(ternary, 2, [Fraction(5, 2)] * 27)
        for boundary in (0, 1):
            assert classify_harmonic(u, boundary).compatible

    def test_level_order(self, binary):
        u = LevelFunction(binary, 1, [0, 1, 0, 0])
        with pytest.raises(LevelOrderError):
            classify_harmonic(u, boundary_level=1)

    def test_exhaustive_binary_level_two(self, binary):
        # all 256 zero/one vectors on the level-2 vertices; acceptance must
        # coincide with factoring through cylinders of length boundary+1
        for bits in itertools.product((0, 1), repeat=8):
            u = LevelFunction(binary, 2, list(bits))
            for boundary in (0, 1):
                depth = boundary + 1
                factors = all(
                    u.value_at(p) == u.value_at(q)
                    for p in vertex_set(binary, 2)
                    for q in vertex_set(binary, 2)
                    if p.prefix(depth) == q.prefix(depth)
                )
                assert classify_harmonic(u, boundary).compatible == factors


class TestNeumannDerivative:
    def test_indicator_extension_value(self, binary):
        chi = chi_extension(binary.point("12"), 1)
        report = neumann_derivative(chi, binary.point("1"), boundary_level=0)
        assert report.value == -1
        assert report.exact and report.tail_bound == 0

    def test_green_image_at_fixed_point(self, binary):
        gf = GreenApplication(CylinderFunction.constant(binary, 1))
        report = neumann_derivative(gf, binary.point("1"), boundary_level=0)
        assert report.value == Fraction(-1, 2)

    def test_green_image_off_the_fixed_points(self, binary):
        gf = GreenApplication(CylinderFunction.constant(binary, 1))
        report = neumann_derivative(gf, binary.point("12"), boundary_level=1)
        assert report.value == 0

    def test_negated_green_solution_flips_the_sign(self, binary):
        u = negated_green(CylinderFunction.constant(binary, 1))
        report = neumann_derivative(u, binary.point("1"), boundary_level=0)
        assert report.value == Fraction(1, 2)

    def test_point_outside_boundary(self, binary):
        chi = chi_extension(binary.point("12"), 1)
        with pytest.raises(BoundaryMismatchError):
            neumann_derivative(chi, binary.point("12"), boundary_level=0)

    def test_linearity_at_exact_inputs(self, binary):
        rng = random.Random(8)
        a, b = Fraction(3, 2), Fraction(-2, 7)
        u = random_cylinder(binary, 1, rng)
        v = random_cylinder(binary, 2, rng)
        combo = CylinderFunction(
            binary,
            2,
            [a * u.value_on_word(w) + b * v.value_on_word(w)
             for w in itertools.product(range(2), repeat=3)],
        )
        for p in vertex_set(binary, 1):
            du = neumann_derivative(u, p, 1).value
            dv = neumann_derivative(v, p, 1).value
            dc = neumann_derivative(combo, p, 1).value
            assert dc == a * du + b * dv

    def test_sampler_sequence_with_geometric_tail(self, binary):
        # hand limit: at the all-ones point the level-j neighbor difference is
        # -2^-j, so minus the operator value is 2 - 2^-m with limit 2
        u = CoordinateSeries(binary, Fraction(1, 2), symbol=0)
        report = neumann_derivative(u, binary.point("1"), boundary_level=0, m_max=6)
        assert not report.exact
        assert report.sequence is not None
        for m, value in report.sequence:
            assert value == 2 - Fraction(1, 2**m)
        assert report.value == 2 - Fraction(1, 64)
        assert report.tail_bound == Fraction(1, 64)
        assert abs(Fraction(2) - report.value) <= report.tail_bound

    def test_sampler_without_modulus_flags_unbounded_tail(self, binary):
        from shiftlap import PointwiseSampler

        u = PointwiseSampler(binary, lambda p: Fraction(p.min_level))
        report = neumann_derivative(u, binary.point("1"), boundary_level=0, m_max=3)
        assert report.tail_bound is None


class TestGaussGreen:
    def test_level_one_minimizer_pair(self, binary):
        u = chi_extension(binary.point("12"), 1)
        v = chi_extension(binary.point("21"), 1)
        report = gauss_green_check(u, v, boundary_level=1)
        assert report.lhs == 0 and report.rhs == 0 and report.residual == 0

    def test_constant_against_green_solution_reduces_to_conservation(self, binary):
        rng = random.Random(10)
        f = random_cylinder(binary, 1, rng)
        u = negated_green(f)
        v = CylinderFunction.constant(binary, 1)
        report = gauss_green_check(u, v, boundary_level=0)
        assert report.residual == 0
        assert report.conservation_residuals == (0, 0)

    def test_same_argument_twice(self, binary):
        u = negated_green(CylinderFunction.constant(binary, Fraction(2, 3)))
        report = gauss_green_check(u, u, boundary_level=0)
        assert report.residual == 0

    def test_boundary_must_cover_harmonic_parts(self, binary):
        u = chi_extension(binary.point("12"), 1)
        with pytest.raises(BoundaryMismatchError):
            gauss_green_check(u, u, boundary_level=0)

    @pytest.mark.parametrize("n", [2, 3])
    def test_random_pool_is_exact(self, n):
        alphabet = Alphabet(n)
        rng = random.Random(12)
        pool = []
        for level in (0, 1, 2):
            pool.append(random_cylinder(alphabet, level, rng))
        for _ in range(3):
            pool.append(negated_green(random_cylinder(alphabet, rng.randint(0, 2), rng)))
        for u in pool:
            for v in pool:
                levels = [
                    p.level for p in (getattr(u, "harmonic", u), getattr(v, "harmonic", v))
                ]
                boundary = max(2, *levels)
                report = gauss_green_check(u, v, boundary_level=boundary)
                assert report.residual == 0
                assert report.conservation_residuals == (0, 0)


class TestSolveDirichlet:
    def test_pure_harmonic_interpolation(self, binary):
        f = CylinderFunction.constant(binary, 0)
        u = solve_dirichlet(f, [Fraction(3), Fraction(5)])
        assert u.boundary_values() == [3, 5]
        assert u.evaluate(binary.point("12")) == 3
        est = laplacian_estimate(u, Constant(binary, 0), boundary_level=0, m_max=4)
        assert est.all_zero

    def test_zero_boundary_unit_load(self, binary):
        u = solve_dirichlet(CylinderFunction.constant(binary, 1), [0, 0])
        assert u.boundary_values() == [0, 0]
        assert u.evaluate(binary.point("12")) == Fraction(-1, 4)

    def test_superposition(self, binary):
        u = solve_dirichlet(CylinderFunction.constant(binary, 1), [2, 2])
        assert u.evaluate(binary.point("1")) == 2
        assert u.evaluate(binary.point("2")) == 2
        assert u.evaluate(binary.point("12")) == 2 - Fraction(1, 4)

    def test_arity(self, binary):
        with pytest.raises(ArityError):
            solve_dirichlet(CylinderFunction.constant(binary, 1), [1, 2, 3])

    def test_round_trip_certifies_the_load(self, ternary):
        rng = random.Random(14)
        f = random_cylinder(ternary, 1, rng)
        zeta = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
        u = solve_dirichlet(f, zeta)
        assert u.boundary_values() == zeta
        est = laplacian_estimate(u, f, boundary_level=0, m_max=4)
        for m, r in est.residuals:
            if m >= f.level:
                assert r == 0

    def test_uniqueness_up_to_boundary_vanishing_harmonics(self, binary):
        f = CylinderFunction.constant(binary, 1)
        zeta = [Fraction(1), Fraction(-1)]
        u1 = solve_dirichlet(f, zeta)
        # add a harmonic function vanishing on the constant sequences
        bump = CylinderFunction(binary, 1, [0, Fraction(7, 3), Fraction(-4), 0])
        shifted = CylinderFunction(
            binary,
            1,
            [u1.harmonic.value_on_word(w) + bump.value_on_word(w)
             for w in itertools.product(range(2), repeat=2)],
        )
        u2 = SolutionFunction(shifted, GreenApplication(f))
        assert u2.boundary_values() == zeta
        est = laplacian_estimate(u2, f, boundary_level=1, m_max=4)
        assert est.all_zero
        for p in vertex_set(binary, 3):
            assert u2.evaluate(p) - u1.evaluate(p) == bump.evaluate(p)


class TestSolveNeumann:
    def test_unit_load_compatible_data(self, binary):
        u = solve_neumann(CylinderFunction.constant(binary, 1), [Fraction(1, 2), Fraction(1, 2)])
        report = neumann_derivative(u, binary.point("1"), boundary_level=0)
        assert report.value == Fraction(1, 2)
        assert u.boundary_values() == [0, 0]

    def test_zero_load_zero_data(self, ternary):
        u = solve_neumann(CylinderFunction.constant(ternary, 0), [0, 0, 0])
        for p in vertex_set(ternary, 2):
            assert u.evaluate(p) == 0

    def test_incompatible_data_reports_exact_defect(self, binary):
        with pytest.raises(IncompatibleBoundaryError) as excinfo:
            solve_neumann(
                CylinderFunction.constant(binary, 1), [Fraction(1, 2), Fraction(1, 3)]
            )
        assert excinfo.value.defect == {"1": 0, "2": Fraction(-1, 6)}

    def test_arity(self, binary):
        with pytest.raises(ArityError):
            solve_neumann(CylinderFunction.constant(binary, 1), [Fraction(1, 2)])

    def test_round_trip_on_random_loads(self, binary):
        rng = random.Random(16)
        for _ in range(5):
            f = random_cylinder(binary, rng.randint(0, 2), rng)
            xi = [f.cylinder_integral((l,)) for l in range(2)]
            u = solve_neumann(f, xi)
            for l in range(2):
                report = neumann_derivative(u, binary.point(str(l + 1)), boundary_level=0)
                assert report.value == xi[l]
            est = laplacian_estimate(u, f, boundary_level=0, m_max=4)
            for m, r in est.residuals:
                if m >= f.level:
                    assert r == 0
