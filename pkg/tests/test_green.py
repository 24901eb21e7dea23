import itertools
import random
from fractions import Fraction

import pytest

from shiftlap import (
    Alphabet,
    CylinderFunction,
    DomainError,
    SamePointError,
    VertexWord,
    apply_difference_operator,
    apply_green,
    chi_extension,
    green_h_values,
    green_kernel,
    green_kernel_double_sum,
    green_matrix_entry,
    green_pair_integral,
    new_vertex_words,
    restrict,
    vertex_set,
)


def random_cylinder(alphabet, level, rng, span=9):
    values = [
        Fraction(rng.randint(-span, span), rng.randint(1, 4))
        for _ in range(alphabet.size ** (level + 1))
    ]
    return CylinderFunction(alphabet, level, values)


class TestMatrixEntry:
    def test_diagonal(self, ternary):
        p = ternary.point("12")
        assert green_matrix_entry(1, p, p) == Fraction(2, 3)

    def test_related_pair(self, ternary):
        assert green_matrix_entry(1, ternary.point("12"), ternary.point("13")) == Fraction(1, 3)

    def test_unrelated_pair(self, binary):
        assert green_matrix_entry(1, binary.point("12"), binary.point("21")) == 0

    def test_rejects_points_from_other_levels(self, binary):
        with pytest.raises(DomainError):
            green_matrix_entry(2, binary.point("12"), binary.point("121"))

    def test_symmetric(self, ternary):
        points = [VertexWord(ternary, w) for w in new_vertex_words(ternary, 2)]
        for p in points:
            for q in points:
                assert green_matrix_entry(2, p, q) == green_matrix_entry(2, q, p)


class TestKernel:
    def test_zero_when_first_symbols_differ(self, binary):
        assert green_kernel(binary.point("12"), binary.point("21")) == 0
        assert green_kernel(binary.point("1"), binary.point("2")) == 0

    def test_single_level_term(self, binary):
        # only the level-1 term survives and both points share second symbol 2
        assert green_kernel(binary.point("12"), binary.point("121")) == 1

    def test_vanishes_against_constant_argument(self, binary):
        x = binary.point("1")
        for y in vertex_set(binary, 3):
            if y == x:
                continue
            assert green_kernel(x, y) == 0

    def test_diagonal_is_rejected(self, binary):
        with pytest.raises(SamePointError):
            green_kernel(binary.point("12"), binary.point("122"))

    def test_symmetry(self, ternary):
        pts = vertex_set(ternary, 2)
        rng = random.Random(3)
        for _ in range(200):
            x, y = rng.choice(pts), rng.choice(pts)
            if x == y:
                continue
            assert green_kernel(x, y) == green_kernel(y, x)

    @pytest.mark.parametrize("n,level", [(2, 3), (3, 2)])
    def test_reduced_form_equals_literal_double_sum(self, n, level):
        alphabet = Alphabet(n)
        pts = vertex_set(alphabet, level)
        for x in pts:
            for y in pts:
                if x == y:
                    continue
                assert green_kernel(x, y) == green_kernel_double_sum(x, y)


class TestApplyGreen:
    def test_constant_load_vanishes_at_fixed_points(self, binary):
        gf = apply_green(CylinderFunction.constant(binary, 1))
        assert gf.evaluate(binary.point("1")) == 0
        assert gf.evaluate(binary.point("2")) == 0

    def test_constant_load_hand_quadrature(self, binary):
        # kernel of x = (1 2.) is 1 on [12] and 0 elsewhere; measure 1/4
        gf = apply_green(CylinderFunction.constant(binary, 1))
        assert gf.evaluate(binary.point("12")) == Fraction(1, 4)

    def test_disjoint_supports(self, binary):
        f = chi_extension(binary.point("2"), 0)
        gf = apply_green(f)
        assert gf.evaluate(binary.point("12")) == 0

    def test_refinement_stability(self, binary, ternary):
        rng = random.Random(7)
        for alphabet in (binary, ternary):
            f = random_cylinder(alphabet, 1, rng)
            gf = apply_green(f)
            for p in vertex_set(alphabet, 2):
                base = gf.evaluate(p)
                assert gf.evaluate(p, resolution=p.min_level + 1) == base
                assert gf.evaluate(p, resolution=max(p.min_level, f.level) + 2) == base

    def test_boundary_zero_for_random_loads(self, ternary):
        rng = random.Random(9)
        for _ in range(10):
            f = random_cylinder(ternary, rng.randint(0, 2), rng)
            gf = apply_green(f)
            for l in range(3):
                assert gf.evaluate(VertexWord(ternary, (l,))) == 0


class TestOperatorIdentity:
    def test_constant_load_values(self, binary):
        f = CylinderFunction.constant(binary, 1)
        hv = green_h_values(f, 1)
        assert hv.value_at(binary.point("12")) == Fraction(-1, 4)
        assert hv.value_at(binary.point("1")) == Fraction(1, 4)

    def test_zero_load(self, binary):
        f = CylinderFunction.constant(binary, 0)
        assert all(v == 0 for v in green_h_values(f, 3).values)

    @pytest.mark.parametrize("n,n_max", [(2, 4), (3, 3)])
    def test_identity_against_direct_application(self, n, n_max):
        # the level operator applied to the pointwise-evaluated Green image
        # must reproduce the cylinder-integral formula exactly
        alphabet = Alphabet(n)
        rng = random.Random(21)
        for _ in range(4):
            f = random_cylinder(alphabet, rng.randint(0, 2), rng)
            gf = apply_green(f)
            for m in range(n_max + 1):
                direct = apply_difference_operator(m, restrict(gf, m))
                assert direct.values == green_h_values(f, m).values


class TestPairIntegral:
    def test_constant_pair_hand_value(self, binary, ternary):
        # integral of the Green image of 1: per level only the matching
        # cylinder pattern survives, summing to 1/N^2
        for alphabet in (binary, ternary):
            one = CylinderFunction.constant(alphabet, 1)
            assert green_pair_integral(one, one) == Fraction(1, alphabet.size**2)

    def test_first_cylinder_against_constant(self, binary):
        # hand value: integral of the Green image of 1 over [1] is 1/8
        a = chi_extension(binary.point("1"), 0)
        one = CylinderFunction.constant(binary, 1)
        assert green_pair_integral(a, one) == Fraction(1, 8)

    def test_symmetry(self, binary, ternary):
        rng = random.Random(13)
        for alphabet in (binary, ternary):
            for _ in range(6):
                a = random_cylinder(alphabet, rng.randint(0, 2), rng)
                b = random_cylinder(alphabet, rng.randint(0, 2), rng)
                assert green_pair_integral(a, b) == green_pair_integral(b, a)

    @pytest.mark.parametrize("n", [2, 3])
    def test_level_split_oracle(self, n):
        # independent oracle: sum the level terms literally with the matrix
        # entries and cylinder integrals up to a cut M, add the closed
        # geometric remainder; every cut beyond the resolution must agree
        alphabet = Alphabet(n)
        rng = random.Random(31)
        a = random_cylinder(alphabet, 1, rng)
        b = random_cylinder(alphabet, rng.randint(0, 2), rng)
        top = max(a.level, b.level)
        got = green_pair_integral(a, b)
        for cut in range(top, top + 3):
            partial = Fraction(0)
            for m in range(1, cut + 1):
                for r_word in new_vertex_words(alphabet, m):
                    r = VertexWord(alphabet, r_word)
                    ia = a.cylinder_integral(r_word)
                    for s_word in new_vertex_words(alphabet, m):
                        s = VertexWord(alphabet, s_word)
                        entry = green_matrix_entry(m, r, s)
                        if entry:
                            partial += entry * ia * b.cylinder_integral(s_word)
            spots = Fraction(0)
            for w in itertools.product(range(n), repeat=top + 1):
                spots += a.value_on_word(w) * b.value_on_word(w)
            remainder = spots * Fraction(1, n ** (top + cut + 3))
            assert partial + remainder == got
