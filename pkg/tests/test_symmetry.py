from itertools import permutations

import numpy as np
import pytest

from psc_lab.gf2 import BitMatrix, gf2_rank, stack_rows
from psc_lab.monomials import MonomialCode, generator_matrix, reed_muller, rm_dim
from psc_lab.symmetry import (
    directional_derivative,
    evaluate_polynomial,
    is_invariant,
    is_weakly_decreasing,
    permute_variables,
    project_general,
    project_trivial,
    translate_set,
)

EXAMPLE1 = MonomialCode(
    4,
    frozenset(
        {0b0000, 0b0001, 0b0010, 0b0100, 0b1000,
         0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100}
    ),
)


def random_code(rng, m, k=None):
    n = 1 << m
    if k is None:
        k = int(rng.integers(1, n + 1))
    return MonomialCode(m, frozenset(int(g) for g in rng.choice(n, size=k, replace=False)))


def in_span(vec, mat: BitMatrix) -> bool:
    stacked = stack_rows(mat, BitMatrix.from_bits(vec[None, :]))
    return gf2_rank(stacked) == gf2_rank(mat)


class TestTranslate:
    def test_single_variable(self):
        code = MonomialCode(2, frozenset({0b01}))
        assert translate_set(code, 0b01) == frozenset({frozenset({0b01, 0})})

    def test_identity_translation(self):
        code = reed_muller(2, 3)
        assert translate_set(code, 0) == frozenset(frozenset({g}) for g in code.gens)

    def test_binomial_expansion(self):
        code = MonomialCode(2, frozenset({0b11}))
        assert translate_set(code, 0b11) == frozenset(
            {frozenset({0b11, 0b01, 0b10, 0b00})}
        )


class TestDirectionalDerivative:
    def test_affine_code_derivative_is_constant(self):
        code = MonomialCode(2, frozenset({0b00, 0b01, 0b10}))
        assert directional_derivative(code, 0b11) == frozenset({frozenset({0})})

    def test_rm1_all_directions(self):
        for m in range(2, 5):
            code = reed_muller(1, m)
            for b in range(1, 1 << m):
                assert directional_derivative(code, b) == frozenset({frozenset({0})})

    def test_partial_derivative(self):
        code = MonomialCode(2, frozenset({0b11}))
        assert directional_derivative(code, 0b01) == frozenset({frozenset({0b10})})

    def test_zero_direction_rejected(self):
        with pytest.raises(ValueError):
            directional_derivative(reed_muller(1, 2), 0)

    def test_derivative_constant_on_cosets(self):
        rng = np.random.default_rng(1)
        for _ in range(40):
            m = int(rng.integers(2, 5))
            code = random_code(rng, m)
            n = 1 << m
            idx = np.arange(n)
            for b in range(1, n):
                for poly in directional_derivative(code, b):
                    vec = evaluate_polynomial(poly, m)
                    assert np.array_equal(vec, vec[idx ^ b])


class TestWeaklyDecreasing:
    def test_reed_muller(self):
        for m in range(1, 6):
            for r in range(0, m + 1):
                assert is_weakly_decreasing(reed_muller(r, m))

    def test_missing_divisor(self):
        assert not is_weakly_decreasing(MonomialCode(2, frozenset({0b11, 0b00})))

    def test_example1_by_divisor_enumeration(self):
        # oracle: enumerate every divisor of every generator
        gens = EXAMPLE1.gens
        closed = all(
            all((g & sub) in gens for sub in range(1 << 4) if (g & sub) == sub)
            for g in gens
        )
        assert closed
        assert is_weakly_decreasing(EXAMPLE1)

    def test_equivalent_to_translation_invariance(self):
        # weakly decreasing <=> every translated generator stays in the span
        rng = np.random.default_rng(2)
        for _ in range(40):
            m = int(rng.integers(2, 5))
            code = random_code(rng, m)
            mat = generator_matrix(code)
            base_rank = gf2_rank(mat)
            stable = all(
                in_span(evaluate_polynomial(poly, m), mat)
                for b in range(1, 1 << m)
                for poly in translate_set(code, b)
            )
            assert stable == is_weakly_decreasing(code), code
            del base_rank

    def test_weakly_decreasing_codeword_sets_match(self):
        # the translated code equals the original as a set of codewords
        rng = np.random.default_rng(3)
        for _ in range(20):
            m = int(rng.integers(2, 5))
            code = random_code(rng, m)
            if not is_weakly_decreasing(code):
                continue
            mat = generator_matrix(code)
            for b in range(1, 1 << m):
                rows = np.stack(
                    [evaluate_polynomial(p, m) for p in translate_set(code, b)]
                )
                both = stack_rows(mat, BitMatrix.from_bits(rows))
                assert gf2_rank(both) == gf2_rank(mat) == gf2_rank(
                    BitMatrix.from_bits(rows)
                )


class TestProjectGeneral:
    def test_rm_projection_dimension(self):
        for m in range(2, 6):
            for r in range(1, m):
                code = reed_muller(r, m)
                for b in range(1, 1 << m):
                    _, kb = project_general(code, b)
                    assert kb == rm_dim(r - 1, m - 1)

    def test_example1_direction_one(self):
        _, kb = project_general(EXAMPLE1, 0b0001)
        assert kb == 4

    def test_constant_code(self):
        mat, kb = project_general(MonomialCode(3, frozenset({0})), 0b001)
        assert kb == 0 and mat.rows == 0

    def test_zero_direction_rejected(self):
        with pytest.raises(ValueError):
            project_general(EXAMPLE1, 0)

    def test_matches_trivial_projection_dimension(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            m = int(rng.integers(2, 5))
            code = random_code(rng, m)
            for q in range(m):
                _, kb = project_general(code, 1 << q)
                assert kb == project_trivial(code, q).k


class TestProjectTrivial:
    def test_example1(self):
        proj = project_trivial(EXAMPLE1, 0)
        assert proj.m == 3
        assert proj.gens == frozenset({0b001, 0b010, 0b100, 0b000})
        assert proj.k == 4

    def test_reed_muller(self):
        for m in range(2, 6):
            for r in range(1, m):
                for q in range(m):
                    assert project_trivial(reed_muller(r, m), q).gens == reed_muller(
                        r - 1, m - 1
                    ).gens

    def test_absent_variable(self):
        code = MonomialCode(3, frozenset({0b011}))
        assert project_trivial(code, 2).gens == frozenset()

    def test_direction_out_of_range(self):
        with pytest.raises(ValueError):
            project_trivial(EXAMPLE1, 4)

    def test_dimension_is_multiple_count_and_rank(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            m = int(rng.integers(2, 5))
            code = random_code(rng, m)
            for q in range(m):
                proj = project_trivial(code, q)
                assert proj.k == sum(1 for g in code.gens if g >> q & 1)
                if proj.gens:
                    assert gf2_rank(generator_matrix(proj)) == proj.k


class TestPermutations:
    def test_rm_invariant(self):
        code = reed_muller(2, 4)
        for perm in permutations(range(4)):
            assert is_invariant(code, perm)

    def test_not_invariant(self):
        code = MonomialCode(2, frozenset({0b01}))
        assert permute_variables(code, (1, 0)).gens == frozenset({0b10})
        assert not is_invariant(code, (1, 0))

    def test_example1_target_permutations(self):
        for p3 in permutations(range(3)):
            assert is_invariant(EXAMPLE1, list(p3) + [3])

    def test_non_bijection_rejected(self):
        with pytest.raises(ValueError):
            permute_variables(EXAMPLE1, (0, 0, 1, 2))

    def test_projection_commutes_with_permutation(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            m = int(rng.integers(2, 5))
            code = random_code(rng, m)
            perm = list(rng.permutation(m))
            for q in range(m):
                lhs = project_trivial(permute_variables(code, perm), perm[q])
                induced = [p - (1 if p > perm[q] else 0) for i, p in enumerate(perm) if i != q]
                rhs = permute_variables(project_trivial(code, q), induced)
                assert lhs.gens == rhs.gens
