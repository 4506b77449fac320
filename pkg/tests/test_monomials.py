import numpy as np
import pytest

from psc_lab.gf2 import gf2_rank
from psc_lab.monomials import (
    MonomialCode,
    code_params,
    degree,
    evaluate,
    generator_matrix,
    kronecker_power_matrix,
    min_distance_bruteforce,
    mon_of_row,
    parse_code,
    reed_muller,
    rm_dim,
    row_of_mon,
    serialize_code,
)

EXAMPLE1_GENS = frozenset(
    {0b0000, 0b0001, 0b0010, 0b0100, 0b1000,
     0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100}
)
EXAMPLE1 = MonomialCode(4, EXAMPLE1_GENS)


class TestMonOfRow:
    def test_all_zero_bits(self):
        assert mon_of_row(0, 3) == 0b111

    def test_no_zero_bits(self):
        assert mon_of_row(7, 3) == 0

    def test_single_zero_bit(self):
        assert mon_of_row(5, 3) == 0b010

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            mon_of_row(8, 3)
        with pytest.raises(ValueError):
            mon_of_row(-1, 3)

    @pytest.mark.parametrize("m", range(1, 7))
    def test_inverse_maps(self, m):
        for i in range(1 << m):
            assert row_of_mon(mon_of_row(i, m), m) == i
        for g in range(1 << m):
            assert mon_of_row(row_of_mon(g, m), m) == g


class TestEvaluate:
    def test_constant(self):
        assert evaluate(0, 2).tolist() == [1, 1, 1, 1]

    def test_single_variable(self):
        assert evaluate(0b01, 2).tolist() == [1, 0, 1, 0]

    def test_product(self):
        assert evaluate(0b11, 2).tolist() == [1, 0, 0, 0]

    @pytest.mark.parametrize("m", range(1, 7))
    def test_rows_of_kronecker_power(self, m):
        a_m = kronecker_power_matrix(m)
        for i in range(1 << m):
            assert np.array_equal(evaluate(mon_of_row(i, m), m), a_m[i])

    @pytest.mark.parametrize("m", range(1, 11))
    def test_weight(self, m):
        rng = np.random.default_rng(m)
        masks = range(1 << m) if m <= 6 else rng.integers(0, 1 << m, size=64)
        for g in masks:
            g = int(g)
            assert evaluate(g, m).sum() == 1 << (m - degree(g))


class TestReedMuller:
    def test_rm_1_3(self):
        code = reed_muller(1, 3)
        assert code.k == 4 and code.dmin == 4

    def test_rm_4_9(self):
        code = reed_muller(4, 9)
        assert code.k == 256 and code.dmin == 32

    def test_full_space(self):
        for m in range(1, 6):
            code = reed_muller(m, m)
            assert code.k == 1 << m and code.dmin == 1

    def test_order_out_of_range(self):
        with pytest.raises(ValueError):
            reed_muller(4, 3)

    @pytest.mark.parametrize("m", range(1, 7))
    def test_frozen_set_view(self, m):
        # rows whose index weight is at least m - r span the same code
        for r in range(0, m + 1):
            via_rows = {
                mon_of_row(i, m)
                for i in range(1 << m)
                if bin(i).count("1") >= m - r
            }
            assert reed_muller(r, m).gens == via_rows

    def test_dimension_formula(self):
        for m in range(1, 11):
            for r in range(0, m + 1):
                assert reed_muller(r, m).k == rm_dim(r, m)


class TestCodeParams:
    def test_example1(self):
        assert code_params(EXAMPLE1) == (16, 11, 4)

    def test_rm_1_3(self):
        assert code_params(reed_muller(1, 3)) == (8, 4, 4)

    def test_repetition(self):
        assert code_params(MonomialCode(5, frozenset({0}))) == (32, 1, 32)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            code_params(MonomialCode(3, frozenset()))

    def test_formula_matches_bruteforce(self):
        rng = np.random.default_rng(42)
        for m in range(2, 5):
            for _ in range(10):
                k = int(rng.integers(1, min(10, 1 << m) + 1))
                gens = frozenset(
                    int(g) for g in rng.choice(1 << m, size=k, replace=False)
                )
                code = MonomialCode(m, gens)
                assert code.dmin == min_distance_bruteforce(code)


class TestGeneratorMatrix:
    def test_rm_0_2_single_row(self):
        mat = generator_matrix(reed_muller(0, 2))
        assert (mat.rows, mat.cols) == (1, 4)
        assert mat.to_bits().tolist() == [[1, 1, 1, 1]]

    def test_full_set_is_kronecker_power(self):
        mat = generator_matrix(reed_muller(2, 2))
        assert np.array_equal(mat.to_bits(), kronecker_power_matrix(2))

    def test_example1_rank(self):
        mat = generator_matrix(EXAMPLE1)
        assert (mat.rows, mat.cols) == (11, 16)
        assert gf2_rank(mat) == 11

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            generator_matrix(MonomialCode(2, frozenset()))


class TestCodeFileFormat:
    def test_parse_spec_example(self):
        code = parse_code("m=2\n1\n0\n0 1\n")
        assert code.m == 2
        assert code.gens == frozenset({0b00, 0b01, 0b11})

    def test_round_trip_is_canonical(self):
        text = "m=3\n# a comment\n0 2\n1\nx1\n"
        code = parse_code(text)
        canon = serialize_code(code)
        assert parse_code(canon).gens == code.gens
        assert serialize_code(parse_code(canon)) == canon

    def test_round_trip_random(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            m = int(rng.integers(1, 7))
            k = int(rng.integers(1, (1 << m) + 1))
            gens = frozenset(int(g) for g in rng.choice(1 << m, size=k, replace=False))
            code = MonomialCode(m, gens)
            assert parse_code(serialize_code(code)).gens == gens

    def test_index_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            parse_code("m=2\n3\n")

    def test_duplicate_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            parse_code("m=3\n0 1\nx0 x1\n")

    def test_malformed_line(self):
        with pytest.raises(ValueError, match="malformed"):
            parse_code("m=3\n0 q\n")

    def test_unsorted_indices(self):
        with pytest.raises(ValueError, match="ascending"):
            parse_code("m=3\n2 0\n")

    def test_missing_header(self):
        with pytest.raises(ValueError, match="header"):
            parse_code("0 1\n")

    def test_bare_one_is_constant(self):
        # a bare "1" denotes the constant; x_1 needs the prefixed form
        assert parse_code("m=2\n1\n").gens == frozenset({0})
        assert parse_code("m=2\nx1\n").gens == frozenset({0b10})
