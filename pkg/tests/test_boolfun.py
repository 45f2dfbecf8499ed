import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homobent.boolfun import (
    Anf,
    ParseError,
    TruthTable,
    WalshSpectrum,
    algebraic_degree,
    anf_of,
    covering_bound,
    fwht,
    from_hex,
    is_bent,
    is_homogeneous,
    max_abs_count,
    mobius,
    mobius_transform,
    naive_walsh,
    naive_walsh_transform,
    nonlinearity,
    parse_anf,
    to_anf_string,
    to_hex,
    truth_table_of,
    walsh_transform,
)

from conftest import brute_anf, brute_nonlinearity, inner_product_form, table_from


def tables(min_n=2, max_n=8):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n).map(TruthTable.from_bits)
    )


BENT4 = inner_product_form(4)


class TestTruthTable:
    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            TruthTable(3, [0] * 7)

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            TruthTable(2, [0, 1, 2, 0])

    def test_bits_are_read_only(self):
        tt = TruthTable(2, [0, 0, 0, 1])
        with pytest.raises(ValueError):
            tt.bits[0] = 1

    def test_index_convention_x1_is_msb(self):
        assert table_from(lambda x: x[0], 2).bits.tolist() == [0, 0, 1, 1]
        assert table_from(lambda x: x[1], 2).bits.tolist() == [0, 1, 0, 1]

    def test_packed(self):
        assert TruthTable(2, [1, 0, 0, 1]).packed() == 0b1001


class TestWalsh:
    @pytest.mark.parametrize(
        "bits, expected",
        [
            ([0, 0, 0, 0], [4, 0, 0, 0]),
            ([0, 0, 1, 1], [0, 0, 4, 0]),
            ([0, 1, 1, 0], [0, 0, 0, 4]),
        ],
    )
    def test_small_examples(self, bits, expected):
        tt = TruthTable(2, bits)
        assert walsh_transform(tt).values.tolist() == expected
        assert naive_walsh_transform(tt).values.tolist() == expected

    def test_inner_product_form_is_flat(self):
        naive = naive_walsh_transform(BENT4)
        assert np.all(np.abs(naive.values) == 4)
        assert walsh_transform(BENT4) == naive

    @pytest.mark.parametrize("n", [2, 3])
    def test_exhaustive_against_naive(self, n):
        size = 1 << n
        everything = (np.arange(1 << size)[:, None] >> np.arange(size)) & 1
        assert np.array_equal(fwht(everything), naive_walsh(everything))

    def test_random_n3_against_naive(self, rng):
        for bits in rng.integers(0, 2, size=(20, 8)):
            tt = TruthTable(3, bits)
            assert walsh_transform(tt) == naive_walsh_transform(tt)

    def test_random_up_to_n8_against_naive(self, rng):
        for n in range(4, 9):
            batch = rng.integers(0, 2, size=(25, 1 << n))
            assert np.array_equal(fwht(batch), naive_walsh(batch))

    def test_naive_limit(self):
        with pytest.raises(ValueError):
            naive_walsh(np.zeros(1 << 13, dtype=np.uint8))

    @settings(max_examples=60, deadline=None)
    @given(tables())
    def test_parseval_and_parity(self, tt):
        values = walsh_transform(tt).values
        assert int(np.sum(values**2)) == 1 << (2 * tt.n)
        assert np.all(values % 2 == 0)
        assert np.all(np.abs(values) <= 1 << tt.n)

    def test_batch_shape_preserved(self):
        batch = np.zeros((3, 2, 16), dtype=np.uint8)
        assert fwht(batch).shape == (3, 2, 16)


class TestMobius:
    def test_zero(self):
        assert mobius_transform([0, 0, 0, 0]).tolist() == [0, 0, 0, 0]

    def test_and_is_single_monomial(self):
        assert mobius_transform([0, 0, 0, 1]).tolist() == [0, 0, 0, 1]

    def test_involution_n6(self, rng):
        for v in rng.integers(0, 2, size=(50, 64)):
            assert np.array_equal(mobius_transform(mobius_transform(v)), v)

    def test_rejects_bad_length(self):
        with pytest.raises(ValueError):
            mobius_transform([0, 1, 1])

    def test_against_covering_sum(self, rng):
        for n in (2, 3, 5):
            for bits in rng.integers(0, 2, size=(10, 1 << n)):
                assert mobius(bits).tolist() == brute_anf(bits.tolist())

    def test_input_not_mutated(self):
        v = np.array([1, 1, 0, 1], dtype=np.uint8)
        mobius(v)
        assert v.tolist() == [1, 1, 0, 1]

    def test_round_trip_types(self):
        assert truth_table_of(anf_of(BENT4)) == BENT4


class TestNonlinearity:
    @pytest.mark.parametrize("n, bound", [(2, 1), (4, 6), (6, 28), (8, 120), (14, 8128)])
    def test_covering_bound(self, n, bound):
        assert covering_bound(n) == bound

    def test_covering_bound_odd(self):
        with pytest.raises(ValueError):
            covering_bound(7)

    def test_linear_functions_have_zero(self):
        for a in range(16):
            tt = table_from(lambda x: sum(x[i] * (a >> (3 - i) & 1) for i in range(4)) % 2, 4)
            assert nonlinearity(walsh_transform(tt)) == 0
            assert not is_bent(tt)

    @pytest.mark.parametrize("n, expected", [(4, 6), (6, 28), (8, 120)])
    def test_inner_product_form(self, n, expected):
        tt = inner_product_form(n)
        assert nonlinearity(walsh_transform(tt)) == expected
        assert is_bent(tt)

    def test_against_affine_distance(self, rng):
        for n in (2, 3, 4, 5):
            for bits in rng.integers(0, 2, size=(8, 1 << n)):
                tt = TruthTable(n, bits)
                assert nonlinearity(walsh_transform(tt)) == brute_nonlinearity(bits.tolist())

    def test_max_abs_count(self):
        assert max_abs_count(walsh_transform(TruthTable(2, [0, 0, 0, 0]))) == (4, 1)
        assert max_abs_count(walsh_transform(BENT4)) == (4, 16)

    def test_max_abs_count_against_naive(self):
        tt = TruthTable(3, [0, 0, 0, 1, 0, 0, 0, 0])
        values = [abs(int(v)) for v in naive_walsh(tt.bits)]
        top = max(values)
        assert max_abs_count(walsh_transform(tt)) == (top, values.count(top))
        # W(a) = 8*[a == 0] -+ 2: a lone spike of 6 over a floor of 2
        assert (top, values.count(top)) == (6, 1)

    def test_odd_n_never_bent(self, rng):
        assert not is_bent(TruthTable(5, rng.integers(0, 2, 32)))

    @settings(max_examples=60, deadline=None)
    @given(tables())
    def test_nonlinearity_consistent_with_max_abs(self, tt):
        ws = walsh_transform(tt)
        top, count = max_abs_count(ws)
        assert nonlinearity(ws) == (1 << (tt.n - 1)) - top // 2
        assert count >= 1
        if tt.n % 2 == 0:
            assert nonlinearity(ws) <= covering_bound(tt.n)


class TestDegreeAndHomogeneity:
    def test_degree_examples(self):
        assert algebraic_degree(parse_anf("x1*x2 + x3")) == 2
        assert algebraic_degree(Anf(3, [0] * 8)) is None
        assert algebraic_degree(Anf(3, [0] * 7 + [1])) == 3
        assert algebraic_degree(parse_anf("1", n=3)) == 0

    def test_homogeneity_examples(self):
        assert is_homogeneous(parse_anf("x1*x2 + x3*x4"), 2)
        assert not is_homogeneous(parse_anf("x1*x2 + x3", n=4), 2)
        for d in range(1, 5):
            assert not is_homogeneous(Anf(4, [0] * 16), d)

    def test_bent_degree_bound_n4(self):
        # every bent function on 4 variables has degree <= 2
        size = 16
        everything = (np.arange(1 << size)[:, None] >> np.arange(size)) & 1
        absw = np.abs(fwht(everything))
        bent = everything[np.all(absw == 4, axis=1)]
        assert len(bent) == 896
        for bits in bent:
            assert algebraic_degree(anf_of(TruthTable(4, bits))) <= 2


class TestTextFormats:
    def test_hex_examples(self):
        assert to_hex(TruthTable(2, [0, 0, 0, 1])) == "1"
        assert to_hex(TruthTable(2, [1, 0, 0, 0])) == "8"
        assert to_hex(BENT4) == "111e"

    @settings(max_examples=40, deadline=None)
    @given(tables())
    def test_hex_round_trip(self, tt):
        assert from_hex(to_hex(tt)) == tt

    def test_hex_errors(self):
        with pytest.raises(ParseError) as err:
            from_hex("xyz")
        assert err.value.pos == 0
        with pytest.raises(ParseError) as err:
            from_hex("0g")
        assert err.value.pos == 1
        with pytest.raises(ValueError):
            from_hex("000")

    def test_anf_round_trip(self):
        text = "1 + x1 + x2*x3 + x1*x3*x4"
        anf = parse_anf(text)
        assert anf.n == 4
        assert to_anf_string(anf) == text
        assert to_anf_string(Anf(3, [0] * 8)) == "0"

    def test_anf_matches_truth_table(self):
        assert truth_table_of(parse_anf("x1*x2 + x3*x4")) == BENT4

    def test_anf_xor_cancellation(self):
        assert to_anf_string(parse_anf("x1 + x2 + x1", n=2)) == "x2"

    def test_anf_errors(self):
        with pytest.raises(ParseError) as err:
            parse_anf("x1*x2 + y3")
        assert err.value.pos == 8
        with pytest.raises(ParseError):
            parse_anf("x1 + ")
        with pytest.raises(ValueError):
            parse_anf("x5", n=4)


def test_spectrum_immutable():
    ws = WalshSpectrum(2, [4, 0, 0, 0])
    with pytest.raises(ValueError):
        ws.values[0] = 0
