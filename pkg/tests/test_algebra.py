import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutcount.algebra import (
    SubsetTable,
    TupleTable,
    covering_product,
    generalized_convolution,
    packing_product,
    subset_convolution,
    zp_product,
)
from naive_algebra import (
    naive_covering,
    naive_generalized,
    naive_packing,
    naive_subset_convolution,
    naive_zp,
)


def gf2(vals):
    return [v & 1 for v in vals]


class TestSubsetConvolution:
    def test_identity_element(self):
        rng = random.Random(1)
        for b in range(1, 5):
            size = 1 << b
            delta = SubsetTable(b, [1] + [0] * (size - 1))
            g = SubsetTable(b, [rng.randint(0, 1) for _ in range(size)])
            assert subset_convolution(delta, g).values == g.values

    def test_all_ones_b2(self):
        # (f*g)({0,1}) counts the 4 ordered disjoint covers -> 0 mod 2;
        # (f*g)(empty) = 1.
        f = SubsetTable(2, [1, 1, 1, 1])
        out = subset_convolution(f, f)
        assert out.values[0] == 1
        assert out.values[3] == 0

    def test_random_vs_naive(self):
        rng = random.Random(7)
        for _ in range(100):
            b = rng.randint(1, 8)
            size = 1 << b
            fv = [rng.randint(0, 1) for _ in range(size)]
            gv = [rng.randint(0, 1) for _ in range(size)]
            out = subset_convolution(SubsetTable(b, fv), SubsetTable(b, gv))
            assert list(out.values) == gf2(naive_subset_convolution(fv, gv, b))

    def test_int_ring(self):
        rng = random.Random(9)
        b = 5
        size = 1 << b
        fv = [rng.randint(0, 9) for _ in range(size)]
        gv = [rng.randint(0, 9) for _ in range(size)]
        out = subset_convolution(SubsetTable(b, fv, "int"), SubsetTable(b, gv, "int"))
        assert list(out.values) == naive_subset_convolution(fv, gv, b)

    def test_mismatched_b(self):
        with pytest.raises(ValueError):
            subset_convolution(SubsetTable(2, [0] * 4), SubsetTable(3, [0] * 8))

    def test_b_over_limit(self):
        with pytest.raises(ValueError):
            SubsetTable(25, [0] * (1 << 25))


class TestCoveringPacking:
    def test_indicator_covering(self):
        b = 3
        size = 1 << b
        for a_set, b_set in [(0b101, 0b011), (0b001, 0b110)]:
            f = SubsetTable(b, [1 if s == a_set else 0 for s in range(size)])
            g = SubsetTable(b, [1 if s == b_set else 0 for s in range(size)])
            out = covering_product(f, g)
            assert list(out.values) == [1 if s == a_set | b_set else 0 for s in range(size)]

    def test_zero_absorbs(self):
        f = SubsetTable(3, [0] * 8)
        g = SubsetTable(3, [1] * 8)
        assert all(v == 0 for v in covering_product(f, g).values)
        assert all(v == 0 for v in packing_product(f, g).values)

    def test_random_vs_naive(self):
        rng = random.Random(13)
        for _ in range(100):
            b = rng.randint(1, 8)
            size = 1 << b
            fv = [rng.randint(0, 1) for _ in range(size)]
            gv = [rng.randint(0, 1) for _ in range(size)]
            cov = covering_product(SubsetTable(b, fv), SubsetTable(b, gv))
            pac = packing_product(SubsetTable(b, fv), SubsetTable(b, gv))
            assert list(cov.values) == gf2(naive_covering(fv, gv, b))
            assert list(pac.values) == gf2(naive_packing(fv, gv, b))


class TestGeneralizedConvolution:
    def test_identity(self):
        rng = random.Random(3)
        for p in (2, 3, 4, 5, 6):
            b = 2
            size = p**b
            delta = TupleTable(b, p, [1] + [0] * (size - 1))
            g = TupleTable(b, p, [rng.randint(0, 1) for _ in range(size)])
            assert generalized_convolution(delta, g).values == g.values

    def test_p3_b1_hand(self):
        f = TupleTable(1, 3, [1, 1, 0])
        out = generalized_convolution(f, f)
        # digitwise sums without wrap: [1*1, 2 copies of 1, 1] -> [1, 0, 1]
        assert list(out.values) == [1, 0, 1]

    def test_random_vs_naive(self):
        rng = random.Random(17)
        for _ in range(100):
            p = rng.choice([2, 3, 4, 5, 6])
            b = rng.randint(1, 4 if p >= 5 else 5)
            size = p**b
            fv = [rng.randint(0, 1) for _ in range(size)]
            gv = [rng.randint(0, 1) for _ in range(size)]
            out = generalized_convolution(TupleTable(b, p, fv), TupleTable(b, p, gv))
            assert list(out.values) == gf2(naive_generalized(fv, gv, b, p))

    def test_radix_mismatch(self):
        with pytest.raises(ValueError):
            generalized_convolution(TupleTable(1, 3, [0] * 3), TupleTable(1, 4, [0] * 4))


class TestZpProduct:
    def test_p2_identity(self):
        rng = random.Random(5)
        b = 3
        size = 1 << b
        delta = TupleTable(b, 2, [1] + [0] * (size - 1))
        g = TupleTable(b, 2, [rng.randint(0, 1) for _ in range(size)])
        assert zp_product(delta, g, 2).values == g.values

    def test_p2_b1_all_ones(self):
        f = TupleTable(1, 2, [1, 1])
        out = zp_product(f, f, 2)
        assert list(out.values) == [0, 0]  # each output is 2 mod 2

    def test_random_vs_naive(self):
        rng = random.Random(23)
        for _ in range(60):
            p = rng.choice([2, 4])
            b = rng.randint(1, 3)
            size = p**b
            fv = [rng.randint(0, 1) for _ in range(size)]
            gv = [rng.randint(0, 1) for _ in range(size)]
            out = zp_product(TupleTable(b, p, fv), TupleTable(b, p, gv), p)
            assert list(out.values) == gf2(naive_zp(fv, gv, b, p))

    def test_int_ring(self):
        rng = random.Random(29)
        fv = [rng.randint(0, 5) for _ in range(16)]
        gv = [rng.randint(0, 5) for _ in range(16)]
        out = zp_product(TupleTable(2, 4, fv, "int"), TupleTable(2, 4, gv, "int"), 4)
        assert list(out.values) == naive_zp(fv, gv, 2, 4)

    def test_bad_p(self):
        with pytest.raises(ValueError):
            zp_product(TupleTable(1, 3, [0] * 3), TupleTable(1, 3, [0] * 3), 3)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 5),
    st.data(),
)
def test_products_commute_and_distribute(b, data):
    size = 1 << b
    bits = st.lists(st.integers(0, 1), min_size=size, max_size=size)
    fv, gv, hv = data.draw(bits), data.draw(bits), data.draw(bits)
    f, g, h = (SubsetTable(b, v) for v in (fv, gv, hv))
    for op in (subset_convolution, covering_product, packing_product):
        assert op(f, g).values == op(g, f).values
        gh = SubsetTable(b, [(a + c) & 1 for a, c in zip(gv, hv)])
        left = op(f, gh).values
        right = tuple((a + c) & 1 for a, c in zip(op(f, g).values, op(f, h).values))
        assert left == right


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 4]), st.integers(1, 2), st.data())
def test_zp_commutes(p, b, data):
    size = p**b
    bits = st.lists(st.integers(0, 1), min_size=size, max_size=size)
    fv, gv = data.draw(bits), data.draw(bits)
    f, g = TupleTable(b, p, fv), TupleTable(b, p, gv)
    assert zp_product(f, g, p).values == zp_product(g, f, p).values
