"""Finite-function core: construction, fibers, degrees, composition."""

import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from noninv import (
    EmptySetError,
    FiniteFunction,
    InvalidExponentError,
    LengthMismatchError,
    OutOfRangeImageError,
    SizeMismatchError,
    compose,
    constant_function,
    identity_function,
    make_function,
)


def random_function(draw_sizes=(1, 6)):
    """Hypothesis strategy for an arbitrary small FiniteFunction."""
    lo, hi = draw_sizes
    return st.integers(lo, hi).flatmap(
        lambda m: st.integers(lo, hi).flatmap(
            lambda n: st.lists(
                st.integers(0, m - 1), min_size=n, max_size=n
            ).map(lambda imgs: make_function(n, m, imgs))
        )
    )


class TestConstruction:
    def test_valid(self):
        f = make_function(3, 3, [0, 0, 1])
        assert f.images == (0, 0, 1)
        assert (f.domain_size, f.codomain_size) == (3, 3)

    def test_non_square_valid(self):
        f = make_function(2, 3, [0, 2])
        assert f(0) == 0 and f(1) == 2

    def test_out_of_range_image(self):
        with pytest.raises(OutOfRangeImageError):
            make_function(2, 2, [0, 2])
        with pytest.raises(OutOfRangeImageError):
            make_function(2, 2, [0, -1])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            make_function(3, 2, [0, 1])

    def test_empty_sets_rejected(self):
        with pytest.raises(EmptySetError):
            make_function(0, 1, [])
        with pytest.raises(EmptySetError):
            make_function(1, 0, [0])

    def test_immutable(self):
        f = make_function(2, 2, [0, 1])
        with pytest.raises(AttributeError):
            f.images = (1, 1)


class TestFibers:
    def test_basic(self):
        assert make_function(3, 3, [0, 0, 1]).fiber_sizes() == (2, 1, 0)

    def test_identity(self):
        assert identity_function(3).fiber_sizes() == (1, 1, 1)

    def test_constant(self):
        assert constant_function(4, 2, 0).fiber_sizes() == (4, 0)

    @given(random_function())
    def test_fibers_sum_to_domain(self, f):
        assert sum(f.fiber_sizes()) == f.domain_size


class TestDegree:
    def test_bijection_is_one(self):
        for n in range(1, 6):
            assert identity_function(n).degree() == 1

    def test_constant_is_domain_size(self):
        assert constant_function(3, 3, 0).degree() == 3

    def test_example(self):
        # fibers (2, 1, 0): (4 + 1 + 0) / 3
        assert make_function(3, 3, [0, 0, 1]).degree() == Fraction(5, 3)

    @given(random_function())
    def test_both_definitions_agree(self, f):
        # sum over domain of |f^-1(f(x))| must equal sum over codomain of
        # |f^-1(y)|^2, point for point
        per_x = sum(f.images.count(f(x)) for x in range(f.domain_size))
        assert f.degree() == Fraction(per_x, f.domain_size)

    @given(random_function())
    def test_range_and_extremes(self, f):
        d = f.degree()
        assert 1 <= d <= f.domain_size
        injective = len(set(f.images)) == f.domain_size
        constant = len(set(f.images)) == 1
        assert (d == 1) == injective
        assert (d == f.domain_size) == constant


class TestDegreeQ:
    def test_q1_is_always_one(self):
        for images in product(range(3), repeat=3):
            assert make_function(3, 3, images).degree_q(1) == 1

    def test_q2_is_degree(self):
        for images in product(range(2), repeat=3):
            f = make_function(3, 2, images)
            assert f.degree_q(2) == f.degree()

    def test_constant_power(self):
        # single fiber of size n: n^q / n
        for n in (2, 3, 5):
            for q in (1, 2, 3, 4):
                f = constant_function(n, 2, 1)
                assert f.degree_q(q) == n ** (q - 1)

    def test_example_q3(self):
        assert make_function(3, 3, [0, 0, 1]).degree_q(3) == 3

    def test_invalid_exponent(self):
        f = identity_function(2)
        with pytest.raises(InvalidExponentError):
            f.degree_q(0)
        with pytest.raises(InvalidExponentError):
            f.degree_q(-1)


class TestMaxFiber:
    def test_examples(self):
        assert identity_function(4).max_fiber() == 1
        assert constant_function(5, 5, 2).max_fiber() == 5
        assert make_function(4, 2, [0, 0, 0, 1]).max_fiber() == 3

    @given(random_function())
    def test_pigeonhole_lower_bound(self, f):
        assert f.max_fiber() >= math.ceil(f.domain_size / f.codomain_size)


class TestCompose:
    def test_identity_neutral(self):
        f = make_function(3, 3, [0, 0, 1])
        assert compose(identity_function(3), f) == f
        assert compose(f, identity_function(3)) == f

    def test_constant_absorbs(self):
        f = make_function(3, 2, [0, 1, 1])
        c = constant_function(2, 4, 3)
        assert compose(c, f) == constant_function(3, 4, 3)

    def test_involution(self):
        swap = make_function(2, 2, [1, 0])
        assert compose(swap, swap) == identity_function(2)

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatchError):
            compose(make_function(3, 3, [0, 1, 2]), make_function(2, 2, [0, 1]))

    def test_associative_exhaustive_small(self):
        # all triples h: A->B, g: B->C, f: C->D with sizes <= 3
        sizes = (1, 2, 3)
        for a, b, c, d in product(sizes, repeat=4):
            hs = [make_function(a, b, i) for i in product(range(b), repeat=a)]
            gs = [make_function(b, c, i) for i in product(range(c), repeat=b)]
            fs = [make_function(c, d, i) for i in product(range(d), repeat=c)]
            for h in hs:
                for g in gs:
                    gh = compose(g, h)
                    for f in fs:
                        assert compose(f, gh) == compose(compose(f, g), h)
