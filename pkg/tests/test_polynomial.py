from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fences.lattice import fence_rank_sequence
from fences.polynomial import (
    ONE,
    Q,
    RankPolynomial,
    check_mi_addition,
    is_unimodal,
    maxima_indices,
    predicted_maxima_interval,
    q_integer,
    rank_poly_explicit,
    rank_poly_recursive,
    recursion_summands,
    shape_classify,
    unimodality_dips,
)

coeff_lists = st.lists(st.integers(-5, 5), max_size=8)
small_alpha = st.lists(st.integers(1, 4), min_size=1, max_size=5).map(tuple)


# -- arithmetic ---------------------------------------------------------------

def test_q_integer():
    assert q_integer(3) == [1, 1, 1]
    assert q_integer(1) == ONE
    assert q_integer(0) == RankPolynomial()
    assert q_integer(0).degree == -1


def test_monomial_and_str():
    assert Q == RankPolynomial.monomial(1)
    assert str(RankPolynomial([1, 2, 2, 2, 1])) == "[1,2,2,2,1]"
    assert RankPolynomial.parse("[1,2,0,0]") == [1, 2]


def test_evaluate_and_shift():
    f = RankPolynomial([1, 2, 3])
    assert f(2) == 1 + 4 + 12
    assert f.shift(2) == [0, 0, 1, 2, 3]
    assert f.reversed(4) == [0, 0, 3, 2, 1]


@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_laws(a, b, c):
    f, g, h = RankPolynomial(a), RankPolynomial(b), RankPolynomial(c)
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert (f * g)(3) == f(3) * g(3)


def test_immutable():
    f = RankPolynomial([1])
    with pytest.raises(AttributeError):
        f.coeffs = (2,)


# -- rank polynomials ---------------------------------------------------------

def test_recursive_examples():
    assert rank_poly_recursive((1, 1, 1)) == [1, 2, 2, 2, 1]
    assert rank_poly_recursive((2, 3, 1)) == list(fence_rank_sequence((2, 3, 1)))


@pytest.mark.parametrize("a", range(0, 8))
def test_single_segment_is_q_integer(a):
    assert rank_poly_recursive((a,)) == q_integer(a + 2)


def test_explicit_examples():
    assert rank_poly_explicit((1, 1, 1, 1, 1)) == rank_poly_recursive((1, 1, 1, 1, 1))
    with pytest.raises(ValueError):
        rank_poly_explicit((1, 2))


@given(small_alpha)
def test_three_methods_agree(alpha):
    brute = list(fence_rank_sequence(alpha))
    assert rank_poly_recursive(alpha) == brute
    if len(alpha) % 2:
        assert rank_poly_explicit(alpha) == brute


# -- maxima and shapes --------------------------------------------------------

def test_maxima_indices():
    assert maxima_indices([1, 2, 2, 1]) == {1, 2}
    assert maxima_indices(q_integer(5)) == frozenset(range(5))
    assert maxima_indices(rank_poly_recursive((3, 1, 1))) == {2, 3}


def test_unimodality():
    assert is_unimodal([1, 3, 3, 2])
    assert not is_unimodal([2, 1, 2])
    assert unimodality_dips([2, 1, 2]) == [2]


def test_shape_examples():
    s = shape_classify([1, 2, 3, 2, 2, 1])
    assert s.bottom_interlacing and not s.top_interlacing
    assert s.classify() == "bottom_interlacing"
    ones = shape_classify([1] * 6)
    assert all(ones.__dict__.values())
    pal = shape_classify([1, 2, 2, 1])
    assert pal.symmetric and pal.unimodal and pal.top_interlacing and pal.bottom_interlacing


@given(st.lists(st.integers(0, 9), min_size=1, max_size=12))
def test_interlacing_implies_unimodal_and_heavy(a):
    s = shape_classify(a)
    if s.top_interlacing:
        assert s.unimodal and s.top_heavy
    if s.bottom_interlacing:
        assert s.unimodal and s.bottom_heavy
    rev = shape_classify(a[::-1])
    assert rev.top_interlacing == s.bottom_interlacing


def test_mi_addition():
    res = check_mi_addition(RankPolynomial([1, 2, 1]), RankPolynomial([0, 1, 2, 1]))
    assert not res.applicable
    res = check_mi_addition(q_integer(3), q_integer(3))
    assert res.applicable and res.holds


def test_mi_on_recursion_summands():
    f, g = recursion_summands((4, 1, 1))
    assert maxima_indices(f) & maxima_indices(g) == {2, 3, 4}
    res = check_mi_addition(f, g)
    assert res.applicable and res.holds
    assert maxima_indices(f + g) == {2, 3, 4}


@pytest.mark.parametrize(
    "alpha, interval",
    [((3, 1, 1), (2, 3)), ((1, 1, 3), (3, 4)), ((1, 1, 1), None), ((4, 2), (2, 4)), ((2, 4), (2, 4)), ((3,), (0, 4))],
)
def test_predicted_maxima_interval(alpha, interval):
    assert predicted_maxima_interval(alpha) == interval


@given(small_alpha)
def test_predicted_interval_is_exact(alpha):
    interval = predicted_maxima_interval(alpha)
    if interval is not None:
        lo, hi = interval
        assert maxima_indices(rank_poly_recursive(alpha)) == frozenset(range(lo, hi + 1))


@given(small_alpha)
def test_reversal_identity(alpha):
    r, rr = rank_poly_recursive(alpha), rank_poly_recursive(alpha[::-1])
    if len(alpha) % 2:
        assert rr == r.reversed(sum(alpha) + 1)
    else:
        assert rr == r
