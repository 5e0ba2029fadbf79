from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fences.conjectures import (
    SWAP,
    FamilySpec,
    check_centered,
    check_heavy,
    check_lex_conjecture,
    check_mgo,
    linear_extension_labelings,
    predict_shape,
    summarize,
    sweep,
)
from fences.lattice import fence_rank_sequence
from fences.polynomial import rank_poly_recursive, shape_classify
from fences.poset import LimitExceeded, build_fence, compositions

small_alpha = st.lists(st.integers(1, 5), min_size=1, max_size=5).map(tuple)


@pytest.mark.parametrize(
    "alpha, shape",
    [
        ((4,), "all_ones"),
        ((2, 3, 1), "bottom_interlacing"),
        ((1, 3, 2), "top_interlacing"),
        ((1, 3, 1), "symmetric"),
        ((2, 2), "bottom_interlacing"),
        ((1, 2, 1, 3, 1), "bottom_interlacing"),
    ],
)
def test_predict_shape(alpha, shape):
    assert predict_shape(alpha) == shape


def test_131_is_palindrome():
    r = rank_poly_recursive((1, 3, 1))
    assert list(r) == list(r)[::-1]


@given(small_alpha.filter(lambda a: len(a) % 2 == 1 and len(a) > 1))
def test_predict_shape_swaps_under_reversal(alpha):
    assert predict_shape(alpha[::-1]) == SWAP[predict_shape(alpha)]


def test_check_heavy_examples():
    r = check_heavy((2, 1, 1))
    assert r.verdict == "pass" and r.witness == [1, 2, 3, 2, 2, 1]
    assert r.detail["observed"] == "bottom_interlacing"
    r = check_heavy((1, 1, 2))
    assert r.verdict == "pass" and r.detail["observed"] == "top_interlacing"
    assert check_heavy((4,)).verdict == "pass"


def test_check_mgo_examples():
    assert check_mgo((1,)).verdict == "pass"
    assert check_mgo((5, 1, 1)).verdict == "pass"


def test_mgo_up_to_ten():
    for total in range(1, 11):
        for alpha in compositions(total):
            assert check_mgo(alpha).verdict == "pass"


@given(small_alpha)
def test_heavy_pass_implies_mgo_pass(alpha):
    if check_heavy(alpha).verdict == "pass":
        assert check_mgo(alpha).verdict == "pass"


@pytest.mark.parametrize("alpha", [(a, b, c) for a in range(1, 5) for b in range(1, 5) for c in range(1, 5)])
def test_centered_three_segments(alpha):
    r = check_centered(alpha)
    assert r.verdict == "pass"
    assert r.detail["construction"] == "three"


def test_centered_search_1111():
    assert check_centered((1, 1, 1, 1), "search").verdict == "pass"


def test_centered_inconclusive_is_not_fail():
    r = check_centered((2, 2, 2, 2))
    assert r.verdict == "inconclusive"


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3).map(tuple))
def test_centered_pass_matches_rank_shape(alpha):
    r = check_centered(alpha)
    if r.verdict == "pass":
        shape = shape_classify(fence_rank_sequence(alpha))
        kind = r.detail["classification"]
        if kind == "symmetric":
            assert shape.symmetric
        elif kind == "top_centered":
            assert shape.top_interlacing
        elif kind == "bottom_centered":
            assert shape.bottom_interlacing


def test_linear_extension_labelings():
    P = build_fence((1, 1))
    labelings = list(linear_extension_labelings(P))
    assert len(labelings) == 2
    for labels in labelings:
        assert P.with_labels(labels).is_linear_extension()


def test_lex_examples():
    assert check_lex_conjecture((3,), "natural").verdict == "pass"
    r = check_lex_conjecture((2, 2), "linear_extensions")
    assert r.verdict == "pass" and r.witness is not None
    assert r.witness["labels"] == [1, 2, 5, 4, 3]
    assert build_fence((2, 2)).with_labels(r.witness["labels"]).is_linear_extension()


def test_lex_scope_limit():
    with pytest.raises(LimitExceeded):
        check_lex_conjecture((4, 4), "all")


def test_report_json_is_deterministic():
    r = check_heavy((2, 3, 1))
    assert r.to_json() == check_heavy((2, 3, 1)).to_json()
    assert json.loads(r.to_json())["target"] == "heavy"


def test_sweep_mgo_heavy():
    reports = sweep(FamilySpec(max_segments=3, max_part=6, checks=("mgo", "heavy")))
    summary = summarize(reports)
    assert summary["ok"]
    assert summary["counts"]["heavy"]["pass"] == 6 + 36 + 216


def test_sweep_heavy_four_parts():
    assert summarize(sweep(FamilySpec(max_segments=4, max_part=4, checks=("heavy",))))["ok"]


def test_sweep_centered_two_parts():
    summary = summarize(sweep(FamilySpec(max_segments=2, max_part=10, checks=("centered",))))
    assert summary["ok"]
    assert summary["counts"]["centered"]["pass"] == 110


def test_sweep_resume_and_jobs():
    base = FamilySpec(max_segments=2, max_part=3, checks=("heavy",))
    full = sweep(base)
    instances = [r.instance for r in full]
    resumed = sweep(FamilySpec(max_segments=2, max_part=3, checks=("heavy",), resume_after=tuple(instances[4])))
    assert [r.instance for r in resumed] == instances[5:]
    parallel = sweep(FamilySpec(max_segments=2, max_part=3, checks=("heavy",), jobs=2))
    assert [r.to_json() for r in parallel] == [r.to_json() for r in full]


def test_sweep_max_n():
    spec = FamilySpec(max_segments=0, max_part=0, checks=("heavy",), max_n=5)
    assert len(spec.instances()) == 15
