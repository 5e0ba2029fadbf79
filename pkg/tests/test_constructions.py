from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fences.chains import ChainDecomposition, classify_chains, doubled_center, is_nested, search_centered_cd, validate_cd
from fences.constructions import (
    as_word,
    cd_d_divided,
    cd_three_segment,
    cd_two_segment,
    core_d_divided,
    core_three_segment,
    d_divided_fence_cd,
    d_divided_parameters,
    gk_core,
    lex_cd,
    lift_ncd,
    seed_for_lift,
    three_segment_poset,
    trivial_cd,
)
from fences.lattice import build_lattice, fence_rank_sequence
from fences.poset import build_d_divided, build_fence, enumerate_ideals, label_three_segment

words = st.lists(st.integers(0, 1), max_size=16).map(tuple)


def report(cd):
    return validate_cd(build_lattice(cd.poset), cd)


def chain_labels(cd):
    return [[cd.poset.labels_of(I) for I in chain] for chain in cd.chains]


# -- GK core ------------------------------------------------------------------

def test_gk_small():
    assert gk_core("01") == {(1, 2)}
    assert gk_core("10") == frozenset()
    assert gk_core("") == frozenset()


def test_gk_worked_word():
    # bracket matching with 0 opening and 1 closing also pairs the final letter
    assert gk_core("110001011000111") == {(4, 9), (5, 6), (7, 8), (10, 15), (11, 14), (12, 13)}
    assert gk_core("110001011000110") == {(4, 9), (5, 6), (7, 8), (11, 14), (12, 13)}


@given(words)
def test_gk_pairs_are_nested_brackets(w):
    pairs = gk_core(w)
    used = [i for p in pairs for i in p]
    assert len(used) == len(set(used))
    for i, j in pairs:
        assert i < j and w[i - 1] == 0 and w[j - 1] == 1
        # everything strictly inside a pair is matched
        assert all(k in used for k in range(i + 1, j))
    unmatched = [w[k - 1] for k in range(1, len(w) + 1) if k not in used]
    assert unmatched == sorted(unmatched, reverse=True)  # 1s then 0s


@given(words, st.integers(0, 3), st.integers(0, 3))
def test_gk_stable_under_padding(w, ones, zeros):
    padded = (1,) * ones + w + (0,) * zeros
    shifted = {(i + ones, j + ones) for i, j in gk_core(w)}
    assert gk_core(padded) == shifted


def test_as_word():
    assert as_word("0110") == (0, 1, 1, 0)
    with pytest.raises(ValueError):
        as_word("012")


# -- three-segment cores ------------------------------------------------------

def test_three_segment_core_example():
    core = core_three_segment(2, 3, 1, [1, 4, 5])
    assert core.pairs == {(2, 5), (3, 4)}
    assert core.frozen == {1, 7}


@pytest.mark.parametrize("abc", [(2, 3, 1), (1, 1, 1), (3, 2, 2), (4, 1, 2)])
def test_three_segment_core_of_empty_ideal(abc):
    core = core_three_segment(*abc, [])
    n = sum(abc) + 1
    assert not core.pairs and not core.frozen
    assert core.free(n) == list(range(1, n + 1))


def test_three_segment_top_never_paired():
    P = label_three_segment(2, 1, 1)
    for I in enumerate_ideals(P):
        core = core_three_segment(2, 1, 1, P.labels_of(I))
        assert all(5 not in pair for pair in core.pairs)


def test_three_segment_core_rejects_non_ideal():
    with pytest.raises(ValueError):
        core_three_segment(2, 3, 1, [7])


# -- d-divided cores ----------------------------------------------------------

def test_d_divided_core_example():
    core = core_d_divided(10, 4, [1, 2, 5, 6, 9, 10])
    assert core.self_paired == 5
    assert core.pairs == {(4, 6), (8, 9), (7, 10)}
    assert core.free(10) == [1, 2, 3]


def test_d_divided_core_of_empty_ideal():
    core = core_d_divided(10, 4, [])
    assert not core.pairs and core.self_paired is None


@pytest.mark.parametrize("n, d", [(6, 2), (8, 4), (9, 3), (10, 5)])
def test_d_divided_core_is_gk_when_d_divides_n(n, d):
    P = build_d_divided(n, d)
    for I in enumerate_ideals(P):
        core = core_d_divided(n, d, P.labels_of(I))
        assert core.self_paired is None
        assert core.pairs == gk_core(P.word(I))


# -- two-segment --------------------------------------------------------------

def test_two_segment_11():
    cd = cd_two_segment(1, 1)
    assert chain_labels(cd) == [[[], [1], [1, 3], [1, 2, 3]], [[3]]]


@pytest.mark.parametrize("a, b", list(product(range(1, 7), repeat=2)))
def test_two_segment_valid(a, b):
    cd = cd_two_segment(a, b)
    rep = report(cd)
    assert rep.valid and rep.bottom_centered
    assert len(cd.chains) == min(a, b) + 1 == max(fence_rank_sequence((a, b)))


# -- three-segment ------------------------------------------------------------

def test_three_segment_211():
    cd = cd_three_segment(2, 1, 1)
    rep = report(cd)
    assert rep.valid and rep.nested and cd.classification == "bottom_centered"
    assert fence_rank_sequence((2, 1, 1)) == (1, 2, 3, 2, 2, 1)


def test_three_segment_111_symmetric():
    cd = cd_three_segment(1, 1, 1)
    assert all(doubled_center(c) == 4 for c in cd.chains)
    assert cd.classification == "symmetric"


def test_three_segment_231_chain_count():
    cd = cd_three_segment(2, 3, 1)
    assert cd.classification == "bottom_centered"
    assert len(cd.chains) == max(fence_rank_sequence((2, 3, 1)))


@pytest.mark.parametrize("abc", [abc for abc in product(range(1, 5), repeat=3)])
def test_three_segment_all_small(abc):
    a, b, c = abc
    cd = cd_three_segment(a, b, c)
    rep = report(cd)
    assert rep.valid and rep.nested
    expected = "symmetric" if a == c else ("bottom_centered" if a > c else "top_centered")
    assert cd.classification == expected


def test_three_segment_poset_has_fence_covers():
    for abc in [(1, 2, 3), (2, 2, 1), (1, 1, 2)]:
        P = three_segment_poset(*abc)
        assert P.covers == build_fence(abc).covers
        assert P.is_linear_extension()


# -- d-divided ----------------------------------------------------------------

def test_d_divided_6_2_symmetric():
    cd = cd_d_divided(6, 2)
    assert cd.classification == "symmetric"
    assert report(cd).valid


def test_d_divided_10_4():
    cd = cd_d_divided(10, 4)
    rep = report(cd)
    assert rep.valid and rep.nested and cd.classification == "top_centered"
    assert 11 in {doubled_center(c) for c in cd.chains}


@pytest.mark.parametrize("d", [1, 3, 5])
def test_d_divided_single_block(d):
    cd = cd_d_divided(d, d)
    assert len(cd.chains) == 1 and len(cd.chains[0]) == d + 1


@pytest.mark.parametrize("n, d", [(n, d) for n in range(1, 13) for d in range(1, 5)])
def test_d_divided_valid(n, d):
    cd = cd_d_divided(n, d)
    rep = report(cd)
    assert rep.valid and rep.top_centered
    if n >= d:
        assert rep.symmetric == (n % d == 0)


def test_d_divided_fences():
    assert d_divided_parameters((1, 1, 1, 1, 1)) == (6, 2)
    assert d_divided_parameters((2, 3, 1)) is None
    cd = d_divided_fence_cd((1, 1, 1, 1, 1))
    assert report(cd).valid and cd.classification == "symmetric"


# -- lexicographic ------------------------------------------------------------

def test_lex_three_element_fence():
    P = build_fence((1, 1)).with_labels((1, 3, 2))
    cd = lex_cd(P)
    assert chain_labels(cd) == [[[], [1], [1, 2], [1, 2, 3]], [[2]]]
    assert cd.classification == "bottom_centered"


def test_lex_chain_is_single_chain():
    cd = lex_cd(build_fence((4,)))
    assert len(cd.chains) == 1


def test_lex_231_runs():
    cd = lex_cd(label_three_segment(2, 3, 1))
    assert report(cd).valid
    assert cd.classification in ("symmetric", "top_centered", "bottom_centered", "nested", "plain")


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4).map(tuple), st.sampled_from(["sorted", "word"]))
def test_lex_always_partitions(alpha, order):
    cd = lex_cd(build_fence(alpha), order)
    rep = report(cd)
    assert rep.partition and rep.saturated


# -- lifting ------------------------------------------------------------------

def test_lift_12_from_search():
    L = build_lattice(build_fence((1, 2)))
    seed = search_centered_cd(L, "bottom_centered")
    assert seed is not None
    cd, alpha = seed, (1, 2)
    for a in range(4):
        cd = lift_ncd(alpha, 2, cd)
        alpha = (1, alpha[1] + 1)
        rep = report(cd)
        assert rep.valid and rep.nested and cd.classification == seed.classification


def test_lift_311():
    cd = lift_ncd((3, 1, 1), 1, cd_three_segment(3, 1, 1))
    assert report(cd).valid
    assert cd.classification == "bottom_centered"
    assert cd.poset.covers == build_fence((4, 1, 1)).covers


def test_lift_rejects_non_nested():
    L = build_lattice(build_fence((1, 2)))
    singletons = ChainDecomposition(L.poset, tuple((I,) for I in L.ideals))
    with pytest.raises(ValueError):
        lift_ncd((1, 2), 2, singletons)


def test_seed_for_lift():
    assert seed_for_lift((1, 5)) == ((1, 2), 2, 3)
    assert seed_for_lift((2, 2)) is None


# -- validation ---------------------------------------------------------------

def test_validate_detects_corruption():
    cd = cd_three_segment(2, 1, 1)
    chains = [list(c) for c in cd.chains]
    moved = chains[0].pop(2)
    chains[1].append(moved)
    bad = ChainDecomposition(cd.poset, tuple(tuple(c) for c in chains))
    rep = report(bad)
    assert not rep.valid
    assert rep.violations


def test_validate_detects_missing_ideal():
    cd = cd_three_segment(2, 1, 1)
    bad = ChainDecomposition(cd.poset, cd.chains[:-1])
    rep = report(bad)
    assert not rep.partition


def test_classify_precedence():
    assert classify_chains(4, [(0, 1, 3, 7, 15)]) == "symmetric"
    assert is_nested([(0, 4), (1, 3), (2, 2)])
    assert not is_nested([(0, 2), (1, 3)])


def test_search_finds_centered():
    L = build_lattice(build_fence((1, 1, 1, 1)))
    cd = search_centered_cd(L, "bottom_centered")
    assert cd is not None and report(cd).valid


def test_trivial_cd():
    cd = trivial_cd((3,))
    assert cd.classification == "symmetric" and report(cd).valid


def test_cd_json_shape():
    doc = cd_two_segment(1, 1).to_dict()
    assert doc == {"n": 3, "classification": "bottom_centered", "chains": [[[], [1], [1, 3], [1, 2, 3]], [[3]]]}
