"""Explicit chain decompositions of ideal lattices of fences.

The two-segment decomposition comes from a grid of two chains.  The
three-segment and d-divided decompositions group ideals by a bracket-matching
core of their zero-one words; each group is a saturated chain obtained by
switching the unmatched ("free") zeros to ones from left to right.  Lexicographic
decompositions are greedy, and long segments can be stretched one element at
a time while keeping a nested decomposition.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

from .chains import Chain, ChainDecomposition, classify_chains, validate_cd
from .lattice import build_lattice, dominant_segment, segment_elements
from .poset import (
    DEFAULT_LIMIT,
    LabeledPoset,
    bit,
    build_d_divided,
    build_fence,
    fence_size,
    is_ideal,
    label_three_segment,
    mask_of,
    members,
    normalize_composition,
)

Word = tuple[int, ...]


def as_word(w: str | Iterable[int]) -> Word:
    if isinstance(w, str):
        if set(w) - {"0", "1"}:
            raise ValueError(f"not a zero-one word: {w!r}")
        return tuple(int(ch) for ch in w)
    return tuple(int(x) for x in w)


def _gk_pairs(word: Word, transparent: frozenset[int] = frozenset()) -> list[tuple[int, int]]:
    # bracket matching: 0 opens, 1 closes; transparent positions count as matched
    stack: list[int] = []
    pairs = []
    for i, x in enumerate(word, start=1):
        if i in transparent:
            continue
        if x == 0:
            stack.append(i)
        elif stack:
            pairs.append((stack.pop(), i))
    return pairs


def gk_core(w: str | Iterable[int]) -> frozenset[tuple[int, int]]:
    """Greene-Kleitman pairs ``(i, j)`` of a zero-one word, 1-based.

    ``w_i = 0`` is paired with ``w_j = 1`` when everything strictly between
    them is already paired.
    """
    return frozenset(_gk_pairs(as_word(w)))


@dataclass(frozen=True)
class Core:
    pairs: frozenset[tuple[int, int]]
    self_paired: int | None = None
    frozen: frozenset[int] = frozenset()

    @property
    def matched(self) -> set[int]:
        out = {i for pair in self.pairs for i in pair} | set(self.frozen)
        if self.self_paired is not None:
            out.add(self.self_paired)
        return out

    def free(self, n: int) -> list[int]:
        matched = self.matched
        return [i for i in range(1, n + 1) if i not in matched]


def _ideal_word(P: LabeledPoset, ideal: Iterable[int] | str) -> Word:
    """Word of an ideal given by its labels (or directly as a word)."""
    if isinstance(ideal, str):
        word = as_word(ideal)
    else:
        labels = set(ideal)
        word = tuple(1 if lab in labels else 0 for lab in range(1, P.n + 1))
    if len(word) != P.n:
        raise ValueError(f"word length {len(word)} does not match poset size {P.n}")
    if not is_ideal(P.relabeled(), [i for i, x in enumerate(word, start=1) if x]):
        raise ValueError("not an order ideal")
    return word


# -- three segments -----------------------------------------------------------

def _three_segment_core(Q: LabeledPoset, word: Word) -> Core:
    # Q is the labeled fence renamed to its labels, so positions are elements
    pairs = _gk_pairs(word)
    matched = {i for pair in pairs for i in pair}
    frozen = set()
    for f in range(1, Q.n + 1):
        if f in matched:
            continue
        for i, j in pairs:
            if Q.lower_cover_mask[f] & bit(i) or Q.upper_cover_mask[f] & bit(j):
                frozen.add(f)
                break
    return Core(frozenset(pairs), None, frozenset(frozen))


def core_three_segment(a: int, b: int, c: int, ideal: Iterable[int] | str) -> Core:
    """Core of an ideal of ``F(a,b,c)`` (``a >= c``), ideal given by labels.

    The core is the GK pairing of the ideal's word plus the frozen letters:
    unpaired elements covering the zero of a pair or covered by its one.
    """
    if a < c:
        raise ValueError("three-segment cores need a >= c; reverse the composition")
    P = label_three_segment(a, b, c)
    return _three_segment_core(P.relabeled(), _ideal_word(P, ideal))


# -- d-divided ----------------------------------------------------------------

def _d_divided_core(n: int, d: int, word: Word) -> Core:
    q = n // d
    if q == 0:
        return Core(frozenset(_gk_pairs(word)))
    p = (q - 1) * d + 1
    tail = word[p - 1 :]
    tail_pairs = _gk_pairs(tail)
    if all(j != len(tail) for _, j in tail_pairs):
        return Core(frozenset(_gk_pairs(word)))
    return Core(frozenset(_gk_pairs(word, frozenset({p}))), p)


def core_d_divided(n: int, d: int, ideal: Iterable[int] | str) -> Core:
    """Core of an ideal of ``P_{n,d}``.

    Let ``p`` be the bottom of the right-most full ``d``-chain.  When ``n`` is
    paired in the GK core of the word from ``p`` on, ``p`` is paired with
    itself and the remaining pairing is formed around it.
    """
    P = build_d_divided(n, d)
    return _d_divided_core(n, d, _ideal_word(P, ideal))


# -- building decompositions from cores ---------------------------------------

def _cd_from_cores(
    P: LabeledPoset,
    core_of: Callable[[Word], Core],
    name: str,
    limit: int = DEFAULT_LIMIT,
) -> ChainDecomposition:
    L = build_lattice(P, limit)
    n = P.n
    cores: dict[Core, Word] = {}
    for I in L.ideals:
        w = P.word(I)
        cores.setdefault(core_of(w), w)
    chains = []
    for core, w in cores.items():
        free = core.free(n)
        v = list(w)
        for i in free:
            v[i - 1] = 0
        chain = [P.mask_from_word(v)]
        for i in free:
            v[i - 1] = 1
            chain.append(P.mask_from_word(v))
        chains.append(tuple(chain))
    chains.sort(key=lambda c: (c[0].bit_count(), c[0]))
    return ChainDecomposition(P, tuple(chains), name)


def core_groups(P: LabeledPoset, core_of: Callable[[Word], Core], limit: int = DEFAULT_LIMIT):
    """Ideals of ``P`` grouped by core (used to test the closure property)."""
    groups: dict[Core, list[int]] = {}
    for I in build_lattice(P, limit).ideals:
        groups.setdefault(core_of(P.word(I)), []).append(I)
    return groups


def _transport_complement(
    cd: ChainDecomposition, target: LabeledPoset, to_source: Callable[[int], int], name: str
) -> ChainDecomposition:
    """Move ``cd`` across an isomorphism ``target ~ dual(source)`` by complementing."""
    src_full = cd.poset.full_mask
    image = {}

    def convert(J: int) -> int:
        if J not in image:
            comp = src_full & ~J
            image[J] = mask_of(e for e in range(1, target.n + 1) if comp & bit(to_source(e)))
        return image[J]

    chains = tuple(tuple(convert(J) for J in reversed(chain)) for chain in cd.chains)
    chains = tuple(sorted(chains, key=lambda c: (c[0].bit_count(), c[0])))
    return ChainDecomposition(target, chains, name)


def three_segment_poset(a: int, b: int, c: int) -> LabeledPoset:
    """``F(a,b,c)`` with the labeling used by :func:`cd_three_segment`."""
    if a >= c:
        return label_three_segment(a, b, c)
    mirror = label_three_segment(c, b, a)
    n = mirror.n
    labels = [n + 1 - mirror.labels[n - 1 - i] for i in range(n)]
    return build_fence((a, b, c)).with_labels(labels)


def cd_three_segment(a: int, b: int, c: int, limit: int = DEFAULT_LIMIT) -> ChainDecomposition:
    """Chain decomposition of ``L(a,b,c)`` grouped by frozen cores.

    Bottom centered for ``a >= c`` (symmetric when ``a == c``); for ``a < c``
    the decomposition of ``L(c,b,a)`` is carried over by duality and becomes
    top centered.
    """
    if min(a, b, c) < 1:
        raise ValueError("three-segment parts must be positive")
    if a >= c:
        P = label_three_segment(a, b, c)
        Q = P.relabeled()
        cd = _cd_from_cores(Q, lambda w: _three_segment_core(Q, w), "three", limit)
        to_element = lambda J: P.mask_from_labels(members(J))
        chains = tuple(tuple(to_element(J) for J in chain) for chain in cd.chains)
        return ChainDecomposition(P, chains, "three")
    base = cd_three_segment(c, b, a, limit)
    n = base.n
    return _transport_complement(base, three_segment_poset(a, b, c), lambda e: n + 1 - e, "three")


def cd_two_segment(a: int, b: int) -> ChainDecomposition:
    """Grid decomposition of ``L(a,b)`` plus the top element.

    Ideals other than the whole fence are pairs (prefix of the first segment
    below the maximum, prefix of the second).  Chain ``i`` walks from
    ``(0, i)`` along the first coordinate to ``(a - i, i)`` and then up to
    ``(a - i, b)``; the chain through ``(0, 0)`` also receives the top.
    """
    if min(a, b) < 1:
        raise ValueError("two-segment parts must be positive")
    P = build_fence((a, b))
    n = P.n
    first = [0]
    for e in range(1, a + 1):
        first.append(first[-1] | bit(e))
    second = [0]
    for e in range(n, a + 1, -1):
        second.append(second[-1] | bit(e))
    chains = []
    for i in range(min(a, b) + 1):
        chain = [first[x] | second[i] for x in range(a - i + 1)]
        chain += [first[a - i] | second[y] for y in range(i + 1, b + 1)]
        if i == 0:
            chain.append(P.full_mask)
        chains.append(tuple(chain))
    return ChainDecomposition(P, tuple(chains), "two")


def cd_d_divided(n: int, d: int, limit: int = DEFAULT_LIMIT) -> ChainDecomposition:
    """Core-grouped decomposition of ``L(P_{n,d})``: top centered, symmetric iff ``d | n``."""
    P = build_d_divided(n, d)
    return _cd_from_cores(P, lambda w: _d_divided_core(n, d, w), "ddivided", limit)


def d_divided_parameters(alpha: Sequence[int]) -> tuple[int, int] | None:
    """``(n, d)`` with ``F(alpha)`` the dual of ``P_{n,d}`` (``d >= 2``), if any."""
    alpha = normalize_composition(alpha)
    if alpha == (0,):
        return None
    d = alpha[0] + 1
    s = len(alpha)
    for i, part in enumerate(alpha, start=1):
        if i % 2 == 0 and part != 1:
            return None
        if i % 2 and i != s and part != d - 1:
            return None
    if s % 2 and alpha[-1] > d - 1:
        return None
    return fence_size(alpha), d


def d_divided_fence_cd(alpha: Sequence[int], limit: int = DEFAULT_LIMIT) -> ChainDecomposition:
    """Decomposition of ``L(alpha)`` transported from ``L(P_{n,d})`` when the fence is its dual."""
    params = d_divided_parameters(alpha)
    if params is None:
        raise ValueError(f"{tuple(alpha)} is not the dual of a d-divided poset")
    n, d = params
    P = build_d_divided(n, d)
    # walk the Hasse path of P from d to read off x_1..x_n
    adj = {e: set() for e in range(1, n + 1)}
    for lo, hi in P.covers:
        adj[lo].add(hi)
        adj[hi].add(lo)
    path = [d]
    while len(path) < n:
        nxt = adj[path[-1]] - set(path[-2:-1])
        path.append(nxt.pop())
    F = build_fence(alpha)
    dual_covers = {(path[i - 1], path[j - 1]) for i, j in F.covers}
    if dual_covers != {(hi, lo) for lo, hi in P.covers}:
        raise AssertionError("fence is not dual to the d-divided poset")
    return _transport_complement(cd_d_divided(n, d, limit), F, lambda e: path[e - 1], "ddivided")


# -- lexicographic ------------------------------------------------------------

def lex_cd(P: LabeledPoset, order: str = "sorted", lattice=None, limit: int = DEFAULT_LIMIT) -> ChainDecomposition:
    """Greedy lexicographic chain decomposition with respect to ``P``'s labels.

    Each chain starts at the least remaining ideal of minimum rank and climbs
    through the least remaining cover until none is left.  ``order="sorted"``
    compares sorted label lists; ``order="word"`` compares zero-one words in
    label order with ``0 < 1``.
    """
    L = lattice if lattice is not None else build_lattice(P, limit)
    labels = P.labels
    if order == "sorted":
        def key(I):
            return sorted(labels[e - 1] for e in members(I))
    elif order == "word":
        key = P.word
    else:
        raise ValueError(f"unknown lexicographic order {order!r}")
    keys = {I: key(I) for I in L.ideals}
    starts = sorted(L.ideals, key=lambda I: (I.bit_count(), keys[I]))
    remaining = set(L.ideals)
    chains = []
    for I in starts:
        if I not in remaining:
            continue
        remaining.discard(I)
        chain = [I]
        while True:
            ups = [J for J in L.covers_up[chain[-1]] if J in remaining]
            if not ups:
                break
            nxt = min(ups, key=keys.__getitem__)
            remaining.discard(nxt)
            chain.append(nxt)
        chains.append(tuple(chain))
    return ChainDecomposition(P, tuple(chains), f"lex:{order}")


# -- stretching a long segment ------------------------------------------------

def _insert_element(mask: int, e: int, include: bool) -> int:
    # renumber elements >= e up by one, then optionally add e
    low = mask & (bit(e) - 1)
    high = mask >> (e - 1)
    return low | (high << e) | (bit(e) if include else 0)


def lift_ncd(alpha: Sequence[int], t: int, ncd: ChainDecomposition, limit: int = DEFAULT_LIMIT) -> ChainDecomposition:
    """Nested decomposition of ``L(beta)``, ``beta`` = ``alpha`` with part ``t`` one longer.

    Ranks up to ``n-m-1`` are copied by inserting the new coatom of the long
    segment (absent from all those ideals); ranks from ``n-m`` on are shifted
    up by inserting a new atom (present in all of them).  The ideals at rank
    ``n-m`` of the new lattice are ``J + {min of the segment outside J}`` for
    ``J`` at rank ``n-m-1``, which splices the two halves together.
    """
    alpha = normalize_composition(alpha)
    if not 1 <= t <= len(alpha) or alpha[t - 1] <= sum(alpha) - alpha[t - 1]:
        raise ValueError(f"segment {t} of {alpha} is not longer than the rest combined")
    F = build_fence(alpha)
    if ncd.poset.covers != F.covers:
        raise ValueError("decomposition is not over F(alpha)")
    report = validate_cd(build_lattice(F, limit), ncd)
    if not report.valid or not report.nested:
        raise ValueError(f"input is not a nested chain decomposition: {report.violations[:3]}")

    n = F.n
    m = n - alpha[t - 1] - 1
    beta = alpha[: t - 1] + (alpha[t - 1] + 1,) + alpha[t:]
    G = build_fence(beta)
    seg = segment_elements(beta, t)
    atom, coatom = seg[1], seg[-2]
    cut = n - m - 1

    def splice(J: int) -> int:
        a = next(e for e in seg if not J & bit(e))
        return J | bit(a)

    chains = []
    for chain in ncd.chains:
        lower = [_insert_element(I, coatom, False) for I in chain if I.bit_count() <= cut]
        upper = [_insert_element(I, atom, True) for I in chain if I.bit_count() > cut]
        middle = [splice(lower[-1])] if lower and lower[-1].bit_count() == cut else []
        chains.append(tuple(lower + middle + upper))
    chains.sort(key=lambda c: (c[0].bit_count(), c[0]))
    lifted = ChainDecomposition(G, tuple(chains), "lift")

    before = classify_chains(n, ncd.chains)
    after = lifted.classification
    if after == "plain" or (before in ("symmetric", "top_centered", "bottom_centered") and after != before):
        raise AssertionError(f"lifting changed the decomposition type: {before} -> {after}")
    return lifted


def seed_for_lift(alpha: Sequence[int]) -> tuple[tuple[int, ...], int, int] | None:
    """``(seed, t, steps)``: shrink the dominant part to one more than the rest."""
    alpha = normalize_composition(alpha)
    t = dominant_segment(alpha)
    if t is None:
        return None
    rest = sum(alpha) - alpha[t - 1]
    seed = alpha[: t - 1] + (rest + 1,) + alpha[t:]
    return seed, t, alpha[t - 1] - rest - 1


def trivial_cd(alpha: Sequence[int]) -> ChainDecomposition:
    """The single chain making up the lattice of a one-segment fence."""
    alpha = normalize_composition(alpha)
    if len(alpha) != 1:
        raise ValueError("only a single segment is a chain")
    P = build_fence(alpha)
    chain: list[int] = [0]
    for e in P.topological_order:
        chain.append(chain[-1] | bit(e))
    return ChainDecomposition(P, (tuple(chain),), "chain")


__all__ = [
    "Chain",
    "Core",
    "as_word",
    "cd_d_divided",
    "cd_three_segment",
    "cd_two_segment",
    "core_d_divided",
    "core_groups",
    "core_three_segment",
    "d_divided_fence_cd",
    "d_divided_parameters",
    "gk_core",
    "lex_cd",
    "lift_ncd",
    "seed_for_lift",
    "three_segment_poset",
    "trivial_cd",
]
