"""The distributive lattice of order ideals, ranks, and long-segment structure."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal, Sequence

from .poset import (
    DEFAULT_LIMIT,
    LabeledPoset,
    bit,
    build_fence,
    enumerate_ideals,
    fence_size,
    normalize_composition,
    segment_bounds,
)


@dataclass(frozen=True)
class IdealLattice:
    """All ideals of ``poset`` (as bitmasks) with their upward covers.

    ``ideals`` is sorted by rank, then by mask.  Rank is cardinality.
    """

    poset: LabeledPoset
    ideals: tuple[int, ...]
    covers_up: dict[int, tuple[int, ...]] = field(compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.poset.n

    def __len__(self):
        return len(self.ideals)

    def __contains__(self, mask: int) -> bool:
        return mask in self.covers_up

    @staticmethod
    def rank_of(mask: int) -> int:
        return mask.bit_count()

    @cached_property
    def covers_down(self) -> dict[int, tuple[int, ...]]:
        down: dict[int, list[int]] = {I: [] for I in self.ideals}
        for I in self.ideals:
            for J in self.covers_up[I]:
                down[J].append(I)
        return {I: tuple(sorted(v)) for I, v in down.items()}

    @cached_property
    def by_rank(self) -> tuple[tuple[int, ...], ...]:
        levels: list[list[int]] = [[] for _ in range(self.n + 1)]
        for I in self.ideals:
            levels[I.bit_count()].append(I)
        return tuple(tuple(level) for level in levels)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.poset.full_mask


def build_lattice(P: LabeledPoset, limit: int = DEFAULT_LIMIT) -> IdealLattice:
    ideals = sorted(enumerate_ideals(P, limit), key=lambda m: (m.bit_count(), m))
    present = set(ideals)
    lower = P.lower_cover_mask
    covers_up = {}
    for I in ideals:
        ups = []
        for e in range(1, P.n + 1):
            b = bit(e)
            if not I & b and lower[e] & ~I == 0:
                ups.append(I | b)
        covers_up[I] = tuple(sorted(ups))
    assert all(J in present for ups in covers_up.values() for J in ups)
    return IdealLattice(P, tuple(ideals), covers_up)


def rank_sequence(L: IdealLattice) -> tuple[int, ...]:
    counts = [0] * (L.n + 1)
    for I in L.ideals:
        counts[I.bit_count()] += 1
    return tuple(counts)


def fence_rank_sequence(alpha: Sequence[int], limit: int = DEFAULT_LIMIT) -> tuple[int, ...]:
    """Brute-force rank sequence of ``L(alpha)``."""
    return rank_sequence(build_lattice(build_fence(alpha), limit))


def rank_json(alpha: Sequence[int], ranks: Sequence[int]) -> str:
    return json.dumps({"alpha": list(alpha), "ranks": list(ranks)}, separators=(",", ":"))


# -- long segments ------------------------------------------------------------

def dominant_segment(alpha: Sequence[int]) -> int | None:
    """Index ``t`` (1-based) with ``alpha_t`` strictly larger than the rest, if any."""
    total = sum(alpha)
    for t, part in enumerate(alpha, start=1):
        if part > total - part:
            return t
    return None


def _check_dominant(alpha: Sequence[int], t: int) -> None:
    if not 1 <= t <= len(alpha):
        raise ValueError(f"segment index {t} out of range for {tuple(alpha)}")
    rest = sum(alpha) - alpha[t - 1]
    if alpha[t - 1] <= rest:
        raise ValueError(f"segment {t} of {tuple(alpha)} does not exceed the sum of the others ({rest})")


def segment_elements(alpha: Sequence[int], t: int) -> list[int]:
    """Elements of segment ``t`` listed from its minimum to its maximum."""
    first, last = segment_bounds(alpha, t)
    chain = list(range(first, last + 1))
    return chain if t % 2 else chain[::-1]


@dataclass(frozen=True)
class Plateau:
    """Predicted maximum rank size and plateau, with the observed rank sequence."""

    value: int
    m: int
    lo: int
    hi: int
    ranks: tuple[int, ...]

    @property
    def holds(self) -> bool:
        r = self.ranks
        return max(r) == self.value and all(r[k] == self.value for k in range(self.lo, self.hi + 1))


def rank_plateau(alpha: Sequence[int], t: int, limit: int = DEFAULT_LIMIT) -> Plateau:
    """Maximum rank size of ``L(alpha)`` when segment ``t`` is long.

    The value is the number of ideals of the fence with segment ``t`` (all
    of its elements, shared endpoints included) deleted; it is attained on
    ranks ``m+1 .. n-m-1`` where ``m`` is the size of that remainder.
    """
    alpha = normalize_composition(alpha)
    _check_dominant(alpha, t)
    F = build_fence(alpha)
    seg = set(segment_elements(alpha, t))
    rest = [e for e in range(1, F.n + 1) if e not in seg]
    value = len(enumerate_ideals(F.induced(rest), limit))
    m = len(rest)
    n = F.n
    return Plateau(value, m, m + 1, n - m - 1, rank_sequence(build_lattice(F, limit)))


def matching_long_segment(
    alpha: Sequence[int],
    t: int,
    direction: Literal["up", "down"],
    limit: int = DEFAULT_LIMIT,
) -> dict[int, int]:
    """Rank-raising (or lowering) injection along the long segment ``t``.

    ``up`` sends each ideal of rank at most ``m`` to ``I + {y}`` with ``y`` the
    lowest segment element outside ``I``; ``down`` sends each ideal of rank at
    least ``n - m`` to ``I - {x}`` with ``x`` the highest segment element in ``I``.
    """
    alpha = normalize_composition(alpha)
    _check_dominant(alpha, t)
    seg = segment_elements(alpha, t)
    n = fence_size(alpha)
    m = n - len(seg)
    L = build_lattice(build_fence(alpha), limit)
    out = {}
    for I in L.ideals:
        k = I.bit_count()
        if direction == "up" and k <= m:
            y = next(e for e in seg if not I & bit(e))
            out[I] = I | bit(y)
        elif direction == "down" and k >= n - m:
            x = next(e for e in reversed(seg) if I & bit(e))
            out[I] = I & ~bit(x)
        elif direction not in ("up", "down"):
            raise ValueError(f"unknown direction {direction!r}")
    return out
