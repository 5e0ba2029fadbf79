"""Compositions, fences, d-divided posets and the brute-force ideal oracle.

Elements of every poset are the integers ``1..n``.  Subsets of elements are
stored as bitmasks: element ``e`` is bit ``e - 1``.  A poset additionally
carries a labeling (a bijection onto ``1..n``); the zero-one word of a subset
is its membership read in label order.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

DEFAULT_LIMIT = 24

Composition = tuple[int, ...]


class LimitExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would exceed the element limit."""


class CompositionError(ValueError):
    """Malformed composition; ``position`` is the 0-based offending character."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


# -- compositions -------------------------------------------------------------

def normalize_composition(parts: Iterable[int]) -> Composition:
    """Validate ``parts`` and strip trailing zeros.

    ``(0,)`` (and any all-zero tail reducing to it) is kept as the composition
    of 0, i.e. the one-point fence.
    """
    parts = tuple(int(p) for p in parts)
    if not parts:
        raise CompositionError("empty composition")
    if any(p < 0 for p in parts):
        raise CompositionError(f"negative part in {parts}")
    end = len(parts)
    while end > 1 and parts[end - 1] == 0:
        end -= 1
    parts = parts[:end]
    if len(parts) > 1 and 0 in parts:
        raise CompositionError(f"interior zero in {parts}")
    return parts


def parse_composition(text: str) -> Composition:
    """Parse ``"2,3,1"``; errors report the character position."""
    text = text.strip()
    if not text:
        raise CompositionError("empty composition", 0)
    parts = []
    pos = 0
    for token in text.split(","):
        stripped = token.strip()
        if not stripped.isdigit():
            raise CompositionError(f"expected a positive integer, got {stripped!r}", pos)
        if int(stripped) < 1:
            raise CompositionError("parts must be positive", pos)
        parts.append(int(stripped))
        pos += len(token) + 1
    return tuple(parts)


def format_composition(alpha: Sequence[int]) -> str:
    return ",".join(str(a) for a in alpha)


def fence_size(alpha: Sequence[int]) -> int:
    return 1 + sum(alpha)


def segment_bounds(alpha: Sequence[int], t: int) -> tuple[int, int]:
    """Element indices ``(first, last)`` of segment ``t`` (1-based) of ``F(alpha)``."""
    first = 1 + sum(alpha[: t - 1])
    return first, first + alpha[t - 1]


def compositions(total: int, max_parts: int | None = None, max_part: int | None = None):
    """All compositions of ``total`` in lexicographic order."""
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    top = total if max_part is None else min(total, max_part)
    for first in range(1, top + 1):
        rest_parts = None if max_parts is None else max_parts - 1
        for rest in compositions(total - first, rest_parts, max_part):
            yield (first,) + rest


# -- bit helpers --------------------------------------------------------------

def bit(e: int) -> int:
    return 1 << (e - 1)


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def members(mask: int) -> list[int]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


# -- posets -------------------------------------------------------------------

@dataclass(frozen=True)
class LabeledPoset:
    """A finite poset on ``1..n`` given by its cover relations, plus a labeling.

    ``covers`` holds pairs ``(lower, upper)``; ``labels[e - 1]`` is the label of
    element ``e``.  The constructor rejects cyclic or redundant cover sets.
    """

    n: int
    covers: frozenset[tuple[int, int]]
    labels: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative size")
        if sorted(self.labels) != list(range(1, self.n + 1)):
            raise ValueError(f"labels {self.labels} are not a bijection onto 1..{self.n}")
        for lo, hi in self.covers:
            if not (1 <= lo <= self.n and 1 <= hi <= self.n) or lo == hi:
                raise ValueError(f"bad cover {(lo, hi)}")
        try:
            order = self.topological_order
        except graphlib.CycleError as exc:
            raise ValueError("cover relation is cyclic") from exc
        assert len(order) == self.n
        for lo, hi in self.covers:
            # irredundant: lo must not lie below another lower cover of hi
            others = self.lower_cover_mask[hi] & ~bit(lo)
            for e in members(others):
                if self.below[e] & bit(lo):
                    raise ValueError(f"cover {(lo, hi)} is implied by transitivity")

    # derived structure -------------------------------------------------------

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        sorter = graphlib.TopologicalSorter({e: () for e in range(1, self.n + 1)})
        for lo, hi in self.covers:
            sorter.add(hi, lo)
        return tuple(sorter.static_order())

    @cached_property
    def lower_cover_mask(self) -> dict[int, int]:
        out = {e: 0 for e in range(1, self.n + 1)}
        for lo, hi in self.covers:
            out[hi] |= bit(lo)
        return out

    @cached_property
    def upper_cover_mask(self) -> dict[int, int]:
        out = {e: 0 for e in range(1, self.n + 1)}
        for lo, hi in self.covers:
            out[lo] |= bit(hi)
        return out

    @cached_property
    def below(self) -> dict[int, int]:
        """Strict down-set of each element as a mask."""
        out: dict[int, int] = {}
        for e in self.topological_order:
            m = 0
            for c in members(self.lower_cover_mask[e]):
                m |= bit(c) | out[c]
            out[e] = m
        return out

    @cached_property
    def above(self) -> dict[int, int]:
        out = {e: 0 for e in range(1, self.n + 1)}
        for e, down in self.below.items():
            for c in members(down):
                out[c] |= bit(e)
        return out

    @cached_property
    def element_of_label(self) -> tuple[int, ...]:
        inv = [0] * (self.n + 1)
        for e, lab in enumerate(self.labels, start=1):
            inv[lab] = e
        return tuple(inv)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def leq(self, x: int, y: int) -> bool:
        return x == y or bool(self.below[y] & bit(x))

    # labels and words --------------------------------------------------------

    def label(self, e: int) -> int:
        return self.labels[e - 1]

    def labels_of(self, mask: int) -> list[int]:
        return sorted(self.labels[e - 1] for e in members(mask))

    def mask_from_labels(self, labels: Iterable[int]) -> int:
        return mask_of(self.element_of_label[lab] for lab in labels)

    def word(self, mask: int) -> tuple[int, ...]:
        """Membership of ``mask`` read in label order."""
        return tuple((mask >> (self.element_of_label[lab] - 1)) & 1 for lab in range(1, self.n + 1))

    def mask_from_word(self, word: Sequence[int]) -> int:
        return self.mask_from_labels(i for i, w in enumerate(word, start=1) if w)

    def is_linear_extension(self) -> bool:
        return all(self.labels[lo - 1] < self.labels[hi - 1] for lo, hi in self.covers)

    # transformations ---------------------------------------------------------

    def relabeled(self) -> LabeledPoset:
        """The same poset with each element renamed to its label."""
        lab = self.labels
        covers = frozenset((lab[lo - 1], lab[hi - 1]) for lo, hi in self.covers)
        return LabeledPoset(self.n, covers, tuple(range(1, self.n + 1)), self.name)

    def with_labels(self, labels: Sequence[int]) -> LabeledPoset:
        return LabeledPoset(self.n, self.covers, tuple(labels), self.name)

    def induced(self, elements: Iterable[int]) -> LabeledPoset:
        """Induced subposet, renumbered ``1..k`` in increasing element order.

        Labels are renumbered preserving their relative order.
        """
        keep = sorted(set(elements))
        index = {e: i for i, e in enumerate(keep, start=1)}
        keep_mask = mask_of(keep)
        covers = set()
        for y in keep:
            strict = self.below[y] & keep_mask
            for x in members(strict):
                # x is covered by y in the induced order unless some z in between
                if not any(self.below[z] & bit(x) for z in members(strict & ~bit(x))):
                    covers.add((index[x], index[y]))
        kept_labels = sorted(self.labels[e - 1] for e in keep)
        rank = {lab: i for i, lab in enumerate(kept_labels, start=1)}
        labels = tuple(rank[self.labels[e - 1]] for e in keep)
        return LabeledPoset(len(keep), frozenset(covers), labels)

    def hasse_edges(self) -> list[tuple[int, int]]:
        return sorted(self.covers)

    def to_dot(self, use_labels: bool = False) -> str:
        name = lambda e: str(self.labels[e - 1]) if use_labels else f"x{e}"
        lines = [f'digraph "{self.name or "poset"}" {{', "  rankdir=BT;"]
        for e in range(1, self.n + 1):
            lines.append(f'  "{name(e)}";')
        for lo, hi in self.hasse_edges():
            lines.append(f'  "{name(lo)}" -> "{name(hi)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- constructors -------------------------------------------------------------

def build_fence(alpha: Iterable[int]) -> LabeledPoset:
    """The fence ``F(alpha)``: odd segments ascend, even segments descend."""
    alpha = normalize_composition(alpha)
    if alpha == (0,):
        return LabeledPoset(1, frozenset(), (1,), "F(0)")
    n = fence_size(alpha)
    covers = set()
    start = 1
    for i, part in enumerate(alpha, start=1):
        for k in range(start, start + part):
            covers.add((k, k + 1) if i % 2 else (k + 1, k))
        start += part
    return LabeledPoset(n, frozenset(covers), tuple(range(1, n + 1)), f"F({format_composition(alpha)})")


def build_d_divided(n: int, d: int) -> LabeledPoset:
    """The d-divided poset ``P_{n,d}`` on ``1..n``, labeled by its elements.

    Blocks ``kd-d+1 < ... < kd`` are chains; the bottom of each block lies
    below the top of the next block, and the bottom of the last full block
    lies below ``n`` when ``d`` does not divide ``n``.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    q, r = divmod(n, d)
    covers = set()
    blocks = [(k * d + 1, k * d + d) for k in range(q)]
    if r:
        blocks.append((q * d + 1, n))
    for lo, hi in blocks:
        covers.update((e, e + 1) for e in range(lo, hi))
    for (b0, _), (_, t1) in zip(blocks, blocks[1:]):
        covers.add((b0, t1))
    return LabeledPoset(n, frozenset(covers), tuple(range(1, n + 1)), f"P({n},{d})")


def dual(P: LabeledPoset) -> LabeledPoset:
    return LabeledPoset(P.n, frozenset((hi, lo) for lo, hi in P.covers), P.labels, P.name + "*")


def label_three_segment(a: int, b: int, c: int) -> LabeledPoset:
    """``F(a,b,c)`` with the linear-extension labeling used for frozen cores.

    The second segment minus its maximum is labeled ``1..b`` bottom to top,
    the third minus its minimum ``b+1..b+c``, the first ``b+c+1..a+b+c+1``.
    """
    if min(a, b, c) < 1:
        raise ValueError("three-segment parts must be positive")
    P = build_fence((a, b, c))
    labels = [0] * P.n
    # second segment: x_{a+b+1} (bottom) up to x_{a+2}
    for k in range(b):
        labels[a + b + 1 - k - 1] = k + 1
    for k in range(c):
        labels[a + b + 2 + k - 1] = b + 1 + k
    for k in range(a + 1):
        labels[k] = b + c + 1 + k
    return P.with_labels(labels)


# -- ideals -------------------------------------------------------------------

def is_ideal(P: LabeledPoset, S: Iterable[int] | int) -> bool:
    mask = S if isinstance(S, int) else mask_of(S)
    return all((P.lower_cover_mask[e] & ~mask) == 0 for e in members(mask))


def enumerate_ideals(P: LabeledPoset, limit: int = DEFAULT_LIMIT) -> list[int]:
    """Every order ideal of ``P`` as a bitmask, each exactly once.

    Decides membership element by element along a linear extension; an
    element may be added only once all its lower covers are present.
    """
    if P.n > limit:
        raise LimitExceeded(f"poset has {P.n} elements, limit is {limit}")
    order = P.topological_order
    need = [P.lower_cover_mask[e] for e in order]
    bits = [bit(e) for e in order]
    out = []
    stack = [(0, 0)]
    n = P.n
    while stack:
        k, mask = stack.pop()
        if k == n:
            out.append(mask)
            continue
        stack.append((k + 1, mask))
        if need[k] & ~mask == 0:
            stack.append((k + 1, mask | bits[k]))
    return out
