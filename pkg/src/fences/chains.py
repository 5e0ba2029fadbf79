"""Chain decompositions of ideal lattices: data model, validation, small search.

A chain is a tuple of ideal bitmasks ``I_0 < I_1 < ... < I_k`` each covering
the previous one.  Centers are kept doubled (``rk I_0 + rk I_k``) so all
arithmetic stays integral.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .lattice import IdealLattice, rank_sequence
from .polynomial import is_unimodal
from .poset import LabeledPoset

Chain = tuple[int, ...]

CENTERED_SUMS = {
    "symmetric": (0,),
    "top_centered": (0, 1),
    "bottom_centered": (0, -1),
}


def interval(chain: Chain) -> tuple[int, int]:
    return chain[0].bit_count(), chain[-1].bit_count()


def doubled_center(chain: Chain) -> int:
    lo, hi = interval(chain)
    return lo + hi


def is_nested(intervals: Sequence[tuple[int, int]]) -> bool:
    # sort by length descending; each interval must sit inside all longer ones
    spans = sorted(set(intervals), key=lambda iv: iv[0] - iv[1])
    for i, (lo, hi) in enumerate(spans):
        for lo2, hi2 in spans[:i]:
            if not (lo2 <= lo and hi <= hi2):
                return False
    return True


def classify_chains(n: int, chains: Sequence[Chain]) -> str:
    """``symmetric`` > ``top_centered`` > ``bottom_centered`` > ``nested`` > ``plain``."""
    sums = {doubled_center(c) for c in chains}
    if sums <= {n}:
        return "symmetric"
    if sums <= {n, n + 1}:
        return "top_centered"
    if sums <= {n, n - 1}:
        return "bottom_centered"
    if is_nested([interval(c) for c in chains]):
        return "nested"
    return "plain"


@dataclass(frozen=True)
class ChainDecomposition:
    """Chains of ideals of ``poset`` (bitmasks over its elements)."""

    poset: LabeledPoset
    chains: tuple[Chain, ...]
    construction: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return self.poset.n

    @cached_property
    def classification(self) -> str:
        return classify_chains(self.n, self.chains)

    @property
    def is_nested(self) -> bool:
        return self.classification != "plain"

    def is_type(self, kind: str) -> bool:
        """Whether every chain has a center allowed for ``kind``."""
        allowed = {self.n + d for d in CENTERED_SUMS[kind]}
        return all(doubled_center(c) in allowed for c in self.chains)

    def intervals(self) -> list[tuple[int, int]]:
        return [interval(c) for c in self.chains]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "classification": self.classification,
            "chains": [[self.poset.labels_of(I) for I in chain] for chain in self.chains],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


@dataclass
class CDReport:
    partition: bool
    saturated: bool
    nested: bool
    symmetric: bool
    top_centered: bool
    bottom_centered: bool
    implications: bool
    classification: str
    violations: list[str]

    @property
    def valid(self) -> bool:
        return self.partition and self.saturated and self.implications

    def to_dict(self) -> dict:
        return dict(self.__dict__, valid=self.valid)


def validate_cd(L: IdealLattice, cd: ChainDecomposition) -> CDReport:
    """Check that ``cd`` partitions ``L`` into saturated chains and classify it.

    Also confirms, on this instance, that a centered decomposition is nested
    and that a nested one forces a unimodal rank sequence.
    """
    violations = []
    seen: dict[int, int] = {}
    saturated = True
    for ci, chain in enumerate(cd.chains):
        if not chain:
            violations.append(f"chain {ci} is empty")
            saturated = False
            continue
        for I in chain:
            if I not in L:
                violations.append(f"chain {ci}: {cd.poset.labels_of(I)} is not an ideal")
                saturated = False
            if I in seen:
                violations.append(f"ideal {cd.poset.labels_of(I)} in chains {seen[I]} and {ci}")
            seen[I] = ci
        for I, J in zip(chain, chain[1:]):
            if I in L and J not in L.covers_up[I]:
                violations.append(
                    f"chain {ci}: {cd.poset.labels_of(J)} does not cover {cd.poset.labels_of(I)}"
                )
                saturated = False
    missing = [I for I in L.ideals if I not in seen]
    for I in missing:
        violations.append(f"ideal {cd.poset.labels_of(I)} not covered")
    partition = not missing and sum(len(c) for c in cd.chains) == len(L.ideals) == len(seen)

    n = L.n
    sums = {doubled_center(c) for c in cd.chains if c}
    nested = is_nested([interval(c) for c in cd.chains if c])
    symmetric = sums <= {n}
    top = sums <= {n, n + 1}
    bottom = sums <= {n, n - 1}
    implications = True
    if (top or bottom) and not nested:
        implications = False
        violations.append("centered decomposition is not nested")
    if partition and saturated and nested and not is_unimodal(rank_sequence(L)):
        implications = False
        violations.append("nested decomposition but rank sequence not unimodal")
    return CDReport(
        partition=partition,
        saturated=saturated,
        nested=nested,
        symmetric=symmetric,
        top_centered=top,
        bottom_centered=bottom,
        implications=implications,
        classification=classify_chains(n, [c for c in cd.chains if c]),
        violations=violations,
    )


def search_centered_cd(L: IdealLattice, kind: str, max_ideals: int = 200) -> ChainDecomposition | None:
    """Exhaustive backtracking search for a CD of the given centered ``kind``.

    The lowest-rank uncovered ideal must start a chain, and a centered chain
    starting at rank ``k`` can only end at one or two ranks, which keeps the
    search small on tiny lattices.
    """
    if len(L) > max_ideals:
        raise ValueError(f"lattice has {len(L)} ideals; search is limited to {max_ideals}")
    n = L.n
    ends_for = [[s + n - k for s in CENTERED_SUMS[kind] if k <= s + n - k <= n] for k in range(n + 1)]
    order = list(L.ideals)
    free = set(order)
    chains: list[Chain] = []

    def paths(start: int, length: int):
        if length == 0:
            yield (start,)
            return
        for J in L.covers_up[start]:
            if J in free:
                for rest in paths(J, length - 1):
                    yield (start,) + rest

    def solve(pos: int) -> bool:
        while pos < len(order) and order[pos] not in free:
            pos += 1
        if pos == len(order):
            return True
        I = order[pos]
        k = I.bit_count()
        free.discard(I)
        for end in ends_for[k]:
            for chain in paths(I, end - k):
                for J in chain[1:]:
                    free.discard(J)
                chains.append(chain)
                if solve(pos + 1):
                    return True
                chains.pop()
                for J in chain[1:]:
                    free.add(J)
        free.add(I)
        return False

    if solve(0):
        return ChainDecomposition(L.poset, tuple(chains), f"search:{kind}")
    return None
