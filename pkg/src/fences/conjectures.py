"""Executable versions of the unimodality, interlacing and chain-decomposition conjectures."""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Iterator, Sequence

from .chains import ChainDecomposition, search_centered_cd, validate_cd
from .constructions import (
    cd_three_segment,
    cd_two_segment,
    d_divided_fence_cd,
    d_divided_parameters,
    lex_cd,
    lift_ncd,
    seed_for_lift,
    trivial_cd,
)
from .lattice import build_lattice
from .polynomial import rank_poly_recursive, shape_classify, unimodality_dips
from .poset import (
    DEFAULT_LIMIT,
    LimitExceeded,
    build_fence,
    compositions,
    fence_size,
    normalize_composition,
)

SHAPES = ("symmetric", "top_interlacing", "bottom_interlacing", "all_ones")
SWAP = {"symmetric": "symmetric", "top_interlacing": "bottom_interlacing", "bottom_interlacing": "top_interlacing"}
CD_KIND = {
    "symmetric": "symmetric",
    "all_ones": "symmetric",
    "top_interlacing": "top_centered",
    "bottom_interlacing": "bottom_centered",
}


@dataclass
class ConjectureReport:
    target: str
    instance: Any
    verdict: str  # pass | fail | inconclusive
    witness: Any = None
    detail: dict = field(default_factory=dict)

    @property
    def key(self):
        return (self.target, _instance_key(self.instance))

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"), sort_keys=True)


def _instance_key(instance):
    if isinstance(instance, (list, tuple)):
        return (len(instance), tuple(instance))
    return (0, (instance,))


def predict_shape(alpha: Sequence[int]) -> str:
    """Shape the interlacing conjecture predicts for ``r(alpha)``."""
    alpha = normalize_composition(alpha)
    s = len(alpha)
    if s == 1:
        return "all_ones"
    if s % 2 == 0:
        return "bottom_interlacing"
    if alpha[0] > alpha[-1]:
        return "bottom_interlacing"
    if alpha[0] < alpha[-1]:
        return "top_interlacing"
    inner = predict_shape(alpha[1:-1])
    return SWAP["symmetric" if inner == "all_ones" else inner]


def _holds(shape: str, ranks: Sequence[int]) -> bool:
    flags = shape_classify(ranks)
    if shape == "all_ones":
        return all(r == 1 for r in ranks)
    return getattr(flags, shape)


def check_heavy(alpha: Sequence[int]) -> ConjectureReport:
    alpha = normalize_composition(alpha)
    ranks = rank_poly_recursive(alpha).coeffs
    predicted = predict_shape(alpha)
    observed = shape_classify(ranks).classify()
    ok = _holds(predicted, ranks)
    return ConjectureReport(
        "heavy",
        list(alpha),
        "pass" if ok else "fail",
        list(ranks),
        {"predicted": predicted, "observed": observed},
    )


def check_mgo(alpha: Sequence[int]) -> ConjectureReport:
    alpha = normalize_composition(alpha)
    ranks = rank_poly_recursive(alpha).coeffs
    dips = unimodality_dips(ranks)
    if dips:
        return ConjectureReport("mgo", list(alpha), "fail", {"ranks": list(ranks), "dips": dips})
    return ConjectureReport("mgo", list(alpha), "pass", None, {"ranks": list(ranks)})


# -- centered decompositions --------------------------------------------------

def _basic_construction(alpha: tuple[int, ...], limit: int) -> ChainDecomposition | None:
    s = len(alpha)
    if s == 1:
        return trivial_cd(alpha)
    if s == 2:
        return cd_two_segment(*alpha)
    if s == 3:
        return cd_three_segment(*alpha, limit=limit)
    if d_divided_parameters(alpha) is not None:
        return d_divided_fence_cd(alpha, limit)
    return None


def construct_centered_cd(
    alpha: Sequence[int], kind: str, limit: int = DEFAULT_LIMIT, search_limit: int = 200
) -> ChainDecomposition | None:
    """A decomposition of ``L(alpha)`` from the first construction that applies.

    Tries the one-, two- and three-segment and d-divided constructions, then
    stretches a dominant segment from a smaller seed, and finally the
    lexicographic decomposition under the natural labeling (kept only if it
    turns out centered of the requested ``kind``).
    """
    alpha = normalize_composition(alpha)
    cd = _basic_construction(alpha, limit)
    if cd is not None:
        return cd
    lifted = seed_for_lift(alpha)
    if lifted is not None:
        seed, t, steps = lifted
        base = _basic_construction(seed, limit)
        if base is None:
            L = build_lattice(build_fence(seed), limit)
            if len(L) <= search_limit:
                base = search_centered_cd(L, kind, search_limit)
        if base is not None and base.is_nested:
            cur = seed
            for _ in range(steps):
                base = lift_ncd(cur, t, base, limit)
                cur = cur[: t - 1] + (cur[t - 1] + 1,) + cur[t:]
            return base
    cd = lex_cd(build_fence(alpha), limit=limit)
    return cd if cd.is_type(kind) else None


def check_centered(
    alpha: Sequence[int], strategy: str = "construct", limit: int = DEFAULT_LIMIT, search_limit: int = 200
) -> ConjectureReport:
    """Look for a centered decomposition of the type the interlacing conjecture predicts.

    ``construct`` never fails merely because no construction applies; that
    case is reported as inconclusive.  ``search`` is exhaustive on lattices
    with at most ``search_limit`` ideals.
    """
    alpha = normalize_composition(alpha)
    kind = CD_KIND[predict_shape(alpha)]
    L = build_lattice(build_fence(alpha), limit)
    if strategy == "construct":
        cd = construct_centered_cd(alpha, kind, limit, search_limit)
        if cd is None:
            return ConjectureReport("centered", list(alpha), "inconclusive", None, {"kind": kind, "reason": "no construction applies"})
    elif strategy == "search":
        if len(L) > search_limit:
            return ConjectureReport("centered", list(alpha), "inconclusive", None, {"kind": kind, "reason": f"{len(L)} ideals exceed search limit"})
        cd = search_centered_cd(L, kind, search_limit)
        if cd is None:
            return ConjectureReport("centered", list(alpha), "fail", {"kind": kind, "ranks": [len(r) for r in L.by_rank]})
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    report = validate_cd(L, cd)
    detail = {"kind": kind, "construction": cd.construction, "classification": report.classification}
    if report.valid and cd.is_type(kind):
        return ConjectureReport("centered", list(alpha), "pass", None, detail)
    return ConjectureReport("centered", list(alpha), "fail", {"cd": cd.to_dict(), "violations": report.violations}, detail)


# -- lexicographic decompositions --------------------------------------------

def linear_extension_labelings(P) -> Iterator[tuple[int, ...]]:
    """Every labeling of ``P`` that is a linear extension, natural order first."""
    n = P.n
    lower = P.lower_cover_mask

    def extend(placed: int, order: list[int]):
        if len(order) == n:
            labels = [0] * n
            for lab, e in enumerate(order, start=1):
                labels[e - 1] = lab
            yield tuple(labels)
            return
        for e in range(1, n + 1):
            b = 1 << (e - 1)
            if not placed & b and lower[e] & ~placed == 0:
                order.append(e)
                yield from extend(placed | b, order)
                order.pop()

    yield from extend(0, [])


LEX_SCOPE_LIMITS = {"natural": DEFAULT_LIMIT, "linear_extensions": 10, "all": 8}


def check_lex_conjecture(alpha: Sequence[int], labeling_scope: str = "all", order: str = "sorted") -> ConjectureReport:
    """Whether some labeling in scope makes the lexicographic CD nested.

    Only ``all`` labelings can refute the conjecture; an exhausted narrower
    scope is inconclusive.
    """
    alpha = normalize_composition(alpha)
    F = build_fence(alpha)
    if labeling_scope not in LEX_SCOPE_LIMITS:
        raise ValueError(f"unknown labeling scope {labeling_scope!r}")
    if F.n > LEX_SCOPE_LIMITS[labeling_scope]:
        raise LimitExceeded(f"scope {labeling_scope!r} allows at most {LEX_SCOPE_LIMITS[labeling_scope]} elements")
    L = build_lattice(F)
    if labeling_scope == "natural":
        labelings: Iterable[tuple[int, ...]] = [F.labels]
    elif labeling_scope == "linear_extensions":
        labelings = linear_extension_labelings(F)
    else:
        labelings = itertools.permutations(range(1, F.n + 1))
    tried = 0
    for labels in labelings:
        tried += 1
        cd = lex_cd(F.with_labels(labels), order, lattice=L)
        if cd.is_nested:
            return ConjectureReport(
                "lex",
                list(alpha),
                "pass",
                {"labels": list(labels), "cd": cd.to_dict()},
                {"scope": labeling_scope, "tried": tried},
            )
    verdict = "fail" if labeling_scope == "all" else "inconclusive"
    return ConjectureReport("lex", list(alpha), verdict, {"tried": tried} if verdict == "fail" else None, {"scope": labeling_scope, "tried": tried})


# -- sweeps -------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    """Compositions to sweep and the checks to run on each.

    ``max_n`` (fence size) replaces the segment/part bounds when given.
    ``checks`` entries: ``mgo``, ``heavy``, ``centered`` (or
    ``centered:search``), ``lex`` (scope taken from ``lex_scope``).
    """

    max_segments: int = 3
    max_part: int = 4
    checks: tuple[str, ...] = ("mgo", "heavy")
    min_segments: int = 1
    max_n: int | None = None
    lex_scope: str = "all"
    resume_after: tuple[int, ...] | None = None
    jobs: int = 1

    def instances(self) -> list[tuple[int, ...]]:
        if self.max_n is not None:
            out = [a for total in range(1, self.max_n) for a in compositions(total)]
            out = [a for a in out if self.min_segments <= len(a)]
        else:
            out = [
                a
                for s in range(self.min_segments, self.max_segments + 1)
                for a in itertools.product(range(1, self.max_part + 1), repeat=s)
            ]
        out.sort(key=lambda a: (len(a), a) if self.max_n is None else (fence_size(a), a))
        if self.resume_after is not None:
            key = _sweep_key(self, tuple(self.resume_after))
            out = [a for a in out if _sweep_key(self, a) > key]
        return out


def _sweep_key(spec: FamilySpec, alpha: tuple[int, ...]):
    return (len(alpha), alpha) if spec.max_n is None else (fence_size(alpha), alpha)


def run_check(name: str, alpha: Sequence[int], lex_scope: str = "all") -> ConjectureReport:
    if name == "mgo":
        return check_mgo(alpha)
    if name == "heavy":
        return check_heavy(alpha)
    if name in ("centered", "centered:construct"):
        return check_centered(alpha, "construct")
    if name == "centered:search":
        return check_centered(alpha, "search")
    if name == "lex":
        return check_lex_conjecture(alpha, lex_scope)
    raise ValueError(f"unknown check {name!r}")


def _run_instance(args) -> list[ConjectureReport]:
    alpha, checks, lex_scope = args
    return [run_check(name, alpha, lex_scope) for name in checks]


def sweep(spec: FamilySpec) -> list[ConjectureReport]:
    """Run every check on every instance; results ordered by instance then check."""
    work = [(a, spec.checks, spec.lex_scope) for a in spec.instances()]
    if spec.jobs > 1:
        with ProcessPoolExecutor(spec.jobs) as pool:
            batches = list(pool.map(_run_instance, work, chunksize=max(1, len(work) // (4 * spec.jobs))))
    else:
        batches = [_run_instance(w) for w in work]
    order = {name: i for i, name in enumerate(spec.checks)}
    reports = [r for batch in batches for r in batch]
    reports.sort(key=lambda r: (_sweep_key(spec, tuple(r.instance)), order.get(r.target, 0)))
    return reports


def summarize(reports: Iterable[ConjectureReport]) -> dict:
    counts: dict[str, dict[str, int]] = {}
    failures = []
    for r in reports:
        counts.setdefault(r.target, {"pass": 0, "fail": 0, "inconclusive": 0})[r.verdict] += 1
        if r.verdict == "fail":
            failures.append({"target": r.target, "instance": r.instance, "witness": r.witness})
    return {"counts": counts, "failures": failures, "ok": not failures}


def estimated_ideal_count(alpha: Sequence[int]) -> int:
    return rank_poly_recursive(alpha)(1)


__all__ = [
    "ConjectureReport",
    "FamilySpec",
    "check_centered",
    "check_heavy",
    "check_lex_conjecture",
    "check_mgo",
    "construct_centered_cd",
    "estimated_ideal_count",
    "linear_extension_labelings",
    "predict_shape",
    "run_check",
    "summarize",
    "sweep",
]
