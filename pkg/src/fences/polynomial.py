"""Integer polynomials in q, the rank-generating-function recursions, and shape tests."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .poset import normalize_composition


class RankPolynomial:
    """A polynomial ``sum a_k q^k`` with integer coefficients, low degree first.

    Trailing zero coefficients are dropped, so the zero polynomial has no
    coefficients at all.  Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("RankPolynomial is immutable")

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> RankPolynomial:
        return cls([0] * k + [a])

    @classmethod
    def parse(cls, text: str) -> RankPolynomial:
        return cls(json.loads(text))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        if isinstance(other, RankPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (tuple, list)):
            return self.coeffs == RankPolynomial(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: RankPolynomial) -> RankPolynomial:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return RankPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __mul__(self, other):
        if isinstance(other, int):
            return RankPolynomial(a * other for a in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RankPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return RankPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> RankPolynomial:
        """Multiply by ``q**k``."""
        if not self.coeffs:
            return self
        return RankPolynomial((0,) * k + self.coeffs)

    def __call__(self, q):
        total = 0
        for a in reversed(self.coeffs):
            total = total * q + a
        return total

    def reversed(self, degree: int | None = None) -> RankPolynomial:
        """Coefficients reversed within ``degree`` (defaults to the actual degree)."""
        d = self.degree if degree is None else degree
        padded = self.coeffs + (0,) * (d + 1 - len(self.coeffs))
        return RankPolynomial(padded[::-1])

    def __repr__(self):
        return f"RankPolynomial({list(self.coeffs)})"

    def __str__(self):
        return "[" + ",".join(str(a) for a in self.coeffs) + "]"


Q = RankPolynomial([0, 1])
ONE = RankPolynomial([1])


def q_integer(n: int) -> RankPolynomial:
    """``[n]_q = 1 + q + ... + q^(n-1)``; ``[0]_q`` is zero."""
    if n < 0:
        raise ValueError("q-integers are defined for n >= 0")
    return RankPolynomial([1] * n)


# -- rank generating functions ------------------------------------------------

def rank_poly_recursive(alpha: Sequence[int]) -> RankPolynomial:
    """``r(q; alpha)`` by toggling on the last element of the fence."""
    return _rank_poly(normalize_composition(alpha))


@lru_cache(maxsize=None)
def _rank_poly(alpha: tuple[int, ...]) -> RankPolynomial:
    s = len(alpha)
    if s == 1:
        return q_integer(alpha[0] + 2)
    head, prev, last = alpha[:-2], alpha[-2], alpha[-1]
    shorter = _rank_poly(normalize_composition(alpha[:-1] + (last - 1,)))
    cut = _rank_poly(normalize_composition(head + (prev - 1,)))
    if s % 2:
        return shorter + cut.shift(last + 1)
    return cut + shorter.shift(1)


def recursion_summands(alpha: Sequence[int]) -> tuple[RankPolynomial, RankPolynomial] | None:
    """The two terms the recursion adds for ``alpha`` (``None`` for one segment)."""
    alpha = normalize_composition(alpha)
    if len(alpha) == 1:
        return None
    head, prev, last = alpha[:-2], alpha[-2], alpha[-1]
    shorter = rank_poly_recursive(alpha[:-1] + (last - 1,))
    cut = rank_poly_recursive(head + (prev - 1,))
    if len(alpha) % 2:
        return shorter, cut.shift(last + 1)
    return cut, shorter.shift(1)


def rank_poly_explicit(alpha: Sequence[int]) -> RankPolynomial:
    """``r(q; alpha)`` for an odd number of parts as a sum over sets of maxima.

    With ``u = (s + 1) / 2`` maxima ``z_1..z_u``, each subset ``Z`` contributes
    ``q^|Z|`` times a product of one factor per valley between consecutive
    maxima (plus the initial run before ``z_1``).
    """
    alpha = normalize_composition(alpha)
    s = len(alpha)
    if s % 2 == 0:
        raise ValueError("the explicit formula needs an odd number of parts")
    u = (s + 1) // 2
    a = (None,) + alpha  # 1-based
    total = RankPolynomial()
    for chosen in itertools.product((False, True), repeat=u):
        term = RankPolynomial.monomial(sum(chosen))
        term = term * (RankPolynomial.monomial(a[1]) if chosen[0] else q_integer(a[1] + 1))
        for i in range(2, u + 1):
            left, right = a[2 * i - 2], a[2 * i - 1]
            prev_in, cur_in = chosen[i - 2], chosen[i - 1]
            if prev_in and cur_in:
                factor = RankPolynomial.monomial(left + right - 1)
            elif prev_in:
                factor = q_integer(right).shift(left)
            elif cur_in:
                factor = q_integer(left).shift(right)
            else:
                factor = ONE + (q_integer(left) * q_integer(right)).shift(1)
            term = term * factor
        total = total + term
    return total


# -- maxima and shapes --------------------------------------------------------

def maxima_indices(f: RankPolynomial | Sequence[int]) -> frozenset[int]:
    coeffs = tuple(f)
    if not any(coeffs):
        raise ValueError("the zero polynomial has no maxima")
    top = max(coeffs)
    return frozenset(k for k, a in enumerate(coeffs) if a == top)


def as_interval(indices: Iterable[int]) -> tuple[int, int] | None:
    """``(lo, hi)`` if ``indices`` is a nonempty run of consecutive integers."""
    idx = sorted(indices)
    if idx and idx[-1] - idx[0] == len(idx) - 1:
        return idx[0], idx[-1]
    return None


def is_unimodal(seq: Sequence[int]) -> bool:
    k = 0
    n = len(seq)
    while k + 1 < n and seq[k] <= seq[k + 1]:
        k += 1
    while k + 1 < n and seq[k] >= seq[k + 1]:
        k += 1
    return k >= n - 1


def unimodality_dips(seq: Sequence[int]) -> list[int]:
    """Indices ``k`` where the sequence rises again after having fallen."""
    dips = []
    fallen = False
    for k in range(1, len(seq)):
        if seq[k] < seq[k - 1]:
            fallen = True
        elif seq[k] > seq[k - 1] and fallen:
            dips.append(k)
    return dips


def _interleaved(seq: Sequence[int], start_low: bool) -> list[int]:
    lo, hi = 0, len(seq) - 1
    out = []
    take_low = start_low
    while lo <= hi:
        if take_low:
            out.append(seq[lo])
            lo += 1
        else:
            out.append(seq[hi])
            hi -= 1
        take_low = not take_low
    return out


def _nondecreasing(xs: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(xs, xs[1:]))


@dataclass(frozen=True)
class Shape:
    unimodal: bool
    symmetric: bool
    top_heavy: bool
    bottom_heavy: bool
    top_interlacing: bool
    bottom_interlacing: bool

    def classify(self) -> str | None:
        """Symmetric first, then top/bottom interlacing, else ``None``."""
        if self.symmetric:
            return "symmetric"
        if self.top_interlacing:
            return "top_interlacing"
        if self.bottom_interlacing:
            return "bottom_interlacing"
        return None


def shape_classify(f: RankPolynomial | Sequence[int]) -> Shape:
    a = tuple(f)
    n = len(a) - 1
    half = [k for k in range(len(a)) if 2 * k < n]
    return Shape(
        unimodal=is_unimodal(a),
        symmetric=all(a[k] == a[n - k] for k in half),
        top_heavy=all(a[k] <= a[n - k] for k in half),
        bottom_heavy=all(a[k] >= a[n - k] for k in half),
        # a_0 <= a_n <= a_1 <= a_{n-1} <= ... and its mirror image
        top_interlacing=_nondecreasing(_interleaved(a, True)),
        bottom_interlacing=_nondecreasing(_interleaved(a, False)),
    )


class MiAddition(NamedTuple):
    applicable: bool
    holds: bool
    reason: str = ""


def check_mi_addition(f: RankPolynomial, g: RankPolynomial) -> MiAddition:
    """Whether ``f + g`` is unimodal with maxima set ``mi(f) & mi(g)``.

    Only meaningful when both summands are unimodal with overlapping maxima;
    otherwise the result is reported as not applicable.
    """
    if not (is_unimodal(tuple(f)) and is_unimodal(tuple(g))):
        return MiAddition(False, False, "a summand is not unimodal")
    common = maxima_indices(f) & maxima_indices(g)
    if not common:
        return MiAddition(False, False, "maxima sets are disjoint")
    total = f + g
    ok = is_unimodal(tuple(total)) and maxima_indices(total) == common
    return MiAddition(True, ok, "" if ok else f"sum {total} has maxima {sorted(maxima_indices(total))}")


def predicted_maxima_interval(alpha: Sequence[int]) -> tuple[int, int] | None:
    """Maxima interval forced by a weakly dominant first or last part.

    A first part at least the sum of the rest gives ``[rest, alpha_1]``; a
    dominant last part gives the same interval for the reversed composition,
    reflected inside ``[0, n]`` when the number of parts is odd.  A single
    segment is a chain, whose lattice has every rank of size one.
    """
    alpha = normalize_composition(alpha)
    s = len(alpha)
    n = 1 + sum(alpha)
    if s == 1:
        return 0, n
    rest_first = sum(alpha[1:])
    if alpha[0] >= rest_first:
        return rest_first, alpha[0]
    rest_last = sum(alpha[:-1])
    if alpha[-1] >= rest_last:
        if s % 2 == 0:
            return rest_last, alpha[-1]
        return n - alpha[-1], n - rest_last
    return None
