"""Degree sequences: parsing, rendering, graphicality and the degree conditions.

All public indices are 1-based, so ``seq.d(1)`` is the largest term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Sequence

from .errors import PreconditionError, SequenceFormatError

__all__ = [
    "DegreeSequence",
    "parse_sequence",
    "render_sequence",
    "f_index",
    "is_graphic",
    "is_graphic_full",
    "erdos_gallai_holds",
    "lay_off",
    "lay_off_positions",
    "check_posa",
    "check_dirac",
    "posa_violation",
]


@dataclass(frozen=True)
class DegreeSequence:
    """A non-increasing sequence of nonnegative integers."""

    terms: tuple[int, ...]

    def __post_init__(self):
        terms = tuple(int(t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        if any(t < 0 for t in terms):
            raise ValueError(f"negative term in {terms}")
        if any(a < b for a, b in zip(terms, terms[1:])):
            raise ValueError(f"terms must be non-increasing: {terms}")

    @classmethod
    def from_terms(cls, terms: Iterable[int]) -> "DegreeSequence":
        """Sort ``terms`` non-increasing and wrap them."""
        return cls(tuple(sorted((int(t) for t in terms), reverse=True)))

    @property
    def n(self) -> int:
        return len(self.terms)

    @property
    def sigma(self) -> int:
        return sum(self.terms)

    @property
    def even(self) -> bool:
        return self.sigma % 2 == 0

    def d(self, i: int) -> int:
        """Term ``d_i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"index {i} outside 1..{self.n}")
        return self.terms[i - 1]

    def in_ns(self) -> bool:
        """Membership in NS_n: largest term at most n - 1."""
        return self.n == 0 or self.terms[0] <= self.n - 1

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.terms)

    def __str__(self):
        return render_sequence(self)


_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_sequence(text: str) -> DegreeSequence:
    """Parse comma-separated ``d`` / ``d^y`` items into a sorted sequence.

    >>> parse_sequence("4^4,3^2,2^2").terms
    (4, 4, 4, 4, 3, 3, 2, 2)
    """
    cleaned = re.sub(r"\s+", "", text or "")
    if cleaned.startswith("(") and cleaned.endswith(")"):
        cleaned = cleaned[1:-1]
    if not cleaned:
        raise SequenceFormatError("empty sequence")
    terms: list[int] = []
    for token in cleaned.split(","):
        if token.startswith("-"):
            raise SequenceFormatError(f"negative value in token {token!r}")
        match = _TOKEN.match(token)
        if match is None:
            raise SequenceFormatError(f"malformed token {token!r}")
        value = int(match.group(1))
        count = int(match.group(2)) if match.group(2) is not None else 1
        if count < 1:
            raise SequenceFormatError(f"run length must be >= 1 in {token!r}")
        terms.extend([value] * count)
    return DegreeSequence.from_terms(terms)


def render_sequence(seq: DegreeSequence | Sequence[int]) -> str:
    """Canonical run-length text, runs in decreasing value order."""
    terms = sorted(seq.terms if isinstance(seq, DegreeSequence) else seq, reverse=True)
    parts = []
    for value, run in groupby(terms):
        count = len(list(run))
        parts.append(str(value) if count == 1 else f"{value}^{count}")
    return ",".join(parts)


def f_index(seq: DegreeSequence) -> int:
    """max{i : d_i >= i}, 0 when no such i exists."""
    best = 0
    for i, d in enumerate(seq.terms, start=1):
        if d >= i:
            best = i
        else:
            break
    return best


def erdos_gallai_holds(terms: Sequence[int], t: int) -> bool:
    """The Erdos-Gallai inequality at index ``t`` for sorted ``terms``."""
    lhs = sum(terms[:t])
    rhs = t * (t - 1) + sum(min(t, d) for d in terms[t:])
    return lhs <= rhs


def _basic_reject(seq: DegreeSequence) -> bool:
    return seq.sigma % 2 == 1 or (seq.n > 0 and seq.terms[0] > seq.n - 1)


def is_graphic(seq: DegreeSequence) -> bool:
    """Erdos-Gallai test, checking only t <= f(seq)."""
    if _basic_reject(seq):
        return False
    terms = seq.terms
    return all(erdos_gallai_holds(terms, t) for t in range(1, f_index(seq) + 1))


def is_graphic_full(seq: DegreeSequence) -> bool:
    """Erdos-Gallai test over every t in 1..n-1 (no cutoff)."""
    if _basic_reject(seq):
        return False
    terms = seq.terms
    return all(erdos_gallai_holds(terms, t) for t in range(1, seq.n))


def lay_off_positions(seq: DegreeSequence, k: int) -> list[int]:
    """Positions (1-based, in ``seq``) decremented when laying off ``d_k``.

    Among equal values the leftmost occurrences are chosen.
    """
    if not 1 <= k <= seq.n:
        raise PreconditionError(f"k={k} outside 1..{seq.n}")
    dk = seq.d(k)
    if dk > seq.n - 1:
        raise PreconditionError(f"cannot lay off d_{k}={dk} with only {seq.n - 1} other terms")
    others = [i for i in range(1, seq.n + 1) if i != k]
    return others[:dk]


def lay_off(seq: DegreeSequence, k: int) -> DegreeSequence:
    """Residual sequence: delete d_k, decrement the d_k largest remaining terms."""
    dec = set(lay_off_positions(seq, k))
    rest = [d - (1 if i in dec else 0) for i, d in enumerate(seq.terms, start=1) if i != k]
    if rest and min(rest) < 0:
        raise PreconditionError(f"laying off d_{k} of ({seq}) decrements a zero term")
    return DegreeSequence.from_terms(rest)


def _check_l(seq: DegreeSequence, ell: int):
    if ell < 5:
        raise PreconditionError(f"l={ell} < 5")
    if ell > seq.n:
        raise PreconditionError(f"l={ell} exceeds n={seq.n}")


def posa_violation(seq: DegreeSequence, ell: int) -> int | None:
    """Smallest i with d_{l+1-i} < i+1, or None when the Posa-type condition holds.

    Works for any l >= 3 with l <= n; ``check_posa`` adds the l >= 5 guard.
    """
    if ell > seq.n:
        raise PreconditionError(f"l={ell} exceeds n={seq.n}")
    for i in range(1, (ell + 1) // 2):
        if seq.d(ell + 1 - i) < i + 1:
            return i
    return None


def check_posa(seq: DegreeSequence, ell: int) -> bool:
    """d_{l+1-i} >= i+1 for i = 1..ceil(l/2)-1."""
    _check_l(seq, ell)
    return posa_violation(seq, ell) is None


def check_dirac(seq: DegreeSequence, ell: int) -> bool:
    """d_l >= ceil(l/2)."""
    _check_l(seq, ell)
    return seq.d(ell) >= (ell + 1) // 2
