"""Potential numbers sigma(C_l, n), the sequences that make them tight, and
the sum bound that proves the upper side.

m is derived from l internally: l = 2m+1 for odd l and l = 2m+2 for even l
in the potential-number formulas, while the sharpness templates use the
other split, l = 2m or l = 2m+1.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable

from .errors import LemmaContradiction, PreconditionError
from .seqcore import DegreeSequence, is_graphic, posa_violation

__all__ = [
    "CLIQUE_CORNER",
    "SPLIT_CORNER",
    "PotentialNumberQuery",
    "sigma_potential",
    "branch_values",
    "extremal_non_3cl_sequence",
    "non_3cl_indices",
    "extremal_non_cl_sequences",
    "extremal_witnesses",
    "sum_bound",
    "sum_bound_poly",
    "sigma_table",
    "sigma_csv",
]

CLIQUE_CORNER = "clique-corner"
SPLIT_CORNER = "split-corner"


@dataclass(frozen=True)
class PotentialNumberQuery:
    ell: int
    n: int
    value: int
    dominant_branch: str

    def to_dict(self) -> dict:
        return {"l": self.ell, "n": self.n, "sigma": self.value, "branch": self.dominant_branch}


def _half(ell: int) -> int:
    """m with l = 2m+1 (odd) or l = 2m+2 (even)."""
    return (ell - 1) // 2 if ell % 2 else (ell - 2) // 2


def _check_range(ell: int, n: int):
    if ell < 5:
        raise PreconditionError(f"l={ell} < 5: no potential-number formula")
    if n < ell:
        raise PreconditionError(f"n={n} < l={ell}")


def branch_values(ell: int, n: int) -> dict[str, int]:
    """The two expressions inside the max, before the final +2."""
    _check_range(ell, n)
    m = _half(ell)
    if ell % 2:
        return {CLIQUE_CORNER: 2 * n + 4 * m * m - 6 * m, SPLIT_CORNER: m * (2 * n - m - 1)}
    return {CLIQUE_CORNER: 2 * n + 4 * m * m - 2 * m - 2, SPLIT_CORNER: m * (2 * n - m - 1) + 2}


def sigma_potential(ell: int, n: int) -> PotentialNumberQuery:
    """sigma(C_l, n): the least even s such that every graphic sequence on n
    terms with sum >= s is potentially C_l-graphic.  Ties go to clique-corner."""
    vals = branch_values(ell, n)
    clique, split = vals[CLIQUE_CORNER], vals[SPLIT_CORNER]
    branch = CLIQUE_CORNER if clique >= split else SPLIT_CORNER
    return PotentialNumberQuery(ell, n, max(clique, split) + 2, branch)


def non_3cl_indices(ell: int) -> range:
    """Valid i for the sharpness templates: 1 <= i <= ceil(l/2) - 1."""
    return range(1, (ell + 1) // 2)


def extremal_non_3cl_sequence(ell: int, i: int, n: int) -> DegreeSequence:
    """Graphic sequence failing the Posa-type condition by one at d_{l+1-i}."""
    if ell < 5:
        raise PreconditionError(f"l={ell} < 5")
    if i not in non_3cl_indices(ell):
        raise PreconditionError(f"i={i} outside 1..{(ell + 1) // 2 - 1}")
    m = ell // 2
    if ell % 2 == 0:
        runs = [(n - 1, i), (2 * m - i - 1, m - i), (m, m - i), (i, n - 2 * m + i)]
    else:
        runs = [(n - 1, i), (2 * m - i, m - i + 1), (m + 1, m - i), (i, n - 2 * m + i - 1)]
    if any(count < 0 for _, count in runs):
        raise PreconditionError(f"negative run length for l={ell}, i={i}, n={n}")
    terms = [value for value, count in runs for _ in range(count)]
    if terms and max(terms) != n - 1:
        raise PreconditionError(f"n={n} too small for l={ell}, i={i}")
    seq = DegreeSequence.from_terms(terms)
    if not is_graphic(seq):
        raise LemmaContradiction(f"sharpness template {seq} for l={ell}, i={i} is not graphic")
    return seq


def extremal_witnesses(ell: int, n: int) -> list[tuple[str, DegreeSequence]]:
    """Lower-bound witnesses tagged with the branch each one realizes."""
    _check_range(ell, n)
    m = _half(ell)
    clique = [n - 1] + [ell - 2] * (ell - 2) + [1] * (n - ell + 1)
    if ell % 2:
        split = [n - 1] * m + [m] * (n - m)
    else:
        split = [n - 1] * m + [m + 1] * 2 + [m] * (n - m - 2)
    return [(CLIQUE_CORNER, DegreeSequence.from_terms(clique)),
            (SPLIT_CORNER, DegreeSequence.from_terms(split))]


def extremal_non_cl_sequences(ell: int, n: int) -> list[DegreeSequence]:
    return [seq for _, seq in extremal_witnesses(ell, n)]


def sum_bound_poly(ell: int, n: int, k: int) -> int:
    """f(k) for odd l, g(k) for even l."""
    m = _half(ell)
    if not 1 <= k <= m:
        raise PreconditionError(f"k={k} outside 1..{m}")
    if ell % 2:
        return 3 * k * k + (2 * n - 8 * m - 3) * k + 4 * m * m + 2 * m
    return 3 * k * k + (2 * n - 8 * m - 7) * k + 4 * m * m + 6 * m + 2


def sum_bound(seq: DegreeSequence, ell: int, k: int) -> int:
    """Upper bound on sigma(seq) when d_{l+1-k} <= k.

    The top l-k terms contribute at most (l-k)(l-k-1) plus one unit per
    edge to the tail, and each tail term is at most k.
    """
    _check_range(ell, seq.n)
    value = sum_bound_poly(ell, seq.n, k)
    if seq.d(ell + 1 - k) > k:
        raise PreconditionError(f"d_{ell + 1 - k}={seq.d(ell + 1 - k)} > k={k}: bound does not apply")
    return value


def sigma_table(ells: Iterable[int], ns: Iterable[int]) -> list[PotentialNumberQuery]:
    ns = list(ns)
    return [sigma_potential(ell, n) for ell in ells for n in ns if n >= ell]


def sigma_csv(rows: Iterable[PotentialNumberQuery]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["l", "n", "sigma", "branch"])
    for q in rows:
        writer.writerow([q.ell, q.n, q.value, q.dominant_branch])
    return buf.getvalue()
