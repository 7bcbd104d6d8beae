"""Brute-force ground truth at desk scale.

Realizations are enumerated as labeled graphs in which vertex i has degree
d_i.  Vertex 1 picks its whole neighborhood first, then vertex 2 picks the
rest of its neighborhood among higher labels, and so on; each labeled
realization is produced exactly once, in a fixed order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator

from .errors import CapExceeded
from .graphcore import SimpleGraph
from .seqcore import DegreeSequence, is_graphic

__all__ = [
    "PotentialResult",
    "DEFAULT_CAP",
    "enumerate_realizations",
    "count_realizations",
    "brute_force_graphic",
    "is_potentially_cl",
    "is_potentially_3cl",
    "enumerate_sequences",
    "enumerate_graphic_sequences",
    "merge_results",
    "spectrum",
]

DEFAULT_CAP = 10


@dataclass(frozen=True)
class PotentialResult:
    sequence: DegreeSequence
    property: str
    ell: int | None
    verdict: bool
    witness: SimpleGraph | None
    realizations_examined: int
    witness_index: tuple[int, int] | None = None
    wall_time: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {
            "sequence": str(self.sequence),
            "property": self.property,
            "l": self.ell,
            "verdict": self.verdict,
            "witness_edges": None if self.witness is None else [list(e) for e in self.witness.sorted_edges()],
            "realizations_examined": self.realizations_examined,
            "wall_time": round(self.wall_time, 6),
        }


def _check_cap(seq: DegreeSequence, cap: int):
    if seq.n > cap:
        raise CapExceeded(f"n={seq.n} exceeds oracle cap {cap}")


def _residual_ok_eg(res: list[int], start: int) -> bool:
    return is_graphic(DegreeSequence.from_terms(res[start:]))


def _residual_ok_basic(res: list[int], start: int) -> bool:
    # necessary conditions only: parity and enough partners for everyone
    rest = res[start:]
    if sum(rest) % 2:
        return False
    active = sum(1 for r in rest if r > 0)
    return all(r <= active - 1 for r in rest if r > 0)


def _realization_bits(terms: tuple[int, ...], prune: str,
                      chunk: tuple[int, int] | None = None) -> Iterator[tuple[int, list[int]]]:
    """Yield ``(branch, adjacency bitsets)`` for every labeled realization.

    ``branch`` is the index of the first vertex's neighborhood choice, the
    unit that ``chunk`` slices on.
    """
    n = len(terms)
    ok = _residual_ok_eg if prune == "eg" else _residual_ok_basic
    if sum(terms) % 2 or (n and terms[0] > n - 1) or not ok(list(terms), 0):
        return
    res = list(terms)
    adj = [0] * n

    def rec(i: int, top: bool, branch: int):
        while i < n and res[i] == 0:
            i += 1
        if i == n:
            yield branch, list(adj)
            return
        cands = [j for j in range(i + 1, n) if res[j] > 0]
        need = res[i]
        if need > len(cands):
            return
        for idx, chosen in enumerate(combinations(cands, need)):
            if top and chunk is not None and idx % chunk[1] != chunk[0]:
                continue
            res[i] = 0
            for j in chosen:
                res[j] -= 1
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            if ok(res, i + 1):
                yield from rec(i + 1, False, idx if top else branch)
            for j in chosen:
                res[j] += 1
                adj[i] &= ~(1 << j)
                adj[j] &= ~(1 << i)
            res[i] = need

    yield from rec(0, True, 0)


def _bits_to_graph(adj: list[int]) -> SimpleGraph:
    n = len(adj)
    edges = [(u + 1, v + 1) for u in range(n) for v in range(u + 1, n) if adj[u] >> v & 1]
    return SimpleGraph.from_edges(n, edges)


def enumerate_realizations(seq: DegreeSequence, cap: int = DEFAULT_CAP, prune: str = "eg",
                           chunk: tuple[int, int] | None = None) -> Iterator[SimpleGraph]:
    """Every labeled realization of ``seq`` (vertex i gets degree d_i).

    ``prune="eg"`` discards partial assignments whose residual demand is not
    graphic; ``prune="basic"`` uses only parity and partner counts, which
    keeps the enumeration independent of the Erdos-Gallai test.
    ``chunk=(k, K)`` restricts to the k-th of K interleaved slices.
    """
    _check_cap(seq, cap)
    for _, adj in _realization_bits(seq.terms, prune, chunk):
        yield _bits_to_graph(adj)


def count_realizations(seq: DegreeSequence, cap: int = DEFAULT_CAP, prune: str = "eg") -> int:
    _check_cap(seq, cap)
    return sum(1 for _ in _realization_bits(seq.terms, prune))


def _lengths(adj: list[int]) -> int:
    """Bitmask of cycle lengths present; path DP keyed on (vertex set, endpoint)."""
    n = len(adj)
    out = 0
    for s in range(n):
        # paths starting at s whose other vertices all exceed s
        frontier = {(1 << s, s)}
        allowed = ~((1 << (s + 1)) - 1)
        size = 1
        while frontier:
            nxt = set()
            for mask, v in frontier:
                if size >= 3 and adj[v] >> s & 1:
                    out |= 1 << size
                free = adj[v] & allowed & ~mask
                while free:
                    b = free & -free
                    free ^= b
                    nxt.add((mask | b, b.bit_length() - 1))
            frontier = nxt
            size += 1
    return out


def spectrum(g: SimpleGraph) -> set[int]:
    """Cycle lengths of ``g`` by the oracle's own path DP (independent of graphcore)."""
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    bits = _lengths(adj)
    return {r for r in range(3, g.n + 1) if bits >> r & 1}


def _search(seq: DegreeSequence, prop: str, ell: int, test: Callable[[int], bool], cap: int,
            chunk: tuple[int, int] | None) -> PotentialResult:
    _check_cap(seq, cap)
    t0 = time.perf_counter()
    examined = 0
    for branch, adj in _realization_bits(seq.terms, "eg", chunk):
        examined += 1
        if test(_lengths(adj)):
            return PotentialResult(seq, prop, ell, True, _bits_to_graph(adj), examined,
                                   (branch, examined), time.perf_counter() - t0)
    return PotentialResult(seq, prop, ell, False, None, examined, None, time.perf_counter() - t0)


def is_potentially_cl(seq: DegreeSequence, ell: int, cap: int = DEFAULT_CAP,
                      chunk: tuple[int, int] | None = None) -> PotentialResult:
    """Does some realization contain a cycle of length exactly ``ell``?"""
    return _search(seq, "potentially-C_l", ell, lambda bits: bool(bits >> ell & 1), cap, chunk)


def is_potentially_3cl(seq: DegreeSequence, ell: int, cap: int = DEFAULT_CAP,
                       chunk: tuple[int, int] | None = None) -> PotentialResult:
    """Does a single realization contain cycles of every length 3..ell?"""
    want = sum(1 << r for r in range(3, ell + 1))
    return _search(seq, "potentially-3C_l", ell, lambda bits: bits & want == want, cap, chunk)


def brute_force_graphic(seq: DegreeSequence, cap: int = DEFAULT_CAP) -> PotentialResult:
    """Realization existence by enumeration, without the Erdos-Gallai test."""
    _check_cap(seq, cap)
    t0 = time.perf_counter()
    for branch, adj in _realization_bits(seq.terms, "basic"):
        return PotentialResult(seq, "graphic", None, True, _bits_to_graph(adj), 1, (branch, 1),
                               time.perf_counter() - t0)
    return PotentialResult(seq, "graphic", None, False, None, 0, None, time.perf_counter() - t0)


def merge_results(results: list[PotentialResult]) -> PotentialResult:
    """Combine chunked verdicts: logical OR, witness = first in canonical order.

    Chunks slice on the first vertex's neighborhood choice, so the
    (branch, position) pair recorded with each witness orders them canonically.
    """
    if not results:
        raise ValueError("nothing to merge")
    hits = [r for r in results if r.verdict]
    examined = sum(r.realizations_examined for r in results)
    first = results[0]
    if not hits:
        return PotentialResult(first.sequence, first.property, first.ell, False, None, examined)
    best = min(hits, key=lambda r: r.witness_index)
    return PotentialResult(first.sequence, first.property, first.ell, True, best.witness, examined,
                           best.witness_index)


def enumerate_sequences(n: int, cap: int = 13) -> Iterator[DegreeSequence]:
    """Every member of NS_n (non-increasing, d_1 <= n-1) in lexicographic order."""
    if n > cap:
        raise CapExceeded(f"n={n} exceeds sequence cap {cap}")

    def rec(k: int, hi: int):
        if k == 0:
            yield ()
            return
        for first in range(0, hi + 1):
            for rest in rec(k - 1, first):
                yield (first,) + rest

    for terms in rec(n, max(n - 1, 0)):
        yield DegreeSequence(terms)


def enumerate_graphic_sequences(n: int, constraint: Callable[[DegreeSequence], bool] | None = None,
                                cap: int = 13) -> Iterator[DegreeSequence]:
    """Graphic members of NS_n passing ``constraint``, in lexicographic order."""
    for seq in enumerate_sequences(n, cap):
        if seq.sigma % 2:
            continue
        if is_graphic(seq) and (constraint is None or constraint(seq)):
            yield seq
