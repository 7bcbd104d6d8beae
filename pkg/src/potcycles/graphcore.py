"""Labeled simple graphs, realizations, cycle search and edge exchanges.

Vertices are labeled 1..n.  Graph values are immutable; every operation
returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError, SearchExhausted
from .seqcore import DegreeSequence, is_graphic

__all__ = [
    "SimpleGraph",
    "CycleSpectrum",
    "HoistResult",
    "degree_sequence",
    "realize",
    "has_cycle_of_length",
    "cycle_spectrum",
    "cycle_lengths",
    "is_cycle",
    "two_swap",
    "hoist_subgraph",
    "hoist",
    "top_ranked",
    "parse_edge_list",
    "DEFAULT_CYCLE_BUDGET",
]

DEFAULT_CYCLE_BUDGET = 5_000_000


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Simple undirected graph on vertices 1..n."""

    n: int
    edges: frozenset = frozenset()
    annotation: Mapping[int, int] | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        clean = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge {e} outside 1..{self.n}")
            clean.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        """Build from an edge iterable, rejecting duplicates."""
        seen = set()
        for u, v in edges:
            e = _norm(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @classmethod
    def cycle(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset(_norm(i, i % n + 1) for i in range(1, n + 1)))

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        adj = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def adjacency_bits(self) -> tuple[int, ...]:
        bits = [0] * (self.n + 1)
        for u, v in self.edges:
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        return tuple(bits)

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        """Degrees indexed by label; entry 0 is unused."""
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    @property
    def size(self) -> int:
        return len(self.edges)

    def with_edges(self, add=(), remove=()) -> "SimpleGraph":
        edges = set(self.edges)
        for u, v in remove:
            edges.discard(_norm(u, v))
        for u, v in add:
            edges.add(_norm(u, v))
        return SimpleGraph(self.n, frozenset(edges))

    def relabel(self, mapping: Mapping[int, int], n: int | None = None) -> "SimpleGraph":
        n = self.n if n is None else n
        return SimpleGraph(n, frozenset(_norm(mapping[u], mapping[v]) for u, v in self.edges))

    def induced_edges(self, vertices: Iterable[int]) -> set[tuple[int, int]]:
        vs = set(vertices)
        return {e for e in self.edges if e[0] in vs and e[1] in vs}

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_edge_list(self) -> str:
        lines = [f"n {self.n}"]
        lines.extend(f"{u} {v}" for u, v in self.sorted_edges())
        return "\n".join(lines) + "\n"

    def to_dot(self, name: str = "G", highlight: Iterable[Sequence[int]] = ()) -> str:
        """DOT text with vertex names x1..xn; ``highlight`` edges are drawn bold."""
        bold = {_norm(u, v) for u, v in highlight}
        lines = [f"graph {name} {{"]
        lines.extend(f"  x{v};" for v in range(1, self.n + 1))
        for u, v in self.sorted_edges():
            style = " [style=bold]" if (u, v) in bold else ""
            lines.append(f"  x{u} -- x{v}{style};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> SimpleGraph:
    """Inverse of ``SimpleGraph.to_edge_list``; ``#`` starts a comment."""
    n = None
    edges = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if n is not None or len(parts) != 2:
                raise ValueError(f"bad header line {raw!r}")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise ValueError(f"bad edge line {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError("missing 'n <count>' header")
    return SimpleGraph.from_edges(n, edges)


@dataclass(frozen=True)
class CycleSpectrum:
    present: frozenset
    l_max: int
    restricted_to: frozenset | None = None
    witnesses: Mapping[int, tuple[int, ...]] = field(default_factory=dict, compare=False)

    def covers(self, lo: int, hi: int) -> bool:
        return all(r in self.present for r in range(lo, hi + 1))


def degree_sequence(g: SimpleGraph) -> DegreeSequence:
    return DegreeSequence.from_terms(g.degrees()[1:])


def top_ranked(g: SimpleGraph, k: int) -> list[int]:
    """The k vertices of highest degree, ties broken by smaller label."""
    deg = g.degrees()
    return sorted(range(1, g.n + 1), key=lambda v: (-deg[v], v))[:k]


def realize(seq: DegreeSequence) -> SimpleGraph:
    """Realization by repeatedly laying off the last term.

    Vertex i of the result has degree ``seq.d(i)``.
    """
    if not is_graphic(seq):
        raise PreconditionError(f"{seq} is not graphic")
    frames = []
    cur = list(seq.terms)
    while cur:
        n = len(cur)
        dn = cur[-1]
        dec = list(range(1, dn + 1))
        vals = {i: cur[i - 1] - (1 if i <= dn else 0) for i in range(1, n)}
        order = sorted(vals, key=lambda i: (-vals[i], i))
        frames.append((n, order, dec))
        cur = [vals[i] for i in order]
    edges: set = set()
    for n, order, dec in reversed(frames):
        edges = {_norm(order[u - 1], order[v - 1]) for u, v in edges}
        edges.update((x, n) for x in dec)
    return SimpleGraph(seq.n, frozenset(edges))


def _two_core(adj_bits: Sequence[int], mask: int) -> int:
    """Iteratively drop vertices with fewer than two neighbors inside ``mask``."""
    changed = True
    while changed:
        changed = False
        m = mask
        while m:
            b = m & -m
            v = b.bit_length() - 1
            m ^= b
            if bin(adj_bits[v] & mask).count("1") < 2:
                mask &= ~b
                changed = True
    return mask


def has_cycle_of_length(g: SimpleGraph, r: int, within: Iterable[int] | None = None,
                        budget: int = DEFAULT_CYCLE_BUDGET) -> tuple[bool, tuple[int, ...] | None]:
    """Exact backtracking search for a cycle of length exactly ``r``.

    Returns ``(True, cycle)`` with the cycle as a vertex tuple (first vertex
    not repeated) or ``(False, None)`` after exhausting the search.  Raises
    ``SearchExhausted`` when more than ``budget`` nodes are expanded.
    """
    verts = sorted(set(within)) if within is not None else list(range(1, g.n + 1))
    if not 3 <= r <= len(verts):
        raise PreconditionError(f"cycle length {r} outside 3..{len(verts)}")
    adj = g.adjacency_bits
    mask = 0
    for v in verts:
        mask |= 1 << v
    mask = _two_core(adj, mask)
    expanded = 0

    for s in verts:
        if not mask >> s & 1:
            continue
        higher = mask & ~((1 << (s + 1)) - 1)
        if bin(higher).count("1") < r - 1:
            break
        path = [s]
        # iterative DFS; each frame holds the candidate bitset still to try
        stack = [adj[s] & higher]
        used = 1 << s
        while stack:
            cand = stack[-1]
            if not cand:
                stack.pop()
                used &= ~(1 << path.pop())
                continue
            b = cand & -cand
            stack[-1] = cand ^ b
            v = b.bit_length() - 1
            expanded += 1
            if expanded > budget:
                raise SearchExhausted(f"cycle search for r={r} exceeded {budget} expansions")
            if len(path) == r - 1:
                if adj[v] >> s & 1:
                    return True, tuple(path + [v])
                continue
            path.append(v)
            used |= b
            stack.append(adj[v] & higher & ~used)
    return False, None


def cycle_spectrum(g: SimpleGraph, l_max: int, within: Iterable[int] | None = None,
                   budget: int = DEFAULT_CYCLE_BUDGET) -> CycleSpectrum:
    within_set = frozenset(within) if within is not None else None
    size = len(within_set) if within_set is not None else g.n
    if l_max > size:
        raise PreconditionError(f"l_max={l_max} exceeds available vertices {size}")
    present = set()
    witnesses = {}
    for r in range(3, l_max + 1):
        found, cyc = has_cycle_of_length(g, r, within_set, budget)
        if found:
            present.add(r)
            witnesses[r] = cyc
    return CycleSpectrum(frozenset(present), l_max, within_set, witnesses)


def cycle_lengths(g: SimpleGraph, within: Iterable[int] | None = None) -> set[int]:
    """All cycle lengths of the induced subgraph, by dynamic programming over subsets.

    Meant for small vertex sets (up to ~14); cost is O(2^k * k).
    """
    verts = sorted(set(within)) if within is not None else list(range(1, g.n + 1))
    k = len(verts)
    pos = {v: i for i, v in enumerate(verts)}
    local = [0] * k
    for u, v in g.edges:
        if u in pos and v in pos:
            local[pos[u]] |= 1 << pos[v]
            local[pos[v]] |= 1 << pos[u]
    full = (1 << k) - 1
    dp = [0] * (1 << k)
    for s in range(k):
        dp[1 << s] = 1 << s
    found = set()
    for mask in range(1, 1 << k):
        ends = dp[mask]
        if not ends:
            continue
        low = mask & -mask
        s = low.bit_length() - 1
        cnt = bin(mask).count("1")
        if cnt >= 3 and local[s] & ends:
            found.add(cnt)
        free = full & ~mask & ~((low << 1) - 1)
        while free:
            wb = free & -free
            free ^= wb
            if local[wb.bit_length() - 1] & ends:
                dp[mask | wb] |= wb
    return found


def is_cycle(g: SimpleGraph, cycle: Sequence[int]) -> bool:
    """True when ``cycle`` lists distinct vertices forming a closed walk in g."""
    seq = list(cycle)
    if len(seq) > 1 and seq[0] == seq[-1]:
        seq = seq[:-1]
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    return all(g.has_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq)))


def two_swap(g: SimpleGraph, remove: Sequence[Sequence[int]], add: Sequence[Sequence[int]]) -> SimpleGraph:
    """Exchange two edges for two others on the same endpoints."""
    rem = [_norm(*e) for e in remove]
    ins = [_norm(*e) for e in add]
    if len(rem) != 2 or len(ins) != 2:
        raise PreconditionError("a two-swap removes exactly two edges and adds exactly two")
    if set(rem) == set(ins):
        return g
    problems = []
    if rem[0] == rem[1]:
        problems.append(f"removed edge {rem[0]} listed twice")
    if ins[0] == ins[1]:
        problems.append(f"added edge {ins[0]} listed twice")
    for e in rem:
        if e not in g.edges:
            problems.append(f"edge {e} to remove is absent")
    for e in ins:
        if e[0] == e[1]:
            problems.append(f"added edge {e} is a loop")
        elif e in g.edges:
            problems.append(f"edge {e} to add is already present")
    if sorted(v for e in rem for v in e) != sorted(v for e in ins for v in e):
        problems.append("added edges do not use the same endpoints as removed edges")
    if problems:
        raise PreconditionError("; ".join(problems))
    return g.with_edges(add=ins, remove=rem)


@dataclass(frozen=True)
class HoistResult:
    graph: SimpleGraph
    vertices: frozenset
    mapping: Mapping[int, int]
    swaps: tuple = ()


def hoist(g: SimpleGraph, witness: Iterable[int], target: Sequence[int] | None = None,
          budget: int = 100_000) -> HoistResult:
    """Move the induced structure on ``witness`` onto the top-ranked vertices.

    Each move replaces a witness vertex x outside the target by a target
    vertex y of at least the same degree: every witness-neighbor of x that
    y lacks is transferred with a degree-preserving exchange
    ``{xz, yw} -> {yz, xw}``.  ``mapping`` sends each original witness vertex
    to the vertex that now plays its role.
    """
    current = set(witness)
    if target is None:
        target = top_ranked(g, len(current))
    target_set = set(target)
    if len(target_set) != len(current):
        raise PreconditionError("target and witness sizes differ")
    deg = g.degrees()
    rank = {v: i for i, v in enumerate(sorted(range(1, g.n + 1), key=lambda v: (-deg[v], v)))}
    edges = set(g.edges)
    adj = [set(a) for a in g.adjacency]
    mapping = {v: v for v in current}
    swaps = []
    steps = 0
    while True:
        outside = sorted(current - target_set, key=lambda v: rank[v])
        free = sorted(target_set - current, key=lambda v: rank[v])
        if not outside:
            break
        x, y = outside[-1], free[0]
        if len(adj[y]) < len(adj[x]):
            raise PreconditionError(f"target vertex {y} has smaller degree than {x}")
        # partners come from y's private neighbors before any exchange, so a
        # witness neighbor already handed to y is never taken back
        pool = sorted(adj[y] - adj[x] - {x})
        for z in sorted(adj[x] & current):
            if z in adj[y]:
                continue
            if not pool:
                raise SearchExhausted(f"no exchange partner moving {x} onto {y}")
            w = pool.pop(0)
            for a, b in ((x, z), (y, w)):
                edges.discard(_norm(a, b))
                adj[a].discard(b)
                adj[b].discard(a)
            for a, b in ((y, z), (x, w)):
                edges.add(_norm(a, b))
                adj[a].add(b)
                adj[b].add(a)
            swaps.append(((_norm(x, z), _norm(y, w)), (_norm(y, z), _norm(x, w))))
            steps += 1
            if steps > budget:
                raise SearchExhausted(f"hoist exceeded {budget} exchanges")
        current.remove(x)
        current.add(y)
        for k, v in mapping.items():
            if v == x:
                mapping[k] = y
    return HoistResult(SimpleGraph(g.n, frozenset(edges)), frozenset(current), mapping, tuple(swaps))


def hoist_subgraph(g: SimpleGraph, witness: Iterable[int], budget: int = 100_000) -> SimpleGraph:
    """Realization of the same degree sequence with the induced witness
    structure copied onto the |witness| highest-ranked vertices."""
    return hoist(g, witness, budget=budget).graph
