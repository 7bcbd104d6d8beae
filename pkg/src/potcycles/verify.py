"""Verification suites: exhaustive desk-scale sweeps plus a sampled run at larger l.

Each suite returns a ``SuiteResult`` with per-case pass/fail counts.  A case
that would need the oracle beyond its cap is recorded as capped, never as a
pass or a failure.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import oracle
from .builder import BuildOptions, BuildResult, build_all_cycles
from .errors import CapExceeded, ClaimViolation, LemmaContradiction, PotCyclesError, PreconditionError
from .extremal import extremal_non_3cl_sequence, extremal_witnesses, non_3cl_indices, sigma_potential
from .fixtures import FIGURES, _ell7_bases, load_figure
from .graphcore import SimpleGraph, degree_sequence
from .seqcore import (
    DegreeSequence,
    check_dirac,
    check_posa,
    is_graphic,
    is_graphic_full,
    lay_off,
    parse_sequence,
    posa_violation,
)

__all__ = [
    "SuiteResult",
    "SUITES",
    "run_suite",
    "check_build",
    "reduction_audit",
    "sample_large",
    "FAMILIES",
]

REDUCTION_TAGS = ("L2.3", "L2.4", "L2.5")


@dataclass
class SuiteResult:
    name: str
    params: dict = field(default_factory=dict)
    cases: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)
    capped: list = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)
    wall_time: float = 0.0

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        if self.capped:
            return "cap"
        return "pass"

    def record(self, case: str, problems: list[str]):
        self.cases += 1
        if problems:
            self.failures.append(f"{case}: {'; '.join(problems)}")
        else:
            self.passed += 1

    def summary(self) -> str:
        line = f"{self.name}: {self.status.upper()} {self.passed}/{self.cases} cases"
        if self.capped:
            line += f", {len(self.capped)} over cap"
        return line + f" ({self.wall_time:.2f}s)"

    def to_dict(self) -> dict:
        return {"suite": self.name, "params": self.params, "status": self.status,
                "cases": self.cases, "passed": self.passed, "failures": self.failures,
                "capped": self.capped, "counts": dict(sorted(self.counts.items())),
                "wall_time": round(self.wall_time, 3)}


def _pmap(fn: Callable, items: list, threads: int) -> list:
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * threads))))


# --- shared checks ---------------------------------------------------------

def reduction_audit(result: BuildResult) -> tuple[int, list[str]]:
    """Every omega / rho / omega2 residual in the trace must be graphic."""
    checked, bad = 0, []
    for step in result.trace.steps:
        if step.tag in REDUCTION_TAGS and step.after is not None:
            checked += 1
            if not is_graphic(parse_sequence(step.after)):
                bad.append(f"{step.tag} residual ({step.after}) of ({step.before}) not graphic")
    return checked, bad


def _induced(g: SimpleGraph, k: int) -> SimpleGraph:
    return SimpleGraph.from_edges(k, g.induced_edges(range(1, k + 1)))


def check_build(result: BuildResult, seq: DegreeSequence, ell: int, top: bool = True) -> list[str]:
    """Problems with a builder output, checked without trusting the builder.

    ``top`` restricts the cycle search to labels 1..l; otherwise the whole
    graph is searched.
    """
    g = result.graph
    problems = []
    if g.n != seq.n or degree_sequence(g) != seq:
        problems.append("degree sequence mismatch")
    if g.degrees()[1:] != list(seq.terms):
        problems.append("label i does not carry d_i")
    if result.trace.replay() != g:
        problems.append("trace replay differs from output")
    lengths = oracle.spectrum(_induced(g, ell) if top else g)
    missing = [r for r in range(3, ell + 1) if r not in lengths]
    if missing:
        problems.append(f"missing cycle lengths {missing}")
    return problems


# --- suites ----------------------------------------------------------------

def suite_graphicality(nmax: int = 8, cap: int = oracle.DEFAULT_CAP, **_) -> SuiteResult:
    res = SuiteResult("graphicality", {"nmax": nmax})
    for n in range(1, nmax + 1):
        for seq in oracle.enumerate_sequences(n):
            if seq.sigma % 2:
                continue
            try:
                brute = oracle.brute_force_graphic(seq, cap=cap).verdict
            except CapExceeded:
                res.capped.append(str(seq))
                continue
            eg, full = is_graphic(seq), is_graphic_full(seq)
            problems = []
            if eg != brute:
                problems.append(f"cutoff test {eg}, enumeration {brute}")
            if full != brute:
                problems.append(f"full test {full}, enumeration {brute}")
            res.counts["graphic" if brute else "not graphic"] += 1
            res.record(f"({seq})", problems)
    return res


def suite_layoff(nmax: int = 7, **_) -> SuiteResult:
    res = SuiteResult("layoff", {"nmax": nmax})
    for n in range(1, nmax + 1):
        for seq in oracle.enumerate_sequences(n):
            if seq.sigma % 2:
                continue
            g = is_graphic(seq)
            res.counts["graphic" if g else "not graphic"] += 1
            for k in range(1, n + 1):
                try:
                    child = lay_off(seq, k)
                except PreconditionError:
                    # a negative residual is not graphic
                    res.counts["negative residual"] += 1
                    res.record(f"({seq}) k={k}", ["graphic but residual negative"] if g else [])
                    continue
                res.record(f"({seq}) k={k}",
                           [] if is_graphic(child) == g else [f"residual ({child}) disagrees"])
    return res


def _posa_case(args) -> tuple[str, list[str], dict]:
    terms, ell, use_oracle, cap, options = args
    seq = DegreeSequence(terms)
    stats: Counter = Counter()
    try:
        result = build_all_cycles(seq, ell, options)
    except ClaimViolation as exc:
        return f"({seq}) l={ell}", [f"claim violated: {exc} {exc.instance}"], {"claim violations": 1}
    except PotCyclesError as exc:
        return f"({seq}) l={ell}", [f"{type(exc).__name__}: {exc}"], {}
    problems = check_build(result, seq, ell, top=False)
    if ell >= 7:
        if not problems:
            problems += check_build(result, seq, ell, top=True)
    elif not oracle.spectrum(_induced(result.graph, ell)) >= set(range(3, ell + 1)):
        stats["cycles beyond labels 1..l"] += 1
    checked, bad = reduction_audit(result)
    problems += bad
    stats["reductions audited"] += checked
    for tag in set(result.trace.tags()):
        stats[f"tag {tag}"] += 1
    if use_oracle and not problems:
        try:
            if not oracle.is_potentially_3cl(seq, ell, cap=cap).verdict:
                problems.append("oracle says not potentially 3C_l")
        except CapExceeded:
            stats["oracle capped"] += 1
    return f"({seq}) l={ell}", problems, dict(stats)


def suite_posa_small(lmax: int = 8, nmax: int = 8, lmin: int = 5, use_oracle: bool = True,
                     cap: int = oracle.DEFAULT_CAP, threads: int = 1,
                     options: BuildOptions | None = None, **_) -> SuiteResult:
    res = SuiteResult("posa-small", {"lmin": lmin, "lmax": lmax, "nmax": nmax, "oracle": use_oracle})
    jobs = []
    for n in range(lmin, nmax + 1):
        for ell in range(lmin, min(lmax, n) + 1):
            for seq in oracle.enumerate_graphic_sequences(n, lambda s, ell=ell: check_posa(s, ell)):
                jobs.append((seq.terms, ell, use_oracle, cap, options))
    for case, problems, stats in _pmap(_posa_case, jobs, threads):
        res.counts.update(stats)
        res.record(case, problems)
    return res


def suite_sigma_small(lmax: int = 6, nmax: int = 8, lmin: int = 5, cap: int = oracle.DEFAULT_CAP,
                      **_) -> SuiteResult:
    res = SuiteResult("sigma-small", {"lmin": lmin, "lmax": lmax, "nmax": nmax})
    for ell in range(max(lmin, 5), lmax + 1):
        for n in range(ell, nmax + 1):
            q = sigma_potential(ell, n)
            problems = []
            try:
                for seq in oracle.enumerate_graphic_sequences(n, lambda s: s.sigma >= q.value):
                    res.counts["sequences above the bound"] += 1
                    if not oracle.is_potentially_cl(seq, ell, cap=cap).verdict:
                        problems.append(f"({seq}) has sum {seq.sigma} but no C_{ell}")
                refuted_at_bound = 0
                for branch, w in extremal_witnesses(ell, n):
                    if not is_graphic(w):
                        problems.append(f"{branch} witness ({w}) not graphic")
                        continue
                    if oracle.is_potentially_cl(w, ell, cap=cap).verdict:
                        problems.append(f"{branch} witness ({w}) contains C_{ell}")
                    elif w.sigma == q.value - 2:
                        refuted_at_bound += 1
                if refuted_at_bound == 0:
                    problems.append("no witness with sum sigma-2 refuted")
            except CapExceeded:
                res.capped.append(f"l={ell} n={n}")
                continue
            res.record(f"l={ell} n={n} sigma={q.value}", problems)
    return res


def suite_sharpness(lmax: int = 7, nmax: int = 8, lmin: int = 6, cap: int = oracle.DEFAULT_CAP,
                    **_) -> SuiteResult:
    res = SuiteResult("sharpness", {"lmin": lmin, "lmax": lmax, "nmax": nmax})
    for ell in range(max(lmin, 5), lmax + 1):
        for i in non_3cl_indices(ell):
            for n in range(ell, nmax + 1):
                try:
                    seq = extremal_non_3cl_sequence(ell, i, n)
                except PreconditionError:
                    res.counts["template not defined"] += 1
                    continue
                problems = []
                if posa_violation(seq, ell) != i or seq.d(ell + 1 - i) != i:
                    problems.append(f"expected d_{ell + 1 - i} = {i} as the only shortfall")
                try:
                    if oracle.is_potentially_3cl(seq, ell, cap=cap).verdict:
                        problems.append("oracle found cycles 3..l")
                except CapExceeded:
                    res.capped.append(f"({seq}) l={ell}")
                    continue
                res.record(f"({seq}) l={ell} i={i}", problems)
    return res


def _walk_problems(g: SimpleGraph, r: int, walk: tuple[int, ...]) -> list[str]:
    if walk[0] != walk[-1] or len(walk) != r + 1:
        return [f"C{r} walk is not closed with {r} vertices"]
    if len(set(walk[:-1])) != r:
        return [f"C{r} walk repeats a vertex"]
    gaps = [(a, b) for a, b in zip(walk, walk[1:]) if not g.has_edge(a, b)]
    return [f"C{r} uses non-edge {a}-{b}" for a, b in gaps]


def suite_fixtures(**_) -> SuiteResult:
    res = SuiteResult("fixtures")
    for number, fig in sorted(FIGURES.items()):
        g = load_figure(number)
        problems = []
        if degree_sequence(g) != fig.sequence:
            problems.append(f"degrees ({degree_sequence(g)}) differ from caption ({fig.caption})")
        for r, walk in sorted(fig.cycles.items()):
            problems += _walk_problems(g, r, walk)
        if set(fig.cycles) != set(range(3, g.n + 1)):
            problems.append("figure does not list every length 3..n")
        res.record(f"figure {number} ({fig.caption})", problems)
    bad = 0
    for key, g in sorted(_ell7_bases().items()):
        seq = parse_sequence(key)
        ok = (g.degrees()[1:] == list(seq.terms) and check_posa(seq, 7)
              and oracle.spectrum(g) >= set(range(3, 8)))
        bad += not ok
        res.counts["l=7 bases checked"] += 1
        if not ok:
            res.failures.append(f"l=7 base ({key}) is not a pancyclic realization")
    return res


def suite_dirac(lmax: int = 8, nmax: int = 9, lmin: int = 5, **_) -> SuiteResult:
    res = SuiteResult("dirac", {"lmin": lmin, "lmax": lmax, "nmax": nmax})
    for n in range(lmin, nmax + 1):
        for seq in oracle.enumerate_sequences(n):
            for ell in range(lmin, min(lmax, n) + 1):
                if check_dirac(seq, ell):
                    res.counts["dirac holds"] += 1
                    res.record(f"({seq}) l={ell}", [] if check_posa(seq, ell) else ["posa fails"])
    return res


# --- sampled larger instances ---------------------------------------------

def _profile(rng: random.Random, ranges: list[tuple[int, int]]) -> DegreeSequence | None:
    """Draw a non-increasing sequence with term j in ranges[j], even sum."""
    terms, prev = [], None
    for lo, hi in ranges:
        hi = hi if prev is None else min(hi, prev)
        if lo > hi:
            return None
        prev = rng.randint(lo, hi)
        terms.append(prev)
    if sum(terms) % 2:
        for j in rng.sample(range(len(terms)), len(terms)):
            lo, hi = ranges[j]
            for t in (terms[j] + 1, terms[j] - 1):
                cand = terms[:j] + [t] + terms[j + 1:]
                if lo <= t <= hi and all(a >= b for a, b in zip(cand, cand[1:])):
                    terms = cand
                    break
            else:
                continue
            break
        else:
            return None
    return DegreeSequence(tuple(terms))


def _stair(ell: int, j: int) -> int:
    """Smallest d_j allowed by the degree condition at position j <= l."""
    i = ell + 1 - j
    return i + 1 if 1 <= i < (ell + 1) // 2 else 0


def _n(rng: random.Random, lo: int, nmax: int) -> int | None:
    return rng.randint(lo, nmax) if lo <= nmax else None


def _fam_generic(rng, nmax):
    ell = rng.randint(9, 12)
    n = _n(rng, ell, nmax)
    if n is None:
        return ell, None
    hi = n - 1
    ranges = [(max(_stair(ell, j), ell // 2 - 1), hi) for j in range(1, ell + 1)]
    ranges += [(1, rng.randint(1, ell // 2))] * (n - ell)
    return ell, _profile(rng, ranges)


def _fam_omega(rng, nmax):
    m = rng.choice([5, 6])
    n = _n(rng, 2 * m + 1, nmax)
    if n is None:
        return 2 * m, None
    dn = rng.randint(1, m - 1)
    ranges = [(m + 1, n - 1)] * (dn - 1) + [(m, m)] * (m + 3 - dn)
    ranges += [(max(_stair(2 * m, j), dn), m - 1) for j in range(m + 3, 2 * m + 1)]
    ranges += [(dn, m - 1)] * (n - 2 * m - 1) + [(dn, dn)]
    return 2 * m, _profile(rng, ranges)


def _fam_rho(rng, nmax):
    m = rng.choice([5, 6])
    p = rng.randint(0, m - 3)
    n = _n(rng, 2 * m + 1 + max(0, 2 - p), nmax)
    if n is None:
        return 2 * m, None
    ranges = [(m + 1, n - 1)] * p + [(m, m)] * (m + 2 - p) + [(m - 1, m - 1)] * (m - 1)
    ranges += [(p + 2, m - 1)] * (n - 2 * m - 1)
    return 2 * m, _profile(rng, ranges)


def _fam_omega2(rng, nmax):
    m = rng.choice([5, 6])
    n = _n(rng, 2 * m + 1, nmax)
    if n is None:
        return 2 * m, None
    p = rng.randint(0, m - 3)
    ranges = [(m + 1, n - 1)] * p + [(m, m)] * (m + 2 - p)
    ranges += [(max(_stair(2 * m, j), p + 2), m - 1) for j in range(m + 3, 2 * m + 1)]
    ranges += [(1, m - 1)] * (n - 2 * m)
    return 2 * m, _profile(rng, ranges)


def _fam_special(rng, nmax):
    m = rng.choice([5, 6])
    if 2 * m + 1 > nmax:
        return 2 * m, None
    last = rng.choice([1, 2])
    d1 = m if last == 1 else rng.randint(m + 1, 2 * m)
    ranges = [(d1, d1)] + [(m, m)] * (m + 1)
    ranges += [(2 * m + 2 - j, 2 * m + 2 - j) for j in range(m + 3, 2 * m + 1)] + [(last, last)]
    return 2 * m, _profile(rng, ranges)


def _fam_fastpath(rng, nmax):
    m = rng.choice([4, 5])
    ell = 2 * m + 1
    n = _n(rng, ell + 1, nmax)
    if n is None:
        return ell, None
    ranges = [(m + 1, n - 1)] * ell + [(1, m + 1)] * (n - ell)
    return ell, _profile(rng, ranges)


def _fam_attach(rng, nmax):
    m = rng.choice([4, 5])
    ell = 2 * m + 1
    n = _n(rng, ell + 1, nmax)
    if n is None:
        return ell, None
    p = rng.randint(0, m + 2)
    ranges = [(m + 1, n - 1)] * p + [(m + 1, m + 2)] * (m + 2 - p)
    ranges += [(_stair(ell, j), m) for j in range(m + 3, ell + 1)]
    ranges += [(1, m)] * (n - ell)
    return ell, _profile(rng, ranges)


FAMILIES = {
    "generic": _fam_generic,
    "omega": _fam_omega,
    "rho": _fam_rho,
    "omega2": _fam_omega2,
    "special": _fam_special,
    "fastpath": _fam_fastpath,
    "attach": _fam_attach,
}


def sample_large(count: int = 105, seed: int = 0, nmax: int = 16) -> list[tuple[str, DegreeSequence, int]]:
    """Distinct graphic Posa-condition sequences at l in 9..12, spread over
    shape families that steer the top-level reduction into each branch."""
    rng = random.Random(seed)
    names = list(FAMILIES)
    per = -(-count // len(names))
    out, seen = [], set()

    def draw(name, quota):
        got, tries = 0, 0
        while got < quota and tries < 20000:
            tries += 1
            ell, seq = FAMILIES[name](rng, nmax)
            if seq is None or (seq.terms, ell) in seen or not is_graphic(seq):
                continue
            if posa_violation(seq, ell) is not None:
                continue
            seen.add((seq.terms, ell))
            out.append((name, seq, ell))
            got += 1

    for name in names:
        draw(name, per)
    # some families have few members at this size; top up from the generic one
    draw("generic", count - len(out))
    return out


def _large_case(args) -> tuple[str, list[str], dict]:
    family, terms, ell, options = args
    seq = DegreeSequence(terms)
    case = f"[{family}] ({seq}) l={ell}"
    try:
        result = build_all_cycles(seq, ell, options)
    except ClaimViolation as exc:
        return case, [f"claim violated: {exc} {exc.instance}"], {"claim violations": 1}
    except PotCyclesError as exc:
        return case, [f"{type(exc).__name__}: {exc}"], {}
    problems = check_build(result, seq, ell, top=True)
    checked, bad = reduction_audit(result)
    stats = Counter({"reductions audited": checked, f"family {family}": 1})
    for tag in set(result.trace.tags()):
        stats[f"tag {tag}"] += 1
    return case, problems + bad, dict(stats)


def suite_sampled_large(count: int = 105, seed: int = 0, nmax: int = 16, threads: int = 1,
                        options: BuildOptions | None = None, **_) -> SuiteResult:
    res = SuiteResult("sampled-large", {"count": count, "seed": seed, "nmax": nmax})
    jobs = [(fam, seq.terms, ell, options) for fam, seq, ell in sample_large(count, seed, nmax)]
    for case, problems, stats in _pmap(_large_case, jobs, threads):
        res.counts.update(stats)
        res.record(case, problems)
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "graphicality": suite_graphicality,
    "layoff": suite_layoff,
    "posa-small": suite_posa_small,
    "sigma-small": suite_sigma_small,
    "sharpness": suite_sharpness,
    "fixtures": suite_fixtures,
    "dirac": suite_dirac,
    "sampled-large": suite_sampled_large,
}


def run_suite(name: str, **params) -> SuiteResult:
    if name not in SUITES:
        raise PreconditionError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t0 = time.perf_counter()
    res = SUITES[name](**{k: v for k, v in params.items() if v is not None})
    res.wall_time = time.perf_counter() - t0
    return res
