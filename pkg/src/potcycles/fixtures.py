"""Shipped realizations: the four published figures and the frozen l=7 bases.

Figure graphs keep their published vertex names (x_i is label i), which do
not follow degree order.  ``ranked`` relabels a graph so that label i has
the i-th largest degree, the convention the builder works in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .graphcore import SimpleGraph, parse_edge_list, top_ranked
from .seqcore import DegreeSequence, parse_sequence

__all__ = ["Figure", "FIGURES", "load_figure", "figure_for", "ranked", "base_fixture", "ELL7_FILE"]

ELL7_FILE = "ell7_bases.json"


@dataclass(frozen=True)
class Figure:
    number: int
    caption: str
    cycles: dict  # length -> closed vertex walk as printed, first vertex repeated

    @property
    def sequence(self) -> DegreeSequence:
        return parse_sequence(self.caption)


def _walk(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split())


FIGURES = {
    1: Figure(1, "4^4,3^2,2^2", {
        3: _walk("1 5 2 1"),
        4: _walk("1 7 3 2 1"),
        5: _walk("1 7 3 2 5 1"),
        6: _walk("1 2 8 4 3 7 1"),
        7: _walk("1 7 3 4 8 2 5 1"),
        8: _walk("1 7 3 6 4 8 2 5 1"),
    }),
    2: Figure(2, "4^5,3^2,2", {
        3: _walk("1 2 3 1"),
        4: _walk("4 5 7 6 4"),
        5: _walk("1 5 2 3 4 1"),
        6: _walk("1 4 6 7 8 3 1"),
        7: _walk("1 4 3 8 7 6 2 1"),
        8: _walk("3 2 5 1 4 6 7 8 3"),
    }),
    3: Figure(3, "4^6,2^2", {
        3: _walk("4 5 6 4"),
        4: _walk("1 4 6 5 1"),
        5: _walk("1 4 3 2 5 1"),
        6: _walk("1 2 7 6 8 3 1"),
        7: _walk("4 5 2 7 6 8 3 4"),
        8: _walk("2 5 1 4 3 8 6 7 2"),
    }),
    4: Figure(4, "6,4^5,2^2", {
        3: _walk("1 2 3 1"),
        4: _walk("1 8 5 6 1"),
        5: _walk("2 5 4 3 6 2"),
        6: _walk("4 3 6 5 8 1 4"),
        7: _walk("4 3 6 5 8 1 7 4"),
        8: _walk("5 2 6 3 4 7 1 8 5"),
    }),
}


def _read(name: str) -> str:
    return resources.files(__package__).joinpath("data").joinpath(name).read_text()


@lru_cache(maxsize=None)
def load_figure(number: int) -> SimpleGraph:
    """Figure graph with the published labels."""
    return parse_edge_list(_read(f"fig{number}.edges"))


def ranked(g: SimpleGraph) -> SimpleGraph:
    """Relabel so that label i carries the i-th largest degree (ties by old label)."""
    order = top_ranked(g, g.n)
    return g.relabel({old: new for new, old in enumerate(order, start=1)})


def figure_for(seq: DegreeSequence) -> int | None:
    for number, fig in FIGURES.items():
        if fig.sequence == seq:
            return number
    return None


@lru_cache(maxsize=None)
def _ell7_bases() -> dict:
    try:
        raw = json.loads(_read(ELL7_FILE))
    except FileNotFoundError:
        return {}
    return {key: SimpleGraph.from_edges(7, val) for key, val in raw.items()}


def base_fixture(seq: DegreeSequence) -> tuple[str, SimpleGraph] | None:
    """A shipped pancyclic realization of ``seq`` in ranked labels, if any."""
    number = figure_for(seq)
    if number is not None:
        return f"fig{number}", ranked(load_figure(number))
    if seq.n == 7:
        g = _ell7_bases().get(str(seq))
        if g is not None:
            return ELL7_FILE, g
    return None
