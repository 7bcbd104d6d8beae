"""File output for the command line: delimited data, graph exports and figures.

Everything lands under one caller-given directory.  matplotlib is imported
only when a figure is actually rendered, so the rest of the package never
pulls it in.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .builder import BuildResult
from .extremal import CLIQUE_CORNER, PotentialNumberQuery, sigma_csv
from .graphcore import SimpleGraph, has_cycle_of_length, parse_edge_list
from .verify import SuiteResult

__all__ = ["RunReport", "write_build", "write_sigma", "write_suite", "write_report"]


@dataclass
class RunReport:
    command: str
    inputs: dict
    verdicts: dict = field(default_factory=dict)
    witness_paths: list = field(default_factory=list)
    trace_path: str | None = None
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "verdicts": self.verdicts,
                "witness_paths": self.witness_paths, "trace_path": self.trace_path,
                "wall_time": round(self.wall_time, 4)}


def _outdir(path) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def write_edge_list(g: SimpleGraph, path: Path) -> Path:
    path.write_text(g.to_edge_list())
    if parse_edge_list(path.read_text()) != g:
        raise RuntimeError(f"{path} does not round-trip")
    return path


# --- build -----------------------------------------------------------------

def _longest_top_cycle(result: BuildResult) -> tuple[int, ...]:
    found, cyc = has_cycle_of_length(result.graph, result.ell, within=range(1, result.ell + 1))
    if not found:
        found, cyc = has_cycle_of_length(result.graph, result.ell)
    return tuple(cyc) if found else ()


def plot_build(result: BuildResult, path: Path) -> Path:
    """Circular drawing; labels 1..l on the outer ring, the l-cycle in red."""
    plt = _pyplot()
    g, ell = result.graph, result.ell
    pos = {}
    inner = [v for v in range(ell + 1, g.n + 1)]
    for k, v in enumerate(range(1, ell + 1)):
        a = math.pi / 2 - 2 * math.pi * k / ell
        pos[v] = (math.cos(a), math.sin(a))
    for k, v in enumerate(inner):
        a = math.pi / 2 - 2 * math.pi * (k + 0.5) / max(len(inner), 1)
        pos[v] = (0.5 * math.cos(a), 0.5 * math.sin(a))
    cyc = _longest_top_cycle(result)
    hot = {frozenset((cyc[i], cyc[(i + 1) % len(cyc)])) for i in range(len(cyc))}

    fig, ax = plt.subplots(figsize=(5, 5))
    for u, v in g.sorted_edges():
        on = frozenset((u, v)) in hot
        ax.plot([pos[u][0], pos[v][0]], [pos[u][1], pos[v][1]],
                color="tab:red" if on else "0.7", lw=2.0 if on else 0.8, zorder=1)
    for v, (x, y) in pos.items():
        ax.scatter([x], [y], s=260, color="white", edgecolor="black", zorder=2)
        ax.text(x, y, f"x{v}", ha="center", va="center", fontsize=7, zorder=3)
    ax.set_title(f"({result.sequence}), C_{ell} highlighted", fontsize=9)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_build(result: BuildResult, outdir, plots: bool = True) -> dict[str, str]:
    out = _outdir(outdir)
    stem = f"witness_l{result.ell}"
    paths = {
        "edges": write_edge_list(result.graph, out / f"{stem}.edges"),
        "dot": out / f"{stem}.dot",
        "trace": out / "trace.txt",
        "trace_json": out / "trace.json",
    }
    cyc = _longest_top_cycle(result)
    highlight = [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
    paths["dot"].write_text(result.graph.to_dot("witness", highlight=highlight))
    paths["trace"].write_text(result.trace.to_text())
    paths["trace_json"].write_text(result.trace.to_json() + "\n")
    if plots:
        paths["png"] = plot_build(result, out / f"{stem}.png")
    return {k: str(v) for k, v in paths.items()}


# --- sigma -----------------------------------------------------------------

def plot_sigma(rows: list[PotentialNumberQuery], path: Path) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    for ell in sorted({q.ell for q in rows}):
        pts = [q for q in rows if q.ell == ell]
        line, = ax.plot([q.n for q in pts], [q.value for q in pts], lw=1, label=f"l={ell}")
        clique = [q for q in pts if q.dominant_branch == CLIQUE_CORNER]
        split = [q for q in pts if q.dominant_branch != CLIQUE_CORNER]
        ax.scatter([q.n for q in clique], [q.value for q in clique], marker="s", s=18,
                   color=line.get_color(), zorder=3)
        ax.scatter([q.n for q in split], [q.value for q in split], marker="o", s=18,
                   color=line.get_color(), zorder=3)
    from matplotlib.ticker import MaxNLocator
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.set_xlabel("n")
    ax.set_ylabel("sigma(C_l, n)")
    ax.set_title("potential number; squares: clique-corner, dots: split-corner", fontsize=9)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_sigma(rows: list[PotentialNumberQuery], outdir, plots: bool = True) -> dict[str, str]:
    out = _outdir(outdir)
    paths = {"csv": out / "sigma.csv"}
    paths["csv"].write_text(sigma_csv(rows))
    if plots and rows:
        paths["png"] = plot_sigma(rows, out / "sigma.png")
    return {k: str(v) for k, v in paths.items()}


# --- verify ----------------------------------------------------------------

def _write_counts(counts: dict, path: Path) -> Path:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["key", "count"])
        for key, val in sorted(counts.items()):
            writer.writerow([key, val])
    return path


def plot_suite(result: SuiteResult, path: Path) -> Path:
    plt = _pyplot()
    items = sorted(result.counts.items())
    fig, ax = plt.subplots(figsize=(6, 0.6 + 0.3 * max(len(items), 1)))
    if items:
        ax.barh([k for k, _ in items], [v for _, v in items], color="tab:blue")
        ax.invert_yaxis()
    ax.set_title(f"{result.name}: {result.passed}/{result.cases} passed", fontsize=9)
    ax.tick_params(labelsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_suite(result: SuiteResult, outdir, plots: bool = True) -> dict[str, str]:
    out = _outdir(outdir)
    stem = result.name
    paths = {"json": out / f"{stem}.json", "csv": out / f"{stem}_counts.csv"}
    paths["json"].write_text(json.dumps(result.to_dict(), indent=1) + "\n")
    _write_counts(dict(result.counts), paths["csv"])
    if plots:
        paths["png"] = plot_suite(result, out / f"{stem}_counts.png")
    return {k: str(v) for k, v in paths.items()}


def write_report(report: RunReport, outdir) -> str:
    path = _outdir(outdir) / "report.json"
    path.write_text(json.dumps(report.to_dict(), indent=1) + "\n")
    return str(path)
