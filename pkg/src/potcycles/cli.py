"""Command line: check, build, sigma and verify.

Exit codes: 0 success or true verdict, 1 false verdict or failed suite,
2 usage error (including inputs outside an operation's domain), 3 internal
contradiction raised by the construction.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from .builder import BuildOptions, build_all_cycles
from .errors import (
    CapExceeded,
    LemmaContradiction,
    PreconditionError,
    SearchExhausted,
    SequenceFormatError,
)
from .extremal import sigma_csv, sigma_table
from .graphcore import cycle_lengths, has_cycle_of_length
from .seqcore import check_dirac, check_posa, f_index, is_graphic, parse_sequence

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


def _bool(v) -> str:
    return "true" if v else "false"


def _emit(args, report, lines: list[str]):
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=1))
    else:
        for line in lines:
            print(line)
    if args.out:
        from .report import write_report
        write_report(report, args.out)


def _options(args) -> BuildOptions:
    if args.budget is None:
        return BuildOptions()
    return BuildOptions(enum_budget=args.budget, reduction_tries=args.budget)


def _span(values) -> str:
    values = sorted(values)
    if values and values == list(range(values[0], values[-1] + 1)):
        return f"{values[0]}..{values[-1]}"
    return ",".join(map(str, values))


def parse_n_range(text: str) -> range:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if m is None:
        raise PreconditionError(f"bad --n value {text!r}; use N or A..B")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise PreconditionError(f"empty range {text!r}")
    return range(lo, hi + 1)


# --- commands --------------------------------------------------------------

def cmd_check(args):
    from .report import RunReport

    t0 = time.perf_counter()
    seq = parse_sequence(args.sequence)
    graphic = is_graphic(seq)
    verdicts = {"graphic": graphic, "f_index": f_index(seq)}
    if args.l is not None:
        if 5 <= args.l <= seq.n:
            verdicts["posa"] = check_posa(seq, args.l)
            verdicts["dirac"] = check_dirac(seq, args.l)
        else:
            verdicts["posa"] = verdicts["dirac"] = None
    report = RunReport("check", {"sequence": str(seq), "l": args.l}, verdicts,
                       wall_time=time.perf_counter() - t0)
    lines = [f"sequence={seq}", f"graphic={_bool(graphic)}", f"f_index={verdicts['f_index']}"]
    if args.l is not None:
        for key in ("posa", "dirac"):
            val = verdicts[key]
            lines.append(f"{key}={'n/a (needs 5 <= l <= n)' if val is None else _bool(val)}")
    _emit(args, report, lines)
    return EXIT_OK if graphic else EXIT_FALSE


def cmd_build(args):
    from .report import RunReport, write_build

    t0 = time.perf_counter()
    seq = parse_sequence(args.sequence)
    result = build_all_cycles(seq, args.l, _options(args))
    g, ell = result.graph, args.l
    lengths = cycle_lengths(g, range(1, ell + 1))
    where = f"labels 1..{ell}"
    if not set(range(3, ell + 1)) <= lengths:
        lengths = {r for r in range(3, ell + 1) if has_cycle_of_length(g, r)[0]}
        where = "whole graph"
    wanted = sorted(r for r in lengths if r <= ell)
    report = RunReport("build", {"sequence": str(seq), "l": ell},
                       {"spectrum": wanted, "covers": wanted == list(range(3, ell + 1)),
                        "steps": len(result.trace.steps), "tags": sorted(set(result.trace.tags()))})
    lines = [f"sequence={seq}", f"l={ell}", f"spectrum={{{_span(wanted)}}} ({where})",
             f"trace steps={len(result.trace.steps)} tags={','.join(report.verdicts['tags'])}"]
    if args.out:
        paths = write_build(result, args.out, plots=not args.no_plots)
        report.witness_paths = [paths["edges"], paths["dot"]] + ([paths["png"]] if "png" in paths else [])
        report.trace_path = paths["trace"]
        lines += [f"wrote {p}" for p in paths.values()]
    else:
        lines.append(g.to_edge_list().rstrip("\n"))
    report.wall_time = time.perf_counter() - t0
    _emit(args, report, lines)
    return EXIT_OK if report.verdicts["covers"] else EXIT_FALSE


def cmd_sigma(args):
    from .report import RunReport, write_sigma

    t0 = time.perf_counter()
    ns = parse_n_range(args.n)
    if args.l < 5:
        raise PreconditionError(f"l={args.l} < 5: no potential-number formula")
    if ns.start < args.l:
        raise PreconditionError(f"n={ns.start} < l={args.l}")
    rows = sigma_table([args.l], ns)
    report = RunReport("sigma", {"l": args.l, "n": args.n}, {"rows": [q.to_dict() for q in rows]})
    lines = sigma_csv(rows).rstrip("\n").split("\n")
    if args.out:
        paths = write_sigma(rows, args.out, plots=not args.no_plots)
        lines += [f"wrote {p}" for p in paths.values()]
    report.wall_time = time.perf_counter() - t0
    _emit(args, report, lines)
    return EXIT_OK


def cmd_verify(args):
    from .report import RunReport, write_suite
    from .verify import run_suite

    params = {"nmax": args.nmax, "lmax": args.lmax, "threads": args.threads, "cap": args.cap,
              "seed": args.seed, "count": args.count}
    if args.budget is not None:
        params["options"] = _options(args)
    if args.no_oracle:
        params["use_oracle"] = False
    result = run_suite(args.suite, **params)
    report = RunReport("verify", {"suite": args.suite, **{k: v for k, v in params.items()
                                                          if v is not None and k != "options"}},
                       {"status": result.status, "cases": result.cases, "passed": result.passed,
                        "failures": len(result.failures), "capped": len(result.capped)},
                       wall_time=result.wall_time)
    lines = [result.summary()]
    lines += [f"  {k}: {v}" for k, v in sorted(result.counts.items())]
    lines += [f"  FAIL {f}" for f in result.failures[:50]]
    lines += [f"  CAP {c}" for c in result.capped[:20]]
    if args.out:
        paths = write_suite(result, args.out, plots=not args.no_plots)
        lines += [f"wrote {p}" for p in paths.values()]
    _emit(args, report, lines)
    return EXIT_OK if result.status == "pass" else EXIT_FALSE


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="DIR", help="write reports and figures under DIR")
    common.add_argument("--no-plots", action="store_true", help="skip PNG figures in --out")

    parser = argparse.ArgumentParser(
        prog="potcycles",
        description="Degree-sequence conditions for realizations with cycles of every length 3..l.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="graphicality and degree conditions")
    p.add_argument("sequence", help='e.g. "4^4,3^2,2^2"')
    p.add_argument("--l", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", parents=[common], help="realization with cycles 3..l")
    p.add_argument("sequence")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--budget", type=int, help="search budget for the fallback searches")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("sigma", parents=[common], help="potential number sigma(C_l, n)")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", required=True, help="N or A..B")
    p.set_defaults(func=cmd_sigma)

    from .verify import SUITES
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--nmax", type=int)
    p.add_argument("--lmax", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cap", type=int, help="oracle vertex cap")
    p.add_argument("--seed", type=int, help="sampled-large only")
    p.add_argument("--count", type=int, help="sampled-large only")
    p.add_argument("--no-oracle", action="store_true", help="posa-small: skip the oracle cross-check")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SequenceFormatError, PreconditionError) as exc:
        print(f"potcycles {args.command}: refused: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LemmaContradiction as exc:
        print(f"potcycles {args.command}: internal contradiction: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (SearchExhausted, CapExceeded) as exc:
        print(f"potcycles {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
