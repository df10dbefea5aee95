"""Command-line front end.

Four subcommands: ``analyze`` (pattern classification and decomposition
report), ``count`` (homomorphism counting with optional oracle
cross-check), ``reduce`` (triangle recovery through a hard pattern's
gadget), and ``bench`` (near-linearity evidence on synthetic
bounded-degeneracy hosts). Stdout carries one JSON report; logs go to
stderr. Exit codes: 0 success, 1 usage, 2 input error, 3 verification
mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from . import __version__
from .counting import (
    HardPatternError,
    count_homs,
    count_homs_brute,
)
from .dot import certificate_dot, decomposition_dot
from .graph import (
    EdgeListError,
    Graph,
    count_triangles_direct,
    degeneracy_order,
    parse_edge_list,
    write_edge_list,
)
from .hostgen import bounded_degeneracy_host
from .pattern import (
    DEFAULT_MAX_PATTERN_VERTICES,
    DisconnectedPatternError,
    Pattern,
    PatternSizeError,
    Width1Failure,
    build_width1_decomposition,
    hardness_certificate,
    orientation_mask,
)
from .reduction import build_gadget, reduction_report

log = logging.getLogger("homcount")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3

VERIFY_HOST_LIMIT = 200

BENCH_PATTERNS: tuple[tuple[str, tuple[tuple[int, int], ...]], ...] = (
    ("C4", ((0, 1), (1, 2), (2, 3), (0, 3))),
    ("C5", ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4))),
    ("K4", ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))),
    ("bull", ((0, 1), (0, 2), (1, 2), (1, 3), (2, 4))),
)


class CLIError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we use 1
        raise CLIError(EXIT_USAGE, message)


def _load_graph(path: str) -> Graph:
    try:
        with open(path, "rb") as fh:
            return parse_edge_list(fh)
    except OSError as exc:
        raise CLIError(EXIT_INPUT, f"cannot read {path}: {exc}") from exc
    except EdgeListError as exc:
        raise CLIError(EXIT_INPUT, f"{path}: {exc}") from exc


def _load_pattern(path: str, max_k: int) -> Pattern:
    g = _load_graph(path)
    try:
        return Pattern(g, max_vertices=max_k)
    except (PatternSizeError, DisconnectedPatternError) as exc:
        raise CLIError(EXIT_INPUT, f"{path}: {exc}") from exc


def _certificate_json(cert) -> dict:
    return {
        "edge_mask": cert.edge_mask,
        "oriented_edges": [
            f"{u}->{w}"
            for u in range(cert.orientation.vertex_count)
            for w in cert.orientation.out_neighbors[u]
        ],
        "triangle": list(cert.triangle),
        "witnesses": list(cert.witnesses),
    }


def _base_report(command: str, args: argparse.Namespace) -> dict:
    config = {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in ("func", "command")
    }
    return {
        "command": command,
        "version": __version__,
        "config": config,
        "timings_ms": {},
    }


def _classification(p: Pattern) -> dict:
    _, kappa = degeneracy_order(p.graph)
    return {
        "k": p.k,
        "m": p.graph.edge_count,
        "licl": p.licl,
        "degeneracy": kappa,
        "verdict": "near-linear" if p.licl <= 5 else "hard",
    }


def cmd_analyze(args: argparse.Namespace) -> tuple[dict, int]:
    report = _base_report("analyze", args)
    t0 = time.perf_counter()
    p = _load_pattern(args.pattern, args.max_k)
    report["inputs"] = {"pattern": {"path": args.pattern, "n": p.k, "m": p.graph.edge_count}}
    report["classification"] = _classification(p)
    report["timings_ms"]["load"] = (time.perf_counter() - t0) * 1000

    t0 = time.perf_counter()
    per_orientation = []
    for h in p.orientations:
        t = build_width1_decomposition(h)
        entry = {"edge_mask": orientation_mask(p, h)}
        if isinstance(t, Width1Failure):
            entry["decomposed"] = False
            entry["blocking_sources"] = sorted(t.blocking_sources)
        else:
            entry["decomposed"] = True
            entry["width"] = t.width
        per_orientation.append(entry)
    report["orientations"] = {
        "count": len(per_orientation),
        "all_decomposed": all(e["decomposed"] for e in per_orientation),
        "per_orientation": per_orientation,
    }
    dot_text = None
    if p.licl >= 6:
        cert = hardness_certificate(p)
        report["certificate"] = _certificate_json(cert)
        dot_text = certificate_dot(cert)
    else:
        first = build_width1_decomposition(p.orientations[0])
        dot_text = decomposition_dot(first)
    report["dot"] = dot_text
    report["timings_ms"]["analyze"] = (time.perf_counter() - t0) * 1000

    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(dot_text)
        log.info("wrote DOT to %s", args.dot)
    return report, EXIT_OK


def cmd_count(args: argparse.Namespace) -> tuple[dict, int]:
    report = _base_report("count", args)
    t0 = time.perf_counter()
    g = _load_graph(args.graph)
    p = _load_pattern(args.pattern, args.max_k)
    report["inputs"] = {
        "graph": {"path": args.graph, "n": g.vertex_count, "m": g.edge_count},
        "pattern": {"path": args.pattern, "n": p.k, "m": p.graph.edge_count},
    }
    report["classification"] = _classification(p)
    report["timings_ms"]["load"] = (time.perf_counter() - t0) * 1000

    t0 = time.perf_counter()
    try:
        count, engine_used = count_homs(g, p, args.engine, workers=args.threads)
    except HardPatternError as exc:
        report["error"] = str(exc)
        report["certificate"] = _certificate_json(exc.certificate)
        return report, EXIT_USAGE
    report["timings_ms"]["count"] = (time.perf_counter() - t0) * 1000
    report["result"] = str(count)
    report["engine_used"] = engine_used

    code = EXIT_OK
    if args.verify:
        t0 = time.perf_counter()
        if g.vertex_count > VERIFY_HOST_LIMIT:
            report["verification"] = {
                "status": "skipped",
                "reason": f"host exceeds {VERIFY_HOST_LIMIT} vertices",
            }
        else:
            if engine_used == "dtd":
                oracle = count_homs_brute(g, p)
                oracle_name = "brute"
            elif p.licl <= 5:
                oracle, _ = count_homs(g, p, "dtd", workers=args.threads)
                oracle_name = "dtd"
            else:
                oracle = None
                oracle_name = None
            if oracle is None:
                report["verification"] = {
                    "status": "skipped",
                    "reason": "no independent engine for a hard pattern",
                }
            else:
                verdict = "match" if oracle == count else "mismatch"
                report["verification"] = {
                    "status": verdict,
                    "oracle": oracle_name,
                    "oracle_count": str(oracle),
                }
                if verdict == "mismatch":
                    code = EXIT_MISMATCH
        report["timings_ms"]["verify"] = (time.perf_counter() - t0) * 1000
    return report, code


def cmd_reduce(args: argparse.Namespace) -> tuple[dict, int]:
    report = _base_report("reduce", args)
    g = _load_graph(args.graph)
    p = _load_pattern(args.pattern, args.max_k)
    report["inputs"] = {
        "graph": {"path": args.graph, "n": g.vertex_count, "m": g.edge_count},
        "pattern": {"path": args.pattern, "n": p.k, "m": p.graph.edge_count},
    }
    report["classification"] = _classification(p)
    if p.licl < 6:
        raise CLIError(
            EXIT_USAGE,
            f"pattern's longest induced cycle has length {p.licl}; patterns "
            "with length <= 5 admit the near-linear engine directly and have "
            "no hard reduction (use `count`)",
        )
    t0 = time.perf_counter()
    report["reduction"] = reduction_report(g, p)
    report["timings_ms"]["reduce"] = (time.perf_counter() - t0) * 1000
    if args.emit_gadget:
        inst = build_gadget(g, p)
        report["gadget_edge_list"] = write_edge_list(inst.gadget)
    code = EXIT_OK if report["reduction"]["verdict"] == "match" else EXIT_MISMATCH
    return report, code


def cmd_bench(args: argparse.Namespace) -> tuple[dict, int]:
    report = _base_report("bench", args)
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError as exc:
        raise CLIError(EXIT_USAGE, f"bad --sizes value: {exc}") from exc
    if not sizes:
        raise CLIError(EXIT_USAGE, "--sizes must list at least one edge count")

    patterns = {
        name: Pattern(Graph.from_edges(max(max(e) for e in edges) + 1, edges))
        for name, edges in BENCH_PATTERNS
    }
    runs = []
    for m in sizes:
        t0 = time.perf_counter()
        host = bounded_degeneracy_host(m, attach=3, seed=args.seed)
        gen_ms = (time.perf_counter() - t0) * 1000
        entry = {
            "edges": m,
            "vertices": host.vertex_count,
            "generate_ms": gen_ms,
            "counts": {},
            "count_ms": {},
        }
        for name, p in patterns.items():
            t0 = time.perf_counter()
            count, _ = count_homs(host, p, "dtd", workers=args.threads)
            entry["count_ms"][name] = (time.perf_counter() - t0) * 1000
            entry["counts"][name] = str(count)
        entry["total_count_ms"] = sum(entry["count_ms"].values())
        runs.append(entry)
        log.info("bench m=%d done in %.0f ms", m, entry["total_count_ms"])

    ratios = []
    for prev, cur in zip(runs, runs[1:]):
        size_ratio = cur["edges"] / prev["edges"]
        time_ratio = cur["total_count_ms"] / max(prev["total_count_ms"], 1e-9)
        ratios.append(
            {
                "from_edges": prev["edges"],
                "to_edges": cur["edges"],
                "size_ratio": size_ratio,
                "time_ratio": time_ratio,
                "near_linear_bound": 2 * size_ratio,
                "within_bound": time_ratio <= 2 * size_ratio,
            }
        )
    report["runs"] = runs
    report["ratios"] = ratios
    report["timings_ms"]["total"] = sum(r["total_count_ms"] + r["generate_ms"] for r in runs)
    return report, EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="homcount", description=__doc__)
    parser.add_argument("--version", action="version", version=f"homcount {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument(
            "--max-k",
            type=int,
            default=DEFAULT_MAX_PATTERN_VERTICES,
            help="pattern vertex limit (orientation enumeration is factorial in k)",
        )

    sp = sub.add_parser("analyze", help="classify a pattern and build its decompositions")
    sp.add_argument("pattern")
    sp.add_argument("--dot", default=None, help="write decomposition/certificate DOT here")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("count", help="count pattern homomorphisms in a host graph")
    sp.add_argument("graph")
    sp.add_argument("pattern")
    sp.add_argument("--engine", choices=("auto", "dtd", "brute"), default="auto")
    sp.add_argument("--verify", action="store_true", help="cross-check with the other engine")
    sp.add_argument("--threads", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("reduce", help="recover a triangle count through a hard pattern")
    sp.add_argument("graph")
    sp.add_argument("pattern")
    sp.add_argument("--emit-gadget", action="store_true")
    sp.add_argument("--threads", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("bench", help="near-linearity evidence on synthetic hosts")
    sp.add_argument("--sizes", default="10000,100000", help="comma-separated edge counts")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report, code = args.func(args)
    except CLIError as exc:
        json.dump({"error": str(exc), "version": __version__}, sys.stdout, sort_keys=True)
        sys.stdout.write("\n")
        log.error("%s", exc)
        return exc.code
    json.dump(report, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
