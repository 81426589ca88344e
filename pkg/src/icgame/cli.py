"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 invariant violation,
4 strategy failure (the coloring side lost at its guaranteed palette).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .alice import StrategyFailure
from .bounds import BoundError, andres_bounds, arboricity_palette_bound
from .campaign import (
    ExperimentConfig,
    default_output_dir,
    make_alice,
    make_bob,
    run_campaign,
    write_outputs,
)
from .engine import ALICE_WINS, PlayerError, play
from .forests import ROOT_POLICIES, decompose, relations
from .graph import FAMILIES, Graph, GraphError, generate, parse_graph_text
from .monitors import MonitorSuite
from .opponents import exact_ig, static_chi_i

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INVARIANT = 3
EXIT_STRATEGY = 4


def _parse_params(text: str | None) -> dict:
    """Parse 'n=10,p=0.2' or a bare number (shorthand for n)."""
    if not text:
        return {}
    if "=" not in text:
        return {"n": text}
    out = {}
    for part in text.split(","):
        key, _, value = part.partition("=")
        out[key.strip()] = value.strip()
    return out


def _load_graph(args) -> Graph:
    if getattr(args, "graph", None):
        return parse_graph_text(Path(args.graph).read_text())
    if getattr(args, "family", None):
        return generate(args.family, _parse_params(args.params), args.seed or 0)
    raise GraphError("provide --graph FILE or --family NAME [--params ...]")


def cmd_play(args) -> int:
    graph = _load_graph(args)
    dec = decompose(graph, args.root_policy)
    rel = relations(dec)
    if args.k is not None:
        palette = args.k
    else:
        palette = arboricity_palette_bound(graph.max_degree, rel.forest_count)
    alice = make_alice(args.alice, rel)
    bob = make_bob(args.bob, rel, args.seed or 0)
    suite = MonitorSuite(rel, palette, strategy_alice=args.alice == "strategy")
    transcript = play(
        graph,
        palette,
        alice,
        bob,
        seed=args.seed,
        decomposition_dump=dec.dump(),
        root_policy=args.root_policy,
        observers=[suite],
    )
    if args.trace:
        sys.stdout.write(transcript.to_jsonl())
    if args.out:
        Path(args.out).write_text(transcript.to_jsonl())
    print(
        f"result={transcript.result} moves={len(transcript.moves())} "
        f"palette={palette} arboricity={rel.forest_count}"
    )
    if suite.report.total_violations:
        print(f"invariant violations: {suite.report.total_violations}")
        return EXIT_INVARIANT
    if args.alice == "strategy" and args.k is None and transcript.result != ALICE_WINS:
        return EXIT_STRATEGY
    return EXIT_OK


def cmd_exact(args) -> int:
    graph = _load_graph(args)
    k_range = None
    if args.k_range:
        lo, _, hi = args.k_range.partition(":")
        k_range = (int(lo), int(hi))
    result = exact_ig(graph, k_range)
    vector = " ".join(f"{k}:{w}" for k, w in sorted(result.winners.items()))
    print(f"win vector: {vector}")
    print(f"minimal winning palette: {result.minimal_winning_k}")
    print(f"nodes: {result.node_count}")
    if result.non_monotone:
        print(f"NON-MONOTONE at palettes: {sorted(result.non_monotone)}")
    return EXIT_OK


def cmd_chi_i(args) -> int:
    graph = _load_graph(args)
    print(static_chi_i(graph))
    return EXIT_OK


def cmd_decompose(args) -> int:
    graph = _load_graph(args)
    dec = decompose(graph, args.root_policy, args.seed)
    sys.stdout.write(dec.dump())
    print(f"forests: {dec.forest_count}", file=sys.stderr)
    return EXIT_OK


def cmd_bound(args) -> int:
    print(arboricity_palette_bound(args.delta, args.arboricity))
    if args.andres is not None:
        b = andres_bounds(args.delta, args.andres)
        print(f"degenerate general: {b.general}")
        print(
            f"degenerate high-degree: {b.high_degree}"
            f" ({'applies' if b.high_degree_applies else 'not applicable'})"
        )
        print(
            f"degenerate low-degree: {b.low_degree}"
            f" ({'applies' if b.low_degree_applies else 'not applicable'})"
        )
    return EXIT_OK


def cmd_verify(args) -> int:
    config = ExperimentConfig.from_toml_file(args.config)
    result = run_campaign(config)
    out_dir = Path(config.output_dir or default_output_dir())
    paths = write_outputs(result, out_dir)
    print(
        f"games={len(result.rows)} alice_wins={result.alice_wins} "
        f"violations={result.report.total_violations} "
        f"outputs={out_dir}"
    )
    for name, p in sorted(paths.items()):
        print(f"  {name}: {p}")
    if result.losses:
        print("STRATEGY FAILURE: falsifying transcript in losses.jsonl")
        return EXIT_STRATEGY
    if result.report.total_violations:
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_goldens(args) -> int:
    from .goldens import (
        default_golden_path,
        goldens_csv,
        refresh_goldens,
        verify_goldens,
    )

    path = Path(args.file) if args.file else default_golden_path()
    if args.refresh:
        target = refresh_goldens(path)
        print(f"regenerated {target}")
        return EXIT_OK
    if path.exists():
        mismatches = verify_goldens(path)
        sys.stdout.write(path.read_text())
        if mismatches:
            print(f"STALE goldens for: {', '.join(mismatches)}", file=sys.stderr)
            return EXIT_INVARIANT
        return EXIT_OK
    sys.stdout.write(goldens_csv())
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import serve

    serve(port=args.port, host=args.host)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icgame",
        description="Incidence coloring game engine, exact solvers and verifier",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_options(p):
        p.add_argument("--graph", help="graph text file ('n m' header, 'u v' lines)")
        p.add_argument("--family", choices=sorted(FAMILIES), help="generator family")
        p.add_argument("--params", help="family parameters, e.g. n=10,p=0.2")
        p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("play", help="play one game")
    add_graph_options(p)
    p.add_argument("--k", type=int, help="palette size (default: strategy bound)")
    p.add_argument("--theorem-bound", action="store_true",
                   help="use the strategy palette bound (default)")
    p.add_argument("--alice", choices=["strategy", "greedy"], default="strategy")
    p.add_argument("--bob", choices=["random", "spoiler", "minimax"], default="random")
    p.add_argument("--root-policy", choices=ROOT_POLICIES, default="first_vertex")
    p.add_argument("--trace", action="store_true", help="print the transcript")
    p.add_argument("--out", help="write the transcript to a file")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("exact", help="exact game value over a palette range")
    add_graph_options(p)
    p.add_argument("--k-range", help="lo:hi palette range")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("chi-i", help="exact incidence chromatic number")
    add_graph_options(p)
    p.set_defaults(func=cmd_chi_i)

    p = sub.add_parser("decompose", help="forest decomposition dump")
    add_graph_options(p)
    p.add_argument("--root-policy", choices=ROOT_POLICIES, default="first_vertex")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("bound", help="palette bound formulas")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--arboricity", type=int, required=True)
    p.add_argument("--andres", type=int, metavar="K",
                   help="also print the degeneracy-based bounds for K")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="run a campaign from a TOML config")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "goldens", help="print/check the frozen exact-value table"
    )
    p.add_argument("--refresh", action="store_true",
                   help="re-solve and overwrite the frozen file")
    p.add_argument("--file", help="alternative golden file path")
    p.set_defaults(func=cmd_goldens)

    p = sub.add_parser("serve", help="interactive game service")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (GraphError, BoundError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except StrategyFailure as exc:
        print(f"strategy failure: {exc}", file=sys.stderr)
        return EXIT_STRATEGY
    except PlayerError as exc:
        print(f"player error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
