"""Command-line front end: ``matchskel <subcommand> [flags]``.

Machine-readable output goes to ``--output`` or standard output; diagnostics
go to standard error.  Every random choice is driven by ``--seed``, which
defaults to :data:`DEFAULT_SEED`.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import coreset
from .decomposition import block_decomposition, canonical_vertex_cover, verify_decomposition
from .graphcore import (
    P_SIDE,
    Q_SIDE,
    BipartiteGraph,
    format_edge_list,
    gen_pathological,
    gen_perfect,
    gen_random_bipartite,
    pathological_layout,
    read_edge_list,
)
from .matching import maximum_matching
from .skeleton import matching_skeleton, verify_skeleton

DEFAULT_SEED = 0


class CommandError(Exception):
    """Reported as a one-line message with exit status 1."""


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def _family_graph(args) -> BipartiteGraph:
    fam = args.family
    if fam == "perfect":
        return gen_perfect(_need(args, "p"))
    if fam == "random":
        q = args.q if args.q is not None else _need(args, "p")
        return gen_random_bipartite(_need(args, "p"), q, _need(args, "prob"), args.seed)
    if fam == "pathological":
        return gen_pathological(_need(args, "r"), _need(args, "k"))
    raise CommandError(f"unknown family {fam!r}")


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise CommandError(f"--{name} is required here")
    return value


def _load(args) -> BipartiteGraph:
    if args.input:
        return read_edge_list(args.input)
    if getattr(args, "family", None):
        return _family_graph(args)
    raise CommandError("give --input or --family")


def decomposition_report(g: BipartiteGraph) -> dict:
    d = block_decomposition(g)
    cover = canonical_vertex_cover(g, d)
    return {
        "blocks": [
            {"alpha": _frac(b.alpha), "p": sorted(b.p_set), "q": sorted(b.q_set)} for b in d.blocks
        ],
        "leftover_q": sorted(d.leftover_q),
        "canonical_cover": {
            "p": sorted(v.index for v in cover if v.side == P_SIDE),
            "q": sorted(v.index for v in cover if v.side == Q_SIDE),
        },
    }


def cmd_gen(args) -> None:
    g = _family_graph(args)
    _emit(format_edge_list(g), args.output)


def cmd_decompose(args) -> None:
    g = _load(args)
    if args.verify:
        verdict = verify_decomposition(g, block_decomposition(g))
        if not verdict:
            raise CommandError(f"decomposition check failed: {verdict.violations[0]}")
    _emit(json.dumps(decomposition_report(g), indent=2) + "\n", args.output)


def cmd_skeleton(args) -> None:
    g = _load(args)
    h = matching_skeleton(g)
    verdict = verify_skeleton(g, h)
    if not verdict:
        raise CommandError(f"skeleton check failed: {verdict.violations[0]}")
    _emit(format_edge_list(h.support_graph(g)), args.output)
    sidecar = {
        "weights": [{"p": p, "q": q, "w": _frac(w)} for (p, q), w in h.weights.items()],
        "blocks": [
            {"alpha": _frac(b.alpha), "p": sorted(b.p_set), "q": sorted(b.q_set)}
            for b in h.decomposition.blocks
        ],
    }
    path = args.sidecar or (args.output + ".json" if args.output and args.output != "-" else None)
    if path is None:
        raise CommandError("--sidecar is required when the support goes to standard output")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(sidecar, indent=2) + "\n")


def cmd_cover(args) -> None:
    g = _load(args)
    cover = canonical_vertex_cover(g, block_decomposition(g))
    mm = len(maximum_matching(g))
    if len(cover) != mm:
        raise CommandError(f"canonical cover has {len(cover)} vertices but mm = {mm}")
    out = {
        "p": sorted(v.index for v in cover if v.side == P_SIDE),
        "q": sorted(v.index for v in cover if v.side == Q_SIDE),
        "size": len(cover),
        "mm": mm,
    }
    _emit(json.dumps(out, indent=2) + "\n", args.output)


def _policy(args, g: BipartiteGraph) -> coreset.Policy:
    if args.policy == "canonical":
        return coreset.CANONICAL
    if args.policy == "baseline":
        return coreset.BASELINE
    if args.family != "pathological" or args.input:
        raise CommandError("--policy avoid needs --family pathological (it avoids the P2-Q2 edges)")
    return coreset.pathological_policy(args.r, args.k)


def _report_out(report: coreset.ExperimentReport, args) -> None:
    text = report.to_csv() if args.format == "csv" else report.to_json() + "\n"
    _emit(text, args.output)
    print(
        f"{len(report.trials)} trials, mean ratio {coreset.decimal6(report.mean_ratio)}, "
        f"min {coreset.decimal6(report.min_ratio)}, {report.wall_time:.1f}s",
        file=sys.stderr,
    )


def cmd_simulate(args) -> None:
    g = _load(args)
    config = coreset.ExperimentConfig(
        g, _need(args, "k"), args.reps, args.seed, _policy(args, g), args.workers
    )
    _report_out(coreset.run_experiment(config), args)


def cmd_pathological(args) -> None:
    pathological_layout(_need(args, "r"), _need(args, "k"))
    report = coreset.pathological_experiment(args.r, args.k, args.reps, args.seed, args.workers)
    _report_out(report, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matchskel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph_input=True):
        if graph_input:
            p.add_argument("--input", help="edge-list file")
        p.add_argument("--output", help="output path (default: standard output)")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    def family(p, required=False):
        p.add_argument("--family", choices=("perfect", "random", "pathological"), required=required)
        p.add_argument("--p", type=int, help="|P| (perfect: matching size)")
        p.add_argument("--q", type=int, help="|Q| (random; defaults to --p)")
        p.add_argument("--prob", type=float, help="edge probability (random)")
        p.add_argument("--r", type=int, help="group size (pathological)")

    p = sub.add_parser("gen", help="write a generated graph")
    common(p, graph_input=False)
    family(p, required=True)
    p.add_argument("--k", type=int, help="number of players (pathological)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decompose", help="block decomposition as JSON")
    common(p)
    family(p)
    p.add_argument("--k", type=int)
    p.add_argument("--verify", action="store_true", help="re-derive every block before printing")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("skeleton", help="matching skeleton support plus weight sidecar")
    common(p)
    family(p)
    p.add_argument("--k", type=int)
    p.add_argument("--sidecar", help="JSON weights path (default: <output>.json)")
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("cover", help="canonical vertex cover, checked against mm")
    common(p)
    family(p)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_cover)

    for name, func in (("simulate", cmd_simulate), ("pathological", cmd_pathological)):
        p = sub.add_parser(name, help="coreset experiment (CSV or JSON report)")
        common(p, graph_input=name == "simulate")
        if name == "simulate":
            family(p)
            p.add_argument("--policy", choices=("canonical", "avoid", "baseline"), default="canonical")
        else:
            p.add_argument("--r", type=int, required=True)
        p.add_argument("--k", type=int, required=name == "pathological")
        p.add_argument("--reps", type=int, default=1)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--workers", type=int, default=1)
        p.set_defaults(func=func)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (CommandError, ValueError, OSError) as exc:
        print(f"matchskel {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
