"""`lab` command line tool.

Utility subcommands (explore, scc, realize, continuum-sample, limit-sample)
operate on single inputs and print JSON.  Every experiment name is also a
subcommand; those read an optional JSON config, run the named study and
write `<out>/replicas.csv` + `<out>/summary.json`.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .continuum import continuum_sccs, run_identification, sample_tilted_excursion
from .explore import classify_edges, forward_dfs
from .graphs import DirectedGraph, read_graph
from .limitlaw import sample_limit_components
from .mdm import Mdm, canonical_code, mdm_from_json
from .realize import realize_sequence, roundtrip_codes
from .rng import derive_seed
from .experiments import EXPERIMENTS, load_config, run_experiment
from .scc import ranked_scc_sequence, tarjan_scc


def _emit(obj, out_path: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out_path and out_path != "-":
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _read_graph_file(path: str):
    try:
        return read_graph(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise SystemExit(f"error: cannot read graph from {path}: {exc}")


def _mdm_summary(x: Mdm) -> dict:
    return {
        "code": canonical_code(x),
        "total_length": x.total_length,
        "excess": x.excess,
        "is_loop": x.is_loop,
        "n_vertices": len(x.vertices),
        "n_edges": len(x.edges),
    }


def _cmd_explore(args) -> int:
    g = _read_graph_file(args.graph)
    ex = forward_dfs(g)
    report = {
        "n": g.n,
        "directed": isinstance(g, DirectedGraph),
        "order": [int(v) for v in ex.order],
        "parent": {str(v): int(ex.parent[v]) for v in range(1, g.n + 1)},
        "roots": [int(v) for v in ex.roots],
        "tree_sizes": [int(s) for s in ex.tree_sizes()],
    }
    if isinstance(g, DirectedGraph):
        cls = classify_edges(g, ex)
        report["edge_classes"] = {
            name: sorted([int(x), int(y)] for x, y in getattr(cls, name))
            for name in ("tree", "surplus", "back", "ancestral_back")
        }
    _emit(report, args.output)
    return 0


def _cmd_scc(args) -> int:
    g = _read_graph_file(args.graph)
    if not isinstance(g, DirectedGraph):
        raise SystemExit("error: scc needs a directed graph")
    part = tarjan_scc(g)
    blocks = part.blocks()
    ranked = ranked_scc_sequence(g, args.top)
    report = {
        "n": g.n,
        "num_blocks": part.num_blocks,
        "blocks": [[int(v) for v in b] for b in blocks],
        "ranked": [_mdm_summary(x) for x in ranked],
    }
    _emit(report, args.output)
    return 0


def _cmd_realize(args) -> int:
    try:
        text = Path(args.input).read_text() if args.input != "-" else sys.stdin.read()
        obj = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(f"error: cannot read multigraph JSON: {exc}")
    if isinstance(obj, dict) and "sequence" in obj:
        raw = obj["sequence"]
    else:
        raw = [obj]
    try:
        gs = [mdm_from_json(json.dumps(o)) for o in raw]
        tp = realize_sequence(gs)
        ok, want, got = roundtrip_codes(gs)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    report = {
        "tree": {
            "n": tp.tree.n,
            "root": int(tp.tree.root),
            "children": [[int(c) for c in ch] for ch in tp.tree.children],
        },
        "pairs": [[int(x), int(y)] for x, y in tp.pairs],
        "roundtrip_ok": ok,
        "input_codes": want,
        "realized_codes": got,
    }
    _emit(report, args.output)
    return 0 if ok else 1


def _cmd_continuum_sample(args) -> int:
    for r in range(args.replicas):
        s = derive_seed(args.seed, r)
        exc = sample_tilted_excursion(args.sigma, args.grid, args.pool,
                                      derive_seed(s, 0))
        mt = run_identification(exc.scaled(2.0), derive_seed(s, 1))
        comps = continuum_sccs(mt)
        record = {
            "replica": r,
            "n_marks": mt.n_marks,
            "n_ancestral": mt.n_ancestral,
            "n_nonancestral": mt.n_nonancestral,
            "components": [_mdm_summary(c) for c in comps],
        }
        sys.stdout.write(json.dumps(record) + "\n")
    return 0


def _cmd_limit_sample(args) -> int:
    for r in range(args.replicas):
        ls = sample_limit_components(args.lam, args.horizon, args.step,
                                     derive_seed(args.seed, r))
        top = ls.components[: args.top_k]
        record = {
            "replica": r,
            "n_excursions": len(ls.excursions),
            "n_components": len(ls.components),
            "n_loops": ls.n_loops,
            "n_complex": ls.n_complex,
            "components": [_mdm_summary(c) for c in top],
        }
        sys.stdout.write(json.dumps(record) + "\n")
    return 0


def _cmd_experiment(args) -> int:
    try:
        cfg = load_config(args.config, name=args.experiment, seed=args.seed,
                          out=args.out)
        summary = run_experiment(cfg)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        raise SystemExit(f"error: {exc}")
    passes = {k: v for k, v in summary.items() if k.startswith("pass")}
    sys.stdout.write(json.dumps({
        "experiment": cfg.name, "out": str(cfg.out), **passes
    }, indent=2) + "\n")
    return 0 if all(passes.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lab",
        description="strongly connected component laboratory for critical random digraphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("explore", help="forward DFS report for a graph file")
    p.add_argument("graph", help="graph file (header 'n=<int> directed=<0|1>')")
    p.add_argument("-o", "--output", default="-", help="output path, '-' for stdout")
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("scc", help="strongly connected component report")
    p.add_argument("graph")
    p.add_argument("--top", type=int, default=3, help="ranked components to reduce")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_scc)

    p = sub.add_parser("realize", help="build a plane tree with identifications "
                                       "realizing the given multigraph sequence")
    p.add_argument("input", help="multigraph JSON file, '-' for stdin")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("continuum-sample",
                       help="mark tilted excursions, one JSON line per replica")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--grid", type=int, default=256, help="grid intervals")
    p.add_argument("--replicas", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pool", type=int, default=100,
                   help="proposal pool size for the tilted sampler")
    p.set_defaults(func=_cmd_continuum_sample)

    p = sub.add_parser("limit-sample",
                       help="component sample of the scaling limit at one lambda")
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--horizon", type=float, default=10.0)
    p.add_argument("--step", type=float, default=1e-4)
    p.add_argument("--replicas", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--top-k", type=int, default=5)
    p.set_defaults(func=_cmd_limit_sample)

    for name in EXPERIMENTS:
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", default=None, help="JSON config file")
        p.add_argument("--seed", type=int, default=None,
                       help="overrides the config seed")
        p.add_argument("--out", default=None, help="overrides the output directory")
        p.set_defaults(func=_cmd_experiment, experiment=name)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
