"""Batch command-line front door.

Subcommands: generate, hull, components, rips, cech, persist, mapper, betti.
Every JSON artifact is {"config": ..., "result": ...} with the full run
configuration echoed, no timestamps, so identical runs are byte-identical.

Exit codes: 0 success, 2 usage error, 3 input/parse error, 4 computation
error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import complexes, geometry, homology, mapper
from .data import AnnulusSpec, ParseError, generate_annulus, load_csv, save_csv

__all__ = ["main", "entry"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_COMPUTE = 4


def _config_dict(args: argparse.Namespace) -> Dict[str, Any]:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    return cfg


def _emit_json(payload: Dict[str, Any], out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_cloud(args: argparse.Namespace) -> geometry.PointCloud:
    return load_csv(args.input)


def _cmd_generate(args: argparse.Namespace) -> None:
    spec = AnnulusSpec(args.n, args.radius, args.spread, args.seed)
    cloud = generate_annulus(spec)
    save_csv(cloud, args.out)


def _cmd_hull(args: argparse.Namespace) -> None:
    cloud = _load_cloud(args)
    hull = geometry.convex_hull(cloud, args.p)
    _emit_json(
        {
            "config": _config_dict(args),
            "result": {
                "hull_indices": list(hull.hull_indices),
                "diameter": hull.diameter,
                "diameter_pair": list(hull.diameter_pair),
            },
        },
        args.out,
    )


def _cmd_components(args: argparse.Namespace) -> None:
    cloud = _load_cloud(args)
    dm = geometry.distance_matrix(cloud, args.p)
    clusters = complexes.connected_components(complexes.neighbor_graph(dm, args.radius))
    _emit_json(
        {
            "config": _config_dict(args),
            "result": {
                "n_components": len(clusters),
                "clusters": [sorted(c) for c in clusters],
            },
        },
        args.out,
    )


def _cmd_rips(args: argparse.Namespace) -> None:
    cloud = _load_cloud(args)
    dm = geometry.distance_matrix(cloud, args.p)
    sc = complexes.rips_complex(dm, args.scale, args.max_dim)
    _emit_json(
        {
            "config": _config_dict(args),
            "result": {"simplex_counts": {str(d): c for d, c in sc.counts().items()}},
        },
        args.out,
    )


def _cmd_cech(args: argparse.Namespace) -> None:
    cloud = _load_cloud(args)
    sc = complexes.cech_complex(cloud, args.scale, args.max_dim)
    _emit_json(
        {
            "config": _config_dict(args),
            "result": {"simplex_counts": {str(d): c for d, c in sc.counts().items()}},
        },
        args.out,
    )


def _pair_rows(pairs: List[homology.PersistencePair], radius_axis: bool) -> List[List]:
    scale = 0.5 if radius_axis else 1.0
    rows = []
    for p in pairs:
        death = None if math.isinf(p.death) else p.death * scale
        rows.append([p.dimension, p.birth * scale, death])
    return rows


def _cmd_persist(args: argparse.Namespace) -> None:
    from . import plots  # deferred: pulls in matplotlib

    cloud = _load_cloud(args)
    dm = geometry.distance_matrix(cloud, args.p)
    fc = complexes.rips_filtration(dm, args.max_dim)
    diagram = homology.persistence_diagram(fc)
    # With a truncated filtration (max_dim < n-1), essential classes in the
    # top simplex dimension are truncation artifacts (nothing was there to
    # kill them), so the report covers dimensions below max_dim only.
    top = args.max_dim if args.max_dim < cloud.n - 1 else args.max_dim + 1
    shown = [p for p in diagram.pairs if p.dimension < top]
    if not args.all_pairs:
        shown = [p for p in shown if p.persistence > 0]
    shown.sort(key=lambda p: (p.dimension, p.birth, p.death))
    _emit_json(
        {
            "config": _config_dict(args),
            "result": {
                "max_scale": diagram.max_scale * (0.5 if args.radius_axis else 1.0),
                "pairs": _pair_rows(shown, args.radius_axis),
            },
        },
        args.out,
    )
    reported = homology.PersistenceDiagram(shown, diagram.max_scale)
    stem = Path(args.out).with_suffix("")
    plots.save_svg(
        plots.barcode_figure(reported, include_zero=True, radius_axis=args.radius_axis),
        stem.parent / (stem.name + "_barcode.svg"),
    )
    plots.save_svg(
        plots.diagram_figure(reported, include_zero=True, radius_axis=args.radius_axis),
        stem.parent / (stem.name + "_diagram.svg"),
    )


def _node_label(node: mapper.MapperNode) -> str:
    return f"U{node.interval_index}.c{node.cluster_index} ({len(node.members)})"


def _graph_to_dot(graph: mapper.MapperGraph) -> str:
    """DOT with nodes positioned at centroids scaled into a unit viewport."""
    xs = [nd.centroid[0] for nd in graph.nodes]
    ys = [nd.centroid[1] if len(nd.centroid) > 1 else 0.0 for nd in graph.nodes]
    span_x = (max(xs) - min(xs)) or 1.0
    span_y = (max(ys) - min(ys)) or 1.0
    lines = ["graph mapper {"]
    for i, nd in enumerate(graph.nodes):
        px = (nd.centroid[0] - min(xs)) / span_x
        py = ((nd.centroid[1] if len(nd.centroid) > 1 else 0.0) - min(ys)) / span_y
        lines.append(
            f'  n{i} [label="{_node_label(nd)}", pos="{px:.6f},{py:.6f}!"];'
        )
    for a, b in graph.edges:
        lines.append(f"  n{a} -- n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _graph_result(graph: mapper.MapperGraph) -> Dict[str, Any]:
    return {
        "nodes": [
            {
                "interval": nd.interval_index,
                "cluster": nd.cluster_index,
                "members": list(nd.members),
                "centroid": list(nd.centroid),
                "size": len(nd.members),
            }
            for nd in graph.nodes
        ],
        "edges": [list(e) for e in graph.edges],
        "cycle_rank": graph.cycle_rank(),
    }


def _cmd_mapper(args: argparse.Namespace) -> None:
    cloud = _load_cloud(args)
    if args.cluster_cover:
        dm = geometry.distance_matrix(cloud, args.p)
        graph = mapper.cluster_cover_complex(
            cloud, dm, args.cluster_radius, args.link_threshold
        )
    else:
        values = mapper.filter_project(cloud, args.axis)
        cover = mapper.uniform_cover(
            float(values.min()), float(values.max()), args.intervals, args.overlap
        )
        nodes = mapper.refined_pullback(cloud, values, cover, args.cluster_radius, args.p)
        graph = mapper.nerve(nodes)
    out = Path(args.out)
    if args.format in ("json", "both"):
        _emit_json({"config": _config_dict(args), "result": _graph_result(graph)}, str(out))
    dot_path = out.with_suffix(".dot") if args.format == "both" else out
    if args.format in ("dot", "both"):
        Path(dot_path).write_text(_graph_to_dot(graph), encoding="utf-8")


def _cmd_betti(args: argparse.Namespace) -> None:
    cloud = _load_cloud(args)
    dm = geometry.distance_matrix(cloud, args.p)
    sc = complexes.rips_complex(dm, args.scale, args.max_dim)
    betti = homology.betti_numbers(sc, args.max_dim)
    _emit_json(
        {"config": _config_dict(args), "result": {"betti": betti}},
        args.out,
    )


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="input CSV point cloud")
    p.add_argument("--p", type=float, default=2.0, help="metric p-norm exponent")
    p.add_argument("--out", default=None, help="output JSON path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topocloud",
        description="Topological data analysis for point clouds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit a random annulus as CSV")
    g.add_argument("--n", type=int, default=500)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--radius", type=float, default=1.0, help="annulus center radius")
    g.add_argument("--spread", type=float, default=0.05, help="radial noise sigma")
    g.add_argument("--out", required=True, help="output CSV path")
    g.set_defaults(func=_cmd_generate)

    h = sub.add_parser("hull", help="convex hull and exact diameter")
    _add_input_flags(h)
    h.set_defaults(func=_cmd_hull)

    c = sub.add_parser("components", help="connected components at a ball radius")
    _add_input_flags(c)
    c.add_argument("--radius", type=float, required=True, help="ball radius r (edge at d <= 2r)")
    c.set_defaults(func=_cmd_components)

    r = sub.add_parser("rips", help="Vietoris-Rips complex summary")
    _add_input_flags(r)
    r.add_argument("--scale", type=float, required=True, help="Rips scale alpha")
    r.add_argument("--max-dim", type=int, default=2)
    r.set_defaults(func=_cmd_rips)

    ce = sub.add_parser("cech", help="Cech complex summary (2-D clouds)")
    _add_input_flags(ce)
    ce.add_argument("--scale", type=float, required=True, help="ball radius alpha")
    ce.add_argument("--max-dim", type=int, default=2)
    ce.set_defaults(func=_cmd_cech)

    pe = sub.add_parser("persist", help="persistence diagram, barcode and scatter SVGs")
    pe.add_argument("--input", required=True, help="input CSV point cloud")
    pe.add_argument("--p", type=float, default=2.0)
    pe.add_argument("--max-dim", type=int, default=2)
    pe.add_argument("--all-pairs", action="store_true", help="include zero-length pairs")
    pe.add_argument(
        "--radius-axis",
        action="store_true",
        help="report scales as ball radii (half the pairwise distance)",
    )
    pe.add_argument("--out", required=True, help="output JSON path; SVGs saved alongside")
    pe.set_defaults(func=_cmd_persist)

    m = sub.add_parser("mapper", help="Mapper graph as JSON and DOT")
    m.add_argument("--input", required=True, help="input CSV point cloud")
    m.add_argument("--p", type=float, default=2.0)
    m.add_argument("--intervals", type=int, default=6, help="cover interval count")
    m.add_argument("--overlap", type=float, default=0.35, help="cover overlap fraction")
    m.add_argument("--axis", type=int, default=0, help="filter projection axis")
    m.add_argument("--cluster-radius", type=float, default=0.15)
    m.add_argument(
        "--cluster-cover",
        action="store_true",
        help="skip the filter: nodes are whole-cloud clusters linked by proximity",
    )
    m.add_argument(
        "--link-threshold",
        type=float,
        default=None,
        help="cluster-cover linking distance (default 2 * cluster radius)",
    )
    m.add_argument(
        "--format", choices=("json", "dot", "both"), default="both", help="artifacts to write"
    )
    m.add_argument("--out", required=True, help="output path (JSON; .dot sibling for both)")
    m.set_defaults(func=_cmd_mapper)

    b = sub.add_parser("betti", help="Betti numbers of the Rips complex at a scale")
    _add_input_flags(b)
    b.add_argument("--scale", type=float, required=True, help="Rips scale alpha")
    b.add_argument("--max-dim", type=int, default=2)
    b.set_defaults(func=_cmd_betti)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        args.func(args)
    except (ParseError, FileNotFoundError, OSError) as exc:
        print(f"topocloud: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"topocloud: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
