"""Command-line front end: seeding, dumping, rendering, simulating, serving.

Exit codes: 0 success, 1 validation abort, 2 I/O failure. Warnings go to
standard error; only requested output goes to standard out.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from . import importer, simulate
from .core import AtlasService, ServiceConfig
from .graph_core import AtlasError
from .simulate import PolicyMode, SimPolicy, Strategy


def _service(args) -> AtlasService:
    data_dir = Path(args.data)
    data_dir.mkdir(parents=True, exist_ok=True)
    return AtlasService(ServiceConfig(data_dir=data_dir))


def _warn(warnings) -> None:
    for line in warnings:
        print(f"warning: {line}", file=sys.stderr)


def _write_out(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_import_roster(args) -> int:
    service = _service(args)
    count, warnings = importer.import_roster(service, Path(args.file))
    _warn(warnings)
    service.save_snapshot()
    print(f"imported {count} people")
    return 0


def cmd_import_edges(args) -> int:
    service = _service(args)
    count, warnings = importer.import_edges(service, Path(args.file))
    _warn(warnings)
    service.save_snapshot()
    print(f"imported {count} links")
    return 0


def cmd_import_floors(args) -> int:
    service = _service(args)
    count, warnings = importer.import_floors(service, Path(args.file))
    _warn(warnings)
    print(f"imported {count} floors")
    return 0


def cmd_dump(args) -> int:
    service = _service(args)
    if args.roster is None and args.edges is None:
        print("error: nothing to dump; pass --roster and/or --edges",
              file=sys.stderr)
        return 1
    if args.roster is not None:
        _write_out(args.roster, importer.dump_roster(service))
    if args.edges is not None:
        _write_out(args.edges, importer.dump_edges(service))
    return 0


def cmd_render(args) -> int:
    service = _service(args)
    if args.target == "global":
        svg = service.render_global_svg(seed=args.seed)
    else:
        if args.person is None:
            print("error: render ego requires --person", file=sys.stderr)
            return 1
        svg = service.render_ego_svg(args.person, seed=args.seed)
    _write_out(args.out, svg)
    return 0


def cmd_sim(args) -> int:
    if args.model == "ba":
        if args.m is None:
            print("error: --model ba requires --m", file=sys.stderr)
            return 1
        graph = simulate.generate_scale_free(args.n, args.m, args.seed)
    else:
        if args.k is None or args.p is None:
            print("error: --model ws requires --k and --p", file=sys.stderr)
            return 1
        graph = simulate.generate_clustered(args.n, args.k, args.p, args.seed)
    try:
        ks = [int(part) for part in args.ks.split(",") if part.strip()]
    except ValueError:
        print(f"error: --ks must be comma-separated integers, got {args.ks!r}",
              file=sys.stderr)
        return 1
    if not ks:
        print("error: --ks must name at least one participant count",
              file=sys.stderr)
        return 1
    policy = SimPolicy(PolicyMode(args.policy),
                       third_party_know_prob=args.know_prob)
    rows = simulate.coverage_stats(graph, Strategy(args.strategy), policy,
                                   ks, trials=args.trials, seed=args.seed)
    _write_out(args.out, simulate.format_tsv(rows))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .web import create_app

    data_dir = Path(args.data)
    data_dir.mkdir(parents=True, exist_ok=True)
    static = Path(args.static) if args.static else None
    service = AtlasService(ServiceConfig(data_dir=data_dir, static_dir=static))
    uvicorn.run(create_app(service), host=args.host, port=args.port,
                log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atlas",
        description="Operate a social-graph mapping deployment from files.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_data(p):
        p.add_argument("--data", default="data",
                       help="state directory (default: ./data)")

    p = sub.add_parser("import-roster", help="create people from a CSV roster")
    add_data(p)
    p.add_argument("file", help="CSV with header "
                   + ",".join(importer.ROSTER_HEADER))
    p.set_defaults(func=cmd_import_roster)

    p = sub.add_parser("import-edges",
                       help="create coauthor links from a CSV pair list")
    add_data(p)
    p.add_argument("file", help="CSV with header "
                   + ",".join(importer.EDGES_HEADER))
    p.set_defaults(func=cmd_import_edges)

    p = sub.add_parser("import-floors",
                       help="replace the floor set from a JSON manifest")
    add_data(p)
    p.add_argument("file", help="JSON manifest of floors")
    p.set_defaults(func=cmd_import_floors)

    p = sub.add_parser("dump", help="write the canonical roster/edge CSVs")
    add_data(p)
    p.add_argument("--roster", help="output path for the roster CSV, - for stdout")
    p.add_argument("--edges", help="output path for the edges CSV, - for stdout")
    p.set_defaults(func=cmd_dump)

    p = sub.add_parser("render", help="render a network map as SVG")
    add_data(p)
    p.add_argument("target", choices=["global", "ego"])
    p.add_argument("--person", help="subject id (ego only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-", help="output path, - for stdout")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("sim", help="coverage simulation on a synthetic graph")
    p.add_argument("--model", choices=["ba", "ws"], required=True)
    p.add_argument("--n", type=int, required=True, help="node count")
    p.add_argument("--m", type=int, help="edges per new node (ba)")
    p.add_argument("--k", type=int, help="lattice degree (ws)")
    p.add_argument("--p", type=float, help="rewire probability (ws)")
    p.add_argument("--strategy", choices=[s.value for s in Strategy],
                   default=Strategy.RANDOM.value)
    p.add_argument("--policy", choices=[m.value for m in PolicyMode],
                   default=PolicyMode.EGO_ONLY.value)
    p.add_argument("--know-prob", type=float, default=1.0,
                   help="chance a participant reports a neighbor-neighbor link")
    p.add_argument("--ks", required=True,
                   help="comma-separated participant counts, e.g. 5,10,20")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-", help="output path, - for stdout")
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("serve", help="run the HTTP service")
    add_data(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static", help="directory of webapp assets to serve")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AtlasError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
