"""Command-line entry point.

Every pipeline stage is its own subcommand sharing intermediate file
formats (records as jsonl, graphs as canonical edge lists, networks as
json), so an investigation can re-enter the pipeline midway — the
first-suspect loop only ever rewinds the search stage. ``pipeline`` chains
ingest -> stats -> build -> search -> report in one call.

Exit codes: 0 success, 2 usage, 3 I/O, 4 empty result.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import corpus, graph as graphmod, report as reportmod, search as searchmod
from .centrality import betweenness_centrality, eigenvector_centrality
from .errors import NoSuspectsPresentError, TrustPipelineError, UsageError

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_EMPTY = 4

OUTPUT_DIR_ENV = "BCCTRUST_OUT"


@dataclass
class PipelineConfig:
    input_path: Path
    input_format: str
    out_dir: Path
    k: int = 1
    threshold: int = corpus.DEFAULT_RECIPIENT_THRESHOLD
    suspects_path: Path | None = None
    single_path: bool = False
    id_map: Path | None = None

    def __post_init__(self):
        if self.threshold < 1:
            raise UsageError("--threshold must be >= 1")
        if self.k < 1:
            raise UsageError("--k must be >= 1")


def _write_atomic(path: Path, text: str) -> None:
    """Write-then-rename so a failing stage never leaves partial artifacts."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_records(path: Path, fmt: str) -> corpus.ParseResult:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return corpus.parse_email_records(fh, fmt)
    except OSError as exc:
        raise TrustPipelineError(f"cannot read {path}: {exc}", stage="ingest") from exc


def _records_to_jsonl(records) -> str:
    lines = []
    for r in records:
        lines.append(
            json.dumps(
                {
                    "message_id": r.message_id,
                    "timestamp": r.timestamp,
                    "sender": r.sender,
                    "to": list(r.to),
                    "cc": list(r.cc),
                    "bcc": list(r.bcc),
                },
                sort_keys=True,
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def _stats_payload(records, threshold: int) -> dict:
    bcc = corpus.filter_bcc_emails(records)
    at_most, above = corpus.partition_by_recipient_count(bcc, threshold)
    histogram = corpus.bcc_histogram(bcc)
    ratios = [corpus.recipient_stats(r).bcc_ratio for r in bcc]
    return {
        "total_records": len(records),
        "bcc_emails": len(bcc),
        "bcc_histogram": {str(k): v for k, v in sorted(histogram.items())},
        "threshold": threshold,
        "at_most_threshold": len(at_most),
        "above_threshold": len(above),
        "mean_bcc_ratio": (sum(ratios) / len(ratios)) if ratios else 0.0,
        "k_groups": {
            str(k): len(corpus.select_k_bcc(bcc, k, threshold)) for k in (1, 2)
        },
    }


def _build_graph(records, k: int, threshold: int, id_map: Path | None) -> graphmod.TrustGraph:
    registry = graphmod.AddressRegistry.from_csv(id_map) if id_map else graphmod.AddressRegistry()
    group = corpus.select_k_bcc(corpus.filter_bcc_emails(records), k, threshold)
    return graphmod.build_trust_graph(group, registry)


def _edge_list_text(g: graphmod.TrustGraph) -> str:
    lines = [",".join(graphmod.EDGE_LIST_HEADER)]
    lines.extend(f"{src},{dst}" for src, dst in g.address_edges())
    return "\n".join(lines) + "\n"


def _paths_csv(trustnet: searchmod.TrustNetwork, label: str) -> str:
    resolve = trustnet.registry.reverse_resolve
    rows = ["ego,source,target,path"]
    selected = [r for r in trustnet.path_results if r.label == label]
    selected.sort(key=lambda r: (resolve(r.ego), resolve(r.source), resolve(r.target)))
    for res in selected:
        for path in res.paths:
            rows.append(
                ",".join(
                    [
                        resolve(res.ego),
                        resolve(res.source),
                        resolve(res.target),
                        "|".join(resolve(n) for n in path),
                    ]
                )
            )
    return "\n".join(rows) + "\n"


def _write_search_artifacts(out_dir: Path, trustnet: searchmod.TrustNetwork) -> None:
    for label in searchmod.R_LABELS:
        _write_atomic(out_dir / "paths" / f"{label}.csv", _paths_csv(trustnet, label))
    for fmt in reportmod.EXPORT_FORMATS:
        _write_atomic(out_dir / f"network.{fmt}", reportmod.export_network(trustnet, fmt))
    rep = reportmod.summary_report(trustnet)
    _write_atomic(out_dir / "report.json", rep.to_json())
    _write_atomic(out_dir / "report.txt", rep.to_text())


def run_pipeline(config: PipelineConfig) -> int:
    """ingest -> stats -> build -> search -> report, artifacts on disk."""
    parse = _load_records(config.input_path, config.input_format)
    records = parse.records
    log.info("ingest: %d records, %d skipped", len(records), parse.skipped_count)

    stats = _stats_payload(records, config.threshold)
    stats["skipped_rows"] = parse.skipped_count
    _write_atomic(config.out_dir / "stats.json", _dump_json(stats))

    g = _build_graph(records, config.k, config.threshold, config.id_map)
    _write_atomic(config.out_dir / f"k{config.k}.edges.csv", _edge_list_text(g))

    if g.edge_count == 0:
        log.warning("empty %d-BCC graph; search skipped", config.k)
        return EXIT_EMPTY
    if config.suspects_path is None:
        return EXIT_OK

    suspects = searchmod.SuspectList.from_file(config.suspects_path)
    try:
        trustnet = searchmod.run_trust_search(g, suspects, single_path=config.single_path)
    except NoSuspectsPresentError as exc:
        log.warning("search: %s", exc)
        return EXIT_EMPTY
    _write_search_artifacts(config.out_dir, trustnet)
    return EXIT_OK


# -- subcommand handlers ------------------------------------------------------


def _cmd_ingest(args) -> int:
    parse = _load_records(args.input, args.format)
    _write_atomic(args.out, _records_to_jsonl(parse.records))
    print(f"ingest: {len(parse.records)} records, {parse.skipped_count} skipped", file=sys.stderr)
    return EXIT_OK


def _cmd_stats(args) -> int:
    parse = _load_records(args.input, args.format)
    stats = _stats_payload(parse.records, args.threshold)
    stats["skipped_rows"] = parse.skipped_count
    text = _dump_json(stats)
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_build(args) -> int:
    parse = _load_records(args.input, args.format)
    g = _build_graph(parse.records, args.k, args.threshold, args.id_map)
    _write_atomic(args.out, _edge_list_text(g))
    print(f"build: {g.node_count} nodes, {g.edge_count} edges", file=sys.stderr)
    return EXIT_OK


def _cmd_centrality(args) -> int:
    g = graphmod.read_edge_list(args.graph)
    if args.measure == "eigenvector":
        scores = eigenvector_centrality(g).scores
    else:
        scores = betweenness_centrality(g).scores
    resolve = g.registry.reverse_resolve
    ranked = sorted(((resolve(n), s) for n, s in scores.items()), key=lambda kv: (-kv[1], kv[0]))
    lines = ["address,score"]
    lines.extend(f"{addr},{score:.12g}" for addr, score in ranked)
    text = "\n".join(lines) + "\n"
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_ego(args) -> int:
    g = graphmod.read_edge_list(args.graph)
    node = g.registry.resolve(args.ego)
    if node is None or not g.has_node(node):
        raise TrustPipelineError(f"ego {args.ego!r} is not in the graph", stage="ego")
    from .ego import ego_subnetwork

    subnet = ego_subnetwork(g, node)
    text = _edge_list_text(subnet.subgraph)
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_search(args) -> int:
    g = graphmod.read_edge_list(args.graph)
    suspects = searchmod.SuspectList.from_file(args.suspects)
    try:
        trustnet = searchmod.run_trust_search(g, suspects, single_path=args.single_path)
    except NoSuspectsPresentError as exc:
        print(f"search: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    _write_search_artifacts(args.out, trustnet)
    if args.k is not None:
        _write_atomic(args.out / "search.json", _dump_json({"k": args.k, "single_path": args.single_path}))
    return EXIT_OK


def _cmd_report(args) -> int:
    try:
        text = Path(args.network).read_text(encoding="utf-8")
    except OSError as exc:
        raise TrustPipelineError(f"cannot read {args.network}: {exc}", stage="report") from exc
    trustnet = reportmod.import_network(text)
    rep = reportmod.summary_report(trustnet)
    sys.stdout.write(rep.to_json() if args.format == "json" else rep.to_text())
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app_from_dir

    app = create_app_from_dir(args.graphs)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def _cmd_pipeline(args) -> int:
    config = PipelineConfig(
        input_path=args.input,
        input_format=args.format,
        out_dir=args.out,
        k=args.k,
        threshold=args.threshold,
        suspects_path=args.suspects,
        single_path=args.single_path,
        id_map=args.id_map,
    )
    return run_pipeline(config)


def _default_out() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, "out"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcctrust",
        description="BCC trust-network extraction and shortest-paths suspect search",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--input", type=Path, required=True, help="corpus file")
        p.add_argument("--format", choices=("csv", "jsonl"), default="csv", help="corpus format")

    p = sub.add_parser("ingest", help="parse a corpus and emit normalized records as jsonl")
    add_input(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("stats", help="BCC histogram and recipient-count partition")
    add_input(p)
    p.add_argument("--threshold", type=int, default=corpus.DEFAULT_RECIPIENT_THRESHOLD)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("build", help="build the k-BCC trust graph as a canonical edge list")
    add_input(p)
    p.add_argument("--k", type=int, default=1, help="exact bcc count of the group")
    p.add_argument("--threshold", type=int, default=corpus.DEFAULT_RECIPIENT_THRESHOLD)
    p.add_argument("--id-map", type=Path, help="CSV id,address pinning node ids")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("centrality", help="ranked centrality scores as CSV")
    p.add_argument("--graph", type=Path, required=True, help="edge-list file")
    p.add_argument("--measure", choices=("eigenvector", "betweenness"), required=True)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=_cmd_centrality)

    p = sub.add_parser("ego", help="extract an ego subnetwork as a canonical edge list")
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--ego", required=True, help="ego address")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=_cmd_ego)

    p = sub.add_parser("search", help="run the trust-network search over a suspect list")
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--suspects", type=Path, required=True, help="one address per line")
    p.add_argument("--k", type=int, choices=(1, 2), help="recorded in search.json")
    p.add_argument("--single-path", action="store_true", help="keep one geodesic per pair")
    p.add_argument("--out", type=Path, default=_default_out())
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("report", help="summary report for a network.json export")
    p.add_argument("--network", type=Path, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("serve", help="HTTP service over built graphs")
    p.add_argument("--graphs", type=Path, required=True, help="directory of k<k>.edges.csv files")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("pipeline", help="full chain: ingest, stats, build, search, report")
    add_input(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--threshold", type=int, default=corpus.DEFAULT_RECIPIENT_THRESHOLD)
    p.add_argument("--suspects", type=Path)
    p.add_argument("--single-path", action="store_true")
    p.add_argument("--id-map", type=Path)
    p.add_argument("--out", type=Path, default=_default_out())
    p.set_defaults(func=_cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error ({exc.stage}): {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoSuspectsPresentError as exc:
        print(f"error ({exc.stage}): {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except TrustPipelineError as exc:
        print(f"error ({exc.stage}): {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error (io): {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
