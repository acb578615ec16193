"""
fdots command line

Run with: fdots <command>
Or: python -m fdots <command>

Stdout carries results only; diagnostics go to stderr through the ``fdots``
logger. Exit codes: 0 ok, 1 validation or usage failure, 2 not found,
3 metrics violation.
"""

import argparse
import csv
import io
import logging
import sys
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

from fdots import __version__
from fdots.cli.config import OUTPUT_FORMATS, CliConfig, load_cli_config
from fdots.core.errors import (
    ConfigurationError,
    FdoError,
    InvalidPidError,
    ModelUnsetError,
    NotFoundError,
    UnknownPidError,
)
from fdots.core.fixtures import get_reference_fixture
from fdots.core.model import AssociationModel
from fdots.core.pid import Pid
from fdots.engines import create_engine
from fdots.graph import build_graph, compare_with_engine, export_graph
from fdots.interop import convert
from fdots.metrics import (
    ALL_MEASURES,
    GeneratorParams,
    check_scaling,
    compare_models,
    evaluate,
    format_claims,
    format_scaling,
    format_table,
    generate_ecosystem,
    scaling_report,
    to_csv,
    to_json_lines,
)
from fdots.metrics.report import render_table
from fdots.registries import RegistryStore, decode_line, dump_ecosystem
from fdots.registries.store import MANIFEST_NAME
from fdots.utils.logger import init_framework_logger

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NOT_FOUND = 2
EXIT_METRICS = 3

MODELS = [m.value for m in AssociationModel]


# Helpers

def _emit(text: str) -> None:
    sys.stdout.write(text)


def _emit_rows(rows: List[Dict[str, object]], config: CliConfig, columns: Optional[Sequence[str]] = None) -> None:
    if config.output_format == "json-lines":
        _emit(to_json_lines(rows))
    elif config.output_format == "csv":
        if not rows:
            return
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(columns or rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _emit(buffer.getvalue())
    else:
        _emit(render_table(rows, columns))


def _emit_pids(pids: Iterable[Pid], config: CliConfig) -> None:
    pids = sorted(pids)
    if config.output_format == "json-lines":
        _emit(to_json_lines({"pid": str(p)} for p in pids))
    else:
        _emit("".join(f"{p}\n" for p in pids))


def _open_store(config: CliConfig) -> RegistryStore:
    root = Path(config.store_root)
    if not (root / MANIFEST_NAME).exists():
        raise ModelUnsetError(f"No registry store at {root}; run 'fdots init' first")
    return RegistryStore(root, model=config.model)


def _require_model(config: CliConfig, command: str) -> AssociationModel:
    if config.model is None:
        raise ConfigurationError(f"'{command}' needs --model ({'|'.join(MODELS)})")
    return config.model


def resolve_pid(store: RegistryStore, text: str) -> Pid:
    """
    Full PID, or the unique PID in ``store`` whose suffix is ``text``.

    Raises:
        NotFoundError: If no PID has that suffix
        InvalidPidError: If several PIDs share the suffix
    """
    if "/" in text:
        return Pid(text)
    matches = store.find_by_suffix(text)
    if not matches:
        raise NotFoundError(text, where=str(store.root_path))
    if len(matches) > 1:
        raise InvalidPidError(f"Suffix '{text}' is ambiguous: {[str(m) for m in matches]}")
    return matches[0]


# Commands

def cmd_init(args: argparse.Namespace, config: CliConfig) -> int:
    model = _require_model(config, "init")
    if args.fixture:
        store = dump_ecosystem(get_reference_fixture(model), config.store_root, overwrite=args.force)
    else:
        store = RegistryStore(config.store_root, model=model)
    _emit(f"{store.root_path}\t{store.model.value}\t{len(store)}\n")
    return EXIT_OK


def cmd_register(args: argparse.Namespace, config: CliConfig) -> int:
    store = RegistryStore(config.store_root, model=config.model)
    if store.model is None:
        raise ModelUnsetError(f"Store at {store.root_path} has no model; pass --model or run 'fdots init'")
    if args.source == "-":
        lines = sys.stdin.read().splitlines()
    else:
        lines = Path(args.source).read_text(encoding="utf-8").splitlines()
    registered = []
    for line in lines:
        if not line.strip() or line.startswith("#"):
            continue
        registered.append(store.register(decode_line(line)))
    _emit("".join(f"{pid}\n" for pid in registered))
    return EXIT_OK


def cmd_resolve(args: argparse.Namespace, config: CliConfig) -> int:
    store = _open_store(config)
    _emit(store.resolve_raw(resolve_pid(store, args.pid)) + "\n")
    return EXIT_OK


def cmd_query(args: argparse.Namespace, config: CliConfig) -> int:
    store = _open_store(config)
    engine = create_engine(store.snapshot())
    if args.query_kind == "ops-for":
        _emit_pids(engine.ops_for_fdo(resolve_pid(store, args.fdo)), config)
    elif args.query_kind == "fdos-for":
        _emit_pids(engine.fdos_for_op(resolve_pid(store, args.operation)), config)
    else:
        hit = engine.is_associated(resolve_pid(store, args.fdo), resolve_pid(store, args.operation))
        _emit("true\n" if hit else "false\n")
    return EXIT_OK


def cmd_convert(args: argparse.Namespace, config: CliConfig) -> int:
    ecosystem = _open_store(config).snapshot()
    converted, mapping = convert(ecosystem, args.target)
    dump_ecosystem(converted, args.out, overwrite=args.force)
    logger.info(f"Wrote {converted!r} to {args.out} ({len(mapping.synthesized)} synthesized)")
    rows = [
        {"bijection": name, "source": source, "target": target}
        for name, table in mapping.rows().items()
        for source, target in table
    ]
    if config.output_format == "text":
        _emit("".join(f"{r['bijection']}\t{r['source']}\t{r['target']}\n" for r in rows))
    else:
        _emit_rows(rows, config, ["bijection", "source", "target"])
    return EXIT_OK


def cmd_graph(args: argparse.Namespace, config: CliConfig) -> int:
    ecosystem = _open_store(config).snapshot()
    graph = build_graph(ecosystem)
    for problem in graph.check_invariants():
        logger.warning(f"Graph invariant: {problem}")
    divergence = compare_with_engine(graph, create_engine(ecosystem))
    for line in divergence.describe():
        logger.warning(f"Graph divergence: {line}")

    if config.output_format == "dot":
        _emit(export_graph(graph, "dot").decode("utf-8"))
    elif config.output_format == "csv":
        _emit(export_graph(graph, "csv").decode("utf-8"))
    elif config.output_format == "json-lines":
        _emit(to_json_lines(
            {"source": f"{u[0]}:{u[1]}", "target": f"{v[0]}:{v[1]}", "label": label}
            for u, v, label in graph.edges()
        ))
    else:
        _emit(export_graph(graph, "edge-list").decode("utf-8"))
    return EXIT_OK


def cmd_metrics(args: argparse.Namespace, config: CliConfig) -> int:
    ecosystem = _open_store(config).snapshot()
    if args.compare:
        comparison = compare_models(ecosystem, config.sample_size, config.seed)
        reports = list(comparison.reports.values())
        claims = comparison.claims
        passed = comparison.passed
    else:
        report = evaluate(ecosystem, config.sample_size, config.seed, measures=args.measures or None)
        reports, claims, passed = [report], [], report.passed

    if config.output_format == "csv":
        _emit(to_csv(reports))
    elif config.output_format == "json-lines":
        rows = [c.row() for r in reports for c in r.checks]
        rows.extend(c.row() for c in claims)
        _emit(to_json_lines(rows))
    else:
        _emit(format_table(reports))
        if claims:
            _emit(format_claims(claims))
    if not passed:
        logger.error("Metrics violated a ceiling, a formula or a comparison claim")
        return EXIT_METRICS
    return EXIT_OK


def cmd_generate(args: argparse.Namespace, config: CliConfig) -> int:
    model = _require_model(config, "generate")
    values = dict(config.generator)
    flags = {
        "n_fdos": args.fdos,
        "n_ops": args.ops,
        "n_profiles": args.profiles,
        "association_density": args.density,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    values.update(model=model, seed=config.seed)
    try:
        params = GeneratorParams(**values)
    except TypeError as e:
        raise ConfigurationError(f"Invalid generator parameters: {e}") from e
    ecosystem = generate_ecosystem(params)
    out = args.out or config.store_root
    store = dump_ecosystem(ecosystem, out, overwrite=args.force)
    _emit_rows([{"store": str(store.root_path), **ecosystem.get_stats()}], config)
    return EXIT_OK


def cmd_scaling(args: argparse.Namespace, config: CliConfig) -> int:
    models = [config.model] if config.model else list(AssociationModel)
    rows = []
    for model in models:
        rows.extend(scaling_report(model, config.ladder, config.seed, progress=args.progress))
    if config.output_format == "text":
        _emit(format_scaling(rows))
    else:
        _emit_rows([r.row() for r in rows], config)
    problems = check_scaling(rows)
    for problem in problems:
        logger.error(problem)
    return EXIT_METRICS if problems else EXIT_OK


def cmd_version(args: argparse.Namespace, config: CliConfig) -> int:
    _emit(f"fdots {__version__}\n")
    return EXIT_OK


# Parser

def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--store", help="Registry store directory")
    common.add_argument("--model", choices=MODELS, help="Association model")
    common.add_argument("--seed", type=int, help="Random seed (default 0)")
    common.add_argument("--format", choices=OUTPUT_FORMATS, help="Output format (default text)")
    common.add_argument("--config", help="YAML configuration file")
    common.add_argument("--log-level", dest="log_level", help="Log level on stderr (default WARNING)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="fdots", description="FDO type system: record, profile and attribute typing", parents=[common]
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", parents=[common], help="Create a registry store")
    p.add_argument("--fixture", choices=["reference"], help="Populate with the reference ecosystem")
    p.add_argument("--force", action="store_true", help="Replace an existing store")
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("register", parents=[common], help="Register components from a store-format file")
    p.add_argument("source", help="File with one encoded component per line, or '-' for stdin")
    p.set_defaults(func=cmd_register)

    p = sub.add_parser("resolve", parents=[common], help="Print the stored line of a PID")
    p.add_argument("pid")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("query", parents=[common], help="Association queries")
    queries = p.add_subparsers(dest="query_kind", required=True)
    q = queries.add_parser("ops-for", parents=[common], help="Operations associated with an FDO")
    q.add_argument("fdo")
    q = queries.add_parser("fdos-for", parents=[common], help="FDOs associated with an operation")
    q.add_argument("operation")
    q = queries.add_parser("check", parents=[common], help="Is the FDO associated with the operation")
    q.add_argument("fdo")
    q.add_argument("operation")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("convert", parents=[common], help="Convert the store into another model")
    p.add_argument("target", choices=MODELS)
    p.add_argument("--out", required=True, help="Directory of the converted store")
    p.add_argument("--force", action="store_true", help="Replace an existing store at --out")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("graph", parents=[common], help="Export the graph model")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("metrics", parents=[common], help="Evaluate measures against their formulas")
    p.add_argument("measures", nargs="*", type=str.upper, metavar="MEASURE",
                   help=f"Subset of {' '.join(ALL_MEASURES)} (default all)")
    p.add_argument("--sample", type=int, dest="sample_size", help="Sampled query pairs")
    p.add_argument("--compare", action="store_true", help="Compare all three models on this relation")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("generate", parents=[common], help="Generate a synthetic ecosystem into a store")
    p.add_argument("--fdos", type=int)
    p.add_argument("--ops", type=int)
    p.add_argument("--profiles", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--out", help="Target store (default --store)")
    p.add_argument("--force", action="store_true", help="Replace an existing store")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("scaling", parents=[common], help="Measure S on a ladder of ecosystem sizes")
    p.add_argument("--ladder", help="Comma-separated sizes, e.g. 10,100,1000")
    p.add_argument("--progress", action="store_true", help="Progress bar on stderr")
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("version", parents=[common], help="Show version")
    p.set_defaults(func=cmd_version)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point; returns the exit code."""
    args = build_parser().parse_args(argv)
    overrides = {
        "store_root": getattr(args, "store", None),
        "model": getattr(args, "model", None),
        "seed": getattr(args, "seed", None),
        "output_format": getattr(args, "format", None),
        "log_level": getattr(args, "log_level", None),
        "sample_size": getattr(args, "sample_size", None),
        "ladder": getattr(args, "ladder", None),
    }
    try:
        config = load_cli_config(getattr(args, "config", None), overrides)
    except ConfigurationError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_VALIDATION
    init_framework_logger(config.log_level, str(config.log_file) if config.log_file else None)

    try:
        return args.func(args, config)
    except (NotFoundError, UnknownPidError) as e:
        logger.error(f"{e.kind}: {e}")
        return EXIT_NOT_FOUND
    except (FdoError, ValueError, OSError) as e:
        logger.error(f"{getattr(e, 'kind', type(e).__name__)}: {e}")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
