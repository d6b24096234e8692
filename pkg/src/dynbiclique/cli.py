"""Command-line driver: replay edge streams, emit metrics, verify, plot.

Exit codes: 0 ok, 2 parse error, 3 stream inconsistency, 4 verification
mismatch.
"""

from __future__ import annotations

import csv
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click

from .engine import (
    MaintainedState,
    apply_additions,
    apply_deletions,
    apply_mixed,
)
from .fileio import (
    LabelMap,
    ParseError,
    StreamConsistencyError,
    format_biclique,
    parse_graph_file,
    parse_stream_file,
    write_graph,
    write_stream,
)
from .generators import (
    StreamSpec,
    cocktail_party,
    make_stream,
    random_bipartite,
    single_edge_extremal,
)
from .graph import BatchError, EdgeBatch
from .oracle import Convention, brute_force_bicliques, enumeration_diff
from .signatures import StoreMode

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_STREAM = 3
EXIT_VERIFY = 4

METRICS_FIELDS = (
    "iteration",
    "batch_size",
    "num_new",
    "num_subsumed",
    "change_edges",
    "time_new_ms",
    "time_sub_ms",
    "time_total_ms",
    "store_count",
    "graph_edges",
)


@dataclass
class RunConfig:
    graph_path: Path
    stream_path: Path | None = None
    batch_size: int = 100
    min_side: int = 1
    mode: str = "add"
    store_mode: StoreMode = StoreMode.HASH64
    metrics_out: Path | None = None
    changes_out: Path | None = None
    verify: bool = False
    retain_fraction: float | None = None
    seed: int = 0
    figures: bool = False


@dataclass
class SessionResult:
    code: int
    rows: list[dict] = field(default_factory=list)
    error: str | None = None
    figure_paths: list[Path] = field(default_factory=list)


def _batches_from_ops(ops, batch_size, mode):
    """Group stream ops into per-batch (adds, dels) pairs."""
    chunks = [ops[i : i + batch_size] for i in range(0, len(ops), batch_size)]
    batches = []
    for chunk in chunks:
        adds = [e for op, e in chunk if op == "+"]
        dels = [e for op, e in chunk if op == "-"]
        if mode == "add" and dels:
            raise StreamConsistencyError(
                f"deletion op in add-mode stream: {dels[0]}"
            )
        if mode == "delete" and adds:
            raise StreamConsistencyError(
                f"addition op in delete-mode stream: {adds[0]}"
            )
        try:
            batches.append((EdgeBatch(tuple(adds)), EdgeBatch(tuple(dels))))
        except BatchError as exc:
            raise StreamConsistencyError(str(exc)) from exc
    return batches


def run_session(cfg: RunConfig) -> SessionResult:
    """Replay a stream against a graph, maintaining its maximal bicliques."""
    try:
        graph, labels = parse_graph_file(cfg.graph_path)
    except ParseError as exc:
        return SessionResult(EXIT_PARSE, error=f"{cfg.graph_path}: {exc}")

    try:
        if cfg.stream_path is not None:
            ops = parse_stream_file(cfg.stream_path, labels)
            batches = _batches_from_ops(ops, cfg.batch_size, cfg.mode)
        elif cfg.retain_fraction is not None:
            if cfg.mode != "add":
                return SessionResult(
                    EXIT_STREAM,
                    error="generated streams replay additions; use --mode add",
                )
            spec = StreamSpec(cfg.retain_fraction, cfg.batch_size, cfg.seed)
            graph, gen_batches = make_stream(graph, spec)
            batches = [(b, EdgeBatch()) for b in gen_batches]
        else:
            batches = []
    except ParseError as exc:
        return SessionResult(EXIT_PARSE, error=f"{cfg.stream_path}: {exc}")
    except StreamConsistencyError as exc:
        return SessionResult(EXIT_STREAM, error=str(exc))

    state = MaintainedState.initialize(graph, cfg.min_side, cfg.store_mode)
    rows: list[dict] = []
    change_lines: list[str] = []
    for iteration, (adds, dels) in enumerate(batches, start=1):
        pre_graph = state.graph
        try:
            if cfg.mode == "add":
                changes = apply_additions(state, adds)
            elif cfg.mode == "delete":
                changes = apply_deletions(state, dels)
            else:
                changes = apply_mixed(state, adds, dels)
        except BatchError as exc:
            return SessionResult(
                EXIT_STREAM,
                rows,
                error=f"batch {iteration}: {exc}",
            )
        if cfg.verify:
            expected = enumeration_diff(pre_graph, state.graph, cfg.min_side)
            if expected != changes:
                return SessionResult(
                    EXIT_VERIFY,
                    rows,
                    error=(
                        f"batch {iteration}: maintained change "
                        f"(new={len(changes.new)}, subsumed="
                        f"{len(changes.subsumed)}) disagrees with baseline "
                        f"(new={len(expected.new)}, subsumed="
                        f"{len(expected.subsumed)})"
                    ),
                )
        t = state.last_timings
        rows.append(
            {
                "iteration": iteration,
                "batch_size": len(adds) + len(dels),
                "num_new": len(changes.new),
                "num_subsumed": len(changes.subsumed),
                "change_edges": changes.edge_weight,
                "time_new_ms": round(t.new_seconds * 1e3, 3),
                "time_sub_ms": round(t.subsumed_seconds * 1e3, 3),
                "time_total_ms": round(t.total_seconds * 1e3, 3),
                "store_count": state.store.count,
                "graph_edges": state.graph.edge_count,
            }
        )
        if cfg.changes_out is not None:
            for b in changes.new:
                change_lines.append(f"N\t{format_biclique(b, labels)}")
            for b in changes.subsumed:
                change_lines.append(f"S\t{format_biclique(b, labels)}")

    if cfg.metrics_out is not None:
        with open(cfg.metrics_out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=METRICS_FIELDS)
            writer.writeheader()
            writer.writerows(rows)
    if cfg.changes_out is not None:
        Path(cfg.changes_out).write_text(
            "\n".join(change_lines) + ("\n" if change_lines else "")
        )
    result = SessionResult(EXIT_OK, rows)
    if cfg.figures and cfg.metrics_out is not None:
        from .report import render_run_figures

        result.figure_paths = render_run_figures(cfg.metrics_out)
    return result


# -- command line ----------------------------------------------------------


def _run_options(fn):
    options = [
        click.option(
            "--graph",
            "graph_path",
            required=True,
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            help="Edge-list graph file.",
        ),
        click.option(
            "--stream",
            "stream_path",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            default=None,
            help="Edge stream file; omit to generate one (see --retain-fraction).",
        ),
        click.option("--batch-size", default=100, show_default=True),
        click.option(
            "--threshold",
            "min_side",
            default=1,
            show_default=True,
            help="Minimum vertices per biclique side.",
        ),
        click.option(
            "--mode",
            type=click.Choice(["add", "delete", "mixed"]),
            default="add",
            show_default=True,
        ),
        click.option(
            "--signature",
            "store_mode",
            type=click.Choice(["hash64", "exact"]),
            default="hash64",
            show_default=True,
        ),
        click.option(
            "--metrics-out",
            type=click.Path(dir_okay=False, path_type=Path),
            default=None,
        ),
        click.option(
            "--changes-out",
            type=click.Path(dir_okay=False, path_type=Path),
            default=None,
        ),
        click.option(
            "--retain-fraction",
            type=float,
            default=None,
            help="Generate the stream: retain this edge fraction, replay the rest.",
        ),
        click.option("--seed", default=0, show_default=True),
        click.option(
            "--figures/--no-figures",
            default=False,
            help="Render figures next to the metrics CSV.",
        ),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _finish(result: SessionResult) -> None:
    if result.error:
        click.echo(f"error: {result.error}", err=True)
    else:
        total_new = sum(r["num_new"] for r in result.rows)
        total_sub = sum(r["num_subsumed"] for r in result.rows)
        click.echo(
            f"{len(result.rows)} batch(es): {total_new} new, "
            f"{total_sub} subsumed"
        )
        for path in result.figure_paths:
            click.echo(f"wrote {path}")
    if result.code != EXIT_OK:
        sys.exit(result.code)


@click.group()
@click.version_option(package_name="dynbiclique")
def main():
    """Maintain the exact maximal bicliques of a dynamic bipartite graph."""


@main.command()
@_run_options
@click.option(
    "--verify/--no-verify",
    default=False,
    help="Check every batch against a full re-enumeration diff.",
)
def run(verify, **kwargs):
    """Replay a stream and write per-batch metrics."""
    _finish(run_session(RunConfig(verify=verify, **_to_cfg(kwargs))))


@main.command()
@_run_options
def verify(**kwargs):
    """Like run, but every batch is checked against the baseline."""
    _finish(run_session(RunConfig(verify=True, **_to_cfg(kwargs))))


def _to_cfg(kwargs) -> dict:
    kwargs["store_mode"] = StoreMode(kwargs["store_mode"])
    return kwargs


@main.group()
def gen():
    """Generate graphs and edge streams in the standard file formats."""


@gen.command("cp")
@click.option("--k", required=True, type=click.IntRange(min=1))
@click.option(
    "--graph-out",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
)
def gen_cp(k, graph_out):
    """Cocktail-party graph: K_{k,k} minus a perfect matching."""
    write_graph(cocktail_party(k), graph_out)
    click.echo(f"wrote {graph_out}")


@gen.command("random")
@click.option("--left", "n_left", required=True, type=click.IntRange(min=1))
@click.option("--right", "n_right", required=True, type=click.IntRange(min=1))
@click.option("--p", required=True, type=click.FloatRange(0.0, 1.0))
@click.option("--seed", default=0, show_default=True)
@click.option(
    "--graph-out",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
)
def gen_random(n_left, n_right, p, seed, graph_out):
    """Independent-edge random bipartite graph."""
    write_graph(random_bipartite(n_left, n_right, p, seed), graph_out)
    click.echo(f"wrote {graph_out}")


@gen.command("extremal")
@click.option(
    "--n",
    required=True,
    type=int,
    help="Even vertex count >= 4.",
)
@click.option(
    "--graph-out",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
)
@click.option(
    "--edge-out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Also write the worst-case edge as a one-line stream file.",
)
def gen_extremal(n, graph_out, edge_out):
    """Worst-case instance for a single edge addition."""
    try:
        graph, e = single_edge_extremal(n)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--n")
    write_graph(graph, graph_out)
    click.echo(f"wrote {graph_out}")
    if edge_out is not None:
        labels = LabelMap.identity(graph)
        write_stream([("+", e)], edge_out, labels)
        click.echo(f"wrote {edge_out}")


@gen.command("stream")
@click.option(
    "--graph",
    "graph_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.option(
    "--retain-fraction", required=True, type=click.FloatRange(0.0, 1.0)
)
@click.option("--seed", default=0, show_default=True)
@click.option(
    "--initial-out",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
)
@click.option(
    "--stream-out",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
)
@click.option(
    "--direction",
    type=click.Choice(["add", "delete"]),
    default="add",
    show_default=True,
    help="add: grow from the retained graph; delete: shrink toward it.",
)
def gen_stream(graph_path, retain_fraction, seed, initial_out, stream_out, direction):
    """Split a graph into an initial graph and an edge stream."""
    try:
        graph, labels = parse_graph_file(graph_path)
    except ParseError as exc:
        click.echo(f"error: {graph_path}: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    spec = StreamSpec(retain_fraction, batch_size=1, seed=seed)
    initial, batches = make_stream(graph, spec)
    streamed = [e for batch in batches for e in batch]
    if direction == "add":
        write_graph(initial, initial_out, labels)
        write_stream([("+", e) for e in streamed], stream_out, labels)
    else:
        write_graph(graph, initial_out, labels)
        write_stream([("-", e) for e in streamed], stream_out, labels)
    click.echo(f"wrote {initial_out} and {stream_out}")


@main.command()
@click.option("--n-min", default=4, show_default=True)
@click.option("--n-max", default=10, show_default=True)
@click.option(
    "--out",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
)
@click.option(
    "--figures/--no-figures",
    default=False,
    help="Render a figure next to the CSV.",
)
def bound(n_min, n_max, out, figures):
    """Measure the worst-case change for one edge on extremal instances.

    For each even n the observed trivial-inclusive change is compared
    against the predicted 3 * 2^((n-2)/2).
    """
    if n_min % 2 or n_max % 2 or n_min < 4 or n_max > 14 or n_min > n_max:
        raise click.BadParameter(
            "need even 4 <= n-min <= n-max <= 14", param_hint="--n-min/--n-max"
        )
    convention = Convention.trivial_inclusive()
    rows = []
    for n in range(n_min, n_max + 1, 2):
        graph, e = single_edge_extremal(n)
        before = set(brute_force_bicliques(graph, convention))
        after = set(
            brute_force_bicliques(
                graph.add_edges(EdgeBatch((e,))), convention
            )
        )
        observed = len(before ^ after)
        predicted = 3 * 2 ** ((n - 2) // 2)
        rows.append(
            {
                "n": n,
                "observed": observed,
                "predicted": predicted,
                "status": "pass" if observed == predicted else "fail",
            }
        )
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=("n", "observed", "predicted", "status")
        )
        writer.writeheader()
        writer.writerows(rows)
    click.echo(f"wrote {out}")
    if figures:
        from .report import render_bound_figures

        for path in render_bound_figures(out):
            click.echo(f"wrote {path}")
    if any(r["status"] == "fail" for r in rows):
        sys.exit(1)


@main.command()
@click.option(
    "--metrics",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
)
@click.option(
    "--bound",
    "bound_csv",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
)
@click.option(
    "--out-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
)
def report(metrics, bound_csv, out_dir):
    """Render figures from previously written CSVs."""
    if metrics is None and bound_csv is None:
        raise click.UsageError("nothing to report: pass --metrics or --bound")
    from .report import render_bound_figures, render_run_figures

    written = []
    if metrics is not None:
        written += render_run_figures(metrics, out_dir)
    if bound_csv is not None:
        written += render_bound_figures(bound_csv, out_dir)
    for path in written:
        click.echo(f"wrote {path}")
