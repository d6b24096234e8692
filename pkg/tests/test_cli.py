import csv
from pathlib import Path

import pytest
from click.testing import CliRunner

import dynbiclique.cli as cli_mod
from dynbiclique import ChangeSet, maximal_bicliques
from dynbiclique.oracle import Convention, brute_force_bicliques
from dynbiclique.cli import (
    EXIT_PARSE,
    EXIT_STREAM,
    EXIT_VERIFY,
    METRICS_FIELDS,
    RunConfig,
    main,
    run_session,
)
from dynbiclique.fileio import parse_graph_file


@pytest.fixture
def runner():
    return CliRunner()


def _write(path: Path, text: str) -> Path:
    path.write_text(text)
    return path


@pytest.fixture
def t0_file(tmp_path):
    return _write(tmp_path / "t0.txt", "a x\nb y\n")


@pytest.fixture
def t1_file(tmp_path):
    return _write(tmp_path / "t1.txt", "a x\na y\nb y\n")


def _read_metrics(path: Path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_run_add_with_verify(runner, tmp_path, t0_file):
    stream = _write(tmp_path / "s.txt", "+ a y\n")
    metrics = tmp_path / "m.csv"
    result = runner.invoke(
        main,
        [
            "run",
            "--graph", str(t0_file),
            "--stream", str(stream),
            "--batch-size", "1",
            "--threshold", "1",
            "--verify",
            "--metrics-out", str(metrics),
        ],
    )
    assert result.exit_code == 0, result.output
    rows = _read_metrics(metrics)
    assert len(rows) == 1
    assert rows[0]["num_new"] == "2"
    assert rows[0]["num_subsumed"] == "2"
    assert list(rows[0].keys()) == list(METRICS_FIELDS)


def test_verify_command_is_run_with_verify(runner, tmp_path, t0_file):
    stream = _write(tmp_path / "s.txt", "+ a y\n")
    result = runner.invoke(
        main,
        ["verify", "--graph", str(t0_file), "--stream", str(stream)],
    )
    assert result.exit_code == 0, result.output


def test_run_delete_mode(runner, tmp_path, t1_file):
    stream = _write(tmp_path / "s.txt", "- a y\n")
    metrics = tmp_path / "m.csv"
    result = runner.invoke(
        main,
        [
            "run",
            "--graph", str(t1_file),
            "--stream", str(stream),
            "--mode", "delete",
            "--verify",
            "--metrics-out", str(metrics),
        ],
    )
    assert result.exit_code == 0, result.output
    rows = _read_metrics(metrics)
    assert rows[0]["num_new"] == "2"
    assert rows[0]["num_subsumed"] == "2"


def test_run_mixed_mode(runner, tmp_path, t0_file):
    stream = _write(tmp_path / "s.txt", "+ a y\n- b y\n")
    metrics = tmp_path / "m.csv"
    result = runner.invoke(
        main,
        [
            "run",
            "--graph", str(t0_file),
            "--stream", str(stream),
            "--mode", "mixed",
            "--batch-size", "2",
            "--verify",
            "--metrics-out", str(metrics),
        ],
    )
    assert result.exit_code == 0, result.output
    assert len(_read_metrics(metrics)) == 1


def test_empty_stream_zero_rows(runner, tmp_path, t0_file):
    stream = _write(tmp_path / "s.txt", "")
    metrics = tmp_path / "m.csv"
    result = runner.invoke(
        main,
        [
            "run",
            "--graph", str(t0_file),
            "--stream", str(stream),
            "--metrics-out", str(metrics),
        ],
    )
    assert result.exit_code == 0
    assert _read_metrics(metrics) == []


def test_parse_error_exit_code(runner, tmp_path):
    bad = _write(tmp_path / "bad.txt", "a x\nonly-one-token\n")
    result = runner.invoke(main, ["run", "--graph", str(bad)])
    assert result.exit_code == EXIT_PARSE


def test_stream_parse_error_exit_code(runner, tmp_path, t0_file):
    stream = _write(tmp_path / "s.txt", "0 x\n")
    result = runner.invoke(
        main, ["run", "--graph", str(t0_file), "--stream", str(stream)]
    )
    assert result.exit_code == EXIT_PARSE


def test_stream_inconsistency_exit_code(runner, tmp_path, t0_file):
    stream = _write(tmp_path / "s.txt", "+ a x\n")  # already present
    result = runner.invoke(
        main, ["run", "--graph", str(t0_file), "--stream", str(stream)]
    )
    assert result.exit_code == EXIT_STREAM


def test_deletion_in_add_mode_is_stream_error(runner, tmp_path, t0_file):
    stream = _write(tmp_path / "s.txt", "- a x\n")
    result = runner.invoke(
        main, ["run", "--graph", str(t0_file), "--stream", str(stream)]
    )
    assert result.exit_code == EXIT_STREAM


def test_verification_mismatch_exit_code(tmp_path, t0_file, monkeypatch):
    monkeypatch.setattr(
        cli_mod, "enumeration_diff", lambda *args, **kwargs: ChangeSet()
    )
    stream = _write(tmp_path / "s.txt", "+ a y\n")
    result = run_session(
        RunConfig(graph_path=t0_file, stream_path=stream, verify=True)
    )
    assert result.code == EXIT_VERIFY
    assert "disagrees" in result.error


def test_changes_log(runner, tmp_path, t0_file):
    stream = _write(tmp_path / "s.txt", "+ a y\n")
    changes = tmp_path / "c.txt"
    result = runner.invoke(
        main,
        [
            "run",
            "--graph", str(t0_file),
            "--stream", str(stream),
            "--changes-out", str(changes),
        ],
    )
    assert result.exit_code == 0
    lines = changes.read_text().splitlines()
    assert sorted(lines) == sorted(
        ["N\ta\tx,y", "N\ta,b\ty", "S\ta\tx", "S\tb\ty"]
    )


def test_metrics_deterministic_apart_from_timings(tmp_path, t0_file):
    stream = _write(tmp_path / "s.txt", "+ a y\n+ b x\n")
    rows = []
    for _ in range(2):
        result = run_session(
            RunConfig(graph_path=t0_file, stream_path=stream, batch_size=1)
        )
        assert result.code == 0
        rows.append(
            [
                {k: v for k, v in r.items() if not k.startswith("time_")}
                for r in result.rows
            ]
        )
    assert rows[0] == rows[1]


def test_generated_stream_replay_matches_oracle_count(runner, tmp_path):
    graph_file = tmp_path / "g.txt"
    result = runner.invoke(
        main,
        [
            "gen", "random",
            "--left", "6", "--right", "6", "--p", "0.4", "--seed", "5",
            "--graph-out", str(graph_file),
        ],
    )
    assert result.exit_code == 0
    session = run_session(
        RunConfig(
            graph_path=graph_file,
            retain_fraction=0.2,
            seed=11,
            batch_size=3,
            verify=True,
        )
    )
    assert session.code == 0
    graph, _ = parse_graph_file(graph_file)
    expected = len(brute_force_bicliques(graph, Convention.non_trivial(1)))
    assert len(list(maximal_bicliques(graph, 1))) == expected
    if session.rows:
        assert session.rows[-1]["store_count"] == expected


def test_gen_cp_and_stream_pipeline(runner, tmp_path):
    graph_file = tmp_path / "cp3.txt"
    assert (
        runner.invoke(
            main, ["gen", "cp", "--k", "3", "--graph-out", str(graph_file)]
        ).exit_code
        == 0
    )
    graph, _ = parse_graph_file(graph_file)
    assert graph.edge_count == 6

    initial = tmp_path / "init.txt"
    stream = tmp_path / "stream.txt"
    assert (
        runner.invoke(
            main,
            [
                "gen", "stream",
                "--graph", str(graph_file),
                "--retain-fraction", "0.5",
                "--seed", "3",
                "--initial-out", str(initial),
                "--stream-out", str(stream),
            ],
        ).exit_code
        == 0
    )
    session = run_session(
        RunConfig(
            graph_path=initial, stream_path=stream, batch_size=2, verify=True
        )
    )
    assert session.code == 0


def test_gen_delete_stream_pipeline(runner, tmp_path):
    graph_file = tmp_path / "g.txt"
    runner.invoke(
        main,
        [
            "gen", "random",
            "--left", "5", "--right", "5", "--p", "0.5", "--seed", "2",
            "--graph-out", str(graph_file),
        ],
    )
    full = tmp_path / "full.txt"
    stream = tmp_path / "del.txt"
    result = runner.invoke(
        main,
        [
            "gen", "stream",
            "--graph", str(graph_file),
            "--retain-fraction", "0.5",
            "--seed", "4",
            "--direction", "delete",
            "--initial-out", str(full),
            "--stream-out", str(stream),
        ],
    )
    assert result.exit_code == 0
    session = run_session(
        RunConfig(
            graph_path=full,
            stream_path=stream,
            mode="delete",
            batch_size=3,
            verify=True,
        )
    )
    assert session.code == 0


def test_gen_extremal_files(runner, tmp_path):
    graph_file = tmp_path / "x.txt"
    edge_file = tmp_path / "e.txt"
    result = runner.invoke(
        main,
        [
            "gen", "extremal",
            "--n", "6",
            "--graph-out", str(graph_file),
            "--edge-out", str(edge_file),
        ],
    )
    assert result.exit_code == 0
    session = run_session(
        RunConfig(
            graph_path=graph_file,
            stream_path=edge_file,
            batch_size=1,
            verify=True,
        )
    )
    assert session.code == 0
    assert session.rows[0]["num_new"] == 4
    assert session.rows[0]["num_subsumed"] == 6


def test_gen_extremal_rejects_odd_n(runner, tmp_path):
    result = runner.invoke(
        main,
        ["gen", "extremal", "--n", "7", "--graph-out", str(tmp_path / "x.txt")],
    )
    assert result.exit_code == 2


def test_bound_command(runner, tmp_path):
    out = tmp_path / "bound.csv"
    result = runner.invoke(
        main, ["bound", "--n-min", "4", "--n-max", "8", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    rows = list(csv.DictReader(open(out)))
    assert [r["n"] for r in rows] == ["4", "6", "8"]
    assert all(r["status"] == "pass" for r in rows)
    assert [r["observed"] for r in rows] == ["6", "12", "24"]


def test_bound_rejects_odd_range(runner, tmp_path):
    result = runner.invoke(
        main,
        ["bound", "--n-min", "5", "--n-max", "7", "--out", str(tmp_path / "b.csv")],
    )
    assert result.exit_code == 2


def test_report_renders_figures(runner, tmp_path, t0_file):
    stream = _write(tmp_path / "s.txt", "+ a y\n+ b x\n")
    metrics = tmp_path / "m.csv"
    bound_csv = tmp_path / "b.csv"
    assert (
        runner.invoke(
            main,
            [
                "run",
                "--graph", str(t0_file),
                "--stream", str(stream),
                "--batch-size", "1",
                "--metrics-out", str(metrics),
            ],
        ).exit_code
        == 0
    )
    runner.invoke(
        main, ["bound", "--n-min", "4", "--n-max", "6", "--out", str(bound_csv)]
    )
    out_dir = tmp_path / "figs"
    result = runner.invoke(
        main,
        [
            "report",
            "--metrics", str(metrics),
            "--bound", str(bound_csv),
            "--out-dir", str(out_dir),
        ],
    )
    assert result.exit_code == 0, result.output
    pngs = sorted(p.name for p in out_dir.glob("*.png"))
    assert pngs == [
        "b_bound.png",
        "m_change_vs_time.png",
        "m_growth.png",
        "m_times.png",
    ]
    assert all((out_dir / name).stat().st_size > 0 for name in pngs)


def test_run_with_figures_flag(runner, tmp_path, t0_file):
    stream = _write(tmp_path / "s.txt", "+ a y\n")
    metrics = tmp_path / "m.csv"
    result = runner.invoke(
        main,
        [
            "run",
            "--graph", str(t0_file),
            "--stream", str(stream),
            "--metrics-out", str(metrics),
            "--figures",
        ],
    )
    assert result.exit_code == 0, result.output
    assert (tmp_path / "m_times.png").exists()


def test_exact_signature_mode(runner, tmp_path, t0_file):
    stream = _write(tmp_path / "s.txt", "+ a y\n")
    result = runner.invoke(
        main,
        [
            "run",
            "--graph", str(t0_file),
            "--stream", str(stream),
            "--signature", "exact",
            "--verify",
        ],
    )
    assert result.exit_code == 0, result.output
