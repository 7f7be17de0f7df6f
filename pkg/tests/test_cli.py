import json
import logging
import threading

import pytest

from wheelwatch.cli import commands
from wheelwatch.cli.progress import TqdmProgress
from wheelwatch.cli.report import ReportService, RunReport, check_witness, hubs_record
from wheelwatch.cli.worker import CommandWorker
from wheelwatch.core.errors import CertificateError, CommandTimeout, GraphError, GraphFormatError, ParameterError
from wheelwatch.core.graph import Graph
from wheelwatch.core.graph_io import GraphDocument, GraphFileService
from wheelwatch.main import main

SATISFIABLE_CNF = "p cnf 1 1\n1 1 1 0\n"


def _run(capsys, *argv):
    code = main([str(arg) for arg in argv])
    captured = capsys.readouterr()
    return code, captured.out.splitlines(), captured.err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert capsys.readouterr().out.startswith("wheelwatch ")


def test_gen_prints_edge_list(capsys):
    code, out, _ = _run(capsys, "gen", "cycle", "--n", 5)
    assert code == 0
    assert out[0] == "graph 5"
    assert len([line for line in out if line.startswith("e ")]) == 5


def test_gen_writes_file_and_report(capsys, tmp_path):
    target, report_path = tmp_path / "gnp.txt", tmp_path / "gen.json"
    code, out, _ = _run(
        capsys, "gen", "gnp", "--n", 9, "--p", 0.5, "--seed", 4, "--out", target, "--report", report_path
    )
    assert code == 0
    assert out[0].startswith(f"wrote {target} (9 vertices")
    report = ReportService().load(report_path)
    assert report.answer == "ok"
    assert report.seed == 4
    assert report.details["family"] == "gnp"


def test_gen_parameter_error_exits_2(capsys):
    code, _, err = _run(capsys, "gen", "cycle", "--n", 2)
    assert code == 2
    assert "error: cycle needs --n >= 3" in err


def test_detect_wheel_yes_with_witness(capsys, w4, write_graph):
    path = write_graph(w4)
    code, out, _ = _run(capsys, "detect", path, "--target", "wheel", "--witness")
    assert code == 0
    assert out[0] == "yes"
    record = json.loads(out[1])
    assert record["type"] == "config"
    check_witness(record, GraphFileService().read(path))


def test_detect_wheel_no(capsys, c8, write_graph):
    code, out, _ = _run(capsys, "detect", write_graph(c8), "--target", "wheel", "--witness")
    assert code == 1
    assert out == ["no"]


def test_detect_kl_wheel_and_hub(capsys, c8_with_center, c6, write_graph):
    path = write_graph(c8_with_center)
    code, out, _ = _run(capsys, "detect", path, "--target", "kl-wheel", "--k", 6, "--l", 3)
    assert (code, out) == (0, ["yes"])
    code, out, _ = _run(capsys, "detect", path, "--target", "kl-wheel", "--k", 9, "--l", 3)
    assert (code, out) == (1, ["no"])

    code, out, _ = _run(capsys, "detect", write_graph(c6, "c6.txt"), "--target", "hub", "--witness")
    assert (code, out) == (1, ["no"])


def test_detect_hole_with_minimum_length(capsys, c6, write_graph):
    path = write_graph(c6)
    code, out, _ = _run(capsys, "detect", path, "--target", "hole", "--k", 6, "--witness")
    assert code == 0
    assert json.loads(out[1])["min_len"] == 6
    code, _, _ = _run(capsys, "detect", path, "--target", "hole", "--k", 7)
    assert code == 1


@pytest.mark.parametrize(
    "extra, message",
    [
        (["--target", "wheel", "--k", "4"], "--k does not apply to target wheel"),
        (["--target", "hole", "--l", "2"], "--l does not apply to target hole"),
        (["--target", "kl-wheel", "--k", "4"], "kl-wheel needs both --k and --l"),
        (["--target", "hole-through", "--a", "0", "--b", "nowhere"], "'nowhere' is neither"),
        (["--target", "hole-through", "--a", "0", "--b", "17"], "vertex 17 is not in the graph"),
    ],
)
def test_detect_parameter_errors(capsys, c6, write_graph, extra, message):
    code, _, err = _run(capsys, "detect", write_graph(c6), *extra)
    assert code == 2
    assert message in err


def test_detect_missing_file_exits_2(capsys, tmp_path):
    code, _, err = _run(capsys, "detect", tmp_path / "absent.txt", "--target", "wheel")
    assert code == 2
    assert err.startswith("error:")


def test_detect_negative_vertex_file_exits_2(capsys, tmp_path):
    path = tmp_path / "negative.txt"
    path.write_text("graph 1\nvertex -1\n", encoding="utf-8")
    code, out, err = _run(capsys, "detect", path, "--target", "wheel")
    assert (code, out) == (2, [])
    assert "Negative vertex identity: -1" in err


def test_detect_timeout(capsys, monkeypatch, w4, write_graph, tmp_path):
    release = threading.Event()

    def stalled(_graph):
        release.wait(10)
        return None

    monkeypatch.setitem(commands._CONFIG_DETECTORS, "wheel", stalled)
    report_path = tmp_path / "timeout.json"
    try:
        code, out, err = _run(
            capsys, "detect", write_graph(w4), "--target", "wheel", "--timeout", 0.05, "--report", report_path
        )
    finally:
        release.set()
    assert code == 2
    assert out == []
    assert "exceeded the 0.05s timeout" in err
    assert ReportService().load(report_path).answer == "timeout"


def test_wheel_or_co(capsys, c8, c5, write_graph):
    code, out, _ = _run(capsys, "wheel-or-co", write_graph(c8), "--witness")
    assert code == 0
    assert out[0] == "yes complement"
    assert json.loads(out[1])["side"] == "complement"

    code, out, _ = _run(capsys, "wheel-or-co", write_graph(c5, "c5.txt"))
    assert (code, out) == (1, ["no"])


def test_reduce_and_verify_round_trip(capsys, write_cnf, tmp_path):
    cnf = write_cnf(SATISFIABLE_CNF)
    instance, dot_path = tmp_path / "gf.txt", tmp_path / "gf.dot"
    code, out, _ = _run(capsys, "reduce", cnf, "--mode", "gf", "--out", instance, "--dot", dot_path)
    assert code == 0
    assert out == [f"wrote {instance} (gf: 23 vertices, 41 edges)"]
    assert 'color="red"' in dot_path.read_text(encoding="utf-8")

    code, out, _ = _run(capsys, "detect", instance, "--target", "hole-through")
    assert (code, out) == (0, ["yes"])

    code, out, _ = _run(capsys, "verify", instance, "--assignment", "1")
    assert code == 0
    cycle = out[0]
    code, out, _ = _run(capsys, "verify", instance, "--cycle", cycle.replace(" ", ","))
    assert (code, out) == (0, ["1"])


def test_hardened_hole_through_verifies(capsys, write_cnf, tmp_path):
    instance = tmp_path / "hardened.txt"
    code, _, _ = _run(capsys, "reduce", write_cnf(SATISFIABLE_CNF), "--mode", "hardened", "--out", instance)
    assert code == 0

    code, out, _ = _run(capsys, "detect", instance, "--target", "hole-through", "--k", 7, "--witness")
    assert code == 0
    cycle = json.loads(out[1])["cycle"]
    code, out, _ = _run(capsys, "verify", instance, "--cycle", ",".join(str(v) for v in cycle))
    assert (code, out) == (0, ["1"])


def test_verify_rejects_falsifying_assignment(capsys, write_cnf, tmp_path):
    instance, report_path = tmp_path / "gf.txt", tmp_path / "verify.json"
    _run(capsys, "reduce", write_cnf(SATISFIABLE_CNF), "--mode", "gf", "--out", instance)
    code, _, err = _run(capsys, "verify", instance, "--assignment", "0", "--report", report_path)
    assert code == 1
    assert "does not satisfy" in err
    report = ReportService().load(report_path)
    assert report.answer == "invalid"
    assert "clause 1" in report.details["violation"]


def test_verify_needs_an_instance(capsys, c6, write_graph):
    code, _, err = _run(capsys, "verify", write_graph(c6), "--assignment", "1")
    assert code == 2
    assert "not a reduction instance" in err


def test_reduce_modes(capsys, write_cnf, tmp_path):
    cnf = write_cnf(SATISFIABLE_CNF)
    out_path = tmp_path / "out.txt"
    code, out, _ = _run(capsys, "reduce", cnf, "--mode", "f-graph", "--subdiv-seed", 3, "--out", out_path)
    assert code == 0 and "f-graph" in out[0]
    code, out, _ = _run(capsys, "reduce", cnf, "--mode", "hardened", "--k", 5, "--out", out_path)
    assert code == 0 and "hardened" in out[0]
    code, out, _ = _run(capsys, "reduce", cnf, "--mode", "wheel-instance", "--k", 4, "--l", 3, "--out", out_path)
    assert code == 0 and "wheel-instance" in out[0]
    document = GraphFileService().read(out_path)
    assert set(document.terminals) == {"x", "y"}
    assert document.params["l"] == 3


@pytest.mark.parametrize(
    "extra, message",
    [
        (["--mode", "gf", "--k", "5"], "--k does not apply to mode gf"),
        (["--mode", "hardened", "--l", "3"], "--l does not apply to mode hardened"),
        (["--mode", "gf", "--subdiv-seed", "1"], "--subdiv-seed does not apply"),
        (["--mode", "wheel-instance", "--k", "4"], "wheel-instance needs both --k and --l"),
    ],
)
def test_reduce_parameter_errors(capsys, write_cnf, tmp_path, extra, message):
    code, _, err = _run(capsys, "reduce", write_cnf(SATISFIABLE_CNF), *extra, "--out", tmp_path / "x.txt")
    assert code == 2
    assert message in err


def test_reduce_pads_short_clauses(capsys, write_cnf, tmp_path):
    cnf = write_cnf("p cnf 2 1\n1 -2 0\n")
    code, _, err = _run(capsys, "reduce", cnf, "--mode", "gf", "--out", tmp_path / "a.txt")
    assert code == 2 and "--pad" in err
    code, _, _ = _run(capsys, "reduce", cnf, "--mode", "gf", "--pad", "--out", tmp_path / "a.txt")
    assert code == 0


def test_census_command(capsys, tmp_path):
    report_path = tmp_path / "census.json"
    code, out, _ = _run(capsys, "census", "--max-n", 4, "--report", report_path)
    assert code == 0
    assert out[3] == "order 4: 11 of 11 graphs without a wheel on either side"
    assert "cross-check C5: 0 checked, ok" in out
    assert ReportService().load(report_path).details["max_n"] == 4


def test_census_order_out_of_range(capsys):
    code, _, err = _run(capsys, "census", "--max-n", 12)
    assert code == 2
    assert "Census order" in err


def test_report_detects_changed_graph(capsys, w4, c5, write_graph, tmp_path):
    path = write_graph(w4)
    report_path = tmp_path / "detect.json"
    _run(capsys, "detect", path, "--target", "wheel", "--report", report_path)
    report = ReportService().load(report_path)
    assert report.answer == "yes"
    assert report.graph_input == str(path.resolve())
    assert report.witness["type"] == "config"

    GraphFileService().write(GraphDocument(graph=c5), path)
    with pytest.raises(CertificateError, match="changed since"):
        ReportService().load(report_path)


def test_report_rejects_wrong_witness(c5, tmp_path):
    service = ReportService()
    report = RunReport(command=["wheelwatch"], answer="yes", exit_code=0, witness=hubs_record(frozenset({0})))
    path = service.write(report, tmp_path / "r.json")
    with pytest.raises(CertificateError, match="recorded hubs"):
        service.load(path, GraphDocument(graph=c5))


def test_report_skips_validation_without_graph(caplog, tmp_path):
    caplog.set_level(logging.WARNING)
    service = ReportService()
    report = RunReport(
        command=["wheelwatch"],
        answer="yes",
        exit_code=0,
        graph_input=str(tmp_path / "gone.txt"),
        witness={"type": "hole", "cycle": [0, 1, 2], "min_len": 4},
    )
    loaded = service.load(service.write(report, tmp_path / "r.json"))
    assert loaded.witness["cycle"] == [0, 1, 2]
    assert "not re-validated" in caplog.text


@pytest.mark.parametrize("text", ["{", "[]", '{"answer": "yes"}'])
def test_report_parse_errors(text):
    with pytest.raises(GraphFormatError):
        ReportService().parse(text)


def test_resolve_vertex_and_parse_cycle():
    graph = Graph.from_edges(3, [(0, 1), (1, 2)], labels={1: "t_1,0"})
    document = GraphDocument(graph=graph, terminals={"a": 0})
    assert commands.resolve_vertex(document, "a") == 0
    assert commands.resolve_vertex(document, "t_1,0") == 1
    assert commands.resolve_vertex(document, "2") == 2
    with pytest.raises(ParameterError):
        commands.resolve_vertex(document, "9")

    assert commands.parse_cycle("1, 2 3\n4").cycle == (1, 2, 3, 4)
    with pytest.raises(ParameterError):
        commands.parse_cycle("1,x")


def test_worker_returns_and_reraises():
    worker = CommandWorker("sum", lambda: 40 + 2)
    assert worker.execute(5.0) == 42
    assert worker.elapsed >= 0.0

    def broken():
        raise GraphError("bad graph")

    with pytest.raises(GraphError, match="bad graph"):
        CommandWorker("broken", broken).execute(None)


def test_worker_timeout():
    release = threading.Event()
    worker = CommandWorker("stall", lambda: release.wait(10))
    try:
        with pytest.raises(CommandTimeout, match="stall exceeded"):
            worker.execute(0.01)
    finally:
        release.set()


def test_progress_bars_follow_stages(capsys):
    disabled = TqdmProgress(enabled=False)
    disabled("stage", 50, "ignored")
    assert capsys.readouterr().err == ""

    with TqdmProgress(min_interval=0.0) as progress:
        progress("Order 2", 10, "1/2 parents")
        progress("Order 2", 100, "2/2 parents")
        progress("Order 3", 50, "2/4 parents")
    assert "Order" in capsys.readouterr().err
