"""End-to-end command line behavior: exit codes, JSON payloads, files."""

import json

import pytest

from magicsudoku.boards import read_mssb
from magicsudoku.cli import run

from conftest import CANON_SM_71


def test_no_arguments_is_a_usage_error(capsys):
    assert run([]) == 2
    capsys.readouterr()


def test_unknown_subcommand_is_a_usage_error(capsys):
    assert run(["frobnicate"]) == 2
    capsys.readouterr()


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == 0
    assert "enumerate" in capsys.readouterr().out


def test_enumerate_requires_variant(capsys):
    assert run(["enumerate"]) == 2
    capsys.readouterr()


def test_enumerate_count_only_stdout(capsys):
    assert run(["enumerate", "--variant", "semi-magic", "--count-only"]) == 0
    assert capsys.readouterr().out.strip() == "5971968"


def test_enumerate_count_only_quiet_json(capsys, tmp_path):
    out = tmp_path / "count.json"
    code = run(
        [
            "enumerate",
            "--variant",
            "semi-magic",
            "--count-only",
            "--threads",
            "2",
            "--quiet",
            "--json",
            str(out),
        ]
    )
    assert code == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text()) == {"variant": "semi-magic", "count": 5971968}


def test_enumerate_binary_requires_out(capsys):
    assert run(["enumerate", "--variant", "modular-magic", "--format", "binary"]) == 2
    captured = capsys.readouterr()
    assert "usage error" in captured.out + captured.err


def test_enumerate_to_binary_file(tmp_path, mm_sample):
    out = tmp_path / "mm.mssb"
    code = run(
        [
            "enumerate",
            "--variant",
            "modular-magic",
            "--out",
            str(out),
            "--format",
            "binary",
            "--quiet",
        ]
    )
    assert code == 0
    boards = read_mssb(out.open("rb"))
    assert len(boards) == 32256
    assert boards[0] == mm_sample[0]
    assert boards[31] == mm_sample[1]
    assert len(set(boards)) == 32256


def test_census_json(tmp_path, capsys):
    out = tmp_path / "census.json"
    code = run(
        [
            "census",
            "--variant",
            "modular-magic",
            "--threads",
            "2",
            "--quiet",
            "--json",
            str(out),
        ]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["variant"] == "modular-magic"
    assert payload["total"] == 32256
    got = {entry["label"]: entry["count"] for entry in payload["nests"]}
    assert got == {
        "[1,1]": 1536,
        "[2,2]": 1536,
        "[7,7]": 1536,
        "[1,2]": 4608,
        "[1,8]": 4608,
        "[2,1]": 4608,
        "[2,7]": 4608,
        "[7,2]": 4608,
        "[7,5]": 4608,
    }
    assert [entry["label"] for entry in payload["nests"]] == sorted(got)


def test_nest_graph_outputs(tmp_path, capsys):
    dot_file = tmp_path / "nests.dot"
    report_file = tmp_path / "report.json"
    code = run(
        [
            "nest-graph",
            "--variant",
            "modular-magic",
            "--relabelings",
            "rho,mu(4,0)",
            "--dot",
            str(dot_file),
            "--report",
            str(report_file),
            "--quiet",
        ]
    )
    assert code == 0
    dot = dot_file.read_text()
    assert '"[7,7]" -> "[7,7]" [label="rho"];' in dot
    assert '"[7,7]" -> "[1,1]" [label="mu(4,0)"];' in dot
    report = json.loads(report_file.read_text())
    assert report["variant"] == "modular-magic"
    assert report["component_count"] == 2
    assert report["components"] == [
        ["[1,1]", "[2,2]", "[7,7]"],
        ["[1,2]", "[1,8]", "[2,1]", "[2,7]", "[7,2]", "[7,5]"],
    ]
    assert len(report["edges"]) == 18
    assert {"from": "[7,7]", "to": "[1,1]", "generator": "mu(4,0)"} in report["edges"]


def test_nest_graph_dot_to_stdout(capsys):
    code = run(
        ["nest-graph", "--variant", "modular-magic", "--relabelings", "rho,mu(4,0)"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph nests {")


def test_nest_graph_semi_magic_defaults(tmp_path):
    report_file = tmp_path / "sm.json"
    code = run(
        [
            "nest-graph",
            "--variant",
            "semi-magic",
            "--relabelings",
            "(12)(45)(78)",
            "--report",
            str(report_file),
            "--quiet",
        ]
    )
    assert code == 0
    report = json.loads(report_file.read_text())
    assert [len(c) for c in report["components"]] == [1, 6, 9]
    assert report["components"][0] == ["[7,8]"]


def test_nest_graph_rejects_bad_generator(capsys):
    code = run(
        ["nest-graph", "--variant", "semi-magic", "--relabelings", "(01)", "--quiet"]
    )
    assert code == 2
    captured = capsys.readouterr()
    assert "usage error" in captured.out + captured.err


def test_keedwell_json(tmp_path, capsys):
    out = tmp_path / "kw.json"
    code = run(
        ["keedwell", "--board", CANON_SM_71, "--json", str(out), "--quiet"]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload == {
        "keedwell": True,
        "c": [[0, 1, 2], [0, 2, 1], [0, 1, 2]],
        "d": [[0, 0, 0], [1, 1, 1], [2, 2, 2]],
        "degree": 1,
    }


def test_keedwell_rejects_bad_board(capsys):
    assert run(["keedwell", "--board", "123", "--quiet"]) == 2
    capsys.readouterr()


def test_minimality_g9_default(tmp_path, capsys):
    out = tmp_path / "g9.json"
    assert run(["minimality-g9", "--json", str(out), "--quiet"]) == 0
    payload = json.loads(out.read_text())
    assert payload["bound_holds"] is True
    assert payload["average_orbit_floor"] == 1218935174261


def test_minimality_g9_failing_bound(capsys):
    code = run(
        ["minimality-g9", "--group-order", str(10**18), "--quiet"]
    )
    assert code == 1
    capsys.readouterr()


def test_verify_selected_checks(capsys):
    code = run(["verify", "--checks", "sm_blocks,g9_certificate"])
    assert code == 0
    out = capsys.readouterr().out
    assert "sm_blocks: PASS" in out
    assert "g9_certificate: PASS" in out
    assert "overall: PASS" in out


def test_verify_unknown_check_is_usage_error(capsys):
    assert run(["verify", "--checks", "nonsense"]) == 2
    capsys.readouterr()


def test_verify_json_report(tmp_path, capsys):
    out = tmp_path / "verify.json"
    code = run(
        ["verify", "--checks", "g9_certificate", "--json", str(out), "--quiet"]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["overall"] is True
    assert payload["checks"][0]["name"] == "g9_certificate"
    assert payload["checks"][0]["pass"] is True
