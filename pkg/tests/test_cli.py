import json

import pytest

from replalg.cli import main, parse_quiver, serialize_quiver
from replalg.errors import CyclicQuiver, DuplicateLabel, ParseError
from replalg.quiver import Quiver, kronecker

KRONECKER_JSON = json.dumps({
    "vertices": ["1", "2"],
    "arrows": [
        {"name": "a", "from": "2", "to": "1"},
        {"name": "b", "from": "2", "to": "1"},
    ],
})


@pytest.fixture()
def kronecker_file(tmp_path):
    path = tmp_path / "kronecker.json"
    path.write_text(KRONECKER_JSON)
    return str(path)


def test_parse_quiver_kronecker():
    q = parse_quiver(KRONECKER_JSON)
    assert q == kronecker()


def test_parse_quiver_roundtrip():
    q = kronecker()
    assert parse_quiver(json.dumps(serialize_quiver(q))) == q


def test_parse_quiver_empty_arrows():
    q = parse_quiver('{"vertices": ["x"], "arrows": []}')
    assert len(q.vertices) == 1 and not q.arrows


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_quiver('{"vertices": [,]}')
    assert exc.value.line >= 1 and exc.value.column >= 1


def test_parse_rejects_cycles_and_duplicates():
    with pytest.raises(CyclicQuiver):
        parse_quiver(json.dumps({
            "vertices": ["1", "2"],
            "arrows": [
                {"name": "a", "from": "1", "to": "2"},
                {"name": "b", "from": "2", "to": "1"},
            ],
        }))
    with pytest.raises(DuplicateLabel):
        parse_quiver(json.dumps({
            "vertices": ["1", "2"],
            "arrows": [
                {"name": "a", "from": "2", "to": "1"},
                {"name": "a", "from": "2", "to": "1"},
            ],
        }))


def test_repdim_command(kronecker_file, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main([
        "repdim", "--quiver", kronecker_file, "--m", "1",
        "--report", "json", "--out", str(out),
    ])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["schema"] == 1
    assert report["results"][0]["values"]["gl_dim_end_M"] == 3
    assert report["results"][0]["verdict"] == "pass"
    assert len(report["inventory"]) == 10
    assert report["elapsed_ms"] is None


def test_domdim_command(kronecker_file, capsys):
    code = main(["domdim", "--quiver", kronecker_file, "--m", "2", "--report", "text"])
    captured = capsys.readouterr()
    assert code == 0
    assert "dominant_dim = 4" in captured.out
    assert "PASS" in captured.out


def test_bounds_command(kronecker_file, capsys):
    code = main(["bounds", "--quiver", kronecker_file, "--m", "1"])
    captured = capsys.readouterr()
    assert code == 0
    assert "gl_dim_replicated = 3" in captured.out


def test_example34_command(capsys):
    code = main(["example34", "--report", "text"])
    captured = capsys.readouterr()
    assert code == 0
    assert "gl_dim_end_M = 3" in captured.out
    assert "gl_dim_end_M0 = 5" in captured.out


def test_inventory_command(kronecker_file, capsys):
    code = main(["inventory", "--quiver", kronecker_file, "--m", "1"])
    captured = capsys.readouterr()
    assert code == 0
    assert "loewy layers:" in captured.out
    assert "1' / 2 2 / 1" in captured.out


def test_missing_quiver_is_an_error(capsys):
    code = main(["repdim", "--m", "1"])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_unreadable_file_is_an_error(capsys):
    code = main(["repdim", "--quiver", "/nonexistent/q.json", "--m", "1"])
    assert code == 2


def test_bad_m_is_an_error(kronecker_file, capsys):
    assert main(["domdim", "--quiver", kronecker_file, "--m", "0"]) == 2
    assert main(["repdim", "--quiver", kronecker_file, "--m", "-1"]) == 2


def test_json_reports_are_byte_identical(kronecker_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    flags = ["domdim", "--quiver", kronecker_file, "--m", "1", "--report", "json", "--seed", "7"]
    assert main(flags + ["--out", str(a)]) == 0
    assert main(flags + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_lemma24_single_target(kronecker_file, tmp_path):
    out = tmp_path / "l.json"
    code = main([
        "lemma24", "--quiver", kronecker_file, "--m", "1",
        "--target", "simple:2@0", "--report", "json", "--out", str(out),
    ])
    assert code == 0
    report = json.loads(out.read_text())
    assert len(report["results"]) == 1
    assert report["results"][0]["values"]["target"] == "simple:2@0"
    assert report["results"][0]["verdict"] == "pass"


def test_lemma24_minimal_generator_fails_somewhere(kronecker_file, tmp_path):
    out = tmp_path / "l0.json"
    code = main([
        "lemma24", "--quiver", kronecker_file, "--m", "1",
        "--generator", "minimal", "--report", "json", "--out", str(out),
    ])
    assert code == 1
    report = json.loads(out.read_text())
    verdicts = [r["verdict"] for r in report["results"]]
    assert "fail" in verdicts


def test_extcheck_command(kronecker_file, tmp_path):
    out = tmp_path / "e.json"
    code = main([
        "extcheck", "--quiver", kronecker_file, "--m", "1",
        "--report", "json", "--out", str(out),
    ])
    assert code == 0
    report = json.loads(out.read_text())
    values = report["results"][0]["values"]
    assert values["identity_holds"] and values["lemma_3_2_vanishing"]
