import json

import pytest

from ratrel.cli import main
from ratrel.grid import GridWord, grid_to_json
from ratrel.words import LassoWord


@pytest.fixture()
def zero_grid_file(tmp_path):
    path = tmp_path / "zero.json"
    path.write_text(grid_to_json(GridWord.zero()))
    return str(path)


@pytest.fixture()
def bad_grid_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(grid_to_json(GridWord(LassoWord("", "0"), {2: LassoWord("", "1")})))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_alpha(capsys):
    code, out, _ = run(capsys, "alpha", "--prefix", "10")
    assert code == 0 and out.strip() == "A0A00A000A"


def test_encode(capsys, zero_grid_file):
    code, out, _ = run(capsys, "encode", "--grid", zero_grid_file, "--prefix", "10")
    assert code == 0 and out.strip() == "A0A00A000A"


def test_decode(capsys):
    code, out, _ = run(capsys, "decode", "--word", "A0A01A", "--json")
    assert code == 0
    assert json.loads(out) == {"entries": [[1, 1, "0"], [1, 2, "1"], [2, 1, "0"]]}


def test_decode_malformed_is_input_error(capsys):
    code, _, err = run(capsys, "decode", "--word", "A00")
    assert code == 2 and "error" in err


def test_member_reference_pair(capsys):
    code, out, _ = run(capsys, "member", "--aut", "T", "--pair", "A|0A", "A|0A")
    assert code == 0
    assert "accepted" in out and "cycle:" in out


def test_member_rejected(capsys):
    code, out, _ = run(capsys, "member", "--aut", "T", "--pair", "|0", "|0")
    assert code == 1 and "rejected" in out


def test_member_full_relation(capsys):
    code, out, _ = run(capsys, "member", "--aut", "R", "--pair", "|1", "|0", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "accepted"
    assert doc["certificate"]["cycle"]


def test_member_one_tape(capsys):
    code, out, _ = run(capsys, "member", "--aut", "A", "--word", "|1")
    assert code == 0 and "accepted" in out
    code, out, _ = run(capsys, "member", "--aut", "Acomp", "--word", "|1")
    assert code == 1


def test_member_arity_errors(capsys):
    code, _, err = run(capsys, "member", "--aut", "A", "--pair", "|1", "|0")
    assert code == 2 and "word" in err
    code, _, err = run(capsys, "member", "--aut", "T")
    assert code == 2


def test_member_aut_file(capsys, tmp_path, zero_grid_file):
    from ratrel import twotape
    from ratrel.constructions import automaton_T

    path = tmp_path / "aut.json"
    path.write_text(twotape.to_json(automaton_T()))
    code, out, _ = run(capsys, "member", "--aut-file", str(path), "--pair", "A|0A", "A|0A")
    assert code == 0 and "accepted" in out


def test_member_unknown_name(capsys):
    code, _, err = run(capsys, "member", "--aut", "nope", "--pair", "|0", "|0")
    assert code == 2 and "unknown automaton" in err


def test_search(capsys, zero_grid_file):
    code, out, _ = run(
        capsys, "search", "--aut", "T", "--grid", zero_grid_file, "--budget", "3000", "--json"
    )
    assert code == 3
    doc = json.loads(out)
    assert doc["verdict"] == "inconclusive"
    assert doc["stats"]["fair_visits"] > 0


def test_in_p(capsys, zero_grid_file, bad_grid_file):
    code, out, _ = run(capsys, "inP", "--grid", zero_grid_file)
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "inP", "--grid", bad_grid_file)
    assert code == 1 and out.strip() == "false"


def test_sections(capsys):
    code, out, _ = run(capsys, "sections", "--sigma", "|1", "--u", "|0")
    assert code == 0 and out.strip() == "true"


def test_export_json_round_trip(capsys):
    from ratrel import twotape

    code, out, _ = run(capsys, "export", "--aut", "R2", "--format", "json")
    assert code == 0
    aut = twotape.from_json(out)
    assert len(aut.states) == 35


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export", "--aut", "T", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph") and "doublecircle" in out


def test_export_one_tape(capsys):
    code, out, _ = run(capsys, "export", "--aut", "A", "--format", "json")
    assert code == 0
    assert json.loads(out)["alphabet"] == "01"


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "1", "--trials", "4")
    assert code == 0
    lines = [line for line in out.splitlines() if line.startswith("ok")]
    assert len(lines) >= 10
    assert "checks passed" in out


def test_missing_grid_file(capsys):
    code, _, err = run(capsys, "encode", "--grid", "/nonexistent.json", "--prefix", "5")
    assert code == 2 and "error" in err


def test_output_is_deterministic(capsys):
    first = run(capsys, "member", "--aut", "R", "--pair", "A0|1A", "0|A01", "--json")
    second = run(capsys, "member", "--aut", "R", "--pair", "A0|1A", "0|A01", "--json")
    assert first == second
