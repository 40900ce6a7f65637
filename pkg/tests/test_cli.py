import json

import pytest

from liewide import cli
from liewide.services.presets import EXAMPLE1_T
from liewide.services.widecheck import VerifyResult


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def _json(capsys, *argv):
    code, out = _run(capsys, *argv)
    assert code == 0
    return json.loads(out)


@pytest.fixture
def example1_file(tmp_path):
    path = tmp_path / "example1.json"
    path.write_text(json.dumps({"system": "A3", "T": EXAMPLE1_T, "t": [[0, 0, 1]]}))
    return path


def test_decide_example1(capsys):
    report = _json(capsys, "decide", "--preset", "example1")
    assert report["wide"] is True
    assert report["cyclic_wide"] == "no"
    assert report["parabolic"] is False
    assert report["ad_nilpotent_radical"] is True
    assert report["perfect"] is False
    assert report["subalgebra"]["dim"] == 6
    assert report["subalgebra"]["t"] == [["0", "0", "1"]]
    assert report["subalgebra"]["special"] == [[-1, -1, -1], [-1, -1, 0], [-1, 0, 0]]
    assert "weight" in report["witnesses"]


def test_decide_example1_variant(capsys):
    report = _json(capsys, "decide", "--preset", "example1-variant")
    assert report["cyclic_wide"] == "unknown"
    assert report["ad_nilpotent_radical"] is False
    assert report["subalgebra"]["k_perp"] == [["0", "2", "1"]]


def test_decide_tk(capsys):
    report = _json(capsys, "decide", "--preset", "tk", "--n", "3", "--k", "1")
    assert report["cyclic_wide"] == "yes"
    assert report["perfect"] is True
    assert report["radical_abelian"] is True
    assert report["subalgebra"]["t_mode"] == "generated-by-Tr"


def test_decide_from_input_matches_preset(capsys, example1_file):
    from_file = _json(capsys, "decide", "--input", str(example1_file))
    from_preset = _json(capsys, "decide", "--preset", "example1")
    assert from_file == from_preset


def test_decide_is_deterministic(capsys):
    first = _run(capsys, "decide", "--preset", "example1-variant")
    second = _run(capsys, "decide", "--preset", "example1-variant")
    assert first == second


def test_decide_text_format(capsys):
    code, out = _run(capsys, "decide", "--preset", "example1", "--format", "text")
    assert code == 0
    assert "wide: yes" in out
    assert "cyclic wide: no" in out
    assert "witness: V(" in out
    assert "normal form word: " in out


@pytest.mark.parametrize(
    "argv",
    [
        ["decide"],
        ["decide", "--preset", "tk"],
        ["decide", "--preset", "nope"],
        ["decide", "--preset", "tk", "--n", "3", "--k", "3"],
        ["frobnicate"],
        ["verify", "--system", "A2", "--jobs", "0"],
        ["verify"],
        ["verify", "--system", "E8"],
        ["verify", "--system", "Q2"],
        ["module", "--preset", "example1", "--lambda", "1,0"],
        ["module", "--preset", "example1", "--lambda", "a,b,c"],
        ["module", "--preset", "tk", "--n", "2", "--k", "1"],
        ["enumerate", "--system", "A3", "--bound", "5"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _ = _run(capsys, *argv)
    assert code == 1


def test_missing_input_file(capsys, tmp_path):
    code, _ = _run(capsys, "decide", "--input", str(tmp_path / "absent.json"))
    assert code == 1


def test_input_with_unknown_keys(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"system": "A2", "T": [[1, 0]], "extra": 1}))
    code, _ = _run(capsys, "decide", "--input", str(path))
    assert code == 1


@pytest.mark.parametrize("entry", ["abc", "1/0"])
def test_malformed_rational_in_t_exits_1(capsys, tmp_path, entry):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"system": "A3", "T": EXAMPLE1_T, "t": [[0, 0, entry]]}))
    code, _ = _run(capsys, "decide", "--input", str(path))
    assert code == 1


@pytest.mark.parametrize(
    "spec",
    [
        {"system": "A3", "T": [[1, 0, 0], [0, 1, 0]]},
        {"system": "A3", "T": [[0, 0, 1], [0, 0, -1]]},
        {"system": "A3", "T": EXAMPLE1_T, "t": [[1, 0, 0]]},
    ],
)
def test_mathematical_rejections_exit_2(capsys, tmp_path, spec):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    code, _ = _run(capsys, "decide", "--input", str(path))
    assert code == 2


def test_module_example1(capsys):
    report = _json(capsys, "module", "--preset", "example1")
    assert report["weight"] == [0, 0, 1]
    assert report["dim"] == 4
    assert report["radical_dim"] == 1
    assert report["cyclic_levi_dim"] == 2
    assert report["quotient_dim"] == 3
    assert report["quotient_singular_dim"] == 2
    assert report["indecomposable"] is True
    assert report["cyclic_indecomposable"] is False
    assert report["dichotomy"] is None


def test_module_example1_variant(capsys):
    report = _json(capsys, "module", "--preset", "example1-variant")
    assert report["radical_dim"] == 4
    assert report["quotient_is_trivial"] is True
    assert report["quotient_singular_dim"] == 1
    assert report["cyclic_indecomposable"] is True


def test_module_from_module_spec(capsys, tmp_path):
    path = tmp_path / "module.json"
    spec = {"subalgebra": {"system": "A3", "T": EXAMPLE1_T, "t": [[0, 0, 1]]}, "weight": [1, 0, 0]}
    path.write_text(json.dumps(spec))
    report = _json(capsys, "module", "--input", str(path))
    assert report["weight"] == [1, 0, 0]
    assert report["dim"] == 4


def test_module_parabolic_reports_dichotomy(capsys):
    report = _json(capsys, "module", "--preset", "tk", "--n", "2", "--k", "1", "--lambda", "1,1")
    assert report["dichotomy"] == "split"
    assert report["cyclic_indecomposable"] is True


def test_module_rejections(capsys):
    code, _ = _run(capsys, "module", "--preset", "example1", "--lambda", "0,-1,1")
    assert code == 2
    code, _ = _run(capsys, "module", "--preset", "example1", "--lambda", "0,1,0", "--cap", "3")
    assert code == 2


def test_module_dump(capsys, tmp_path):
    path = tmp_path / "dump.json"
    code, _ = _run(capsys, "module", "--preset", "example1", "--dump", str(path))
    assert code == 0
    dump = json.loads(path.read_text())
    assert dump["system"] == "A3"
    assert dump["dim"] == 4
    assert len(dump["weights"]) == 4
    assert dump["highest_vector"] == 0
    assert dump["weights"][0] == [0, 0, 1]
    assert set(dump["actions"]) == {"e1", "e2", "e3", "f1", "f2", "f3", "h1", "h2", "h3"}


def test_module_text_format(capsys):
    code, out = _run(capsys, "module", "--preset", "example1", "--format", "text")
    assert code == 0
    assert out.startswith("V(λ3): dim 4")


def test_verify_a2_single_weight(capsys):
    report = _json(capsys, "verify", "--system", "A2", "--lambda", "1,0")
    assert report["grid"] == [[1, 0]]
    assert report["summary"] == {
        "subalgebras": 6,
        "cells": 6,
        "checked": 6,
        "skipped": 0,
        "discrepancies": 0,
    }
    assert all(c["empirical"]["cyclic_indecomposable"] for c in report["cells"])


def test_verify_a1_is_empty(capsys):
    report = _json(capsys, "verify", "--system", "A1", "--max-dim", "5")
    assert report["summary"]["subalgebras"] == 0
    assert report["cells"] == []


def test_verify_discrepancy_exits_3(capsys, monkeypatch):
    def fake(system, **kwargs):
        return VerifyResult(
            system=system.name,
            subalgebras=1,
            grid=[(0, 0)],
            cells=[],
            discrepancies=[{"T": [[1, 0]], "problem": "cyclic wide prediction contradicted"}],
        )

    monkeypatch.setattr(cli.widecheck, "verify_theorems", fake)
    code, out = _run(capsys, "verify", "--system", "A2")
    assert code == 3
    assert json.loads(out)["summary"]["discrepancies"] == 1


def test_enumerate_a1(capsys):
    report = _json(capsys, "enumerate", "--system", "A1")
    assert report["count"] == 4
    assert [row["T"] for row in report["rows"]] == [[], [[1]], [[-1]], [[-1], [1]]]
    assert not any(row["levi_decomposable"] for row in report["rows"])


def test_enumerate_a2_decisions(capsys):
    report = _json(capsys, "enumerate", "--system", "A2")
    levi = [row for row in report["rows"] if row["levi_decomposable"]]
    assert len(levi) == 6
    assert all(row["cyclic_wide"] == "yes" for row in levi)


def test_enumerate_text(capsys):
    code, out = _run(capsys, "enumerate", "--system", "A1", "--format", "text")
    assert code == 0
    assert out.strip().endswith("4 closed subsets")


def test_preset_list(capsys):
    report = _json(capsys, "preset", "list")
    names = [p["name"] for p in report["presets"]]
    assert names == ["example1", "example1-variant", "tk", "sum-demo"]
    assert report["presets"][0]["weight"] == [0, 0, 1]
