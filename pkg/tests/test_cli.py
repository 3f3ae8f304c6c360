"""Command line front-end: commands, exit codes, report formats."""

import json
from pathlib import Path

import pytest

from quivhom.cli import main
from quivhom.generate import generate_document
from quivhom.instances import (
    InstanceError,
    document_of_instance,
    load_instance,
)

FIXTURES = Path(__file__).parent / "fixtures"
HIGGS = str(FIXTURES / "higgs_p1.json")
TRIPLE = str(FIXTURES / "triple_vector.json")
JORDAN = str(FIXTURES / "jordan_vector.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ext_higgs_fixture(capsys):
    code, out, _ = run(capsys, "ext", HIGGS, "V", "W", "--json")
    assert code == 0
    report = json.loads(out)
    result = report["result"]
    assert (result["ext0"], result["ext1"], result["ext2"]) == (1, 3, 0)
    assert result["h0_G"] == 3 and result["rank_delta0"] == 0
    terms = {t["term"]: t["dim"] for t in result["sequence"]}
    assert terms["Ext1_B(V,W)"] == 3


def test_ext_vector_triple_fixture(capsys):
    # V simple at vertex 1, W simple at vertex 0: Hom = 0, Ext^1 = 1
    code, out, _ = run(capsys, "ext", TRIPLE, "V", "W", "--json")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["hom"] == 0
    assert result["ext1"] == 1
    assert result["ext2"] == 0


def test_ext_text_and_json_agree(capsys):
    code, text_out, _ = run(capsys, "ext", TRIPLE, "T", "Z")
    assert code == 0
    code, json_out, _ = run(capsys, "ext", TRIPLE, "T", "Z", "--json")
    assert code == 0
    result = json.loads(json_out)["result"]
    for key in ("hom", "ext1", "ext2", "h0_F", "h0_G", "rank_delta0"):
        assert f"{key}: {result[key]}" in text_out


def test_ext_with_bases(capsys):
    code, out, _ = run(capsys, "ext", JORDAN, "J2", "J2", "--json")
    assert code == 0
    assert json.loads(out)["result"]["hom"] == 2
    code, out, _ = run(capsys, "ext", JORDAN, "J2", "J2", "--json", "--bases")
    basis = json.loads(out)["result"]["hom_basis"]
    assert len(basis) == 2


def test_malformed_json_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": "q", ', encoding="utf-8")
    code, _, err = run(capsys, "ext", str(bad), "V", "W")
    assert code == 2
    assert "byte offset" in err


def test_unknown_key_exit_3(tmp_path, capsys):
    doc = json.loads(Path(TRIPLE).read_text())
    doc["extra"] = 1
    f = tmp_path / "inst.json"
    f.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run(capsys, "ext", str(f), "V", "W")
    assert code == 3
    assert "$" in err and "extra" in err


def test_validation_error_names_path(tmp_path, capsys):
    doc = json.loads(Path(TRIPLE).read_text())
    doc["modules"]["V"]["dims"] = [0, -1]
    f = tmp_path / "inst.json"
    f.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run(capsys, "ext", str(f), "V", "W")
    assert code == 3
    assert "$.modules.V.dims[1]" in err


def test_missing_module_exit_4(capsys):
    code, _, err = run(capsys, "ext", TRIPLE, "V", "NOPE")
    assert code == 4
    assert "NOPE" in err


def test_mode_mismatch_exit_4(capsys):
    code, _, err = run(capsys, "hyper", TRIPLE, "V", "W")
    assert code == 4
    assert "p1" in err


def test_check_passes_on_jordan(capsys):
    code, out, _ = run(capsys, "check", JORDAN, "J2", "--max-degree", "3", "--json")
    assert code == 0
    result = json.loads(out)["result"]
    for key in ("eps_injective", "ker_d_eq_im_eps", "d_surjective", "lift_roundtrip"):
        assert result[key] == "pass"


def test_check_rejects_degree_zero(capsys):
    code, _, err = run(capsys, "check", JORDAN, "J2", "--max-degree", "0")
    assert code == 3
    assert "max-degree" in err


def test_hyper_higgs_with_verify(capsys):
    code, out, _ = run(capsys, "hyper", HIGGS, "V", "W", "--verify", "--json")
    assert code == 0
    result = json.loads(out)["result"]
    assert (result["hh0"], result["hh1"], result["hh2"]) == (1, 3, 0)
    assert result["verify"] == "pass"
    assert result["ext_via_les"] == [1, 3, 0]


def test_gen_deterministic(capsys):
    code, out1, _ = run(capsys, "gen", "--seed", "42")
    assert code == 0
    code, out2, _ = run(capsys, "gen", "--seed", "42")
    assert out1 == out2
    code, out3, _ = run(capsys, "gen", "--seed", "43")
    assert out3 != out1


def test_gen_bad_bounds_exit_3(capsys):
    code, _, err = run(capsys, "gen", "--max-dim", "0")
    assert code == 3


def test_gen_single_vertex_forces_loops(capsys):
    code, out, _ = run(capsys, "gen", "--seed", "7", "--max-vertices", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["quiver"]["vertices"] == 1
    assert all(t == h == 0 for t, h in doc["quiver"]["arrows"])


def test_gen_check_pipeline(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "--seed", "5")
    f = tmp_path / "gen.json"
    f.write_text(out, encoding="utf-8")
    code, out, _ = run(capsys, "check", str(f), "V", "--json")
    assert code == 0


def test_gen_hyper_verify_pipeline(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "--seed", "6", "--mode", "p1")
    f = tmp_path / "gen.json"
    f.write_text(out, encoding="utf-8")
    code, out, _ = run(capsys, "hyper", str(f), "V", "W", "--verify", "--json")
    assert code == 0
    assert json.loads(out)["result"]["verify"] == "pass"


def test_gen_document_round_trip():
    for seed in (0, 1, 2):
        for mode in ("vector", "p1"):
            doc = generate_document(seed, mode=mode)
            assert document_of_instance(load_instance(doc)) == doc


def test_report_byte_identical_across_runs(capsys):
    code, out1, _ = run(capsys, "ext", HIGGS, "V", "W", "--json")
    code, out2, _ = run(capsys, "ext", HIGGS, "V", "W", "--json")
    assert out1 == out2
    code, t1, _ = run(capsys, "ext", HIGGS, "V", "W")
    code, t2, _ = run(capsys, "ext", HIGGS, "V", "W")
    assert t1 == t2


def test_log_env_variable(capsys, monkeypatch):
    monkeypatch.setenv("QUIVHOM_LOG", "info")
    # logging config is process-global; just ensure the command still works
    code, out, _ = run(capsys, "ext", HIGGS, "V", "W", "--json")
    assert code == 0


def test_load_instance_rejects_unsorted_twists():
    doc = generate_document(3, mode="p1")
    doc["twists"][0] = sorted(doc["twists"][0])
    if doc["twists"][0] == sorted(doc["twists"][0], reverse=True):
        doc["twists"][0] = [-1, 0]
    with pytest.raises(InstanceError):
        load_instance(doc)
