from __future__ import annotations

import json

import pytest

from main import main


@pytest.fixture
def run(capsys, monkeypatch):
    monkeypatch.delenv("CODEGLAB_WORKERS", raising=False)
    monkeypatch.delenv("CODEGLAB_MANIFEST", raising=False)

    def invoke(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


def _manifest(tmp_path, entries):
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps({"entries": entries}), encoding="utf-8")
    return str(path)


SMALL = [
    {
        "id": "S_3",
        "builtin": "symmetric:3",
        "primes": [
            {"p": 2, "direct_hp": True, "cases_a": ["2"], "hp_star": True, "cases_c": ["2"]},
            {"p": 3, "direct_hp": True, "cases_a": ["1"], "hp_star": True, "cases_c": ["1"]},
        ],
    },
    {"id": "S_4", "builtin": "symmetric:4", "primes": [{"p": 2, "direct_hp": True, "cases_a": ["4"], "hp_star": False}]},
    {"id": "Q_8", "builtin": "quaternion8", "primes": [{"p": 2, "direct_hp": False, "cases_a": []}]},
]


def test_analyze(run):
    code, out, err = run("analyze", "--builtin", "symmetric:4", "--prime", "3", "--prime", "2")
    assert code == 0
    reports = json.loads(out)
    assert [r["p"] for r in reports] == [2, 3]
    assert reports[0]["group"] == "symmetric:4"
    assert reports[0]["cases_a"] == ["4"]
    assert reports[0]["direct_hp_star"] is False
    assert reports[0]["timings"] is None
    assert reports[1]["cases_a"] == ["2"]


def test_analyze_negative_group_is_not_an_error(run):
    code, out, _ = run("analyze", "--builtin", "quaternion8", "--prime", "2")
    assert code == 0
    (report,) = json.loads(out)
    assert report["direct_hp"] is False
    assert report["witnesses"]["direct_hp"] == {"codegree": 4, "degree": 2, "index": 4}


def test_analyze_timings_and_out(run, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run("analyze", "--builtin", "symmetric:3", "--prime", "3", "--timings", "--out", str(out_path))
    assert code == 0
    assert out_path.read_text(encoding="utf-8") == out
    assert "character_table" in json.loads(out)[0]["timings"]


def test_analyze_file(run, tmp_path):
    path = tmp_path / "s3.pgr"
    path.write_text("3\n#! order=6\n2 1 3\n2 3 1\n", encoding="utf-8")
    code, out, _ = run("analyze", "--file", str(path), "--prime", "2")
    assert code == 0
    assert json.loads(out)[0]["cases_a"] == ["2"]


@pytest.mark.parametrize(
    "argv, message",
    [
        (("analyze", "--builtin", "symmetric:4", "--prime", "4"), "prime expected"),
        (("analyze", "--builtin", "symmetric:4"), "error: usage:"),
        (("analyze", "--prime", "2"), "error: usage:"),
        (("analyze", "--builtin", "nonsense", "--prime", "2"), "error: data:"),
        (("analyze", "--file", "absent.pgr", "--prime", "2"), "file not found"),
        (("frobnicate",), "error: usage:"),
    ],
)
def test_usage_and_data_errors(run, argv, message):
    code, _, err = run(*argv)
    assert code == 1
    assert message in err


def test_malformed_pgr_reports_line(run, tmp_path):
    path = tmp_path / "bad.pgr"
    path.write_text("3\n1 1 3\n", encoding="utf-8")
    code, _, err = run("classify", "--file", str(path), "--prime", "3")
    assert code == 1
    assert "line 2" in err


def test_pgr_non_ascii_input(run, tmp_path):
    digits = tmp_path / "digits.pgr"
    digits.write_text("3\n2 1 \u00b3\n", encoding="utf-8")
    latin1 = tmp_path / "latin1.pgr"
    latin1.write_bytes(b"3\n\xff\n")
    for path in (digits, latin1):
        code, out, err = run("classify", "--file", str(path), "--prime", "3")
        assert code == 1
        assert out == ""
        assert "error: pgr-malformed:" in err
        assert "line 2" in err


def test_chartab(run):
    code, out, _ = run("chartab", "--builtin", "cyclic:3")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert lines[0].split("\t")[:3] == ["1", "1", "0,1,2"]


def test_chartab_cap(run):
    code, out, err = run("chartab", "--builtin", "symmetric:10")
    assert code == 1
    assert out == ""
    assert err.startswith("error: cap:")
    assert "1000000" in err


def test_large_gamma_family_is_rejected_up_front(run):
    code, out, err = run("classify", "--builtin", "gamma_family:5,1", "--prime", "5")
    assert code == 1
    assert out == ""
    assert err.startswith("error: cap:")


def test_classify(run):
    code, out, _ = run("classify", "--builtin", "alternating:5", "--prime", "5", "--prime", "2")
    assert code == 0
    two, five = json.loads(out)
    assert five["cases_a"] == ["5a"]
    assert five["cases_c"] == ["3a"]
    assert five["order"] == 60
    assert two["params"]["5b"] == {"f": 2, "q": 4}


def test_verify_corpus_passes(run, tmp_path):
    code, out, _ = run("verify-corpus", "--manifest", _manifest(tmp_path, SMALL), "--workers", "1")
    assert code == 0
    assert out.splitlines()[-1] == "4/4 pairs: 4 pass, 0 mismatch, 0 violation, 0 error"


def test_verify_corpus_workers_agree(run, tmp_path):
    manifest = _manifest(tmp_path, SMALL)
    serial, parallel = tmp_path / "serial.json", tmp_path / "parallel.json"
    assert run("verify-corpus", "--manifest", manifest, "--workers", "1", "--out", str(serial))[0] == 0
    assert run("verify-corpus", "--manifest", manifest, "--workers", "2", "--out", str(parallel))[0] == 0
    assert serial.read_bytes() == parallel.read_bytes()


def test_verify_corpus_mismatch(run, tmp_path):
    flipped = [{"id": "S_5", "builtin": "symmetric:5", "primes": [{"p": 2, "direct_hp": True, "cases_a": ["5a"]}]}]
    code, out, _ = run("verify-corpus", "--manifest", _manifest(tmp_path, flipped), "--workers", "1")
    assert code == 2
    assert out.startswith("MISMATCH")


def test_verify_corpus_missing_file_is_data_error(run, tmp_path):
    broken = [{"id": "X", "file": "absent.pgr", "primes": [{"p": 2, "direct_hp": False}]}]
    code, out, _ = run("verify-corpus", "--manifest", _manifest(tmp_path, broken), "--workers", "1")
    assert code == 1
    assert out.startswith("ERROR")


def test_verify_corpus_empty(run, tmp_path):
    code, _, err = run("verify-corpus", "--manifest", _manifest(tmp_path, []), "--workers", "1")
    assert code == 1
    assert "empty corpus" in err


def test_verify_corpus_manifest_not_an_object(run, tmp_path):
    path = tmp_path / "manifest.json"
    path.write_text("[]", encoding="utf-8")
    code, out, err = run("verify-corpus", "--manifest", str(path), "--workers", "1")
    assert code == 1
    assert out == ""
    assert "error: data:" in err


def test_invalid_worker_env(run, tmp_path, monkeypatch):
    monkeypatch.setenv("CODEGLAB_WORKERS", "many")
    code, _, err = run("verify-corpus", "--manifest", _manifest(tmp_path, SMALL))
    assert code == 1
    assert "CODEGLAB_WORKERS" in err
