from __future__ import annotations

import json

import pytest

from codeglab.algo.corpus import DEFAULT_MANIFEST, CorpusEntry, CorpusRepository, PrimeExpectation, load_manifest
from codeglab.algo.errors import GroupDataError
from codeglab.cli.app import compare_expectation, verify_pair

MANIFEST = load_manifest(DEFAULT_MANIFEST)


def _pairs():
    for entry in MANIFEST.entries:
        for exp in entry.primes:
            marks = [pytest.mark.slow] if entry.slow else []
            yield pytest.param(entry, exp.p, marks=marks, id=f"{entry.id}@{exp.p}")


@pytest.mark.parametrize("entry, p", list(_pairs()))
def test_corpus_pair(entry, p):
    result = verify_pair((entry.model_dump(mode="json"), str(MANIFEST.base_dir), p, False))
    assert result["status"] == "pass", result["mismatches"] or result["error"]
    if result["report"]["direct_hp"]:
        assert any(c.startswith("subnormal-cores:") for c in result["hereditary"])


def test_shipped_manifest_shape():
    ids = [e.id for e in MANIFEST.entries]
    assert len(ids) == len(set(ids))
    assert ("S_4", 2) in MANIFEST.pairs()
    assert MANIFEST.pairs() == sorted(MANIFEST.pairs())
    assert MANIFEST.entry("ASL_2(3)").expectation(3).provenance == "LITERATURE"
    with pytest.raises(KeyError):
        MANIFEST.entry("nope")
    with pytest.raises(KeyError):
        MANIFEST.entry("S_4").expectation(5)


def _write(tmp_path, payload, name="manifest.json"):
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
    return path


def _entry(**overrides):
    data = {"id": "S_3", "builtin": "symmetric:3", "primes": [{"p": 2, "direct_hp": True, "cases_a": ["2"]}]}
    data.update(overrides)
    return data


@pytest.mark.parametrize(
    "payload",
    [
        "{not json",
        [],
        7,
        "null",
        {"entries": [_entry(), _entry()]},
        {"entries": [_entry(file="s3.pgr")]},
        {"entries": [_entry(builtin=None)]},
        {"entries": [_entry(primes=[])]},
        {"entries": [_entry(primes=[{"p": 2, "direct_hp": True, "cases_a": []}])]},
        {"entries": [_entry(primes=[{"p": 2, "direct_hp": True, "cases_a": ["8"]}])]},
        {"entries": [_entry(primes=[{"p": 1, "direct_hp": False}])]},
    ],
)
def test_invalid_manifest(tmp_path, payload):
    with pytest.raises(GroupDataError):
        load_manifest(_write(tmp_path, payload))


def test_missing_manifest(tmp_path):
    with pytest.raises(GroupDataError):
        load_manifest(tmp_path / "absent.json")


def test_missing_group_file(tmp_path):
    manifest = load_manifest(_write(tmp_path, {"entries": [_entry(builtin=None, file="absent.pgr")]}))
    with pytest.raises(GroupDataError):
        manifest.entries[0].build(manifest.base_dir)


def test_file_entry_relative_to_manifest(tmp_path):
    _write(tmp_path, "3\n2 1 3\n2 3 1\n", name="s3.pgr")
    manifest = load_manifest(_write(tmp_path, {"entries": [_entry(builtin=None, file="s3.pgr")]}))
    assert manifest.entries[0].build(manifest.base_dir).order == 6


def test_repository_caches_and_reads_env(tmp_path, monkeypatch):
    CorpusRepository.clear()
    path = _write(tmp_path, {"entries": [_entry()]})
    monkeypatch.setenv("CODEGLAB_MANIFEST", str(path))
    try:
        first = CorpusRepository.get()
        assert first is CorpusRepository.get(path)
        assert [e.id for e in first.entries] == ["S_3"]
        assert CorpusRepository.get(DEFAULT_MANIFEST) is not first
    finally:
        CorpusRepository.clear()


def test_compare_expectation_lists_every_difference(group):
    from codeglab.algo.classifier import cross_check

    report = cross_check(group("symmetric:4"), 2, "S_4")
    exp = PrimeExpectation(p=2, direct_hp=True, cases_a=["2"], hp_star=True, cases_c=["2"])
    mismatches = compare_expectation(report, exp)
    assert [m.split(":")[0] for m in mismatches] == ["cases_a", "hp_star", "cases_c"]
    assert compare_expectation(report, PrimeExpectation(p=2, direct_hp=True, cases_a=["4"])) == []


def test_verify_pair_reports_mismatch():
    entry = CorpusEntry(id="S_5", builtin="symmetric:5", primes=[{"p": 2, "direct_hp": True, "cases_a": ["5a"]}])
    result = verify_pair((entry.model_dump(mode="json"), str(MANIFEST.base_dir), 2, False))
    assert result["status"] == "mismatch"
    assert result["hereditary"] == []
    assert result["mismatches"][0].startswith("direct_hp")


def test_manifest_not_utf8(tmp_path):
    path = tmp_path / "manifest.json"
    path.write_bytes(b'{"entries": [], "note": "\xff"}')
    with pytest.raises(GroupDataError):
        load_manifest(path)
