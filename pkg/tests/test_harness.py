from __future__ import annotations

import json

import pytest

from swl.harness import (ConfigError, Claim, find_claim, identity_terms, load_claims, mutate_multiplicity,
                         run_claim, run_suite)


@pytest.fixture(scope="module")
def claims():
    return load_claims()


def test_registry_shape(claims):
    ids = [c.id for c in claims]
    assert len(ids) == len(set(ids))
    for c in claims:
        assert c.anchor["label"] and c.anchor["formula"]


def test_run_claim_examples(claims):
    assert run_claim(find_claim(claims, "split_identity"), 5).status == "pass"
    r = run_claim(find_claim(claims, "groth_relation"), 5)
    assert r.status == "pass" and r.checked > 0
    assert run_claim(find_claim(claims, "groth_ha"), 5).status == "pass"


def test_run_suite_edges(claims):
    assert run_suite([]).reports == [] and run_suite([]).passed
    with pytest.raises(ConfigError):
        run_suite([4])
    with pytest.raises(ConfigError):
        run_suite([5], only=["no_such_claim"])
    r = run_suite([3], only=["split_identity", "split_tables"])
    assert {x.status for x in r.reports} == {"pass", "skipped"}


def test_run_suite_p5_sorted():
    r = run_suite([5])
    assert r.passed
    assert [x.id for x in r.reports] == sorted(x.id for x in r.reports)


def test_mutation_fails(claims):
    c = find_claim(claims, "twotwo_identity")
    for side, i in identity_terms(c):
        for delta in (1, -1):
            m = mutate_multiplicity(c, side, i, delta)
            assert m.id != c.id
            r = run_claim(m, 5)
            assert r.status == "fail" and r.witness is not None


def test_mutation_rejects_zero(claims):
    with pytest.raises(ValueError):
        mutate_multiplicity(find_claim(claims, "split_identity"), "lhs", 0, 0)
    with pytest.raises(ValueError):
        identity_terms(find_claim(claims, "groth_ha"))


def test_custom_fixture_file(tmp_path):
    bad = {"suite": "t", "claims": [{"id": "x", "kind": "identity", "anchor": {"label": "x", "formula": "x"},
                                     "lhs": "Sym^5", "rhs": "Sym^1 + e^1 Sym^3 + Sym^0"}]}
    good = json.loads(json.dumps(bad))
    good["claims"][0]["rhs"] = "Sym^1 + e^1 Sym^3"
    path = tmp_path / "f.json"
    path.write_text(json.dumps(good))
    assert run_suite([5, 7], load_claims(path)).passed is False  # Sym^{p} formula is p=5 specific
    assert run_claim(load_claims(path)[0], 5).status == "pass"
    path.write_text(json.dumps(bad))
    assert run_claim(load_claims(path)[0], 5).status == "fail"


@pytest.mark.parametrize("data", [
    {"id": "x", "kind": "nope", "anchor": {"label": "a", "formula": "b"}},
    {"id": "x", "kind": "identity", "anchor": {"label": "a"}},
    {"kind": "identity"},
])
def test_malformed_claims(data):
    with pytest.raises(ConfigError):
        Claim.from_json(data)


def test_bad_notation_is_config_error():
    c = Claim.from_json({"id": "x", "kind": "identity", "anchor": {"label": "a", "formula": "b"},
                         "lhs": "Sym^q", "rhs": "0"})
    with pytest.raises(ConfigError):
        run_claim(c, 5)
