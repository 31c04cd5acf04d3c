"""Tests for the command line interface: catalog, suites, and reports."""

from __future__ import annotations

import json

import pytest

from hopfkit.cli import (
    CliError,
    builtin_catalog,
    emit_report,
    full_catalog,
    main,
    parse_cyclic_orders,
    parse_group,
    run_suite,
    RunOptions,
)

GOOD_ENTRY = """
{
  "name": "user-laurent",
  "kind": "presented",
  "description": "Laurent polynomials on one grouplike generator",
  "ring": "base=rationals; params=",
  "generators": ["g", "G"],
  "relations": [
    {"lhs": "g*G", "rhs": "1"},
    {"lhs": "G*g", "rhs": "1"}
  ],
  "coproduct": {"g": [["g", "g"]], "G": [["G", "G"]]},
  "counit": {"g": 1, "G": 1},
  "antipode": {"g": "G", "G": "g"}
}
"""

# Single-token mutation of GOOD_ENTRY: the antipode fixes each generator
# instead of inverting it.
MUTATED_ENTRY = GOOD_ENTRY.replace('"antipode": {"g": "G", "G": "g"}',
                                   '"antipode": {"g": "g", "G": "G"}')

COACTION_ENTRY = """
{
  "name": "user-line",
  "kind": "coaction",
  "description": "a polynomial line twisted by the grouplike coordinate",
  "target": "qlaurent",
  "carrier": {
    "name": "user-line-carrier",
    "generators": ["V"],
    "relations": []
  },
  "coaction": {"V": [["V", "X"]]}
}
"""


def test_catalog_has_at_least_14_entries():
    entries = builtin_catalog()
    assert len(entries) >= 14
    assert "SLq2" in entries
    assert "qplane" in entries


def test_every_entry_names_valid_suites():
    from hopfkit.cli import SUITES

    for entry in builtin_catalog().values():
        assert entry.suites, entry.name
        for suite in entry.suites:
            assert suite in SUITES, (entry.name, suite)


def test_catalog_list_text(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert "SLq2" in out
    assert "hopf-axioms" in out


def test_catalog_list_json(capsys):
    assert main(["catalog", "list", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == "hopfkit-catalog/1"
    names = [e["name"] for e in payload["entries"]]
    assert len(names) >= 14
    assert len(set(names)) == len(names)


def test_verify_slq2_hopf_axioms(capsys):
    assert main(["verify", "SLq2", "--suite", "hopf-axioms"]) == 0
    out = capsys.readouterr().out
    assert "PASS hopf axioms" in out


def test_verify_qplane_coinvariants_degree_4(capsys):
    assert main(["verify", "qplane", "--suite", "coinvariants",
                 "--degree", "4"]) == 0
    out = capsys.readouterr().out
    assert "witness: {1}" in out


def test_unknown_entry_is_a_usage_error(capsys):
    assert main(["verify", "no-such-entry"]) == 2
    assert "unknown catalog entry" in capsys.readouterr().err


def test_unknown_suite_is_a_usage_error(capsys):
    assert main(["verify", "SLq2", "--suite", "no-such-suite"]) == 2
    err = capsys.readouterr().err
    assert "suite" in err


def test_unsupported_suite_is_a_usage_error(capsys):
    assert main(["verify", "qplane", "--suite", "hopf-axioms"]) == 2
    err = capsys.readouterr().err
    assert "does not support" in err


def test_bad_q_flag_is_a_usage_error(capsys):
    assert main(["verify", "SLq2", "--suite", "presentation",
                 "--q", "sideways"]) == 2
    assert "--q" in capsys.readouterr().err


def test_report_json_is_deterministic_modulo_timing():
    entry = builtin_catalog()["qplane"]
    opts = RunOptions(degree=3)
    first = json.loads(emit_report(run_suite(entry, "coinvariants", opts),
                                   "json"))
    second = json.loads(emit_report(run_suite(entry, "coinvariants", opts),
                                    "json"))
    first.pop("timing")
    second.pop("timing")
    assert json.dumps(first) == json.dumps(second)
    assert first["schema"] == "hopfkit-report/1"
    assert [c["name"] for c in first["checks"]] == ["coinvariant basis"]


def test_report_serialization_round_trips():
    entry = builtin_catalog()["quaternions"]
    report = run_suite(entry, "grading", RunOptions())
    payload = json.loads(emit_report(report, "json"))
    assert payload["suite"] == "grading"
    assert payload["target"] == "quaternions"
    assert payload["failed"] == 0
    statuses = {c["status"] for c in payload["checks"]}
    assert statuses == {"pass"}


def test_emit_report_rejects_unknown_format():
    entry = builtin_catalog()["qplane"]
    report = run_suite(entry, "coinvariants", RunOptions(degree=2))
    with pytest.raises(CliError):
        emit_report(report, "yaml")


def test_beta_subcommand_on_module_extension(capsys):
    assert main(["beta", "laurent-Z3"]) == 0
    out = capsys.readouterr().out
    assert "PASS beta is bijective over the coinvariant base" in out
    assert "det = x^9" in out


def test_grading_subcommand(capsys):
    assert main(["grading", "matrix3"]) == 0
    out = capsys.readouterr().out
    assert "PASS grading is strong" in out
    assert "PASS degree data survives the coaction round trip" in out
    assert "PASS component projector identities" in out


def test_h2_klein_group(capsys):
    assert main(["h2", "Z2xZ2"]) == 0
    out = capsys.readouterr().out
    assert "witness: Z2" in out
    assert "PASS representative (0,1) is a cocycle" in out
    assert "PASS representative (0,1) is not a coboundary" in out


def test_h2_cyclic_is_trivial(capsys):
    assert main(["h2", "Z12"]) == 0
    assert "witness: trivial" in capsys.readouterr().out


def test_h2_rejects_symmetric_factors(capsys):
    assert main(["h2", "S3"]) == 2
    assert "cyclic" in capsys.readouterr().err


def test_taft_subcommand(capsys):
    assert main(["taft", "--N", "2", "--s", "1"]) == 0
    out = capsys.readouterr().out
    assert "PASS comodule laws" in out
    assert "PASS beta is bijective" in out


def test_generic_sigma_and_assoc(capsys):
    assert main(["generic", "sigma", "sweedler"]) == 0
    out = capsys.readouterr().out
    assert "PASS symbol inverses satisfy both convolution identities" in out
    assert "PASS cocycle values are coinvariant" in out
    assert main(["generic", "assoc", "sweedler"]) == 0
    assert "PASS crossed product laws" in capsys.readouterr().out


def test_generic_thm812(capsys):
    assert main(["generic", "thm812"]) == 0
    out = capsys.readouterr().out
    assert "PASS commutator of E and F" in out
    assert "FAIL" not in out


def test_generic_thm813_d3(capsys):
    assert main(["generic", "thm813", "--d", "3"]) == 0
    out = capsys.readouterr().out
    assert "PASS K power" in out
    assert "PASS every defining relation is recovered" in out


def test_generic_fiber_seed_shows_up_in_labels(capsys):
    assert main(["generic", "fiber", "sweedler", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "fiber counit character: beta bijective" in out
    assert "fiber seed 7: beta bijective" in out
    assert "fiber seed 9: beta bijective" in out


def test_generic_unknown_algebra(capsys):
    assert main(["generic", "sigma", "nope"]) == 2
    assert "unknown algebra" in capsys.readouterr().err


def test_parse_group_specs():
    assert parse_group("Z6").order == 6
    assert parse_group("Z2xZ3").order == 6
    assert parse_group("S3").order == 6
    assert parse_cyclic_orders("Z2xZ4") == (2, 4)
    with pytest.raises(CliError):
        parse_group("Q8")
    with pytest.raises(CliError):
        parse_cyclic_orders("S3")


def test_user_catalog_dir_loads_presentation(tmp_path, monkeypatch, capsys):
    (tmp_path / "laurent.json").write_text(GOOD_ENTRY)
    monkeypatch.setenv("HOPFKIT_CATALOG_DIR", str(tmp_path))
    entries = full_catalog()
    assert "user-laurent" in entries
    assert main(["verify", "user-laurent", "--suite", "hopf-axioms"]) == 0
    assert "PASS hopf axioms" in capsys.readouterr().out


def test_user_coaction_file_loads(tmp_path, monkeypatch, capsys):
    (tmp_path / "line.json").write_text(COACTION_ENTRY)
    monkeypatch.setenv("HOPFKIT_CATALOG_DIR", str(tmp_path))
    assert main(["verify", "user-line", "--suite", "comodule"]) == 0
    assert "PASS comodule laws" in capsys.readouterr().out


def test_mutated_entry_fails_with_witness_in_text(tmp_path, monkeypatch,
                                                  capsys):
    (tmp_path / "broken.json").write_text(
        MUTATED_ENTRY.replace("user-laurent", "user-broken"))
    monkeypatch.setenv("HOPFKIT_CATALOG_DIR", str(tmp_path))
    assert main(["verify", "user-broken", "--suite", "hopf-axioms"]) == 1
    out = capsys.readouterr().out
    assert "FAIL hopf axioms" in out
    assert "witness: g: g^2 - 1" in out


def test_mutated_entry_witness_reparses(tmp_path, monkeypatch):
    from hopfkit.cli import load_presentation

    path = tmp_path / "broken.json"
    path.write_text(MUTATED_ENTRY.replace("user-laurent", "user-broken"))
    entry = load_presentation(path, builtin_catalog())
    report = run_suite(entry, "hopf-axioms", RunOptions())
    assert not report.ok
    witnesses = [c.witness for c in report.checks if c.witness]
    hopf = entry.build(None)
    label, expr = witnesses[0].split(": ", 1)
    residual = hopf.algebra.free.parse(expr)
    assert not residual.is_zero()
    assert str(residual) == expr


def test_user_entry_may_not_shadow_builtin(tmp_path, monkeypatch, capsys):
    (tmp_path / "shadow.json").write_text(
        GOOD_ENTRY.replace("user-laurent", "SLq2"))
    monkeypatch.setenv("HOPFKIT_CATALOG_DIR", str(tmp_path))
    assert main(["catalog", "list"]) == 2
    assert "shadows" in capsys.readouterr().err


def test_malformed_presentation_file(tmp_path, monkeypatch, capsys):
    (tmp_path / "bad.json").write_text('{"name": "x", "generators": []}')
    monkeypatch.setenv("HOPFKIT_CATALOG_DIR", str(tmp_path))
    assert main(["catalog", "list"]) == 2
    assert "no generators" in capsys.readouterr().err


def test_relation_lhs_must_be_monic_word(tmp_path, monkeypatch, capsys):
    bad = GOOD_ENTRY.replace('"lhs": "g*G"', '"lhs": "2*g*G"')
    (tmp_path / "bad.json").write_text(bad)
    monkeypatch.setenv("HOPFKIT_CATALOG_DIR", str(tmp_path))
    assert main(["catalog", "list"]) == 2
    assert "single" in capsys.readouterr().err


def test_cyclotomic_q_flag_builds_a_cyclotomic_ring():
    ring = RunOptions(q="cyclotomic:3").ring()
    assert ring is not None
    assert ring.q(3).is_one()
    assert RunOptions(q="formal").ring() is None
