from __future__ import annotations

import json
from pathlib import Path

import pytest

from coevents.cli import run

THEORIES = Path(__file__).resolve().parents[1] / "demos" / "theories"
FAIR_COIN = str(THEORIES / "fair_coin.json")
THREE_SLIT = str(THEORIES / "three_slit.json")


def invoke(capsys, argv):
    rc = run(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ---------------------------------------------------------------------------
# Exit codes


def test_missing_command_is_a_usage_error(capsys):
    rc, _, err = invoke(capsys, [])
    assert rc == 1 and "usage error" in err


def test_unknown_command_is_a_usage_error(capsys):
    rc, _, err = invoke(capsys, ["frobnicate", FAIR_COIN])
    assert rc == 1


def test_tau_without_event_is_a_usage_error(capsys):
    rc, _, err = invoke(capsys, ["tau", FAIR_COIN])
    assert rc == 1 and "--event" in err


def test_unknown_history_is_a_usage_error(capsys):
    rc, _, err = invoke(capsys, ["tau", FAIR_COIN, "--event", "zebra"])
    assert rc == 1 and "zebra" in err


def test_missing_file_is_a_load_error(capsys):
    rc, _, err = invoke(capsys, ["validate", str(THEORIES / "nope.json")])
    assert rc == 2


def test_invalid_file_is_a_load_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"sample_space": ["a", "a"], "measure": {"atom_weights": {"a": 1}}}')
    rc, _, err = invoke(capsys, ["validate", str(bad)])
    assert rc == 2 and "distinct" in err


def test_brute_force_cap_exit_code(tmp_path, capsys):
    big = tmp_path / "big.json"
    big.write_text(
        json.dumps(
            {
                "sample_space": ["a", "b", "c", "d"],
                "measure": {"atom_weights": {"a": 1, "b": 0, "c": 0, "d": 0}},
            }
        )
    )
    rc, _, err = invoke(capsys, ["coevents", str(big), "--set", "all"])
    assert rc == 3 and "--cap" in err
    rc, out, _ = invoke(capsys, ["coevents", str(big), "--set", "all", "--cap", "4"])
    assert rc == 0
    assert '"count": 65536' in out or "count: 65536" in out


def test_successful_run_exits_zero(capsys):
    rc, out, err = invoke(capsys, ["validate", THREE_SLIT])
    assert rc == 0 and err == ""


# ---------------------------------------------------------------------------
# Content checks


def machine(capsys, argv):
    rc, out, _ = invoke(capsys, argv + ["--format", "machine"])
    assert rc == 0
    return json.loads(out)


def test_validate_three_slit_content(capsys):
    report = machine(capsys, ["validate", THREE_SLIT])
    section = report["sections"]["validate"]
    assert section["quantum"]["ok"] is True
    assert section["classical"]["ok"] is False
    assert section["classical"]["violations"][0]["events"] == ["{1}", "{2}"]
    assert section["null_cover"] is True
    assert section["null_sets"] == ["{}", "{1,3}", "{2,3}"]


def test_coevents_scheme_content(capsys):
    report = machine(capsys, ["coevents", THREE_SLIT, "--set", "scheme"])
    members = report["sections"]["coevents"]["members"]
    assert [m["coevent"] for m in members] == ["{1,2}*"]
    assert members[0]["preclusive"] is True
    assert members[0]["multiplicative"] is True
    assert members[0]["classical"] is False


def test_orders_fair_coin_content(capsys):
    report = machine(capsys, ["orders", FAIR_COIN])
    section = report["sections"]["orders"]
    assert section["meet_agree"] is True
    assert section["join_agree"] is False
    assert section["witnesses"]["join"][0] == ["{h}", "{t}"]


def test_tau_content(capsys):
    report = machine(capsys, ["tau", FAIR_COIN, "--event", "h"])
    assert report["sections"]["tau"]["members"] == ["{h}*"]
    report = machine(capsys, ["tau", FAIR_COIN, "--event", ""])
    assert report["sections"]["tau"]["members"] == []


def test_complete_content(capsys):
    report = machine(capsys, ["complete", FAIR_COIN, "--mode", "upper"])
    section = report["sections"]["complete"]
    assert section["size"] == 5
    assert section["boolean"] is False
    assert section["non_boolean_witness"] == "[{h}*]"
    report = machine(capsys, ["complete", FAIR_COIN, "--mode", "boolean"])
    assert report["sections"]["complete"]["boolean"] is True
    assert report["sections"]["complete"]["size"] == 8


def test_audit_single_pair(capsys):
    report = machine(
        capsys,
        ["audit", THREE_SLIT, "--context", "1,2,3", "--event", "1,2", "--event-b", "3"],
    )
    section = report["sections"]["audit"]
    assert section["or_discrepancy"] is True
    assert section["and_identity_holds"] is True
    assert section["coevent"] == "{1,2,3}*"


def test_audit_all_pairs(capsys):
    report = machine(capsys, ["audit", FAIR_COIN])
    section = report["sections"]["audit"]
    assert section["and_identity_ok"] is True
    assert {"a": "{h}", "b": "{t}", "coevent": "{h,t}*"} in section["or_discrepancies"]


def test_topos_single_query(capsys):
    report = machine(
        capsys,
        ["topos", THREE_SLIT, "--context", "1,2", "--event", "1,2,3"],
    )
    section = report["sections"]["topos"]
    assert section["vsupp_is_subobject"] is True
    assert section["classifier"]["functorial"] is True
    assert section["chi"]["sieve"] == "@{1,2}*: [{1}*, {2}*, {1,2}*]"


def test_topos_scheme_notes_the_antichain(capsys):
    report = machine(capsys, ["topos", THREE_SLIT, "--set", "scheme"])
    section = report["sections"]["topos"]
    assert section["antichain"] is True
    assert any("anti-chain" in note for note in section["notes"])


def test_include_empty_dual_flag_changes_the_space(capsys):
    report = machine(capsys, ["coevents", FAIR_COIN, "--set", "multiplicative"])
    assert report["sections"]["coevents"]["count"] == 3
    report = machine(
        capsys,
        ["coevents", FAIR_COIN, "--set", "multiplicative", "--include-empty-dual"],
    )
    assert report["sections"]["coevents"]["count"] == 4


# ---------------------------------------------------------------------------
# Determinism and round-tripping


@pytest.mark.parametrize("theory", [FAIR_COIN, THREE_SLIT])
@pytest.mark.parametrize("fmt", ["text", "machine"])
def test_report_is_deterministic(capsys, theory, fmt):
    rc1, out1, _ = invoke(capsys, ["report", theory, "--format", fmt])
    rc2, out2, _ = invoke(capsys, ["report", theory, "--format", fmt])
    assert rc1 == rc2 == 0
    assert out1 == out2


@pytest.mark.parametrize("theory", [FAIR_COIN, THREE_SLIT])
def test_machine_report_round_trips(capsys, theory):
    rc, out, _ = invoke(capsys, ["report", theory, "--format", "machine"])
    assert rc == 0
    parsed = json.loads(out)
    assert json.dumps(parsed, sort_keys=True, indent=2, ensure_ascii=False) + "\n" == out


def test_report_contains_all_sections(capsys):
    report = machine(capsys, ["report", THREE_SLIT])
    assert set(report["sections"]) == {
        "validate",
        "coevents-classical",
        "coevents-multiplicative",
        "coevents-scheme",
        "orders",
        "complete-upper",
        "complete-boolean",
        "audit",
        "topos",
    }
    # nothing at this size should have been skipped
    for name, section in report["sections"].items():
        assert "skipped" not in section, name
