from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest

from coevents import ParseError, ValidationError
from coevents.theoryfile import load, load_data, parse_complex, parse_rational

THEORIES = Path(__file__).resolve().parents[1] / "demos" / "theories"


def write_theory(tmp_path: Path, data) -> Path:
    path = tmp_path / "theory.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_load_fair_coin_fixture():
    theory = load(THEORIES / "fair_coin.json")
    assert theory.space.labels == ("h", "t")
    assert theory.measure.values[1] == Fraction(1, 2)
    assert theory.measure_kind == "atom_weights"
    assert not theory.options.include_empty_dual


def test_load_three_slit_fixture():
    theory = load(THEORIES / "three_slit.json")
    assert theory.measure.values[0b101] == 0  # {1,3} interferes away
    assert theory.measure.values[0b011] == 4


def test_load_decoherence_fixture():
    theory = load(THEORIES / "four_slit_decoherence.json")
    assert theory.measure_kind == "decoherence"
    assert theory.measure.values[theory.space.full_mask] == 1
    assert theory.measure.quantum_report is not None
    assert theory.measure.quantum_report.ok


def test_rational_parsing():
    assert parse_rational(3, "x") == 3
    assert parse_rational("-2/4", "x") == Fraction(-1, 2)
    with pytest.raises(ValidationError):
        parse_rational(0.5, "x")
    with pytest.raises(ValidationError):
        parse_rational("0.5", "x")
    with pytest.raises(ValidationError):
        parse_rational("1/2/3", "x")
    with pytest.raises(ValidationError):
        parse_rational(True, "x")


def test_complex_parsing():
    v = parse_complex({"re": "1/2", "im": -1}, "x")
    assert (v.re, v.im) == (Fraction(1, 2), Fraction(-1))
    assert parse_complex("3", "x").im == 0
    with pytest.raises(ValidationError):
        parse_complex({"re": 1, "imaginary": 2}, "x")


def test_duplicate_labels_rejected(tmp_path):
    path = write_theory(
        tmp_path, {"sample_space": ["a", "a"], "measure": {"atom_weights": {"a": 1}}}
    )
    with pytest.raises(ValidationError, match="distinct"):
        load(path)


def test_exactly_one_stanza_required(tmp_path):
    base = {"sample_space": ["a"]}
    with pytest.raises(ValidationError, match="exactly one"):
        load(write_theory(tmp_path, {**base, "measure": {}}))
    with pytest.raises(ValidationError, match="exactly one"):
        load(
            write_theory(
                tmp_path,
                {
                    **base,
                    "measure": {"atom_weights": {"a": 1}, "amplitudes": [1]},
                },
            )
        )


def test_event_table_forms(tmp_path):
    data = {
        "sample_space": ["h", "t"],
        "measure": {
            "event_table": {
                "": 0,
                "h": "1/2",
                "{t}": "1/2",
                "h,t": 1,
            }
        },
    }
    theory = load(write_theory(tmp_path, data))
    assert theory.measure.values[0b11] == 1
    assert theory.measure.values[0b10] == Fraction(1, 2)


def test_event_table_must_be_total(tmp_path):
    data = {
        "sample_space": ["h", "t"],
        "measure": {"event_table": {"": 0, "h": "1/2", "t": "1/2"}},
    }
    with pytest.raises(ValidationError, match="total"):
        load(write_theory(tmp_path, data))


def test_event_table_rejects_duplicates_and_unknown_labels(tmp_path):
    with pytest.raises(ValidationError, match="twice"):
        load(
            write_theory(
                tmp_path,
                {
                    "sample_space": ["h"],
                    "measure": {"event_table": {"h": 1, "{h}": 1, "": 0}},
                },
            )
        )
    with pytest.raises(ValidationError, match="bad event"):
        load(
            write_theory(
                tmp_path,
                {"sample_space": ["h"], "measure": {"event_table": {"x": 1, "": 0}}},
            )
        )


def test_amplitude_length_checked(tmp_path):
    with pytest.raises(ValidationError, match="one amplitude per history"):
        load(
            write_theory(
                tmp_path,
                {"sample_space": ["a", "b"], "measure": {"amplitudes": [1]}},
            )
        )


def test_non_hermitian_decoherence_rejected(tmp_path):
    data = {
        "sample_space": ["a", "b"],
        "measure": {
            "decoherence": [
                ["1/2", {"im": "1/2"}],
                [{"im": "1/2"}, "1/2"],
            ]
        },
    }
    with pytest.raises(ValidationError, match="Hermitian"):
        load(write_theory(tmp_path, data))


def test_unknown_fields_rejected(tmp_path):
    with pytest.raises(ValidationError, match="unknown top-level"):
        load(
            write_theory(
                tmp_path,
                {
                    "sample_space": ["a"],
                    "measure": {"atom_weights": {"a": 1}},
                    "extra": 1,
                },
            )
        )
    with pytest.raises(ValidationError, match="options"):
        load(
            write_theory(
                tmp_path,
                {
                    "sample_space": ["a"],
                    "measure": {"atom_weights": {"a": 1}},
                    "options": {"speed": 9},
                },
            )
        )


def test_bad_option_types(tmp_path):
    with pytest.raises(ValidationError, match="boolean"):
        load(
            write_theory(
                tmp_path,
                {
                    "sample_space": ["a"],
                    "measure": {"atom_weights": {"a": 1}},
                    "options": {"include-empty-dual": 1},
                },
            )
        )
    with pytest.raises(ValidationError, match="positive integer"):
        load(
            write_theory(
                tmp_path,
                {
                    "sample_space": ["a"],
                    "measure": {"atom_weights": {"a": 1}},
                    "options": {"brute-force-cap": 0},
                },
            )
        )


def test_parse_error_carries_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"sample_space": [1,,]}', encoding="utf-8")
    with pytest.raises(ParseError, match="line 1"):
        load(path)


def test_load_data_requires_object():
    with pytest.raises(ValidationError, match="object"):
        load_data([1, 2, 3])


def test_float_amplitudes_rejected(tmp_path):
    with pytest.raises(ValidationError, match="exact"):
        load(
            write_theory(
                tmp_path,
                {"sample_space": ["a"], "measure": {"amplitudes": [0.5]}},
            )
        )
