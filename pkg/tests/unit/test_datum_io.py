"""
Unit tests for datum files: validation pointers, loading and saving.
"""

import json

import pytest

from wonderlat.core.spherical import DatumKind, subvariety_datum
from wonderlat.errors import DatumParseError, DatumValidationError
from wonderlat.utils import (
    DatumLoader,
    datum_from_dict,
    datum_to_dict,
    load_datum,
    save_datum,
    validate_datum,
)


def _raw(datums_dir, name):
    return json.loads((datums_dir / name).read_text(encoding="utf-8"))


def _pointers(raw):
    return [pointer for pointer, _ in validate_datum(raw)]


def test_sample_data_are_valid(datums_dir):
    for path in sorted(datums_dir.glob("*.json")):
        assert validate_datum(json.loads(path.read_text(encoding="utf-8"))) == [], path.name


def test_group_file_matches_builder(datums_dir, group_a3):
    datum = load_datum(datums_dir / "group_a3.json")
    assert datum.kind is DatumKind.GROUP
    assert datum.name == "PGL4"
    assert datum.spherical_roots == group_a3.spherical_roots
    assert datum.basis_ids == group_a3.basis_ids


def test_missing_field_pointer():
    assert _pointers({"dynkin": "A1", "spherical_roots": [[2]]}) == ["/colors"]


def test_extra_field_rejected():
    raw = {"dynkin": "A1", "spherical_roots": [[2]], "colors": [{"id": "D1", "moved_by": [1], "x": 0}]}
    assert _pointers(raw) == ["/colors/0/x"]


def test_non_integer_coordinates():
    raw = {"dynkin": "A1", "spherical_roots": [["2"]], "colors": [{"id": "D1", "moved_by": [1]}]}
    assert _pointers(raw) == ["/spherical_roots/0/0"]


def test_bad_dynkin():
    raw = {"dynkin": "Z3", "spherical_roots": [], "colors": []}
    assert _pointers(raw) == ["/dynkin"]


def test_group_mismatch(datums_dir):
    raw = _raw(datums_dir, "group_a3.json")
    raw["colors"][0]["moved_by"] = [1]
    raw["colors"].append({"id": "E", "moved_by": [4]})
    assert _pointers(raw) == ["/colors"]

    raw = _raw(datums_dir, "group_a3.json")
    raw["group"] = "B3"
    assert "/dynkin" in _pointers(raw)


def test_group_needs_group_field(datums_dir):
    raw = _raw(datums_dir, "group_a3.json")
    del raw["group"]
    assert _pointers(raw) == ["/group"]


def test_group_spelling_is_normalized(datums_dir):
    raw = _raw(datums_dir, "group_a3.json")
    raw["dynkin"] = "A3 × A3"
    raw["colors"][0]["moved_by"] = [4, 1]
    assert validate_datum(raw) == []


def test_datum_from_dict_raises_with_violations():
    with pytest.raises(DatumValidationError) as excinfo:
        datum_from_dict({"dynkin": "A1", "spherical_roots": [[1]], "colors": [{"id": "D1", "moved_by": [1]}]})
    assert excinfo.value.violations[0][0] == "/spherical_roots/0"


def test_load_rejects_non_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(DatumParseError):
        load_datum(path)


def test_save_then_load(tmp_path, complete_conics):
    path = save_datum(complete_conics, tmp_path / "out" / "conics.json")
    assert load_datum(path) == complete_conics
    text = (tmp_path / "out" / "conics.json").read_text(encoding="utf-8")
    assert text.endswith("\n")
    assert list(json.loads(text)) == sorted(json.loads(text))


def test_subvariety_not_serialized(group_a3):
    with pytest.raises(DatumValidationError):
        datum_to_dict(subvariety_datum(group_a3, {1}))


def test_loader_lists_and_loads(datums_dir):
    loader = DatumLoader(str(datums_dir))
    assert "group_a3.json" in loader.list_files()
    assert loader.load("group_a3.json").picard_rank == 3
    names = [name for name, _ in loader.load_all()]
    assert names == loader.list_files()


def test_loader_missing_dir(tmp_path):
    with pytest.raises(FileNotFoundError):
        DatumLoader(str(tmp_path / "nowhere"))


def test_loader_accepts_bare_name(datums_dir):
    loader = DatumLoader(str(datums_dir))
    assert loader.load("group_a3") == loader.load("group_a3.json")
    with pytest.raises(FileNotFoundError):
        loader.load("no_such_datum")


def test_load_all_logs_and_skips_broken_files(datums_dir, tmp_path, caplog):
    for path in datums_dir.glob("*.json"):
        (tmp_path / path.name).write_text(path.read_text(encoding="utf-8"), encoding="utf-8")
    (tmp_path / "broken.json").write_text("{not json", encoding="utf-8")
    loader = DatumLoader(str(tmp_path))

    with caplog.at_level("WARNING", logger="wonderlat.utils.data_loader"):
        loaded = loader.load_all()

    assert "broken.json" not in [name for name, _ in loaded]
    assert len(loaded) == len(loader.list_files()) - 1
    assert any("broken.json" in record.getMessage() for record in caplog.records)
