"""
Data loader utilities for wonderlat.
Handles datum files (JSON) and result files (certificates, chains, sweep tables).
"""

import dataclasses
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, StrictInt, ValidationError

from wonderlat.config import get_config
from wonderlat.core.rootsys import DynkinType, build_root_system
from wonderlat.core.spherical import (
    DatumKind,
    SphericalDatum,
    build_datum,
    check_datum,
    group_datum,
)
from wonderlat.errors import DatumParseError, DatumValidationError, InvalidRank
from wonderlat.utils.formatting import canonical_json

logger = logging.getLogger(__name__)

Violation = Tuple[str, str]


class ColorEntry(BaseModel):
    """One color of a datum file."""

    model_config = ConfigDict(extra="forbid")

    id: str = Field(min_length=1)
    moved_by: List[StrictInt]


class DatumFile(BaseModel):
    """
    Shape of a datum file.

    ``group`` is required for group compactifications; ``dynkin`` is then the
    type of G x G.
    """

    model_config = ConfigDict(extra="forbid")

    name: str = ""
    kind: Literal["group_compactification", "generic_symmetric"] = "generic_symmetric"
    group: Optional[str] = None
    dynkin: str
    s_p: List[StrictInt] = Field(default_factory=list)
    spherical_roots: List[List[StrictInt]]
    colors: List[ColorEntry]


def _pointer(loc) -> str:
    return "/" + "/".join(str(part) for part in loc)


def _group_violations(model: DatumFile, dynkin: DynkinType) -> List[Violation]:
    if model.group is None:
        return [("/group", "group compactification data need the type of G")]
    try:
        group = DynkinType.parse(model.group)
    except InvalidRank as e:
        return [("/group", str(e))]
    expected = datum_to_dict(group_datum(build_root_system(group)))
    actual = {
        "dynkin": str(dynkin),
        "s_p": sorted(model.s_p),
        "spherical_roots": model.spherical_roots,
        "colors": [{"id": c.id, "moved_by": sorted(c.moved_by)} for c in model.colors],
    }
    return [
        (f"/{key}", f"does not match the group compactification of {group}")
        for key, value in actual.items()
        if value != expected[key]
    ]


def validate_datum(raw: Any) -> List[Violation]:
    """
    Check a parsed datum file.

    Args:
        raw: Decoded JSON document

    Returns:
        List of (JSON pointer, message); empty when the datum is valid

    Example:
        >>> validate_datum({"dynkin": "A1", "spherical_roots": [[2]], "colors": [{"id": "D1", "moved_by": [1]}]})
        []
    """
    try:
        model = DatumFile.model_validate(raw)
    except ValidationError as e:
        return [(_pointer(err["loc"]), err["msg"]) for err in e.errors()]

    try:
        dynkin = DynkinType.parse(model.dynkin)
    except InvalidRank as e:
        return [("/dynkin", str(e))]

    rs = build_root_system(dynkin)
    violations = check_datum(
        rs,
        model.s_p,
        model.spherical_roots,
        [(c.id, c.moved_by) for c in model.colors],
    )
    if not violations and model.kind == "group_compactification":
        violations.extend(_group_violations(model, dynkin))
    return violations


def datum_from_dict(raw: Any) -> SphericalDatum:
    """
    Build a validated datum from a decoded JSON document.

    Raises:
        DatumValidationError: With every violation found
    """
    violations = validate_datum(raw)
    if violations:
        raise DatumValidationError(violations)

    model = DatumFile.model_validate(raw)
    if model.kind == "group_compactification":
        datum = group_datum(build_root_system(DynkinType.parse(model.group)))
        return dataclasses.replace(datum, name=model.name) if model.name else datum

    return build_datum(
        build_root_system(DynkinType.parse(model.dynkin)),
        s_p=model.s_p,
        spherical_roots=model.spherical_roots,
        colors=[(c.id, c.moved_by) for c in model.colors],
        kind=DatumKind.GENERIC,
        name=model.name,
    )


def datum_to_dict(datum: SphericalDatum) -> Dict[str, Any]:
    """File representation of a top-level datum."""
    if datum.kind is DatumKind.SUBVARIETY:
        raise DatumValidationError(
            [("/kind", "subvariety data are derived from their parent and not serialized")]
        )
    data: Dict[str, Any] = {
        "name": datum.name,
        "kind": datum.kind.value,
        "dynkin": str(datum.root_system.dynkin),
        "s_p": sorted(datum.s_p),
        "spherical_roots": [list(g) for g in datum.spherical_roots],
        "colors": [{"id": c.id, "moved_by": list(c.moving_roots)} for c in datum.colors],
    }
    if datum.kind is DatumKind.GROUP:
        data["group"] = str(datum.group_dynkin)
    return data


def load_datum(path) -> SphericalDatum:
    """
    Load a datum file.

    Args:
        path: Path to the JSON file

    Returns:
        Validated SphericalDatum

    Raises:
        DatumParseError: If the file is not JSON
        DatumValidationError: If the datum breaks an invariant
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DatumParseError(f"{path}: {e}") from e
    datum = datum_from_dict(raw)
    logger.debug("Loaded datum %s from %s", datum.name, path)
    return datum


def save_datum(datum: SphericalDatum, path) -> str:
    """
    Write a datum as canonical JSON.

    Returns:
        Path to saved file
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(datum_to_dict(datum)), encoding="utf-8")
    return str(path)


class DatumLoader:
    """Loader for the datum directory."""

    def __init__(self, data_dir: Optional[str] = None):
        """
        Initialize data loader.

        Args:
            data_dir: Path to data directory. Defaults to the configured data_dir
        """
        self.data_dir = Path(data_dir) if data_dir else get_config().data_dir
        if not self.data_dir.exists():
            raise FileNotFoundError(f"Data directory not found: {self.data_dir}")

    def list_files(self) -> List[str]:
        """
        List datum files.

        Returns:
            Sorted filenames (e.g., ["group_a3.json", ...])
        """
        return sorted(f.name for f in self.data_dir.glob("*.json"))

    def load(self, filename: str) -> SphericalDatum:
        """
        Load a single datum.

        Args:
            filename: File in the data directory; ".json" may be omitted

        Example:
            >>> loader = DatumLoader()
            >>> loader.load("group_a3").picard_rank
            3
        """
        filepath = self.data_dir / filename
        if not filepath.suffix:
            filepath = filepath.with_suffix(".json")
        if not filepath.exists():
            raise FileNotFoundError(f"Datum not found: {filepath}")
        return load_datum(filepath)

    def load_all(self) -> List[Tuple[str, SphericalDatum]]:
        """
        Load every datum in the directory, skipping invalid files.

        Returns:
            List of (filename, datum)
        """
        results = []
        for filename in self.list_files():
            try:
                results.append((filename, self.load(filename)))
            except (DatumParseError, DatumValidationError) as e:
                logger.warning("Skipping %s: %s", filename, e)
        return results


class ResultWriter:
    """Writer for certificates, degeneration chains and sweep tables."""

    def __init__(self, results_dir: Optional[str] = None):
        """
        Initialize result writer.

        Args:
            results_dir: Path to results directory. Defaults to the configured results_dir
        """
        self.results_dir = Path(results_dir) if results_dir else get_config().results_dir
        self.certificates_dir = self.results_dir / "certificates"
        self.chains_dir = self.results_dir / "chains"
        self.sweeps_dir = self.results_dir / "sweeps"

        for directory in (self.certificates_dir, self.chains_dir, self.sweeps_dir):
            directory.mkdir(parents=True, exist_ok=True)

    def _write_json(self, filename: Path, payload: Any) -> str:
        if hasattr(payload, "to_dict"):
            payload = payload.to_dict()
        filename.write_text(canonical_json(payload), encoding="utf-8")
        logger.debug("Wrote %s", filename)
        return str(filename)

    def save_certificate(self, tag: str, certificate: Any) -> str:
        """
        Save a certificate (or ``{"certificate": null}``).

        Args:
            tag: File stem, e.g. "A3_1-1-1"
            certificate: Certificate, its dict form, or None

        Returns:
            Path to saved file
        """
        payload = certificate if certificate is not None else {"certificate": None}
        return self._write_json(self.certificates_dir / f"{tag}_certificate.json", payload)

    def save_chain(self, tag: str, chain: Any) -> str:
        """Save a degeneration chain."""
        return self._write_json(self.chains_dir / f"{tag}_chain.json", chain)

    def save_sweep_summary(self, tag: str, rows: List[Dict]) -> str:
        """
        Save sweep summary rows to TSV.

        Args:
            tag: Profile or run name
            rows: One dict per type

        Returns:
            Path to saved TSV file
        """
        filename = self.sweeps_dir / f"{tag}_summary.tsv"
        pd.DataFrame(rows).to_csv(filename, sep="\t", index=False, lineterminator="\n")
        return str(filename)

    def save_failures(self, tag: str, rows: List[Dict]) -> str:
        """Save the per-class failures of a sweep to TSV."""
        filename = self.sweeps_dir / f"{tag}_failures.tsv"
        columns = ["type", "eta", "in_scope", "reason"]
        pd.DataFrame(rows, columns=columns).to_csv(
            filename, sep="\t", index=False, lineterminator="\n"
        )
        return str(filename)
