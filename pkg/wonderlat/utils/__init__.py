"""
Utility modules for wonderlat.
"""

from .data_loader import (
    DatumLoader,
    ResultWriter,
    datum_from_dict,
    datum_to_dict,
    load_datum,
    save_datum,
    validate_datum,
)
from .formatting import canonical_json, exact, render_table, render_tsv

__all__ = [
    "DatumLoader",
    "ResultWriter",
    "datum_from_dict",
    "datum_to_dict",
    "load_datum",
    "save_datum",
    "validate_datum",
    "canonical_json",
    "exact",
    "render_table",
    "render_tsv",
]
