"""
Output helpers: exact-number rendering, canonical JSON and tables.
"""

import json
from fractions import Fraction
from typing import Any, Union

import pandas as pd


def exact(value: Union[int, Fraction, None]) -> Union[int, str, None]:
    """
    Render an exact number for JSON/TSV.

    Returns:
        int when integral, "p/q" otherwise

    Example:
        >>> exact(Fraction(4, 2)), exact(Fraction(1, 2))
        (2, '1/2')
    """
    if value is None:
        return None
    value = Fraction(value)
    if value.denominator == 1:
        return int(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def canonical_json(data: Any) -> str:
    """Sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_table(data: pd.DataFrame) -> str:
    """Human-readable table for standard output."""
    if data.empty:
        return "(empty)\n"
    return data.to_string(index=False) + "\n"


def render_tsv(data: pd.DataFrame) -> str:
    return data.to_csv(sep="\t", index=False, lineterminator="\n")


