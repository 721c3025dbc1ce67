"""
Shared fixtures for the wonderlat test suite.
"""

from pathlib import Path

import pytest

from wonderlat.core.rootsys import DynkinType, build_root_system
from wonderlat.core.spherical import build_datum, group_datum, subvariety_datum
from wonderlat.utils import load_datum

DATUMS_DIR = Path(__file__).resolve().parent.parent / "data" / "datums"


def group(type_name: str):
    """Group compactification datum of a type string such as "A3"."""
    return group_datum(build_root_system(DynkinType.parse(type_name)))


@pytest.fixture
def datums_dir() -> Path:
    return DATUMS_DIR


@pytest.fixture
def group_a2():
    return group("A2")


@pytest.fixture
def group_a3():
    return group("A3")


@pytest.fixture
def group_d4():
    return group("D4")


@pytest.fixture
def stratum_a3(group_a3):
    """X_{2} of the PGL4 compactification, basis (D1, D3, D2+, D2-)."""
    return subvariety_datum(group_a3, {2})


@pytest.fixture
def conics():
    """PGL2/PO2 = P^2, one color of type (a')."""
    return load_datum(DATUMS_DIR / "conics.json")


@pytest.fixture
def complete_conics():
    """PGL3/PO3, two colors of type (a')."""
    return load_datum(DATUMS_DIR / "complete_conics.json")


@pytest.fixture
def exceptional_a2():
    """PGL3/GL2: one spherical root alpha_1 + alpha_2, two colors."""
    return load_datum(DATUMS_DIR / "exceptional_a2.json")


@pytest.fixture
def with_levi():
    """A1 x A1 with S^p = {2}; alpha_2 moves no color."""
    return build_datum(
        build_root_system(DynkinType.parse("A1xA1")),
        s_p=[2],
        spherical_roots=[[2, 0]],
        colors=[("D1", [1])],
        name="levi-test",
    )
