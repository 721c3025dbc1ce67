"""
Brute-force cross-checks.

Everything here is recomputed from the hand-entered Cartan tables under
``fixtures/cartan`` with plain numpy integer arithmetic. This module must not
import the lattice, reducibility or limit code it is used to check.
"""

import itertools
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from wonderlat.config import get_config
from wonderlat.errors import FixtureMissing, NotGroupKind

logger = logging.getLogger(__name__)


def fixture_path(type_name: str, fixtures_dir: Optional[Path] = None) -> Path:
    base = Path(fixtures_dir) if fixtures_dir else get_config().fixtures_dir
    return base / "cartan" / f"{type_name.strip().upper()}.txt"


def cartan_fixture(type_name: str, fixtures_dir: Optional[Path] = None) -> np.ndarray:
    """
    Hand-transcribed Cartan matrix of a simple type.

    Args:
        type_name: e.g. "A3", "F4"
        fixtures_dir: Override of the configured fixture directory

    Returns:
        Integer matrix with ``M[i][j] = alpha_{i+1}^vee(alpha_{j+1})``

    Raises:
        FixtureMissing: If there is no table for the type

    Example:
        >>> cartan_fixture("A1").tolist()
        [[2]]
    """
    path = fixture_path(type_name, fixtures_dir)
    if not path.exists():
        raise FixtureMissing(f"No Cartan fixture for {type_name!r} at {path}")
    return np.loadtxt(path, dtype=int, ndmin=2)


def available_fixtures(fixtures_dir: Optional[Path] = None) -> List[str]:
    base = Path(fixtures_dir) if fixtures_dir else get_config().fixtures_dir
    return sorted(p.stem for p in (base / "cartan").glob("*.txt"))


def boundary_matrix_oracle(datum, fixtures_dir: Optional[Path] = None) -> np.ndarray:
    """
    <X_i, [C_{D_j}]> = alpha_j^vee(alpha_i) straight from the fixture table.

    Args:
        datum: Group compactification datum over a simple group

    Returns:
        Transpose of the fixture Cartan matrix

    Raises:
        NotGroupKind: For other data or non-simple groups
    """
    if getattr(datum.kind, "value", None) != "group_compactification":
        raise NotGroupKind("The boundary oracle covers group compactifications only")
    if not datum.group_dynkin.is_simple:
        raise NotGroupKind(f"The boundary oracle needs a simple group, got {datum.group_dynkin}")
    return cartan_fixture(str(datum.group_dynkin), fixtures_dir).T


def pgl4_golden() -> Dict[str, Tuple[int, ...]]:
    """Intersection table of the PGL4 reducibility example."""
    return {
        "eta": (1, 1, 1),
        "eta1": (0, 1, 0),
        "eta2": (1, 0, 1),
        "X_eta": (1, 0, 1),
        "X_eta1": (-1, 2, -1),
        "X_eta2": (2, -2, 2),
        "witness": 2,
        "gap": 0,
    }


def movable_oracle(matrix: np.ndarray, eta: Sequence[int]) -> bool:
    eta = np.asarray(eta, dtype=int)
    return bool((eta >= 0).all() and (matrix @ eta >= 0).all())


def gap_oracle(matrix: np.ndarray, eta1: Sequence[int], eta2: Sequence[int]) -> int:
    """1 + |I1| + |I2| + sum of the negative pairings, evaluated directly."""
    p1 = matrix @ np.asarray(eta1, dtype=int)
    p2 = matrix @ np.asarray(eta2, dtype=int)
    n1, n2 = p1[p1 < 0], p2[p2 < 0]
    return int(1 + len(n1) + len(n2) + n1.sum() + n2.sum())


def certificate_oracle(
    matrix: np.ndarray, eta: Sequence[int], eta1: Sequence[int]
) -> Optional[Tuple[int, int]]:
    """
    Check one group-case decomposition.

    Returns:
        (witness, gap) when valid, else None
    """
    eta = np.asarray(eta, dtype=int)
    eta1 = np.asarray(eta1, dtype=int)
    eta2 = eta - eta1
    if not eta1.any() or not eta2.any() or (eta1 < 0).any() or (eta2 < 0).any():
        return None
    if not movable_oracle(matrix, eta):
        return None
    p1, p2 = matrix @ eta1, matrix @ eta2
    if ((p1 < 0) & (p2 < 0)).any():
        return None
    hits = np.flatnonzero(p2 <= -2)
    if not len(hits):
        return None
    gap = gap_oracle(matrix, eta1, eta2)
    if gap > 0:
        return None
    return int(hits[0]) + 1, gap


def exhaustive_certificate_oracle(
    matrix: np.ndarray, eta: Sequence[int]
) -> Optional[Tuple[Tuple[int, ...], int, int]]:
    """
    First valid eta1 in lexicographic order, naive.

    Returns:
        (eta1, witness, gap) or None
    """
    eta = tuple(int(c) for c in eta)
    for eta1 in itertools.product(*(range(c + 1) for c in eta)):
        found = certificate_oracle(matrix, eta, eta1)
        if found is not None:
            return eta1, found[0], found[1]
    return None


def movable_classes_oracle(matrix: np.ndarray, bound: int) -> Iterable[Tuple[int, ...]]:
    """Nonzero movable classes with coefficients in 0..bound, lexicographic."""
    rank = matrix.shape[1]
    for eta in itertools.product(range(bound + 1), repeat=rank):
        if any(eta) and movable_oracle(matrix, eta):
            yield eta


def limit_step_oracle(
    c: Dict[int, int], a: Dict[int, int], b: Dict[int, int], i0: int
) -> Tuple[Dict[int, int], Dict[int, int], Dict[int, int]]:
    """
    Coefficient bookkeeping of one limit step.

    Args:
        c: Color coefficients keyed by surviving label
        a, b: Coefficients on D_i^+ and D_i^- keyed by removed label
        i0: Label moving from c to b

    Returns:
        New (c, a, b)
    """
    c = dict(c)
    a, b = dict(a), dict(b)
    value = c.pop(i0)
    a[i0] = 0
    b[i0] = value
    return c, a, b


def chain_terminal_oracle(c: Dict[int, int], order: Sequence[int]) -> Tuple[Dict[int, int], Dict[int, int]]:
    """Terminal (a, b) after applying limit_step_oracle along order."""
    a: Dict[int, int] = {}
    b: Dict[int, int] = {}
    for i0 in order:
        c, a, b = limit_step_oracle(c, a, b, i0)
    return a, b


def color_weight_oracle(moved_by: Sequence[int], a_prime: bool, n: int) -> Tuple[int, ...]:
    """Weight table: 2 omega_a (a'), omega_a (one root), omega_a + omega_a' (two roots)."""
    weight = np.zeros(n, dtype=int)
    for alpha in moved_by:
        weight[alpha - 1] += 1
    if a_prime:
        weight *= 2
    return tuple(int(x) for x in weight)


def closed_orbit_picard_oracle(total_simple_roots: int, s_p_size: int) -> int:
    """|S| - |S^p| Schubert divisors on G/P^-."""
    return total_simple_roots - s_p_size
