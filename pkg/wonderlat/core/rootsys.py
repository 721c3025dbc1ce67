"""
Finite root systems with exact Cartan pairings.

Simple roots are numbered 1..n in Bourbaki order, factor by factor. The Cartan
matrix follows the convention ``cartan[i][j] = alpha_i^vee(alpha_j)`` (rows are
coroots). Roots are written in simple-root coordinates, weights in
fundamental-weight coordinates, coweights in simple-coroot coordinates.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

import numpy as np
import sympy

from wonderlat.errors import IndexOutOfRange, InvalidRank

logger = logging.getLogger(__name__)

SERIES = ("A", "B", "C", "D", "E", "F", "G")

_FACTOR_PATTERN = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


def _check_rank(series: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(series)
    if ok is None:
        raise InvalidRank(f"Unknown series {series!r}; expected one of {', '.join(SERIES)}")
    if not ok:
        raise InvalidRank(f"Rank {rank} is out of bounds for series {series}")


@dataclass(frozen=True)
class DynkinType:
    """Product of simple Dynkin types, e.g. ``A3`` or ``A3xA3``."""

    factors: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        if not self.factors:
            raise InvalidRank("A Dynkin type needs at least one factor")
        for series, rank in self.factors:
            _check_rank(series, rank)

    @classmethod
    def simple(cls, series: str, rank: int) -> "DynkinType":
        return cls(((series.upper(), int(rank)),))

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        """
        Parse a type string.

        Args:
            text: Factors joined by ``x``, ``*`` or ``×`` (e.g. "A3xA3", "G2*A1")

        Returns:
            DynkinType

        Example:
            >>> DynkinType.parse("A3xA3").rank
            6
        """
        factors = []
        for chunk in re.split(r"[x×*]", text.strip()):
            match = _FACTOR_PATTERN.match(chunk)
            if match is None:
                raise InvalidRank(f"Cannot parse Dynkin factor {chunk!r} in {text!r}")
            factors.append((match.group(1).upper(), int(match.group(2))))
        return cls(tuple(factors))

    @property
    def rank(self) -> int:
        return sum(rank for _, rank in self.factors)

    @property
    def is_simple(self) -> bool:
        return len(self.factors) == 1

    def doubled(self) -> "DynkinType":
        """The type of G x G."""
        return DynkinType(self.factors + self.factors)

    def __str__(self) -> str:
        return "x".join(f"{series}{rank}" for series, rank in self.factors)


def _factor_cartan(series: str, rank: int) -> np.ndarray:
    """Cartan matrix of one simple factor, Bourbaki numbering."""
    A = 2 * np.eye(rank, dtype=int)
    if series in ("A", "B", "C"):
        A[range(rank - 1), range(1, rank)] = -1
        A[range(1, rank), range(rank - 1)] = -1
        if series == "B":
            # alpha_n is short
            A[rank - 1, rank - 2] = -2
        elif series == "C":
            # alpha_n is long
            A[rank - 2, rank - 1] = -2
    elif series == "D":
        A[range(rank - 2), range(1, rank - 1)] = -1
        A[range(1, rank - 1), range(rank - 2)] = -1
        # alpha_{n-2} -- alpha_n
        A[rank - 3, rank - 1] = A[rank - 1, rank - 3] = -1
    elif series == "E":
        # 1 - 3 - 4 - 5 - ... with 2 attached to 4
        edges = [(0, 2), (1, 3)] + [(k, k + 1) for k in range(2, rank - 1)]
        for a, b in edges:
            A[a, b] = A[b, a] = -1
    elif series == "F":
        A[0, 1] = A[1, 0] = -1
        A[1, 2] = -1
        A[2, 1] = -2
        A[2, 3] = A[3, 2] = -1
    elif series == "G":
        # alpha_1 short, alpha_2 long
        A[0, 1] = -3
        A[1, 0] = -1
    return A


def _to_tuple_matrix(M) -> Tuple[Tuple, ...]:
    return tuple(tuple(row) for row in M)


@dataclass(frozen=True)
class RootSystem:
    """
    Root system data of a semisimple type.

    Attributes:
        dynkin: Type of the system
        cartan: ``cartan[i][j] = alpha_{i+1}^vee(alpha_{j+1})``
        adjacency: Dynkin diagram edges
        fundamental_weights: omega_i in simple-root coordinates (rational)
        fundamental_coweights: omega_i^vee in simple-coroot coordinates (rational)
    """

    dynkin: DynkinType
    cartan: Tuple[Tuple[int, ...], ...]
    adjacency: Tuple[Tuple[bool, ...], ...]
    fundamental_weights: Tuple[Tuple[Fraction, ...], ...]
    fundamental_coweights: Tuple[Tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def labels(self) -> range:
        return range(1, self.rank + 1)

    @property
    def simple_roots(self) -> Tuple[Tuple[int, ...], ...]:
        """alpha_i in simple-root coordinates."""
        return _to_tuple_matrix(np.eye(self.rank, dtype=int).tolist())

    @property
    def coroots(self) -> Tuple[Tuple[int, ...], ...]:
        """alpha_i^vee in simple-coroot coordinates."""
        return self.simple_roots

    def check_label(self, i: int) -> int:
        """Validate a 1-based simple-root label and return its array position."""
        if not isinstance(i, (int, np.integer)) or not 1 <= i <= self.rank:
            raise IndexOutOfRange(f"Simple root label {i!r} outside 1..{self.rank}")
        return int(i) - 1

    def pairing(self, coroot_index: int, root_index: int) -> int:
        """alpha_i^vee(alpha_j)."""
        return self.cartan[self.check_label(coroot_index)][self.check_label(root_index)]

    def pairing_with_weight(self, coroot_index: int, weight: Sequence) -> Fraction:
        """
        Pair a simple coroot with a weight given in simple-root coordinates.

        Args:
            coroot_index: Label i of alpha_i^vee
            weight: Coefficients on alpha_1..alpha_n

        Returns:
            alpha_i^vee(weight)
        """
        row = self.cartan[self.check_label(coroot_index)]
        self._check_length(weight)
        return sum((Fraction(c) * a for c, a in zip(weight, row)), Fraction(0))

    def coweight_pairing(self, coweight: Sequence, weight: Sequence) -> Fraction:
        """<coweight, weight> with coweight in coroot and weight in root coordinates."""
        self._check_length(coweight)
        self._check_length(weight)
        total = Fraction(0)
        for i, v in enumerate(coweight):
            if v:
                total += Fraction(v) * sum(
                    (Fraction(r) * a for r, a in zip(weight, self.cartan[i])), Fraction(0)
                )
        return total

    def to_weight_coords(self, weight: Sequence) -> Tuple[Fraction, ...]:
        """Convert simple-root coordinates to fundamental-weight coordinates."""
        return tuple(self.pairing_with_weight(i, weight) for i in self.labels)

    def neighbors(self, i: int) -> Tuple[int, ...]:
        row = self.adjacency[self.check_label(i)]
        return tuple(j + 1 for j, edge in enumerate(row) if edge)

    def degree(self, i: int) -> int:
        return len(self.neighbors(i))

    def is_nonextremal(self, i: int) -> bool:
        """A simple root joined to at least two others in the Dynkin diagram."""
        return self.degree(i) >= 2

    def factor_labels(self) -> List[range]:
        """Label ranges of the simple factors, in input order."""
        ranges, start = [], 1
        for _, rank in self.dynkin.factors:
            ranges.append(range(start, start + rank))
            start += rank
        return ranges

    def nonpositive_rows(self) -> Tuple[int, ...]:
        """Labels i with sum_j alpha_i^vee(alpha_j) <= 0."""
        return tuple(i + 1 for i, row in enumerate(self.cartan) if sum(row) <= 0)

    def _check_length(self, vector: Sequence) -> None:
        if len(vector) != self.rank:
            raise IndexOutOfRange(
                f"Vector of length {len(vector)} does not match rank {self.rank}"
            )


@lru_cache(maxsize=None)
def build_root_system(dynkin: DynkinType) -> RootSystem:
    """
    Construct the root system of a (semi)simple type.

    Args:
        dynkin: Dynkin type; factors keep their input order

    Returns:
        RootSystem with block-diagonal Cartan matrix

    Example:
        >>> build_root_system(DynkinType.simple("A", 3)).cartan[1]
        (-1, 2, -1)
    """
    blocks = [_factor_cartan(series, rank) for series, rank in dynkin.factors]
    n = dynkin.rank
    C = np.zeros((n, n), dtype=int)
    offset = 0
    for block in blocks:
        k = block.shape[0]
        C[offset:offset + k, offset:offset + k] = block
        offset += k

    adjacency = (C != 0) & ~np.eye(n, dtype=bool)

    inverse = sympy.Matrix(C.tolist()).inv()

    def _fraction(x) -> Fraction:
        x = sympy.Rational(x)
        return Fraction(int(x.p), int(x.q))

    # columns of C^-1 are the fundamental weights, rows the fundamental coweights
    weights = tuple(tuple(_fraction(inverse[k, i]) for k in range(n)) for i in range(n))
    coweights = tuple(tuple(_fraction(inverse[i, k]) for k in range(n)) for i in range(n))

    logger.debug("Built root system %s of rank %d", dynkin, n)
    return RootSystem(
        dynkin=dynkin,
        cartan=_to_tuple_matrix(C.tolist()),
        adjacency=_to_tuple_matrix(adjacency.tolist()),
        fundamental_weights=weights,
        fundamental_coweights=coweights,
    )


def pairing(rs: RootSystem, coroot_index: int, root_index: int) -> int:
    """alpha_i^vee(alpha_j) for 1-based labels."""
    return rs.pairing(coroot_index, root_index)


def is_nonextremal(rs: RootSystem, i: int) -> bool:
    """Dynkin degree of alpha_i is at least two."""
    return rs.is_nonextremal(i)


def simple_types(series: Sequence[str], max_rank: int, min_rank: int = 1) -> Iterator[DynkinType]:
    """
    Enumerate valid simple types.

    Args:
        series: Series letters, in the order to emit
        max_rank: Largest rank
        min_rank: Smallest rank

    Yields:
        DynkinType for every valid (series, rank) in range
    """
    for s in series:
        s = s.upper()
        if s not in SERIES:
            raise InvalidRank(f"Unknown series {s!r}; expected one of {', '.join(SERIES)}")
        for rank in range(max(1, min_rank), max_rank + 1):
            try:
                yield DynkinType.simple(s, rank)
            except InvalidRank:
                continue
