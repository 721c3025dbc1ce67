"""
Divisor and curve lattices of a spherical datum.

Divisor classes are rational vectors on the Pic basis (colors, then Schubert
extras); curve classes are integer vectors on the dual basis [C_D]. The
intersection pairing is the dot product in these dual bases.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from wonderlat.core.spherical import (
    Color,
    ColorRole,
    ColorType,
    SphericalDatum,
    subvariety_datum,
)
from wonderlat.errors import (
    DatumMismatch,
    IndexOutOfRange,
    NotGroupKind,
    NonIntegralClass,
    NotMovable,
    RhoInconsistent,
    RootMovesNoColor,
)

logger = logging.getLogger(__name__)


def _same_datum(a: SphericalDatum, b: SphericalDatum) -> bool:
    return a is b or a == b


def _check_same(a: SphericalDatum, b: SphericalDatum) -> None:
    if not _same_datum(a, b):
        raise DatumMismatch(f"Classes live on different data: {a.name!r} vs {b.name!r}")


def _check_length(datum: SphericalDatum, values: Sequence, what: str) -> None:
    if len(values) != datum.picard_rank:
        raise IndexOutOfRange(
            f"{what} has {len(values)} coefficients, Pic basis of {datum.name or 'datum'} "
            f"has {datum.picard_rank} ({', '.join(datum.basis_ids)})"
        )


@dataclass(frozen=True)
class DivisorClass:
    """Rational combination of Pic-basis divisors."""

    datum: SphericalDatum
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        _check_length(self.datum, self.coefficients, "Divisor class")
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    def coefficient(self, divisor_id: str) -> Fraction:
        return self.coefficients[self.datum.basis_index(divisor_id)]

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(zip(self.datum.basis_ids, self.coefficients))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _check_same(self.datum, other.datum)
        return DivisorClass(self.datum, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.datum, tuple(-c for c in self.coefficients))

    def __mul__(self, k) -> "DivisorClass":
        return DivisorClass(self.datum, tuple(Fraction(k) * c for c in self.coefficients))

    __rmul__ = __mul__


@dataclass(frozen=True)
class CurveClass:
    """Integer combination of the dual curves [C_D]."""

    datum: SphericalDatum
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        _check_length(self.datum, self.coefficients, "Curve class")
        for c in self.coefficients:
            if c != int(c):
                raise NonIntegralClass(f"Curve class coefficient {c!r} is not an integer")
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    @classmethod
    def zero(cls, datum: SphericalDatum) -> "CurveClass":
        return cls(datum, (0,) * datum.picard_rank)

    def coefficient(self, divisor_id: str) -> int:
        return self.coefficients[self.datum.basis_index(divisor_id)]

    @property
    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def as_dict(self) -> Dict[str, int]:
        return dict(zip(self.datum.basis_ids, self.coefficients))

    def __add__(self, other: "CurveClass") -> "CurveClass":
        _check_same(self.datum, other.datum)
        return CurveClass(self.datum, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "CurveClass") -> "CurveClass":
        _check_same(self.datum, other.datum)
        return CurveClass(self.datum, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> "CurveClass":
        return CurveClass(self.datum, tuple(-c for c in self.coefficients))

    def __mul__(self, k: int) -> "CurveClass":
        return CurveClass(self.datum, tuple(int(k) * c for c in self.coefficients))

    __rmul__ = __mul__


@dataclass(frozen=True)
class BoundaryDivisor:
    """Boundary divisor X_i with its expansion in the Pic basis."""

    datum: SphericalDatum
    index: int
    expansion: DivisorClass


@dataclass(frozen=True)
class ClosedOrbitLift:
    """
    Effective Schubert class on the closed orbit Y with
    ``closed_orbit_pushforward(schubert) = multiplier * eta``.
    """

    schubert: Dict[int, int]
    multiplier: int


def _resolve(datum: SphericalDatum, divisor: Union[str, Color]) -> Color:
    if isinstance(divisor, Color):
        return datum.basis_divisor(divisor.id)
    return datum.basis_divisor(divisor)


def rho_value(datum: SphericalDatum, divisor: Union[str, Color], gamma: Sequence[int]) -> Fraction:
    """
    Value <rho(D), gamma> of a Pic-basis divisor on a spherical root.

    Args:
        datum: Datum holding the divisor
        divisor: Basis divisor or its id
        gamma: Spherical root in simple-root coordinates

    Returns:
        1/2 alpha^vee(gamma) for type (a'), alpha^vee(gamma) for type (b)

    Raises:
        RhoInconsistent: If the two moving roots of a color disagree
    """
    color = _resolve(datum, divisor)
    rs = datum.root_system
    if color.kind is ColorType.A_PRIME:
        (alpha,) = color.moved_by
        return rs.pairing_with_weight(alpha, gamma) / 2

    values = {alpha: rs.pairing_with_weight(alpha, gamma) for alpha in color.moving_roots}
    if len(set(values.values())) > 1:
        raise RhoInconsistent(
            f"Color {color.id} gets rho-values {dict(sorted(values.items()))} on {list(gamma)}"
        )
    return next(iter(values.values()))


def boundary_divisor(datum: SphericalDatum, i: int) -> BoundaryDivisor:
    """
    Expansion X_i = sum_D <rho(D), gamma_i> D over the Pic basis.

    Example:
        >>> d = group_datum(build_root_system(DynkinType.simple("A", 3)))
        >>> boundary_divisor(d, 2).expansion.coefficients
        (Fraction(-1, 1), Fraction(2, 1), Fraction(-1, 1))
    """
    gamma = datum.spherical_root(i)
    expansion = tuple(rho_value(datum, c, gamma) for c in datum.pic_basis)
    return BoundaryDivisor(datum=datum, index=i, expansion=DivisorClass(datum, expansion))


def boundary_divisors(datum: SphericalDatum) -> Tuple[BoundaryDivisor, ...]:
    return tuple(boundary_divisor(datum, i) for i in datum.boundary_labels)


@lru_cache(maxsize=512)
def boundary_pairing_matrix(datum: SphericalDatum) -> Tuple[Tuple[Fraction, ...], ...]:
    """Rows <X_i, [C_D]> for every boundary label i, columns in Pic-basis order."""
    return tuple(x.expansion.coefficients for x in boundary_divisors(datum))


def basis_divisor_class(datum: SphericalDatum, divisor_id: str) -> DivisorClass:
    k = datum.basis_index(divisor_id)
    return DivisorClass(datum, tuple(1 if j == k else 0 for j in range(datum.picard_rank)))


def dual_curve(datum: SphericalDatum, divisor_id: str) -> CurveClass:
    """The curve class [C_D] dual to a basis divisor."""
    k = datum.basis_index(divisor_id)
    return CurveClass(datum, tuple(1 if j == k else 0 for j in range(datum.picard_rank)))


def pair(d: Union[DivisorClass, BoundaryDivisor], c: CurveClass) -> Fraction:
    """
    Intersection number <d, c>.

    Raises:
        DatumMismatch: If d and c live on different data
    """
    if isinstance(d, BoundaryDivisor):
        d = d.expansion
    _check_same(d.datum, c.datum)
    return sum((a * b for a, b in zip(d.coefficients, c.coefficients)), Fraction(0))


def boundary_pairings(c: CurveClass) -> Tuple[Fraction, ...]:
    """<X_i, c> for every boundary label, in label order."""
    return tuple(
        sum((m * x for m, x in zip(row, c.coefficients)), Fraction(0))
        for row in boundary_pairing_matrix(c.datum)
    )


def is_nef(d: DivisorClass) -> bool:
    return all(c >= 0 for c in d.coefficients)


def is_effective_curve(c: CurveClass) -> bool:
    """Nonnegative in the dual basis; a sufficient criterion."""
    return all(x >= 0 for x in c.coefficients)


def is_movable(c: CurveClass) -> bool:
    """Nonnegative on every Pic-basis divisor and every boundary divisor."""
    if not is_effective_curve(c):
        return False
    return all(p >= 0 for p in boundary_pairings(c))


def require_movable(c: CurveClass) -> None:
    if not is_movable(c):
        raise NotMovable(
            f"Curve class {list(c.coefficients)} is not movable on {c.datum.name or 'datum'} "
            f"(boundary pairings {[str(p) for p in boundary_pairings(c)]})"
        )


def closed_orbit_pushforward(datum: SphericalDatum, schubert: Mapping[int, int]) -> CurveClass:
    """
    Push a Schubert curve class of the closed orbit Y into the datum's variety.

    Args:
        datum: Datum of X or of some X_I
        schubert: Coefficients on [C_alpha], keyed by simple-root label

    Returns:
        CurveClass with [C_alpha] -> [C_D] (type b) or 2 [C_D] (type a')

    Raises:
        RootMovesNoColor: If some alpha with nonzero coefficient lies in S^p
    """
    coefficients = [0] * datum.picard_rank
    for alpha, value in sorted(schubert.items()):
        moved = datum.divisors_moved_by(alpha)
        if not moved:
            if value:
                raise RootMovesNoColor(f"alpha_{alpha} lies in S^p and moves no divisor")
            continue
        (color,) = moved
        factor = 2 if color.kind is ColorType.A_PRIME else 1
        coefficients[datum.basis_index(color.id)] += factor * int(value)
    return CurveClass(datum, tuple(coefficients))


def lift_to_closed_orbit(c: CurveClass) -> ClosedOrbitLift:
    """
    Effective Schubert class pushing forward to m * eta, m in {1, 2}.

    On group compactifications (and their boundary strata) m = 1 with each
    coefficient placed on the first moving root. Otherwise m = 2 exactly when
    some type (a') divisor carries an odd coefficient.

    Raises:
        NotMovable: If c is not movable
    """
    require_movable(c)
    datum = c.datum
    schubert = {alpha: 0 for alpha in datum.root_system.labels if alpha not in datum.s_p}

    if datum.is_group_chain:
        for color, value in zip(datum.pic_basis, c.coefficients):
            schubert[color.moving_roots[0]] += value
        return ClosedOrbitLift(schubert=schubert, multiplier=1)

    odd_a_prime = any(
        value % 2
        for color, value in zip(datum.pic_basis, c.coefficients)
        if color.kind is ColorType.A_PRIME
    )
    m = 2 if odd_a_prime else 1
    for color, value in zip(datum.pic_basis, c.coefficients):
        if color.kind is ColorType.A_PRIME:
            schubert[color.moving_roots[0]] += m * value // 2
        else:
            schubert[color.moving_roots[0]] += m * value
    return ClosedOrbitLift(schubert=schubert, multiplier=m)


def closed_orbit_pullback(datum: SphericalDatum, divisor: Union[str, Color]) -> Dict[int, int]:
    """
    Restriction of a Pic-basis divisor to Y in the Schubert divisor basis.

    Returns:
        {alpha: 2} for type (a'), {alpha: 1} for one root, {alpha: 1, alpha': 1} for two
    """
    color = _resolve(datum, divisor)
    if color.kind is ColorType.A_PRIME:
        return {color.moving_roots[0]: 2}
    return {alpha: 1 for alpha in color.moving_roots}


def pullback_matrix(source: SphericalDatum, target: SphericalDatum) -> Tuple[Tuple[int, ...], ...]:
    """
    Matrix of the pullback Pic(source) -> Pic(target) along X_J in X_I, J containing I.

    Row k holds the pullback of the k-th source basis divisor. A color D_j with
    j newly removed splits as D_j^+ + D_j^-; every other divisor keeps its id.

    Raises:
        NotGroupKind: Outside group-compactification chains
        DatumMismatch: If target is not a substratum of source
    """
    if not (source.is_group_chain and target.is_group_chain):
        raise NotGroupKind("Color pullback is defined on group-compactification chains only")
    if not _same_datum(source.top, target.top) or not source.removed <= target.removed:
        raise DatumMismatch(f"{target.name!r} is not a boundary stratum of {source.name!r}")

    newly_removed = target.removed - source.removed
    rows = []
    for color in source.pic_basis:
        row = [0] * target.picard_rank
        if color.role is ColorRole.COLOR and color.label in newly_removed:
            row[target.basis_index(f"{color.id}+")] = 1
            row[target.basis_index(f"{color.id}-")] = 1
        else:
            row[target.basis_index(color.id)] = 1
        rows.append(tuple(row))
    return tuple(rows)


def color_pullback(
    datum: SphericalDatum,
    I: Iterable[int],
    i0: int,
    divisor: Union[str, DivisorClass],
) -> DivisorClass:
    """
    Pull a divisor of X_I back to X_{I u {i0}}.

    Args:
        datum: Any datum of the group chain (its top is used)
        I: Boundary labels of the source stratum
        i0: Label not in I
        divisor: Basis divisor id of X_I or a DivisorClass on X_I

    Returns:
        DivisorClass on X_{I u {i0}}

    Example:
        >>> d = group_datum(build_root_system(DynkinType.simple("A", 3)))
        >>> color_pullback(d, (), 2, "D2").as_dict()["D2+"]
        Fraction(1, 1)
    """
    if not datum.is_group_chain:
        raise NotGroupKind(f"{datum.describe_kind()} datum has no color pullback")
    I = frozenset(I)
    if i0 in I or i0 not in datum.top.boundary_labels:
        raise IndexOutOfRange(f"i0={i0} must be a boundary label outside {sorted(I)}")
    source = subvariety_datum(datum.top, I)
    target = subvariety_datum(source, {i0})

    if isinstance(divisor, str):
        divisor = basis_divisor_class(source, divisor)
    _check_same(divisor.datum, source)

    matrix = pullback_matrix(source, target)
    coefficients = [Fraction(0)] * target.picard_rank
    for value, row in zip(divisor.coefficients, matrix):
        if value:
            for k, entry in enumerate(row):
                coefficients[k] += value * entry
    return DivisorClass(target, tuple(coefficients))


def inclusion_pushforward(source: SphericalDatum, c: CurveClass) -> CurveClass:
    """
    Push a curve class of a boundary stratum X_J forward into X_I.

    Transpose of ``pullback_matrix``: <iota^* D, c> = <D, iota_* c>.
    """
    matrix = pullback_matrix(source, c.datum)
    return CurveClass(
        source,
        tuple(sum(entry * x for entry, x in zip(row, c.coefficients)) for row in matrix),
    )


def enumerate_movable(
    datum: SphericalDatum, bound: int, include_zero: bool = False
) -> Iterator[CurveClass]:
    """
    Movable classes with every coefficient in 0..bound, lexicographic order.

    Args:
        datum: Datum to enumerate on
        bound: Largest coefficient
        include_zero: Also yield the zero class

    Yields:
        CurveClass
    """
    matrix = boundary_pairing_matrix(datum)
    for coefficients in itertools.product(range(bound + 1), repeat=datum.picard_rank):
        if not include_zero and not any(coefficients):
            continue
        if all(sum(m * c for m, c in zip(row, coefficients)) >= 0 for row in matrix):
            yield CurveClass(datum, coefficients)
