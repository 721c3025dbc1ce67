"""
Class-level limit map on group compactifications.

For a fundamental coweight lambda = omega_{i0}^vee of the first factor, the
limit x -> lim_{t->0} lambda(t) x sends curves on X_I into X_{I u {i0}}. On
classes:

    c_i  kept for i not in I u {i0}
    a_{i0} = 0,  b_{i0} = c_{i0}
    a_i, b_i kept for i in I

where a_i, b_i are the coefficients on [C_{D_i^+}], [C_{D_i^-}]. Every step is
checked against the projection formula before it is returned.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from wonderlat.core.lattice import (
    CurveClass,
    basis_divisor_class,
    color_pullback,
    inclusion_pushforward,
    pair,
    require_movable,
)
from wonderlat.core.spherical import ColorRole, DatumKind, SphericalDatum, subvariety_datum
from wonderlat.errors import (
    ConsistencyFailure,
    DatumMismatch,
    IndexOutOfRange,
    NotDominant,
    NotGroupKind,
)
from wonderlat.utils import exact

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LimitStep:
    """One application of the limit map, X_I -> X_{I u {i0}}."""

    source: SphericalDatum
    i0: int
    target: SphericalDatum
    input_class: CurveClass
    output_class: CurveClass

    def to_dict(self) -> Dict[str, Any]:
        return {
            "i0": self.i0,
            "source_removed": sorted(self.source.removed),
            "target_removed": sorted(self.target.removed),
            "input": self.input_class.as_dict(),
            "output": self.output_class.as_dict(),
        }


@dataclass(frozen=True)
class DegenerationChain:
    """Limit steps from a group compactification down to its closed orbit."""

    datum: SphericalDatum
    eta: CurveClass
    order: Tuple[int, ...]
    steps: Tuple[LimitStep, ...] = field(default_factory=tuple)

    @property
    def terminal(self) -> CurveClass:
        return self.steps[-1].output_class if self.steps else self.eta

    def to_dict(self) -> Dict[str, Any]:
        return {
            "datum": self.datum.name,
            "eta": self.eta.as_dict(),
            "order": list(self.order),
            "steps": [step.to_dict() for step in self.steps],
            "terminal": self.terminal.as_dict(),
            "terminal_basis": list(self.terminal.datum.basis_ids),
        }


def _require_group(datum: SphericalDatum) -> None:
    if not datum.is_group_chain:
        raise NotGroupKind(
            f"Limit maps are defined on group compactifications only, got {datum.describe_kind()}"
        )


def adapted_pairings(datum: SphericalDatum, i0: int) -> Tuple[int, ...]:
    """
    Pairings <omega_{i0}^vee, alpha_i + beta_i> over all boundary labels.

    The coweight lives on the first factor, so the result is the Kronecker
    vector at i0.

    Args:
        datum: Group compactification datum (or a stratum of one)
        i0: Label 1..rank of G

    Returns:
        Integer vector indexed by boundary labels of the top datum

    Example:
        >>> adapted_pairings(group_a3, 2)
        (0, 1, 0)
    """
    _require_group(datum)
    top = datum.top
    r = top.group_rank
    if not isinstance(i0, int) or not 1 <= i0 <= r:
        raise IndexOutOfRange(f"i0={i0!r} outside 1..{r}")

    rs = top.root_system
    coweight = rs.fundamental_coweights[i0 - 1]
    values = tuple(rs.coweight_pairing(coweight, gamma) for gamma in top.spherical_roots)
    expected = tuple(1 if label == i0 else 0 for label in top.boundary_labels)
    if values != expected:
        raise ConsistencyFailure(
            f"omega_{i0}^vee pairs to {[str(v) for v in values]} with the spherical roots"
        )
    return tuple(int(v) for v in values)


def limit_stratum(datum: SphericalDatum, coweight: Sequence) -> Tuple[FrozenSet[int], SphericalDatum]:
    """
    Boundary stratum X_I containing the limits lim lambda(t) x of generic points.

    Args:
        datum: Group compactification datum
        coweight: lambda in simple-coroot coordinates of G (first factor)

    Returns:
        (I, datum of X_I) with I = {i : <lambda, alpha_i + beta_i> > 0}

    Raises:
        NotDominant: If <lambda, alpha_i> < 0 for some i
    """
    _require_group(datum)
    top = datum.top
    r = top.group_rank
    if len(coweight) != r:
        raise IndexOutOfRange(f"Coweight has {len(coweight)} coordinates, G has rank {r}")

    rs = top.root_system
    padded = tuple(Fraction(c) for c in coweight) + (Fraction(0),) * r
    values = [rs.coweight_pairing(padded, gamma) for gamma in top.spherical_roots]
    negative = [label for label, v in zip(top.boundary_labels, values) if v < 0]
    if negative:
        raise NotDominant(f"Coweight {list(coweight)} is negative on alpha_i for i in {negative}")

    I = frozenset(label for label, v in zip(top.boundary_labels, values) if v > 0)
    return I, subvariety_datum(top, I)


def _limit_coefficients(source: SphericalDatum, target: SphericalDatum, i0: int, eta: CurveClass) -> List[int]:
    coefficients = []
    for divisor in target.pic_basis:
        if divisor.role is ColorRole.COLOR:
            coefficients.append(eta.coefficient(divisor.id))
        elif divisor.label == i0:
            coefficients.append(0 if divisor.role is ColorRole.PLUS else eta.coefficient(f"D{i0}"))
        else:
            coefficients.append(eta.coefficient(divisor.id))
    return coefficients


def _verify_step(step: LimitStep) -> None:
    source, target, i0 = step.source, step.target, step.i0
    eta, bar = step.input_class, step.output_class

    if bar.coefficient(f"D{i0}+") != 0:
        raise ConsistencyFailure(f"a_{i0} = {bar.coefficient(f'D{i0}+')} after limit step")
    if bar.coefficient(f"D{i0}-") != eta.coefficient(f"D{i0}"):
        raise ConsistencyFailure(f"b_{i0} does not carry c_{i0}")

    for divisor in source.pic_basis:
        pulled = color_pullback(source, source.removed, i0, divisor.id)
        lhs = pair(pulled, bar)
        rhs = pair(basis_divisor_class(source, divisor.id), eta)
        if lhs != rhs:
            raise ConsistencyFailure(
                f"Projection formula fails on {divisor.id}: {exact(lhs)} != {exact(rhs)}"
            )

    if inclusion_pushforward(source, bar) != eta:
        raise ConsistencyFailure("Pushforward of the limit class does not recover the input class")


def limit_pushforward(source: SphericalDatum, i0: int, eta: CurveClass) -> LimitStep:
    """
    Push a movable class on X_I into X_{I u {i0}} along the limit map.

    Args:
        source: Datum of X_I in a group chain
        i0: Boundary label not in I
        eta: Movable class on X_I

    Returns:
        Verified LimitStep

    Raises:
        NotGroupKind: Outside group compactifications
        IndexOutOfRange: If i0 is not a boundary label of X_I
        NotMovable: If eta is not movable
        ConsistencyFailure: If a step invariant breaks

    Example:
        >>> step = limit_pushforward(group_a3, 2, CurveClass(group_a3, (1, 1, 1)))
        >>> step.output_class.as_dict()
        {'D1': 1, 'D3': 1, 'D2+': 0, 'D2-': 1}
    """
    _require_group(source)
    if not (eta.datum is source or eta.datum == source):
        raise DatumMismatch(f"Class lives on {eta.datum.name!r}, expected {source.name!r}")
    if i0 not in source.boundary_labels:
        raise IndexOutOfRange(f"i0={i0!r} is not a boundary label of {source.name!r}")
    require_movable(eta)

    target = subvariety_datum(source, {i0})
    bar = CurveClass(target, tuple(_limit_coefficients(source, target, i0, eta)))
    step = LimitStep(source=source, i0=i0, target=target, input_class=eta, output_class=bar)
    _verify_step(step)
    logger.debug("Limit step i0=%d on %s: %s -> %s", i0, source.name, eta.coefficients, bar.coefficients)
    return step


def degeneration_chain(
    datum: SphericalDatum,
    eta: CurveClass,
    order: Optional[Sequence[int]] = None,
) -> DegenerationChain:
    """
    Compose limit steps down to the closed orbit.

    Args:
        datum: Group compactification datum (or a stratum X_I of one)
        eta: Movable class on datum
        order: Permutation of the remaining boundary labels; defaults to
            descending labels (r, r-1, ..., 1)

    Returns:
        DegenerationChain whose terminal class carries c_i on [C_{D_i^-}]
    """
    _require_group(datum)
    labels = tuple(datum.boundary_labels)
    order = tuple(sorted(labels, reverse=True)) if order is None else tuple(int(i) for i in order)
    if sorted(order) != sorted(labels):
        raise IndexOutOfRange(f"Order {list(order)} is not a permutation of {list(labels)}")

    steps = []
    current, current_class = datum, eta
    for i0 in order:
        step = limit_pushforward(current, i0, current_class)
        steps.append(step)
        current, current_class = step.target, step.output_class

    chain = DegenerationChain(datum=datum, eta=eta, order=order, steps=tuple(steps))
    terminal = chain.terminal
    if terminal.datum.spherical_roots:
        raise ConsistencyFailure("Degeneration chain does not end on the closed orbit")
    for color in datum.colors:
        if terminal.coefficient(f"{color.id}-") != eta.coefficient(color.id):
            raise ConsistencyFailure(f"Terminal b-coefficient of {color.id} differs from c")
    if datum.kind is DatumKind.GROUP and terminal.datum.picard_rank != 2 * datum.group_rank:
        raise ConsistencyFailure("Closed orbit Pic rank differs from 2 rk G")
    return chain
