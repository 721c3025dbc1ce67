"""
Reducibility certificates for spaces of stable maps.

A certificate is a decomposition eta = eta1 + eta2 into nonzero effective classes
such that some boundary divisor X_i has <X_i, eta2> <= -2 and the locus of glued
curves is at least as large as M°(X, eta). The constructive search follows the
nonextremal-root argument on group compactifications; the exhaustive search
walks the whole box 0 <= eta1 <= eta.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from wonderlat.core.lattice import (
    CurveClass,
    boundary_pairing_matrix,
    boundary_pairings,
    dual_curve,
    is_effective_curve,
    is_movable,
    require_movable,
)
from wonderlat.core.rootsys import build_root_system
from wonderlat.core.spherical import DatumKind, SphericalDatum
from wonderlat.errors import DatumMismatch, NegativeAnticanonicalCoeff, NotEffective
from wonderlat.utils import exact

logger = logging.getLogger(__name__)

WITNESS_THRESHOLD = -2


class NonemptinessMode(str, Enum):
    """How M°(X, eta) != {} was established."""

    GROUP_DIRECT = "group_direct"
    DOUBLED_CLASS = "doubled_class"
    ASSUMED = "assumed"
    UNKNOWN = "unknown"


class SearchStage(str, Enum):
    CONSTRUCTIVE = "constructive"
    EXHAUSTIVE = "exhaustive"


@dataclass
class Certificate:
    """
    A checked decomposition eta = eta1 + eta2.

    Attributes:
        eta, eta1, eta2: Curve classes on the same datum
        witness: Smallest boundary label with <X_i, eta2> <= -2, if any
        gap: Upper bound for dim M° minus the dimension of the glued locus
        mode: How nonemptiness of M°(X, eta) was discharged
        valid: All hypotheses hold
        violations: Human-readable reasons when invalid
        i1, i2: Boundary labels where eta1 (resp. eta2) pairs negatively
        stage: Search stage that produced the certificate
    """

    eta: CurveClass
    eta1: CurveClass
    eta2: CurveClass
    witness: Optional[int]
    gap: Optional[Fraction]
    mode: NonemptinessMode
    valid: bool
    violations: List[str] = field(default_factory=list)
    i1: Tuple[int, ...] = ()
    i2: Tuple[int, ...] = ()
    stage: Optional[SearchStage] = None

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready view; rationals become ints or "p/q" strings."""
        datum = self.eta.datum
        return {
            "datum": datum.name,
            "basis": list(datum.basis_ids),
            "eta": list(self.eta.coefficients),
            "eta1": list(self.eta1.coefficients),
            "eta2": list(self.eta2.coefficients),
            "witness": self.witness,
            "gap": exact(self.gap) if self.gap is not None else None,
            "mode": self.mode.value,
            "valid": self.valid,
            "violations": list(self.violations),
            "i1": list(self.i1),
            "i2": list(self.i2),
            "stage": self.stage.value if self.stage else None,
        }


@dataclass(frozen=True)
class DimensionReport:
    """
    Expected dimensions of spaces of genus-0 stable maps.

    Unavailable quantities are ``None``.
    """

    dim_x: Optional[int]
    boundary_term: Fraction
    color_term: Optional[Fraction]
    pairing_minus_kx: Optional[Fraction]
    n: int
    expected_dim: Optional[Fraction]
    m_circ_dim: Optional[Fraction]


def m_circ_nonempty(eta: CurveClass, assume: bool = False) -> NonemptinessMode:
    """
    Decide whether M°_{0,0}(X, eta) is known to be nonempty.

    Group compactifications (and their boundary strata, whose closed-orbit lift
    needs no doubling) give ``GROUP_DIRECT``. On other data only doubled classes
    are covered: eta = 2 eta' with eta' movable gives ``DOUBLED_CLASS``.

    Args:
        eta: Movable class
        assume: Caller vouches for nonemptiness

    Returns:
        NonemptinessMode

    Raises:
        NotMovable: If eta is not movable
    """
    require_movable(eta)
    if assume:
        return NonemptinessMode.ASSUMED
    if eta.is_zero:
        return NonemptinessMode.UNKNOWN
    if eta.datum.is_group_chain:
        return NonemptinessMode.GROUP_DIRECT
    if all(c % 2 == 0 for c in eta.coefficients):
        half = CurveClass(eta.datum, tuple(c // 2 for c in eta.coefficients))
        if is_movable(half):
            return NonemptinessMode.DOUBLED_CLASS
    return NonemptinessMode.UNKNOWN


def _negative_labels(datum: SphericalDatum, pairings: Sequence[Fraction]) -> Tuple[int, ...]:
    return tuple(label for label, p in zip(datum.boundary_labels, pairings) if p < 0)


def _gap(p1: Sequence[Fraction], p2: Sequence[Fraction]) -> Fraction:
    i1 = [p for p in p1 if p < 0]
    i2 = [p for p in p2 if p < 0]
    return 1 + len(i1) + len(i2) + sum(i1, Fraction(0)) + sum(i2, Fraction(0))


def reducibility_gap(eta1: CurveClass, eta2: CurveClass) -> Fraction:
    """
    1 + |I1| + |I2| + sum_{I1} <X_i, eta1> + sum_{I2} <X_i, eta2>.

    A value <= 0 means the glued locus is a separate component.

    Raises:
        DatumMismatch: If the classes live on different data
        NotEffective: If either class is zero or not effective

    Example:
        >>> reducibility_gap(eta1, eta2)   # A3, eta1=(0,1,0), eta2=(1,0,1)
        Fraction(0, 1)
    """
    if not (eta1.datum is eta2.datum or eta1.datum == eta2.datum):
        raise DatumMismatch("eta1 and eta2 live on different data")
    for name, c in (("eta1", eta1), ("eta2", eta2)):
        if c.is_zero or not is_effective_curve(c):
            raise NotEffective(f"{name}={list(c.coefficients)} must be nonzero and effective")
    return _gap(boundary_pairings(eta1), boundary_pairings(eta2))


def check_certificate(
    eta: CurveClass,
    eta1: CurveClass,
    eta2: CurveClass,
    assume_nonempty: bool = False,
) -> Certificate:
    """
    Check a decomposition against every hypothesis of the reducibility criterion.

    Never raises on bad input; failures are listed in ``violations``.

    ``valid`` also requires a nonpositive gap. With half-integral pairings
    (type a' colors) the gap test is sharper than the criterion needs, so
    ``valid=False`` may mean the numerical criterion is not met rather than
    that a hypothesis is violated; ``violations`` tells the two apart.

    Args:
        eta: Class to decompose
        eta1: First summand
        eta2: Second summand, carrying the witness
        assume_nonempty: Accept M°(X, eta) != {} without proof

    Returns:
        Certificate with ``valid`` set
    """
    violations: List[str] = []
    data = (eta.datum, eta1.datum, eta2.datum)
    if not all(d is data[0] or d == data[0] for d in data):
        return Certificate(
            eta=eta,
            eta1=eta1,
            eta2=eta2,
            witness=None,
            gap=None,
            mode=NonemptinessMode.UNKNOWN,
            valid=False,
            violations=["eta, eta1, eta2 live on different data"],
        )

    datum = eta.datum
    if tuple(a + b for a, b in zip(eta1.coefficients, eta2.coefficients)) != eta.coefficients:
        violations.append("eta != eta1 + eta2")
    for name, c in (("eta1", eta1), ("eta2", eta2)):
        if c.is_zero:
            violations.append(f"{name} is zero")
        elif not is_effective_curve(c):
            violations.append(f"{name} is not effective")

    p = boundary_pairings(eta)
    p1 = boundary_pairings(eta1)
    p2 = boundary_pairings(eta2)
    if any(x < 0 for x in p):
        violations.append("eta is negative on a boundary divisor")

    i1 = _negative_labels(datum, p1)
    i2 = _negative_labels(datum, p2)
    if set(i1) & set(i2):
        violations.append(f"I1 and I2 intersect in {sorted(set(i1) & set(i2))}")

    witness = next(
        (label for label, x in zip(datum.boundary_labels, p2) if x <= WITNESS_THRESHOLD), None
    )
    if witness is None:
        violations.append(f"no boundary divisor with <X_i, eta2> <= {WITNESS_THRESHOLD}")

    gap = _gap(p1, p2)
    if gap > 0:
        violations.append(f"dimension gap {gap} is positive")

    if is_movable(eta):
        mode = m_circ_nonempty(eta, assume=assume_nonempty)
    else:
        violations.append("eta is not movable")
        mode = NonemptinessMode.UNKNOWN
    if mode is NonemptinessMode.UNKNOWN:
        violations.append("nonemptiness of M°(X, eta) is unknown")

    return Certificate(
        eta=eta,
        eta1=eta1,
        eta2=eta2,
        witness=witness,
        gap=gap,
        mode=mode,
        valid=not violations,
        violations=violations,
        i1=i1,
        i2=i2,
    )


def _constructive_candidates(eta: CurveClass) -> List[int]:
    """Nonextremal labels i0 with c_{i0} > 0, one per simple factor of rank >= 3."""
    datum = eta.datum
    rs_G = build_root_system(datum.group_dynkin)
    picks = []
    for labels in rs_G.factor_labels():
        if len(labels) < 3:
            continue
        coeff = {i: eta.coefficient(f"D{i}") for i in labels}
        direct = [i for i in labels if rs_G.is_nonextremal(i) and coeff[i] > 0]
        if direct:
            picks.append(direct[0])
            continue
        for i in labels:
            if coeff[i] > 0:
                hub = [j for j in rs_G.neighbors(i) if rs_G.is_nonextremal(j)]
                if hub:
                    picks.append(hub[0])
                    break
    return picks


def _constructive_search(eta: CurveClass, assume_nonempty: bool) -> Optional[Certificate]:
    for i0 in _constructive_candidates(eta):
        eta1 = eta.coefficient(f"D{i0}") * dual_curve(eta.datum, f"D{i0}")
        if eta1.is_zero:
            continue
        certificate = check_certificate(eta, eta1, eta - eta1, assume_nonempty)
        logger.debug("Constructive candidate i0=%d: valid=%s", i0, certificate.valid)
        if certificate.valid:
            certificate.stage = SearchStage.CONSTRUCTIVE
            return certificate
    return None


def _exhaustive_search(eta: CurveClass, assume_nonempty: bool) -> Optional[Certificate]:
    datum = eta.datum
    matrix = boundary_pairing_matrix(datum)
    p = [sum((m * c for m, c in zip(row, eta.coefficients)), Fraction(0)) for row in matrix]
    top = tuple(eta.coefficients)

    for coefficients in itertools.product(*(range(c + 1) for c in top)):
        if not any(coefficients) or coefficients == top:
            continue
        p1 = [sum((m * c for m, c in zip(row, coefficients)), Fraction(0)) for row in matrix]
        p2 = [a - b for a, b in zip(p, p1)]
        if not any(x <= WITNESS_THRESHOLD for x in p2):
            continue
        if any(a < 0 and b < 0 for a, b in zip(p1, p2)):
            continue
        if _gap(p1, p2) > 0:
            continue
        eta1 = CurveClass(datum, coefficients)
        certificate = check_certificate(eta, eta1, eta - eta1, assume_nonempty)
        if certificate.valid:
            certificate.stage = SearchStage.EXHAUSTIVE
            return certificate
    return None


def find_certificate(
    eta: CurveClass,
    assume_nonempty: bool = False,
    exhaustive_only: bool = False,
) -> Optional[Certificate]:
    """
    Search for a reducibility certificate of a movable class.

    The constructive stage runs on group compactifications: for each simple
    factor of rank >= 3 it takes the first nonextremal root alpha_{i0} with
    c_{i0} > 0 (or the nonextremal neighbour of a positive extremal root) and
    tries eta1 = c_{i0} [C_{D_{i0}}]. The exhaustive stage scans
    0 <= eta1 <= eta lexicographically.

    Args:
        eta: Movable class
        assume_nonempty: Passed on to check_certificate
        exhaustive_only: Skip the constructive stage

    Returns:
        First valid Certificate, or None

    Raises:
        NotMovable: If eta is not movable

    Example:
        >>> cert = find_certificate(CurveClass(group_a3, (1, 1, 1)))
        >>> cert.witness, cert.eta1.coefficients
        (2, (0, 1, 0))
    """
    require_movable(eta)
    if eta.is_zero:
        return None

    if not exhaustive_only and eta.datum.kind is DatumKind.GROUP:
        certificate = _constructive_search(eta, assume_nonempty)
        if certificate is not None:
            return certificate
        if any(len(r) >= 3 for r in build_root_system(eta.datum.group_dynkin).factor_labels()):
            logger.warning(
                "Constructive search failed for %s on %s; falling back to exhaustive search",
                list(eta.coefficients),
                eta.datum.name,
            )

    certificate = _exhaustive_search(eta, assume_nonempty)
    logger.debug(
        "Exhaustive search for %s on %s: %s",
        list(eta.coefficients),
        eta.datum.name,
        "found" if certificate else "none",
    )
    return certificate


def _color_term(
    eta: CurveClass, anticanonical_color_coeffs: Optional[Mapping[str, int]]
) -> Optional[Fraction]:
    coeffs = dict(anticanonical_color_coeffs or {})
    datum = eta.datum
    for divisor_id, value in coeffs.items():
        datum.basis_index(divisor_id)
        if value < 0:
            raise NegativeAnticanonicalCoeff(f"a_{divisor_id} = {value} is negative")

    total = Fraction(0)
    for divisor_id, c in zip(datum.basis_ids, eta.coefficients):
        if not c:
            continue
        if divisor_id not in coeffs:
            return None
        total += coeffs[divisor_id] * c
    return total


def expected_dimension(
    eta: CurveClass,
    n: int = 0,
    anticanonical_color_coeffs: Optional[Mapping[str, int]] = None,
    dim_x: Optional[int] = None,
) -> DimensionReport:
    """
    Expected dimension dim X + <-K_X, eta> + n - 3 of M_{0,n}(X, eta).

    <-K_X, eta> = sum_i <X_i, eta> + sum_D a_D c_D; the color part is available
    when a_D is supplied for every color with c_D != 0. dim X is never inferred.

    Args:
        eta: Curve class
        n: Number of marked points
        anticanonical_color_coeffs: a_D keyed by basis divisor id
        dim_x: Dimension of X, if known

    Returns:
        DimensionReport

    Raises:
        NegativeAnticanonicalCoeff: If some a_D < 0
    """
    boundary_term = sum(boundary_pairings(eta), Fraction(0))
    color_term = _color_term(eta, anticanonical_color_coeffs)
    pairing = boundary_term + color_term if color_term is not None else None
    expected = None
    if pairing is not None and dim_x is not None:
        expected = dim_x + pairing + n - 3
    return DimensionReport(
        dim_x=dim_x,
        boundary_term=boundary_term,
        color_term=color_term,
        pairing_minus_kx=pairing,
        n=n,
        expected_dim=expected,
        m_circ_dim=expected,
    )


def reducible_locus_dimension(
    certificate: Certificate,
    anticanonical_color_coeffs: Optional[Mapping[str, int]] = None,
    dim_x: Optional[int] = None,
) -> Optional[Fraction]:
    """
    Lower bound for the dimension of the locus of glued curves C1 u C2.

    -<K_X, eta> - sum_j sum_{i in I_j} <X_i, eta_j> + dim X - |I1| - |I2| - 4;
    The bound is for unpointed curves; ``m_circ_dim - bound`` at n = 0 equals
    the certificate's gap.

    Returns:
        The bound, or None when <-K_X, eta> or dim X is unavailable
    """
    report = expected_dimension(certificate.eta, 0, anticanonical_color_coeffs, dim_x)
    if report.pairing_minus_kx is None or dim_x is None:
        return None
    p1 = dict(zip(certificate.eta.datum.boundary_labels, boundary_pairings(certificate.eta1)))
    p2 = dict(zip(certificate.eta.datum.boundary_labels, boundary_pairings(certificate.eta2)))
    negative = sum((p1[i] for i in certificate.i1), Fraction(0)) + sum(
        (p2[i] for i in certificate.i2), Fraction(0)
    )
    return (
        report.pairing_minus_kx
        - negative
        + dim_x
        - len(certificate.i1)
        - len(certificate.i2)
        - 4
    )
