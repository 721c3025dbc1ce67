"""
Spherical data of wonderful symmetric varieties.

A ``SphericalDatum`` carries the simple roots of the acting group, the set S^p,
the spherical roots (simple-root coordinates) and the Pic basis: the colors,
followed on closed G-stable subvarieties X_I by pulled-back Schubert divisors.

Boundary divisors keep the label of their spherical root in the top-level datum,
so X_I and X_J data can be compared label by label.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from wonderlat.core.rootsys import DynkinType, RootSystem, build_root_system
from wonderlat.errors import (
    DatumValidationError,
    IndexOutOfRange,
    NotGroupKind,
    TypeAColorUnsupported,
)

logger = logging.getLogger(__name__)

Violation = Tuple[str, str]


class ColorType(str, Enum):
    """How a simple root acts on the colors it moves."""

    P = "p"
    A = "a"
    A_PRIME = "a_prime"
    B = "b"


class ColorRole(str, Enum):
    """Where a Pic-basis divisor comes from."""

    COLOR = "color"
    PLUS = "plus"          # D_i^+ on X_I, moved by alpha_i
    MINUS = "minus"        # D_i^- on X_I, moved by beta_i
    SCHUBERT = "schubert"  # pulled back Schubert divisor on generic X_I


class DatumKind(str, Enum):
    GROUP = "group_compactification"
    GENERIC = "generic_symmetric"
    SUBVARIETY = "subvariety"


@dataclass(frozen=True)
class Color:
    """
    A B-stable prime divisor of the Pic basis.

    Attributes:
        id: Name ("D2", "D2+", "P5", ...)
        moved_by: Simple roots moving the divisor (one or two)
        kind: Type of its moving roots, (a') or (b)
        weight: B^- weight of the restricted line bundle, fundamental-weight coordinates
        role: Color of the variety or Schubert divisor of X_I
        label: Boundary label i for group colors and D_i^+/-, the root for P-divisors
    """

    id: str
    moved_by: FrozenSet[int]
    kind: ColorType
    weight: Tuple[int, ...]
    role: ColorRole = ColorRole.COLOR
    label: Optional[int] = None

    @property
    def moving_roots(self) -> Tuple[int, ...]:
        return tuple(sorted(self.moved_by))


@dataclass(frozen=True)
class SphericalDatum:
    """
    Combinatorial datum of a wonderful symmetric variety or of one of its
    closed G-stable subvarieties.

    ``colors`` and ``schubert_extras`` together form the Pic basis, in that order.
    """

    root_system: RootSystem
    s_p: FrozenSet[int]
    spherical_roots: Tuple[Tuple[int, ...], ...]
    boundary_labels: Tuple[int, ...]
    colors: Tuple[Color, ...]
    kind: DatumKind
    schubert_extras: Tuple[Color, ...] = ()
    levi: FrozenSet[int] = frozenset()
    removed: FrozenSet[int] = frozenset()
    group_dynkin: Optional[DynkinType] = None
    parent: Optional["SphericalDatum"] = field(default=None, repr=False)
    name: str = ""

    @property
    def pic_basis(self) -> Tuple[Color, ...]:
        return self.colors + self.schubert_extras

    @property
    def basis_ids(self) -> Tuple[str, ...]:
        return tuple(c.id for c in self.pic_basis)

    @cached_property
    def _basis_positions(self) -> Dict[str, int]:
        return {c.id: k for k, c in enumerate(self.pic_basis)}

    def basis_index(self, divisor_id: str) -> int:
        """Position of a Pic-basis divisor."""
        try:
            return self._basis_positions[divisor_id]
        except KeyError:
            raise IndexOutOfRange(
                f"{divisor_id!r} is not in the Pic basis {list(self.basis_ids)}"
            ) from None

    def basis_divisor(self, divisor_id: str) -> Color:
        return self.pic_basis[self.basis_index(divisor_id)]

    @property
    def picard_rank(self) -> int:
        return len(self.colors) + len(self.schubert_extras)

    @property
    def a_gx(self) -> FrozenSet[int]:
        """Type-(a) colors; always empty since those are rejected."""
        return frozenset()

    @property
    def top(self) -> "SphericalDatum":
        return self.parent if self.parent is not None else self

    @property
    def is_group_chain(self) -> bool:
        return self.top.kind is DatumKind.GROUP

    @property
    def group_rank(self) -> int:
        if not self.is_group_chain:
            raise NotGroupKind(f"{self.describe_kind()} datum has no group factor")
        return self.top.group_dynkin.rank

    @property
    def is_closed_orbit(self) -> bool:
        return not self.spherical_roots

    def spherical_root(self, label: int) -> Tuple[int, ...]:
        """Spherical root of boundary divisor X_label."""
        try:
            return self.spherical_roots[self.boundary_labels.index(label)]
        except ValueError:
            raise IndexOutOfRange(
                f"Boundary label {label!r} not in {list(self.boundary_labels)}"
            ) from None

    def divisors_moved_by(self, alpha: int) -> Tuple[Color, ...]:
        self.root_system.check_label(alpha)
        return tuple(c for c in self.pic_basis if alpha in c.moved_by)

    @cached_property
    def color_types(self) -> Dict[int, ColorType]:
        return classify_color_types(self)

    def describe_kind(self) -> str:
        if self.kind is DatumKind.SUBVARIETY:
            removed = ",".join(str(i) for i in sorted(self.removed))
            return f"subvariety(X_{{{removed}}} of {self.top.name or self.top.kind.value})"
        return self.kind.value


def _unit(n: int, label: int, scale: int = 1) -> Tuple[int, ...]:
    return tuple(scale if k == label - 1 else 0 for k in range(n))


def _color_kind(moved_by: FrozenSet[int], spherical_roots: Sequence[Tuple[int, ...]], n: int) -> ColorType:
    if len(moved_by) == 1:
        (alpha,) = moved_by
        if _unit(n, alpha, 2) in spherical_roots:
            return ColorType.A_PRIME
    return ColorType.B


def _color_weight(moved_by: FrozenSet[int], kind: ColorType, n: int) -> Tuple[int, ...]:
    # 2 omega_a (a') | omega_a (b) | omega_a + omega_a' (two roots)
    weight = [0] * n
    for alpha in moved_by:
        weight[alpha - 1] += 2 if kind is ColorType.A_PRIME else 1
    return tuple(weight)


def make_color(
    rs: RootSystem,
    divisor_id: str,
    moved_by: Iterable[int],
    spherical_roots: Sequence[Tuple[int, ...]],
    role: ColorRole = ColorRole.COLOR,
    label: Optional[int] = None,
) -> Color:
    moved = frozenset(int(a) for a in moved_by)
    kind = _color_kind(moved, spherical_roots, rs.rank)
    return Color(
        id=divisor_id,
        moved_by=moved,
        kind=kind,
        weight=_color_weight(moved, kind, rs.rank),
        role=role,
        label=label,
    )


def check_datum(
    rs: RootSystem,
    s_p: Sequence[int],
    spherical_roots: Sequence[Sequence[int]],
    colors: Sequence[Tuple[str, Sequence[int]]],
) -> List[Violation]:
    """
    Check the structural invariants of a top-level datum.

    Args:
        rs: Root system of the acting group
        s_p: Labels of S^p
        spherical_roots: Integer vectors in simple-root coordinates
        colors: (id, moved_by) pairs

    Returns:
        List of (JSON pointer, message) violations; empty when valid
    """
    violations: List[Violation] = []
    n = rs.rank

    for k, alpha in enumerate(s_p):
        if not 1 <= alpha <= n:
            violations.append((f"/s_p/{k}", f"simple root {alpha} outside 1..{n}"))

    for k, gamma in enumerate(spherical_roots):
        path = f"/spherical_roots/{k}"
        if len(gamma) != n:
            violations.append((path, f"expected {n} coordinates, got {len(gamma)}"))
            continue
        if not any(gamma):
            violations.append((path, "spherical root is zero"))
        for alpha in rs.labels:
            if tuple(gamma) == _unit(n, alpha):
                violations.append(
                    (path, f"alpha_{alpha} is a spherical root; type (a) colors are not supported")
                )
    roots = [tuple(g) for g in spherical_roots if len(g) == n]
    if len(set(roots)) != len(roots):
        violations.append(("/spherical_roots", "spherical roots are not distinct"))

    seen_ids: Dict[str, int] = {}
    movers: Dict[int, List[int]] = {}
    for k, (divisor_id, moved_by) in enumerate(colors):
        path = f"/colors/{k}"
        if divisor_id in seen_ids:
            violations.append((f"{path}/id", f"duplicate color id {divisor_id!r}"))
        seen_ids[divisor_id] = k
        moved = list(moved_by)
        if len(set(moved)) != len(moved):
            violations.append((f"{path}/moved_by", "repeated simple root"))
        if not 1 <= len(set(moved)) <= 2:
            violations.append((f"{path}/moved_by", "a color is moved by one or two simple roots"))
            continue
        if any(not 1 <= a <= n for a in moved):
            violations.append((f"{path}/moved_by", f"simple root outside 1..{n}"))
            continue
        for a in set(moved):
            movers.setdefault(a, []).append(k)
        if len(set(moved)) == 2:
            a, b = sorted(set(moved))
            if rs.pairing(a, b) != 0 or rs.pairing(b, a) != 0:
                violations.append(
                    (f"{path}/moved_by", f"moving roots alpha_{a}, alpha_{b} are not orthogonal")
                )
                continue
            for gamma in roots:
                if rs.pairing_with_weight(a, gamma) != rs.pairing_with_weight(b, gamma):
                    violations.append(
                        (path, f"rho-values of alpha_{a} and alpha_{b} disagree on {list(gamma)}")
                    )
                    break

    s_p_set = set(s_p)
    for alpha in rs.labels:
        moving = movers.get(alpha, [])
        if alpha in s_p_set and moving:
            violations.append(
                (f"/colors/{moving[0]}/moved_by", f"alpha_{alpha} is in S^p but moves a color")
            )
        elif alpha not in s_p_set and len(moving) != 1:
            where = f"/colors/{moving[1]}/moved_by" if moving else "/colors"
            violations.append(
                (where, f"alpha_{alpha} moves {len(moving)} colors; exactly one is required")
            )

    return violations


def build_datum(
    rs: RootSystem,
    s_p: Iterable[int],
    spherical_roots: Sequence[Sequence[int]],
    colors: Sequence[Tuple[str, Sequence[int]]],
    kind: DatumKind = DatumKind.GENERIC,
    group_dynkin: Optional[DynkinType] = None,
    name: str = "",
) -> SphericalDatum:
    """
    Validate and assemble a top-level datum.

    Raises:
        DatumValidationError: If any invariant fails (all violations are reported)
    """
    s_p = sorted(int(a) for a in s_p)
    violations = check_datum(rs, s_p, spherical_roots, colors)
    if violations:
        raise DatumValidationError(violations)

    roots = tuple(tuple(int(c) for c in g) for g in spherical_roots)
    color_objs = []
    for divisor_id, moved_by in colors:
        label = None
        if kind is DatumKind.GROUP:
            label = min(moved_by)
        color_objs.append(make_color(rs, divisor_id, moved_by, roots, label=label))

    return SphericalDatum(
        root_system=rs,
        s_p=frozenset(s_p),
        spherical_roots=roots,
        boundary_labels=tuple(range(1, len(roots) + 1)),
        colors=tuple(color_objs),
        kind=kind,
        levi=frozenset(rs.labels),
        group_dynkin=group_dynkin,
        name=name,
    )


def group_datum(rs_G: RootSystem) -> SphericalDatum:
    """
    Datum of the wonderful compactification of an adjoint group G.

    The acting group is G x G with simple roots alpha_1..alpha_r (first factor)
    and beta_i = r + i (second factor); sigma(alpha_i) = -beta_i, so the
    spherical roots are alpha_i + beta_i and color D_i is moved by alpha_i, beta_i.

    Args:
        rs_G: Root system of G

    Returns:
        SphericalDatum of kind GROUP

    Example:
        >>> d = group_datum(build_root_system(DynkinType.simple("A", 3)))
        >>> d.picard_rank, d.spherical_roots[0]
        (3, (1, 0, 0, 1, 0, 0))
    """
    r = rs_G.rank
    rs = build_root_system(rs_G.dynkin.doubled())
    roots = [
        tuple(a + b for a, b in zip(_unit(2 * r, i), _unit(2 * r, r + i))) for i in range(1, r + 1)
    ]
    colors = [(f"D{i}", (i, r + i)) for i in range(1, r + 1)]
    datum = build_datum(
        rs,
        s_p=(),
        spherical_roots=roots,
        colors=colors,
        kind=DatumKind.GROUP,
        group_dynkin=rs_G.dynkin,
        name=f"group-{rs_G.dynkin}",
    )
    logger.debug("Group datum %s: %d colors", datum.name, len(datum.colors))
    return datum


def classify_color_types(datum: SphericalDatum) -> Dict[int, ColorType]:
    """
    Type of every simple root.

    Returns:
        Map alpha -> p (moves nothing), a_prime (2 alpha is spherical) or b

    Raises:
        TypeAColorUnsupported: If some simple root is itself a spherical root
    """
    rs = datum.root_system
    n = rs.rank
    types: Dict[int, ColorType] = {}
    for alpha in rs.labels:
        if _unit(n, alpha) in datum.spherical_roots:
            raise TypeAColorUnsupported(
                f"alpha_{alpha} is a spherical root of {datum.name or datum.kind.value}"
            )
        if not datum.divisors_moved_by(alpha):
            types[alpha] = ColorType.P
        elif _unit(n, alpha, 2) in datum.spherical_roots:
            types[alpha] = ColorType.A_PRIME
        else:
            types[alpha] = ColorType.B
    return types


def _support(vector: Sequence[int]) -> FrozenSet[int]:
    return frozenset(k + 1 for k, c in enumerate(vector) if c)


def subvariety_datum(datum: SphericalDatum, I: Iterable[int]) -> SphericalDatum:
    """
    Datum of the closed G-stable subvariety X_I = intersection of X_i, i in I.

    Labels in I refer to the top-level boundary divisors; applying this to an
    X_J datum yields X_{J u I}.

    Args:
        datum: Top-level or subvariety datum
        I: Boundary labels to intersect with

    Returns:
        Datum of X_I with surviving colors followed by Schubert extras

    Example:
        >>> d = group_datum(build_root_system(DynkinType.simple("A", 3)))
        >>> subvariety_datum(d, {2}).basis_ids
        ('D1', 'D3', 'D2+', 'D2-')
    """
    top = datum.top
    I = frozenset(int(i) for i in I)
    for i in I:
        if i not in top.boundary_labels:
            raise IndexOutOfRange(f"Boundary label {i} not in {list(top.boundary_labels)}")
    removed = datum.removed | I
    if not removed:
        return top
    if removed == datum.removed:
        return datum

    rs = top.root_system
    kept = [(label, g) for label, g in zip(top.boundary_labels, top.spherical_roots) if label not in removed]
    roots = tuple(g for _, g in kept)

    levi = set(top.s_p)
    for g in roots:
        levi |= _support(g)
    # keep two-root colors whole
    changed = True
    while changed:
        changed = False
        for c in top.colors:
            if c.moved_by & levi and not c.moved_by <= levi:
                levi |= c.moved_by
                changed = True

    colors = tuple(
        make_color(rs, c.id, c.moved_by, roots, role=c.role, label=c.label)
        for c in top.colors
        if c.moved_by <= levi
    )

    extras: List[Color] = []
    if top.kind is DatumKind.GROUP:
        r = top.group_dynkin.rank
        for i in sorted(removed):
            extras.append(make_color(rs, f"D{i}+", (i,), roots, ColorRole.PLUS, i))
            extras.append(make_color(rs, f"D{i}-", (r + i,), roots, ColorRole.MINUS, i))
    else:
        for alpha in sorted(set(rs.labels) - levi):
            extras.append(make_color(rs, f"P{alpha}", (alpha,), roots, ColorRole.SCHUBERT, alpha))

    return SphericalDatum(
        root_system=rs,
        s_p=top.s_p,
        spherical_roots=roots,
        boundary_labels=tuple(label for label, _ in kept),
        colors=colors,
        kind=DatumKind.SUBVARIETY,
        schubert_extras=tuple(extras),
        levi=frozenset(levi),
        removed=removed,
        group_dynkin=top.group_dynkin,
        parent=top,
        name=f"{top.name}/X_{{{','.join(str(i) for i in sorted(removed))}}}",
    )


def closed_orbit_datum(datum: SphericalDatum) -> SphericalDatum:
    """Datum of the closed orbit Y = X_{1..l}."""
    return subvariety_datum(datum, datum.top.boundary_labels)


def picard_rank(datum: SphericalDatum) -> int:
    """rk Pic = |colors| + |Schubert extras|."""
    return datum.picard_rank


def picard_split(datum: SphericalDatum) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    """
    Split of the Pic basis along 0 -> Pic(G/P_{S_I}^-) -> Pic(X_I) -> Pic(X^I) -> 0.

    Returns:
        (base ids, fiber ids): Schubert extras and surviving colors
    """
    return (
        tuple(c.id for c in datum.schubert_extras),
        tuple(c.id for c in datum.colors),
    )


def exceptional_count(datum: SphericalDatum) -> int:
    """Number s of colors beyond the rank l of a top-level datum."""
    top = datum.top
    return len(top.colors) - len(top.spherical_roots)
