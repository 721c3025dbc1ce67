"""
Unit tests for divisor and curve lattices, boundary expansions, closed-orbit
lifts and the pullback/pushforward pair along boundary strata.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wonderlat.core.lattice import (
    CurveClass,
    DivisorClass,
    boundary_divisor,
    boundary_pairing_matrix,
    boundary_pairings,
    closed_orbit_pullback,
    closed_orbit_pushforward,
    color_pullback,
    dual_curve,
    enumerate_movable,
    inclusion_pushforward,
    is_effective_curve,
    is_movable,
    is_nef,
    lift_to_closed_orbit,
    pair,
    pullback_matrix,
    require_movable,
    rho_value,
)
from wonderlat.core.spherical import subvariety_datum
from wonderlat.errors import (
    DatumMismatch,
    IndexOutOfRange,
    NonIntegralClass,
    NotGroupKind,
    NotMovable,
    RootMovesNoColor,
)
from wonderlat.oracle import boundary_matrix_oracle, cartan_fixture, movable_classes_oracle
from tests.conftest import group

small = st.integers(min_value=-4, max_value=4)


class TestBoundaryExpansion:
    def test_group_a3(self, group_a3):
        assert boundary_divisor(group_a3, 2).expansion.coefficients == (-1, 2, -1)
        assert [list(row) for row in boundary_pairing_matrix(group_a3)] == boundary_matrix_oracle(
            group_a3
        ).tolist()

    def test_non_simply_laced_is_transposed(self):
        b2 = group("B2")
        # X_1 = 2 D_1 - 2 D_2 since alpha_2^vee(alpha_1) = -2
        assert boundary_divisor(b2, 1).expansion.coefficients == (2, -2)
        assert boundary_divisor(b2, 2).expansion.coefficients == (-1, 2)

    def test_conics(self, conics):
        assert rho_value(conics, "D1", (2,)) == 2
        assert boundary_divisor(conics, 1).expansion.coefficients == (2,)

    def test_complete_conics_half_pairing(self, complete_conics):
        assert rho_value(complete_conics, "D1", (0, 2)) == -1
        assert boundary_divisor(complete_conics, 1).expansion.coefficients == (2, -1)

    def test_exceptional(self, exceptional_a2):
        assert boundary_divisor(exceptional_a2, 1).expansion.coefficients == (1, 1)

    def test_group_stratum(self, stratum_a3):
        # basis (D1, D3, D2+, D2-)
        assert boundary_divisor(stratum_a3, 1).expansion.coefficients == (2, 0, -1, -1)
        assert boundary_divisor(stratum_a3, 3).expansion.coefficients == (0, 2, -1, -1)

    def test_unknown_label(self, stratum_a3):
        with pytest.raises(IndexOutOfRange):
            boundary_divisor(stratum_a3, 2)


class TestClasses:
    def test_wrong_length(self, group_a3):
        with pytest.raises(IndexOutOfRange):
            CurveClass(group_a3, (1, 1))
        with pytest.raises(IndexOutOfRange):
            DivisorClass(group_a3, (1,))

    def test_non_integral_curve_coefficient(self, group_a3):
        with pytest.raises(NonIntegralClass):
            CurveClass(group_a3, (Fraction(1, 2), 0, 0))
        assert CurveClass(group_a3, (Fraction(4, 2), 0, 1)).coefficients == (2, 0, 1)

    def test_mixing_data(self, group_a3, stratum_a3):
        with pytest.raises(DatumMismatch):
            CurveClass(group_a3, (1, 1, 1)) + CurveClass(stratum_a3, (1, 1, 1, 1))
        with pytest.raises(DatumMismatch):
            pair(boundary_divisor(stratum_a3, 1), CurveClass(group_a3, (1, 1, 1)))

    def test_arithmetic(self, group_a3):
        eta = CurveClass(group_a3, (1, 2, 1))
        assert eta - dual_curve(group_a3, "D2") == CurveClass(group_a3, (1, 1, 1))
        assert 2 * eta == eta + eta
        assert (-eta).coefficients == (-1, -2, -1)
        assert eta.as_dict() == {"D1": 1, "D2": 2, "D3": 1}
        assert CurveClass.zero(group_a3).is_zero

    def test_fractional_divisor(self, group_a3):
        d = DivisorClass(group_a3, (Fraction(1, 2), 0, 0))
        assert not d.is_integral
        assert pair(d, CurveClass(group_a3, (3, 0, 0))) == Fraction(3, 2)

    @given(st.tuples(small, small, small), st.tuples(small, small, small), st.tuples(small, small, small))
    def test_pairing_is_bilinear(self, d, c1, c2):
        datum = group("A3")
        divisor = DivisorClass(datum, d)
        a, b = CurveClass(datum, c1), CurveClass(datum, c2)
        assert pair(divisor, a + b) == pair(divisor, a) + pair(divisor, b)
        assert pair(divisor * 3, a) == 3 * pair(divisor, a)
        assert pair(divisor + divisor, b) == pair(divisor, 2 * b)


class TestMovable:
    def test_pgl4(self, group_a3):
        assert is_movable(CurveClass(group_a3, (1, 1, 1)))
        assert boundary_pairings(CurveClass(group_a3, (1, 1, 1))) == (1, 0, 1)
        assert not is_movable(CurveClass(group_a3, (0, 1, 0)))
        assert not is_movable(CurveClass(group_a3, (2, 2, -1)))

    def test_require_movable(self, group_a3):
        with pytest.raises(NotMovable):
            require_movable(CurveClass(group_a3, (1, 0, 1)))

    def test_enumeration_matches_oracle(self, group_a2):
        found = [eta.coefficients for eta in enumerate_movable(group_a2, 2)]
        assert found == [(1, 1), (1, 2), (2, 1), (2, 2)]
        assert found == list(movable_classes_oracle(cartan_fixture("A2").T, 2))

    def test_enumeration_include_zero(self, conics):
        found = [eta.coefficients for eta in enumerate_movable(conics, 2, include_zero=True)]
        assert found == [(0,), (1,), (2,)]

    def test_nef(self, group_a3):
        assert is_nef(DivisorClass(group_a3, (0, 1, 0)))
        assert is_nef(DivisorClass(group_a3, (0, 0, 0)))
        assert not is_nef(boundary_divisor(group_a3, 2).expansion)

    def test_effective_curve(self, group_a3):
        assert is_effective_curve(CurveClass(group_a3, (0, 1, 0)))
        assert is_effective_curve(CurveClass.zero(group_a3))
        assert not is_effective_curve(CurveClass(group_a3, (2, 2, -1)))

    def test_movable_pairs_nonnegatively_with_colors_and_boundary(self, group_a3):
        eta = CurveClass(group_a3, (1, 1, 1))
        divisors = [DivisorClass(group_a3, tuple(int(k == j) for k in range(3))) for j in range(3)]
        divisors += [boundary_divisor(group_a3, i).expansion for i in (1, 2, 3)]
        assert all(pair(d, eta) >= 0 for d in divisors)


class TestClosedOrbit:
    def test_group_lift(self, group_a3):
        eta = CurveClass(group_a3, (1, 2, 1))
        lift = lift_to_closed_orbit(eta)
        assert lift.multiplier == 1
        assert lift.schubert == {1: 1, 2: 2, 3: 1, 4: 0, 5: 0, 6: 0}
        assert closed_orbit_pushforward(group_a3, lift.schubert) == eta

    @pytest.mark.parametrize("c, multiplier", [(1, 2), (2, 1), (3, 2)])
    def test_a_prime_lift_doubles_odd_classes(self, conics, c, multiplier):
        eta = CurveClass(conics, (c,))
        lift = lift_to_closed_orbit(eta)
        assert lift.multiplier == multiplier
        assert closed_orbit_pushforward(conics, lift.schubert) == multiplier * eta

    def test_complete_conics_lift(self, complete_conics):
        eta = CurveClass(complete_conics, (1, 1))
        lift = lift_to_closed_orbit(eta)
        assert (lift.multiplier, lift.schubert) == (2, {1: 1, 2: 1})
        assert closed_orbit_pushforward(complete_conics, lift.schubert) == 2 * eta

    def test_type_b_lift(self, exceptional_a2):
        lift = lift_to_closed_orbit(CurveClass(exceptional_a2, (1, 0)))
        assert (lift.multiplier, lift.schubert) == (1, {1: 1, 2: 0})

    def test_lift_needs_movable(self, group_a3):
        with pytest.raises(NotMovable):
            lift_to_closed_orbit(CurveClass(group_a3, (0, 1, 0)))

    def test_pullback_to_closed_orbit(self, conics, group_a3):
        assert closed_orbit_pullback(conics, "D1") == {1: 2}
        assert closed_orbit_pullback(group_a3, "D2") == {2: 1, 5: 1}

    def test_s_p_root_moves_nothing(self, with_levi):
        assert closed_orbit_pushforward(with_levi, {1: 1, 2: 0}).coefficients == (2,)
        with pytest.raises(RootMovesNoColor):
            closed_orbit_pushforward(with_levi, {2: 1})


class TestInclusions:
    def test_pullback_matrix(self, group_a3, stratum_a3):
        assert pullback_matrix(group_a3, stratum_a3) == (
            (1, 0, 0, 0),
            (0, 0, 1, 1),
            (0, 1, 0, 0),
        )

    def test_color_pullback_splits_removed_color(self, group_a3):
        pulled = color_pullback(group_a3, (), 2, "D2")
        assert pulled.as_dict() == {"D1": 0, "D3": 0, "D2+": 1, "D2-": 1}

    def test_pullback_of_boundary_divisor(self, group_a3, stratum_a3):
        pulled = color_pullback(group_a3, (), 2, boundary_divisor(group_a3, 1).expansion)
        assert pulled == boundary_divisor(stratum_a3, 1).expansion

    def test_pushforward(self, group_a3, stratum_a3):
        bar = CurveClass(stratum_a3, (1, 1, 0, 1))
        assert inclusion_pushforward(group_a3, bar) == CurveClass(group_a3, (1, 1, 1))

    def test_two_step_pushforward(self, group_a3, stratum_a3):
        x13 = subvariety_datum(group_a3, {1, 3})
        bar = CurveClass(x13, tuple(range(1, x13.picard_rank + 1)))
        direct = inclusion_pushforward(group_a3, bar)
        assert inclusion_pushforward(group_a3, inclusion_pushforward(subvariety_datum(group_a3, {1}), bar)) == direct

    def test_not_a_substratum(self, stratum_a3):
        with pytest.raises(DatumMismatch):
            pullback_matrix(stratum_a3, subvariety_datum(stratum_a3.top, {1}))

    def test_generic_rejected(self, complete_conics):
        with pytest.raises(NotGroupKind):
            pullback_matrix(complete_conics, subvariety_datum(complete_conics, {1}))
        with pytest.raises(NotGroupKind):
            color_pullback(complete_conics, (), 1, "D1")

    def test_i0_already_removed(self, group_a3):
        with pytest.raises(IndexOutOfRange):
            color_pullback(group_a3, {2}, 2, "D1")

    @given(st.tuples(small, small, small), st.tuples(small, small, small, small))
    def test_projection_formula(self, d, c):
        datum = group("A3")
        target = subvariety_datum(datum, {2})
        divisor = DivisorClass(datum, d)
        bar = CurveClass(target, c)
        assert pair(color_pullback(datum, (), 2, divisor), bar) == pair(
            divisor, inclusion_pushforward(datum, bar)
        )
