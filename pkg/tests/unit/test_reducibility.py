"""
Unit tests for reducibility certificates and dimension bookkeeping.
"""

from fractions import Fraction

import pytest

from wonderlat.core.lattice import CurveClass, boundary_pairings
from wonderlat.core.rootsys import DynkinType, build_root_system
from wonderlat.core.spherical import build_datum, subvariety_datum
from wonderlat.errors import DatumMismatch, NegativeAnticanonicalCoeff, NotEffective, NotMovable
from wonderlat.oracle import boundary_matrix_oracle, exhaustive_certificate_oracle, pgl4_golden
from wonderlat.procedures.reducibility import (
    NonemptinessMode,
    SearchStage,
    check_certificate,
    expected_dimension,
    find_certificate,
    m_circ_nonempty,
    reducibility_gap,
    reducible_locus_dimension,
)

GROUP_A3_ANTICANONICAL = {"D1": 2, "D2": 2, "D3": 2}


class TestGoldenPGL4:
    def test_pairings(self, group_a3):
        golden = pgl4_golden()
        for name in ("eta", "eta1", "eta2"):
            assert boundary_pairings(CurveClass(group_a3, golden[name])) == golden[f"X_{name}"]

    def test_gap(self, group_a3):
        golden = pgl4_golden()
        gap = reducibility_gap(CurveClass(group_a3, golden["eta1"]), CurveClass(group_a3, golden["eta2"]))
        assert gap == golden["gap"]

    def test_certificate(self, group_a3):
        golden = pgl4_golden()
        cert = find_certificate(CurveClass(group_a3, golden["eta"]))
        assert cert.valid
        assert cert.stage is SearchStage.CONSTRUCTIVE
        assert cert.eta1.coefficients == golden["eta1"]
        assert cert.eta2.coefficients == golden["eta2"]
        assert cert.witness == golden["witness"]
        assert cert.gap == golden["gap"]
        assert cert.mode is NonemptinessMode.GROUP_DIRECT
        assert (cert.i1, cert.i2) == ((1, 3), (2,))

    def test_to_dict(self, group_a3):
        data = find_certificate(CurveClass(group_a3, (1, 1, 1))).to_dict()
        assert data["basis"] == ["D1", "D2", "D3"]
        assert data["gap"] == 0
        assert data["stage"] == "constructive"
        assert data["mode"] == "group_direct"
        assert data["violations"] == []


class TestCheckCertificate:
    def test_never_raises_on_mismatch(self, group_a3, stratum_a3):
        cert = check_certificate(
            CurveClass(group_a3, (1, 1, 1)),
            CurveClass(stratum_a3, (0, 0, 1, 0)),
            CurveClass(group_a3, (1, 0, 1)),
        )
        assert not cert.valid
        assert cert.violations == ["eta, eta1, eta2 live on different data"]

    def test_zero_summand(self, group_a3):
        eta = CurveClass(group_a3, (1, 1, 1))
        cert = check_certificate(eta, eta, CurveClass.zero(group_a3))
        assert not cert.valid
        assert "eta2 is zero" in cert.violations

    def test_sum_mismatch(self, group_a3):
        cert = check_certificate(
            CurveClass(group_a3, (1, 1, 1)),
            CurveClass(group_a3, (0, 1, 0)),
            CurveClass(group_a3, (1, 1, 1)),
        )
        assert "eta != eta1 + eta2" in cert.violations

    def test_not_movable(self, group_a3):
        cert = check_certificate(
            CurveClass(group_a3, (1, 0, 1)),
            CurveClass(group_a3, (1, 0, 0)),
            CurveClass(group_a3, (0, 0, 1)),
        )
        assert "eta is not movable" in cert.violations
        assert cert.mode is NonemptinessMode.UNKNOWN

    def test_no_witness(self, group_a3):
        cert = check_certificate(
            CurveClass(group_a3, (1, 1, 1)),
            CurveClass(group_a3, (0, 0, 1)),
            CurveClass(group_a3, (1, 1, 0)),
        )
        assert cert.witness is None
        assert not cert.valid

    def test_overlapping_negative_sets(self, group_a3):
        # both summands are negative on X_2
        cert = check_certificate(
            CurveClass(group_a3, (1, 0, 1)),
            CurveClass(group_a3, (0, 0, 1)),
            CurveClass(group_a3, (1, 0, 0)),
        )
        assert "I1 and I2 intersect in [2]" in cert.violations

    def test_witness_must_come_from_eta2(self, group_a3):
        eta = CurveClass(group_a3, (2, 2, 2))
        swapped = check_certificate(eta, CurveClass(group_a3, (1, 0, 1)), CurveClass(group_a3, (1, 2, 1)))
        assert swapped.witness is None
        assert not swapped.valid
        cert = check_certificate(eta, CurveClass(group_a3, (1, 2, 1)), CurveClass(group_a3, (1, 0, 1)))
        assert cert.valid
        assert (cert.witness, cert.gap) == (2, 0)

    @pytest.mark.parametrize("k", [1, 2, 3, 5])
    def test_scaled_decomposition(self, group_a3, k):
        golden = pgl4_golden()
        classes = [CurveClass(group_a3, golden[name]) for name in ("eta", "eta1", "eta2")]
        base = check_certificate(*classes)
        scaled = check_certificate(*(k * c for c in classes))
        assert scaled.valid
        assert (scaled.witness, scaled.i1, scaled.i2) == (base.witness, base.i1, base.i2)
        # pairings scale by k, the counting part of the gap does not
        count = 1 + len(base.i1) + len(base.i2)
        assert scaled.gap == count + k * (base.gap - count)

    def test_scaling_creates_a_witness(self, group_a3):
        eta = CurveClass(group_a3, (1, 1, 1))
        eta1 = CurveClass(group_a3, (1, 0, 0))
        single = check_certificate(eta, eta1, eta - eta1)
        assert single.witness is None
        assert not single.valid

        doubled = check_certificate(2 * eta, 2 * eta1, 2 * (eta - eta1))
        assert doubled.valid
        assert doubled.witness == 1
        assert doubled.gap == -1

    def test_half_integral_gap_is_the_only_violation(self):
        # (a') color D1 pairs to -1/2 with alpha_2 + alpha_3
        datum = build_datum(
            build_root_system(DynkinType.simple("A", 3)),
            s_p=[],
            spherical_roots=[[2, 0, 0], [0, 1, 1]],
            colors=[("D1", [1]), ("D2", [2]), ("D3", [3])],
            name="half-integral",
        )
        eta = CurveClass(datum, (1, 1, 0))
        eta1 = CurveClass(datum, (1, 0, 0))
        assert boundary_pairings(eta1) == (2, Fraction(-1, 2))

        cert = check_certificate(eta, eta1, eta - eta1, assume_nonempty=True)
        assert cert.witness == 1
        assert cert.gap == Fraction(1, 2)
        assert not cert.valid
        assert cert.violations == ["dimension gap 1/2 is positive"]


class TestSearch:
    def test_exhaustive_matches_oracle(self, group_a3):
        cert = find_certificate(CurveClass(group_a3, (1, 1, 1)), exhaustive_only=True)
        assert cert.stage is SearchStage.EXHAUSTIVE
        eta1, witness, gap = exhaustive_certificate_oracle(boundary_matrix_oracle(group_a3), (1, 1, 1))
        assert (cert.eta1.coefficients, cert.witness, cert.gap) == (eta1, witness, gap)

    def test_rank_two_has_no_certificate(self, group_a2):
        assert find_certificate(CurveClass(group_a2, (1, 1))) is None

    def test_zero_class(self, group_a3):
        assert find_certificate(CurveClass.zero(group_a3)) is None

    def test_not_movable(self, group_a3):
        with pytest.raises(NotMovable):
            find_certificate(CurveClass(group_a3, (0, 1, 0)))

    def test_d4_uses_the_hub(self, group_d4):
        # alpha_2 is the only nonextremal root of D4
        eta = CurveClass(group_d4, (1, 2, 1, 1))
        cert = find_certificate(eta)
        assert cert.valid
        assert cert.stage is SearchStage.CONSTRUCTIVE
        assert cert.eta1.coefficients == (0, 2, 0, 0)

    def test_generic_doubled_class(self, complete_conics):
        cert = find_certificate(CurveClass(complete_conics, (2, 2)))
        assert cert.valid
        assert cert.stage is SearchStage.EXHAUSTIVE
        assert cert.eta1.coefficients == (0, 2)
        assert cert.witness == 2
        assert cert.gap == -1
        assert cert.mode is NonemptinessMode.DOUBLED_CLASS

    def test_generic_unknown_nonemptiness(self, complete_conics):
        assert find_certificate(CurveClass(complete_conics, (1, 1))) is None
        cert = find_certificate(CurveClass(complete_conics, (3, 3)), assume_nonempty=True)
        assert cert is not None
        assert cert.mode is NonemptinessMode.ASSUMED


class TestNonemptiness:
    def test_group_and_strata(self, group_a3, stratum_a3):
        assert m_circ_nonempty(CurveClass(group_a3, (1, 1, 1))) is NonemptinessMode.GROUP_DIRECT
        assert m_circ_nonempty(CurveClass(stratum_a3, (1, 1, 0, 1))) is NonemptinessMode.GROUP_DIRECT

    def test_doubled(self, exceptional_a2):
        assert m_circ_nonempty(CurveClass(exceptional_a2, (2, 0))) is NonemptinessMode.DOUBLED_CLASS
        assert m_circ_nonempty(CurveClass(exceptional_a2, (1, 0))) is NonemptinessMode.UNKNOWN
        assert m_circ_nonempty(CurveClass(exceptional_a2, (1, 0)), assume=True) is NonemptinessMode.ASSUMED

    def test_requires_movable(self, group_a3):
        with pytest.raises(NotMovable):
            m_circ_nonempty(CurveClass(group_a3, (1, 0, 1)))


class TestGap:
    def test_rejects_zero(self, group_a3):
        with pytest.raises(NotEffective):
            reducibility_gap(CurveClass.zero(group_a3), CurveClass(group_a3, (1, 1, 1)))

    def test_rejects_mixed_data(self, group_a3, stratum_a3):
        with pytest.raises(DatumMismatch):
            reducibility_gap(CurveClass(group_a3, (1, 1, 1)), CurveClass(stratum_a3, (1, 1, 1, 1)))


class TestDimensions:
    def test_expected_dimension(self, group_a3):
        report = expected_dimension(CurveClass(group_a3, (1, 1, 1)), 0, GROUP_A3_ANTICANONICAL, dim_x=15)
        assert report.boundary_term == 2
        assert report.color_term == 6
        assert report.pairing_minus_kx == 8
        assert report.expected_dim == 20
        assert report.m_circ_dim == 20

    def test_marked_points(self, group_a3):
        report = expected_dimension(CurveClass(group_a3, (1, 1, 1)), 2, GROUP_A3_ANTICANONICAL, dim_x=15)
        assert report.expected_dim == 22
        assert report.m_circ_dim == 22

    def test_each_marked_point_adds_one(self, group_a3):
        eta = CurveClass(group_a3, (1, 2, 1))
        dims = [
            expected_dimension(eta, n, GROUP_A3_ANTICANONICAL, dim_x=15).m_circ_dim for n in range(4)
        ]
        assert [b - a for a, b in zip(dims, dims[1:])] == [1, 1, 1]

    def test_missing_inputs(self, group_a3):
        report = expected_dimension(CurveClass(group_a3, (1, 1, 1)), 0, {"D1": 2})
        assert report.color_term is None
        assert report.expected_dim is None
        report = expected_dimension(CurveClass(group_a3, (1, 1, 1)), 0, GROUP_A3_ANTICANONICAL)
        assert report.pairing_minus_kx == 8
        assert report.expected_dim is None

    def test_negative_coefficient(self, group_a3):
        with pytest.raises(NegativeAnticanonicalCoeff):
            expected_dimension(CurveClass(group_a3, (1, 1, 1)), 0, {"D1": -1})

    def test_locus_dimension_matches_gap(self, group_a3):
        cert = find_certificate(CurveClass(group_a3, (1, 2, 1)))
        report = expected_dimension(cert.eta, 0, GROUP_A3_ANTICANONICAL, dim_x=15)
        locus = reducible_locus_dimension(cert, GROUP_A3_ANTICANONICAL, dim_x=15)
        assert report.m_circ_dim - locus == cert.gap

    def test_locus_dimension_unavailable(self, group_a3):
        cert = find_certificate(CurveClass(group_a3, (1, 1, 1)))
        assert reducible_locus_dimension(cert) is None

    def test_stratum_classes(self, group_a3):
        x13 = subvariety_datum(group_a3, {1, 3})
        assert expected_dimension(CurveClass.zero(x13)).boundary_term == 0
