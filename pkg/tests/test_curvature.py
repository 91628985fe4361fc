import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from einshom.curvature import (EINSTEIN, NOT_EINSTEIN, closed_form_sl2c2, closed_form_sl2h,
                               einstein_report, mean_curvature_vector, ricci, sl2c2_delta,
                               sl2c2_offdiagonal, sl2h_branch_value, sl2h_offdiagonal,
                               spectral_residual)
from einshom.metrics import build_Q, orthonormal_frame, random_point
from oracle import ricci_in_orthonormal_frame

ORACLE_SPACES = [
    ("AFF1", None), ("SU2_BIINV", None), ("SL2H_Sp1Sp1", None), ("SL2C2_U1U1", None),
    ("SU21xSL2C_SU2_Dpq", (1, 2)), ("Sp11_Dpq", (1, 1)), ("TOY_SL2R_SU2", None), ("G2_U2_1", None),
]


def _sl2h(space, a, b, c, d):
    rd, _, mod = space("SL2H_Sp1Sp1")
    return rd, build_Q(mod, {"a": a, "b": b, "c": c, "d": d})


class TestAgainstOracle:
    @pytest.mark.parametrize("name, params", ORACLE_SPACES)
    def test_random_points(self, space, name, params):
        rd, _, mod = space(name, params)
        rng = np.random.default_rng(7)
        for _ in range(3):
            mp = random_point(mod, rng)
            R = ricci(rd, mp).matrix
            O = ricci_in_orthonormal_frame(rd, mp.Qf, orthonormal_frame(mp).frame)
            assert np.abs(R - O).max() < 1e-10 * max(1.0, np.abs(O).max())

    def test_symmetric(self, space):
        rd, _, mod = space("Sp11_Dpq", (1, 1))
        mp = random_point(mod, np.random.default_rng(1))
        assert ricci(rd, mp).symmetry_defect() < 1e-12


class TestFixtures:
    def test_flat(self, space):
        rd, _, mod = space("FLAT_R3")
        rep = einstein_report(rd, build_Q(mod, mod.identity_values()))
        assert rep.verdict == EINSTEIN and abs(rep.lambda_star) < 1e-15

    def test_su2_bi_invariant(self, space):
        rd, _, mod = space("SU2_BIINV")
        rep = einstein_report(rd, build_Q(mod, mod.identity_values()))
        # the reference is minus the Killing form, so Ric = g/4
        assert rep.verdict == EINSTEIN
        assert rep.lambda_star == pytest.approx(0.25)

    def test_aff1_hyperbolic(self, space):
        rd, _, mod = space("AFF1")
        mp = build_Q(mod, mod.identity_values())
        np.testing.assert_allclose(ricci(rd, mp).matrix, -np.eye(2), atol=1e-15)
        assert np.abs(mean_curvature_vector(rd, mp)).max() > 0

    def test_unimodular_has_no_mean_curvature(self, space):
        rd, _, mod = space("SL2H_Sp1Sp1")
        assert np.abs(mean_curvature_vector(rd, build_Q(mod, mod.identity_values()))).max() == 0

    def test_sl2h_reference_not_einstein(self, space):
        rd, mp = _sl2h(space, 1, 1, 1, 0)
        rep = einstein_report(rd, mp)
        assert rep.verdict == NOT_EINSTEIN
        assert rep.to_dict()["space"] == "SL2H_Sp1Sp1"


class TestInvariance:
    @settings(max_examples=15)
    @given(st.floats(min_value=0.1, max_value=10.0))
    def test_scaling(self, s):
        from conftest import _space
        rd, _, mod = _space("SL2C2_U1U1")
        mp = random_point(mod, np.random.default_rng(4))
        scaled = build_Q(mod, {k: s * float(v) for k, v in mp.values.items()})
        # Ric is scale invariant as a (0,2) tensor, so frame components scale by 1/s
        np.testing.assert_allclose(ricci(rd, scaled).matrix * s, ricci(rd, mp).matrix, atol=1e-9)

    def test_eigenvalues_frame_independent(self, space):
        rd, _, mod = space("SL2H_Sp1Sp1")
        mp = random_point(mod, np.random.default_rng(9))
        F = orthonormal_frame(mp).frame
        Qr, _ = np.linalg.qr(np.random.default_rng(1).normal(size=(9, 9)))
        rep1 = einstein_report(rd, mp)
        rep2 = einstein_report(rd, mp, frame=type(orthonormal_frame(mp))(mp, F @ Qr))
        np.testing.assert_allclose(np.linalg.eigvalsh(rep1.ricci.matrix),
                                   np.linalg.eigvalsh(rep2.ricci.matrix), atol=1e-10)
        assert spectral_residual(rep1) == pytest.approx(spectral_residual(rep2), abs=1e-10)


class TestSL2HValues:
    def test_reference_point(self, space):
        rd, mp = _sl2h(space, 1, 1, 1, 0)
        np.testing.assert_allclose(np.diag(ricci(rd, mp).matrix), [-24] + [-18] * 4 + [14] * 4, atol=1e-12)

    def test_transcribed_matrix_at_reference(self):
        np.testing.assert_allclose(np.diag(closed_form_sl2h(1, 1, 1, 0)), [-24] + [-16] * 4 + [12] * 4)

    @pytest.mark.parametrize("a, b, c, d", [(1, 3, 1, 0.5), (2, 3, 1, 0.5), (0.7, 1.9, 2.2, -0.4)])
    def test_offdiagonal_formula(self, space, a, b, c, d):
        rd, mp = _sl2h(space, a, b, c, d)
        R = ricci(rd, mp).matrix
        expected = 2 * (8 * a - 2 * b + 2 * c) * d / (a * b * math.sqrt(b * c - d * d))
        for k in range(4):
            assert abs(R[1 + k, 5 + k]) == pytest.approx(abs(expected), rel=1e-10)

    @pytest.mark.parametrize("a, c, d", [(1, 1, 0.5), (0.5, 2, -1), (3, 1, 0)])
    def test_vanishing_branch(self, space, a, c, d):
        b = 4 * a + c
        rd, mp = _sl2h(space, a, b, c, d)
        R = ricci(rd, mp).matrix
        assert np.abs(R[1:5, 5:9]).max() < 1e-12
        assert R[1, 1] == pytest.approx(30 * a / (b * c - d * d), rel=1e-12)

    def test_printed_offdiagonal_differs(self, space):
        a, b, c, d = 2, 3, 1, 0.5
        rd, mp = _sl2h(space, a, b, c, d)
        assert sl2h_offdiagonal(a, b, c, d) == pytest.approx(2 * 10 * 0.5 / (6 * math.sqrt(2.75)))
        assert abs(ricci(rd, mp).matrix[1, 5]) != pytest.approx(sl2h_offdiagonal(a, b, c, d), rel=1e-3)

    def test_printed_branch_value(self):
        assert sl2h_branch_value(1, 4.5, 1, 0) == pytest.approx(5.0)

    def test_closed_form_domain(self):
        with pytest.raises(ValueError):
            closed_form_sl2h(1, 1, 1, 1)


class TestSL2C2Values:
    POINT = dict(a=1, b=2, c="1/2", d=1, l="1/4", q=2, f=1, g=1, n="-1/3")
    FLOAT = dict(a=1.0, b=2.0, c=0.5, d=1.0, l=0.25, q=2.0, f=1.0, g=1.0, n=-1 / 3)

    def test_identity_diagonal(self, space):
        rd, _, mod = space("SL2C2_U1U1")
        mp = build_Q(mod, dict(a=1, b=1, c=0, d=1, l=0, q=1, f=1, g=1, n=0))
        np.testing.assert_allclose(np.diag(ricci(rd, mp).matrix),
                                   [-12, -12, 6, 6, -10, -10, 6, 6, -10, -10], atol=1e-12)

    def test_frozen_entries(self, space):
        rd, _, mod = space("SL2C2_U1U1")
        R = ricci(rd, build_Q(mod, self.POINT)).matrix
        assert R[0, 1] == pytest.approx(10.743411537743125, rel=1e-12)
        assert R[0, 0] == pytest.approx(-14.97668444328824, rel=1e-12)
        assert R[2, 5] == pytest.approx(1.3971140544755576, rel=1e-12)

    def test_transcription_agreements(self, space):
        rd, _, mod = space("SL2C2_U1U1")
        R = ricci(rd, build_Q(mod, self.POINT)).matrix
        M, standalone = closed_form_sl2c2(**self.FLOAT)
        assert M[0, 1] == pytest.approx(R[1, 1], rel=1e-10)
        assert M[6, 9] == pytest.approx(-R[6, 9], rel=1e-10)
        assert standalone == pytest.approx(R[0, 1] / 2, rel=1e-10)
        assert standalone == pytest.approx(sl2c2_offdiagonal(**self.FLOAT))

    def test_delta_positive(self):
        assert sl2c2_delta(**self.FLOAT) > 0

    def test_offdiagonal_vanishes_with_c(self, space):
        rd, _, mod = space("SL2C2_U1U1")
        pt = dict(self.POINT, c=0)
        assert abs(ricci(rd, build_Q(mod, pt)).matrix[0, 1]) < 1e-12
