from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from einshom import _exact as ex
from einshom.curvature import ricci
from einshom.metrics import (MetricDomainError, build_Q, expected_slot_count, moduli_space,
                             normalize_by_automorphisms, orthonormal_frame, point_from_json,
                             point_to_json, random_point)

SLOT_COUNTS = [
    ("SL2H_Sp1Sp1", None, 4),
    ("Sp11_Dpq", (1, 1), 15),
    ("Sp11_Dpq", (2, 3), 5),
    ("SU41_SU4", None, 2),
    ("SU21sq_SU2sq", None, 5),
    ("SU22_SU2SU2", None, 4),
    ("AFF1", None, 3),
]


def _invariant(rd, Q):
    return all(ex.is_zero(ex.exact_matmul(A.T, Q) + ex.exact_matmul(Q, A)) for A in rd.action())


class TestModuli:
    @pytest.mark.parametrize("name, params, count", SLOT_COUNTS)
    def test_slot_count(self, space, name, params, count):
        mod = space(name, params)[2]
        assert mod.dim == count
        assert expected_slot_count(mod.blocks) == count

    def test_sl2c2_normal_form_drops_two_slots(self, space):
        rd, iso, mod = space("SL2C2_U1U1")
        full = moduli_space(iso, normal_form=False)
        assert mod.slot_names == list("abcdlqfgn")
        assert full.dim == 11 == expected_slot_count(full.blocks)

    def test_templates(self, space):
        assert space("SL2H_Sp1Sp1")[2].template == "SL2H"
        assert space("SU41_SU4")[2].template == "generic"

    @pytest.mark.parametrize("name, params", [(n, p) for n, p, _ in SLOT_COUNTS])
    def test_every_slot_invariant(self, space, name, params):
        rd, _, mod = space(name, params)
        for s in mod.slots:
            assert _invariant(rd, s.matrix), s.name

    def test_identity_is_reference(self, space):
        rd, _, mod = space("SU41_SU4")
        mp = build_Q(mod, mod.identity_values())
        assert ex.is_zero(mp.Q - rd.reference)


class TestBuildQ:
    def test_exact_point(self, space):
        mod = space("SL2H_Sp1Sp1")[2]
        mp = build_Q(mod, {"a": 1, "b": "2", "c": Fraction(1, 2), "d": "1/3"})
        assert mp.exact and mp.values["d"] == Fraction(1, 3)

    def test_float_point(self, space):
        mod = space("SL2H_Sp1Sp1")[2]
        mp = build_Q(mod, {"a": 1.0, "b": 2.0, "c": 1.0, "d": 0.5})
        assert not mp.exact
        np.testing.assert_allclose(mp.Qf, mp.Qf.T)

    @pytest.mark.parametrize("vals", [
        {"a": 1, "b": 1, "c": 1, "d": 1},
        {"a": -1, "b": 1, "c": 1, "d": 0},
        {"a": 1.0, "b": float("nan"), "c": 1.0, "d": 0.0},
    ])
    def test_out_of_domain(self, space, vals):
        with pytest.raises(MetricDomainError):
            build_Q(space("SL2H_Sp1Sp1")[2], vals)

    def test_unknown_and_missing_slots(self, space):
        mod = space("SL2H_Sp1Sp1")[2]
        with pytest.raises(KeyError, match="unknown"):
            build_Q(mod, {"a": 1, "b": 1, "c": 1, "d": 0, "z": 1})
        with pytest.raises(KeyError, match="missing"):
            build_Q(mod, {"a": 1})

    def test_json_round_trip(self, space):
        mod = space("SL2C2_U1U1")[2]
        mp = random_point(mod, np.random.default_rng(3), exact=True)
        back = point_from_json(mod, point_to_json(mp))
        assert back.values == mp.values

    def test_json_wrong_space(self, space):
        mod = space("SL2C2_U1U1")[2]
        with pytest.raises(ValueError):
            point_from_json(mod, {"space": "SU41_SU4", "values": {}})


class TestRandomPoints:
    @pytest.mark.parametrize("name, params", [("Sp11_Dpq", (1, 1)), ("SU2_BIINV", None), ("SL2C2_U1U1", None)])
    def test_generic_samples_stay_in_domain(self, space, name, params):
        mod = space(name, params)[2]
        rng = np.random.default_rng(11)
        for _ in range(30):
            mp = random_point(mod, rng)
            assert np.linalg.eigvalsh(mp.Qf).min() > 0

    def test_exact_samples_invariant(self, space):
        rd, _, mod = space("Sp11_Dpq", (1, 1))
        mp = random_point(mod, np.random.default_rng(5), exact=True)
        assert _invariant(rd, mp.Q)

    @pytest.mark.parametrize("name", ["SL2C2_U1U1", "SL2H_Sp1Sp1"])
    def test_cross_bounds_guarantee_pd(self, space, name):
        mod = space(name)[2]
        rng = np.random.default_rng(2)
        for _ in range(50):
            vals = {s.name: float(np.exp(rng.uniform(-1, 1))) for s in mod.slots if s.kind == "diag"}
            groups = {}
            for s, (grp, i, j, kappa) in mod.cross_bounds.items():
                groups.setdefault(grp, []).append((s, i, j, kappa))
            for items in groups.values():
                z = rng.normal(size=len(items))
                z *= 0.999 / np.linalg.norm(z)
                for (s, i, j, kappa), zi in zip(items, z):
                    vals[s] = kappa * np.sqrt(vals[i] * vals[j]) * zi
            build_Q(mod, vals)


class TestFrames:
    @settings(max_examples=20)
    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_orthonormal(self, seed):
        from conftest import _space
        mod = _space("SL2C2_U1U1")[2]
        mp = random_point(mod, np.random.default_rng(seed))
        assert orthonormal_frame(mp).orthonormality_error() < 1e-12

    def test_sl2h_frame_starts_with_scaled_basis(self, space):
        mod = space("SL2H_Sp1Sp1")[2]
        mp = build_Q(mod, {"a": 4, "b": 9, "c": 1, "d": 0})
        F = orthonormal_frame(mp).frame
        B = ex.to_float(mod.frame_basis)
        np.testing.assert_allclose(F[:, 0], B[:, 0] / 2, atol=1e-14)
        np.testing.assert_allclose(F[:, 1], B[:, 1] / 3, atol=1e-14)


class TestNormalization:
    def test_removes_cross_slots_and_preserves_ricci(self, space):
        rd, iso, _ = space("SL2C2_U1U1")
        full = moduli_space(iso, normal_form=False)
        vals = {s: 0.0 for s in full.slot_names}
        vals.update(a=1.3, b=0.8, c=0.1, d=1.1, q=0.9, f=1.2, g=0.7, l=0.05, n=-0.1, p=0.2, m=-0.15)
        mp = build_Q(full, vals)
        nf = normalize_by_automorphisms(mp)
        assert nf.moduli.template == "SL2C2"
        assert set(nf.values) == set("abcdlqfgn")

        def eigenvalues(point):
            return np.linalg.eigvalsh(ricci(rd, point).matrix)
        np.testing.assert_allclose(eigenvalues(mp), eigenvalues(nf), atol=1e-9)

    def test_other_spaces_unchanged(self, space):
        mod = space("SL2H_Sp1Sp1")[2]
        mp = build_Q(mod, mod.identity_values())
        out = normalize_by_automorphisms(mp)
        assert "unsupported" in out.note and out.values == mp.values
