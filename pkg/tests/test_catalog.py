import numpy as np
import pytest
from hypothesis import given, strategies as st

from einshom import _exact as ex
from einshom import catalog
from einshom.catalog import CLASSES, realify_complex, realify_quaternion

small = st.integers(min_value=-3, max_value=3)
cmat = st.lists(st.tuples(small, small), min_size=4, max_size=4).map(
    lambda xs: np.array([complex(a, b) for a, b in xs]).reshape(2, 2))


class TestEntries:
    def test_size(self):
        assert len(catalog.list_spaces()) >= 15
        assert len(catalog.list_spaces(include_fixtures=True)) > len(catalog.list_spaces())

    def test_classes_known(self):
        for e in catalog.list_spaces():
            assert e.klass() in CLASSES, e.name

    def test_unknown(self):
        with pytest.raises(KeyError):
            catalog.build("NOPE")

    def test_non_coprime(self):
        with pytest.raises(ValueError, match="coprime"):
            catalog.build("Sp11_Dpq", (2, 4))

    def test_params_on_plain_entry(self):
        with pytest.raises(ValueError, match="no parameters"):
            catalog.build("SU41_SU4", (1, 2))

    def test_display(self):
        e = catalog.get_entry("Sp2R_Dpq")
        assert e.display() == "Sp2R_Dpq(2,3)" and e.display((1, 2)) == "Sp2R_Dpq(1,2)"

    @pytest.mark.parametrize("pq, klass", [((1, 1), "UNRESOLVED"), ((2, 3), "CARTAN_ORTHOGONAL_OBSTRUCTED")])
    def test_sp11_class_depends_on_params(self, pq, klass):
        assert catalog.get_entry("Sp11_Dpq").klass(pq) == klass

    def test_g2_dimension(self):
        assert catalog.build("G2_U2_1").g.dim == 14


class TestSignatures:
    @pytest.mark.parametrize("e", catalog.list_spaces(include_fixtures=True), ids=lambda e: e.name)
    def test_default(self, space, e):
        _, iso, _ = space(e.name, e.default_params)
        assert iso.signature() == e.signature()

    @pytest.mark.parametrize("name, pq", [("Sp11_Dpq", (1, 3)), ("Sp11_Dpq", (0, 1)), ("Sp2R_Dpq", (1, 2)),
                                          ("Sp2R_Dpq", (0, 1)), ("SU21xSL2C_SU2_Dpq", (1, 1)),
                                          ("SU21sq_SU2sq_Dpq", (0, 1))])
    def test_grid(self, space, name, pq):
        assert space(name, pq)[1].signature() == catalog.get_entry(name).signature(pq)


class TestPrintedBases:
    def test_sl2h_printed_modules_not_invariant(self):
        rep = catalog.printed_basis_report(catalog.build("SL2H_Sp1Sp1"))
        assert not rep["q1^4 (as printed)"]["invariant"]
        assert not rep["p1^4 (as printed)"]["invariant"]
        assert rep["q1^4"] == {"side": "q", "in_k_mod_h": True, "invariant": True}

    def test_sp11_printed_modules(self):
        rep = catalog.printed_basis_report(catalog.build("Sp11_Dpq", (1, 1)))
        assert all(r["invariant"] and r["in_k_mod_h"] for r in rep.values())


class TestTable:
    def test_rows(self):
        rows = {(r.dim_quotient, r.label): r.dim_group for r in catalog.table1()}
        assert rows[(4, "Sp(2)/Sp(1)^2")] == 10
        assert rows[(8, "SU(5)/U(4)")] == 24

    def test_dimension_three(self):
        three = [r for r in catalog.table1() if r.dim_quotient == 3]
        assert len(three) == 1 and three[0].dim_group == 6


class TestRealification:
    @given(cmat, cmat)
    def test_complex_homomorphism(self, A, B):
        lhs = realify_complex(A @ B)
        rhs = ex.exact_matmul(realify_complex(A), realify_complex(B))
        assert ex.is_zero(lhs - rhs)

    def test_quaternion_units(self):
        def unit(v):
            return realify_quaternion(np.array(v).reshape(1, 1, 4))
        i, j, k = unit((0, 1, 0, 0)), unit((0, 0, 1, 0)), unit((0, 0, 0, 1))
        assert ex.is_zero(ex.exact_matmul(i, j) - k)
        assert ex.is_zero(ex.exact_matmul(i, i) + unit((1, 0, 0, 0)))
