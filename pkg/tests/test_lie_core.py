import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from einshom import _exact as ex
from einshom.lie_core import (BilinearForm, LieAlgebra, MatrixBasis, Subspace, abelian, bracket,
                              derived_series, derived_subalgebra, direct_sum, killing_form, sl2r,
                              solvable_2d, su2, toy_sl2r_su2, trace_ad, verify_cartan_split,
                              verify_jacobi)

coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def vec(n):
    return st.lists(coeff, min_size=n, max_size=n).map(lambda v: ex.as_exact(np.array(v, dtype=object)))


@pytest.fixture(scope="module")
def sl2():
    return sl2r()


@pytest.fixture(scope="module")
def toy():
    return toy_sl2r_su2()


class TestStructure:
    def test_sl2_brackets(self, sl2):
        h, e, f = (sl2.unit(i) for i in range(3))
        assert list(bracket(sl2, h, e)) == [0, 2, 0]
        assert list(bracket(sl2, h, f)) == [0, 0, -2]
        assert list(bracket(sl2, e, f)) == [1, 0, 0]

    def test_dense_tensor_must_be_antisymmetric(self):
        c = np.zeros((2, 2, 2), dtype=int)
        c[0, 1, 1] = 1
        with pytest.raises(ValueError):
            LieAlgebra(c)

    @pytest.mark.parametrize("make", [sl2r, su2, solvable_2d, toy_sl2r_su2, lambda: abelian(4)])
    def test_jacobi_exact_zero(self, make):
        assert verify_jacobi(make()) == 0

    def test_jacobi_detects_failure(self):
        # [e0,e1] = e1, [e1,e2] = e0 and [e0,e2] = 0 is antisymmetric but not a Lie bracket
        bad = LieAlgebra({(0, 1): {1: 1}, (1, 2): {0: 1}}, dim=3)
        assert verify_jacobi(bad) > 0

    def test_json_roundtrip(self, toy):
        again = LieAlgebra.from_json(json.dumps(toy.to_json()))
        assert again == toy
        assert again.basis_labels == toy.basis_labels

    def test_json_rejects_bad_indices(self):
        with pytest.raises(ValueError):
            LieAlgebra.from_json({"dim": 2, "brackets": [[1, 0, [[0, "1"]]]]})


class TestBracketProperties:
    @given(vec(6), vec(6))
    def test_antisymmetry(self, x, y):
        g = toy_sl2r_su2()
        assert np.all(bracket(g, x, y) == -bracket(g, y, x))

    @given(vec(6), vec(6), vec(6))
    def test_ad_is_a_homomorphism(self, x, y, z):
        g = toy_sl2r_su2()
        lhs = g.ad(bracket(g, x, y))
        rhs = g.ad(x) @ g.ad(y) - g.ad(y) @ g.ad(x)
        assert np.all(lhs == rhs)

    @given(vec(3), vec(3), coeff)
    def test_bilinearity(self, x, y, t):
        g = sl2r()
        assert np.all(bracket(g, t * x + y, y) == t * bracket(g, x, y))


class TestKilling:
    def test_sl2_values(self, sl2):
        B = killing_form(sl2).gram
        assert B[0, 0] == 8 and B[1, 2] == 4 and B[1, 1] == 0

    def test_su2_negative_definite(self):
        assert np.all(killing_form(su2()).gram == -2 * ex.identity(3))

    @pytest.mark.parametrize("make", [sl2r, su2, toy_sl2r_su2, solvable_2d])
    def test_invariance(self, make):
        assert killing_form(make()).is_ad_invariant()

    def test_non_invariant_form(self, sl2):
        G = ex.identity(3)
        assert not BilinearForm(sl2, G).is_ad_invariant()

    def test_degenerate_on_solvable(self):
        g = solvable_2d()
        assert not killing_form(g).is_nondegenerate()
        assert trace_ad(g, g.unit(0)) == 1


class TestSubspaces:
    def test_dependent_columns_rejected(self, sl2):
        e = sl2.unit
        with pytest.raises(ValueError):
            Subspace(sl2, np.column_stack([e(0), 2 * e(0)]))

    def test_equality_ignores_basis(self, sl2):
        e = sl2.unit
        a = Subspace(sl2, np.column_stack([e(1), e(2)]))
        b = Subspace(sl2, np.column_stack([e(1) + e(2), e(1) - e(2)]))
        assert a == b and hash(a) == hash(b)

    def test_sum_and_intersection(self, sl2):
        e = sl2.unit
        a = Subspace(sl2, np.column_stack([e(0), e(1)]))
        b = Subspace(sl2, np.column_stack([e(1), e(2)]))
        assert (a + b).dim == 3
        assert a.intersection(b) == Subspace(sl2, e(1))

    def test_borel_is_subalgebra_not_ideal(self, sl2):
        e = sl2.unit
        b = Subspace(sl2, np.column_stack([e(0), e(1)]))
        assert b.is_subalgebra() and not b.is_ideal()

    def test_derived_series_of_borel(self, sl2):
        e = sl2.unit
        b = Subspace(sl2, np.column_stack([e(0), e(1)]))
        series = derived_series(b)
        assert [s.dim for s in series] == [2, 1, 0]

    def test_derived_subalgebra_rejects_non_subalgebra(self, sl2):
        e = sl2.unit
        with pytest.raises(ValueError):
            derived_subalgebra(Subspace(sl2, np.column_stack([e(1), e(2)])))

    def test_orthogonal_complement(self, toy):
        B = killing_form(toy)
        comp = B.orthogonal_complement(Subspace.from_indices(toy, [0, 1, 2]))
        assert comp == Subspace.from_indices(toy, [3, 4, 5])


class TestCartanSplit:
    def test_sl2(self, sl2):
        e = sl2.unit
        k = Subspace(sl2, e(1) - e(2))
        p = Subspace(sl2, np.column_stack([e(0), e(1) + e(2)]))
        assert verify_cartan_split(sl2, k, p).ok

    def test_wrong_split_reports_items(self, sl2):
        e = sl2.unit
        rep = verify_cartan_split(sl2, Subspace(sl2, e(0)), Subspace(sl2, np.column_stack([e(1), e(2)])))
        assert not rep.ok
        assert not rep.items["B negative definite on k"]


class TestMatrixBasis:
    def test_sl2_from_matrices(self):
        h = np.array([[1, 0], [0, -1]])
        e = np.array([[0, 1], [0, 0]])
        f = np.array([[0, 0], [1, 0]])
        mb = MatrixBasis([h, e, f], ["h", "e", "f"])
        assert mb.algebra == sl2r()
        assert list(mb.coords(np.array([[2, 3], [5, -2]]))) == [2, 3, 5]

    def test_not_closed(self):
        with pytest.raises(ValueError):
            MatrixBasis([np.array([[0, 1], [0, 0]]), np.array([[0, 0], [1, 0]])])

    def test_direct_sum_dimension(self):
        g = direct_sum(sl2r(), su2())
        assert g.dim == 6 and verify_jacobi(g) == 0
