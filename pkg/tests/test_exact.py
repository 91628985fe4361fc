from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from einshom import _exact as ex

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda r: ex.as_exact(np.array(r, dtype=object)))


class TestConversion:
    @pytest.mark.parametrize("raw, want", [(3, Fraction(3)), ("2/6", Fraction(1, 3)), (0.5, Fraction(1, 2)),
                                           (np.int64(-4), Fraction(-4))])
    def test_frac(self, raw, want):
        assert ex.frac(raw) == want

    def test_frac_rejects_nan(self):
        with pytest.raises(ValueError):
            ex.frac(float("nan"))

    def test_fmt_roundtrip(self):
        for x in (Fraction(7, 3), Fraction(-2), Fraction(0)):
            assert ex.frac(ex.fmt(x)) == x
        assert ex.fmt(Fraction(4, 2)) == "2"


class TestLinearAlgebra:
    @given(matrices(3, 4))
    def test_rank_nullity(self, A):
        assert ex.rank(A) + ex.nullspace(A).shape[1] == 4

    @given(matrices(3, 4))
    def test_nullspace_is_kernel(self, A):
        N = ex.nullspace(A)
        if N.shape[1]:
            assert ex.is_zero(ex.exact_matmul(A, N))

    @given(matrices(3, 3))
    def test_inverse(self, A):
        if ex.rank(A) < 3:
            with pytest.raises(Exception):
                ex.inverse(A)
        else:
            assert np.all(ex.exact_matmul(A, ex.inverse(A)) == ex.identity(3))

    def test_positive_definite(self):
        assert ex.is_positive_definite(ex.as_exact([[2, 1], [1, 2]]))
        assert not ex.is_positive_definite(ex.as_exact([[1, 2], [2, 1]]))
        assert not ex.is_positive_definite(ex.as_exact([[1, 0], [0, 0]]))

    def test_charpoly(self):
        # x^2 - 5x + 6 for diag(2, 3)
        assert [ex.frac(c) for c in ex.charpoly_coeffs(ex.as_exact([[2, 0], [0, 3]]))] == [1, -5, 6]

    def test_lcm_denominator(self):
        assert ex.lcm_denominator([Fraction(1, 4), Fraction(5, 6), Fraction(2)]) == 12
