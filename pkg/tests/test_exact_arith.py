from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from pauli_cone.exact_arith import (
    GaussRat,
    I_G,
    RatMatrix,
    kron,
    lp_feasible,
    primitive,
    rank,
)
from pauli_cone.pauli_maps import K

small = st.fractions(min_value=-3, max_value=3, max_denominator=6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        RatMatrix.from_rows
    )


def test_kron_k_k_first_row():
    """First row of K (x) K, hand-expanded."""
    expected = [Fraction(x, 4) for x in (1, -1, -1, -1, -1, 1, 1, 1, -1, 1, 1, 1, -1, 1, 1, 1)]
    assert list(kron(K, K).row(0)) == expected


@given(matrices(2, 3), matrices(3, 2), matrices(2, 2), matrices(2, 2))
@settings(max_examples=40, deadline=None)
def test_kron_mixed_product(a, c, b, d):
    """(A x B)(C x D) = AC x BD."""
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


def test_rank_examples():
    """Full rank for K, drop for a repeated row."""
    assert rank(K) == 4
    assert rank([[1, 2, 3], [2, 4, 6], [0, 1, 1]]) == 2
    assert rank([[0, 0], [0, 0]]) == 0


@given(st.lists(st.lists(st.integers(-2, 2), min_size=5, max_size=5), min_size=1, max_size=6))
@settings(max_examples=60, deadline=None)
def test_rank_matches_numpy(rows):
    """Bareiss rank agrees with a floating-point SVD on small integer matrices."""
    assert rank(rows) == np.linalg.matrix_rank(np.array(rows, dtype=float))


def test_gauss_rat_arithmetic():
    """i*i = -1 and conjugation."""
    assert I_G * I_G == -1
    z = GaussRat(Fraction(1, 2), Fraction(3))
    assert z * z.conj() == Fraction(1, 4) + 9
    assert (z + 1) - z == 1


def test_primitive():
    assert primitive([Fraction(1, 2), Fraction(3, 4), 0]) == (2, 3, 0)
    assert primitive([0, 0]) == (0, 0)


def test_lp_transpose_split():
    """The transpose map's multipliers split with a purely copositive part."""
    half = Fraction(1, 2)
    dt = [[half, half, half, half], [half, half, -half, -half], [half, -half, half, -half], [half, -half, -half, half]]
    dtt = [[half, half, half, half], [-half, -half, half, half], [-half, half, -half, half], [-half, half, half, -half]]
    rows = [dt[i] + dtt[i] for i in range(4)]
    x = lp_feasible(rows, [1, 1, 1, -1])
    assert x is not None and all(v >= 0 for v in x)


def test_lp_infeasible_and_errors():
    assert lp_feasible([[1, 1]], [-1]) is None
    assert lp_feasible([[1, -1]], [-1]) == [0, 1]
    with pytest.raises(ValueError):
        lp_feasible([[1, 1]], [1, 2])
    with pytest.raises(ValueError):
        lp_feasible([[1, 1], [1]], [1, 2])


def test_lp_free_variables():
    """A free variable may go negative."""
    x = lp_feasible([[1, 1]], [-3], nonneg_vars=[1])
    assert x is not None and x[0] + x[1] == -3 and x[1] >= 0


@given(
    st.lists(st.lists(st.integers(-3, 3), min_size=6, max_size=6), min_size=1, max_size=4),
    st.lists(st.integers(0, 4), min_size=6, max_size=6),
)
@settings(max_examples=60, deadline=None)
def test_lp_finds_planted_point(a, x0):
    """Systems built from a nonnegative point are feasible and the answer is exact."""
    b = [sum(r * v for r, v in zip(row, x0)) for row in a]
    x = lp_feasible(a, b)
    assert x is not None
    assert all(v >= 0 for v in x)
    assert all(sum(r * v for r, v in zip(row, x)) == rhs for row, rhs in zip(a, b))


@given(
    st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=2, max_size=4),
    st.lists(st.integers(-5, 5), min_size=4, max_size=4),
)
@settings(max_examples=80, deadline=None)
def test_lp_feasibility_matches_scipy(a, b):
    """Feasibility verdict agrees with a floating-point LP on well-scaled integer data."""
    b = b[: len(a)]
    ours = lp_feasible(a, b) is not None
    res = linprog(np.zeros(4), A_eq=np.array(a, float), b_eq=np.array(b, float), bounds=[(0, None)] * 4,
                  method="highs")
    assert ours == (res.status == 0)
