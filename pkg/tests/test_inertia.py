import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zqforce import families as F
from zqforce.inertia import (
    Inertia,
    NoConvergence,
    SymmetricMatrix,
    adjacency,
    direct_sum,
    eigenvalues_symmetric,
    expected_witness_inertia,
    inertia_of,
    pattern_matches,
    star_adjacency,
    star_forest_of_leaves,
    star_witness,
    verify_remark,
)
from zqforce.bounds import star_forest_zq


@st.composite
def symmetric(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    vals = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
    a = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = draw(vals)
    return SymmetricMatrix.from_rows(a)


def test_rejects_bad_matrices():
    with pytest.raises(ValueError):
        SymmetricMatrix.from_rows([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        SymmetricMatrix.from_rows([[1, 2]])


def test_analytic_spectra():
    # star with m leaves: +-sqrt(m) and m-1 zeros
    ev = eigenvalues_symmetric(star_adjacency(4))
    assert ev == pytest.approx([-2, 0, 0, 0, 2], abs=1e-12)
    # cycle C_n: 2 cos(2 pi j / n)
    n = 7
    want = sorted(2 * math.cos(2 * math.pi * j / n) for j in range(n))
    assert eigenvalues_symmetric(adjacency(F.cycle(n))) == pytest.approx(want, abs=1e-12)
    # path P_n: 2 cos(pi j / (n+1))
    want = sorted(2 * math.cos(math.pi * j / (n + 1)) for j in range(1, n + 1))
    assert eigenvalues_symmetric(adjacency(F.path(n))) == pytest.approx(want, abs=1e-12)
    assert eigenvalues_symmetric(SymmetricMatrix.zeros(3)) == [0.0, 0.0, 0.0]


@given(symmetric())
def test_eigenvalues_match_numpy(m):
    ours = eigenvalues_symmetric(m)
    ref = np.linalg.eigvalsh(np.array(m.rows))
    scale = max(1.0, float(np.max(np.abs(ref))))
    assert np.allclose(ours, ref, atol=1e-9 * scale)


@given(symmetric())
def test_trace_and_frobenius_are_preserved(m):
    ev = eigenvalues_symmetric(m)
    scale = max(1.0, m.frobenius_sq())
    assert sum(ev) == pytest.approx(m.trace(), abs=1e-9 * scale)
    assert sum(x * x for x in ev) == pytest.approx(m.frobenius_sq(), rel=1e-9, abs=1e-9)


@given(symmetric(6), st.integers(0, 10**6))
def test_inertia_is_a_congruence_invariant(m, seed):
    rng = np.random.default_rng(seed)
    n = m.order
    s = rng.normal(size=(n, n)) + n * np.eye(n)  # comfortably invertible
    a = np.array(m.rows)
    b = s.T @ a @ s
    b = (b + b.T) / 2
    ours = inertia_of(m, zero_tol=1e-7)
    theirs = inertia_of(SymmetricMatrix.from_rows(b.tolist()), zero_tol=1e-7)
    # skip matrices with eigenvalues near the zero threshold
    ev = np.linalg.eigvalsh(a)
    big = max(1.0, float(np.max(np.abs(ev))))
    if np.all((np.abs(ev) > 1e-4 * big) | (np.abs(ev) == 0)):
        assert ours == theirs


def test_inertia_counts():
    assert inertia_of(star_adjacency(3)) == Inertia(1, 1, 2)
    assert inertia_of(star_adjacency(3).shifted(math.sqrt(3))) == Inertia(3, 0, 1)
    assert inertia_of(direct_sum([star_adjacency(2), star_adjacency(1)])) == Inertia(2, 2, 1)


def test_no_convergence_is_reported():
    with pytest.raises(NoConvergence):
        eigenvalues_symmetric(adjacency(F.cycle(9)), max_sweeps=1)


def test_witness_pattern_and_order():
    m = star_witness([4, 3], 1)
    g = star_forest_of_leaves([4, 3])
    assert m.order == g.n == 9 and pattern_matches(m, g)
    with pytest.raises(ValueError):
        star_witness([3, 4], 1)
    with pytest.raises(ValueError):
        pattern_matches(m, F.path(4))


@pytest.mark.parametrize("leaves", [[3], [4, 3], [5, 4, 3], [3, 3, 3, 3]])
@pytest.mark.parametrize("q", [0, 1, 2, 5])
def test_remark_witnesses(leaves, q):
    sizes = [m + 1 for m in leaves]
    z = star_forest_zq(sizes, q)
    rep = verify_remark(leaves, q, z)
    assert rep.ok, rep.checks
    neg, nul = expected_witness_inertia(leaves, q)
    assert rep.inertia.negative == neg and rep.inertia.nullity == nul
    ref = np.linalg.eigvalsh(np.array(star_witness(leaves, q).rows))
    assert int(np.sum(np.abs(ref) < 1e-8)) == nul
    assert int(np.sum(ref < -1e-8)) == neg
