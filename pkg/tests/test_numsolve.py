import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp
from scipy.linalg import eigh_tridiagonal

from conftest import sign_changes
from pdmwell.errors import BoundStateError, ConfigurationError, DomainError
from pdmwell.models import HarmonicPdmWell, SechPdmWell
from pdmwell.numsolve import (
    Grid,
    TridiagonalOperator,
    default_truncation,
    discretize,
    eigenvector,
    integrate,
    lowest_eigenvalues,
    sturm_count,
    tail_mass,
    verify_model,
)


def ones(x):
    return np.ones_like(x)


def zeros(x):
    return np.zeros_like(x)


def sech_operator(well, L=60.0, n_points=40001, delta=1e-4):
    grid = Grid.for_well(well.a, delta, L, n_points)
    return discretize(well.mass, well.potential, grid)


@pytest.fixture(scope="module")
def sech_op():
    return sech_operator(SechPdmWell(1.0, 48.0))


def test_grid():
    g = Grid.for_well(1.0, 1e-4, 60.0, 40001)
    assert g.x_lo == -1.0 + 1e-4
    assert np.allclose(np.diff(g.points), g.h, rtol=1e-9)
    with pytest.raises(ValueError):
        Grid(0.0, 1.0, 2)
    with pytest.raises(ValueError):
        Grid(1.0, 0.0, 5)
    with pytest.raises(DomainError):
        Grid.for_well(1.0, 0.0, 10.0, 11)


def test_box_spectrum():
    op = discretize(ones, zeros, Grid(0.0, math.pi, 2001))
    assert lowest_eigenvalues(op, 3) == pytest.approx([1.0, 4.0, 9.0], rel=5e-5)


def test_constant_mass_oscillator():
    op = discretize(ones, lambda x: x**2, Grid(-12.0, 12.0, 4001))
    assert lowest_eigenvalues(op, 1)[0] == pytest.approx(1.0, abs=1e-5)


def test_sech_ground_state(sech_op):
    assert lowest_eigenvalues(sech_op, 1)[0] == pytest.approx(-8.75, abs=1e-5)


def test_discretize_rejects_wall():
    well = SechPdmWell(1.0, 48.0)
    with pytest.raises(DomainError):
        discretize(well.mass, well.potential, Grid(-1.5, 5.0, 101))


def test_operator_structure(sech_op):
    assert sech_op.dimension == 39999
    assert sech_op.offdiag.shape == (39998,)
    assert np.all(sech_op.offdiag < 0)
    # flux coefficient at the first midpoint is tiny but positive
    g_first = -sech_op.offdiag[0] * sech_op.grid.h**2
    assert 0 < g_first < 1e-5
    dense = discretize(SechPdmWell(1.0, 48.0).mass, SechPdmWell(1.0, 48.0).potential, Grid(-0.9, 3.0, 9)).to_dense()
    assert np.array_equal(dense, dense.T)


def test_lowest_eigenvalues_examples():
    op = TridiagonalOperator([2.0, 2.0, 2.0], [-1.0, -1.0])
    vals = lowest_eigenvalues(op, 3)
    assert vals == pytest.approx([2 - math.sqrt(2), 2.0, 2 + math.sqrt(2)], abs=1e-10)
    assert vals[0] == pytest.approx(0.58578644, abs=1e-8)
    assert lowest_eigenvalues(TridiagonalOperator([5.0, 5.0], [0.0]), 2) == pytest.approx([5.0, 5.0], abs=1e-10)
    with pytest.raises(ValueError):
        lowest_eigenvalues(op, 4)
    with pytest.raises(ValueError):
        lowest_eigenvalues(op, 0)


@settings(max_examples=60, deadline=None)
@given(
    diag=hnp.arrays(np.float64, st.integers(2, 40), elements=st.floats(-50, 50)),
    data=st.data(),
)
def test_bisection_matches_lapack(diag, data):
    off = data.draw(hnp.arrays(np.float64, diag.size - 1, elements=st.floats(-10, 10)))
    op = TridiagonalOperator(diag, off)
    k = data.draw(st.integers(1, diag.size))
    ref = eigh_tridiagonal(diag, off, eigvals_only=True)[:k]
    assert lowest_eigenvalues(op, k) == pytest.approx(ref, abs=1e-9)


def test_sturm_count(sech_op):
    assert sturm_count(sech_op, 0.0) == 3
    assert sturm_count(sech_op, -9.0) == 0
    assert sturm_count(sech_op, -5.0) == 1


def test_eigenvector_examples():
    op = TridiagonalOperator([2.0, 2.0, 2.0], [-1.0, -1.0])
    v = eigenvector(op, 2.0)
    assert v == pytest.approx(np.array([1.0, 0.0, -1.0]) / math.sqrt(2), abs=1e-10)
    box = discretize(ones, zeros, Grid(0.0, math.pi, 2001))
    lam = lowest_eigenvalues(box, 1)[0]
    ground = eigenvector(box, lam)
    assert sign_changes(ground) == 0 and ground[0] > 0
    full = np.concatenate([[0.0], ground, [0.0]])
    assert integrate(full**2, box.grid) == pytest.approx(1.0, abs=1e-12)
    # continuum solution sqrt(2/pi) sin(x)
    assert full == pytest.approx(math.sqrt(2 / math.pi) * np.sin(box.grid.points), abs=1e-5)


def test_eigenvector_sech_excited(sech_op):
    vals = lowest_eigenvalues(sech_op, 3)
    vecs = [eigenvector(sech_op, lam) for lam in vals]
    for n, v in enumerate(vecs):
        assert sign_changes(v) == n
    grid = sech_op.grid
    for m in range(3):
        for n in range(m + 1, 3):
            full_m = np.concatenate([[0.0], vecs[m], [0.0]])
            full_n = np.concatenate([[0.0], vecs[n], [0.0]])
            assert abs(integrate(full_m * full_n, grid)) < 1e-8


def test_integrate_examples():
    g = Grid(0.0, 1.0, 101)
    assert integrate(np.ones(101), g) == pytest.approx(1.0, abs=1e-15)
    g = Grid(0.0, math.pi, 1001)
    assert integrate(np.sin(g.points), g) == pytest.approx(2.0, abs=1e-10)
    g_even = Grid(0.0, 1.0, 100)
    assert integrate(g_even.points**2, g_even) == pytest.approx(1 / 3, abs=1e-5)
    with pytest.raises(ValueError):
        integrate(np.ones(10), g)


def test_integrate_explicit_ground_state():
    g = Grid(-1.0 + 1e-6, 80.0, 80001)
    y = g.points + 1.0
    psi0 = 2 * math.sqrt(15) * y**2.5 / (y * y + 1) ** 3
    assert integrate(psi0**2, g) == pytest.approx(1.0, abs=1e-6)


def test_tail_mass():
    w = SechPdmWell(1.0, 48.0)
    # psi_2 ~ 2 sqrt(3) y^-1.5, tail ~ 6 / L^2 for large L
    assert tail_mass(w, 2, 1000.0) == pytest.approx(6.0 / 1001.0**2, rel=2e-2)
    assert tail_mass(w, 0, -1.0 + 1e-9) == pytest.approx(1.0, abs=1e-8)


def test_verify_model_sech():
    rep = verify_model(SechPdmWell(1.0, 48.0), k=3)
    assert rep.passed
    assert [r.E_numeric for r in rep.levels] == pytest.approx([-8.75, -3.75, -0.75], abs=5e-3)
    assert rep.extra and rep.extra[0]["note"].startswith("discretized continuum")
    d = rep.to_dict()
    assert list(d) == ["well", "params", "results"]


def test_verify_model_harmonic():
    w = HarmonicPdmWell(1.0, 3.0)
    rep = verify_model(w, k=4)
    assert rep.passed
    for rec, E in zip(rep.levels, [0.5, 23 / 18, 33 / 18, 39 / 18]):
        assert abs(rec.E_numeric - E) <= 5e-3 * max(1, abs(E))


def test_verify_model_contract():
    w = HarmonicPdmWell(1.0, 3.0)
    with pytest.raises(BoundStateError, match="k exceeds bound_count=4"):
        verify_model(w, k=9)
    with pytest.raises(ConfigurationError):
        verify_model(SechPdmWell(1.0, 48.0), delta=1e-4, L=20.0, n_points=2001, k=3)


def test_verify_model_reports_failure():
    # far too coarse a grid for the deep well
    rep = verify_model(SechPdmWell(1.0, 48.0), delta=1e-4, L=2000.0, n_points=2001, k=1)
    assert not rep.passed


def test_default_truncation_is_adequate():
    w = SechPdmWell(1.0, 48.0)
    delta, L, n = default_truncation(w, 3)
    assert delta == pytest.approx(1e-4)
    assert n % 2 == 1
    assert max(tail_mass(w, k, L) for k in range(3)) <= 1e-5


def test_second_order_convergence():
    w = SechPdmWell(1.0, 48.0)
    errs = []
    for n in (2501, 5001, 10001, 20001):
        errs.append(abs(lowest_eigenvalues(sech_operator(w, 60.0, n), 1)[0] + 8.75))
    ratios = [e1 / e2 for e1, e2 in zip(errs, errs[1:])]
    assert all(3.5 <= r <= 4.5 for r in ratios), ratios


def test_truncation_robustness():
    w = SechPdmWell(1.0, 48.0)
    x_lo = -1.0 + 1e-4
    short = Grid(x_lo, 60.0, 40001)
    long = Grid(x_lo, x_lo + 2 * (60.0 - x_lo), 80001)
    assert long.h == pytest.approx(short.h, rel=1e-12)
    e_short = lowest_eigenvalues(discretize(w.mass, w.potential, short), 1)[0]
    e_long = lowest_eigenvalues(discretize(w.mass, w.potential, long), 1)[0]
    assert abs(e_short - e_long) < 1e-8
