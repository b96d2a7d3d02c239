"""Finite-difference oracle for the BenDaniel-Duke equation

    -(g(x) psi')' + V(x) psi = E psi,    g = 1/M,

on a truncated interval [x_lo, x_hi] with Dirichlet ends.  The wall at x = -a
is handled by truncation at x_lo = -a + delta, never by mapping back to the
constant-mass variable, so that the check stays independent of the closed forms.

Eigenvalues come from Sturm-sequence bisection, eigenvectors from inverse
iteration.
"""
import logging
import math
from dataclasses import dataclass, field

import numba
import numpy as np
from scipy.linalg import LinAlgError, solve_banded

from .errors import BoundStateError, ConfigurationError, ConvergenceError, DomainError

__all__ = [
    "Grid",
    "TridiagonalOperator",
    "LevelRecord",
    "VerificationReport",
    "discretize",
    "sturm_count",
    "lowest_eigenvalues",
    "eigenvector",
    "integrate",
    "tail_mass",
    "default_truncation",
    "verify_model",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Grid:
    x_lo: float
    x_hi: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 3:
            raise ValueError(f"need at least 3 grid points, got {self.n_points}")
        if not self.x_hi > self.x_lo:
            raise ValueError(f"x_hi={self.x_hi} must exceed x_lo={self.x_lo}")

    @property
    def h(self):
        return (self.x_hi - self.x_lo) / (self.n_points - 1)

    @property
    def points(self):
        return np.linspace(self.x_lo, self.x_hi, self.n_points)

    @property
    def interior(self):
        return self.points[1:-1]

    @classmethod
    def for_well(cls, a, delta, L, n_points):
        if not delta > 0:
            raise DomainError(f"delta must be positive, got {delta}")
        return cls(-a + delta, L, n_points)


@dataclass(frozen=True, eq=False)
class TridiagonalOperator:
    """Symmetric tridiagonal matrix on the interior grid points.

    Only one off-diagonal is stored, so symmetry holds by representation.
    """

    diag: np.ndarray
    offdiag: np.ndarray
    grid: Grid = None

    def __post_init__(self):
        diag = np.ascontiguousarray(self.diag, dtype=float)
        offdiag = np.ascontiguousarray(self.offdiag, dtype=float)
        if diag.ndim != 1 or offdiag.shape != (max(diag.size - 1, 0),):
            raise ValueError("offdiag must have exactly one entry fewer than diag")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)

    @property
    def dimension(self):
        return self.diag.size

    def gershgorin(self):
        e = np.abs(self.offdiag)
        r = np.zeros_like(self.diag)
        r[:-1] += e
        r[1:] += e
        return float(np.min(self.diag - r)), float(np.max(self.diag + r))

    def matvec(self, v):
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out

    def to_dense(self):
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def discretize(M, V, grid: Grid) -> TridiagonalOperator:
    """Flux-conservative three-point discretization of -(1/M psi')' + V psi.

    Row i: diag = (g_{i-1/2} + g_{i+1/2})/h^2 + V(x_i), offdiag = -g_{i+1/2}/h^2,
    with g = 1/M sampled at cell midpoints.
    """
    x = grid.points
    h = grid.h
    mid = 0.5 * (x[1:] + x[:-1])
    g = 1.0 / np.asarray(M(mid), dtype=float)
    if not np.all(np.isfinite(g)) or np.any(g <= 0.0):
        raise DomainError("1/M must be finite and positive at every cell midpoint")
    v = np.asarray(V(x[1:-1]), dtype=float)
    if not np.all(np.isfinite(v)):
        raise DomainError("potential is not finite at every interior grid point")
    diag = (g[:-1] + g[1:]) / h**2 + v
    offdiag = -g[1:-1] / h**2
    return TridiagonalOperator(diag, offdiag, grid)


@numba.njit(cache=True)
def _sturm_count(d, e2, lam, pivmin):
    # number of eigenvalues strictly below lam (negative pivots of LDL^T of T - lam I)
    count = 0
    q = d[0] - lam
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, d.size):
        q = d[i] - lam - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


@numba.njit(cache=True)
def _bisect(d, e2, j, lo, hi, tol, pivmin):
    # lo has count <= j, hi has count >= j + 1
    while True:
        width = hi - lo
        scale = max(abs(lo), abs(hi))
        if width <= max(tol, 4.0 * 2.220446049250313e-16 * scale):
            break
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if _sturm_count(d, e2, mid, pivmin) > j:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _pivmin(op):
    e2 = op.offdiag**2
    emax = float(e2.max()) if e2.size else 0.0
    return np.finfo(float).tiny * max(1.0, emax), e2


def sturm_count(op: TridiagonalOperator, lam: float) -> int:
    """How many eigenvalues of ``op`` lie strictly below ``lam``."""
    pivmin, e2 = _pivmin(op)
    return int(_sturm_count(op.diag, e2, float(lam), pivmin))


def lowest_eigenvalues(op: TridiagonalOperator, k: int, tol: float = 1e-10):
    """The k smallest eigenvalues in ascending order, by Sturm bisection."""
    if not 1 <= k <= op.dimension:
        raise ValueError(f"k={k} must lie in [1, {op.dimension}]")
    pivmin, e2 = _pivmin(op)
    lo0, hi0 = op.gershgorin()
    span = max(hi0 - lo0, 1.0)
    lo0 -= 1e-12 * span + tol
    hi0 += 1e-12 * span + tol
    values = []
    lo = lo0
    for j in range(k):
        # grow an upper bracket from the lower one instead of starting at the
        # Gershgorin bound, which is ~1/h^2 and costs extra halvings
        step = max(1.0, abs(lo))
        hi = lo + step
        while hi < hi0 and _sturm_count(op.diag, e2, hi, pivmin) <= j:
            lo, hi = hi, hi + step
            step *= 2.0
        hi = min(hi, hi0)
        lam = _bisect(op.diag, e2, j, lo, hi, tol, pivmin)
        values.append(float(lam))
        lo = lo if j + 1 >= k else max(lo, lam - 2 * tol)
    return values


def _sign_fix(v):
    big = np.abs(v) > 1e-10 * np.max(np.abs(v))
    first = np.argmax(big)
    return -v if v[first] < 0 else v


def eigenvector(op: TridiagonalOperator, eigenvalue: float, max_iter: int = 50, tol: float = 1e-10):
    """Inverse-iteration eigenvector on the interior points.

    Normalized so that the quadrature of v^2 over ``op.grid`` (Dirichlet zeros
    appended at both ends) is 1, or to unit Euclidean norm when the operator
    carries no grid.  The first non-negligible component is made positive.
    """
    n = op.dimension
    scale = max(1.0, abs(eigenvalue))
    shift = eigenvalue + 1e-14 * scale
    ab = np.zeros((3, n))
    ab[0, 1:] = op.offdiag
    ab[2, :-1] = op.offdiag
    rng = np.random.default_rng(12345)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    for _ in range(max_iter):
        ab[1] = op.diag - shift
        try:
            w = solve_banded((1, 1), ab, v, check_finite=False)
        except LinAlgError:
            w = None
        if w is None or not np.all(np.isfinite(w)):
            # shift hit the eigenvalue to working precision
            shift = eigenvalue + 1e-8 * scale
            continue
        w = _sign_fix(w / np.linalg.norm(w))
        if np.max(np.abs(w - v)) < tol:
            v = w
            break
        v = w
    else:
        raise ConvergenceError(f"inverse iteration did not converge near {eigenvalue} in {max_iter} steps")
    if op.grid is not None:
        full = np.zeros(n + 2)
        full[1:-1] = v
        v = v / math.sqrt(integrate(full**2, op.grid))
    return v


def integrate(samples, grid: Grid) -> float:
    """Composite Simpson rule; with an even point count the last panel is a trapezoid."""
    f = np.asarray(samples, dtype=float)
    if f.shape != (grid.n_points,):
        raise ValueError(f"expected {grid.n_points} samples, got shape {f.shape}")
    h = grid.h
    m = f.size if f.size % 2 == 1 else f.size - 1
    total = 0.0
    if m >= 3:
        total = h / 3.0 * (f[0] + f[m - 1] + 4.0 * f[1 : m - 1 : 2].sum() + 2.0 * f[2 : m - 1 : 2].sum())
    if m < f.size:
        total += 0.5 * h * (f[-2] + f[-1])
    return float(total)


def tail_mass(well, n, x_hi, width=80.0, n_points=4001):
    """Integral of psi_n^2 over (x_hi, inf), computed in the variable s = log(x + a).

    The states decay like powers of (x + a), i.e. exponentially in s.
    """
    s0 = math.log(x_hi + well.a)
    grid = Grid(s0, s0 + width, n_points)
    y = np.exp(grid.points)
    return integrate(well.psi(n, y - well.a) ** 2 * y, grid)


@dataclass
class LevelRecord:
    n: int
    E_analytic: float
    E_numeric: float
    abs_err: float
    rel_err: float
    tol_E: float
    overlap: float
    passed: bool


@dataclass
class VerificationReport:
    well: str
    params: dict
    grid: dict
    tol_psi: float
    levels: list = field(default_factory=list)
    overlap_defects: list = field(default_factory=list)
    extra: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.levels)

    def to_dict(self):
        return {
            "well": self.well,
            "params": dict(self.params),
            "results": {
                "passed": self.passed,
                "grid": dict(self.grid),
                "tol_psi": self.tol_psi,
                "levels": [vars(r).copy() for r in self.levels],
                "overlap_defects": list(self.overlap_defects),
                "extra": [dict(e) for e in self.extra],
            },
        }


def default_truncation(well, k, tail_tol=1e-5, h_target=None, max_points=4_000_001):
    """Pick (delta, L, n_points) for ``verify_model``.

    L is the smallest of 10a, 20a, 40a, ... (at least 10) at which every
    requested level keeps less than ``tail_tol`` of its probability beyond L.
    The spacing aims at ``h_target`` (default 0.02 * min(1, a)).
    """
    a = well.a
    delta = 1e-4 * a
    L = max(10.0 * a, 10.0)
    while max(tail_mass(well, n, L) for n in range(k)) > tail_tol:
        L *= 2.0
    if h_target is None:
        h_target = 0.02 * min(1.0, a)
    n_points = int(math.ceil((L + a - delta) / h_target)) + 1
    n_points += 1 - n_points % 2
    if n_points > max_points:
        log.warning("capping n_points at %d (wanted %d)", max_points, n_points)
        n_points = max_points
    return delta, L, n_points


def verify_model(well, delta=None, L=None, n_points=None, k=None, tol_E_rel=5e-3, tol_psi=1e-4):
    """Compare the analytic spectrum and states of ``well`` with the finite-difference oracle.

    A level passes iff |E_num - E| <= tol_E_rel * max(1, |E|) and the overlap of
    the normalized analytic and numeric states is at least 1 - tol_psi.
    Unspecified grid settings come from ``default_truncation``.
    """
    if k is None:
        k = well.bound_count
    if not 1 <= k <= well.bound_count:
        raise BoundStateError(f"k exceeds bound_count={well.bound_count}" if k > 0 else "k must be >= 1")
    if delta is None or L is None or n_points is None:
        d0, L0, n0 = default_truncation(well, k)
        delta = d0 if delta is None else delta
        L = L0 if L is None else L
        n_points = n0 if n_points is None else n_points
    grid = Grid.for_well(well.a, delta, L, n_points)
    for n in range(k):
        tail = tail_mass(well, n, grid.x_hi)
        if tail > tol_psi:
            raise ConfigurationError(
                f"truncation at L={grid.x_hi} drops probability {tail:.3g} of level {n} (> {tol_psi})"
            )

    op = discretize(well.mass, well.potential, grid)
    n_eig = min(k + 1, op.dimension)
    numeric = lowest_eigenvalues(op, n_eig)
    report = VerificationReport(
        well=well.kind,
        params=well.params(),
        grid={"delta": delta, "L": L, "n_points": n_points, "h": grid.h},
        tol_psi=tol_psi,
    )
    x = grid.points
    for n in range(k):
        E = well.energy(n)
        E_num = numeric[n]
        err = abs(E_num - E)
        tol_E = tol_E_rel * max(1.0, abs(E))
        vec = np.zeros(grid.n_points)
        vec[1:-1] = eigenvector(op, E_num)
        exact = np.zeros(grid.n_points)
        exact[1:] = well.psi(n, x[1:])
        overlap = abs(integrate(exact * vec, grid))
        ok = err <= tol_E and overlap >= 1.0 - tol_psi
        report.levels.append(
            LevelRecord(n, E, E_num, err, err / max(abs(E), 1e-300), tol_E, overlap, ok)
        )
        report.overlap_defects.append(1.0 - overlap)
    for j in range(k, n_eig):
        if numeric[j] >= well.threshold:
            note = "discretized continuum - not compared"
        else:
            note = "bound level not requested"
        report.extra.append({"index": j, "E_numeric": numeric[j], "note": note})
    return report
