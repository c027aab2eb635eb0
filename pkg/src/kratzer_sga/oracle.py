"""Finite-difference eigenvalue oracle for -u'' + V(x) u = lambda u on a
truncated half-line with Dirichlet ends.

Eigenvalues of the symmetric tridiagonal matrix come from bisection on
Sturm (inertia) counts, which is deterministic and needs no LAPACK.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import parse_rational
from .spectrum import Branch, discrete_energy

DEFAULT_M = 20000
DEFAULT_TOL = 1e-11
# Dirichlet wall position relative to 1/D.  A wall at distance eps shifts a
# level by roughly |u'(0)|^2 eps, so it has to sit well below the grid error.
X_MIN_FACTOR = 1e-6


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    m: int

    def __post_init__(self):
        if not (0 <= self.x_min < self.x_max):
            raise ValueError(f"need 0 <= x_min < x_max, got {self.x_min}, {self.x_max}")
        if self.m < 1:
            raise ValueError(f"need m >= 1 interior points, got {self.m}")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.m + 1)

    def points(self) -> np.ndarray:
        return self.x_min + self.h * np.arange(1, self.m + 1)


@dataclass
class TriMatrix:
    diag: list
    off: list

    def __post_init__(self):
        if len(self.off) != max(len(self.diag) - 1, 0):
            raise ValueError("off-diagonal length must be len(diag) - 1")

    @property
    def size(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)


def discretize(V, grid: Grid) -> TriMatrix:
    """Three-point stencil: diag = 2/h^2 + V(x_i), off = -1/h^2."""
    x = grid.points()
    try:
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            v = np.asarray(V(x), dtype=float) * np.ones_like(x)
    except ZeroDivisionError:
        raise ValueError("potential is singular at a grid point") from None
    bad = ~np.isfinite(v)
    if bad.any():
        raise ValueError(f"potential is not finite at x = {x[bad][0]!r}")
    h2 = grid.h ** 2
    return TriMatrix((2.0 / h2 + v).tolist(), [-1.0 / h2] * (grid.m - 1))


class _Sturm:
    def __init__(self, t: TriMatrix):
        self.d = [float(v) for v in t.diag]
        self.e2 = [float(v) * float(v) for v in t.off]
        scale = max((abs(v) for v in self.d), default=1.0) + 2 * max(
            (math.sqrt(v) for v in self.e2), default=0.0)
        self.pivmin = max(scale, 1.0) * 1e-300

    def count(self, sigma: float) -> int:
        """Number of eigenvalues strictly below sigma."""
        d, e2, pivmin = self.d, self.e2, self.pivmin
        q = d[0] - sigma
        if abs(q) < pivmin:
            q = -pivmin
        neg = 1 if q < 0 else 0
        for i in range(1, len(d)):
            q = d[i] - sigma - e2[i - 1] / q
            if abs(q) < pivmin:
                q = -pivmin
            if q < 0:
                neg += 1
        return neg

    def gershgorin(self):
        n = len(self.d)
        lo, hi = math.inf, -math.inf
        for i in range(n):
            r = 0.0
            if i > 0:
                r += math.sqrt(self.e2[i - 1])
            if i < n - 1:
                r += math.sqrt(self.e2[i])
            lo = min(lo, self.d[i] - r)
            hi = max(hi, self.d[i] + r)
        pad = 1e-12 * max(abs(lo), abs(hi), 1.0)
        return lo - pad, hi + pad


def _bisect_index(st: _Sturm, idx: int, lo: float, hi: float, tol: float) -> float:
    """Eigenvalue number idx (0-based) inside the bracket [lo, hi]."""
    while hi - lo > 2 * tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if st.count(mid) >= idx + 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def lowest_eigenvalues(t: TriMatrix, k: int, tol: float = DEFAULT_TOL) -> list[float]:
    """The k smallest eigenvalues in ascending order, each within tol."""
    if not (1 <= k <= t.size):
        raise ValueError(f"k must satisfy 1 <= k <= {t.size}, got {k}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    st = _Sturm(t)
    lo0, hi0 = st.gershgorin()
    out = []
    lo = lo0
    for idx in range(k):
        val = _bisect_index(st, idx, lo, hi0, tol)
        out.append(val)
        lo = max(lo0, val - 2 * tol)
    return out


def eigenvalue_nearest_zero(t: TriMatrix, tol: float = DEFAULT_TOL) -> float:
    st = _Sturm(t)
    lo0, hi0 = st.gershgorin()
    below = st.count(0.0)
    cands = []
    if below > 0:
        cands.append(_bisect_index(st, below - 1, lo0, 0.0, tol))
    if below < t.size:
        cands.append(_bisect_index(st, below, 0.0, hi0, tol))
    return min(cands, key=abs)


# ------------------------------------------------------------ radial problem

@dataclass
class LevelRecord:
    n: int
    closed_form: str
    numeric: float
    rel_error: float
    coarse: float
    fine: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SpectrumReport:
    C: str
    D: str
    levels: list = field(default_factory=list)
    grid: dict = field(default_factory=dict)
    converged: bool = False
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "C": self.C,
            "D": self.D,
            "levels": [lv.to_dict() for lv in self.levels],
            "grid": self.grid,
            "converged": self.converged,
            "notes": self.notes,
        }

    def render(self) -> str:
        lines = [f"C = {self.C}, D = {self.D}  (plus branch; grid {self.grid})",
                 f"{'n':>3}  {'closed form':>14}  {'numeric':>16}  {'rel error':>10}"]
        for lv in self.levels:
            lines.append(f"{lv.n:>3}  {lv.closed_form:>14}  {lv.numeric:>16.10f}  {lv.rel_error:>10.2e}")
        lines.append(f"converged: {self.converged}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def radial_potential(C, D):
    c, d = float(C), float(D)
    return lambda x: -c / x ** 2 - d / x


def radial_grid(D, k: int, m: int = DEFAULT_M) -> Grid:
    d = float(D)
    return Grid(X_MIN_FACTOR / d, 40.0 * k * k / d, m)


def solve_radial(C, D, k: int, m: int = DEFAULT_M, tol: float = DEFAULT_TOL) -> SpectrumReport:
    """Lowest k levels on two grids (h and h/2), Richardson-extrapolated and
    compared with the plus-branch closed form."""
    C, D = parse_rational(C), parse_rational(D)
    if D <= 0 or 1 - 4 * C < 0:
        raise ValueError("plus-branch levels need D > 0 and 1 - 4C >= 0")
    if C > Fraction(1, 4):
        raise ValueError("C > 1/4 is outside the supported range")
    if k < 1:
        raise ValueError("k must be >= 1")
    coarse_grid = radial_grid(D, k, m)
    fine_grid = Grid(coarse_grid.x_min, coarse_grid.x_max, 2 * m + 1)  # exactly h/2
    V = radial_potential(C, D)
    coarse = lowest_eigenvalues(discretize(V, coarse_grid), k, tol)
    fine = lowest_eigenvalues(discretize(V, fine_grid), k, tol)
    rep = SpectrumReport(str(C), str(D), grid={
        "x_min": coarse_grid.x_min, "x_max": coarse_grid.x_max,
        "m": [coarse_grid.m, fine_grid.m], "h": [coarse_grid.h, fine_grid.h]})
    converged = True
    for n in range(k):
        exact = discrete_energy(C, D, n, Branch.PLUS).E_hat
        ef = float(exact)
        extrap = (4 * fine[n] - coarse[n]) / 3
        rel = abs(extrap - ef) / abs(ef)
        rep.levels.append(LevelRecord(n, str(exact), extrap, rel, coarse[n], fine[n]))
        if abs(extrap - fine[n]) > 1e-4 * abs(extrap):
            converged = False
    rep.converged = converged
    rep.notes.append("only the plus branch is checked: minus-branch solutions are not normalizable")
    return rep


def convergence_ratio(C, D, n: int = 0, m: int = 2000, tol: float = 1e-13) -> float:
    """(E_h - E_h/2) / (E_h/2 - E_h/4); about 4 for a second-order stencil."""
    C, D = parse_rational(C), parse_rational(D)
    g = radial_grid(D, n + 1, m)
    V = radial_potential(C, D)
    vals = []
    mm = m
    for _ in range(3):
        grid = Grid(g.x_min, g.x_max, mm)
        vals.append(lowest_eigenvalues(discretize(V, grid), n + 1, tol)[n])
        mm = 2 * mm + 1
    return (vals[0] - vals[1]) / (vals[1] - vals[2])


# ------------------------------------------------------------ family zero modes

W_LIMIT = 1e12


def zero_mode_residual(gp, grid: Grid, tol: float = 1e-10) -> float:
    """Smallest |eigenvalue| of -u'' - bracket(x) u on the grid."""
    w = gp.bracket_callable()
    V = lambda x: -w(x)
    x = grid.points()
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        vals = np.abs(np.asarray(V(x), dtype=float) * np.ones_like(x))
    if not np.all(np.isfinite(vals)) or vals.max() > W_LIMIT:
        ok = np.isfinite(vals) & (vals <= W_LIMIT)
        bad_hi = x[~ok & (x > 0.5 * (grid.x_min + grid.x_max))]
        suggestion = float(bad_hi[0]) * 0.9 if bad_hi.size else None
        raise ValueError(f"potential exceeds {W_LIMIT:g} on the grid; "
                         f"suggested x_max = {suggestion}")
    return abs(eigenvalue_nearest_zero(discretize(V, grid), tol))


def auto_zero_mode_grid(gp, m: int = 40000, decay: float = 40.0) -> Grid:
    """Heuristic domain: walk outward until the WKB decay integral reaches
    ``decay`` past the last classically allowed point."""
    w = gp.bracket_callable()
    xs = np.geomspace(1e-4, 1e4, 200001)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        V = -np.asarray(w(xs), dtype=float)
    allowed = np.where(V < 0)[0]
    if allowed.size == 0:
        raise ValueError("bracket has no classically allowed region")
    lo_i, hi_i = allowed[0], allowed[-1]
    k = np.sqrt(np.clip(V, 0, None))
    dx = np.diff(xs)
    acc, j = 0.0, hi_i
    while j < len(xs) - 1 and acc < decay:
        acc += k[j] * dx[j]
        j += 1
    x_max = xs[j]
    x_min = xs[lo_i] * 1e-4
    return Grid(float(x_min), float(x_max), m)
