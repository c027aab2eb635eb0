import math
from fractions import Fraction

import numpy as np
import pytest

from kratzer_sga.family import family_members
from kratzer_sga.oracle import (
    Grid, TriMatrix, auto_zero_mode_grid, convergence_ratio, discretize, lowest_eigenvalues,
    solve_radial, zero_mode_residual,
)


def test_three_by_three():
    t = TriMatrix([2.0, 2.0, 2.0], [-1.0, -1.0])
    vals = lowest_eigenvalues(t, 3, 1e-12)
    for v, e in zip(vals, [2 - math.sqrt(2), 2, 2 + math.sqrt(2)]):
        assert abs(v - e) < 1e-11


def test_one_by_one():
    assert abs(lowest_eigenvalues(TriMatrix([5.0], []), 1)[0] - 5) < 1e-10


def test_discretize_stencil():
    g = Grid(0.0, 4.0, 3)
    assert g.h == 1
    t = discretize(lambda x: 0 * x, g)
    assert t.diag == [2.0, 2.0, 2.0] and t.off == [-1.0, -1.0]
    t = discretize(lambda x: -1 / x, g)
    assert np.allclose(t.diag, [1, 1.5, 5 / 3])


def test_discretize_rejects_pole():
    with pytest.raises(ValueError):
        discretize(lambda x: 1 / (x - 2), Grid(0.0, 4.0, 3))


def test_argument_checks():
    t = TriMatrix([1.0, 2.0], [0.5])
    with pytest.raises(ValueError):
        lowest_eigenvalues(t, 3)
    with pytest.raises(ValueError):
        lowest_eigenvalues(t, 1, tol=0)
    with pytest.raises(ValueError):
        Grid(1.0, 0.5, 10)


def test_coulomb_scaling_covariance():
    rep = solve_radial(Fraction(-3, 4), 2, 1, m=4000)
    assert rep.levels[0].closed_form == "-4/9"
    assert rep.levels[0].rel_error < 1e-3


def test_second_order_convergence():
    assert 3 <= convergence_ratio(0, 1, 0, m=1000) <= 5


def test_zero_mode_fixed_grid():
    (gp,) = family_members(0, 1, 0, "plus", [3])
    assert zero_mode_residual(gp, Grid(0.05, 2.2, 40000)) < 1e-2


def test_zero_mode_overflow_suggests_x_max():
    (gp,) = family_members(0, 1, 0, "plus", [3])
    with pytest.raises(ValueError, match="suggested x_max"):
        zero_mode_residual(gp, Grid(0.05, 50.0, 1000))


def test_zero_mode_for_p_half():
    (gp,) = family_members(0, 1, 0, "plus", [Fraction(1, 2)])
    assert zero_mode_residual(gp, auto_zero_mode_grid(gp)) < 1e-4
