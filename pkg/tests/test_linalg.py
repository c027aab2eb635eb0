from fractions import Fraction

from kratzer_sga.linalg import QPoly, det, nullspace, poly_det, rational_roots, solve_parametric


def test_nullspace_and_det():
    rows = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
    basis = nullspace(rows, 3)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    assert det([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]) == 1


def test_rational_roots():
    # (3E + 1)(E + 1)(E^2 - 2)
    p = QPoly([1, 3]) * QPoly([1, 1]) * QPoly([-2, 0, 1])
    assert rational_roots(p) == [Fraction(-1), Fraction(-1, 3)]
    assert rational_roots(QPoly([1, 0, 1])) == []


def test_poly_det_by_interpolation():
    E = QPoly.var()
    m = [[E, QPoly.const(1)], [QPoly.const(2), E]]
    assert poly_det(m) == E * E - 2


def test_solve_parametric_simple():
    E = QPoly.var()
    # [[E - 1/9, 0], [0, 1]] is singular only at E = 1/9
    rows = [[E - Fraction(1, 9), QPoly()], [QPoly(), QPoly.const(1)]]
    out = solve_parametric(rows, 2)
    assert [e for e, _ in out] == [Fraction(1, 9)]
