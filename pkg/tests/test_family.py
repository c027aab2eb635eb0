from fractions import Fraction

import pytest

from kratzer_sga.family import (
    family_members, invert_to_radial, retransform, substitution_residual, transform_problem,
)
from kratzer_sga.spectrum import RadialProblem, SGACoefficients, to_abc

CO = SGACoefficients(Fraction(-3, 4), Fraction(-1), Fraction(4))


def test_p3_member():
    gp = transform_problem(CO, 3)
    assert gp.inv_square_coeff == Fraction(-35, 4)
    assert gp.power_terms == ((-9, 10), (36, 4))
    assert gp.wavefunction_exponent == 1


def test_p1_is_identity():
    gp = transform_problem(CO, 1)
    assert gp.inv_square_coeff == CO.a
    assert gp.power_terms == ((CO.b, 2), (CO.c, 0))


def test_p_two_thirds():
    gp = transform_problem(CO, Fraction(2, 3))
    a = CO.a
    assert gp.inv_square_coeff == Fraction(5, 36) + Fraction(4, 9) * a
    assert gp.power_terms == ((Fraction(4, 9) * CO.b, Fraction(2, 3)),
                              (Fraction(4, 9) * CO.c, Fraction(-2, 3)))
    assert gp.wavefunction_exponent == Fraction(-1, 6)


@pytest.mark.parametrize("abc,expected", [
    ((Fraction(-3, 4), -1, 4), (0, 1, Fraction(-1, 4))),
    ((0, 0, 0), (Fraction(3, 16), 0, 0)),
    ((Fraction(-15, 4), -1, 2), (Fraction(-3, 4), Fraction(1, 2), Fraction(-1, 4))),
])
def test_invert_to_radial(abc, expected):
    co = SGACoefficients(*(Fraction(v) for v in abc))
    rp = invert_to_radial(transform_problem(co, Fraction(1, 2)))
    assert rp == RadialProblem(*expected)


def test_invert_rejects_other_p():
    with pytest.raises(ValueError):
        invert_to_radial(transform_problem(CO, 3))


@pytest.mark.parametrize("p", [3, 2, 1, Fraction(1, 2), Fraction(2, 3), Fraction(1, 3)])
def test_change_of_variables_is_exact(p):
    assert substitution_residual(CO, p).is_zero()


@pytest.mark.parametrize("p,q", [(2, Fraction(1, 2)), (3, Fraction(1, 3))])
def test_group_law(p, q):
    twice = retransform(transform_problem(CO, p), q)
    once = transform_problem(CO, p * q)
    assert (twice.inv_square_coeff, twice.power_terms, twice.wavefunction_exponent) == \
        (once.inv_square_coeff, once.power_terms, once.wavefunction_exponent)


def test_family_members_certificate():
    (gp,) = family_members(0, 1, 0, "plus", [3])
    assert gp.inv_square_coeff == Fraction(-35, 4)
    assert gp.certificate["E_hat"] == "-1/4"
    (back,) = family_members(Fraction(-3, 4), 1, 0, "plus", [Fraction(1, 2)])
    assert invert_to_radial(back) == RadialProblem(Fraction(-3, 4), 1, Fraction(-1, 9))
    assert to_abc(invert_to_radial(back)).c == 4


def test_nonpositive_p():
    with pytest.raises(ValueError):
        transform_problem(CO, 0)
