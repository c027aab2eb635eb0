from fractions import Fraction

import pytest

from kratzer_sga.exact import Radical
from kratzer_sga.spectrum import (
    Branch, RadialProblem, SpectrumError, continuous_lambda, discrete_energy,
    quantization_residual, spectrum_table, tilt_is_valid, tilt_theta, to_abc,
)


def hydrogen_like(n):
    # independent oracle: C = 0 gives -D^2 / (2n + 2)^2
    return Fraction(-1, 4 * (n + 1) ** 2)


@pytest.mark.parametrize("n", range(6))
def test_coulomb_levels(n):
    assert discrete_energy(0, 1, n, Branch.PLUS).E_hat == hydrogen_like(n)


def test_minus_branch_enhanced_level():
    assert discrete_energy(Fraction(-3, 4), 1, 1, "minus").E_hat == -1
    assert discrete_energy(-2, 2, 2, "minus").E_hat == -1


def test_to_abc():
    co = to_abc(RadialProblem(0, 1, Fraction(-1, 4)))
    assert (co.a, co.b, co.c) == (Fraction(-3, 4), -1, 4)


def test_irrational_level_round_trip():
    lvl = discrete_energy(Fraction(1, 5), 1, 0, Branch.PLUS)
    assert isinstance(lvl.E_hat, Radical)
    co = to_abc(RadialProblem(Fraction(1, 5), 1, lvl.E_hat))
    assert quantization_residual(co, 0, Branch.PLUS) == 0


@pytest.mark.parametrize("C,D,n,branch", [
    (1, 1, 0, "plus"),          # complex root
    (0, 0, 0, "plus"),          # D <= 0
    (Fraction(-3, 4), 1, 0, "minus"),  # (2n+1) - 2 < 0
])
def test_rejections(C, D, n, branch):
    with pytest.raises(SpectrumError):
        discrete_energy(C, D, n, branch)


def test_table_marks_rejected_rows():
    rows = spectrum_table(Fraction(-3, 4), 1, 1, "minus")
    assert "rejected" in rows[0]
    assert rows[1]["E_hat"] == {"num": "-1", "den": "1"}


def test_tilt_angles():
    assert tilt_theta(-1, "discrete") == Fraction(-15, 2) / Fraction(17, 2) * -1
    assert tilt_theta(-1, "continuous") == Fraction(17, 15)
    assert tilt_is_valid(Fraction(15, 17))
    assert not tilt_is_valid(Fraction(17, 15))


def test_continuous_lambda():
    assert continuous_lambda(-4, 4) == Fraction(-1, 2)


def test_branch_parse():
    assert Branch.parse("PLUS") is Branch.PLUS
    with pytest.raises(ValueError):
        Branch.parse("up")
