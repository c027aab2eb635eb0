from fractions import Fraction

import pytest

from kratzer_sga.expoly import ExpPoly, ONE, X, ZERO
from kratzer_sga.spectrum import discrete_energy
from kratzer_sga.symmetry import (
    FREE_PARTICLE_Q, FieldError, ansatz_solve, ansatz_solve_all, beta_ode_residual,
    build_vector_field, determining_residual, free_particle_fields, hermite, kratzer_Q,
    kratzer_closed_solution, n1_Q, n1_field, oscillator_beta_solve, oscillator_field_check,
    oscillator_Q, oscillator_state, perturbed_fields, shaped_field, solves_equation,
)

HALF = Fraction(1, 2)


def test_beta_ode_examples():
    beta = ExpPoly.monomial(1, -1) + ONE
    assert beta_ode_residual(Fraction(-3, 4), HALF, Fraction(-1, 4), beta).is_zero()
    assert beta_ode_residual(1, 2, 3, ZERO).is_zero()
    broken = beta_ode_residual(Fraction(-3, 4), HALF, Fraction(-1, 4), ExpPoly.monomial(1, -1))
    assert not broken.is_zero()


def test_n1_solution():
    s = ansatz_solve(1)
    assert (s.C, s.E_over_D2) == (Fraction(-3, 4), -1)
    g = s.g(Fraction(5, 3))
    assert g[0] == 2 * Fraction(5, 3) * g[1]


def test_n2_solution_ratios():
    s = ansatz_solve(2)
    assert (s.C, s.E_over_D2) == (-2, Fraction(-1, 4))
    D = Fraction(3)
    g = s.g(D)
    assert g[1] == D * g[2]
    assert g[0] == D / 2 * g[1]
    # the g0 relation in terms of E also holds: g0 = -(2E/D) g1
    assert g[0] == -2 * s.E_hat(D) / D * g[1]
    assert s.notes


def test_n3_has_two_rational_roots():
    roots = ansatz_solve_all(3)
    assert [r.E_over_D2 for r in roots] == [Fraction(-1, 9), -1]
    principal = ansatz_solve(3)
    g = principal.g(1)
    assert g[3] == Fraction(3, 2) * g[2]
    # the second root is the n = 2 minus-branch level at C = -15/4
    assert discrete_energy(Fraction(-15, 4), 1, 2, "minus").E_hat == roots[1].E_over_D2


@pytest.mark.parametrize("N", range(1, 9))
def test_general_law(N):
    s = ansatz_solve(N)
    assert s.C == Fraction(-N * (N + 2), 4)
    assert s.E_over_D2 == Fraction(-1, N * N)
    for D in (Fraction(1, 3), Fraction(2), Fraction(7, 5)):
        assert beta_ode_residual(s.C, D, s.E_hat(D), s.beta(D)).is_zero()


def test_ansatz_rejects_bad_degree():
    with pytest.raises(ValueError):
        ansatz_solve(0)


@pytest.mark.parametrize("neg,pos", [(1, 0), (3, 3), (0, 0)])
def test_oscillator_has_no_laurent_beta(neg, pos):
    assert oscillator_beta_solve(neg, pos) is None


def test_n1_field_is_symmetry():
    assert determining_residual(n1_Q(HALF), n1_field(HALF)).is_zero()


def test_beta_only_field_with_kappa():
    s = ansatz_solve(1)
    f = build_vector_field(s, ZERO, ZERO, 1, HALF)
    assert determining_residual(n1_Q(HALF), f).is_zero()


def test_build_rejects_non_solution():
    with pytest.raises(FieldError):
        build_vector_field(ansatz_solve(1), X, ZERO, 0, HALF)


def test_closed_form_solves_equation():
    assert solves_equation(kratzer_Q(Fraction(-3, 4), HALF, Fraction(-1, 4)), kratzer_closed_solution())


def test_superposition_field():
    f = kratzer_closed_solution()
    Q = n1_Q(HALF)
    assert determining_residual(Q, shaped_field(delta=f)).is_zero()
    # for a non-solution delta the residual is exactly delta'' + Q delta
    r = determining_residual(Q, shaped_field(delta=X))
    assert r.coeff(0).coeff(0) == X.derive(2) + Q * X


def test_scaling_field_free_particle():
    assert determining_residual(FREE_PARTICLE_Q, shaped_field(gamma=ONE)).is_zero()


def test_hermite():
    assert hermite(0) == ONE
    assert hermite(3) == ExpPoly.monomial(8, 3) - ExpPoly.monomial(12, 1)
    for n in range(4):
        assert solves_equation(oscillator_Q(n), oscillator_state(n))


@pytest.mark.parametrize("n", range(3))
def test_oscillator_fields(n):
    assert oscillator_field_check(n).is_zero()


def test_mismatched_oscillator_level():
    assert not oscillator_field_check(0, 2).is_zero()


def test_free_particle_fields():
    fields = free_particle_fields()
    assert len(fields) == 8
    for label, f in fields.items():
        assert determining_residual(FREE_PARTICLE_Q, f).is_zero(), label


def test_perturbed_fields_fail():
    cases = perturbed_fields()
    assert len(cases) == 4
    for label, Q, f in cases:
        assert not determining_residual(Q, f).is_zero(), label


def test_degree_guard():
    from kratzer_sga.symmetry import UPoly, VectorField
    cubic = VectorField(UPoly([ZERO, ZERO, ZERO, ONE]), UPoly())
    with pytest.raises(ValueError):
        determining_residual(ONE, cubic)
