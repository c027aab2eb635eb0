from fractions import Fraction

import pytest

from kratzer_sga.algebra import (
    LineField, X_field, Y_field, Z_field, make_generators, span_membership,
    verify_relations, vf2_commutator, vf_commutator, xi_u2_coefficient,
)
from kratzer_sga.expoly import ExpPoly, ONE
from kratzer_sga.symmetry import (
    ansatz_solve, build_vector_field, determining_residual, kratzer_closed_solution, n1_Q,
    shaped_field,
)

HALF = Fraction(1, 2)


def test_examples():
    assert vf_commutator(Y_field(1), X_field(HALF)).coeff == Y_field(2).coeff
    assert vf_commutator(Y_field(1), Y_field(2)).coeff == Y_field(4).scale(-1).coeff
    a = Z_field(3)
    assert vf_commutator(a, a).is_zero()
    assert vf_commutator(Z_field(1), Y_field(1)).coeff == Z_field(2).scale(-1).coeff


def test_generators():
    basis = make_generators(HALF, 2)
    assert basis.labels[:2] == ["X", "Y_-0"]
    assert basis.elements[0].coeff == ONE == basis.elements[1].coeff
    assert Z_field(2).coeff == ExpPoly.monomial(1, -2, 1)
    with pytest.raises(ValueError):
        make_generators(HALF, -1)


def test_table_at_half():
    rep = verify_relations(HALF, 10)
    assert rep.passed
    pairs = [c.details["pairs"] for c in rep.checks]
    assert pairs == [11, 11, 121, 121, 121]


def test_scaled_table_at_other_d():
    rep = verify_relations(3, 4)
    assert rep.passed
    assert "False" in rep.notes[0]


def test_fault_injection_names_relation():
    rep = verify_relations(HALF, 3, inject_fault=True)
    assert [c.name for c in rep.failures()] == ["[Z_-m,Y_-n]"]


def test_span_membership():
    basis = make_generators(HALF, 10)
    m = span_membership(vf_commutator(Y_field(1), Y_field(2)), basis)
    assert m.member and m.combination == {"Y_-4": -1}
    m = span_membership(vf_commutator(Z_field(2), Z_field(1)), basis)
    assert not m.member and "exp((2)x)" in m.offending_term
    assert span_membership(LineField(ExpPoly()), basis).member


def test_vf2_trivial_cases():
    translation = shaped_field(beta=ONE)
    scaling = shaped_field(gamma=ONE)
    assert vf2_commutator(translation, scaling).is_zero()
    assert vf2_commutator(scaling, scaling).is_zero()


def test_commutator_of_symmetries_is_symmetry():
    f = kratzer_closed_solution()
    beta_part = build_vector_field(ansatz_solve(1), D=HALF)
    alpha_part = shaped_field(alpha=f)
    delta_part = shaped_field(delta=f)
    Q = n1_Q(HALF)
    for a, b in ((beta_part, alpha_part), (alpha_part, delta_part), (beta_part, delta_part)):
        assert determining_residual(Q, vf2_commutator(a, b)).is_zero()


def test_alpha_delta_commutator_leaves_ansatz_family():
    f = kratzer_closed_solution()
    c = vf2_commutator(shaped_field(alpha=f), shaped_field(delta=f))
    assert c.xi.coeff(0) == ExpPoly.monomial(-1, -1, 1)


def test_xi_u2_vanishes_for_shaped_fields():
    # alpha_A alpha_B' + alpha_A' alpha_B - (A <-> B) is identically zero
    a = shaped_field(alpha=ExpPoly.monomial(1, 2, 1), beta=ExpPoly.monomial(3, -1))
    b = shaped_field(alpha=ExpPoly.monomial(2, -1), beta=ONE, gamma=ONE)
    assert xi_u2_coefficient(vf2_commutator(a, b)).is_zero()
