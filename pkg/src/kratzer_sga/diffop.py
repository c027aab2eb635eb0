"""Linear differential operators ``sum_k c_k(x) d^k/dx^k`` over ExpPoly,
and the one-variable su(1,1) generators built from them."""
from __future__ import annotations

import re
from fractions import Fraction
from math import comb

from .exact import GaussRational, I
from .expoly import ExpPoly, ONE, ZERO
from .report import VerificationReport

__all__ = [
    "DiffOp",
    "make_gamma",
    "check_su11",
    "casimir",
    "decompose_operator",
    "DERIV",
]


class DiffOp:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, dict):
            n = max(coeffs, default=-1) + 1
            coeffs = [coeffs.get(k, ZERO) for k in range(n)]
        cs = [ExpPoly.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[ExpPoly, ...] = tuple(cs)

    @classmethod
    def multiplication(cls, f) -> "DiffOp":
        return cls([ExpPoly.coerce(f)])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> ExpPoly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def apply(self, f: ExpPoly) -> ExpPoly:
        out = ZERO
        d = ExpPoly.coerce(f)
        for k, c in enumerate(self.coeffs):
            if k:
                d = d.derive()
            if c:
                out = out + c * d
        return out

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            other = DiffOp.multiplication(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return DiffOp([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            other = DiffOp.multiplication(other)
        return self + (-other)

    def __rsub__(self, other):
        return DiffOp.multiplication(other) - self

    def __mul__(self, other):
        """Composition for operators, left multiplication for scalars."""
        if isinstance(other, DiffOp):
            return self.compose(other)
        if isinstance(other, ExpPoly):
            return self.compose(DiffOp.multiplication(other))
        return DiffOp([c * other for c in self.coeffs])

    def __rmul__(self, other):
        if isinstance(other, ExpPoly):
            return DiffOp([other * c for c in self.coeffs])
        return DiffOp([c * other for c in self.coeffs])

    def compose(self, other: "DiffOp") -> "DiffOp":
        # d^k . (b d^j) = sum_i C(k,i) b^(i) d^(k-i+j)
        out: dict[int, ExpPoly] = {}
        for j, b in enumerate(other.coeffs):
            if not b:
                continue
            derivs = [b]
            for k, a in enumerate(self.coeffs):
                if not a:
                    continue
                while len(derivs) <= k:
                    derivs.append(derivs[-1].derive())
                for i in range(k + 1):
                    if not derivs[i]:
                        continue
                    order = k - i + j
                    out[order] = out.get(order, ZERO) + a * derivs[i] * comb(k, i)
        return DiffOp(out)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def render(self, var="x") -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append("{" + c.render(var) + "}" + ("" if k == 0 else f"·∂^{k}"))
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"DiffOp({self.render()!r})"

    @classmethod
    def parse(cls, text: str, var="x") -> "DiffOp":
        text = text.strip()
        if text == "0":
            return cls()
        out: dict[int, ExpPoly] = {}
        for m in re.finditer(r"\{([^{}]*)\}(?:[·*]∂\^(\d+))?", text):
            k = int(m.group(2)) if m.group(2) else 0
            out[k] = out.get(k, ZERO) + ExpPoly.parse(m.group(1), var)
        return cls(out)


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return a.compose(b) - b.compose(a)


DiffOp.commutator = staticmethod(commutator)

DERIV = DiffOp([ZERO, ONE])


def _x(power, coeff=1) -> ExpPoly:
    return ExpPoly.monomial(coeff, power)


def make_gamma(index: int, alpha=0, realization: str = "s") -> DiffOp:
    """The su(1,1) generators in the ``s`` realization or in ``y`` with s = y**3.

    s-form::

        G1 = d^2 + alpha/s^2 + s^2/16
        G2 = -(i/2) (s d + 1/2)
        G3 = d^2 + alpha/s^2 - s^2/16

    y-form is the same algebra after the change of variable, e.g.
    ``G1 = (1/(9y^4)) d^2 - (2/(9y^5)) d + alpha/y^6 + y^6/16``.
    """
    alpha = Fraction(alpha)
    if index not in (1, 2, 3):
        raise ValueError(f"generator index must be 1, 2 or 3, got {index!r}")
    if realization not in ("s", "y"):
        raise ValueError(f"unknown realization {realization!r}")
    half_i = GaussRational(0, Fraction(-1, 2))
    if realization == "s":
        if index == 2:
            return DiffOp([ExpPoly.const(half_i * Fraction(1, 2)), _x(1, half_i)])
        sign = 1 if index == 1 else -1
        return DiffOp([_x(-2, alpha) + _x(2, Fraction(sign, 16)), ZERO, ONE])
    if index == 2:
        return DiffOp([ExpPoly.const(half_i * Fraction(1, 2)), _x(1, half_i * Fraction(1, 3))])
    sign = 1 if index == 1 else -1
    return DiffOp([
        _x(-6, alpha) + _x(6, Fraction(sign, 16)),
        _x(-5, Fraction(-2, 9)),
        _x(-4, Fraction(1, 9)),
    ])


def casimir(alpha=0, realization="s") -> DiffOp:
    g1, g2, g3 = (make_gamma(k, alpha, realization) for k in (1, 2, 3))
    return g3 * g3 - g1 * g1 - g2 * g2


def check_su11(alpha=0, realization="s") -> VerificationReport:
    """Verify [G1,G2] = -iG3, [G2,G3] = iG1, [G3,G1] = iG2 exactly."""
    g1, g2, g3 = (make_gamma(k, alpha, realization) for k in (1, 2, 3))
    rep = VerificationReport(f"su(1,1) relations, alpha={alpha}, {realization}-form")
    relations = [
        ("[G1,G2] = -i G3", commutator(g1, g2), g3 * (-I)),
        ("[G2,G3] = i G1", commutator(g2, g3), g1 * I),
        ("[G3,G1] = i G2", commutator(g3, g1), g2 * I),
    ]
    for name, lhs, rhs in relations:
        residual = lhs - rhs
        details = {} if residual.is_zero() else {"residual": residual.render(realization)}
        rep.add(name, residual.is_zero(), **details)
    cas = casimir(alpha, realization)
    commutes = all(commutator(cas, g).is_zero() for g in (g1, g2, g3))
    rep.add("Casimir commutes with G1, G2, G3", commutes, casimir=cas.render(realization))
    return rep


def decompose_operator(a, b, c):
    """Write d^2 + a/s^2 + b s^2 + c as p1*G1 + p3*G3 + shift (alpha = a).

    Returns ``(p1, p3, shift) = (1/2 + 8b, 1/2 - 8b, c)``; the identity is
    re-checked as an exact operator equation before returning.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    p1 = Fraction(1, 2) + 8 * b
    p3 = Fraction(1, 2) - 8 * b
    lhs = DiffOp([_x(-2, a) + _x(2, b) + ExpPoly.const(c), ZERO, ONE])
    rhs = make_gamma(1, a) * p1 + make_gamma(3, a) * p3 + ExpPoly.const(c)
    if lhs != rhs:
        raise AssertionError(f"decomposition identity failed: {(lhs - rhs).render('s')}")
    return p1, p3, c
