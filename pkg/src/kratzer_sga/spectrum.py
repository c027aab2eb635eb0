"""Bound-state levels of u'' + (C/x^2 + D/x + E)u = 0 from the su(1,1)
spectrum-generating algebra.

With x = s^2 and u = s^(1/2) R(s) the equation becomes
R'' + (a/s^2 + b s^2 + c) R = 0, where a = (16C - 3)/4, b = 4E, c = 4D.
Discrete levels satisfy

    4n + 2 +/- sqrt(1 - 4a) = c / sqrt(-b),

which solves to E = -D^2 / [(2n + 1) +/- sqrt(1 - 4C)]^2.  The sign in
front of the square root is the *branch*; it is never inferred.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exact import Radical, as_exact, exact_sign, exact_sqrt, format_exact, parse_rational

Exact = Union[Fraction, Radical]

# Known misprint in the closed form: the radicand is printed as 1 - 4c;
# re-deriving from the quantization condition gives 1 - 4C.
RADICAND_NOTE = ("closed form uses sqrt(1 - 4C); the printed sqrt(1 - 4c) "
                 "does not follow from 1 - 4a = 4(1 - 4C) and c/sqrt(-b) = 2D/sqrt(-E)")


class SpectrumError(ValueError):
    """Inputs outside the domain where a discrete level exists."""


class Branch(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1

    @classmethod
    def parse(cls, value) -> "Branch":
        if isinstance(value, Branch):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"branch must be 'plus' or 'minus', got {value!r}") from None


@dataclass(frozen=True)
class RadialProblem:
    C: Fraction
    D: Fraction
    E_hat: Optional[Exact] = None

    def __post_init__(self):
        object.__setattr__(self, "C", parse_rational(self.C))
        object.__setattr__(self, "D", parse_rational(self.D))
        if self.E_hat is not None and not isinstance(self.E_hat, Radical):
            object.__setattr__(self, "E_hat", parse_rational(self.E_hat))


@dataclass(frozen=True)
class SGACoefficients:
    a: Exact
    b: Exact
    c: Exact


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    E_hat: Exact
    branch: Branch

    def to_dict(self) -> dict:
        return {"n": self.n, "branch": self.branch.value, "E_hat": format_exact(self.E_hat)}


def to_abc(problem: RadialProblem) -> SGACoefficients:
    if problem.E_hat is None:
        raise SpectrumError("to_abc needs E_hat")
    return SGACoefficients(
        a=(16 * problem.C - 3) / 4,
        b=as_exact(4 * problem.E_hat),
        c=4 * problem.D,
    )


def discrete_energy(C, D, n: int, branch) -> EnergyLevel:
    """E = -D^2 / [(2n+1) +/- sqrt(1-4C)]^2 on the requested branch."""
    C, D = parse_rational(C), parse_rational(D)
    branch = Branch.parse(branch)
    if not isinstance(n, int) or n < 0:
        raise SpectrumError(f"n must be a non-negative integer, got {n!r}")
    if 1 - 4 * C < 0:
        raise SpectrumError(f"1 - 4C = {1 - 4 * C} < 0: complex square root")
    if D <= 0:
        raise SpectrumError(f"D = {D} <= 0: c/sqrt(-b) > 0 cannot hold")
    root = Radical.sqrt_of(1 - 4 * C)
    denom = (2 * n + 1) + branch.sign * root
    if denom.sign() <= 0:
        raise SpectrumError(
            f"(2n+1) {'+' if branch.sign > 0 else '-'} sqrt(1-4C) = {denom} <= 0 "
            f"for n={n} on the {branch.value} branch")
    E = as_exact(-(D * D) * (denom * denom).inverse())
    return EnergyLevel(n, E, branch)


def quantization_residual(co: SGACoefficients, n: int, branch) -> Exact:
    """(4n + 2 +/- sqrt(1-4a)) - c/sqrt(-b); zero iff the level condition holds."""
    branch = Branch.parse(branch)
    if exact_sign(co.b) >= 0:
        raise SpectrumError(f"b = {co.b} >= 0: no bound-state condition")
    disc = as_exact(1 - 4 * co.a)
    if exact_sign(disc) < 0:
        raise SpectrumError(f"1 - 4a = {disc} < 0")
    lhs = (4 * n + 2) + branch.sign * exact_sqrt(disc)
    rhs = Radical.coerce(co.c) * exact_sqrt(as_exact(-co.b)).inverse()
    return as_exact(lhs - rhs)


def tilt_theta(b, mode: str = "discrete") -> Fraction:
    """tanh(theta) of the tilting transformation.

    ``discrete``: -(1/2 + 8b)/(1/2 - 8b); ``continuous``: the reciprocal form.
    A physical tilt needs |tanh theta| < 1; see :func:`tilt_is_valid`.
    """
    b = parse_rational(b)
    half = Fraction(1, 2)
    if mode == "discrete":
        num, den = half + 8 * b, half - 8 * b
    elif mode == "continuous":
        num, den = half - 8 * b, half + 8 * b
    else:
        raise ValueError(f"mode must be 'discrete' or 'continuous', got {mode!r}")
    if den == 0:
        raise ZeroDivisionError(f"tilt denominator vanishes at b = {b}")
    return -num / den


def tilt_is_valid(t: Fraction) -> bool:
    return abs(t) < 1


def continuous_lambda(b, c) -> Exact:
    """lambda = -c / (4 sqrt(-b)), exact."""
    b, c = parse_rational(b), parse_rational(c)
    if b >= 0:
        raise SpectrumError(f"b = {b} >= 0")
    return as_exact(-c * Radical.sqrt_of(-b).inverse() / 4)


def spectrum_table(C, D, n_max: int, branch) -> list[dict]:
    """Rows for n = 0..n_max; rejected rows carry the reason instead of a level."""
    rows = []
    for n in range(n_max + 1):
        try:
            lvl = discrete_energy(C, D, n, branch)
        except SpectrumError as exc:
            rows.append({"n": n, "branch": Branch.parse(branch).value, "rejected": str(exc)})
        else:
            rows.append(lvl.to_dict())
    return rows
