"""The exp-monomial ring: finite sums of ``q * x**r * exp(e1*x + e2*x**2)``.

Coefficients ``q``, ``e1``, ``e2`` are Gaussian rationals and ``r`` is a
rational power.  Terms are kept merged and sorted, so two ExpPoly values are
equal exactly when their term tuples are equal.

Text form (used in reports and test fixtures)::

    (1/2)·x^(-1/2)·exp((1/2)x) + (-3i/4)·x^(2)

``*`` is accepted in place of ``·`` when parsing.
"""
from __future__ import annotations

import cmath
import re
from dataclasses import dataclass
from fractions import Fraction

from .exact import GaussRational, parse_rational

__all__ = ["ExpTerm", "ExpPoly", "X", "ONE", "ZERO"]

_G0 = GaussRational(0)


@dataclass(frozen=True)
class ExpTerm:
    coeff: GaussRational
    power: Fraction
    exp1: GaussRational = _G0
    exp2: GaussRational = _G0

    @property
    def key(self):
        return (self.exp1, self.exp2, self.power)

    def sort_key(self):
        return (self.exp1.sort_key(), self.exp2.sort_key(), self.power)

    def render(self, var="x") -> str:
        out = f"({self.coeff})"
        if self.power != 0:
            out += f"·{var}^({self.power})"
        if self.exp1 or self.exp2:
            parts = []
            if self.exp1:
                parts.append(f"({self.exp1}){var}")
            if self.exp2:
                parts.append(f"({self.exp2}){var}^2")
            out += "·exp(" + "+".join(parts) + ")"
        return out


def _coerce_scalar(c) -> GaussRational:
    if isinstance(c, GaussRational):
        return c
    if isinstance(c, str):
        return GaussRational.parse(c)
    return GaussRational(c)


class ExpPoly:
    """Immutable element of the exp-monomial ring."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        merged: dict = {}
        for t in terms:
            if not t.coeff:
                continue
            k = t.key
            merged[k] = merged[k] + t.coeff if k in merged else t.coeff
        out = [ExpTerm(c, k[2], k[0], k[1]) for k, c in merged.items() if c]
        out.sort(key=ExpTerm.sort_key)
        self.terms: tuple[ExpTerm, ...] = tuple(out)
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c) -> "ExpPoly":
        return cls([ExpTerm(_coerce_scalar(c), Fraction(0))])

    @classmethod
    def monomial(cls, coeff=1, power=0, exp1=0, exp2=0) -> "ExpPoly":
        return cls([ExpTerm(_coerce_scalar(coeff), Fraction(power),
                            _coerce_scalar(exp1), _coerce_scalar(exp2))])

    @classmethod
    def coerce(cls, value) -> "ExpPoly":
        if isinstance(value, ExpPoly):
            return value
        return cls.const(value)

    # ring operations
    def __add__(self, other):
        try:
            o = ExpPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return ExpPoly(self.terms + o.terms)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly(ExpTerm(-t.coeff, t.power, t.exp1, t.exp2) for t in self.terms)

    def __sub__(self, other):
        try:
            o = ExpPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return ExpPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            try:
                c = _coerce_scalar(other)
            except TypeError:
                return NotImplemented
            if not c:
                return ZERO
            return ExpPoly(ExpTerm(t.coeff * c, t.power, t.exp1, t.exp2) for t in self.terms)
        prods = []
        for a in self.terms:
            for b in other.terms:
                prods.append(ExpTerm(a.coeff * b.coeff, a.power + b.power,
                                     a.exp1 + b.exp1, a.exp2 + b.exp2))
        return ExpPoly(prods)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = _coerce_scalar(other)
        return self * (GaussRational(1) / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def derive(self, times: int = 1) -> "ExpPoly":
        """d/dx, term-wise: d(q x^r e^P) = q (r x^(r-1) + P' x^r) e^P."""
        f = self
        for _ in range(times):
            out = []
            for t in f.terms:
                if t.power != 0:
                    out.append(ExpTerm(t.coeff * t.power, t.power - 1, t.exp1, t.exp2))
                if t.exp1:
                    out.append(ExpTerm(t.coeff * t.exp1, t.power, t.exp1, t.exp2))
                if t.exp2:
                    out.append(ExpTerm(t.coeff * t.exp2 * 2, t.power + 1, t.exp1, t.exp2))
            f = ExpPoly(out)
        return f

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(t.power == 0 and not t.exp1 and not t.exp2 for t in self.terms)

    def constant_value(self) -> GaussRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[0].coeff if self.terms else GaussRational(0)

    def coefficient(self, power=0, exp1=0, exp2=0) -> GaussRational:
        key = (_coerce_scalar(exp1), _coerce_scalar(exp2), Fraction(power))
        for t in self.terms:
            if t.key == key:
                return t.coeff
        return GaussRational(0)

    def term_dict(self) -> dict:
        return {t.key: t.coeff for t in self.terms}

    def evaluate(self, x) -> complex:
        """Floating evaluation at a positive real point (cross-checks only)."""
        xf = float(x)
        total = 0j
        for t in self.terms:
            total += (complex(t.coeff) * xf ** float(t.power)
                      * cmath.exp(complex(t.exp1) * xf + complex(t.exp2) * xf * xf))
        return total

    def __eq__(self, other):
        if not isinstance(other, ExpPoly):
            try:
                other = ExpPoly.coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def render(self, var="x") -> str:
        if not self.terms:
            return "0"
        return " + ".join(t.render(var) for t in self.terms)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ExpPoly({self.render()!r})"

    @classmethod
    def parse(cls, text: str, var="x") -> "ExpPoly":
        text = text.strip()
        if text == "0":
            return ZERO
        return cls(_parse_term(chunk.strip(), var) for chunk in text.split(" + "))


_TERM_RE_CACHE: dict = {}


def _term_regex(var):
    if var not in _TERM_RE_CACHE:
        v = re.escape(var)
        _TERM_RE_CACHE[var] = re.compile(
            r"^\((?P<coeff>[^()]+)\)"
            rf"(?:[·*]{v}\^\((?P<power>[^()]+)\))?"
            r"(?:[·*]exp\((?P<exp>.+)\))?$"
        )
    return _TERM_RE_CACHE[var]


def _parse_term(chunk: str, var: str) -> ExpTerm:
    m = _term_regex(var).match(chunk)
    if not m:
        raise ValueError(f"cannot parse term {chunk!r}")
    coeff = GaussRational.parse(m.group("coeff"))
    power = parse_rational(m.group("power")) if m.group("power") else Fraction(0)
    e1 = e2 = GaussRational(0)
    if m.group("exp"):
        for piece in re.findall(r"\(([^()]+)\)" + re.escape(var) + r"(\^2)?", m.group("exp")):
            if piece[1]:
                e2 = GaussRational.parse(piece[0])
            else:
                e1 = GaussRational.parse(piece[0])
    return ExpTerm(coeff, power, e1, e2)


ZERO = ExpPoly()
ONE = ExpPoly.const(1)
X = ExpPoly.monomial(1, 1)
