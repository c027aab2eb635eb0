"""Exact scalars: rationals, Gaussian rationals and sums of square roots.

``Fraction`` from the standard library is the rational type throughout.
``GaussRational`` adds the imaginary unit; ``Radical`` represents finite
sums ``q0 + q1*sqrt(d1) + ...`` with squarefree integer radicands, which is
enough for every closed-form energy the package produces.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "Fraction",
    "GaussRational",
    "Radical",
    "parse_rational",
    "as_exact",
    "format_exact",
]

_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or an integer string into a Fraction.

    Decimal strings are rejected on purpose: every input coefficient is
    meant to be exact.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    m = _RAT_RE.match(str(text))
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class GaussRational:
    """Element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)
        self._hash = None

    @classmethod
    def coerce(cls, value) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        return cls(value, 0)

    @classmethod
    def parse(cls, text: str) -> "GaussRational":
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty Gaussian rational")
        if not s.endswith("i"):
            return cls(parse_rational(s), 0)
        body = s[:-1]
        # split on the last sign that is not the leading one
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        if cut > 0:
            re_part, im_part = body[:cut], body[cut:]
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return cls(parse_rational(re_part), parse_rational(im_part))

    def __add__(self, other):
        try:
            o = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        if o.im == 0:
            return GaussRational(self.re * o.re, self.im * o.re)
        return GaussRational(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussRational(1) / (self ** -k)
        out = GaussRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.re) if self.im == 0 else hash((self.re, self.im))
        return self._hash

    def sort_key(self):
        return (self.re, self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        im = f"{self.im}i"
        if self.re == 0:
            return im
        sign = "" if self.im < 0 else "+"
        return f"{self.re}{sign}{im}"

    def __repr__(self):
        return f"GaussRational({self})"


I = GaussRational(0, 1)


# ---------------------------------------------------------------- radicals

_SMALL_PRIME_LIMIT = 100_000


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s*s*f`` and ``f`` squarefree (n > 0).

    Trial division up to ``_SMALL_PRIME_LIMIT``; a leftover cofactor is
    accepted as squarefree unless it is itself a perfect square.
    """
    if n <= 0:
        raise ValueError("squarefree split needs a positive integer")
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    s, f = 1, 1
    p = 2
    while p * p <= n and p <= _SMALL_PRIME_LIMIT:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                f *= p
        p += 1 if p == 2 else 2
    if n > 1:
        r = math.isqrt(n)
        if r * r == n:
            s *= r
        else:
            f *= n
    return s, f


def _isqrt_bounds(d: int, bits: int) -> tuple[Fraction, Fraction]:
    scale = 1 << bits
    lo = math.isqrt(d * scale * scale)
    if lo * lo == d * scale * scale:
        return Fraction(lo, scale), Fraction(lo, scale)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


class Radical:
    """Exact real number ``sum_d q_d * sqrt(d)`` over squarefree ``d >= 1``.

    Square roots of distinct squarefree integers are linearly independent
    over Q, so the term dictionary is a canonical form and equality is
    syntactic.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for d, q in (terms or {}).items():
            q = _frac(q)
            if q:
                clean[int(d)] = clean.get(int(d), Fraction(0)) + q
        self.terms = {d: q for d, q in sorted(clean.items()) if q}

    @classmethod
    def rational(cls, q) -> "Radical":
        return cls({1: _frac(q)})

    @classmethod
    def sqrt_of(cls, q) -> "Radical":
        """Exact square root of a non-negative rational."""
        q = _frac(q)
        if q < 0:
            raise ValueError(f"square root of negative rational {q}")
        if q == 0:
            return cls()
        s, f = _squarefree_split(q.numerator * q.denominator)
        return cls({f: Fraction(s, q.denominator)})

    @classmethod
    def coerce(cls, value) -> "Radical":
        if isinstance(value, Radical):
            return value
        return cls.rational(value)

    # arithmetic
    def __add__(self, other):
        try:
            o = Radical.coerce(other)
        except TypeError:
            return NotImplemented
        t = dict(self.terms)
        for d, q in o.terms.items():
            t[d] = t.get(d, Fraction(0)) + q
        return Radical(t)

    __radd__ = __add__

    def __neg__(self):
        return Radical({d: -q for d, q in self.terms.items()})

    def __sub__(self, other):
        try:
            o = Radical.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return Radical.coerce(other) - self

    def __mul__(self, other):
        try:
            o = Radical.coerce(other)
        except TypeError:
            return NotImplemented
        t: dict[int, Fraction] = {}
        for d1, q1 in self.terms.items():
            for d2, q2 in o.terms.items():
                g = math.gcd(d1, d2)
                d = (d1 // g) * (d2 // g)
                c = q1 * q2 * g
                t[d] = t.get(d, Fraction(0)) + c
        return Radical(t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (self ** -k).inverse()
        out = Radical.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def radicands(self) -> set[int]:
        return {d for d in self.terms if d != 1}

    def inverse(self) -> "Radical":
        """Multiplicative inverse; supported for elements of one Q(sqrt d)."""
        rads = self.radicands()
        if not self.terms:
            raise ZeroDivisionError("inverse of zero")
        if not rads:
            return Radical.rational(1 / self.terms[1])
        if len(rads) > 1:
            raise NotImplementedError("inverse outside a single quadratic field")
        (d,) = rads
        x = self.terms.get(1, Fraction(0))
        y = self.terms[d]
        norm = x * x - d * y * y
        return Radical({1: x / norm, d: -y / norm})

    def __truediv__(self, other):
        try:
            o = Radical.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Radical.coerce(other) * self.inverse()

    def sqrt(self) -> "Radical":
        """Exact square root when it lies in the same quadratic field."""
        if self.is_rational():
            return Radical.sqrt_of(self.to_fraction())
        rads = self.radicands()
        if len(rads) > 1:
            raise NotImplementedError("square root outside a single quadratic field")
        (d,) = rads
        x = self.terms.get(1, Fraction(0))
        y = self.terms[d]
        if self.sign() < 0:
            raise ValueError("square root of a negative number")
        norm = x * x - d * y * y
        if norm < 0:
            raise ValueError(f"sqrt({self}) does not denest in Q(sqrt {d})")
        n = Radical.sqrt_of(norm)
        if not n.is_rational():
            raise ValueError(f"sqrt({self}) does not denest in Q(sqrt {d})")
        n = n.to_fraction()
        for cand in (n, -n):
            u2 = (x + cand) / 2
            if u2 < 0:
                continue
            u = Radical.sqrt_of(u2)
            if not u.is_rational() or u.to_fraction() == 0:
                continue
            u = u.to_fraction()
            v = y / (2 * u)
            root = Radical({1: u, d: v})
            if root.sign() < 0:
                root = -root
            if root * root == self:
                return root
        raise ValueError(f"sqrt({self}) does not denest in Q(sqrt {d})")

    # predicates and conversions
    def is_rational(self) -> bool:
        return not self.radicands()

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.terms.get(1, Fraction(0))

    def enclosure(self, width=Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
        """Certified rational interval ``[lo, hi]`` containing the value."""
        width = _frac(width)
        bits = 40
        while True:
            lo = hi = Fraction(0)
            for d, q in self.terms.items():
                a, b = _isqrt_bounds(d, bits)
                if q >= 0:
                    lo += q * a
                    hi += q * b
                else:
                    lo += q * b
                    hi += q * a
            if hi - lo <= width:
                return lo, hi
            bits += 32

    def sign(self) -> int:
        if not self.terms:
            return 0
        width = Fraction(1, 2**40)
        while True:
            lo, hi = self.enclosure(width)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            width /= 2**32

    def minimal_polynomial(self) -> list[Fraction]:
        """Monic minimal polynomial, coefficients from low to high degree."""
        if self.is_rational():
            return [-self.to_fraction(), Fraction(1)]
        rads = self.radicands()
        if len(rads) > 1:
            raise NotImplementedError("minimal polynomial beyond degree 2")
        (d,) = rads
        x = self.terms.get(1, Fraction(0))
        y = self.terms[d]
        return [x * x - d * y * y, -2 * x, Fraction(1)]

    def __float__(self):
        lo, hi = self.enclosure(Fraction(1, 2**60))
        return float((lo + hi) / 2)

    def __eq__(self, other):
        try:
            o = Radical.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_fraction())
        return hash(tuple(self.terms.items()))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for d, q in self.terms.items():
            if d == 1:
                parts.append(str(q))
            elif abs(q) == 1:
                parts.append(("-" if q < 0 else "") + f"sqrt({d})")
            else:
                parts.append(f"{q}*sqrt({d})")
        return "+".join(parts).replace("+-", "-")

    def __repr__(self):
        return f"Radical({self})"


def as_exact(value):
    """Collapse a rational-valued Radical to a Fraction."""
    if isinstance(value, Radical) and value.is_rational():
        return value.to_fraction()
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    return value


def exact_sign(value) -> int:
    if isinstance(value, Radical):
        return value.sign()
    return (value > 0) - (value < 0)


def exact_sqrt(value) -> Radical:
    if isinstance(value, Radical):
        return value.sqrt()
    return Radical.sqrt_of(value)


def format_exact(value) -> dict:
    """JSON form shared by every report: rational or algebraic with enclosure."""
    value = as_exact(value)
    if isinstance(value, Fraction):
        return {"num": str(value.numerator), "den": str(value.denominator)}
    lo, hi = value.enclosure()
    return {"algebraic": str(value), "enclosure": [str(lo), str(hi)]}
