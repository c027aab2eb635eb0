"""Exact linear algebra and univariate rational polynomials.

Everything here works over ``Fraction`` (and, for row reduction, any field
type with ``+ - * /`` and a zero test, e.g. GaussRational).
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm


# ------------------------------------------------------------ row reduction

def rref(rows, ncols=None):
    """Reduced row echelon form; returns (matrix, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int, zero=Fraction(0), one=Fraction(1)):
    """Basis of {v : rows @ v = 0}."""
    if not rows:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row_idx, pc in enumerate(pivots):
            v[pc] = -m[row_idx][f]
        basis.append(v)
    return basis


def solve_combination(columns, target, zero=Fraction(0)):
    """Find coefficients c with sum c_j columns[j] == target, or None."""
    n = len(columns)
    nrows = len(target)
    aug = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(nrows)]
    m, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    sol = [zero] * n
    for row_idx, pc in enumerate(pivots):
        sol[pc] = m[row_idx][n]
    return sol


def det(rows) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


# ------------------------------------------------------------ polynomials

class QPoly:
    """Univariate polynomial over Q, coefficients stored low -> high."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def var(cls) -> "QPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, v) -> "QPoly":
        return cls([v])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    def __call__(self, x):
        acc = Fraction(0)
        for v in reversed(self.c):
            acc = acc * x + v
        return acc

    def __add__(self, o):
        o = o if isinstance(o, QPoly) else QPoly.const(o)
        n = max(len(self.c), len(o.c))
        a = self.c + (Fraction(0),) * (n - len(self.c))
        b = o.c + (Fraction(0),) * (n - len(o.c))
        return QPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return QPoly(-v for v in self.c)

    def __sub__(self, o):
        return self + (-(o if isinstance(o, QPoly) else QPoly.const(o)))

    def __rsub__(self, o):
        return QPoly.const(o) - self

    def __mul__(self, o):
        if not isinstance(o, QPoly):
            return QPoly(v * o for v in self.c)
        if not self.c or not o.c:
            return QPoly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(o.c):
                out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self * (1 / Fraction(o))

    def __eq__(self, o):
        if not isinstance(o, QPoly):
            o = QPoly.const(o)
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def derivative(self) -> "QPoly":
        return QPoly(i * v for i, v in enumerate(self.c) if i)

    def divmod(self, o: "QPoly"):
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        q = [Fraction(0)] * max(len(rem) - len(o.c) + 1, 0)
        lead = o.c[-1]
        for k in range(len(q) - 1, -1, -1):
            f = rem[k + len(o.c) - 1] / lead
            q[k] = f
            if f:
                for j, v in enumerate(o.c):
                    rem[k + j] -= f * v
        return QPoly(q), QPoly(rem[: max(len(o.c) - 1, 0)])

    def monic(self) -> "QPoly":
        return self / self.c[-1] if self.c else self

    def gcd(self, o: "QPoly") -> "QPoly":
        a, b = self, o
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic() if a else a

    def primitive_integer(self) -> list[int]:
        den = lcm(*(v.denominator for v in self.c)) if self.c else 1
        return [int(v * den) for v in self.c]

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for i, v in enumerate(self.c):
            if v:
                parts.append(f"{v}" if i == 0 else f"{v}*E" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"QPoly({self})"


def _sturm_chain(p: QPoly) -> list[QPoly]:
    chain = [p, p.derivative()]
    while chain[-1]:
        r = chain[-2].divmod(chain[-1])[1]
        if not r:
            break
        chain.append(-r)
    return chain


def _sign_changes(chain, x) -> int:
    signs = [s for s in ((q(x) > 0) - (q(x) < 0) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def rational_roots(p: QPoly) -> list[Fraction]:
    """All rational roots of ``p``, sorted, without multiplicity.

    Real roots of the squarefree part are isolated with Sturm sequences and
    shrunk below ``1/(2L^2)`` (``L`` = leading coefficient of the primitive
    integer form), after which the only possible rational root in the
    interval is the best approximation with denominator <= L.
    """
    if not p:
        raise ValueError("rational roots of the zero polynomial")
    if p.degree <= 0:
        return []
    sq = p.divmod(p.gcd(p.derivative()))[0]
    if sq.degree <= 0:
        return []
    ints = sq.primitive_integer()
    lead = abs(ints[-1])
    target = Fraction(1, 2 * lead * lead)
    bound = 1 + max(abs(v / sq.c[-1]) for v in sq.c[:-1])
    chain = _sturm_chain(sq)
    roots = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        count = _sign_changes(chain, lo) - _sign_changes(chain, hi)
        if count == 0:
            continue
        if sq(hi) == 0:
            roots.append(hi)
            if count == 1:
                continue
        if count == 1 and hi - lo < target:
            cand = ((lo + hi) / 2).limit_denominator(lead)
            if lo < cand <= hi and sq(cand) == 0:
                roots.append(cand)
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(set(roots))


def interpolate(xs, ys) -> QPoly:
    """Lagrange interpolation through exact points."""
    out = QPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = QPoly.const(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * QPoly([-xj, 1]) / (xi - xj)
        out = out + basis * yi
    return out


def poly_det(matrix) -> QPoly:
    """Determinant of a square matrix of QPoly entries, by interpolation."""
    n = len(matrix)
    deg = sum(max((e.degree for e in row), default=0) for row in matrix)
    deg = max(deg, 0)
    xs = [Fraction(k) for k in range(deg + 1)]
    ys = [det([[e(x) for e in row] for row in matrix]) for x in xs]
    return interpolate(xs, ys) if n else QPoly.const(1)


def solve_parametric(rows, ncols: int):
    """Parameter values E (rational) where ``rows(E) @ g = 0`` has nonzero g.

    ``rows`` is a list of rows of QPoly entries in one unknown E.  Returns
    ``[(E, nullspace_basis), ...]``.  A rank deficiency at E forces every
    maximal minor to vanish there, so scanning the rational roots of one
    generically nonsingular square minor is complete.
    """
    rows = [r for r in rows if any(e for e in r)]
    probe = Fraction(7919, 104729)
    evals = [[e(probe) for e in r] for r in rows]
    if rank(evals) < ncols:
        raise ValueError("system is rank deficient for generic parameter values")
    chosen: list[int] = []
    for i in range(len(rows)):
        if rank([evals[j] for j in chosen + [i]]) > len(chosen):
            chosen.append(i)
        if len(chosen) == ncols:
            break
    minor = [[rows[i][j] for j in range(ncols)] for i in chosen]
    dpoly = poly_det(minor)
    out = []
    for e in rational_roots(dpoly):
        ns = nullspace([[v(e) for v in r] for r in rows], ncols)
        if ns:
            out.append((e, ns))
    return out
