"""Lie point symmetries of u'' = -Q(x) u.

A field X = xi(x,u) d/dx + eta(x,u) d/du is a point symmetry when the
second-order determining expression vanishes identically in (u, u').  For
the shape xi = u*alpha + beta, eta = u^2 alpha' + u gamma + delta the
conditions reduce to

    alpha'' + Q alpha = 0,   delta'' + Q delta = 0,   gamma = beta'/2 + kappa,
    beta''' + 4 Q beta' + 2 Q' beta = 0.

For Q = C/x^2 + D/x + E the last equation is solved here with Laurent
polynomials beta = sum_l g_l x^(-l).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import GaussRational, parse_rational
from .expoly import ExpPoly, ONE, X, ZERO
from .linalg import QPoly, solve_parametric


# ------------------------------------------------------------ u-polynomials

class UPoly:
    """Polynomial in u with ExpPoly coefficients (index = power of u)."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        cs = [ExpPoly.coerce(v) for v in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.c: tuple[ExpPoly, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def coeff(self, k: int) -> ExpPoly:
        return self.c[k] if 0 <= k < len(self.c) else ZERO

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __add__(self, o):
        o = o if isinstance(o, UPoly) else UPoly([o])
        n = max(len(self.c), len(o.c))
        return UPoly([self.coeff(k) + o.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-v for v in self.c])

    def __sub__(self, o):
        o = o if isinstance(o, UPoly) else UPoly([o])
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, UPoly):
            return UPoly([v * o for v in self.c])
        if not self.c or not o.c:
            return UPoly()
        out = [ZERO] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(o.c):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UPoly(out)

    __rmul__ = __mul__

    def d_x(self) -> "UPoly":
        return UPoly([v.derive() for v in self.c])

    def d_u(self) -> "UPoly":
        return UPoly([v * k for k, v in enumerate(self.c) if k])

    def __eq__(self, o):
        if not isinstance(o, UPoly):
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def render(self) -> str:
        parts = []
        for k, v in enumerate(self.c):
            if v:
                parts.append("[" + v.render() + "]" + ("" if k == 0 else f"·u^{k}"))
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.render()


U = UPoly([ZERO, ONE])


@dataclass(frozen=True)
class VectorField:
    xi: UPoly
    eta: UPoly

    def apply(self, f: UPoly) -> UPoly:
        """X(f) = xi f_x + eta f_u."""
        return self.xi * f.d_x() + self.eta * f.d_u()

    def is_zero(self) -> bool:
        return self.xi.is_zero() and self.eta.is_zero()

    def __add__(self, o):
        return VectorField(self.xi + o.xi, self.eta + o.eta)

    def __sub__(self, o):
        return VectorField(self.xi - o.xi, self.eta - o.eta)

    def scale(self, c) -> "VectorField":
        return VectorField(self.xi * c, self.eta * c)

    def to_dict(self) -> dict:
        return {"xi": self.xi.render(), "eta": self.eta.render()}

    def render(self) -> str:
        return f"({self.xi.render()})·∂x + ({self.eta.render()})·∂u"


def shaped_field(alpha=ZERO, beta=ZERO, gamma=ZERO, delta=ZERO) -> VectorField:
    """xi = u alpha + beta, eta = u^2 alpha' + u gamma + delta."""
    alpha, beta, gamma, delta = (ExpPoly.coerce(v) for v in (alpha, beta, gamma, delta))
    return VectorField(UPoly([beta, alpha]), UPoly([delta, gamma, alpha.derive()]))


# ------------------------------------------------------------ determining expression

@dataclass
class DeterminingResidual:
    """Coefficients of u'^j (j = 0..3), each a polynomial in u."""
    by_du: list = field(default_factory=list)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.by_du)

    def coeff(self, j: int) -> UPoly:
        return self.by_du[j] if j < len(self.by_du) else UPoly()

    def render(self) -> str:
        parts = []
        for j, p in enumerate(self.by_du):
            if p:
                parts.append("{" + p.render() + "}" + ("" if j == 0 else f"·u'^{j}"))
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"zero": self.is_zero(), "expression": self.render()}


def determining_residual(Q, field_: VectorField) -> DeterminingResidual:
    """Invariance condition of u'' = omega with omega = -Q(x) u (omega_u' = 0):

        omega (eta_u - 2 xi_x - 3 u' xi_u) - omega_x xi - omega_u eta
        + eta_xx + u' (2 eta_xu - xi_xx) + u'^2 (eta_uu - 2 xi_xu) - u'^3 xi_uu
    """
    Q = ExpPoly.coerce(Q)
    xi, eta = field_.xi, field_.eta
    if xi.degree > 2 or eta.degree > 2:
        raise ValueError("field components must have degree <= 2 in u")
    omega = UPoly([ZERO, -Q])
    omega_x = UPoly([ZERO, -Q.derive()])
    omega_u = UPoly([-Q])
    xi_x, xi_u = xi.d_x(), xi.d_u()
    eta_u = eta.d_u()
    r0 = omega * (eta_u - xi_x * 2) - omega_x * xi - omega_u * eta + eta.d_x().d_x()
    r1 = omega * xi_u * (-3) + eta_u.d_x() * 2 - xi_x.d_x()
    r2 = eta_u.d_u() - xi_u.d_x() * 2
    r3 = -xi_u.d_u()
    return DeterminingResidual([r0, r1, r2, r3])


def kratzer_Q(C, D, E) -> ExpPoly:
    return (ExpPoly.monomial(parse_rational(C), -2) + ExpPoly.monomial(parse_rational(D), -1)
            + ExpPoly.const(parse_rational(E)))


def solves_equation(Q, f) -> bool:
    f = ExpPoly.coerce(f)
    return (f.derive(2) + ExpPoly.coerce(Q) * f).is_zero()


def beta_residual_general(Q, beta) -> ExpPoly:
    Q, beta = ExpPoly.coerce(Q), ExpPoly.coerce(beta)
    return beta.derive(3) + Q * beta.derive() * 4 + Q.derive() * beta * 2


def beta_ode_residual(C, D, E_hat, beta) -> ExpPoly:
    """beta''' + 4(C/x^2 + D/x + E) beta' - (4C/x^3 + 2D/x^2) beta."""
    return beta_residual_general(kratzer_Q(C, D, E_hat), beta)


# ------------------------------------------------------------ Laurent ansatz

def _beta_rows(q_terms: dict, powers: list[int]):
    """Linear system for beta = sum_k g_k x^k in beta''' + 4Q beta' + 2Q' beta = 0.

    ``q_terms`` maps an x-power of Q to its coefficient as a QPoly in E.
    Returns rows (one per x-power of the residual) over the unknowns.
    """
    rows: dict[int, list] = {}
    for col, m in enumerate(powers):
        contrib = [(m - 3, QPoly.const(m * (m - 1) * (m - 2)))]
        for k, q in q_terms.items():
            contrib.append((k + m - 1, q * (4 * m + 2 * k)))
        for pw, val in contrib:
            if not val:
                continue
            row = rows.setdefault(pw, [QPoly() for _ in powers])
            row[col] = row[col] + val
    return [rows[k] for k in sorted(rows)]


# Reference forms that disagree with the exact nullspace, keyed by N.
RATIO_NOTES = {
    2: ("g1 = D*g2 from the exact nullspace; the reference relation g1 = 2D*g2 is "
        "inconsistent with E = -D^2/4 (C = -2 and E = -D^2/4 are confirmed)"),
}


@dataclass(frozen=True)
class SymmetrySolution:
    N: int
    C: Fraction
    E_over_D2: Fraction
    # g_l = coeff * D**(N - l), listed for l = N, N-1, ..., 0 (g_N = 1)
    g_ratios: tuple
    kappa: Fraction = Fraction(0)
    notes: tuple = ()

    def E_hat(self, D) -> Fraction:
        D = parse_rational(D)
        return self.E_over_D2 * D * D

    def g(self, D) -> dict[int, Fraction]:
        D = parse_rational(D)
        return {self.N - i: c * D ** p for i, (c, p) in enumerate(self.g_ratios)}

    def beta(self, D) -> ExpPoly:
        out = ZERO
        for l, g in self.g(D).items():
            out = out + ExpPoly.monomial(g, -l)
        return out

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "C": str(self.C),
            "E_over_D2": str(self.E_over_D2),
            "g_ratios": [[str(c), str(p)] for c, p in self.g_ratios],
            "kappa": str(self.kappa),
            "paper_discrepancies": list(self.notes),
        }


def ansatz_solve_all(N: int) -> list[SymmetrySolution]:
    """Every rational (C, E/D^2) for which beta = sum_{l<=N} g_l x^-l works."""
    if N < 1:
        raise ValueError("ansatz degree N must be >= 1")
    powers = [-l for l in range(N + 1)]  # column l <-> g_l
    E = QPoly.var()

    def rows_for(C, D):
        return _beta_rows({-2: QPoly.const(C), -1: QPoly.const(D), 0: E}, powers)

    # leading power x^-(N+3) only involves g_N and is affine in C
    top0 = rows_for(0, 1)[0][N](0)
    top1 = rows_for(1, 1)[0][N](0)
    C = -top0 / (top1 - top0)
    # homogeneity: solve at D = 1, restore D afterwards
    rows = rows_for(C, 1)
    out = []
    for e_val, basis in solve_parametric(rows, N + 1):
        vec = next((v for v in basis if v[N] != 0), None)
        if vec is None:
            continue
        vec = [v / vec[N] for v in vec]
        ratios = tuple((vec[l], N - l) for l in range(N, -1, -1))
        out.append(SymmetrySolution(N, C, e_val, ratios, notes=_notes_for(N)))
    out.sort(key=lambda s: abs(s.E_over_D2))
    return out


def _notes_for(N):
    return (RATIO_NOTES[N],) if N in RATIO_NOTES else ()


def ansatz_solve(N: int) -> Optional[SymmetrySolution]:
    """Principal solution: the root with the smallest |E/D^2|.

    For N >= 3 the constraint on E has further rational roots (e.g. N = 3
    also admits E = -D^2); :func:`ansatz_solve_all` returns them all.
    """
    sols = ansatz_solve_all(N)
    return sols[0] if sols else None


def oscillator_beta_solve(N_neg: int, N_pos: int) -> Optional[SymmetrySolution]:
    """Laurent ansatz against Q = -(x^2 + E) with E a free rational."""
    powers = list(range(-N_neg, N_pos + 1))
    E = QPoly.var()
    rows = _beta_rows({2: QPoly.const(-1), 0: -E}, powers)
    found = solve_parametric(rows, len(powers))
    if not found:
        return None
    e_val, basis = found[0]
    vec = basis[0]
    return SymmetrySolution(0, Fraction(0), e_val,
                            tuple((v, -p) for v, p in zip(vec, powers)))


# ------------------------------------------------------------ field assembly

class FieldError(ValueError):
    pass


def build_vector_field(sol: SymmetrySolution, alpha=ZERO, delta=ZERO, kappa=0, D=1) -> VectorField:
    D = parse_rational(D)
    Q = kratzer_Q(sol.C, D, sol.E_hat(D))
    for name, f in (("alpha", alpha), ("delta", delta)):
        if not solves_equation(Q, f):
            raise FieldError(f"{name} does not satisfy f'' + Q f = 0")
    beta = sol.beta(D)
    gamma = beta.derive() * Fraction(1, 2) + ExpPoly.const(parse_rational(kappa))
    return shaped_field(alpha, beta, gamma, delta)


def kratzer_closed_solution() -> ExpPoly:
    """e^(x/2) x^(-1/2): a closed-form solution at C = -3/4, D = 1/2, E = -1/4."""
    return ExpPoly.monomial(1, Fraction(-1, 2), Fraction(1, 2))


def hermite(n: int) -> ExpPoly:
    """Physicists' Hermite polynomial H_n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    h0, h1 = ONE, X * 2
    if n == 0:
        return h0
    for k in range(1, n):
        h0, h1 = h1, X * h1 * 2 - h0 * (2 * k)
    return h1


def oscillator_state(n: int) -> ExpPoly:
    return ExpPoly.monomial(1, 0, 0, Fraction(-1, 2)) * hermite(n)


def oscillator_Q(level_n: int) -> ExpPoly:
    """Q with u'' + Q u = 0 equivalent to u'' = (x^2 - (2n+1)) u."""
    return ExpPoly.monomial(-1, 2) + ExpPoly.const(2 * level_n + 1)


def oscillator_field_check(n: int, equation_level: Optional[int] = None) -> DeterminingResidual:
    """alpha = delta = e^(-x^2/2) H_n; xi = u alpha, eta = u^2 alpha' + delta."""
    f = oscillator_state(n)
    level = n if equation_level is None else equation_level
    return determining_residual(oscillator_Q(level), shaped_field(alpha=f, delta=f))


# ------------------------------------------------------------ free particle

def _trig(kind: str, k: int) -> ExpPoly:
    """sin(kx) or cos(kx) as complex exponentials."""
    ik = GaussRational(0, k)
    plus = ExpPoly.monomial(1, 0, ik)
    minus = ExpPoly.monomial(1, 0, -ik)
    if kind == "sin":
        return (plus - minus) * GaussRational(0, Fraction(-1, 2))
    return (plus + minus) * Fraction(1, 2)


def free_particle_fields() -> dict[str, VectorField]:
    """Eight basis symmetries of u'' + u = 0 (each phase split into sin/cos).

    The sin(2x) generator pairs with eta = u cos(2x), i.e. gamma = beta'/2.
    """
    s1, c1 = _trig("sin", 1), _trig("cos", 1)
    s2, c2 = _trig("sin", 2), _trig("cos", 2)
    return {
        "a1_sin": shaped_field(alpha=s1),
        "a1_cos": shaped_field(alpha=c1),
        "a3_sin": shaped_field(delta=s1),
        "a3_cos": shaped_field(delta=c1),
        "a5": shaped_field(gamma=ONE),
        "a6": shaped_field(beta=ONE),
        "a7_sin": shaped_field(beta=s2, gamma=c2),
        "a7_cos": shaped_field(beta=c2, gamma=-s2),
    }


FREE_PARTICLE_Q = ONE


# ------------------------------------------------------------ N = 1 field and perturbations

def n1_field(D=Fraction(1, 2), literal_eta: bool = False) -> VectorField:
    """beta = 1/x + 2D with alpha = delta = e^(x/2) x^(-1/2) (needs D = 1/2).

    ``literal_eta`` uses u*beta' for the u-linear part of eta instead of
    u*beta'/2; that variant is not a symmetry.
    """
    D = parse_rational(D)
    sol = ansatz_solve(1)
    f = kratzer_closed_solution() if D == Fraction(1, 2) else ZERO
    field_ = build_vector_field(sol, f, f, 0, D)
    if not literal_eta:
        return field_
    beta = sol.beta(D)
    return shaped_field(f, beta, beta.derive(), f)


def n1_Q(D=Fraction(1, 2)) -> ExpPoly:
    D = parse_rational(D)
    return kratzer_Q(Fraction(-3, 4), D, -D * D)


def perturbed_fields() -> list[tuple[str, ExpPoly, VectorField]]:
    """(label, Q, field) cases whose determining residual must not vanish."""
    half = Fraction(1, 2)
    out = [("N=1 field with eta linear part u*beta'", n1_Q(half), n1_field(half, literal_eta=True))]
    # N = 2 with g1 = 2D g2, g0 = -(2E/D) g1 at D = 1, E = -1/4
    g2, g1 = Fraction(1), Fraction(2)
    g0 = -2 * Fraction(-1, 4) * g1
    beta = ExpPoly.monomial(g2, -2) + ExpPoly.monomial(g1, -1) + ExpPoly.const(g0)
    out.append(("N=2 field with g1 = 2D*g2", kratzer_Q(-2, 1, Fraction(-1, 4)),
                shaped_field(beta=beta, gamma=beta.derive() * half)))
    f0 = oscillator_state(0)
    out.append(("oscillator n=0 state in the n=2 equation", oscillator_Q(2),
                shaped_field(alpha=f0, delta=f0)))
    s2 = _trig("sin", 2)
    out.append(("free particle sin(2x) with eta = u sin(2x)", FREE_PARTICLE_Q,
                shaped_field(beta=s2, gamma=s2)))
    return out
