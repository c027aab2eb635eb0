"""Vector fields on the line and the extended X, Y_-n, Z_-n algebra.

    X = 2D d/dx,   Y_-n = x^-n d/dx,   Z_-n = e^x x^-n d/dx

With X = 2D d/dx every relation that involves X carries a factor 2D; the
plain table is the D = 1/2 slice.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exact import parse_rational
from .expoly import ExpPoly
from .linalg import solve_combination
from .report import VerificationReport
from .symmetry import VectorField


@dataclass(frozen=True)
class LineField:
    coeff: ExpPoly

    def __add__(self, o):
        return LineField(self.coeff + o.coeff)

    def __sub__(self, o):
        return LineField(self.coeff - o.coeff)

    def scale(self, c) -> "LineField":
        return LineField(self.coeff * c)

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def render(self) -> str:
        return f"({self.coeff.render()})·∂x"


def vf_commutator(a: LineField, b: LineField) -> LineField:
    """[f d, g d] = (f g' - g f') d."""
    f, g = a.coeff, b.coeff
    return LineField(f * g.derive() - g * f.derive())


def X_field(D) -> LineField:
    return LineField(ExpPoly.const(2 * parse_rational(D)))


def Y_field(n: int) -> LineField:
    return LineField(ExpPoly.monomial(1, -n))


def Z_field(n: int) -> LineField:
    return LineField(ExpPoly.monomial(1, -n, 1))


@dataclass
class SpanBasis:
    labels: list
    elements: list

    def __len__(self):
        return len(self.elements)


def make_generators(D, max_n: int) -> SpanBasis:
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    labels, elems = ["X"], [X_field(D)]
    for n in range(max_n + 1):
        labels.append(f"Y_-{n}")
        elems.append(Y_field(n))
    for n in range(max_n + 1):
        labels.append(f"Z_-{n}")
        elems.append(Z_field(n))
    return SpanBasis(labels, elems)


@dataclass
class Membership:
    member: bool
    combination: dict
    offending_term: Optional[str] = None

    def to_dict(self) -> dict:
        return {"member": self.member,
                "combination": {k: str(v) for k, v in self.combination.items()},
                "offending_term": self.offending_term}


def span_membership(f: LineField, basis: SpanBasis) -> Membership:
    """Exact test over the ExpTerm basis; returns the combination or a term
    of ``f`` that no basis element contains."""
    if f.is_zero():
        return Membership(True, {})
    keys = set()
    for e in basis.elements:
        keys.update(e.coeff.term_dict())
    target = f.coeff.term_dict()
    for k in sorted(target, key=str):
        if k not in keys:
            term = ExpPoly.monomial(target[k], k[2], k[0], k[1])
            return Membership(False, {}, term.render())
    order = sorted(keys | set(target), key=str)
    cols = []
    for e in basis.elements:
        td = e.coeff.term_dict()
        cols.append([td.get(k, 0) for k in order])
    sol = solve_combination(cols, [target.get(k, 0) for k in order])
    if sol is None:
        return Membership(False, {}, f.coeff.render())
    combo = {lab: c for lab, c in zip(basis.labels, sol) if c}
    return Membership(True, combo)


# ------------------------------------------------------------ relation table

FAMILIES = ("[Y_-n,X]", "[Z_-n,X]", "[Y_-n,Y_-m]", "[Z_-m,Y_-n]", "[Z_-m,Z_-n]")


def _expected(family: str, m: int, n: int, D, sign=1) -> LineField:
    two_d = 2 * parse_rational(D)
    if family == "[Y_-n,X]":
        return Y_field(n + 1).scale(n * two_d)
    if family == "[Z_-n,X]":
        return (Z_field(n + 1).scale(n) - Z_field(n)).scale(two_d)
    if family == "[Y_-n,Y_-m]":
        return Y_field(n + m + 1).scale(n - m)
    if family == "[Z_-m,Y_-n]":
        return Z_field(n + m + 1).scale((m - n) * sign) - Z_field(n + m)
    if family == "[Z_-m,Z_-n]":
        # (m - n) e^x Z_-(n+m+1): coefficient (m - n) e^2x x^-(n+m+1)
        return LineField(ExpPoly.monomial(m - n, -(n + m + 1), 2))
    raise ValueError(f"unknown family {family!r}")


def _actual(family: str, m: int, n: int, D) -> LineField:
    if family == "[Y_-n,X]":
        return vf_commutator(Y_field(n), X_field(D))
    if family == "[Z_-n,X]":
        return vf_commutator(Z_field(n), X_field(D))
    if family == "[Y_-n,Y_-m]":
        return vf_commutator(Y_field(n), Y_field(m))
    if family == "[Z_-m,Y_-n]":
        return vf_commutator(Z_field(m), Y_field(n))
    return vf_commutator(Z_field(m), Z_field(n))


def relation_table(D, max_n: int, inject_fault: bool = False) -> dict:
    """{family: {(m, n): (ok, actual, expected)}}; single-index families use m = n."""
    sign = -1 if inject_fault else 1
    table = {}
    for fam in FAMILIES:
        rows = {}
        single = fam in ("[Y_-n,X]", "[Z_-n,X]")
        pairs = [(n, n) for n in range(max_n + 1)] if single else \
            [(m, n) for m in range(max_n + 1) for n in range(max_n + 1)]
        for m, n in pairs:
            act = _actual(fam, m, n, D)
            exp = _expected(fam, m, n, D, sign)
            rows[(m, n)] = (act.coeff == exp.coeff, act, exp)
        table[fam] = rows
    return table


def verify_relations(D, max_n: int, inject_fault: bool = False) -> VerificationReport:
    """All five families for 0 <= m, n <= max_n, with the 2D factors made
    explicit.  ``inject_fault`` flips a sign in the [Z_-m, Y_-n] checker."""
    D = parse_rational(D)
    rep = VerificationReport(f"commutation relations, D = {D}, max_n = {max_n}")
    table = relation_table(D, max_n, inject_fault)
    for fam, rows in table.items():
        bad = [(k, a, e) for k, (ok, a, e) in rows.items() if not ok]
        details = {"pairs": len(rows), "failed": len(bad)}
        if bad:
            (m, n), a, e = bad[0]
            details["first_failure"] = {"m": m, "n": n, "actual": a.render(), "expected": e.render()}
        rep.add(fam, not bad, **details)
    # the plain table (no 2D factors) only agrees with X = 2D d/dx at D = 1/2
    literal = all(
        vf_commutator(Y_field(n), X_field(D)).coeff == Y_field(n + 1).scale(n).coeff
        and vf_commutator(Z_field(n), X_field(D)).coeff
        == (Z_field(n + 1).scale(n) - Z_field(n)).coeff
        for n in range(max_n + 1))
    rep.notes.append(f"unscaled X-relations hold at D = {D}: {literal}"
                     + ("" if literal else " (they need D = 1/2, where 2D = 1)"))
    return rep


def render_table(D, max_n: int) -> str:
    lines = []
    for fam, rows in relation_table(D, max_n).items():
        ok = sum(1 for v in rows.values() if v[0])
        lines.append(f"{fam:<14} {ok}/{len(rows)} pass")
    return "\n".join(lines)


def table_json(D, max_n: int) -> dict:
    return {fam: [{"m": m, "n": n, "pass": ok} for (m, n), (ok, _a, _e) in rows.items()]
            for fam, rows in relation_table(D, max_n).items()}


# ------------------------------------------------------------ two-component fields

def vf2_commutator(a: VectorField, b: VectorField) -> VectorField:
    """[A, B] = (A(xi_B) - B(xi_A)) d/dx + (A(eta_B) - B(eta_A)) d/du."""
    return VectorField(a.apply(b.xi) - b.apply(a.xi), a.apply(b.eta) - b.apply(a.eta))


def xi_u2_coefficient(f: VectorField) -> ExpPoly:
    return f.xi.coeff(2)


__all__ = [
    "LineField", "SpanBasis", "Membership", "FAMILIES", "vf_commutator", "X_field",
    "Y_field", "Z_field", "make_generators", "span_membership", "relation_table",
    "verify_relations", "render_table", "table_json", "vf2_commutator",
    "xi_u2_coefficient",
]
