"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 for
usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__, algebra, checks, family, oracle, spectrum, symmetry
from .exact import parse_rational
from .report import VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(ValueError):
    pass


# ------------------------------------------------------------ problem files

PROBLEM_KEYS = {"C", "D", "n_range", "branch", "ps", "ansatz_N_max", "oracle"}


def _rational(value, what):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise InputError(f"{what} must be a rational string like '3/4', got {value!r}")
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: {exc}") from None


def _int(value, what, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise InputError(f"{what} must be >= {minimum}, got {value}")
    return value


def load_problem(path) -> dict:
    """Read and validate a ProblemFile; all keys are optional."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read problem file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"problem file is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise InputError("problem file must hold a JSON object")
    unknown = set(raw) - PROBLEM_KEYS
    if unknown:
        raise InputError(f"unknown problem keys: {sorted(unknown)}")
    out = {}
    for key in ("C", "D"):
        if key in raw:
            out[key] = _rational(raw[key], key)
    if "n_range" in raw:
        nr = raw["n_range"]
        if not isinstance(nr, list) or len(nr) != 2:
            raise InputError("n_range must be [n_min, n_max]")
        lo, hi = (_int(v, "n_range entry", 0) for v in nr)
        if lo > hi:
            raise InputError("n_range must satisfy n_min <= n_max")
        out["n_range"] = (lo, hi)
    if "branch" in raw:
        try:
            out["branch"] = spectrum.Branch.parse(raw["branch"])
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if "ps" in raw:
        if not isinstance(raw["ps"], list) or not raw["ps"]:
            raise InputError("ps must be a non-empty list")
        out["ps"] = [_rational(v, "ps entry") for v in raw["ps"]]
    if "ansatz_N_max" in raw:
        out["ansatz_N_max"] = _int(raw["ansatz_N_max"], "ansatz_N_max", 1)
    if "oracle" in raw:
        o = raw["oracle"]
        if not isinstance(o, dict) or set(o) - {"m", "tol"}:
            raise InputError("oracle must be an object with keys m, tol")
        cfg = {}
        if "m" in o:
            cfg["m"] = _int(o["m"], "oracle.m", 3)
        if "tol" in o:
            if isinstance(o["tol"], bool) or not isinstance(o["tol"], (int, float)) or o["tol"] <= 0:
                raise InputError("oracle.tol must be a positive number")
            cfg["tol"] = float(o["tol"])
        out["oracle"] = cfg
    return out


# ------------------------------------------------------------ run reports

class RunReport:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.reports: list[VerificationReport] = []
        self.result: dict = {}
        self.text: list[str] = []
        self.discrepancies: list[str] = []

    @property
    def failed(self) -> list[str]:
        return [f"{r.title}: {c.name}" for r in self.reports for c in r.failures()]

    @property
    def exit_status(self) -> int:
        return EXIT_FAIL if self.failed else EXIT_OK

    def to_dict(self) -> dict:
        return {
            "tool": "kratzer-sga",
            "version": __version__,
            "command": self.command,
            "input": self.inputs,
            "result": self.result,
            "paper_discrepancies": self.discrepancies,
            "checks": [r.to_dict() for r in self.reports],
            "failed": self.failed,
            "exit_status": self.exit_status,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }

    def render(self) -> str:
        lines = list(self.text)
        for r in self.reports:
            lines.append(r.render())
        for d in self.discrepancies:
            lines.append(f"discrepancy: {d}")
        lines.append("FAILED: " + "; ".join(self.failed) if self.failed else "all checks passed")
        return "\n".join(lines)


def _pick(args, problem, name, key=None, default=None):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return problem.get(key or name, default)


def _branch(value):
    try:
        return spectrum.Branch.parse(value)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _require(value, flag):
    if value is None:
        raise InputError(f"missing {flag} (give the flag or a --problem file)")
    return value


# ------------------------------------------------------------ subcommands

def cmd_spectrum(args, problem) -> RunReport:
    C = _require(_pick(args, problem, "C"), "--C")
    D = _require(_pick(args, problem, "D"), "--D")
    branch = _branch(_pick(args, problem, "branch", default="plus"))
    if args.n_max is not None:
        n_lo, n_hi = 0, args.n_max
    else:
        n_lo, n_hi = problem.get("n_range", (0, 3))
    if n_hi < 0:
        raise InputError("--n-max must be >= 0")
    if 1 - 4 * C < 0:
        raise InputError(f"1 - 4C = {1 - 4 * C} < 0: no real square root")
    if D <= 0:
        raise InputError(f"D = {D} <= 0: no discrete levels")
    run = RunReport("spectrum", {"C": str(C), "D": str(D), "n_range": [n_lo, n_hi],
                                 "branch": branch.value})
    rows = [r for r in spectrum.spectrum_table(C, D, n_hi, branch) if r["n"] >= n_lo]
    rep = VerificationReport("quantization condition")
    run.text.append(f"C = {C}, D = {D}, branch = {branch.value}")
    run.text.append(f"{'n':>3}  {'E_hat':>24}")
    for row in rows:
        n = row["n"]
        if "rejected" in row:
            run.text.append(f"{n:>3}  {'rejected':>24}  ({row['rejected']})")
            continue
        lvl = spectrum.discrete_energy(C, D, n, branch)
        co = spectrum.to_abc(spectrum.RadialProblem(C, D, lvl.E_hat))
        resid = spectrum.quantization_residual(co, n, branch)
        rep.add(f"n={n} quantization residual is zero", resid == 0)
        run.text.append(f"{n:>3}  {str(lvl.E_hat):>24}")
    run.reports.append(rep)
    run.result = {"levels": rows}
    run.discrepancies.append(spectrum.RADICAND_NOTE)
    return run


def cmd_oracle(args, problem) -> RunReport:
    C = _require(_pick(args, problem, "C"), "--C")
    D = _require(_pick(args, problem, "D"), "--D")
    cfg = problem.get("oracle", {})
    m = args.m if args.m is not None else cfg.get("m", oracle.DEFAULT_M)
    tol = args.tol if args.tol is not None else cfg.get("tol", oracle.DEFAULT_TOL)
    k = args.k
    if k is None:
        k = problem.get("n_range", (0, 2))[1] + 1
    if m < 3 or k < 1 or not tol > 0:
        raise InputError("need --m >= 3, --k >= 1 and --tol > 0")
    try:
        sr = oracle.solve_radial(C, D, k, m=m, tol=tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    run = RunReport("oracle", {"C": str(C), "D": str(D), "k": k, "m": m, "tol": tol})
    rep = VerificationReport("closed form vs finite differences (1e-3 relative)")
    for lv in sr.levels:
        rep.add(f"n={lv.n}", lv.rel_error < 1e-3, rel_error=lv.rel_error)
    rep.add("grid refinement converged", sr.converged)
    run.reports.append(rep)
    run.result = sr.to_dict()
    run.text.append(sr.render())
    return run


def _bracket_text(gp) -> str:
    parts = [f"({gp.inv_square_coeff})·x^(-2)"]
    parts += [f"({c})·x^({e})" for c, e in gp.power_terms]
    return " + ".join(parts)


def cmd_family(args, problem) -> RunReport:
    C = _require(_pick(args, problem, "C"), "--C")
    D = _require(_pick(args, problem, "D"), "--D")
    branch = _branch(_pick(args, problem, "branch", default="plus"))
    n = args.n if args.n is not None else problem.get("n_range", (0, 0))[0]
    ps = args.p or problem.get("ps") or [Fraction(3)]
    if any(p <= 0 for p in ps):
        raise InputError("every --p must be positive")
    try:
        members = family.family_members(C, D, n, branch, ps)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    run = RunReport("family", {"C": str(C), "D": str(D), "n": n, "branch": branch.value,
                               "ps": [str(p) for p in ps], "check_zero_mode": args.check_zero_mode})
    rep = VerificationReport("family members")
    level = spectrum.discrete_energy(C, D, n, branch)
    co = spectrum.to_abc(spectrum.RadialProblem(C, D, level.E_hat))
    exact_data = all(isinstance(v, Fraction) for v in (co.a, co.b, co.c))
    rep.add("quantization residual is zero", spectrum.quantization_residual(co, n, branch) == 0)
    out = []
    for gp in members:
        entry = gp.to_dict()
        if exact_data:
            ok = family.substitution_residual(co, gp.p).is_zero()
            rep.add(f"p={gp.p} change of variables is exact", ok)
        if args.check_zero_mode:
            if not exact_data:
                rep.skip(f"p={gp.p} zero mode", "irrational level")
            else:
                try:
                    res = oracle.zero_mode_residual(gp, oracle.auto_zero_mode_grid(gp))
                except ValueError as exc:
                    raise InputError(str(exc)) from None
                entry["zero_mode_residual"] = res
                rep.add(f"p={gp.p} zero mode < {args.zero_mode_tol:g}", res < args.zero_mode_tol,
                        residual=res)
        out.append(entry)
        run.text.append(f"p = {gp.p}: u'' + [{_bracket_text(gp)}] u = 0"
                        f"   (R = x^({gp.wavefunction_exponent}) u)")
    run.reports.append(rep)
    run.result = {"E_hat": spectrum.format_exact(level.E_hat), "members": out}
    if any(p == Fraction(2, 3) for p in ps):
        run.discrepancies.append(family.P_TWO_THIRDS_NOTE)
    return run


def cmd_symmetry(args, problem) -> RunReport:
    N = args.N if args.N is not None else problem.get("ansatz_N_max", 3)
    if N < 1:
        raise InputError("--N must be >= 1")
    D = args.D if args.D is not None else problem.get("D", Fraction(1))
    if D <= 0:
        raise InputError("--D must be positive")
    sols = symmetry.ansatz_solve_all(N)
    run = RunReport("symmetry", {"N": N, "D": str(D)})
    rep = VerificationReport(f"Laurent ansatz N = {N}")
    rep.add("a solution exists", bool(sols))
    for s in sols:
        resid = symmetry.beta_ode_residual(s.C, D, s.E_hat(D), s.beta(D))
        rep.add(f"E/D^2 = {s.E_over_D2}: beta ODE residual is zero at D = {D}", resid.is_zero())
        field_ = symmetry.build_vector_field(s, D=D)
        Q = symmetry.kratzer_Q(s.C, D, s.E_hat(D))
        rep.add(f"E/D^2 = {s.E_over_D2}: beta-only field is a symmetry",
                symmetry.determining_residual(Q, field_).is_zero())
    run.reports.append(rep)
    run.result = {"principal": sols[0].to_dict() if sols else None,
                  "solutions": [s.to_dict() for s in sols]}
    if sols:
        s = sols[0]
        run.text.append(f"N = {N}: C = {s.C}, E_hat/D^2 = {s.E_over_D2}")
        for l, (c, p) in zip(range(N, -1, -1), s.g_ratios):
            run.text.append(f"  g_{l} = {c} * D^{p}")
        run.text.append(f"  beta(x) at D = {D}: {s.beta(D).render()}")
        for extra in sols[1:]:
            run.text.append(f"  further root: E_hat/D^2 = {extra.E_over_D2}")
        run.discrepancies.extend(s.notes)
    run.discrepancies.append("2 gamma' = beta'' is used; a printed variant with 2 gamma' - 2 beta'' "
                             "does not follow from the determining equations")
    return run


def cmd_algebra(args, problem) -> RunReport:
    D = args.D if args.D is not None else problem.get("D", Fraction(1, 2))
    if args.max_n < 0:
        raise InputError("--max-n must be >= 0")
    run = RunReport("algebra", {"D": str(D), "max_n": args.max_n})
    rep = algebra.verify_relations(D, args.max_n, inject_fault=args.inject_fault)
    run.reports.append(rep)
    basis = algebra.make_generators(D, args.max_n)
    nonclosure = {}
    if args.max_n >= 2:
        zz = algebra.vf_commutator(algebra.Z_field(2), algebra.Z_field(1))
        nonclosure["[Z_-2,Z_-1]"] = algebra.span_membership(zz, basis).to_dict()
    run.result = {"table": algebra.table_json(D, args.max_n), "non_closure": nonclosure}
    run.text.append(algebra.render_table(D, args.max_n))
    for k, v in nonclosure.items():
        run.text.append(f"{k} in span: {v['member']} (offending term {v['offending_term']})")
    return run


def cmd_verify_all(args, problem) -> RunReport:
    run = RunReport("verify-all", {"skip_numeric": args.skip_numeric, "seed": args.seed})
    run.reports = checks.run_all(skip_numeric=args.skip_numeric,
                                 inject_fault=args.inject_fault, seed=args.seed,
                                 cli_check=not args.inject_fault)
    run.discrepancies = [spectrum.RADICAND_NOTE, family.P_TWO_THIRDS_NOTE,
                         *symmetry.RATIO_NOTES.values()]
    return run


COMMANDS = {
    "spectrum": cmd_spectrum,
    "oracle": cmd_oracle,
    "family": cmd_family,
    "symmetry": cmd_symmetry,
    "algebra": cmd_algebra,
    "verify-all": cmd_verify_all,
}


# ------------------------------------------------------------ argument parsing

def _arg_rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--out", metavar="PATH", help="also write the JSON report to PATH")
    common.add_argument("--problem", metavar="FILE", help="JSON problem file")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    parser = argparse.ArgumentParser(prog="kratzer-sga", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="exact discrete levels")
    p.add_argument("--C", type=_arg_rational)
    p.add_argument("--D", type=_arg_rational)
    p.add_argument("--n-max", type=int)
    p.add_argument("--branch")

    p = sub.add_parser("oracle", parents=[common], help="finite-difference cross-check")
    p.add_argument("--C", type=_arg_rational)
    p.add_argument("--D", type=_arg_rational)
    p.add_argument("--k", type=int, help="number of levels")
    p.add_argument("--m", type=int, help="interior grid points")
    p.add_argument("--tol", type=float)

    p = sub.add_parser("family", parents=[common], help="isospectral family members")
    p.add_argument("--C", type=_arg_rational)
    p.add_argument("--D", type=_arg_rational)
    p.add_argument("--n", type=int)
    p.add_argument("--branch")
    p.add_argument("--p", type=_arg_rational, action="append")
    p.add_argument("--check-zero-mode", action="store_true")
    p.add_argument("--zero-mode-tol", type=float, default=1e-2)

    p = sub.add_parser("symmetry", parents=[common], help="Laurent ansatz for the beta equation")
    p.add_argument("--N", type=int)
    p.add_argument("--D", type=_arg_rational)

    p = sub.add_parser("algebra", parents=[common], help="extended commutation table")
    p.add_argument("--D", type=_arg_rational)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("verify-all", parents=[common], help="run acceptance checks A1-A9")
    p.add_argument("--skip-numeric", action="store_true")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


_NEGATIVE_VALUE = re.compile(r"^-\d")


def _attach_negative_values(argv):
    """argparse takes '-3/4' for an option; rewrite '--C -3/4' as '--C=-3/4'."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if (tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
                and _NEGATIVE_VALUE.match(argv[i + 1])):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        problem = load_problem(args.problem) if args.problem else {}
        run = COMMANDS[args.command](args, problem)
    except (InputError, spectrum.SpectrumError, symmetry.FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = run.to_dict()
    text = json.dumps(payload, indent=2, default=str)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    print(text if args.json else run.render())
    return run.exit_status


if __name__ == "__main__":
    sys.exit(main())
