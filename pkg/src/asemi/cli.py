"""Command-line front end: ``compute``, ``sweep``, ``check`` and ``repro``.

Exit codes: 0 success, 1 verification mismatch or violation, 2 parse error,
3 mathematical precondition failure, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
from fractions import Fraction

import numpy as np

from . import matfile
from .errors import ParseError, SemiNormError
from .inequalities import (ALL_THEOREMS, DEFAULT_ALPHAS, MIN_ALPHA_THEOREMS, TOL_REL, CampaignConfig,
                           Evaluator, TheoremId, run_campaign)
from .semihilbert import a_adjoint, make_context
from .seminorms import a_crawford, a_min_modulus, a_operator_norm, alpha_seminorm, a_numerical_radius
from .matcore import DEFAULT_TOL

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_MATH, EXIT_IO = 0, 1, 2, 3, 4

REPRO_T = np.array([[0, 0, 0], [2, 0, 0], [0, 1, 0]], dtype=complex)
REPRO_A = np.diag([1.0, 1.0, 2.0]).astype(complex)
REPRO_TOL = 1e-9
MARGIN_TOL = 1e-6

SWEEP_THEOREMS = (TheoremId.EQUIV_W, TheoremId.EQUIV_NORM, TheoremId.LOWER_MAX4, TheoremId.CARTESIAN_LOWER,
                  TheoremId.CARTESIAN_UPPER, TheoremId.WA2_HALF, TheoremId.FINAL_UPPER,
                  TheoremId.ATTAINMENT_GAP)
DEFAULT_SWEEP = (TheoremId.CARTESIAN_UPPER, TheoremId.WA2_HALF, TheoremId.FINAL_UPPER)


def fmt(x: float) -> str:
    return f"{x:.12f}"


def _fmt_complex(z: complex) -> str:
    if abs(z.imag) <= 1e-15 * (1 + abs(z.real)):
        return fmt(z.real)
    return f"{fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}i"


def format_matrix(M, indent: str = "  ") -> str:
    return "\n".join(indent + "[" + ", ".join(_fmt_complex(complex(z)) for z in row) + "]" for row in M)


def _theorem_list(text: str | None, default) -> tuple[TheoremId, ...]:
    if not text:
        return tuple(default)
    try:
        return tuple(TheoremId(t.strip().upper()) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise ParseError(f"unknown theorem in --theorems: {exc}") from None


def _alpha_list(text: str | None) -> tuple[float, ...]:
    if not text:
        return DEFAULT_ALPHAS
    try:
        return tuple(float(Fraction(t.strip())) for t in text.split(",") if t.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot parse --alphas {text!r}") from None


def _load_pair(a_path, t_path, tol):
    A = matfile.read(a_path)
    T = matfile.read(t_path)
    return make_context(A, tol=tol), T


# -- compute ------------------------------------------------------------------

def cmd_compute(args) -> int:
    ctx, T = _load_pair(args.A, args.T, args.tol)
    op = a_adjoint(ctx, T)
    n_alpha = alpha_seminorm(ctx, op, args.alpha)
    lines = [
        f"rank(A)            {ctx.rank}",
        f"membership_resid   {op.membership_residual:.3e}",
        f"norm_A             {fmt(a_operator_norm(ctx, op))}",
        f"min_modulus_A      {fmt(a_min_modulus(ctx, op))}",
        f"w_A                {fmt(a_numerical_radius(ctx, op).value)}",
        f"c_A                {fmt(a_crawford(ctx, op).value)}",
        f"alpha_seminorm     {fmt(n_alpha.value)}   (alpha = {args.alpha:g})",
        "A-adjoint T^#A:",
        format_matrix(np.array(op.adjoint)),
    ]
    print("\n".join(lines))
    return EXIT_OK


# -- sweep --------------------------------------------------------------------

def alpha_grid(start: float, end: float, step: float) -> list[float]:
    if not (0.0 <= start < end <= 1.0) or not step > 0:
        raise ValueError("sweep needs 0 <= from < to <= 1 and step > 0")
    out, i = [], 0
    while True:
        a = start + i * step
        if a > end + 1e-12:
            break
        out.append(min(a, end))
        i += 1
    return out


def bound_value(ev: Evaluator, theorem: TheoremId, alpha: float) -> float:
    """Scalar bound of a theorem at alpha, in the theorem's own units.

    Upper bounds: EQUIV_W on the seminorm; CARTESIAN_UPPER, WA2_HALF,
    FINAL_UPPER on its square. Lower bounds: EQUIV_NORM on the seminorm;
    LOWER_MAX4, CARTESIAN_LOWER (max over branches) on its square.
    ATTAINMENT_GAP is the gap itself (0 at the endpoints).
    """
    if theorem is TheoremId.ATTAINMENT_GAP and alpha in (0.0, 1.0):
        return 0.0
    parts, extras = ev.parts(theorem, alpha)
    if theorem is TheoremId.EQUIV_W:
        return parts[1].rhs
    if theorem is TheoremId.EQUIV_NORM:
        return parts[0].lhs
    if theorem in (TheoremId.LOWER_MAX4, TheoremId.CARTESIAN_LOWER):
        return max(p.lhs for p in parts)
    if theorem is TheoremId.ATTAINMENT_GAP:
        return extras["gap"]
    return parts[0].rhs


def cmd_sweep(args) -> int:
    theorems = _theorem_list(args.theorems, DEFAULT_SWEEP)
    bad = [str(t) for t in theorems if t not in SWEEP_THEOREMS]
    if bad:
        raise ParseError(f"sweep supports {', '.join(map(str, SWEEP_THEOREMS))}; got {', '.join(bad)}")
    ctx, T = _load_pair(args.A, args.T, args.tol)
    alphas = alpha_grid(args.start, args.end, args.step)
    ev = Evaluator(ctx, T)
    ev.t.prefetch(alphas)
    w, norm = ev.t.w, ev.t.norm
    header = ["alpha", "alpha_seminorm", "envelope", "norm_A", "w_A"] + [str(t) for t in theorems]
    rows = []
    for a in alphas:
        env = math.sqrt(a * w * w + (1 - a) * norm * norm)
        row = [a, ev.t.alpha(a), env, norm, w] + [bound_value(ev, t, a) for t in theorems]
        rows.append([fmt(v) for v in row])
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


# -- check --------------------------------------------------------------------

def cmd_check(args) -> int:
    theorems = _theorem_list(args.theorems, ALL_THEOREMS)
    alphas = _alpha_list(args.alphas)
    total = 0
    reports = []
    for dim in args.dim:
        for rd in args.rank_deficit:
            cfg = CampaignConfig(trials=args.trials, dim=dim, rank_deficit=rd, seed=args.seed,
                                 theorems=theorems, alphas=alphas, tol_rel=args.tol, starts=args.starts)
            rep = run_campaign(cfg, workers=args.workers)
            reports.append(rep)
            print(rep.summary())
            for v in rep.violations:
                print(f"VIOLATION {v['theorem']} alpha={v['alpha']} trial={v['trial']} "
                      f"seed={v['seed']} lhs={v['lhs']!r} rhs={v['rhs']!r}")
                for name, text in v["matrices"].items():
                    print(f"  {name}: {text}")
            for e in rep.errors:
                print(f"ERROR {e['theorem']} alpha={e['alpha']} trial={e['trial']} seed={e['seed']}: {e['error']}")
            print()
            total += rep.total_violations
    if args.json:
        import json
        doc = [r.to_dict() for r in reports]
        with open(args.json, "w") as fh:
            fh.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print(f"overall violations: {total}")
    return EXIT_OK if total == 0 else EXIT_MISMATCH


# -- repro --------------------------------------------------------------------

def repro_rows():
    """(label, computed, expected) for the worked example values."""
    ctx = make_context(REPRO_A)
    ev = Evaluator(ctx, REPRO_T)
    G, K = ev.gram, ev.cogram
    sig = np.linalg.norm(G + K, 2)
    w2 = ev.w_square()
    a1, a2 = Fraction(7, 8), Fraction(12, 13)
    cart = ev.rhs_function(TheoremId.WA_MIN_ALPHA_CARTESIAN)
    sq = ev.rhs_function(TheoremId.WA_MIN_ALPHA_SQUARE)
    return [
        ("CARTESIAN alpha=7/8", float(cart(float(a1))), 23 / 8),
        ("baseline 1/2||T#T+TT#||", 0.5 * sig, 3.0),
        ("SQUARE alpha=12/13", float(sq(float(a2))), (6 * math.sqrt(2) + 20) / 13),
        ("baseline 1/2w(T^2)+1/4||T#T+TT#||", 0.5 * w2 + 0.25 * sig, (3 + math.sqrt(2)) / 2),
    ], ev


def cmd_repro(args) -> int:
    rows, ev = repro_rows()
    ok = True
    print(f"{'quantity':<36}{'computed':>18}{'expected':>16}  status")
    for label, got, want in rows:
        match = abs(got - want) <= REPRO_TOL
        ok &= match
        print(f"{label:<36}{fmt(got):>18}{want:>16.9f}  {'matched' if match else 'MISMATCH'}")
    print()
    print(f"{'min over alpha':<36}{'alpha*':>14}{'value':>18}{'baseline':>18}{'margin':>18}  status")
    for th in (TheoremId.WA_MIN_ALPHA_CARTESIAN, TheoremId.WA_MIN_ALPHA_SQUARE):
        rep_parts, extras = ev.parts(th, None)
        value, baseline = rep_parts[1].lhs, extras["baseline"]
        margin = baseline - value
        good = margin > MARGIN_TOL and rep_parts[0].slack >= -TOL_REL * (1 + abs(value))
        ok &= good
        print(f"{str(th):<36}{extras['alpha_star']:>14.9f}{fmt(value):>18}{fmt(baseline):>18}"
              f"{fmt(margin):>18}  {'strict' if good else 'NOT STRICT'}")
    print()
    print("all values matched" if ok else "mismatch")
    return EXIT_OK if ok else EXIT_MISMATCH


# -- entry point ----------------------------------------------------------------

def _workers(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("workers must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="asemi", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="all seminorms of one operator")
    c.add_argument("--A", required=True, help="MatrixFile for the weight A")
    c.add_argument("--T", required=True, help="MatrixFile for the operator T")
    c.add_argument("--alpha", type=float, default=0.5)
    c.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative rank cutoff for A")
    c.set_defaults(func=cmd_compute)

    s = sub.add_parser("sweep", help="alpha sweep written as CSV")
    s.add_argument("--A", required=True)
    s.add_argument("--T", required=True)
    s.add_argument("--from", dest="start", type=float, default=0.0)
    s.add_argument("--to", dest="end", type=float, default=1.0)
    s.add_argument("--step", type=float, default=0.125)
    s.add_argument("--out", required=True, help="CSV output path")
    s.add_argument("--theorems", help="comma-separated bound columns (default %s)"
                   % ",".join(map(str, DEFAULT_SWEEP)))
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.set_defaults(func=cmd_sweep)

    k = sub.add_parser("check", help="randomised verification campaign")
    k.add_argument("--trials", type=int, default=100)
    k.add_argument("--dim", type=int, nargs="+", default=[3])
    k.add_argument("--rank-deficit", type=int, nargs="+", default=[0])
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--theorems", help="comma-separated theorem ids (default: all)")
    k.add_argument("--alphas", help="comma-separated alphas, fractions allowed (default: 0,0.1,...,1,7/8,12/13)")
    k.add_argument("--tol", type=float, default=TOL_REL, help="relative slack tolerance")
    k.add_argument("--starts", type=int, default=0, help="random ascent starts per alpha on the first pass")
    k.add_argument("--workers", type=_workers, default=None,
                   help="worker processes (default: $ASEMI_WORKERS or 1)")
    k.add_argument("--json", help="also write the full reports as JSON")
    k.set_defaults(func=cmd_check)

    r = sub.add_parser("repro", help="reproduce the worked example values")
    r.set_defaults(func=cmd_repro)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SemiNormError, ValueError) as exc:
        print(f"precondition failed ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_MATH
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
