"""Command-line driver: one subcommand per verification campaign.

Every run writes a JSON report (sorted keys, no timestamps, so identical
arguments give byte-identical files) and prints a summary.  Exit status is 0
when every check passes, 1 when a finite instance of a claimed identity
fails, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import certify as C
from . import flows as F
from . import modules as M
from . import roots as R
from .chevalley import chevalley_basis
from .errors import (
    DimensionMismatch,
    HypothesisNotMet,
    IdentityFailure,
    LieDenseError,
    NotARepresentation,
    NotAShear,
    NotFoundWithinBound,
    NotSymplectic,
    WitnessNotFound,
)
from .linalg import fmt_rational, parse_rational

VERIFIED_FAILURES = (WitnessNotFound, IdentityFailure, NotARepresentation, DimensionMismatch,
                     NotAShear)


class UsageError(Exception):
    def __init__(self, flag: str, msg: str):
        super().__init__(f"{flag}: {msg}")
        self.flag = flag


# ---------------------------------------------------------------------------
# argument helpers


def _rtype(args, required: bool = True) -> R.RootSystemType | None:
    arg = getattr(args, "type", None) or getattr(args, "type_pos", None)
    if arg is None:
        if required:
            raise UsageError("--type", "a root system type is required")
        return None
    try:
        return R.RootSystemType.parse(arg, args.rank)
    except (LieDenseError, ValueError) as exc:
        raise UsageError("--type", str(exc)) from None


def _ints(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(flag, f"expected comma-separated integers, got {text!r}") from None


def _rationals(text: str, flag: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_rational(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(flag, f"expected comma-separated rationals, got {text!r}") from None


def _weight(rs: R.RootSystem, text: str) -> R.Vec:
    """``--weight`` takes Dynkin labels (coefficients of the fundamental weights)."""
    labels = _rationals(text, "--weight")
    if len(labels) != rs.rank:
        raise UsageError("--weight", f"{rs.rtype} needs {rs.rank} Dynkin labels")
    return rs.from_dynkin(labels)


def _root(rs: R.RootSystem, text: str) -> R.Vec:
    """``--root`` takes coordinates in the simple roots."""
    coeffs = _ints(text, "--root")
    if len(coeffs) != rs.rank:
        raise UsageError("--root", f"{rs.rtype} needs {rs.rank} simple-root coordinates")
    v = rs.from_simple_coords(coeffs)
    if v not in rs.roots:
        raise UsageError("--root", f"{list(coeffs)} is not a root of {rs.rtype}")
    return v


def _load_rep(args) -> tuple[M.Representation, str, bool]:
    """Resolve ``--rep``; returns the module, a file tag and whether generation is claimed."""
    arg = args.rep
    if arg == "adjoint":
        t = _rtype(args)
        return M.adjoint_rep(chevalley_basis(t)), f"{t}-adjoint", True
    if arg.startswith("sl2:"):
        try:
            n = int(arg[4:])
        except ValueError:
            raise UsageError("--rep", f"bad sl2 module {arg!r}") from None
        if n < 0:
            raise UsageError("--rep", "sl2 highest weight must be nonnegative")
        # generation is claimed for odd dimension and for C^2
        return M.sl2_irrep(n), f"A1-sl2_{n}", n % 2 == 0 or n == 1
    if arg.startswith("file:"):
        path = Path(arg[5:])
        try:
            rep = M.load_representation(path)
        except NotARepresentation:
            raise
        except (OSError, ValueError, LieDenseError) as exc:
            raise UsageError("--rep", f"{path}: {exc}") from None
        return rep, f"{rep.algebra.rs.rtype}-{path.stem}", False
    raise UsageError("--rep", f"expected adjoint, sl2:<n> or file:<path>, got {arg!r}")


# ---------------------------------------------------------------------------
# campaigns; each returns (report, ok, summary lines)


def cmd_roots(args):
    rs = R.build(_rtype(args))
    roots = R.sorted_roots(rs)
    report = {"type": str(rs.rtype), "count": len(roots),
              "expected_count": R.CLASSICAL_COUNTS[rs.rtype.family](rs.rank)
              if rs.rtype.family in R.CLASSICAL_COUNTS else len(roots),
              "roots": [R.fmt(a) for a in roots], "root_system": rs.to_json()}
    ok = report["count"] == report["expected_count"]
    lines = [f"{rs.rtype}: {len(roots)} roots"] + ["  " + " ".join(R.fmt(a)) for a in roots]
    return f"roots-{rs.rtype}", report, ok, lines


def cmd_pairing(args):
    rs = R.build(_rtype(args))
    if args.weight is None:
        raise UsageError("--weight", "a weight in Dynkin labels is required")
    lam = _weight(rs, args.weight)
    roots = [_root(rs, args.root)] if args.root else list(rs.positive_roots)
    rows = [{"root": list(rs.root_coords(a)), "pairing": fmt_rational(R.pairing(lam, a))}
            for a in roots]
    report = {"type": str(rs.rtype), "weight": R.fmt(lam),
              "dynkin": R.fmt(rs.dynkin_labels(lam)), "pairings": rows}
    lines = [f"<{r['root']}> -> {r['pairing']}" for r in rows]
    return f"pairing-{rs.rtype}", report, True, lines


def cmd_lattice(args):
    rs = R.build(_rtype(args))
    if args.weight is None:
        raise UsageError("--weight", "a weight in Dynkin labels is required")
    lam = _weight(rs, args.weight)
    inside, coeffs = R.in_root_lattice(rs, lam)
    dom = R.dominant_representative(rs, lam)
    report = {"type": str(rs.rtype), "weight": R.fmt(lam), "in_root_lattice": inside,
              "simple_root_coefficients": R.fmt(coeffs),
              "dominant_representative": R.fmt(rs.dynkin_labels(dom)),
              "extremal": R.is_extremal(rs, lam)}
    hit = R.find_even_coroot(rs, dom)
    report["even_coroot"] = None if hit is None else {"root": R.fmt(hit[0]), "value": hit[1]}
    lines = [f"in root lattice: {inside} (coefficients {' '.join(R.fmt(coeffs))})",
             f"extremal: {report['extremal']}"]
    return f"lattice-{rs.rtype}", report, True, lines


def _types_for(args, max_rank: int):
    t = _rtype(args, required=False)
    return [t] if t else R.admissible_types(max_rank)


def cmd_momega(args):
    if args.m_max < 1:
        raise UsageError("--m-max", "must be positive")
    rows = []
    for t in _types_for(args, 8):
        rows += R.verify_momega(R.build(t), args.m_max, strict=False)
    failed = [r for r in rows if r["failed"]]
    report = {"m_max": args.m_max, "cases": rows, "all_witnessed": not failed,
              "failures": [[r["type"], r["i"], r["m"]] for r in failed]}
    tag = f"momega-{args.type or 'all'}"
    lines = [f"{len(rows)} cases, {len(failed)} without the required witness"]
    lines += [f"  {r['type']} {r['m']}*omega_{r['i']} (part {r['part']}): pairings {r['pairings']}"
              for r in failed]
    return tag, report, not failed, lines


def cmd_lemma_l3(args):
    bound = args.bound if args.bound is not None else 5
    if bound < 1:
        raise UsageError("--bound", "must be positive")
    rows = []
    for t in _types_for(args, 6):
        rows += R.verify_even_coroot(R.build(t), bound)
    report = {"bound": bound, "cases": rows, "failures": 0}
    lines = [f"{len(rows)} weights, every one has a positive even coroot pairing"]
    return f"lemma-l3-{args.type or 'all'}", report, True, lines


def cmd_chevalley(args):
    g = chevalley_basis(_rtype(args))
    bad = g.jacobi_failures(limit=10)
    triples = [g.sl2_triple(a).holds() for a in g.pos]
    report = {"type": str(g.rs.rtype), "dim": g.dim, "labels": g.labels,
              "jacobi_failures": [[g.labels[i] for i in t] for t in bad],
              "sl2_triples_hold": all(triples), "table": g.export_table()}
    ok = not bad and all(triples)
    if bad:
        raise IdentityFailure(f"Jacobi identity fails on {report['jacobi_failures'][0]}")
    lines = [f"{g.rs.rtype}: dim {g.dim}, Jacobi identity holds on all basis triples",
             f"[E_a, F_a] = H_a for all {g.n_pos} positive roots: {all(triples)}"]
    return f"chevalley-{g.rs.rtype}", report, ok, lines


def cmd_certify(args):
    rep, tag, claimed = _load_rep(args)
    cert = C.certify(rep)
    report = cert.to_json()
    report["claimed"] = claimed
    ok = cert.generated or not claimed
    lines = [f"{cert.module_desc} over {cert.algebra}: closure dims {cert.closure_dims}, "
             f"target {cert.target_dim}", cert.verdict]
    return f"certify-{tag}", report, ok, lines


def cmd_irrep(args):
    rs = R.build(_rtype(args))
    lam = _weight(rs, args.weight) if args.weight else rs.highest_root
    try:
        cert, rep, k = C.certify_irrep(rs, lam, args.k_max)
    except NotFoundWithinBound as exc:
        raise UsageError("--k-max", str(exc)) from None
    expected = M.weyl_dim(rs, lam)
    labels = "_".join(fmt_rational(x) for x in rs.dynkin_labels(lam))
    report = {"type": str(rs.rtype), "dynkin": R.fmt(rs.dynkin_labels(lam)), "k": k,
              "dim": rep.dim, "weyl_dim": expected, "certificate": cert.to_json()}
    ok = rep.dim == expected and cert.generated
    lines = [f"highest weight {R.fmt(rs.dynkin_labels(lam))}: dim {rep.dim} "
             f"(Weyl {expected}) found in adjoint^{k}", cert.verdict]
    return f"irrep-{rs.rtype}-{labels}", report, ok, lines


def cmd_adjoint_cases(args):
    t = _rtype(args)
    report = C.verify_adjoint_cases(chevalley_basis(t))
    lines = [f"{t}: {report['case1_checks']} case-1 checks, "
             f"{len(report['pairs'])} root pairs for cases 2-4, all identities hold"]
    return f"adjoint-cases-{t}", report, True, lines


def cmd_old_sl2(args):
    if args.n is None:
        raise UsageError("--n", "the sl2 highest weight is required")
    ks = [args.k] if args.k is not None else range(args.n + 1)
    rows = []
    for k in ks:
        try:
            rows.append(C.verify_old_sl2(args.n, k))
        except HypothesisNotMet as exc:
            if args.k is not None:
                raise UsageError("--k", str(exc)) from None
    ok = all(r["independent"] for r in rows)
    report = {"n": args.n, "cases": rows}
    lines = [f"v_{r['k']} (weight {r['lambda']}, j={r['j']}): identities hold, rank {r['rank']}"
             for r in rows]
    if not rows:
        lines = ["no basis vector meets the hypotheses"]
    return f"old-sl2-{args.n}", report, ok, lines


def cmd_quadric(args):
    n = args.n if args.n is not None else 4
    if n < 2:
        raise UsageError("--n", "must be at least 2")
    tangent = F.quadric_tangency(n)
    bad = F.quadric_bracket_failures(n)
    weights = F.so_standard_weights(n)
    bound = F.so_standard_boundedness(n)
    eig = F.so_cartan_eigenvalue_bound(n)
    report = {"n": n, "fields": len(F.quadric_fields(n)), "tangency_failures": tangent,
              "bracket_failures": bad, "standard_rep_boundedness": bound,
              "cartan_eigenvalue_bound": eig,
              "weight_vectors": weights["weight_vectors"]}
    if tangent or bad:
        raise IdentityFailure(f"quadric identities fail for n={n}")
    lines = [f"n={n}: {report['fields']} fields tangent to the quadric, bracket relation holds",
             f"standard so({n + 1}) module bounded by {bound} "
             f"(Cartan-basis eigenvalues bounded by {eig})"]
    return f"quadric-{n}", report, True, lines


def euler_campaign() -> dict:
    """Rotation benchmark, commutator slope and shear closed forms."""
    rot = F.rotation_field()
    p = [1, 0]
    exact = F.flow_map(rot)(1.0, p)
    errs = {N: float(np.linalg.norm(F.euler_product(F.euler_step(rot), p, 1.0, N) - exact))
            for N in (10, 100, 1000)}

    A = F.linear_field([[0, 1], [0, 0]])
    B = F.linear_field([[0, 0], [1, 0]])
    q = [1, 2]
    br = np.array([complex(c) for c in F.bracket_fields(A, B)(q)])
    slope = F.commutator_slope(A, B, q, 1e-4)
    rel = float(np.linalg.norm(slope - br) / np.linalg.norm(br))

    z, w = F.coordinates(2)
    dw = F.constant_field([0, 1])
    shears = []
    for f, pt, t in ((z ** 3, [2, 0], 1.0), (z * z + 1, [1, 3], 0.5)):
        closed = F.shear_flow(dw, f, t, pt)
        num = F.flow_rk4(F.scale_field(f, dw), pt, t, 200).endpoint
        shears.append({"f": str(f.as_expr()), "p": pt, "t": t,
                       "closed_form": [str(c) for c in np.round(closed, 12)],
                       "error": float(np.max(np.abs(closed - num)))})
    f = w * z + 1
    closed = F.overshear_flow(dw, f, 1.0, [1, 1])
    num = F.flow_rk4(F.scale_field(f, dw), [1, 1], 1.0, 1000).endpoint
    shears.append({"f": str(f.as_expr()), "p": [1, 1], "t": 1.0,
                   "closed_form": [str(c) for c in np.round(closed, 12)],
                   "error": float(np.max(np.abs(closed - num)))})
    return {
        "euler_errors": {str(k): v for k, v in errs.items()},
        "euler_ratio_10_100": errs[10] / errs[100],
        "commutator": {"slope": [str(c) for c in np.round(slope, 8)],
                       "bracket": [str(c) for c in br], "relative_error": rel},
        "shears": shears,
        "passed": errs[10] / errs[100] >= 8 and rel < 0.05
        and all(s["error"] < 1e-8 for s in shears),
    }


def cmd_euler(args):
    report = euler_campaign()
    r = report
    lines = [f"Euler product error ratio N=10/N=100: {r['euler_ratio_10_100']:.3f}",
             f"commutator slope relative error: {r['commutator']['relative_error']:.3e}",
             "max RK4 vs closed form: "
             f"{max(s['error'] for s in r['shears']):.3e}"]
    return "euler", report, report["passed"], lines


def cmd_symplectic(args):
    n = args.n if args.n is not None else 2
    count = args.count if args.count is not None else 20
    seed = args.seed if args.seed is not None else 0
    if n < 1 or count < 1:
        raise UsageError("--n/--count", "must be positive")
    rng = random.Random(seed)
    rows = []
    for _ in range(count):
        g = F.random_symplectic(n, rng)
        try:
            ok = F.symplectic_orbit_check(n, g)
        except NotSymplectic as exc:
            raise IdentityFailure(f"generator produced a non-symplectic matrix: {exc}") from None
        rows.append({"g": [[str(x) for x in g.row(i)] for i in range(2 * n)], "holds": ok})
    passed = all(r["holds"] for r in rows)
    report = {"n": n, "count": count, "seed": seed, "matrices": rows, "passed": passed}
    lines = [f"Sp({2 * n}): orbit equations hold for {sum(r['holds'] for r in rows)}/{count}"]
    return f"symplectic-{n}", report, passed, lines


COMMANDS = {
    "roots": cmd_roots, "pairing": cmd_pairing, "lattice": cmd_lattice,
    "momega": cmd_momega, "lemma-l3": cmd_lemma_l3, "chevalley": cmd_chevalley,
    "certify": cmd_certify, "irrep": cmd_irrep, "adjoint-cases": cmd_adjoint_cases,
    "old-sl2": cmd_old_sl2, "quadric": cmd_quadric, "euler": cmd_euler,
    "symplectic": cmd_symplectic,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liedense", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="root system type, e.g. A2, G2, E6")
    common.add_argument("--rank", type=int, help="rank, when --type is a bare family letter")
    common.add_argument("--out", default="reports", help="report directory (default: reports)")
    common.add_argument("--format", choices=("json", "text"), default="text",
                        help="stdout summary format")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "roots":
            p.add_argument("type_pos", nargs="?", metavar="TYPE")
        if name in ("pairing", "lattice", "irrep"):
            p.add_argument("--weight", help="Dynkin labels, comma separated")
        if name == "pairing":
            p.add_argument("--root", help="simple-root coordinates, comma separated")
        if name == "momega":
            p.add_argument("--m-max", type=int, default=12)
        if name == "lemma-l3":
            p.add_argument("--bound", type=int, help="maximal sum of Dynkin labels (default 5)")
        if name == "certify":
            p.add_argument("--rep", default="adjoint", help="adjoint | sl2:<n> | file:<path>")
        if name == "irrep":
            p.add_argument("--k-max", type=int, default=3)
        if name in ("old-sl2", "quadric", "symplectic"):
            p.add_argument("--n", type=int)
        if name == "old-sl2":
            p.add_argument("--k", type=int, help="index of the basis vector v_k")
        if name == "symplectic":
            p.add_argument("--count", type=int)
            p.add_argument("--seed", type=int)
    return parser


def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return str(x)


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1, default=_jsonable) + "\n"


def run(args: argparse.Namespace) -> int:
    handler = COMMANDS[args.command]
    try:
        tag, report, ok, lines = handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except VERIFIED_FAILURES as exc:
        print(f"FAILED: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except LieDenseError as exc:
        print(f"usage error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    report = {"command": args.command, "passed": bool(ok), "report": report}
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{tag}.json"
        path.write_text(dumps(report))
    except OSError as exc:
        print(f"usage error: --out: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        sys.stdout.write(dumps(report))
    else:
        for line in lines:
            print(line)
        print(f"{'PASS' if ok else 'FAIL'}  report: {path}")
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
