"""Command-line front end: one subcommand per family of checks.

Exit status is 0 when every requested check passes, 1 when a check fails
and 2 for usage, parse or configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import basis, bridge, poisson, projective, reps, rewrite
from .errors import NCDeformError, SpectralViolation
from .params import derive_params
from .polynomial import NCPolynomial
from .reports import SCHEMA, to_csv, to_json
from .syntax import format_polynomial, parse_expression

# Subcommand path -> library checks it runs.  Every check lives under
# exactly one path; tests/test_cli.py enforces this.
REGISTRY = {
    "normal-form": [rewrite.normal_form, basis.to_basis],
    "confluence": [rewrite.check_confluence],
    "basis-product": [basis.product_law_check, basis.cocycle_check],
    "casimir": [basis.casimir_reduce, basis.lambda_reconstruction],
    "rep torus": [reps.relation_residuals, reps.casimir_residual, reps.centrality_residuals,
                  reps.hermiticity_residuals, reps.lambda_reconstruct, reps.nf_consistency],
    "rep sphere": [reps.fit_mu],
    "scaling torus": [reps.scaling_torus],
    "scaling sphere": [reps.scaling_sphere],
    "phi residuals": [bridge.phi_relation_residuals, bridge.phi_consistency],
    "phi intertwine": [bridge.intertwine_check],
    "phi roundtrip": [bridge.phi_inverse_roundtrip],
    "phi independence": [bridge.independence_evidence],
    "spectrum": [bridge.spectral_check],
    "module relations": [projective.relation_residuals, projective.act_nf_consistency,
                         projective.derivative_check, projective.radicand_minimum],
    "module leibniz": [projective.leibniz_table],
    "module curvature": [projective.curvature_check],
    "poisson": [poisson.poisson_bracket],
}


class UsageError(Exception):
    pass


def _ladder(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad eps ladder {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mu", default="2", help="deformation parameter (integer, p/q or decimal)")
    common.add_argument("--theta", default="1/5", help="theta as 'p/N' (exact) or decimal")
    common.add_argument("--backend", choices=("auto", "exact", "float"), default="auto")
    common.add_argument("--tol", type=float, default=None, help="override the check tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)

    finite = argparse.ArgumentParser(add_help=False)
    finite.add_argument("--N", type=int, help="dimension (default: denominator of theta)")
    finite.add_argument("--p", type=int, help="numerator with theta = p/N (default 1 when --N is given)")

    parser = argparse.ArgumentParser(prog="ncdeform", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    nf = sub.add_parser("normal-form", parents=[common], help="reduce an expression")
    nf.add_argument("--expr", required=True)
    sub.add_parser("confluence", parents=[common], help="resolve all ambiguities of S1-S8")
    bp = sub.add_parser("basis-product", parents=[common], help="T/S product law and phase cocycle")
    bp.add_argument("--range", type=int, default=3)
    cas = sub.add_parser("casimir", parents=[common], help="reduce the Casimir element")
    cas.add_argument("--printed", action="store_true", help="use the hbar^4 denominator")

    rep = sub.add_parser("rep", help="finite-dimensional representations")
    rsub = rep.add_subparsers(dest="family", required=True)
    for fam in ("torus", "sphere"):
        r = rsub.add_parser(fam, parents=[common, finite])
        r.add_argument("--check", action="store_true", help="run the residual checks")
        r.add_argument("--count", type=int, default=100, help="random polynomials for NF consistency")
        if fam == "torus":
            r.add_argument("--printed-cos", action="store_true", help="divide by cos(theta)")
        else:
            r.add_argument("--sphere-theta", type=float, default=0.05)

    sc = sub.add_parser("scaling", help="scaling limits")
    ssub = sc.add_subparsers(dest="family", required=True)
    t = ssub.add_parser("torus", parents=[common, finite])
    t.add_argument("--eps-ladder", type=_ladder, default=[0.1, 0.01, 0.001])
    s = ssub.add_parser("sphere", parents=[common])
    s.add_argument("--N", type=int, default=6)
    s.add_argument("--theta-tilde", type=float, default=0.3)
    s.add_argument("--eps-ladder", type=_ladder, default=[0.1, 0.01, 0.001])

    phi = sub.add_parser("phi", help="the embedding into the noncommutative torus")
    psub = phi.add_subparsers(dest="which", required=True)
    for name in ("residuals", "intertwine", "roundtrip", "independence"):
        pp = psub.add_parser(name, parents=[common, finite])
        if name == "residuals":
            pp.add_argument("--count", type=int, default=100)
        if name == "independence":
            pp.add_argument("--box-m1", type=int, default=2, help="m1 ranges over [-b, b]")
            pp.add_argument("--box-m2", type=int, default=2, help="m2 ranges over [0, b]")

    sp = sub.add_parser("spectrum", parents=[common, finite], help="lower spectral bound of R")
    sp.add_argument("--phases", type=int, default=64)

    mod = sub.add_parser("module", help="projective module and connection")
    msub = mod.add_subparsers(dest="which", required=True)
    for name in ("relations", "leibniz", "curvature"):
        mm = msub.add_parser(name, parents=[common])
        mm.add_argument("--m", type=int, default=1)
        mm.add_argument("--n", type=int, default=2)
        mm.add_argument("--seeds", type=int, default=5, help="number of seed functions")
        mm.add_argument("--points", type=int, default=200)
        if name == "leibniz":
            mm.add_argument("--printed", action="store_true", help="d1 W without the factor 1/2")

    sub.add_parser("poisson", parents=[common], help="classical brackets on the level set")
    return parser


# -- helpers -------------------------------------------------------------

def _params(args):
    return derive_params(args.mu, args.theta)


def _finite(args):
    """(N, p, params) for matrix checks; theta is p/N."""
    if args.N is not None:
        N, p = args.N, (args.p if args.p is not None else 1)
    else:
        th = derive_params(1, args.theta).theta_exact
        if th is None:
            raise UsageError("finite representations need rational theta ('p/N') or --N/--p")
        N, p = th.denominator, th.numerator
        if args.p is not None:
            p = args.p
    return N, p, derive_params(args.mu, Fraction(p, N))


def _tol(args, default):
    return default if args.tol is None else args.tol


def _module_setup(args):
    params = _params(args).require_admissible()
    mp = projective.ModuleParams(args.m, args.n, params)
    rng = np.random.default_rng(args.seed)
    seeds = [projective.gaussian(args.n)]
    seeds += [projective.random_seed(args.n, rng) for _ in range(max(args.seeds - 1, 0))]
    samples = projective.sample_points(args.n, args.points, args.seed)
    return mp, seeds, samples


# -- commands ------------------------------------------------------------
# Each returns (result, passed, csv) where csv is None or (header, rows).

def cmd_normal_form(args):
    params = _params(args)
    sys_ = rewrite.ReductionSystem.torus(params, args.backend, _tol(args, 1e-12))
    p = parse_expression(args.expr, params, sys_.domain)
    nf = rewrite.normal_form(p, sys_)
    result = {"expr": args.expr, "normal_form": format_polynomial(nf, params),
              "backend": sys_.domain.name}
    result["basis"] = basis.to_basis(nf, sys_).to_json()
    return result, True, None


def cmd_confluence(args):
    sys_ = rewrite.ReductionSystem.torus(_params(args), args.backend, _tol(args, 1e-12))
    report = rewrite.check_confluence(sys_, strict=False)
    return report, report["pass"], None


def cmd_basis_product(args):
    sys_ = rewrite.ReductionSystem.torus(_params(args), args.backend, _tol(args, 1e-12))
    law = basis.product_law_check(sys_, args.range)
    coc = basis.cocycle_check(sys_, args.range)
    return {"product_law": law, "cocycle": coc}, law["pass"] and coc["pass"], None


def cmd_casimir(args):
    params = _params(args)
    sys_ = rewrite.ReductionSystem.torus(params, args.backend, _tol(args, 1e-12))
    one = NCPolynomial.constant(1, sys_.domain)
    nf = basis.casimir_reduce(sys_, printed=args.printed)
    lam = rewrite.normal_form(basis.lambda_reconstruction(sys_), sys_)
    lam_ok = lam == NCPolynomial.monomial((0,), sys_.domain)
    result = {
        "variant": "hbar^4" if args.printed else "hbar^2",
        "backend": sys_.domain.name,
        "casimir_normal_form": format_polynomial(nf, params),
        "casimir_is_one": nf == one,
        "lambda_normal_form": format_polynomial(lam, params),
        "lambda_reconstructed": lam_ok,
    }
    return result, result["casimir_is_one"] and lam_ok, None


def _describe(rep):
    out = {"family": rep.spec.family, "N": rep.N, "theta": rep.spec.theta,
           "W_entries": [{"row": int(i) + 1, "col": int(j) + 1, "value": float(rep.W[i, j].real)}
                         for i, j in zip(*np.nonzero(rep.W))]}
    if rep.Lam is not None:
        out["mu"] = rep.spec.mu
        out["L_diagonal"] = [complex(v) for v in np.diag(rep.Lam)]
    else:
        out["fitted_mu"] = rep.mu
    return out


def cmd_rep(args):
    tol = _tol(args, 1e-12)
    if args.family == "torus":
        N, p, params = _finite(args)
        params.require_admissible()
        rep = reps.torus_rep(N, p, params.mu, printed_cos=args.printed_cos)
        if not args.check:
            return _describe(rep), True, None
        rel = reps.relation_residuals(rep, tol)
        checks = {
            "relations": rel.as_dict(),
            "casimir": reps.casimir_residual(rep),
            "centrality": reps.centrality_residuals(rep),
            "hermiticity": reps.hermiticity_residuals(rep),
            "lambda_reconstruction": reps.lambda_reconstruct(rep)[1],
            "nf_consistency": reps.nf_consistency(rep, args.count, seed=args.seed),
        }
        ok = (rel.passed and checks["casimir"] < tol and checks["lambda_reconstruction"] < tol
              and max(checks["centrality"].values()) < tol
              and max(checks["hermiticity"].values()) < tol
              and checks["nf_consistency"] < max(tol, 1e-10))
        result = {"family": "torus", "N": N, "p": p, "mu": params.mu, "theta": params.theta, **checks}
    else:
        N = args.N if args.N is not None else 4
        rep = reps.sphere_rep(N, args.sphere_theta)
        if not args.check:
            return _describe(rep), True, None
        rel = reps.relation_residuals(rep, _tol(args, 1e-10))
        checks = {
            "fitted_mu": rep.mu,
            "relations": rel.as_dict(),
            "casimir": reps.casimir_residual(rep),
            "centrality": reps.centrality_residuals(rep),
            "hermiticity": reps.hermiticity_residuals(rep),
        }
        ok = rel.passed and max(checks["centrality"].values()) < tol and max(checks["hermiticity"].values()) < tol
        result = {"family": "sphere", "N": N, "theta": args.sphere_theta, **checks}
    return result, ok, None


def cmd_scaling(args):
    if args.family == "torus":
        N, p, _ = _finite(args)
        table = reps.scaling_torus(N, p, args.eps_ladder)
        ok = (all(s["within_bound"] for s in table.summary) and 1.9 <= table.order <= 2.1
              and table.extra["lambda_drift"] < _tol(args, 1e-12))
    else:
        table = reps.scaling_sphere(args.N, args.theta_tilde, args.eps_ladder)
        devs = [s["su2_deviation"] for s in table.summary]
        ok = 1.9 <= table.order <= 2.1 and all(a > b for a, b in zip(devs, devs[1:]))
    return table.as_dict(), ok, (("eps", "l", "value", "limit", "abs_err"), table.csv_rows())


def cmd_phi(args):
    N, p, params = _finite(args)
    params.require_admissible()
    pair = bridge.clock_shift(N, p)
    if args.which == "residuals":
        tol = _tol(args, 1e-12)
        res = bridge.phi_relation_residuals(pair, params, tol)
        cons = bridge.phi_consistency(pair, params, args.count, seed=args.seed)
        res["nf_consistency"] = cons["nf"]
        res["star_compatibility"] = cons["star"]
        ok = res["pass"] and cons["nf"] < max(tol, 1e-10) and cons["star"] < tol
        res["pass"] = ok
        return res, ok, None
    if args.which == "intertwine":
        res = bridge.intertwine_check(pair, params, _tol(args, 1e-12))
    elif args.which == "roundtrip":
        res = bridge.phi_inverse_roundtrip(pair, params, _tol(args, 1e-10))
    else:
        box = [(m1, m2) for m1 in range(-args.box_m1, args.box_m1 + 1) for m2 in range(args.box_m2 + 1)]
        res = bridge.independence_evidence(params, pair, box)
    return res, res["pass"], None


def cmd_spectrum(args):
    N, p, params = _finite(args)
    try:
        return bridge.spectral_check(params, N, p, args.phases), True, None
    except SpectralViolation as exc:
        return {"check": "spectrum", "N": N, "p": p, "mu": params.mu, "error": str(exc), "pass": False}, False, None


def cmd_module(args):
    mp, seeds, samples = _module_setup(args)
    base = {"m": mp.m, "n": mp.n, "eps": mp.eps, "mu": mp.params.mu, "theta": mp.params.theta,
            "seeds": len(seeds), "points": len(samples)}
    header = ("x", "k", "residual")
    if args.which == "relations":
        tol = _tol(args, 1e-12)
        rel = {}
        for phi in seeds:
            for name, v in projective.relation_residuals(phi, mp, samples).items():
                rel[name] = max(rel.get(name, 0.0), v)
        cons = projective.act_nf_consistency(seeds[0], mp, samples[:50], seed=args.seed)
        deriv = max(projective.derivative_check(phi, samples) for phi in seeds)
        rad = projective.radicand_minimum(mp, seed=args.seed)
        bound = mp.params.lemma_bound
        result = {**base, "relations": rel, "nf_consistency": cons, "derivative_vs_difference": deriv,
                  "radicand_min": rad, "radicand_bound": bound}
        ok = max(rel.values()) < tol and cons < 1e-10 and deriv < 1e-8 and rad >= bound - 1e-12
        rsys = rewrite.ReductionSystem.torus(mp.params, backend="float")
        element = projective.act_poly(seeds[0], rsys.relations()["S7"], mp)
    elif args.which == "leibniz":
        tol = _tol(args, 1e-10)
        table = {}
        for phi in seeds:
            for key, v in projective.leibniz_table(phi, mp, samples, args.printed).items():
                table[key] = max(table.get(key, 0.0), v)
        result = {**base, "variant": "printed" if args.printed else "corrected", "residuals": table}
        ok = max(table.values()) < tol
        element = projective.leibniz_element(seeds[0], 2, 1, mp, args.printed)
    else:
        tol = _tol(args, 1e-12)
        rows = [projective.curvature_check(phi, mp, samples) for phi in seeds]
        result = {**base, "expected": rows[0]["expected"], "per_seed": rows}
        ok = all(r["max_deviation"] < tol for r in rows)
        element = projective.curvature_element(seeds[0], mp) - seeds[0].scale(rows[0]["expected"])
    return result, ok, (header, projective.residual_points(element, samples))


def cmd_poisson(args):
    from .poisson import mu, poisson_bracket, torus_sphere_polynomial, x, y, z

    C = torus_sphere_polynomial()
    s = x**2 + y**2 - mu
    expected = {"{x,y}": (x, y, z), "{y,z}": (y, z, 2 * x * s), "{z,x}": (z, x, 2 * y * s)}
    rows = {}
    ok = True
    for name, (f, g, want) in expected.items():
        got = poisson_bracket(f, g, C)
        rows[name] = {"value": str(got), "expected": str(want), "pass": got == want}
        ok = ok and got == want
    for name, f in (("x", x), ("y", y), ("z", z)):
        got = poisson_bracket(C, f, C)
        rows["{C," + name + "}"] = {"value": str(got), "expected": "0", "pass": got == 0}
        ok = ok and got == 0
    return {"C": str(C), "brackets": rows}, ok, None


COMMANDS = {
    "normal-form": cmd_normal_form,
    "confluence": cmd_confluence,
    "basis-product": cmd_basis_product,
    "casimir": cmd_casimir,
    "rep": cmd_rep,
    "scaling": cmd_scaling,
    "phi": cmd_phi,
    "spectrum": cmd_spectrum,
    "module": cmd_module,
    "poisson": cmd_poisson,
}


def command_path(args) -> str:
    sub = getattr(args, "family", None) or getattr(args, "which", None)
    return f"{args.command} {sub}" if sub else args.command


def _config(args):
    skip = {"command", "family", "which", "out", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, passed, table = COMMANDS[args.command](args)
    except (NCDeformError, UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"ncdeform: error: {exc}", file=sys.stderr)
        return 2
    fmt = args.format or ("text" if args.command == "normal-form" else "json")
    if fmt == "text":
        if args.command == "normal-form":
            text = result["normal_form"] + "\n"
        else:
            text = f"{command_path(args)}: {'PASS' if passed else 'FAIL'}\n"
    elif fmt == "csv":
        if table is None:
            print(f"ncdeform: error: {command_path(args)} has no CSV output", file=sys.stderr)
            return 2
        text = to_csv(*table)
    else:
        text = to_json({"schema": SCHEMA, "command": command_path(args), "config": _config(args),
                        "result": result, "pass": passed})
    _emit(text, args.out)
    return 0 if passed else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
