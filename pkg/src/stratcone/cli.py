"""Command-line front end: ``verify``, ``table``, ``quad`` and ``transform``.

Exit codes: 0 success, 1 a gating check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from . import orthopoly as op
from . import sbo
from .polyalg import MultiPoly
from .quadrature import ball_rule, gauss_jacobi_rule, lorentz_cone_rule, simplex_rule
from .suites import SUITES, SuiteConfig, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TABLE_ANCHORS = {
    "jacobi": "Jacobi polynomial P_n^{(alpha,beta)}, ascending powers of x",
    "gegenbauer": "Gegenbauer polynomial C_l^alpha, ascending powers of x",
    "juhl": "Juhl coefficients a_k(l, alpha) of sum a_k y^{l-2k} q^k",
    "rc": "Rankin-Cohen coefficients of sum c_j d^j f d^{l-j} g",
    "simplex": "orthogonal basis R_k^Lambda on the simplex D_{n-1}",
    "ball": "orthogonal basis P_k^alpha on the unit ball B^p",
}


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _fraction_list(text: str) -> list[Fraction]:
    return [_fraction(part) for part in text.split(",") if part.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from exc


def _tol_override(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected <check>=<value>, got {text!r}")
    try:
        return name, float(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad tolerance value in {text!r}") from exc


def _frac_str(value) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# verify

def cmd_verify(args) -> int:
    names = []
    for chunk in args.suite or ["all"]:
        names.extend(part.strip() for part in chunk.split(",") if part.strip())
    unknown = [n for n in names if n != "all" and n not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from all, {', '.join(SUITES)}")
    config = SuiteConfig(seed=args.seed, order=args.order, tolerances=dict(args.tol or []))
    results = run_suites(names, config)
    checks = [r.to_json_obj(args.timing) for r in results]
    if args.format == "json":
        text = _dump_json({"version": __version__, "seed": args.seed, "checks": checks})
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["name", "anchor", "params", "value", "tolerance", "pass", "gating", "runtime_ms"])
        for c in checks:
            writer.writerow([c["name"], c["anchor"], json.dumps(c["params"], sort_keys=True), repr(c["value"]),
                             repr(c["tolerance"]), c["pass"], c["gating"], "" if c["runtime_ms"] is None else c["runtime_ms"]])
        text = buffer.getvalue()
    _write(text, args.out)
    failed = [r for r in results if r.gating and not r.passed]
    for r in results:
        if not r.passed:
            tag = "FAIL" if r.gating else "WARN (non-gating)"
            print(f"{tag} {r.name}: value {r.value:.3e} > tolerance {r.tolerance:.1e}", file=sys.stderr)
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# table

def _coefficient_rows(args) -> list[dict]:
    family, cap = args.family, args.max_degree
    rows = []
    for deg in range(cap + 1):
        if family == "jacobi":
            poly = op.jacobi_poly(deg, args.alpha, args.beta)
            coeffs = [poly.coefficient((i,)) for i in range(deg + 1)]
        elif family == "gegenbauer":
            poly = op.gegenbauer(deg, args.alpha)
            coeffs = [poly.coefficient((i,)) for i in range(deg + 1)]
        elif family == "juhl":
            coeffs = op.juhl_coefficients(deg, args.alpha)
        else:
            coeffs = op.rankin_cohen_coefficients(args.lam1, args.lam2, deg)
        rows.append({"index": [deg], "anchor": TABLE_ANCHORS[family], "coefficients": [_frac_str(c) for c in coeffs]})
    return rows


def _basis_rows(args) -> list[dict]:
    rows = []
    if args.family == "simplex":
        if not args.lams or len(args.lams) < 2:
            raise UsageError("the simplex table needs --lams with at least two entries")
        nv = len(args.lams) - 1
        build = lambda k: op.simplex_basis(nv, args.lams, k)
    else:
        if args.p is None or args.p < 1:
            raise UsageError("the ball table needs --p >= 1")
        nv = args.p
        build = lambda k: op.ball_basis(args.p, args.alpha, k)
    for deg in range(args.max_degree + 1):
        for k in op.multi_indices(nv, deg):
            poly = build(k)
            rows.append({
                "index": list(k),
                "anchor": TABLE_ANCHORS[args.family],
                "poly": {
                    "nvars": poly.nvars,
                    "terms": [{"exps": t["exps"], "num": t["num"], "den": t["den"]} for t in poly.to_json_obj()["terms"]],
                },
            })
    return rows


def cmd_table(args) -> int:
    if args.max_degree < 0:
        raise UsageError("--max-degree must be non-negative")
    if args.family in ("simplex", "ball"):
        rows = _basis_rows(args)
    else:
        if args.family == "rc" and (args.lam1 is None or args.lam2 is None):
            raise UsageError("the rc table needs --lam1 and --lam2")
        rows = _coefficient_rows(args)
    params = {
        "alpha": args.alpha, "beta": args.beta, "lam1": args.lam1, "lam2": args.lam2,
        "lams": args.lams, "p": args.p, "max_degree": args.max_degree,
    }
    params = {k: (_frac_str(v) if isinstance(v, Fraction) else [_frac_str(x) for x in v] if isinstance(v, list) else v)
              for k, v in params.items() if v is not None}
    if args.format == "json":
        text = _dump_json({"version": __version__, "family": args.family, "params": params, "rows": rows})
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["family", "index", "anchor", "exps", "coefficient"])
        for row in rows:
            index = " ".join(map(str, row["index"]))
            if "coefficients" in row:
                for pos, c in enumerate(row["coefficients"]):
                    writer.writerow([args.family, index, row["anchor"], pos, c])
            else:
                for term in row["poly"]["terms"]:
                    writer.writerow([args.family, index, row["anchor"], " ".join(map(str, term["exps"])), f"{term['num']}/{term['den']}"])
        text = buffer.getvalue()
    _write(text, args.out)
    return EXIT_OK


# quad

def cmd_quad(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    try:
        if args.domain == "interval":
            rule = gauss_jacobi_rule(args.n, float(args.alpha), float(args.beta))
        elif args.domain == "ball":
            if args.p is None:
                raise UsageError("the ball rule needs --p")
            rule = ball_rule(args.p, float(args.alpha), args.n)
        elif args.domain == "simplex":
            if not args.lams or len(args.lams) < 2:
                raise UsageError("the simplex rule needs --lams with at least two entries")
            rule = simplex_rule(len(args.lams) - 1, [float(x) for x in args.lams], args.n)
        else:
            if args.dim is None or args.lam is None:
                raise UsageError("the cone rule needs --dim and --lam")
            rule = lorentz_cone_rule(args.dim, float(args.lam), float(args.decay), args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    obj = rule.to_json_obj()
    obj["total_weight"] = rule.total_weight
    if args.format == "json":
        text = _dump_json(obj)
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        nodes = np.atleast_2d(rule.nodes.T).T if rule.nodes.ndim == 1 else rule.nodes
        writer.writerow([f"node{i}" for i in range(nodes.shape[1])] + ["weight"])
        for node, weight in zip(nodes, rule.weights):
            writer.writerow([repr(float(c)) for c in node] + [repr(float(weight))])
        text = buffer.getvalue()
    _write(text, args.out)
    return EXIT_OK


# transform

def _parse_term(text: str) -> tuple[Fraction, list[int]]:
    coef, sep, exps = text.partition(":")
    if not sep:
        raise UsageError(f"term {text!r} must look like <coef>:<e1>,<e2>,...")
    try:
        return Fraction(coef), [int(e) for e in exps.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad term {text!r}") from exc


def build_transform_spec(args) -> sbo.SboSpec:
    try:
        if args.geometry == "tensor-simplex":
            if not args.lams or len(args.lams) < 2:
                raise UsageError("tensor-simplex needs --lams with at least two entries")
            k = args.k or [0] * (len(args.lams) - 1)
            return sbo.SboSpec.tensor_simplex(args.lams, op.simplex_basis(len(args.lams) - 1, args.lams, k))
        if args.n is None or args.p is None or args.lam is None:
            raise UsageError(f"{args.geometry} needs --n, --p and --lam")
        if args.geometry == "lorentz-ball":
            alpha = args.lam - Fraction(args.n - 1, 2)
            k = args.k or [0] * args.p
            return sbo.SboSpec.lorentz_ball(args.n, args.p, args.lam, op.ball_basis(args.p, alpha, k))
        return sbo.SboSpec.lorentz_ball_so_p(args.n, args.p, args.lam, args.l, args.j)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_transform(args) -> int:
    spec = build_transform_spec(args)
    nvars = spec.cone_dim + spec.p
    terms = {}
    for text in args.term or ["1:" + ",".join(["0"] * nvars)]:
        coef, exps = _parse_term(text)
        if len(exps) != nvars:
            raise UsageError(f"term {text!r} needs {nvars} exponents (cone coordinates, then v)")
        terms[tuple(exps)] = terms.get(tuple(exps), Fraction(0)) + coef
    poly = MultiPoly(nvars, terms)
    f = sbo.gaussian_poly_function(spec, poly, args.decay)
    x = sbo.sample_cone_points(spec, args.points, seed=args.seed)
    if spec.geometry == "LorentzBallSO_p":
        rng = np.random.default_rng(args.seed)
        u = rng.normal(size=(args.sphere_points, spec.p))
        u /= np.linalg.norm(u, axis=1)[:, None]
        values = sbo.sbo_so_p(spec, f, x, u, args.order)
        extra = {"sphere_points": u.tolist()}
    else:
        values = sbo.sbo_apply(spec, f, x, args.order)
        extra = {}
    values = np.asarray(values)
    obj = {
        "version": __version__,
        "spec": sbo_describe(spec),
        "test_function": {"description": f"exp(-{args.decay} tr x) * ({f.description})", "poly": poly.to_json_obj(), "decay": args.decay},
        "seed": args.seed,
        "points": x.tolist(),
        **extra,
        "values_real": np.real(values).tolist(),
        "values_imag": np.imag(values).tolist(),
    }
    _write(_dump_json(obj), args.out)
    return EXIT_OK


def sbo_describe(spec: sbo.SboSpec) -> dict:
    desc = spec.describe()
    return {k: (_frac_str(v) if isinstance(v, Fraction) else [_frac_str(x) if isinstance(x, Fraction) else x for x in v] if isinstance(v, (list, tuple)) else v)
            for k, v in desc.items()}


# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stratcone", description="Cone stratification identities: verification suites, tables, quadrature and transforms.")
    parser.add_argument("--version", action="version", version=f"stratcone {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("--suite", action="append", help=f"suite name(s), comma separated; 'all' or any of: {', '.join(SUITES)}")
    verify.add_argument("--tol", action="append", type=_tol_override, metavar="CHECK=VALUE", help="override a tolerance; CHECK may be a glob over check names")
    verify.add_argument("--order", type=int, help="quadrature order override")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--out")
    verify.add_argument("--format", choices=["json", "csv"], default="json")
    verify.add_argument("--timing", action="store_true", help="record per-check runtime (reports are then not byte-reproducible)")
    verify.set_defaults(handler=cmd_verify)

    table = sub.add_parser("table", help="emit exact coefficient tables")
    table.add_argument("family", choices=sorted(TABLE_ANCHORS))
    table.add_argument("--alpha", type=_fraction, default=Fraction(0))
    table.add_argument("--beta", type=_fraction, default=Fraction(0))
    table.add_argument("--lam1", type=_fraction)
    table.add_argument("--lam2", type=_fraction)
    table.add_argument("--lams", type=_fraction_list)
    table.add_argument("--p", type=int)
    table.add_argument("--max-degree", type=int, default=3)
    table.add_argument("--out")
    table.add_argument("--format", choices=["json", "csv"], default="json")
    table.set_defaults(handler=cmd_table)

    quad = sub.add_parser("quad", help="export a quadrature rule")
    quad.add_argument("domain", choices=["interval", "ball", "simplex", "cone"])
    quad.add_argument("--alpha", type=_fraction, default=Fraction(0))
    quad.add_argument("--beta", type=_fraction, default=Fraction(0))
    quad.add_argument("--p", type=int)
    quad.add_argument("--lams", type=_fraction_list)
    quad.add_argument("--dim", type=int)
    quad.add_argument("--lam", type=_fraction)
    quad.add_argument("--decay", type=float, default=1.0)
    quad.add_argument("--n", type=int, required=True)
    quad.add_argument("--out")
    quad.add_argument("--format", choices=["json", "csv"], default="json")
    quad.set_defaults(handler=cmd_quad)

    transform = sub.add_parser("transform", help="apply a symmetry breaking operator to a test function")
    transform.add_argument("geometry", choices=["tensor-simplex", "lorentz-ball", "lorentz-ball-so-p"])
    transform.add_argument("--lams", type=_fraction_list)
    transform.add_argument("--k", type=_int_list, help="multi-index of the kernel polynomial")
    transform.add_argument("--n", type=int)
    transform.add_argument("--p", type=int)
    transform.add_argument("--lam", type=_fraction)
    transform.add_argument("--l", type=int, default=0)
    transform.add_argument("--j", type=int, default=0)
    transform.add_argument("--term", action="append", help="test polynomial term <coef>:<exponents over (x, v)>; repeatable")
    transform.add_argument("--decay", type=float, default=0.5)
    transform.add_argument("--points", type=int, default=8)
    transform.add_argument("--sphere-points", type=int, default=4)
    transform.add_argument("--order", type=int)
    transform.add_argument("--seed", type=int, default=0)
    transform.add_argument("--out")
    transform.set_defaults(handler=cmd_transform)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"stratcone: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
