"""Command-line front end.

Exit codes: 0 when the requested verification passes, 1 when it fails,
2 on usage or input errors.  All randomness flows from --seed, so identical
invocations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import accept
from .gasdyn import standard_context
from .liealg import (automorphism_constraints, commutator_table_text,
                     generator_from_dict, reciprocal_algebra,
                     standard_basis, verify_automorphism_solution, x_f, x_h)
from .numerics import (ConstantFlow, GridSpec, ShearFlow, VortexFlow,
                       fd_residuals, loop_closedness, make_solution,
                       transform_solution, unit_square_loop)
from .prolong import determining_residuals
from .reports import Report
from .symkernel import Expr, parse
from .symkernel.errors import SymkernelError
from .transforms import (CATALOG_NAMES, catalog, lie_equation_check,
                         load_map, pushforward, pushforward_matrix,
                         verify_point_symmetry, verify_reciprocal)

DEFAULT_SEED = 20240801


def _parse_value(ctx, text):
    if text in ("identity", "formal"):
        return text
    try:
        return Fraction(text)
    except ValueError:
        return parse(ctx, text)


def _params(ctx, pairs):
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise SymkernelError("--param expects name=value, got %r" % item)
        k, v = item.split("=", 1)
        out[k.strip()] = _parse_value(ctx, v.strip())
    return out


def _emit(args, text_report, json_dict):
    if args.format == "json":
        body = json.dumps(json_dict, indent=2, sort_keys=True) + "\n"
    else:
        body = text_report + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _emit_report(args, rep: Report) -> int:
    _emit(args, rep.to_text(), rep.to_json_dict())
    return 0 if rep.passed else 1


def _named_generator(ctx, name):
    basis = {g.label: g for g in standard_basis(ctx)}
    basis["Xh"] = x_h(ctx)
    basis["XF"] = x_f(ctx)
    basis["Xh1"] = x_h(ctx, Expr.const(ctx, 1))
    basis["XF1"] = x_f(ctx, Expr.const(ctx, 1))
    if name not in basis:
        raise SymkernelError("unknown generator %r (have %s)"
                             % (name, ", ".join(sorted(basis))))
    return basis[name]


def cmd_commutators(args) -> int:
    ctx = standard_context()
    if args.algebra != "lrt":
        raise SymkernelError("only the 'lrt' algebra is built in")
    L = reciprocal_algebra(ctx)
    text = commutator_table_text(L)
    if args.format == "json":
        table = {}
        for (i, j), entry in L.structure_constants().items():
            table["[%s,%s]" % (L.basis[i].label, L.basis[j].label)] = \
                str(entry)
        _emit(args, text, {"schema": 1, "algebra": "Lrt", "table": table})
    else:
        _emit(args, text, {})
    return 0


def cmd_verify_generator(args) -> int:
    ctx = standard_context()
    if args.file:
        with open(args.file) as fh:
            g = generator_from_dict(ctx, json.load(fh))
    else:
        g = _named_generator(ctx, args.generator)
    ds = determining_residuals(g, args.reduction)
    rep = Report("determining equations for %s" % (g.label or args.file))
    for tag, r in ds.residuals:
        rep.add(tag, r.is_zero(), "" if r.is_zero() else str(r))
    return _emit_report(args, rep)


def _load_catalog_map(ctx, args):
    params = _params(ctx, args.param)
    if args.catalog == "bateman":
        for nm in ("b1", "b2", "b3", "b4"):
            flag = getattr(args, nm, None)
            if flag is not None:
                params[nm] = _parse_value(ctx, flag)
    entry = catalog(ctx, args.catalog, **params)
    return entry


def cmd_verify_map(args) -> int:
    ctx = standard_context()
    if args.file:
        T = load_map(ctx, args.file)
    else:
        entry = _load_catalog_map(ctx, args)
        T = entry.map_sym if hasattr(entry, "map_sym") else entry
    rep = verify_reciprocal(T, solve_for=args.reduction, seed=args.seed)
    return _emit_report(args, rep)


def cmd_verify_point(args) -> int:
    ctx = standard_context()
    entry = catalog(ctx, args.catalog + "_point",
                    **_params(ctx, args.param))
    rep = verify_point_symmetry(entry)
    return _emit_report(args, rep)


def cmd_solve_ansatz(args) -> int:
    from .prolong import solve_ansatz
    ctx = standard_context()
    sol = solve_ansatz(ctx, args.degree)
    rep = Report("polynomial ansatz, degree %d" % args.degree)
    rep.add("all %d basis elements re-verified" % sol.dimension,
            sol.reverified)
    rep.extras["dimension"] = sol.dimension
    rep.extras["candidates"] = sol.candidates
    for i, g in enumerate(sol.generators):
        rep.extras["basis_%02d" % i] = str(g)
    return _emit_report(args, rep)


def cmd_pushforward(args) -> int:
    ctx = standard_context()
    entry = _load_catalog_map(ctx, args)
    T = entry.map_sym if hasattr(entry, "map_sym") else entry
    x = standard_basis(ctx)
    rep = Report("pushforward under %s" % T.name)
    if args.generator:
        g = _named_generator(ctx, args.generator)
        from .transforms import decompose
        image = pushforward(T, g)
        try:
            coeffs = decompose(image, x[2:5])
            rep.add("image in span{X3', X4', X5'}", True,
                    "(%s)" % ", ".join(str(c) for c in coeffs))
        except SymkernelError:
            rep.add("image in span{X3', X4', X5'}", False, str(image))
    else:
        M = pushforward_matrix(T, x[2:5])
        L = reciprocal_algebra(ctx)
        cons = automorphism_constraints(
            ctx, L.derived_algebra().derived_algebra().constant_table())
        res = verify_automorphism_solution(M, cons)
        rep.add("matrix satisfies the automorphism constraints",
                res.satisfied)
        rep.add("matrix nonsingular", not res.det.is_zero(),
                "det = %s" % res.det)
        for i, row in enumerate(M.entries):
            rep.extras["row_%d" % i] = "[%s]" % ", ".join(str(e)
                                                          for e in row)
    return _emit_report(args, rep)


def cmd_automorphism(args) -> int:
    ctx = standard_context()
    L = reciprocal_algebra(ctx)
    cons = automorphism_constraints(
        ctx, L.derived_algebra().derived_algebra().constant_table())
    rep = Report("automorphism constraints for the 3-dimensional megaideal")
    rep.add("constraint count", len(cons) == 9, str(len(cons)))
    for i, c in enumerate(cons):
        rep.extras["constraint_%d" % (i + 1)] = "%s = 0" % c
    return _emit_report(args, rep)


def cmd_lie_check(args) -> int:
    ctx = standard_context()
    entry = catalog(ctx, args.family, **_params(ctx, args.param))
    res = lie_equation_check(entry, n_points=args.points, seed=args.seed)
    rep = res.report()
    rep.add("max residual < %g" % args.tol, res.max_residual < args.tol)
    return _emit_report(args, rep)


def _flow(args):
    if args.flow == "constant":
        return ConstantFlow()
    if args.flow == "shear":
        return ShearFlow.example()
    if args.flow == "vortex":
        return VortexFlow(w0=1, m=1)
    raise SymkernelError("unknown flow %r" % args.flow)


def _flow_grid(args):
    if args.flow == "vortex":
        return GridSpec(0.5, 0.3, 1 / 24, 1 / 24, args.nodes, args.nodes)
    return GridSpec(0.0, 0.0, 1.0 / (args.nodes - 1),
                    1.0 / (args.nodes - 1), args.nodes, args.nodes)


ENTROPY_AWARE = {"bateman", "bateman_simplified", "theorem",
                 "one_param_bateman", "one_param_q13", "one_param_exp",
                 "one_param_linear", "mu_plus", "mu_minus"}


def cmd_transform(args) -> int:
    ctx = standard_context()
    params = _params(ctx, args.param)
    if args.catalog in ENTROPY_AWARE:
        params.setdefault("entropy", "identity")
    entry = catalog(ctx, args.catalog, **params)
    T = entry.map_sym if hasattr(entry, "map_sym") else entry
    sol = make_solution(_flow(args), _flow_grid(args))
    out = transform_solution(sol, T)
    res = fd_residuals(out)
    rep = Report("transform %s under %s" % (args.flow, args.catalog))
    worst = max(res.values())
    rep.add("transformed residuals finite", worst == worst, "")
    for k, v in res.items():
        rep.extras["residual_" + k] = "%.3e" % v
    rep.extras["primed_grid"] = "origin (%.6g, %.6g) spacing (%.3g, %.3g)" \
        % (out.grid.x0, out.grid.y0, out.grid.hx, out.grid.hy)
    return _emit_report(args, rep)


def cmd_closedness(args) -> int:
    ctx = standard_context()
    params = _params(ctx, args.param)
    if args.catalog in ENTROPY_AWARE:
        params.setdefault("entropy", "identity")
    entry = catalog(ctx, args.catalog, **params)
    T = entry.map_sym if hasattr(entry, "map_sym") else entry
    sol = make_solution(_flow(args), _flow_grid(args))
    val = loop_closedness(sol, T, unit_square_loop())
    rep = Report("loop closedness of %s on %s" % (args.catalog, args.flow))
    rep.add("|loop dx'| + |loop dy'| < %g" % args.tol, val < args.tol,
            "%.3e" % val)
    return _emit_report(args, rep)


def cmd_paper_suite(args) -> int:
    lines = []
    reports = accept.run_paper_suite(seed=args.seed)
    ok = True
    for rep in reports:
        ok = ok and rep.passed
        lines.append("%-4s %s" % (rep.verdict, rep.title))
    lines.append("paper-suite: %s (%d/%d criteria)" % (
        "PASS" if ok else "FAIL",
        sum(1 for r in reports if r.passed), len(reports)))
    text = "\n".join(lines)
    if args.verbose:
        text = "\n\n".join(r.to_text() for r in reports) + "\n" + text
    _emit(args, text, {
        "schema": 1, "suite": "paper",
        "criteria": [r.to_json_dict() for r in reports],
        "verdict": "PASS" if ok else "FAIL",
    })
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("text", "json"),
                        default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="write the report here")
    ap = argparse.ArgumentParser(
        prog="recipgas",
        description="Verification engine for reciprocal transformations "
                    "of 2D stationary gas dynamics")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--out", default=None, help="write the report here")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("commutators", help="print a commutator table")
    p.add_argument("--algebra", default="lrt")
    p.set_defaults(fn=cmd_commutators)

    p = add("verify-generator",
            help="determining-equation residuals of a generator")
    p.add_argument("--file", default=None, help="generator JSON file")
    p.add_argument("--generator", default="X3",
                   help="named basis generator (X1..X5, Xh, XF, Xh1, XF1)")
    p.add_argument("--reduction", choices=("x", "y"), default="x")
    p.set_defaults(fn=cmd_verify_generator)

    p = add("verify-map", help="reciprocity of a transformation")
    p.add_argument("--catalog", default=None, choices=CATALOG_NAMES)
    p.add_argument("--file", default=None, help="map JSON file")
    p.add_argument("--param", action="append", help="name=value", default=[])
    for nm in ("b1", "b2", "b3", "b4"):
        p.add_argument("--" + nm, default=None)
    p.add_argument("--reduction", choices=("x", "y"), default="x")
    p.set_defaults(fn=cmd_verify_map)

    p = add("verify-point", help="point-symmetry verification")
    p.add_argument("--catalog", default="munk_prim",
                   choices=("munk_prim", "E1", "E2"))
    p.add_argument("--param", action="append", default=[])
    p.set_defaults(fn=cmd_verify_point)

    p = add("solve-ansatz", help="polynomial-ansatz generator search")
    p.add_argument("--degree", type=int, default=4)
    p.set_defaults(fn=cmd_solve_ansatz)

    p = add("pushforward",
            help="generator pushforward and decomposition")
    p.add_argument("--catalog", default="bateman", choices=CATALOG_NAMES)
    p.add_argument("--generator", default=None)
    p.add_argument("--param", action="append", default=[])
    for nm in ("b1", "b2", "b3", "b4"):
        p.add_argument("--" + nm, default=None)
    p.set_defaults(fn=cmd_pushforward)

    p = add("automorphism",
            help="generate the automorphism constraint system")
    p.set_defaults(fn=cmd_automorphism)

    p = add("lie-check", help="finite-difference flow consistency")
    p.add_argument("--family", default="one_param_bateman",
                   choices=("one_param_bateman", "one_param_q13",
                            "one_param_exp", "one_param_linear"))
    p.add_argument("--param", action="append", default=[])
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(fn=cmd_lie_check)

    p = add("transform", help="transform an exact solution numerically")
    p.add_argument("--flow", default="shear",
                   choices=("constant", "shear", "vortex"))
    p.add_argument("--catalog", default="bateman_simplified",
                   choices=CATALOG_NAMES)
    p.add_argument("--param", action="append", default=[])
    p.add_argument("--nodes", type=int, default=17)
    p.set_defaults(fn=cmd_transform)

    p = add("closedness", help="loop integrals of dx', dy'")
    p.add_argument("--flow", default="shear",
                   choices=("constant", "shear", "vortex"))
    p.add_argument("--catalog", default="bateman_simplified",
                   choices=CATALOG_NAMES)
    p.add_argument("--param", action="append", default=[])
    p.add_argument("--nodes", type=int, default=17)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=cmd_closedness)

    p = add("paper-suite", help="run every acceptance criterion")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(fn=cmd_paper_suite)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (SymkernelError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
