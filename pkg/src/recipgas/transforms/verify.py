"""Symbolic and numeric verification of transformations.

A map is accepted as reciprocal when, on the solution manifold of the
governing system, (i) the four conserved flux forms written in transformed
quantities pull back to closed forms, and (ii) the transformed coordinate
differentials themselves are closed.  Both groups reduce to exact zero
tests in the symbolic kernel; failures produce rational witness points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..gasdyn import (FIELDS, OneForm, conservation_law_forms,
                      reduce_on_manifold, system_residuals,
                      total_derivative)
from ..liealg import AutomorphismMatrix
from ..reports import Report
from ..symkernel import Expr
from ..symkernel.errors import DivisionByZeroExpr, NumericDomain
from ..symkernel.poly import QQ
from .maps import OneParamFamily, PointMap, ReciprocalMap

DEFAULT_SEED = 20240801

RECIP_LAW_NAMES = ("mass-flux", "momentum-y-flux", "momentum-x-flux",
                   "entropy-flux")


# --- reciprocity -------------------------------------------------------------


def transformed_law_residuals(T: ReciprocalMap, solve_for: str = "x"):
    """Closedness residuals of the four conserved forms written in primed
    fields and pulled back through the form matrix."""
    ctx = T.ctx
    sub = T.field_map()
    out = []
    for name, law in zip(RECIP_LAW_NAMES, conservation_law_forms(ctx)):
        cxp = law.cx.substitute(sub)
        cyp = law.cy.substitute(sub)
        pulled = OneForm(cxp * T.f[0][0] + cyp * T.f[1][0],
                         cxp * T.f[0][1] + cyp * T.f[1][1])
        out.append((name, pulled.closedness_residual(solve_for)))
    return out


def coordinate_closedness_residuals(T: ReciprocalMap, solve_for: str = "x"):
    dx_form = OneForm(T.f[0][0], T.f[0][1])
    dy_form = OneForm(T.f[1][0], T.f[1][1])
    return [("closedness-dx", dx_form.closedness_residual(solve_for)),
            ("closedness-dy", dy_form.closedness_residual(solve_for))]


def verify_reciprocal(T: ReciprocalMap, solve_for: str = "x",
                      seed: int = DEFAULT_SEED) -> Report:
    rep = Report("reciprocity of %s" % (T.name or "map"))
    residuals = transformed_law_residuals(T, solve_for) + \
        coordinate_closedness_residuals(T, solve_for)
    for name, r in residuals:
        rep.add(name, r.is_zero(), "" if r.is_zero() else "residual nonzero")
    det = T.det_f()
    rep.add("det-form-matrix-nonzero", not det.is_zero(), str(det))
    rep.add("density-map-nonzero", not T.R.is_zero(), str(T.R))
    rep.extras["form_matrix_constant"] = all(
        not e.depends_on(*FIELDS) for row in T.f for e in row)
    rep.side_conditions.extend(_side_conditions(T))
    if not rep.passed:
        bad = [(n, r) for n, r in residuals if not r.is_zero()]
        if bad:
            w = witness_point(bad[0][1], seed=seed)
            if w is not None:
                point, value = w
                rep.witness = {k: str(v) for k, v in sorted(point.items())}
                rep.witness["__residual__"] = "%s = %s" % (bad[0][0], value)
    return rep


def _side_conditions(T: ReciprocalMap):
    conds = []
    seen = set()
    for comp in T.components():
        if not comp.is_polynomial():
            ctx = comp.ctx
            d = Expr(ctx, comp.den, Expr.const(ctx, 1).den)
            s = "%s != 0" % d
            if s not in seen:
                seen.add(s)
                conds.append(s)
    return conds


def witness_point(residual: Expr, seed: int = DEFAULT_SEED,
                  attempts: int = 200):
    """Rational point where the residual evaluates to a nonzero value."""
    rng = random.Random(seed)
    ctx = residual.ctx
    names = sorted(residual.free_variables())
    for _ in range(attempts):
        point = {}
        for n in names:
            info = ctx.info.get(n)
            role = info.role if info is not None else "parameter"
            if n in ("rho", "p"):
                point[n] = QQ(rng.randint(32, 128), 64)
            elif n in ("u", "v"):
                point[n] = QQ(rng.choice([-1, 1]) * rng.randint(7, 128), 64)
            elif role == "jet":
                point[n] = QQ(rng.randint(-64, 64), 64)
            else:
                point[n] = QQ(rng.choice([-1, 1]) * rng.randint(16, 128), 64)
        try:
            value = residual.eval_rational(point)
        except (DivisionByZeroExpr, ValueError, ZeroDivisionError):
            continue
        if value != 0:
            return point, value
    return None


# --- point symmetries ---------------------------------------------------------


def verify_point_symmetry(T: PointMap, solve_for: str = "x") -> Report:
    """Chain-rule transformed residuals reduce to combinations of the
    original system on the solution manifold."""
    ctx = T.ctx
    rep = Report("point symmetry of %s" % (T.name or "map"))
    j = T.jacobian()
    detj = j[0][0] * j[1][1] - j[0][1] * j[1][0]
    rep.add("coordinate-jacobian-nonsingular", not detj.is_zero(), str(detj))
    if detj.is_zero():
        return rep
    sub = T.field_map()
    jets = {}
    for fname in FIELDS:
        phi = sub[fname]
        dx_phi = total_derivative(phi, "x")
        dy_phi = total_derivative(phi, "y")
        # (D_x phi, D_y phi)^T = J^T (f_x', f_y')^T
        fxp = (j[1][1] * dx_phi - j[1][0] * dy_phi) / detj
        fyp = (-j[0][1] * dx_phi + j[0][0] * dy_phi) / detj
        jets["%s_x" % fname] = fxp
        jets["%s_y" % fname] = fyp
    for name, F in zip(("mass", "momentum-x", "momentum-y", "entropy"),
                       system_residuals(ctx)):
        transformed = F.substitute({**sub, **jets})
        r = reduce_on_manifold(transformed, solve_for)
        rep.add(name, r.is_zero(), "" if r.is_zero() else str(r))
    return rep


# --- numeric state sampling -----------------------------------------------------


def sample_float_state(rng: random.Random) -> dict:
    """Fields drawn from the documented safe ranges: rho, p in [1/2, 2],
    velocities in [-2, 2] with |u|, |v| >= 1/10, S in [1/2, 2]."""
    def vel():
        while True:
            x = rng.uniform(-2.0, 2.0)
            if abs(x) >= 0.1:
                return x
    return {
        "rho": rng.uniform(0.5, 2.0),
        "p": rng.uniform(0.5, 2.0),
        "u": vel(),
        "v": vel(),
        "S": rng.uniform(0.5, 2.0),
    }


def _den_values(T: ReciprocalMap, assignment: dict) -> float:
    """Smallest |denominator| over the map components at the point."""
    worst = float("inf")
    ctx = T.ctx
    one = Expr.const(ctx, 1)
    for comp in T.components():
        if comp.is_polynomial():
            continue
        d = Expr(ctx, comp.den, one.den)
        worst = min(worst, abs(d.eval_numeric(assignment)))
    return worst


def _eval_components(T: ReciprocalMap, assignment: dict):
    vals = [c.eval_numeric(assignment) for c in T.components()]
    return vals[:5], ((vals[5], vals[6]), (vals[7], vals[8]))


@dataclass
class LieCheckResult:
    family: str
    max_residual: float
    samples: int

    def report(self) -> Report:
        rep = Report("flow consistency of %s" % self.family)
        rep.add("max |d/deps - generator|", True,
                "%.3e over %d samples" % (self.max_residual, self.samples))
        rep.extras["max_residual"] = "%.3e" % self.max_residual
        return rep


def _eval_poly_mp(ctx, poly, assign):
    import mpmath
    from ..symkernel.poly import mono_items
    total = mpmath.mpf(0)
    for m, c in poly.items():
        term = mpmath.mpf(int(c.numerator)) / mpmath.mpf(int(c.denominator))
        for v, e in mono_items(m):
            term *= assign[ctx.display_name(v)] ** e
        total += term
    return total


def _eval_expr_mp(ctx, e, assign):
    num = _eval_poly_mp(ctx, e.num, assign)
    den = _eval_poly_mp(ctx, e.den, assign)
    if den == 0:
        raise NumericDomain("zero denominator")
    return num / den


def lie_equation_check(fam: OneParamFamily, n_points: int = 100,
                       seed: int = DEFAULT_SEED, step: float = 1e-6,
                       eps_range: float = 0.25, guard: float = 0.3,
                       rate_guard: float = 6.0) -> LieCheckResult:
    """Max over seeded samples of |d/deps T_eps - zeta(T_eps)| on all nine
    component slots; the eps-derivative is a central difference with the
    given step, evaluated in extended precision so the reported residual
    is the O(step^2) truncation term, not rounding noise.

    Samples keep a margin from the family's singular sets: a point is
    redrawn when any component denominator falls below `guard` in absolute
    value at a stencil node, or when its logarithmic eps-derivative exceeds
    `rate_guard` (which would inflate the truncation term cubically).
    """
    import mpmath
    if fam.link_spec is None:
        raise NumericDomain("family %s has symbolic parameters" % fam.name)
    rng = random.Random(seed)
    ctx = fam.ctx
    gen = fam.generator
    gen_fields = list(gen.field_slots())
    gen_matrix = gen.matrix()
    comps = fam.map_sym.components()
    dens = sorted({id(c.den): c for c in comps if not c.is_polynomial()}
                  .values(), key=str)
    one = Expr.const(ctx, 1)
    den_exprs = [Expr(ctx, c.den, one.den) for c in dens]
    worst = mpmath.mpf(0)
    done = 0
    attempts = 0
    with mpmath.workdps(40):
        while done < n_points:
            attempts += 1
            if attempts > 500 * n_points:
                raise NumericDomain(
                    "could not sample away from singular sets")
            state = sample_float_state(rng)
            eps = rng.uniform(-eps_range, eps_range)
            mstate = {k: mpmath.mpf(v) for k, v in state.items()}
            stencil = []
            den_vals = []
            ok = True
            for e in (eps - step, eps, eps + step):
                a = dict(mstate)
                a[fam.symbol] = fam.link_mp(mpmath.mpf(e))
                stencil.append(a)
                row = []
                for d in den_exprs:
                    val = _eval_poly_mp(ctx, d.num, a)
                    if abs(val) < guard:
                        ok = False
                        break
                    row.append(val)
                if not ok:
                    break
                den_vals.append(row)
            if not ok:
                continue
            for k in range(len(den_exprs)):
                rate = abs(den_vals[2][k] - den_vals[0][k]) / \
                    (2 * step * abs(den_vals[1][k]))
                if rate > rate_guard:
                    ok = False
                    break
            if not ok:
                continue
            vals = [[_eval_expr_mp(ctx, c, a) for c in comps]
                    for a in stencil]
            primed = {n: vals[1][i] for i, n in enumerate(FIELDS)}
            resid = mpmath.mpf(0)
            for i in range(5):
                d = (vals[2][i] - vals[0][i]) / (2 * step)
                z = _eval_expr_mp(ctx, gen_fields[i], primed)
                resid = max(resid, abs(d - z))
            mz = [[_eval_expr_mp(ctx, gen_matrix[i][j], primed)
                   for j in range(2)] for i in range(2)]
            fmid = ((vals[1][5], vals[1][6]), (vals[1][7], vals[1][8]))
            for i in range(2):
                for j in range(2):
                    d = (vals[2][5 + 2 * i + j] - vals[0][5 + 2 * i + j]) \
                        / (2 * step)
                    z = mz[i][0] * fmid[0][j] + mz[i][1] * fmid[1][j]
                    resid = max(resid, abs(d - z))
            worst = max(worst, resid)
            done += 1
    return LieCheckResult(fam.name, float(worst), n_points)


def composition_additivity(fam: OneParamFamily, n_points: int = 100,
                           seed: int = DEFAULT_SEED,
                           eps_range: float = 0.125,
                           guard: float = 5e-2) -> float:
    """Max deviation |T_e1(T_e2(x)) - T_{e1+e2}(x)| over seeded samples."""
    if fam.link_spec is None:
        raise NumericDomain("family %s has symbolic parameters" % fam.name)
    rng = random.Random(seed)
    worst = 0.0
    done = 0
    attempts = 0
    while done < n_points:
        attempts += 1
        if attempts > 50 * n_points:
            raise NumericDomain("could not sample away from singular sets")
        state = sample_float_state(rng)
        e1 = rng.uniform(-eps_range, eps_range)
        e2 = rng.uniform(-eps_range, eps_range)
        try:
            a2 = fam.numeric_assignment(e2, state)
            if _den_values(fam.map_sym, a2) < guard:
                continue
            mid_fields, _ = _eval_components(fam.map_sym, a2)
            inner = dict(zip(FIELDS, mid_fields))
            inner["S"] = state["S"]
            a1 = fam.numeric_assignment(e1, inner)
            a12 = fam.numeric_assignment(e1 + e2, state)
            if min(_den_values(fam.map_sym, a1),
                   _den_values(fam.map_sym, a12)) < guard:
                continue
            outer_fields, _ = _eval_components(fam.map_sym, a1)
            direct_fields, _ = _eval_components(fam.map_sym, a12)
        except NumericDomain:
            continue
        for a, b in zip(outer_fields, direct_fields):
            worst = max(worst, abs(a - b))
        done += 1
    return worst


# --- first-order transport relations -----------------------------------------


def appendix_pde_residuals(T: ReciprocalMap, A: AutomorphismMatrix,
                           a11=None) -> Report:
    """Residuals of the displayed first-order relations tying the partial
    derivatives of the map components to the automorphism coefficients.

    Left-hand sides are exact derivatives of T's components; right-hand
    sides are the stated closed forms.  a11 participates only through the
    center relations (not part of this block).
    """
    ctx = T.ctx
    v = lambda n: Expr.var(ctx, n)
    rho, u, vv, p = v("rho"), v("u"), v("v"), v("p")
    (a33, a34, a35), (a43, a44, a45), (a53, a54, a55) = A.entries
    R, U, V, P, H = T.R, T.U, T.V, T.P, T.H
    f11, f12, f21, f22 = T.f[0][0], T.f[0][1], T.f[1][0], T.f[1][1]

    q2 = u ** 2 + vv ** 2
    D2 = 2 * rho ** 2 * q2
    alf = a35 * p ** 2 - 2 * a34 * p + 2 * a33
    bet = a45 * p ** 2 - 2 * a44 * p + 2 * a43
    gam = a55 * p ** 2 - 2 * a54 * p + 2 * a53
    alf1 = -a35 * p + a34
    bet1 = -a45 * p + a44
    gam1 = -a55 * p + a54
    U2V2 = U ** 2 + V ** 2
    ruv = rho * u * vv

    relations = [
        ("R_rho", R.diff("rho"), R ** 2 * U2V2 * alf / D2),
        ("R_u", R.diff("u"),
         (-R.diff("v") * vv + R ** 2 * U2V2 * alf1) / u),
        ("R_p", R.diff("p"), R ** 2 * a35 * U2V2 / 2),
        ("U_rho", U.diff("rho"), (P * U * alf + U * bet) / D2),
        ("U_u", U.diff("u"),
         (-U.diff("v") * vv + P * U * alf1 + U * bet1) / u),
        ("U_p", U.diff("p"), (P * U * a35 + U * a45) / 2),
        ("V_rho", V.diff("rho"), (P * V * alf + V * bet) / D2),
        ("V_u", V.diff("u"),
         (-V.diff("v") * vv + P * V * alf1 + V * bet1) / u),
        ("V_p", V.diff("p"), (P * V * a35 + V * a45) / 2),
        ("P_rho", P.diff("rho"),
         (P ** 2 * alf + 2 * P * bet + 2 * gam) / D2),
        ("P_u", P.diff("u"),
         (-P.diff("v") * vv + P ** 2 * alf1 + 2 * P * bet1 + 2 * gam1) / u),
        ("P_p", P.diff("p"), (P ** 2 * a35 + 2 * P * a45 + 2 * a55) / 2),
        ("H_rho", H.diff("rho"), Expr.const(ctx, 0)),
        ("H_u", H.diff("u"), -H.diff("v") * vv / u),
        ("H_p", H.diff("p"), Expr.const(ctx, 0)),
    ]

    PV2 = P + R * V ** 2
    PU2 = P + R * U ** 2
    RUV = R * U * V
    relations += [
        ("xfdx_rho", f11.diff("rho"),
         (-f11 * PV2 * alf + f11 * (-bet + 2 * rho * vv ** 2)
          - 2 * f12 * ruv + f21 * RUV * alf) / D2),
        ("xfdx_u", f11.diff("u"),
         (-f11.diff("v") * vv + f11 * PV2 * (-alf1) + f11 * (-bet1 + 1)
          + f21 * RUV * alf1) / u),
        ("xfdx_p", f11.diff("p"),
         (-f11 * PV2 * a35 - f11 * a45 + f21 * RUV * a35) / 2),
        ("yfdx_rho", f12.diff("rho"),
         (-2 * f11 * ruv - f12 * PV2 * alf
          + f12 * (-bet + 2 * rho * u ** 2) + f22 * RUV * alf) / D2),
        ("yfdx_u", f12.diff("u"),
         (-f12.diff("v") * vv + f12 * PV2 * (-alf1) + f12 * (-bet1 + 1)
          + f22 * RUV * alf1) / u),
        ("yfdx_p", f12.diff("p"),
         (-f12 * PV2 * a35 - f12 * a45 + f22 * RUV * a35) / 2),
        ("xfdy_rho", f21.diff("rho"),
         (f11 * RUV * alf - f21 * PU2 * alf
          + f21 * (-bet + 2 * rho * vv ** 2) - 2 * f22 * ruv) / D2),
        ("xfdy_u", f21.diff("u"),
         (-f21.diff("v") * vv + f11 * RUV * alf1 + f21 * PU2 * (-alf1)
          + f21 * (-bet1 + 1)) / u),
        ("xfdy_p", f21.diff("p"),
         (f11 * RUV * a35 - f21 * PU2 * a35 - f21 * a45) / 2),
        ("yfdy_rho", f22.diff("rho"),
         (f12 * RUV * alf - 2 * f21 * ruv - f22 * PU2 * alf
          + f22 * (-bet + 2 * rho * u ** 2)) / D2),
        ("yfdy_u", f22.diff("u"),
         (-f22.diff("v") * vv + f12 * RUV * alf1 + f22 * PU2 * (-alf1)
          + f22 * (-bet1 + 1)) / u),
        ("yfdy_p", f22.diff("p"),
         (f12 * RUV * a35 - f22 * PU2 * a35 - f22 * a45) / 2),
    ]

    rep = Report("transport relations of %s" % (T.name or "map"))
    for name, lhs, rhs in relations:
        r = lhs - rhs
        rep.add(name, r.is_zero(), "" if r.is_zero() else "residual nonzero")
    if not rep.passed:
        for name, lhs, rhs in relations:
            r = lhs - rhs
            if not r.is_zero():
                w = witness_point(r)
                if w is not None:
                    rep.witness = {k: str(v) for k, v in sorted(w[0].items())}
                    rep.witness["__residual__"] = "%s = %s" % (name, w[1])
                break
    return rep


def center_pde_residuals(T: ReciprocalMap, a11, a33, a54) -> Report:
    """Residuals of the center-megaideal v-derivative relations (the
    constant-form branch shape)."""
    ctx = T.ctx
    v = lambda n: Expr.var(ctx, n)
    u, vv = v("u"), v("v")
    q2 = u ** 2 + vv ** 2
    a11 = a11 if isinstance(a11, Expr) else Expr.const(ctx, a11)
    a33 = a33 if isinstance(a33, Expr) else Expr.const(ctx, a33)
    a54 = a54 if isinstance(a54, Expr) else Expr.const(ctx, a54)
    p = v("p")
    R, U, V, P, H = T.R, T.U, T.V, T.P, T.H
    f11, f12, f21, f22 = T.f[0][0], T.f[0][1], T.f[1][0], T.f[1][1]
    relations = [
        ("R_v", R.diff("v"), Expr.const(ctx, 0)),
        ("U_v", U.diff("v"), (U * vv - V * a11 * u) / q2),
        ("V_v", V.diff("v"), (U * a11 * u + V * vv) / q2),
        ("P_v", P.diff("v"),
         (2 * P * a33 * vv + 2 * vv * (a54 * a33 - p)) / (a33 * q2)),
        ("H_v", H.diff("v"), Expr.const(ctx, 0)),
        ("xfdx_v", f11.diff("v"), -u * (f12 + f21 * a11) / q2),
        ("yfdx_v", f12.diff("v"), u * (f11 - f22 * a11) / q2),
        ("xfdy_v", f21.diff("v"), u * (f11 * a11 - f22) / q2),
        ("yfdy_v", f22.diff("v"), u * (f12 * a11 + f21) / q2),
    ]
    rep = Report("center transport relations of %s" % (T.name or "map"))
    for name, lhs, rhs in relations:
        r = lhs - rhs
        rep.add(name, r.is_zero(), "" if r.is_zero() else "residual nonzero")
    return rep
