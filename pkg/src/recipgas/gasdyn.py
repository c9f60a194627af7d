"""Two-dimensional stationary gas dynamics: residuals, manifold reduction,
and conserved differential forms.

The governing system over fields (rho, u, v, p, S) of (x, y):

    F1 = (rho*u)_x + (rho*v)_y
    F2 = rho*(u*u_x + v*u_y) + p_x
    F3 = rho*(u*v_x + v*v_y) + p_y
    F4 = u*S_x + v*S_y

The state pressure law p = G(rho, S) is carried as a formal function; it is
not referenced by F1..F4.
"""

from __future__ import annotations

from dataclasses import dataclass

from .symkernel import Context, Expr, parse
from .symkernel.errors import SymkernelError

FIELDS = ("rho", "u", "v", "p", "S")
COORDS = ("x", "y")
JETS = tuple("%s_%s" % (f, c) for f in FIELDS for c in COORDS)

_PARAMETERS = (
    "q11", "q21", "q12", "q22", "q13", "q23",
    "b1", "b2", "b3", "b4",
    "k", "k1", "k2", "eps", "lam", "a",
    "a11", "a33", "a34", "a35", "a43", "a44", "a45", "a53", "a54", "a55",
    "alpha", "beta", "mu", "g",
)


class InvalidParams(SymkernelError):
    pass


def standard_context() -> Context:
    """Fresh context with the coordinate/field/jet/parameter vocabulary."""
    ctx = Context()
    for c in COORDS:
        ctx.declare(c, "coordinate")
    for f in FIELDS:
        ctx.declare(f, "field")
    for f in FIELDS:
        for c in COORDS:
            ctx.declare("%s_%s" % (f, c), "jet", base=f, coord=c)
    for p in _PARAMETERS:
        ctx.declare(p, "parameter")
    return ctx


_DEFAULT = None


def default_context() -> Context:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = standard_context()
    return _DEFAULT


def state_equation(ctx: Context) -> Expr:
    """The formal pressure law G(rho, S)."""
    return Expr.function(ctx, "G", Expr.var(ctx, "rho"), Expr.var(ctx, "S"))


def system_residuals(ctx: Context):
    """The four residuals F1..F4 as expressions over fields and jets."""
    v = lambda n: Expr.var(ctx, n)
    F1 = v("rho_x") * v("u") + v("rho") * v("u_x") \
        + v("rho_y") * v("v") + v("rho") * v("v_y")
    F2 = v("rho") * (v("u") * v("u_x") + v("v") * v("u_y")) + v("p_x")
    F3 = v("rho") * (v("u") * v("v_x") + v("v") * v("v_y")) + v("p_y")
    F4 = v("u") * v("S_x") + v("v") * v("S_y")
    return F1, F2, F3, F4


def main_derivatives(ctx: Context, solve_for: str = "x") -> dict:
    """Jet substitutions solving F1..F4 at a generic point.

    solve_for="x" eliminates {p_x, p_y, S_x, rho_x} (requires u != 0);
    solve_for="y" eliminates {p_x, p_y, S_y, rho_y} (requires v != 0).
    Both choices must yield identical verification verdicts.
    """
    v = lambda n: Expr.var(ctx, n)
    rho, u, vv = v("rho"), v("u"), v("v")
    p_x = -rho * (u * v("u_x") + vv * v("u_y"))
    p_y = -rho * (u * v("v_x") + vv * v("v_y"))
    if solve_for == "x":
        return {
            "p_x": p_x,
            "p_y": p_y,
            "S_x": -(vv / u) * v("S_y"),
            "rho_x": -(rho * v("u_x") + v("rho_y") * vv + rho * v("v_y")) / u,
        }
    if solve_for == "y":
        return {
            "p_x": p_x,
            "p_y": p_y,
            "S_y": -(u / vv) * v("S_x"),
            "rho_y": -(rho * v("v_y") + v("rho_x") * u + rho * v("u_x")) / vv,
        }
    raise ValueError("solve_for must be 'x' or 'y'")


def parametric_jets(solve_for: str = "x"):
    if solve_for == "x":
        return ("rho_y", "u_x", "u_y", "v_x", "v_y", "S_y")
    return ("rho_x", "u_x", "u_y", "v_x", "v_y", "S_x")


def reduce_on_manifold(e: Expr, solve_for: str = "x") -> Expr:
    return e.substitute(main_derivatives(e.ctx, solve_for))


def total_derivative(e: Expr, coord: str) -> Expr:
    """D_x or D_y on an expression free of jet variables."""
    ctx = e.ctx
    jets = [n for n in JETS if e.depends_on(n)]
    if jets:
        raise SymkernelError(
            "total derivative of a jet-dependent expression: %s" % jets)
    out = e.diff(coord)
    for f in FIELDS:
        df = e.diff(f)
        if not df.is_zero():
            out = out + df * Expr.var(ctx, "%s_%s" % (f, coord))
    return out


@dataclass(frozen=True)
class OneForm:
    """A 1-form c_x dx + c_y dy with field-dependent coefficients."""
    cx: Expr
    cy: Expr

    def closedness_residual(self, solve_for: str = "x") -> Expr:
        return reduce_on_manifold(
            total_derivative(self.cy, "x") - total_derivative(self.cx, "y"),
            solve_for)


@dataclass(frozen=True)
class ConservationFormParams:
    q11: Expr
    q21: Expr
    q12: Expr
    q22: Expr
    q13: Expr
    q23: Expr

    @staticmethod
    def make(ctx: Context, q11=1, q21=1, q12=0, q22=0, q13=0, q23=0):
        conv = lambda x: x if isinstance(x, Expr) else Expr.const(ctx, x)
        p = ConservationFormParams(conv(q11), conv(q21), conv(q12),
                                   conv(q22), conv(q13), conv(q23))
        if p.q11.is_zero() or p.q21.is_zero():
            raise InvalidParams("q11*q21 must be nonzero")
        return p

    @staticmethod
    def symbolic(ctx: Context):
        return ConservationFormParams.make(
            ctx, *(parse(ctx, n) for n in ("q11", "q21", "q12", "q22",
                                           "q13", "q23")))


def conservation_forms(ctx: Context, params: ConservationFormParams):
    """The conserved flux forms

        S1 = q11*((p + q12 + rho*v^2) dx - (rho*u*v + q13) dy)
        S2 = q21*(-(rho*u*v + q23) dx + (p + q22 + rho*u^2) dy)

    Closedness on the solution manifold is checked per parameter choice via
    OneForm.closedness_residual, not assumed.
    """
    if params.q11.is_zero() or params.q21.is_zero():
        raise InvalidParams("q11*q21 must be nonzero")
    v = lambda n: Expr.var(ctx, n)
    rho, u, vv, p = v("rho"), v("u"), v("v"), v("p")
    s1 = OneForm(params.q11 * (p + params.q12 + rho * vv ** 2),
                 -params.q11 * (rho * u * vv + params.q13))
    s2 = OneForm(-params.q21 * (rho * u * vv + params.q23),
                 params.q21 * (p + params.q22 + rho * u ** 2))
    return s1, s2


def conservation_law_forms(ctx: Context):
    """The four on-manifold closed forms of the system itself:
    mass, the two momentum laws, and entropy flux."""
    v = lambda n: Expr.var(ctx, n)
    rho, u, vv, p, S = (v(n) for n in FIELDS)
    return (
        OneForm(rho * vv, -rho * u),
        OneForm(p + rho * vv ** 2, -rho * u * vv),
        OneForm(rho * u * vv, -(p + rho * u ** 2)),
        OneForm(rho * vv * S, -rho * u * S),
    )
