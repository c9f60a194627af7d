"""Vector fields with differential-form slots and their Lie algebra.

A reciprocal-transformation generator acts on the five gas fields and on the
differentials (dx, dy):

    X = zr*d_rho + zu*d_u + zv*d_v + zp*d_p + zs*d_S
        + (m11 dx + m12 dy) d_dx + (m21 dx + m22 dy) d_dy

The 2x2 matrix m = [[m11, m12], [m21, m22]] collects the 1-form slots.  The
commutator acts slot-wise on field coefficients and combines derivative
action and matrix commutator on the form part.

The standard basis X1..X5 is normalized so that its commutation relations
close with unit structure constants:

    [X3,X4] = -X3,  [X3,X5] = -X4,  [X4,X5] = -X5,

X1, X2 central.  One-parameter flow formulas elsewhere in the package use
2*X3; the factor is applied explicitly at those call sites.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .gasdyn import FIELDS
from .symkernel import Context, Expr, parse
from .symkernel.errors import SymkernelError, VariableMismatch
from .symkernel.linalg import det3, nullspace, solve
from .symkernel.poly import QQ, pconst, pprimitive, pleading_mono

SLOT_NAMES = ("zr", "zu", "zv", "zp", "zs", "m11", "m12", "m21", "m22")


class NotClosed(SymkernelError):
    def __init__(self, pair, residual):
        super().__init__("commutator of %s falls outside the span" % (pair,))
        self.pair = pair
        self.residual = residual


class NotInSpan(SymkernelError):
    def __init__(self, residual=None):
        super().__init__("generator is not in the span of the basis")
        self.residual = residual


class SingularMatrix(SymkernelError):
    pass


@dataclass(frozen=True)
class Generator:
    zr: Expr
    zu: Expr
    zv: Expr
    zp: Expr
    zs: Expr
    m11: Expr
    m12: Expr
    m21: Expr
    m22: Expr
    label: str = ""
    func: Expr | None = None   # formal-function slot of a family entry

    @property
    def ctx(self) -> Context:
        return self.zr.ctx

    def slots(self):
        return (self.zr, self.zu, self.zv, self.zp, self.zs,
                self.m11, self.m12, self.m21, self.m22)

    def field_slots(self):
        return (self.zr, self.zu, self.zv, self.zp, self.zs)

    def matrix(self):
        return ((self.m11, self.m12), (self.m21, self.m22))

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.slots())

    def apply(self, f: Expr) -> Expr:
        """Derivation on a function of the fields (rho, u, v, p, S)."""
        out = Expr.const(self.ctx, 0)
        for name, z in zip(FIELDS, self.field_slots()):
            if z.is_zero():
                continue
            df = f.diff(name)
            if not df.is_zero():
                out = out + z * df
        return out

    def __add__(self, other: "Generator") -> "Generator":
        if other.ctx is not self.ctx:
            raise VariableMismatch("generators from different contexts")
        pairs = [a + b for a, b in zip(self.slots(), other.slots())]
        return Generator(*pairs, label="")

    def scale(self, c) -> "Generator":
        return Generator(*[s * c for s in self.slots()], label="")

    def __sub__(self, other: "Generator") -> "Generator":
        return self + other.scale(-1)

    def with_label(self, label: str) -> "Generator":
        return replace(self, label=label)

    def __eq__(self, other):
        if not isinstance(other, Generator):
            return NotImplemented
        return all(a == b for a, b in zip(self.slots(), other.slots()))

    def __str__(self):
        parts = []
        for nm, s in zip(SLOT_NAMES, self.slots()):
            if not s.is_zero():
                parts.append("%s=%s" % (nm, s))
        body = ", ".join(parts) if parts else "0"
        return "%s(%s)" % (self.label or "Generator", body)

    def to_dict(self):
        return {
            "zeta_rho": str(self.zr), "zeta_u": str(self.zu),
            "zeta_v": str(self.zv), "zeta_p": str(self.zp),
            "zeta_S": str(self.zs),
            "form": [[str(self.m11), str(self.m12)],
                     [str(self.m21), str(self.m22)]],
        }


def generator(ctx: Context, zr=0, zu=0, zv=0, zp=0, zs=0,
              m=((0, 0), (0, 0)), label="", func=None) -> Generator:
    conv = lambda x: x if isinstance(x, Expr) else Expr.const(ctx, x)
    return Generator(conv(zr), conv(zu), conv(zv), conv(zp), conv(zs),
                     conv(m[0][0]), conv(m[0][1]),
                     conv(m[1][0]), conv(m[1][1]),
                     label=label, func=func)


def zero_generator(ctx: Context) -> Generator:
    return generator(ctx, label="0")


def generator_from_dict(ctx: Context, d: dict, label="") -> Generator:
    form = d.get("form", [["0", "0"], ["0", "0"]])
    return generator(
        ctx,
        zr=parse(ctx, d.get("zeta_rho", "0")),
        zu=parse(ctx, d.get("zeta_u", "0")),
        zv=parse(ctx, d.get("zeta_v", "0")),
        zp=parse(ctx, d.get("zeta_p", "0")),
        zs=parse(ctx, d.get("zeta_S", "0")),
        m=((parse(ctx, form[0][0]), parse(ctx, form[0][1])),
           (parse(ctx, form[1][0]), parse(ctx, form[1][1]))),
        label=label or d.get("label", ""))


def load_generator(ctx: Context, path) -> Generator:
    with open(path) as fh:
        return generator_from_dict(ctx, json.load(fh))


@dataclass(frozen=True)
class EquivalenceGenerator:
    """Point-transformation generator with coordinate slots and no forms."""
    xi_x: Expr
    xi_y: Expr
    zr: Expr
    zu: Expr
    zv: Expr
    zp: Expr
    zs: Expr
    label: str = ""

    @property
    def ctx(self):
        return self.zr.ctx

    def field_slots(self):
        return (self.zr, self.zu, self.zv, self.zp, self.zs)


def equivalence_generator(ctx, xi_x=0, xi_y=0, zr=0, zu=0, zv=0, zp=0, zs=0,
                          label="") -> EquivalenceGenerator:
    conv = lambda x: x if isinstance(x, Expr) else Expr.const(ctx, x)
    return EquivalenceGenerator(conv(xi_x), conv(xi_y), conv(zr), conv(zu),
                                conv(zv), conv(zp), conv(zs), label=label)


# --- commutator ------------------------------------------------------------


def commutator(X: Generator, Y: Generator) -> Generator:
    """[X, Y], with the form slots transforming as fiber-linear parts:

    m_[X,Y] = X(m_Y) - Y(m_X) + m_Y m_X - m_X m_Y
    """
    if X.ctx is not Y.ctx:
        raise VariableMismatch("generators from different contexts")
    fields = [X.apply(zy) - Y.apply(zx)
              for zx, zy in zip(X.field_slots(), Y.field_slots())]
    mx, my = X.matrix(), Y.matrix()
    m = [[None, None], [None, None]]
    for i in range(2):
        for j in range(2):
            acc = X.apply(my[i][j]) - Y.apply(mx[i][j])
            for k in range(2):
                acc = acc + my[i][k] * mx[k][j] - mx[i][k] * my[k][j]
            m[i][j] = acc
    return Generator(*fields, m[0][0], m[0][1], m[1][0], m[1][1])


# --- the standard basis -----------------------------------------------------


def standard_basis(ctx: Context) -> list:
    """[X1, X2, X3, X4, X5] in the unit-structure-constant normalization."""
    v = lambda n: Expr.var(ctx, n)
    rho, u, vv, p = v("rho"), v("u"), v("v"), v("p")
    half = QQ(1, 2)
    q2 = u ** 2 + vv ** 2
    x1 = generator(ctx, zu=-vv, zv=u, m=((0, -1), (1, 0)), label="X1")
    x2 = generator(ctx, m=((1, 0), (0, 1)), label="X2")
    x3 = generator(
        ctx,
        zr=rho ** 2 * q2 * half, zu=p * u * half, zv=p * vv * half,
        zp=p ** 2 * half,
        m=((-(p + rho * vv ** 2) * half, rho * u * vv * half),
           (rho * u * vv * half, -(p + rho * u ** 2) * half)),
        label="X3")
    x4 = generator(ctx, zu=u * half, zv=vv * half, zp=p,
                   m=((-half, 0), (0, -half)), label="X4")
    x5 = generator(ctx, zp=1, label="X5")
    return [x1, x2, x3, x4, x5]


def flow_generator(ctx: Context) -> Generator:
    """2*X3: the infinitesimal generator whose flow is the one-parameter
    pressure-inversion family; equals the displayed slots rho^2 q^2 d_rho +
    p u d_u + p v d_v + p^2 d_p plus its form matrix."""
    return standard_basis(ctx)[2].scale(2).with_label("2*X3")


def x_h(ctx: Context, h: Expr | None = None) -> Generator:
    """Projective-scaling family h(S)*(-2 rho d_rho + u d_u + v d_v)."""
    if h is None:
        h = Expr.function(ctx, "h", Expr.var(ctx, "S"))
    rho, u, vv = (Expr.var(ctx, n) for n in ("rho", "u", "v"))
    g = generator(ctx, zr=-2 * rho * h, zu=u * h, zv=vv * h, label="Xh")
    return replace(g, func=h if not h.is_constant() else None)


def x_f(ctx: Context, f: Expr | None = None) -> Generator:
    """Entropy relabeling family F(S) d_S."""
    if f is None:
        f = Expr.function(ctx, "F", Expr.var(ctx, "S"))
    g = generator(ctx, zs=f, label="XF")
    return replace(g, func=f if not f.is_constant() else None)


def reciprocal_algebra(ctx: Context) -> "LieAlgebra":
    """L_rt = {X1..X5, Xh, XF}."""
    return LieAlgebra(standard_basis(ctx) + [x_h(ctx), x_f(ctx)], name="Lrt")


# --- exact span arithmetic ---------------------------------------------------


def _vectorize(gens):
    """Coefficient vectors over Q against the union of slot monomials."""
    keys = []
    keyindex = {}
    vecs = []
    for g in gens:
        vec = {}
        for snum, s in enumerate(g.slots()):
            if not s.is_polynomial():
                raise SymkernelError(
                    "slot %s of %s is not polynomial" % (SLOT_NAMES[snum], g))
            scale = s.den[pleading_mono(s.den)]  # constant
            for mono, c in s.num.items():
                kk = (snum, mono)
                if kk not in keyindex:
                    keyindex[kk] = len(keys)
                    keys.append(kk)
                vec[keyindex[kk]] = c / scale
        vecs.append(vec)
    return keys, vecs


def membership(target: Generator, basis) -> list | None:
    """Exact rational coefficients of target over basis, or None."""
    keys, vecs = _vectorize(list(basis) + [target])
    tvec = vecs[-1]
    bvecs = vecs[:-1]
    rows = []
    rhs = []
    for ki in range(len(keys)):
        rows.append([bv.get(ki, QQ(0)) for bv in bvecs])
        rhs.append(tvec.get(ki, QQ(0)))
    if not rows:
        return [QQ(0)] * len(basis)
    return solve(rows, rhs)


def _rank_and_span(vecs, nkeys):
    """Row-reduce sparse vectors; returns pivot rows for membership tests."""
    pivots = {}
    for v in vecs:
        row = dict(v)
        while row:
            c = min(row)
            if c in pivots:
                f = row[c]
                for cc, val in pivots[c].items():
                    nv = row.get(cc, QQ(0)) - f * val
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
            else:
                pv = row[c]
                pivots[c] = {cc: val / pv for cc, val in row.items()}
                break
    return pivots


def _in_span(pivots, vec) -> bool:
    row = dict(vec)
    while row:
        c = min(row)
        if c not in pivots:
            return False
        f = row[c]
        for cc, val in pivots[c].items():
            nv = row.get(cc, QQ(0)) - f * val
            if nv:
                row[cc] = nv
            else:
                row.pop(cc, None)
    return True


# --- functional matching -----------------------------------------------------


def _match_functional(cand: Generator, family: Generator):
    """Try cand == coeff * family(with its function slot replaced).

    Returns (coeff, factor) or None; factor is the replacing function and
    coeff a rational scale.
    """
    if family.func is None:
        return None
    template = [s / family.func for s in family.slots()]
    ratio = None
    for c, t in zip(cand.slots(), template):
        if t.is_zero():
            if not c.is_zero():
                return None
            continue
        r = c / t
        if ratio is None:
            ratio = r
        elif not (ratio - r).is_zero():
            return None
    if ratio is None or ratio.is_zero():
        return None
    # split a rational scale out of the function factor
    num = pprimitive(ratio.num)
    lead_in = ratio.num[pleading_mono(ratio.num)]
    lead_pp = num[pleading_mono(num)]
    coeff = lead_in / lead_pp
    factor = ratio / Expr.const(cand.ctx, coeff)
    ctx = cand.ctx
    allowed = set()
    for idx, info in ctx.atoms.items():
        allowed.add(info.display)
    if not factor.free_variables() <= allowed:
        return None
    return coeff, factor


@dataclass(frozen=True)
class FunctionalConstant:
    """Structure constant pointing into a function-parameterized family."""
    family: int
    factor: Expr
    coeff: object

    def __str__(self):
        c = "" if self.coeff == 1 else ("-" if self.coeff == -1 else
                                        "%s*" % self.coeff)
        return "%sX[%s]" % (c, self.factor)


# --- Lie algebra -------------------------------------------------------------


@dataclass
class LieAlgebra:
    basis: list
    name: str = ""
    _table: dict | None = field(default=None, repr=False)

    def labels(self):
        return [g.label or ("B%d" % i) for i, g in enumerate(self.basis)]

    def dim(self):
        return len(self.basis)

    def structure_constants(self) -> dict:
        """Full antisymmetric table {(i,j): [(k, c)] or FunctionalConstant}."""
        if self._table is not None:
            return self._table
        n = len(self.basis)
        table = {}
        for i in range(n):
            for j in range(i + 1, n):
                br = commutator(self.basis[i], self.basis[j])
                entry = self._decompose_bracket((i, j), br)
                table[(i, j)] = entry
                table[(j, i)] = _negate_entry(entry)
        self._table = table
        return table

    def _decompose_bracket(self, pair, br: Generator):
        if br.is_zero():
            return []
        coeffs = membership(br, self.basis)
        if coeffs is not None:
            return [(k, c) for k, c in enumerate(coeffs) if c]
        for k, g in enumerate(self.basis):
            m = _match_functional(br, g)
            if m is not None:
                return FunctionalConstant(k, m[1], m[0])
        raise NotClosed((self.basis[pair[0]].label, self.basis[pair[1]].label),
                        br)

    def constant_table(self) -> dict:
        """{(i,j,k): QQ} for the non-functional part of the table."""
        out = {}
        for (i, j), entry in self.structure_constants().items():
            if isinstance(entry, FunctionalConstant):
                continue
            for k, c in entry:
                out[(i, j, k)] = c
        return out

    def derived_algebra(self) -> "LieAlgebra":
        """Span of all commutators, with basis drawn from this basis."""
        n = len(self.basis)
        brackets = []
        families_hit = set()
        for i in range(n):
            for j in range(i + 1, n):
                br = commutator(self.basis[i], self.basis[j])
                if br.is_zero():
                    continue
                coeffs = membership(br, self.basis)
                if coeffs is not None:
                    brackets.append(br)
                else:
                    for k, g in enumerate(self.basis):
                        if _match_functional(br, g) is not None:
                            families_hit.add(k)
                            break
                    else:
                        brackets.append(br)
        chosen = []
        if brackets:
            keys, vecs = _vectorize(brackets + list(self.basis))
            bvecs, basevecs = vecs[:len(brackets)], vecs[len(brackets):]
            span = _rank_and_span(bvecs, len(keys))
            target_rank = len(span)
            picked_vecs = []
            for k, (g, bv) in enumerate(zip(self.basis, basevecs)):
                if k in families_hit:
                    continue
                if _in_span(span, bv):
                    test = _rank_and_span(picked_vecs + [bv], len(keys))
                    if len(test) > len(picked_vecs):
                        chosen.append(g)
                        picked_vecs.append(bv)
            if len(picked_vecs) < target_rank:
                # fill with raw brackets not already covered
                cur = _rank_and_span(picked_vecs, len(keys))
                for br, bv in zip(brackets, bvecs):
                    if not _in_span(cur, bv):
                        chosen.append(br.with_label("[%s]" % br.label))
                        picked_vecs.append(bv)
                        cur = _rank_and_span(picked_vecs, len(keys))
        for k in sorted(families_hit):
            chosen.append(self.basis[k])
        return LieAlgebra(chosen, name=self.name + "'")

    def center(self) -> "LieAlgebra":
        """Maximal central subspace, by exact nullspace of the c-table."""
        n = len(self.basis)
        rows = {}
        for (i, j), entry in self.structure_constants().items():
            if isinstance(entry, FunctionalConstant):
                key = ("f", j, entry.family, str(entry.factor))
                rows.setdefault(key, {})[i] = entry.coeff
            else:
                for k, c in entry:
                    rows.setdefault((j, k), {})[i] = c
        basisvecs = nullspace(list(rows.values()), n, one=QQ(1))
        out = []
        for vec in basisvecs:
            g = zero_generator(self.basis[0].ctx)
            label_parts = []
            for i, c in enumerate(vec):
                if c:
                    g = g + self.basis[i].scale(c)
                    label_parts.append(self.basis[i].label)
            out.append(g.with_label("+".join(label_parts)))
        return LieAlgebra(out, name="Z(%s)" % self.name)


def _negate_entry(entry):
    if isinstance(entry, FunctionalConstant):
        return FunctionalConstant(entry.family, entry.factor, -entry.coeff)
    return [(k, -c) for k, c in entry]


def commutator_table_text(L: LieAlgebra) -> str:
    labels = L.labels()
    table = L.structure_constants()
    entries = {}
    for (i, j), entry in table.items():
        entries[(i, j)] = _entry_text(entry, labels)
    lead = max(len(x) for x in labels) + 2
    width = max([len(s) for s in entries.values()] +
                [len(x) for x in labels]) + 2
    lines = ["".ljust(lead) + "".join(x.ljust(width) for x in labels)]
    n = len(labels)
    for i in range(n):
        row = [labels[i].ljust(lead)]
        for j in range(n):
            s = "0" if i == j else entries[(i, j)]
            row.append(s.ljust(width))
        lines.append("".join(row).rstrip())
    return "\n".join(lines)


def _entry_text(entry, labels):
    if isinstance(entry, FunctionalConstant):
        return str(entry)
    if not entry:
        return "0"
    parts = []
    for k, c in entry:
        if c == 1:
            parts.append(labels[k])
        elif c == -1:
            parts.append("-%s" % labels[k])
        else:
            parts.append("%s*%s" % (c, labels[k]))
    return "+".join(parts).replace("+-", "-")


# --- automorphism machinery ---------------------------------------------------


@dataclass(frozen=True)
class AutomorphismMatrix:
    """3x3 matrix a[n][i] over labels, column i = image of the i-th basis
    element; optional center multiplier a11."""
    entries: tuple
    a11: Expr | None = None
    labels: tuple = (3, 4, 5)

    def det(self) -> Expr:
        return det3(self.entries)


def automorphism_symbols(ctx: Context, labels=(3, 4, 5)):
    syms = []
    for n in labels:
        row = []
        for i in labels:
            name = "a%s%s" % (n, i)
            ctx.ensure(name)
            row.append(Expr.var(ctx, name))
        syms.append(tuple(row))
    return tuple(syms)


def automorphism_constraints(ctx: Context, table: dict, labels=(3, 4, 5)):
    """Polynomial conditions on a_ni for a linear map to preserve the
    bracket of a 3-dimensional constant-structure-constant algebra:

        sum_{k,s} a_ki a_sj c_ks^n = sum_m c_ij^m a_nm   (all i<j, n)

    table: {(i,j,k): value} over indices 0..2, antisymmetric completion
    implied.  Trivial and duplicate conditions are removed.
    """
    a = automorphism_symbols(ctx, labels)

    def c(i, j, k):
        if (i, j, k) in table:
            return table[(i, j, k)]
        if (j, i, k) in table:
            return -table[(j, i, k)]
        return QQ(0)

    constraints = []
    seen = set()
    for i in range(3):
        for j in range(i + 1, 3):
            for n in range(3):
                lhs = Expr.const(ctx, 0)
                for k in range(3):
                    for s in range(3):
                        cc = c(k, s, n)
                        if cc:
                            lhs = lhs + a[k][i] * a[s][j] * cc
                rhs = Expr.const(ctx, 0)
                for m in range(3):
                    cc = c(i, j, m)
                    if cc:
                        rhs = rhs + a[n][m] * cc
                e = lhs - rhs
                if e.is_zero():
                    continue
                canon = _canonical_poly(e)
                key = str(canon)
                if key not in seen:
                    seen.add(key)
                    constraints.append(canon)
    return constraints


def _canonical_poly(e: Expr) -> Expr:
    num = pprimitive(e.num)
    return Expr(e.ctx, num, pconst(1), _normalized=True)


@dataclass
class AutomorphismReport:
    satisfied: bool
    det: Expr
    residuals: list

    def __str__(self):
        lines = ["det = %s" % self.det]
        for i, r in enumerate(self.residuals):
            lines.append("constraint %d residual: %s" % (i + 1, r))
        lines.append("satisfied: %s" % self.satisfied)
        return "\n".join(lines)


def verify_automorphism_solution(A: AutomorphismMatrix, constraints,
                                 labels=(3, 4, 5)) -> AutomorphismReport:
    ctx = A.entries[0][0].ctx
    bindings = {}
    for r, n in enumerate(labels):
        for cpos, i in enumerate(labels):
            name = "a%s%s" % (n, i)
            ctx.ensure(name)
            bindings[name] = A.entries[r][cpos]
    det = A.det()
    if det.is_zero():
        raise SingularMatrix("det A normalizes to 0")
    residuals = [c.substitute(bindings) for c in constraints]
    ok = all(r.is_zero() for r in residuals)
    return AutomorphismReport(satisfied=ok, det=det, residuals=residuals)


def jacobi_residuals(table: dict, dim: int):
    """sum_m (c_ij^m c_mk^n + c_jk^m c_mi^n + c_ki^m c_mj^n) over all i<j<k, n."""
    def c(i, j, k):
        if (i, j, k) in table:
            return table[(i, j, k)]
        if (j, i, k) in table:
            return -table[(j, i, k)]
        return QQ(0)

    out = []
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                for n in range(dim):
                    s = QQ(0)
                    for m in range(dim):
                        s += c(i, j, m) * c(m, k, n)
                        s += c(j, k, m) * c(m, i, n)
                        s += c(k, i, m) * c(m, j, n)
                    out.append(((i, j, k, n), s))
    return out
