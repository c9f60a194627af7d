"""Sparse multivariate polynomials over exact rationals.

A polynomial is a dict mapping packed monomials to nonzero rational
coefficients.  A monomial is a single integer: 16-bit fields hold the
exponent of each variable (variable i at bits 16*(i+1)..), and the lowest
field accumulates the total degree.  Monomial multiplication is integer
addition; divisibility uses a guard-bit trick.  Exponents must stay below
2^15, far beyond anything this engine produces.

Plain integer comparison of packed monomials is an admissible term order
(total, multiplication-compatible, with 1 minimal), used internally for
division and canonical scaling; rendering sorts graded-lexicographically
by declaration order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import gcd as _igcd

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    QQ = Fraction

QONE = QQ(1)
QZERO = QQ(0)

Mono = int
Poly = dict

MONO_ONE: Mono = 0
_FB = 16
_MASK = 0xFFFF
_GUARDS: dict = {}


def _guard(nwords: int) -> int:
    g = _GUARDS.get(nwords)
    if g is None:
        g = 0
        for i in range(nwords):
            g |= 0x8000 << (_FB * i)
        _GUARDS[nwords] = g
    return g


def mono_pack(pairs) -> Mono:
    m = 0
    total = 0
    for idx, exp in pairs:
        m += exp << (_FB * (idx + 1))
        total += exp
    return m + total


def mono_items(m: Mono):
    """Decoded (variable_index, exponent) pairs, ascending index."""
    m >>= _FB
    i = 0
    out = []
    while m:
        e = m & _MASK
        if e:
            out.append((i, e))
        m >>= _FB
        i += 1
    return out


def mono_degree(m: Mono) -> int:
    return m & _MASK


def mono_exp(m: Mono, idx: int) -> int:
    return (m >> (_FB * (idx + 1))) & _MASK


def mono_mul(m1: Mono, m2: Mono) -> Mono:
    return m1 + m2


def mono_div(m1: Mono, m2: Mono):
    """m1 / m2, or None when m2 does not divide m1."""
    if m2 == 0:
        return m1
    if m1 < m2:
        return None
    nwords = (m1.bit_length() + _FB - 1) // _FB
    g = _guard(nwords)
    t = (m1 | g) - m2
    if (t & g) != g:
        return None
    return t - g


def mono_cmp(m1: Mono, m2: Mono) -> int:
    """Graded lex by declaration order (rendering order)."""
    d1, d2 = m1 & _MASK, m2 & _MASK
    if d1 != d2:
        return 1 if d1 > d2 else -1
    a, b = m1 >> _FB, m2 >> _FB
    while a or b:
        e1, e2 = a & _MASK, b & _MASK
        if e1 != e2:
            return 1 if e1 > e2 else -1
        a >>= _FB
        b >>= _FB
    return 0


MONO_KEY = cmp_to_key(mono_cmp)


def pzero() -> Poly:
    return {}


def pconst(c) -> Poly:
    c = QQ(c)
    return {MONO_ONE: c} if c else {}


def pvar(idx: int, exp: int = 1) -> Poly:
    return {(exp << (_FB * (idx + 1))) + exp: QONE}


def pis_zero(p: Poly) -> bool:
    return not p


def pis_const(p: Poly) -> bool:
    return not p or (len(p) == 1 and MONO_ONE in p)


def pget_const(p: Poly):
    if not p:
        return QZERO
    return p[MONO_ONE]


def psorted_terms(p: Poly):
    return sorted(p.items(), key=lambda t: MONO_KEY(t[0]), reverse=True)


def pleading_mono(p: Poly) -> Mono:
    """Leading monomial under the internal (packed-integer) order."""
    return max(p)


def padd(a: Poly, b: Poly) -> Poly:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    r = dict(a)
    for m, c in b.items():
        s = r.get(m)
        if s is None:
            r[m] = c
        else:
            s = s + c
            if s:
                r[m] = s
            else:
                del r[m]
    return r


def pneg(a: Poly) -> Poly:
    return {m: -c for m, c in a.items()}


def psub(a: Poly, b: Poly) -> Poly:
    if not b:
        return dict(a)
    r = dict(a)
    for m, c in b.items():
        s = r.get(m)
        if s is None:
            r[m] = -c
        else:
            s = s - c
            if s:
                r[m] = s
            else:
                del r[m]
    return r


def pscale(a: Poly, c) -> Poly:
    if not c:
        return {}
    return {m: cc * c for m, cc in a.items()}


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    if len(a) == 1:
        (m1, c1), = a.items()
        if m1 == MONO_ONE:
            return pscale(b, c1)
        return {m1 + m2: c1 * c2 for m2, c2 in b.items()}
    if len(b) == 1:
        (m2, c2), = b.items()
        if m2 == MONO_ONE:
            return pscale(a, c2)
        return {m1 + m2: c1 * c2 for m1, c1 in a.items()}
    r: Poly = {}
    get = r.get
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = m1 + m2
            s = get(m)
            if s is None:
                r[m] = c1 * c2
            else:
                s = s + c1 * c2
                if s:
                    r[m] = s
                else:
                    del r[m]
    return r


def ppow(a: Poly, n: int) -> Poly:
    if n < 0:
        raise ValueError("negative power on polynomial")
    r = pconst(1)
    base = a
    while n:
        if n & 1:
            r = pmul(r, base)
        n >>= 1
        if n:
            base = pmul(base, base)
    return r


def pmul_mono(a: Poly, mono: Mono, coeff) -> Poly:
    return {m + mono: c * coeff for m, c in a.items()}


def pderiv(a: Poly, idx: int) -> Poly:
    shift = _FB * (idx + 1)
    dec = (1 << shift) + 1
    r: Poly = {}
    for m, c in a.items():
        e = (m >> shift) & _MASK
        if e:
            nm = m - dec
            s = r.get(nm)
            nc = c * e
            if s is None:
                r[nm] = nc
            else:
                s = s + nc
                if s:
                    r[nm] = s
                else:
                    del r[nm]
    return r


def pvars(a: Poly) -> set:
    s: set = set()
    seen = 0
    for m in a:
        seen |= m
    seen >>= _FB
    i = 0
    while seen:
        if seen & _MASK:
            s.add(i)
        seen >>= _FB
        i += 1
    return s


def pdegree_in(a: Poly, idx: int) -> int:
    shift = _FB * (idx + 1)
    d = 0
    for m in a:
        e = (m >> shift) & _MASK
        if e > d:
            d = e
    return d


def ptotal_degree(a: Poly) -> int:
    return max((m & _MASK for m in a), default=0)


def peval(a: Poly, value_of, mul, add, one):
    """Generic evaluation; value_of(idx) returns the value of a variable."""
    cache: dict = {}

    def vpow(v, e):
        key = (v, e)
        r = cache.get(key)
        if r is None:
            base = cache.get((v, 1))
            if base is None:
                base = value_of(v)
                cache[(v, 1)] = base
            r = base
            for _ in range(e - 1):
                r = mul(r, base)
            cache[key] = r
        return r

    total = None
    for m, c in a.items():
        term = c
        for v, e in mono_items(m):
            term = mul(term, vpow(v, e))
        total = term if total is None else add(total, term)
    if total is None:
        return mul(one, QZERO)
    return total


# --- exact division and gcd ---------------------------------------------


def pdiv_exact(a: Poly, b: Poly) -> Poly:
    """Quotient a/b assuming b divides a exactly; raises ValueError otherwise."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if pis_const(b):
        inv = QONE / b[MONO_ONE]
        return pscale(a, inv)
    q: Poly = {}
    rem = dict(a)
    lmb = max(b)
    lcb = b[lmb]
    while rem:
        lma = max(rem)
        t = mono_div(lma, lmb)
        if t is None:
            raise ValueError("inexact polynomial division")
        c = rem[lma] / lcb
        q[t] = c
        for m, cb in b.items():
            mm = m + t
            s = rem.get(mm)
            if s is None:
                rem[mm] = -cb * c
            else:
                s = s - cb * c
                if s:
                    rem[mm] = s
                else:
                    del rem[mm]
    return q


def _qcontent(a: Poly):
    """Rational content carrying the sign of the internal leading term."""
    num_gcd = 0
    den_lcm = 1
    for c in a.values():
        num_gcd = _igcd(num_gcd, abs(int(c.numerator)))
        d = int(c.denominator)
        den_lcm = den_lcm * d // _igcd(den_lcm, d)
    cont = QQ(num_gcd, den_lcm)
    if a[max(a)] < 0:
        cont = -cont
    return cont


def pprimitive(a: Poly) -> Poly:
    """Scale so coefficients are coprime integers, leading one positive."""
    if not a:
        return {}
    cont = _qcontent(a)
    if cont == 1:
        return dict(a)
    inv = QONE / cont
    return {m: c * inv for m, c in a.items()}


def _mono_content(a: Poly) -> Mono:
    """Largest monomial dividing every term."""
    it = iter(a)
    first = next(it)
    if first == MONO_ONE:
        return MONO_ONE
    common = dict(mono_items(first))
    for m in it:
        if m == MONO_ONE:
            return MONO_ONE
        mm = dict(mono_items(m))
        for v in list(common):
            e = mm.get(v)
            if e is None:
                del common[v]
            elif e < common[v]:
                common[v] = e
        if not common:
            return MONO_ONE
    return mono_pack(sorted(common.items()))


def _to_recursive(a: Poly, idx: int) -> dict:
    """View as univariate in variable idx with Poly coefficients."""
    shift = _FB * (idx + 1)
    r: dict = {}
    for m, c in a.items():
        e = (m >> shift) & _MASK
        rest = m - ((e << shift) + e) if e else m
        coeff = r.get(e)
        if coeff is None:
            r[e] = {rest: c}
        else:
            s = coeff.get(rest)
            if s is None:
                coeff[rest] = c
            else:
                s = s + c
                if s:
                    coeff[rest] = s
                else:
                    del coeff[rest]
    return {e: p for e, p in r.items() if p}


def _from_recursive(r: dict, idx: int) -> Poly:
    shift = _FB * (idx + 1)
    out: Poly = {}
    for e, p in r.items():
        mono = (e << shift) + e if e else 0
        for m, c in p.items():
            mm = m + mono
            s = out.get(mm)
            if s is None:
                out[mm] = c
            else:
                s = s + c
                if s:
                    out[mm] = s
                else:
                    del out[mm]
    return out


def _rdegree(r: dict) -> int:
    return max(r) if r else -1


def _rscale_poly(r: dict, p: Poly) -> dict:
    return {e: pmul(c, p) for e, c in r.items()}


def _rsub(r1: dict, r2: dict) -> dict:
    out = dict(r1)
    for e, p in r2.items():
        s = psub(out.get(e, {}), p)
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def _rdiv_exact_poly(r: dict, p: Poly) -> dict:
    return {e: pdiv_exact(c, p) for e, c in r.items()}


def _prem(a: dict, b: dict) -> dict:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    da, db = _rdegree(a), _rdegree(b)
    lcb = b[db]
    steps = da - db + 1
    r = dict(a)
    while True:
        dr = _rdegree(r)
        if dr < db:
            break
        lcr = r[dr]
        shifted = {e + dr - db: pmul(c, lcr) for e, c in b.items()}
        r = _rsub(_rscale_poly(r, lcb), shifted)
        steps -= 1
    if steps > 0 and r:
        scale = ppow(lcb, steps)
        r = {e: pmul(c, scale) for e, c in r.items()}
    return r


def _rcontent(r: dict) -> Poly:
    cont: Poly = {}
    for p in r.values():
        cont = pgcd(cont, p)
        if pis_const(cont) and cont:
            return pconst(1)
    return cont if cont else pconst(1)


def _subresultant_gcd(f: dict, g: dict) -> dict:
    """Primitive gcd of primitive recursive polynomials (subresultant PRS)."""
    if _rdegree(f) < _rdegree(g):
        f, g = g, f
    h = pconst(1)
    gg = pconst(1)
    while True:
        delta = _rdegree(f) - _rdegree(g)
        r = _prem(f, g)
        if not r:
            break
        if _rdegree(r) == 0:
            return {0: pconst(1)}
        divisor = pmul(gg, ppow(h, delta))
        f, g = g, _rdiv_exact_poly(r, divisor)
        gg = f[_rdegree(f)]
        if delta == 1:
            h = dict(gg)
        elif delta > 1:
            h = pdiv_exact(ppow(gg, delta), ppow(h, delta - 1))
    cont = _rcontent(g)
    return {e: pdiv_exact(c, cont) for e, c in g.items()}


def _try_div(a: Poly, b: Poly) -> bool:
    """True when b divides a exactly."""
    try:
        pdiv_exact(a, b)
        return True
    except ValueError:
        return False


def pgcd(a: Poly, b: Poly) -> Poly:
    """Primitive greatest common divisor (positive leading coefficient)."""
    if not a:
        return pprimitive(b)
    if not b:
        return pprimitive(a)
    if pis_const(a) or pis_const(b):
        return pconst(1)
    if a == b:
        return pprimitive(a)
    if len(b) <= len(a) and _try_div(a, b):
        return pprimitive(b)
    if len(a) < len(b) and _try_div(b, a):
        return pprimitive(a)

    ma, mb = _mono_content(a), _mono_content(b)
    common_mono = None
    if ma or mb:
        common = dict(mono_items(ma))
        mbd = dict(mono_items(mb))
        for v in list(common):
            e = mbd.get(v)
            if e is None:
                del common[v]
            elif e < common[v]:
                common[v] = e
        common_mono = mono_pack(sorted(common.items()))
        if ma:
            a = {mono_div(m, ma): c for m, c in a.items()}
        if mb:
            b = {mono_div(m, mb): c for m, c in b.items()}
        if pis_const(a) or pis_const(b):
            return {common_mono: QONE} if common_mono else pconst(1)

    shared = pvars(a) & pvars(b)
    if not shared:
        g = pconst(1)
    else:
        main = min(shared, key=lambda v: pdegree_in(a, v) + pdegree_in(b, v))
        ra, rb = _to_recursive(a, main), _to_recursive(b, main)
        ca, cb = _rcontent(ra), _rcontent(rb)
        pa = _rdiv_exact_poly(ra, ca) if not pis_const(ca) else ra
        pb = _rdiv_exact_poly(rb, cb) if not pis_const(cb) else rb
        gc = pgcd(ca, cb)
        gr = _subresultant_gcd(pa, pb)
        g = pprimitive(pmul(gc, _from_recursive(gr, main)))

    if common_mono:
        g = pmul_mono(g, common_mono, QONE)
    return g
