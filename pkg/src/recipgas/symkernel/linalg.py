"""Exact Gaussian elimination over a field (Fraction/QQ or Expr).

Elements only need +, -, *, /, equality with 0, and truthiness of that
comparison; both exact rationals and symbolic expressions qualify.  No
pivot-size heuristics: the first nonzero entry wins, so verdicts never
depend on numeric magnitude.
"""

from __future__ import annotations


def _is_zero(x) -> bool:
    z = x == 0
    return bool(z)


def solve(rows, rhs):
    """Solve A x = b exactly.

    rows: list of lists (the matrix), rhs: list.  Returns the solution
    vector if the system is consistent and determined on its pivots (free
    columns get 0), or None if inconsistent.
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(rows[0]) if rows else 0
    piv_of_col = {}
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not _is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_of_col[c] = r
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if not _is_zero(m[i][ncols]):
            return None
    zero = None
    for row in m:
        zero = row[0] - row[0]
        break
    sol = []
    for c in range(ncols):
        if c in piv_of_col:
            sol.append(m[piv_of_col[c]][ncols])
        else:
            sol.append(zero)
    return sol


def nullspace(rows, ncols, one=1):
    """Basis of the right nullspace of a matrix given as sparse rows.

    rows: iterable of dicts {col: value}.  Returns a list of dense basis
    vectors (length ncols) over the same field.
    """
    work = [dict(r) for r in rows if r]
    pivots = {}       # col -> row dict (normalized)
    for row in work:
        while row:
            c = min(row)
            if c in pivots:
                f = row[c]
                for cc, v in pivots[c].items():
                    nv = row.get(cc, 0) - f * v
                    if _is_zero(nv):
                        row.pop(cc, None)
                    else:
                        row[cc] = nv
                continue
            pv = row[c]
            row = {cc: v / pv for cc, v in row.items()}
            pivots[c] = row
            break
    # back-substitute so each pivot row has zeros in other pivot columns
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        for c2 in [cc for cc in row if cc != c and cc in pivots]:
            f = row[c2]
            for cc, v in pivots[c2].items():
                nv = row.get(cc, 0) - f * v
                if _is_zero(nv):
                    row.pop(cc, None)
                else:
                    row[cc] = nv
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [0] * ncols
        vec[fc] = one
        for pc, row in pivots.items():
            coeff = row.get(fc)
            if coeff is not None and not _is_zero(coeff):
                vec[pc] = -coeff
        basis.append(vec)
    return basis


def det3(m):
    """Determinant of a 3x3 matrix of field elements."""
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
