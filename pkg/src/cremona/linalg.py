"""Small dense exact linear algebra over Q or a cyclotomic field.

Matrices are lists of rows.  Entries may be Fractions or Cyclo numbers;
routines only use ring operations, ``bool`` for zero tests and division.
"""

from __future__ import annotations

from fractions import Fraction


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(p):
            s = None
            for k in range(m):
                x = ai[k]
                if x:
                    y = b[k][j]
                    if y:
                        t = x * y
                        s = t if s is None else s + t
            row.append(s if s is not None else ai[0] * 0)
        out.append(row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        s = None
        for x, y in zip(row, v):
            if x and y:
                t = x * y
                s = t if s is None else s + t
        out.append(s if s is not None else row[0] * 0)
    return out


def det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
    m = [list(r) for r in a]
    sign = 1
    d = None
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return m[0][0] * 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        d = p if d is None else d * p
        inv = 1 / p
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d * sign


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int | None = None, zero=None, one=None):
    """Basis of {v : rows . v = 0}."""
    if not rows:
        if ncols is None:
            raise ValueError("need ncols for an empty system")
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    m, pivots = rref(rows)
    sample = rows[0][0]
    zero = sample * 0 if zero is None else zero
    one = zero + 1 if one is None else one
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def inverse(a):
    n = len(a)
    zero = a[0][0] * 0
    one = zero + 1
    aug = [list(a[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def solve_rational(rows, rhs):
    """Solve rows . x = rhs over Q; None if inconsistent (any solution if several)."""
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = m[i][ncols]
    return x


def intersect_subspaces(a, b, dim):
    """Intersection of two subspaces given by spanning vectors."""
    if not a or not b:
        return []
    # v = sum x_i a_i = sum y_j b_j
    cols = [list(v) for v in a] + [[-x for x in v] for v in b]
    rows = [[c[i] for c in cols] for i in range(dim)]
    ns = nullspace(rows)
    out = []
    for sol in ns:
        v = None
        for coef, vec in zip(sol[: len(a)], a):
            if coef:
                w = [coef * x for x in vec]
                v = w if v is None else [p + q for p, q in zip(v, w)]
        if v is not None:
            out.append(v)
    if not out:
        return []
    m, piv = rref(out)
    return m[: len(piv)]
