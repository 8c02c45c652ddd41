"""Sparse polynomials in x1, x2, x3 with cyclotomic coefficients.

A polynomial is a dict mapping exponent triples to nonzero :class:`Cyclo`
coefficients.  Functions here are pure and never mutate their inputs.
The gcd dehomogenises at x3 = 1 and runs a primitive pseudo-remainder
sequence in K[x2][x1], with univariate Euclid in K[x2] for contents.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

from .cyclo import Cyclo

Poly = dict  # {(a, b, c): Cyclo}

X1 = {(1, 0, 0): Cyclo.one()}
X2 = {(0, 1, 0): Cyclo.one()}
X3 = {(0, 0, 1): Cyclo.one()}
VARS = (X1, X2, X3)


def const(c, nvars: int = 3) -> Poly:
    c = c if isinstance(c, Cyclo) else Cyclo.rational(c)
    return {(0,) * nvars: c} if c else {}


def add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for e, c in q.items():
        s = out.get(e)
        s = c if s is None else s + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def neg(p: Poly) -> Poly:
    return {e: -c for e, c in p.items()}


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    if not c:
        return {}
    return {e: x * c for e, x in p.items()}


def mul(p: Poly, q: Poly) -> Poly:
    if len(p) > len(q):
        p, q = q, p
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = c1 * c2
            s = out.get(e)
            out[e] = v if s is None else s + v
    return {e: c for e, c in out.items() if c}


def power(p: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("negative power")
    result = None
    base = p
    while k:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    if result is None:
        nv = len(next(iter(p))) if p else 3
        return const(1, nv)
    return result


def product(polys) -> Poly:
    return reduce(mul, polys, const(1))


def degree(p: Poly) -> int:
    return max((sum(e) for e in p), default=-1)


def is_homogeneous(p: Poly) -> bool:
    return len({sum(e) for e in p}) <= 1


def monomial(*exps) -> Poly:
    return {tuple(exps): Cyclo.one()}


def linear(coeffs) -> Poly:
    out = {}
    for i, c in enumerate(coeffs):
        c = c if isinstance(c, Cyclo) else Cyclo.rational(c)
        if c:
            e = [0] * len(coeffs)
            e[i] = 1
            out[tuple(e)] = c
    return out


def conductor(p: Poly) -> int:
    from .cyclo import lcm

    return lcm(*(c.n for c in p.values())) if p else 1


def embed(p: Poly, m: int) -> Poly:
    return {e: c.embed(m) for e, c in p.items()}


def leading(p: Poly):
    """(exponent, coefficient) of the lexicographically largest monomial."""
    e = max(p)
    return e, p[e]


def substitute(p: Poly, images) -> Poly:
    """p(images[0], images[1], images[2]) with cached powers of the images."""
    if not p:
        return {}
    nv = len(next(iter(p)))
    cache = [{0: const(1, len(next(iter(images[0]))) if images[0] else 3)} for _ in range(nv)]

    def pw(i, k):
        c = cache[i]
        if k not in c:
            lower = max(j for j in c if j < k)
            c[k] = mul(pw(i, lower), power(images[i], k - lower)) if k - lower > 1 else mul(c[lower], images[i])
        return c[k]

    out: dict = {}
    # group by the first two exponents to share partial products
    for e, coef in sorted(p.items()):
        term = None
        for i, k in enumerate(e):
            if k:
                term = pw(i, k) if term is None else mul(term, pw(i, k))
        if term is None:
            term = cache[0][0]
        out = add(out, scale(term, coef))
    return out


def evaluate(p: Poly, point):
    total = None
    for e, c in p.items():
        v = c
        for x, k in zip(point, e):
            if k:
                v = v * x**k
        total = v if total is None else total + v
    return total if total is not None else Cyclo.zero()


def monomial_content(p: Poly) -> tuple:
    if not p:
        return (0, 0, 0)
    nv = len(next(iter(p)))
    return tuple(min(e[i] for e in p) for i in range(nv))


def shift(p: Poly, exps, sign: int = -1) -> Poly:
    return {tuple(a + sign * b for a, b in zip(e, exps)): c for e, c in p.items()}


# -- univariate arithmetic over K (lists, low degree first) ---------------------------


def _utrim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _udivmod(a, b):
    a = list(a)
    q = [Cyclo.zero()] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inverse()
    while len(_utrim(a)) >= len(b):
        k = len(a) - len(b)
        f = a[-1] * inv
        q[k] = f
        for i, c in enumerate(b):
            if c:
                a[i + k] = a[i + k] - f * c
        a.pop()
    return _utrim(q), a


def _ugcd(a, b):
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    if not a:
        return []
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _umul(a, b):
    if not a or not b:
        return []
    out = [Cyclo.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _utrim(out)


def _usub(a, b):
    n = max(len(a), len(b))
    z = Cyclo.zero()
    return _utrim([(a[i] if i < len(a) else z) - (b[i] if i < len(b) else z) for i in range(n)])


# -- bivariate as list (in x1) of univariate coefficient lists (in x2) -----------------


def _to_biv(p: Poly):
    """Dehomogenise at x3 = 1: list over x1-degree of x2-coefficient lists."""
    d1 = max(e[0] for e in p)
    out = [[] for _ in range(d1 + 1)]
    for (a, b, _c), coef in p.items():
        row = out[a]
        while len(row) <= b:
            row.append(Cyclo.zero())
        row[b] = row[b] + coef
    return [_utrim(r) for r in out]


def _biv_trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _content(a):
    return reduce(_ugcd, (c for c in a if c), [])


def _divide_coeffs(a, c):
    return [_udivmod(x, c)[0] if x else [] for x in a]


def _prem(a, b):
    """Pseudo-remainder of a by b in K[x2][x1]."""
    a = [list(x) for x in a]
    lc = b[-1]
    while len(_biv_trim(a)) >= len(b):
        k = len(a) - len(b)
        top = a[-1]
        a = [_umul(x, lc) for x in a]
        for i, y in enumerate(b):
            if y:
                a[i + k] = _usub(a[i + k], _umul(top, y))
        a.pop()
    return _biv_trim(a)


def _biv_gcd(a, b):
    ca, cb = _content(a), _content(b)
    g_c = _ugcd(ca, cb)
    a = _divide_coeffs(a, ca)
    b = _divide_coeffs(b, cb)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            a = b
            break
        cr = _content(r)
        a, b = b, _divide_coeffs(r, cr)
    else:
        if len(b) == 1:
            a = [[Cyclo.one()]]
    return [_umul(x, g_c) for x in a]


def _homogenise(biv, deg: int) -> Poly:
    out = {}
    for a, row in enumerate(biv):
        for b, c in enumerate(row):
            if c:
                out[(a, b, deg - a - b)] = c
    return out


def _has_x(p: Poly, i: int) -> bool:
    return any(e[i] for e in p)


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic-normalised gcd of two homogeneous polynomials."""
    if not p:
        return normalise(q)
    if not q:
        return normalise(p)
    mc = tuple(min(a, b) for a, b in zip(monomial_content(p), monomial_content(q)))
    p1 = shift(p, monomial_content(p))
    q1 = shift(q, monomial_content(q))
    mono = {mc: Cyclo.one()}
    if degree(p1) == 0 or degree(q1) == 0:
        return mono
    g = _biv_gcd(_to_biv(p1), _to_biv(q1))
    deg = max((a + len(row) - 1 for a, row in enumerate(g) if row), default=0)
    h = _homogenise(g, deg)
    return normalise(mul(h, mono))


def gcd_many(polys) -> Poly:
    polys = [p for p in polys if p]
    g = polys[0]
    for p in polys[1:]:
        g = gcd(g, p)
        if degree(g) == 0:
            break
    return g


def normalise(p: Poly) -> Poly:
    if not p:
        return p
    _, c = leading(p)
    return scale(p, c.inverse())


def divide_exact(p: Poly, d: Poly) -> Poly:
    """p / d for homogeneous d dividing p (raises ArithmeticError otherwise)."""
    if degree(d) == 0:
        return scale(p, next(iter(d.values())).inverse())
    ed, cd = leading(d)
    inv = cd.inverse()
    rem = dict(p)
    out = {}
    while rem:
        e, c = leading(rem)
        qe = tuple(a - b for a, b in zip(e, ed))
        if min(qe) < 0:
            raise ArithmeticError("polynomial division is not exact")
        f = c * inv
        out[qe] = f
        rem = sub(rem, scale(shift(d, qe, +1), f))
    return out


def binary_to_poly(coeffs, var_a: int = 1, var_b: int = 2) -> Poly:
    """sum_k coeffs[k] * x_a^(d-k) x_b^k as a ternary polynomial."""
    d = len(coeffs) - 1
    out = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0, 0, 0]
            e[var_a] += d - k
            e[var_b] += k
            out[tuple(e)] = c if isinstance(c, Cyclo) else Cyclo.rational(Fraction(c))
    return out
