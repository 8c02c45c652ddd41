"""Independent polynomial oracle: sympy with z reduced modulo the cyclotomic polynomial."""

import sympy

from cremona.cyclo import lcm

x1, x2, x3, z = sympy.symbols("x1 x2 x3 z")
XS = (x1, x2, x3)


def cyclo_expr(c, n):
    c = c.embed(n)
    return sum(sympy.Rational(v.numerator, v.denominator) * z**e for e, v in c.coeffs.items())


def poly_expr(p, n):
    return sum(cyclo_expr(c, n) * x1**a * x2**b * x3**cc for (a, b, cc), c in p.items())


def reduce_z(expr, n):
    if n <= 2:
        return sympy.expand(expr.subs(z, -1 if n == 2 else 1))
    phi = sympy.cyclotomic_poly(n, z)
    return sympy.expand(sympy.rem(sympy.expand(expr), phi, z))


def same(expr_a, expr_b, n):
    return reduce_z(expr_a - expr_b, n) == 0


def map_exprs(f, n=None):
    n = n or f.conductor
    return [poly_expr(c, n) for c in f.components], n


def compose_expr(outer, inner):
    """outer(inner(x)) as sympy expressions."""
    sub = dict(zip(XS, inner))
    return [sympy.expand(e.xreplace(sub)) for e in outer]


def proportional(comps_a, comps_b, n):
    """Whether two component triples define the same map (cross products vanish)."""
    for i in range(3):
        for j in range(i + 1, 3):
            if not same(comps_a[i] * comps_b[j], comps_a[j] * comps_b[i], n):
                return False
    return any(reduce_z(e, n) != 0 for e in comps_a)


def common_conductor(*maps):
    return lcm(*(m.conductor for m in maps))
