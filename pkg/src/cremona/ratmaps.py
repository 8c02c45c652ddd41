"""Rational self-maps of P^2 and the explicit maps used to move weights.

Conjugating an action by a birational map f is done without an inverse:
if f g f^-1 is linear with lift L then f(g x) = c L f(x) holds as an identity
of polynomials (both sides have coprime components), so L is the solution of
a linear system in nine unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import polys as P
from .action import GroupAction
from .cyclo import Cyclo, lcm, minimal_conductor, zeta
from .fileio import read_map, write_map
from .linalg import inverse, rref
from .projgeom import ProjectivePoint, ProjectiveTransform, orbit


class IndeterminateCollapse(ArithmeticError):
    """All components of a composition vanish identically."""


class NotRegularizable(ValueError):
    """A conjugated generator is not a linear map."""

    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class InvalidParams(ValueError):
    pass


class NoSuchOrbit(ValueError):
    pass


class RationalMap:
    """Three coprime homogeneous forms of equal degree, up to a common scalar.

    The stored components are divided by their gcd and scaled so that the
    lexicographically largest monomial of the first nonzero component has
    coefficient 1.
    """

    __slots__ = ("components", "degree", "_name")

    def __init__(self, components, *, reduce: bool = True, name: str | None = None):
        comps = [dict(c) for c in components]
        if len(comps) != 3:
            raise ValueError("a plane map has three components")
        if not any(comps):
            raise IndeterminateCollapse("all components vanish")
        degs = {P.degree(c) for c in comps if c}
        if len(degs) != 1 or not all(P.is_homogeneous(c) for c in comps):
            raise ValueError("components must be homogeneous of one degree")
        if reduce:
            g = P.gcd_many(comps)
            if P.degree(g) > 0:
                comps = [P.divide_exact(c, g) if c else {} for c in comps]
        lead = next(c for c in comps if c)
        inv = P.leading(lead)[1].inverse()
        self.components = tuple(P.scale(c, inv) if c else {} for c in comps)
        self.degree = P.degree(lead) if reduce else max(degs)
        self._name = name

    # -- constructors ----------------------------------------------------------------

    @classmethod
    def identity(cls) -> "RationalMap":
        return cls([P.X1, P.X2, P.X3], reduce=False, name="id")

    @classmethod
    def from_transform(cls, g: ProjectiveTransform) -> "RationalMap":
        if g.size != 3:
            raise ValueError("plane maps need 3x3 matrices")
        return cls([P.linear(row) for row in g.rows], reduce=False)

    @classmethod
    def from_text(cls, text: str) -> "RationalMap":
        info = read_map(text)
        f = cls(info["components"])
        if info["deg"] is not None and info["deg"] != f.degree:
            raise ValueError(f"declared degree {info['deg']} but the reduced map has degree {f.degree}")
        return f

    def to_text(self) -> str:
        return write_map(self.components, self.conductor, self.degree)

    # -- basic queries ----------------------------------------------------------------

    @property
    def name(self) -> str:
        return self._name or f"deg{self.degree}"

    @property
    def conductor(self) -> int:
        return lcm(*(P.conductor(c) for c in self.components))

    def is_linear(self) -> bool:
        return self.degree == 1

    def as_transform(self) -> ProjectiveTransform | None:
        if self.degree != 1:
            return None
        rows = []
        for c in self.components:
            row = [Cyclo.zero()] * 3
            for e, v in c.items():
                row[e.index(1)] = v
            rows.append(row)
        g = ProjectiveTransform(rows, self.conductor)
        return g if g.det() else None

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.degree == other.degree and equal_as_maps(self.components, other.components)

    def __hash__(self):
        return hash(self.degree)

    def __call__(self, p: ProjectivePoint) -> ProjectivePoint | None:
        vals = [P.evaluate(c, p.coords) if c else Cyclo.zero() for c in self.components]
        if not any(vals):
            return None
        return ProjectivePoint(vals)

    def __matmul__(self, other: "RationalMap") -> "RationalMap":
        return compose(self, other)

    def __repr__(self):
        return f"<RationalMap {self.name} degree {self.degree}>"


def equal_as_maps(a, b) -> bool:
    """Projective equality of two component triples by cross-multiplication."""
    if [bool(x) for x in a] != [bool(y) for y in b]:
        return False
    i = next(k for k in range(3) if a[k])
    for j in range(3):
        if j != i and P.sub(P.mul(a[i], b[j]), P.mul(a[j], b[i])):
            return False
    return True


def _substitute(f: RationalMap, g: RationalMap):
    return [P.substitute(c, g.components) if c else {} for c in f.components]


def compose(f: RationalMap, g: RationalMap) -> RationalMap:
    """f after g, with the common factor cancelled."""
    comps = _substitute(f, g)
    if not any(comps):
        raise IndeterminateCollapse("the image of the inner map lies in the base locus of the outer one")
    return RationalMap(comps)


def is_identity_components(comps) -> bool:
    return equal_as_maps(comps, [P.X1, P.X2, P.X3])


def is_involution(f: RationalMap) -> bool:
    comps = _substitute(f, f)
    if not any(comps):
        raise IndeterminateCollapse("f maps into its own base locus")
    return is_identity_components(comps)


# -- conjugating actions -------------------------------------------------------------


def _solve_linear_conjugate(f: RationalMap, g: ProjectiveTransform) -> ProjectiveTransform | None:
    """The linear L with f o g = L o f, or None if f g f^-1 is not linear."""
    fg = _substitute(f, RationalMap.from_transform(g))
    monos = sorted(set().union(*(c.keys() for c in f.components)))
    zero = Cyclo.zero()
    # columns f_1, f_2, f_3; rows indexed by monomials
    cols = [[c.get(m, zero) for m in monos] for c in f.components]
    mat = [[cols[j][k] for j in range(3)] for k in range(len(monos))]
    _, piv_rows = rref([list(r) for r in zip(*mat)])  # pivots of the transpose pick rows
    if len(piv_rows) < 3:
        raise ValueError("components of a birational map are linearly independent")
    sel = [monos[k] for k in piv_rows[:3]]
    sub = [[f.components[j].get(m, zero) for j in range(3)] for m in sel]
    inv = inverse(sub)
    rows = []
    for i in range(3):
        rhs = [fg[i].get(m, zero) for m in sel]
        rows.append([sum((inv[j][k] * rhs[k] for k in range(3)), zero) for j in range(3)])
    for i in range(3):
        lf = {}
        for j in range(3):
            if rows[i][j]:
                lf = P.add(lf, P.scale(f.components[j], rows[i][j]))
        if P.sub(lf, fg[i]):
            return None
    L = ProjectiveTransform(rows, lcm(*(x.n for r in rows for x in r)))
    return L if L.det() else None


def conjugate_action(f: RationalMap, phi: GroupAction) -> GroupAction:
    """The action g -> f g f^-1, required to be linear."""
    out = []
    for k, g in enumerate(phi.generators):
        L = _solve_linear_conjugate(f, g)
        if L is None:
            raise NotRegularizable(f"{f.name} conjugates generator {phi.names[k]} to a nonlinear map", k)
        out.append(L)
    return GroupAction(out, phi.names, None, None, phi.order_bound)


@dataclass
class Failure:
    generator: int
    reason: str

    def __bool__(self):
        return False


@dataclass
class Certificate:
    images: list  # element index in phi2.group of psi(g_i)
    words: list  # the same images as words in phi2's generators
    inner: bool  # psi is an inner twist of the generator matching
    conjugates: list = field(default_factory=list)

    def __bool__(self):
        return True

    def text(self, names) -> str:
        lines = [f"inner={'yes' if self.inner else 'no'}"]
        for name, w in zip(names, self.words):
            word = " ".join(names[i] for i in w) or "1"
            lines.append(f"psi {name} = {word}")
        return "\n".join(lines)


def equivariance_certificate(f: RationalMap, phi1: GroupAction, phi2: GroupAction):
    """Verify f o phi1(g) = phi2(psi(g)) o f on generators and return psi.

    psi is read off from the linear conjugates and checked to extend to an
    isomorphism between the two enumerated groups.
    """
    from .kernels import extend_hom

    G1, G2 = phi1.group, phi2.group
    if G1.order != G2.order:
        return Failure(0, "groups of different orders")
    images, conj = [], []
    for k, g in enumerate(phi1.generators):
        L = _solve_linear_conjugate(f, g)
        if L is None:
            return Failure(k, f"conjugate of {phi1.names[k]} is not linear")
        idx = G2.locate(L)
        if idx is None:
            return Failure(k, f"conjugate of {phi1.names[k]} is not in the second group")
        images.append(idx)
        conj.append(L)
    hom = extend_hom(G1.right, G1.words, G2.table, images, 0)
    if hom is None or len(set(hom)) != G1.order:
        return Failure(0, "generator images do not define an isomorphism")
    return Certificate(images, [G2.words[i] for i in images], _is_inner(G2, phi2, images), conj)


def _is_inner(G2, phi2, images) -> bool:
    gens = [G2.generator_index(k) for k in range(len(phi2.generators))]
    inv = G2.inverses
    t = G2.table
    return any(all(t[t[x][g]][inv[x]] == im for g, im in zip(gens, images)) for x in range(G2.order))


def verify_chain(chain, phiA: GroupAction, phiB: GroupAction):
    """Apply each map of ``chain`` in turn; True when phiB is reproduced exactly."""
    cur = phiA
    for f in chain:
        cur = conjugate_action(f, cur)
    return all(a == b for a, b in zip(cur.generators, phiB.generators))


# -- the named maps ------------------------------------------------------------------


class MapName(str, Enum):
    IOTA = "IOTA"
    GAMMA = "GAMMA"
    TAU = "TAU"
    TAU_X23 = "TAU_X23"
    THETA_A4 = "THETA_A4"
    DN_EVEN_IOTA = "DN_EVEN_IOTA"
    A4_SIGMA = "A4_SIGMA"
    A4_GAMMA = "A4_GAMMA"
    S4_SIGMA = "S4_SIGMA"
    S4_GAMMA = "S4_GAMMA"
    A5_SIGMA = "A5_SIGMA"


def _c(q) -> Cyclo:
    return q if isinstance(q, Cyclo) else Cyclo.rational(Fraction(q))


def _poly(terms) -> P.Poly:
    """Build a polynomial from [(coefficient, (a, b, c)), ...]."""
    out = {}
    for coef, e in terms:
        out = P.add(out, {tuple(e): _c(coef)})
    return out


def _x(i, k=1):
    e = [0, 0, 0]
    e[i] = k
    return {tuple(e): Cyclo.one()}


def iota() -> RationalMap:
    return RationalMap([_poly([(1, (0, 1, 1))]), _poly([(1, (1, 0, 1))]), _poly([(1, (1, 1, 0))])],
                       reduce=False, name="iota")


def dn_even_iota() -> RationalMap:
    """(1/x1, 1/x3, -1/x2) with denominators cleared."""
    return RationalMap([_poly([(1, (0, 1, 1))]), _poly([(1, (1, 1, 0))]), _poly([(-1, (1, 0, 1))])],
                       reduce=False, name="dn_even_iota")


def gamma(n: int) -> RationalMap:
    if n < 2 or n % 2:
        raise InvalidParams("gamma needs an even n >= 2")
    d = P.sub(_x(1, n), _x(2, n))
    first = _poly([(1, (1, n // 2, n // 2))])
    return RationalMap([first, P.mul(_x(1), d), P.mul(_x(2), d)], name=f"gamma_{n}")


def _tau_factor(n: int, lam: Cyclo, a: int, b: int) -> P.Poly:
    """prod_r (x_a - lam z^r x_b)(x_b - lam z^r x_a) = (x_a^n - lam^n x_b^n)(x_b^n - lam^n x_a^n)."""
    ln = lam**n
    f1 = P.sub(_x(a, n), P.scale(_x(b, n), ln))
    f2 = P.sub(_x(b, n), P.scale(_x(a, n), ln))
    return P.mul(f1, f2)


def _tau_factor_product(n: int, lam: Cyclo, a: int, b: int) -> P.Poly:
    """The same factor multiplied out linear form by linear form."""
    out = P.const(1)
    for r in range(n):
        c = lam * zeta(n, r) if n > 1 else lam
        out = P.mul(out, P.sub(_x(a), P.scale(_x(b), c)))
        out = P.mul(out, P.sub(_x(b), P.scale(_x(a), c)))
    return out


def tau(n: int, lam, variant: str = "verbatim") -> RationalMap:
    lam = _c(lam)
    if not lam or lam**n == Cyclo.one():
        raise InvalidParams("tau needs lambda != 0 with lambda^n != 1")
    a, b = (0, 1) if variant == "verbatim" else (1, 2)
    f = _tau_factor(n, lam, a, b)
    first = P.mul(_x(0), P.sub(_x(1, 2 * n), _x(2, 2 * n)))
    return RationalMap([first, P.mul(_x(1), f), P.mul(_x(2), f)], name=f"tau_{variant}")


def theta_a4(lam) -> RationalMap:
    lam = _c(lam)
    if not lam or lam == Cyclo.one() or lam**6 == Cyclo.rational(-1):
        raise InvalidParams("theta needs lambda outside {0, 1} with lambda^6 != -1")
    k = (lam**12 + 1) / lam**2
    L2, L4, L6, L8 = lam**2, lam**4, lam**6, lam**8
    f1 = _poly([(1, (4, 0, 1)), (-k, (2, 2, 1)), (L8, (0, 4, 1)), (-2 * L2, (2, 0, 3)),
                (-2 * L6, (0, 2, 3)), (L4, (0, 0, 5))])
    f2 = _poly([(L8, (4, 1, 0)), (-2 * L6, (2, 3, 0)), (L4, (0, 5, 0)), (-k, (2, 1, 2)),
                (-2 * L2, (0, 3, 2)), (1, (0, 1, 4))])
    f3 = _poly([(L4, (5, 0, 0)), (-2 * L2, (3, 2, 0)), (1, (1, 4, 0)), (-2 * L6, (3, 0, 2)),
                (-k, (1, 2, 2)), (L8, (1, 0, 4))])
    return RationalMap([f1, f2, f3], reduce=False, name="theta")


def a4_forms() -> dict[str, P.Poly]:
    """The reference forms h_4, f_4, f_6 in x2, x3."""
    w = zeta(3)
    c = (8 * w + 4) / 3
    h4 = _poly([(1, (0, 4, 0)), (-c, (0, 3, 1)), (-2, (0, 2, 2)), (c, (0, 1, 3)), (1, (0, 0, 4))])
    f4 = _poly([(1, (0, 3, 1)), (-2 * w - 1, (0, 2, 2)), (-1, (0, 1, 3))])
    f6 = _poly([(1, (0, 6, 0)), (-(4 * w + 2), (0, 5, 1)), (-5, (0, 4, 2)), (-5, (0, 2, 4)),
                (4 * w + 2, (0, 1, 5)), (1, (0, 0, 6))])
    return {"h4": h4, "f4": f4, "f6": f6}


def _jonquieres(h, f, name) -> RationalMap:
    return RationalMap([P.mul(_x(0), h), P.mul(_x(1), f), P.mul(_x(2), f)], name=name)


def a4_sigma() -> RationalMap:
    F = a4_forms()
    return _jonquieres(F["h4"], F["f4"], "a4_sigma")


def a4_gamma() -> RationalMap:
    F = a4_forms()
    sq = P.mul(F["f4"], F["f4"])
    return RationalMap([P.mul(F["f6"], F["h4"]), P.mul(_poly([(1, (1, 1, 0))]), sq),
                        P.mul(_poly([(1, (1, 0, 1))]), sq)], name="a4_gamma")


# -- semi-invariant binary forms -------------------------------------------------------


def _residual_of(action: GroupAction) -> GroupAction:
    """The 2x2 lower-right blocks of an action fixing e1 and the line x1 = 0."""
    gens = []
    for g in action.generators:
        r = g.rows
        if r[0][1] or r[0][2] or r[1][0] or r[2][0]:
            raise ValueError("action is not in block form with respect to e1 and x1 = 0")
        gens.append(ProjectiveTransform([[r[1][1], r[1][2]], [r[2][1], r[2][2]]], g.n))
    return GroupAction(gens, action.names, order_bound=action.order_bound)


def p1_orbits(residual: GroupAction, length: int) -> list[list[ProjectivePoint]]:
    """Orbits of the given length among fixed points of elements (and all orbits of length 1)."""
    G = residual.group
    seen = {}
    for g in G.elements:
        if g.is_scalar():
            continue
        for es in g.eigen:
            if len(es.basis) != 1:
                continue
            p = ProjectivePoint(es.basis[0])
            if p.key in seen:
                continue
            orb = orbit(p, G, cap=length)
            if orb is None:
                continue
            for q in orb:
                seen[q.key] = orb
    out, done = [], set()
    for orb in seen.values():
        k = min(q.key for q in orb)
        if len(orb) == length and k not in done:
            done.add(k)
            out.append(orb)
    out.sort(key=lambda o: repr(sorted(q.key for q in o)))
    return out


def form_of_points(points) -> P.Poly:
    """Product of the linear forms q*x2 - p*x3 vanishing at [p:q], normalised and descended."""
    m = lcm(*(q.n for q in points))
    out = P.const(1)
    for q in points:
        a, b = q.embed(m).coords
        out = P.mul(out, P.sub(P.scale(_x(1), b), P.scale(_x(2), a)))
    out = P.normalise(out)
    out = {e: minimal_conductor(c) for e, c in out.items()}
    return out


def semiinvariant_scalar(form: P.Poly, g: ProjectiveTransform):
    """c with form(g x) = c form(x) on (x2, x3), or None."""
    zero = Cyclo.zero()
    rows = g.rows
    images = [_x(0), P.linear([zero, rows[0][0], rows[0][1]]), P.linear([zero, rows[1][0], rows[1][1]])]
    moved = P.substitute(form, images)
    e, c = P.leading(form)
    s = moved.get(e, zero) / c
    return s if s and not P.sub(moved, P.scale(form, s)) else None


def semiinvariant_forms(residual: GroupAction, length: int) -> list[P.Poly]:
    forms = []
    for orb in p1_orbits(residual, length):
        F = form_of_points(orb)
        if any(F == G for G in forms):
            continue
        for g in residual.generators:
            if semiinvariant_scalar(F, g) is None:
                raise ArithmeticError("orbit form failed its semi-invariance check")
        forms.append(F)
    if not forms:
        raise NoSuchOrbit(f"no orbit of length {length} on the line")
    return forms


def semiinvariant_form(residual: GroupAction, length: int, index: int = 0) -> P.Poly:
    return semiinvariant_forms(residual, length)[index]


def _catalog_residual(family: str) -> GroupAction:
    from .catalog import Family, FamilySpec, build

    spec = {"S4": FamilySpec(Family.INTR_S4, r=1, m=0),
            "A5": FamilySpec(Family.INTR_A5, r=1)}[family]
    return _residual_of(build(spec))


def s4_forms() -> dict[str, P.Poly]:
    res = _catalog_residual("S4")
    f6 = semiinvariant_form(res, 6)
    f8 = semiinvariant_form(res, 8)
    f12 = semiinvariant_form(res, 12)
    return {"f6": f6, "f8": f8, "f12": f12, "h12": P.mul(f6, f6)}


def s4_sigma() -> RationalMap:
    F = s4_forms()
    return _jonquieres(F["h12"], F["f12"], "s4_sigma")


def s4_gamma() -> RationalMap:
    F = s4_forms()
    return RationalMap([F["f8"], P.mul(_poly([(1, (1, 1, 0))]), F["f6"]),
                        P.mul(_poly([(1, (1, 0, 1))]), F["f6"])], name="s4_gamma")


def a5_forms() -> dict[str, P.Poly]:
    res = _catalog_residual("A5")
    return {f"f{k}": semiinvariant_form(res, k) for k in (12, 20, 30)}


def a5_sigma() -> RationalMap:
    F = a5_forms()
    return RationalMap([P.mul(F["f12"], F["f20"]), P.mul(_poly([(1, (1, 1, 0))]), F["f30"]),
                        P.mul(_poly([(1, (1, 0, 1))]), F["f30"])], name="a5_sigma")


_CACHE: dict = {}


def build_map(name, **params) -> RationalMap:
    name = MapName(name)
    key = (name, tuple(sorted((k, repr(v)) for k, v in params.items())))
    if key in _CACHE:
        return _CACHE[key]
    if name is MapName.IOTA:
        f = iota()
    elif name is MapName.DN_EVEN_IOTA:
        f = dn_even_iota()
    elif name is MapName.GAMMA:
        f = gamma(params["n"])
    elif name is MapName.TAU:
        f = tau(params["n"], params.get("lam", 2), "verbatim")
    elif name is MapName.TAU_X23:
        f = tau(params["n"], params.get("lam", 2), "x23")
    elif name is MapName.THETA_A4:
        f = theta_a4(params.get("lam", 2))
    elif name is MapName.A4_SIGMA:
        f = a4_sigma()
    elif name is MapName.A4_GAMMA:
        f = a4_gamma()
    elif name is MapName.S4_SIGMA:
        f = s4_sigma()
    elif name is MapName.S4_GAMMA:
        f = s4_gamma()
    else:
        f = a5_sigma()
    _CACHE[key] = f
    return f


def jonquieres_inverse(f: RationalMap) -> RationalMap | None:
    """Inverse of a map (x1 h, x2 f, x3 f) with h, f forms in x2, x3: (x1 f, x2 h, x3 h)."""
    c1, c2, c3 = f.components
    try:
        fq = P.divide_exact(c2, _x(1))
        h = P.divide_exact(c1, _x(0))
    except ArithmeticError:
        return None
    if any(e[0] for e in fq) or any(e[0] for e in h) or P.sub(P.mul(_x(2), fq), c3):
        return None
    return RationalMap([P.mul(_x(0), fq), P.mul(_x(1), h), P.mul(_x(2), h)])
