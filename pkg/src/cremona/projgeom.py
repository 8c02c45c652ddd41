"""Projective transforms over cyclotomic fields and finite groups of them.

A :class:`ProjectiveTransform` keeps an actual matrix (a *lift*) and compares
projectively: two transforms are equal when their lifts differ by a nonzero
scalar.  Groups are closed from generator lifts, so every stored element
carries the product of generator lifts along its word.  When the generator
lifts have finite order (the case for every matrix in the catalog) so does
every element lift, and eigenvalues are exact roots of unity.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .cyclo import Cyclo, euler_phi, lcm, root_of_unity_exponent, zeta
from .kernels import cayley_table
from .linalg import det, inverse, mat_mul, mat_vec, nullspace, rank


class OrderBoundExceeded(RuntimeError):
    pass


class NotFiniteOrder(ValueError):
    pass


class DegenerateFrame(ValueError):
    pass


def _as_cyclo(x, n: int) -> Cyclo:
    if isinstance(x, Cyclo):
        return x.embed(n) if x.n != n else x
    return Cyclo.rational(x, n)


def _conductor_of(entries) -> int:
    n = 1
    for x in entries:
        if isinstance(x, Cyclo):
            n = lcm(n, x.n)
    return n


def _scaled_key(vec):
    """Canonical projective key: divide by the first nonzero entry."""
    for x in vec:
        if x:
            inv = x.inverse() if not (x.is_rational() and x.num[0] == x.den) else None
            if inv is None:
                return tuple(y.key() for y in vec)
            return tuple((y * inv).key() for y in vec)
    raise ValueError("zero vector has no projective key")


class ProjectiveTransform:
    """Invertible square matrix over Q(zeta_n) up to scalar."""

    __slots__ = ("rows", "n", "__dict__")

    def __init__(self, rows, n: int | None = None):
        flat = [x for r in rows for x in r]
        if n is None:
            n = _conductor_of(flat)
        self.n = n
        self.rows = tuple(tuple(_as_cyclo(x, n) for x in r) for r in rows)
        if len(self.rows) not in (2, 3) or any(len(r) != len(self.rows) for r in self.rows):
            raise ValueError("expected a 2x2 or 3x3 matrix")

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        """Dimension of the projective space acted on."""
        return self.size - 1

    @classmethod
    def diag(cls, *entries) -> "ProjectiveTransform":
        k = len(entries)
        n = _conductor_of(entries)
        z = Cyclo.zero(n)
        return cls([[entries[i] if i == j else z for j in range(k)] for i in range(k)], n)

    @classmethod
    def identity(cls, size: int = 3, n: int = 1) -> "ProjectiveTransform":
        return cls.diag(*([Cyclo.one(n)] * size))

    @classmethod
    def permutation(cls, images) -> "ProjectiveTransform":
        """Transform sending coordinate ``x_i`` to position ``images[i]``."""
        k = len(images)
        rows = [[0] * k for _ in range(k)]
        for i, j in enumerate(images):
            rows[j][i] = 1
        return cls(rows, 1)

    def embed(self, m: int) -> "ProjectiveTransform":
        if m == self.n:
            return self
        return ProjectiveTransform([[x.embed(m) for x in r] for r in self.rows], m)

    def _pair(self, other):
        if self.n == other.n:
            return self, other
        m = lcm(self.n, other.n)
        return self.embed(m), other.embed(m)

    @cached_property
    def key(self):
        return _scaled_key([x for r in self.rows for x in r])

    def __eq__(self, other):
        if not isinstance(other, ProjectiveTransform):
            return NotImplemented
        if self.size != other.size:
            return False
        a, b = self._pair(other)
        return a.key == b.key

    def __hash__(self):
        flat = [x for r in self.rows for x in r]
        lead = next(x for x in flat if x)
        inv = lead.inverse()
        return hash(tuple(hash(x * inv) for x in flat))

    def __matmul__(self, other: "ProjectiveTransform") -> "ProjectiveTransform":
        a, b = self._pair(other)
        return ProjectiveTransform(mat_mul(a.rows, b.rows), a.n)

    __mul__ = __matmul__

    def inverse(self) -> "ProjectiveTransform":
        return ProjectiveTransform(inverse([list(r) for r in self.rows]), self.n)

    def det(self) -> Cyclo:
        return det(self.rows)

    def scale(self, c) -> "ProjectiveTransform":
        c = _as_cyclo(c, self.n) if not isinstance(c, Cyclo) else c
        m = lcm(self.n, c.n)
        return ProjectiveTransform([[x.embed(m) * c for x in r] for r in self.rows], m)

    def conjugate_by(self, h: "ProjectiveTransform") -> "ProjectiveTransform":
        """h . self . h^-1"""
        return h @ self @ h.inverse()

    def apply(self, p: "ProjectivePoint") -> "ProjectivePoint":
        m = lcm(self.n, p.n)
        a = self.embed(m)
        return ProjectivePoint(mat_vec(a.rows, [c.embed(m) for c in p.coords]), m)

    def transpose(self) -> "ProjectiveTransform":
        return ProjectiveTransform([list(c) for c in zip(*self.rows)], self.n)

    def is_scalar(self) -> bool:
        k = self.size
        d = self.rows[0][0]
        return all(
            (self.rows[i][j] == d) if i == j else not self.rows[i][j] for i in range(k) for j in range(k)
        )

    def projective_order(self, bound: int = 10000) -> int:
        ident = ProjectiveTransform.identity(self.size, self.n)
        x = self
        for k in range(1, bound + 1):
            if x.key == ident.key:
                return k
            x = x @ self
        raise NotFiniteOrder(f"projective order exceeds {bound}")

    @cached_property
    def lift_order(self) -> int:
        """Order of this lift in GL; NotFiniteOrder if infinite."""
        k = self.projective_order()
        p = self
        for _ in range(k - 1):
            p = p @ self
        c = p.rows[0][0]
        q = root_of_unity_exponent(c)
        if q is None:
            raise NotFiniteOrder("no finite-order lift: g^k is a non-unit scalar")
        return k * q.denominator

    @cached_property
    def eigen(self) -> list["Eigenspace"]:
        return eigenspaces(self)

    def eigenvalue_exponents(self) -> list[Fraction]:
        """Eigenvalues as q in Q/Z (lambda = exp(2 pi i q)), with multiplicity."""
        out = []
        for es in self.eigen:
            out.extend([es.exponent] * len(es.basis))
        return sorted(out)

    def ratio_multiset(self) -> tuple[Fraction, ...]:
        qs = self.eigenvalue_exponents()
        return tuple(sorted((a - b) % 1 for a, b in itertools.permutations(qs, 2)))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"PT(n={self.n}: {body})"


@dataclass(frozen=True)
class Eigenspace:
    exponent: Fraction
    basis: tuple  # tuple of coordinate tuples (Cyclo)


def eigenspaces(g: ProjectiveTransform) -> list[Eigenspace]:
    """Exact eigenspaces of a finite-order lift."""
    k = g.lift_order
    m = lcm(g.n, k)
    a = g.embed(m)
    size = a.size
    rows = a.rows
    tr = sum((rows[i][i] for i in range(size)), Cyclo.zero(m))
    dt = det(rows)
    if size == 3:
        c2 = (
            rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
            + rows[0][0] * rows[2][2] - rows[0][2] * rows[2][0]
            + rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1]
        )
        def charpoly(lam):
            return ((lam - tr) * lam + c2) * lam - dt
    else:
        def charpoly(lam):
            return (lam - tr) * lam + dt
    out = []
    found = 0
    for j in range(k):
        lam = zeta(k, j).embed(m)
        if charpoly(lam):
            continue
        shifted = [[rows[r][c] - (lam if r == c else 0) for c in range(size)] for r in range(size)]
        basis = nullspace(shifted)
        if basis:
            out.append(Eigenspace(Fraction(j, k), tuple(tuple(v) for v in basis)))
            found += len(basis)
        if found == size:
            break
    if found != size:
        raise NotFiniteOrder("lift is not diagonalisable over roots of unity")
    return out


class ProjectivePoint:
    """Nonzero coordinate vector up to scalar."""

    __slots__ = ("coords", "n", "__dict__")

    def __init__(self, coords, n: int | None = None):
        if n is None:
            n = _conductor_of(coords)
        self.n = n
        self.coords = tuple(_as_cyclo(x, n) for x in coords)
        if not any(self.coords):
            raise ValueError("zero vector is not a projective point")

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def embed(self, m: int) -> "ProjectivePoint":
        return self if m == self.n else ProjectivePoint([c.embed(m) for c in self.coords], m)

    @cached_property
    def key(self):
        return _scaled_key(self.coords)

    @cached_property
    def normalized(self) -> "ProjectivePoint":
        lead = next(c for c in self.coords if c)
        inv = lead.inverse()
        return ProjectivePoint([c * inv for c in self.coords], self.n)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        if len(self.coords) != len(other.coords):
            return False
        if self.n == other.n:
            return self.key == other.key
        m = lcm(self.n, other.n)
        return self.embed(m).key == other.embed(m).key

    def __hash__(self):
        return hash(tuple(hash(c) for c in self.normalized.coords))

    def __repr__(self):
        return "[" + " : ".join(str(c) for c in self.normalized.coords) + "]"


def point(*coords) -> ProjectivePoint:
    return ProjectivePoint(coords)


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u, v):
    s = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        s = s + a * b
    return s


@dataclass(frozen=True)
class ProjectiveLine:
    """Line in P^2 given by a linear form and two spanning points."""

    form: ProjectivePoint
    span: tuple

    @classmethod
    def through(cls, u, v) -> "ProjectiveLine":
        n = lcm(*(c.n for c in list(u) + list(v) if isinstance(c, Cyclo)))
        u = [_as_cyclo(c, n) for c in u]
        v = [_as_cyclo(c, n) for c in v]
        return cls(ProjectivePoint(cross(u, v), n), (ProjectivePoint(u, n), ProjectivePoint(v, n)))

    @classmethod
    def from_form(cls, form) -> "ProjectiveLine":
        n = _conductor_of(form)
        f = [_as_cyclo(c, n) for c in form]
        basis = nullspace([f])
        return cls(ProjectivePoint(f, n), tuple(ProjectivePoint(b, n) for b in basis))

    def contains(self, p: ProjectivePoint) -> bool:
        return not dot(self.form.coords, p.coords)

    def __eq__(self, other):
        return isinstance(other, ProjectiveLine) and self.form == other.form

    def __hash__(self):
        return hash(self.form)

    def __repr__(self):
        return f"Line{self.form!r}"


# -- finite groups --------------------------------------------------------------


class FiniteLinearGroup:
    """Finite subgroup of PGL, enumerated breadth first from its generators.

    ``elements[0]`` is the identity; ``words[i]`` lists generator indices whose
    left-to-right product is ``elements[i]``; ``right[i][g]`` is the index of
    ``elements[i] * generators[g]``.  For matched generator lists the BFS order
    depends only on the abstract group, so indices are comparable across
    actions of one group.
    """

    def __init__(self, generators, elements, words, right):
        self.generators = generators
        self.elements = elements
        self.words = words
        self.right = right
        self.index = {e.key: i for i, e in enumerate(elements)}

    @property
    def n(self) -> int:
        return self.elements[0].n

    @property
    def dim(self) -> int:
        return self.elements[0].dim

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def locate(self, g: ProjectiveTransform) -> int | None:
        if g.n != self.n:
            m = lcm(g.n, self.n)
            if m != self.n:
                return None
            g = g.embed(m)
        return self.index.get(g.key)

    def __contains__(self, g):
        return self.locate(g) is not None

    @cached_property
    def table(self):
        return cayley_table(self.right, self.words)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    @cached_property
    def inverses(self) -> list[int]:
        t = self.table
        return [row.index(0) for row in t]

    @cached_property
    def element_orders(self) -> list[int]:
        t = self.table
        out = []
        for i in range(len(t)):
            k, x = 1, i
            while x != 0:
                x = t[x][i]
                k += 1
            out.append(k)
        return out

    def is_abelian(self) -> bool:
        t = self.table
        k = len(self.generators)
        gi = [self.generator_index(g) for g in range(k)]
        return all(t[a][b] == t[b][a] for a in gi for b in gi)

    def generator_index(self, g: int) -> int:
        return self.right[0][g]

    def cyclic_subgroup(self, i: int) -> frozenset[int]:
        out = {0}
        x = i
        while x != 0:
            out.add(x)
            x = self.table[x][i]
        return frozenset(out)

    def order_statistics(self) -> tuple:
        from collections import Counter

        return tuple(sorted(Counter(self.element_orders).items()))

    def evaluate_word(self, gens, word):
        x = ProjectiveTransform.identity(gens[0].size, gens[0].n)
        for g in word:
            x = x @ gens[g]
        return x


def close_group(generators, bound: int = 5000) -> FiniteLinearGroup:
    """Breadth-first closure of ``generators`` in PGL."""
    if not generators:
        raise ValueError("need at least one generator")
    size = generators[0].size
    if any(g.size != size for g in generators):
        raise ValueError("generators of mixed dimension")
    n = lcm(*(g.n for g in generators))
    gens = [g.embed(n) for g in generators]
    for g in gens:
        if not g.det():
            raise ValueError("singular generator")
    ident = ProjectiveTransform.identity(size, n)
    elements = [ident]
    words = [()]
    index = {ident.key: 0}
    right = []
    i = 0
    while i < len(elements):
        row = []
        e = elements[i]
        for gi, g in enumerate(gens):
            p = e @ g
            j = index.get(p.key)
            if j is None:
                j = len(elements)
                if j >= bound:
                    raise OrderBoundExceeded(f"group order exceeds {bound}")
                index[p.key] = j
                elements.append(p)
                words.append(words[i] + (gi,))
            row.append(j)
        right.append(row)
        i += 1
    return FiniteLinearGroup(gens, elements, words, right)


def orbit(p: ProjectivePoint, G: FiniteLinearGroup, cap: int | None = None):
    """Orbit of ``p``; returns None when ``cap`` is given and exceeded."""
    if p.dim != G.dim:
        raise ValueError("dimension mismatch")
    m = lcm(p.n, G.n)
    gens = [g.embed(m) for g in G.generators]
    start = p.embed(m)
    seen = {start.key: start}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for g in gens:
            r = g.apply(q)
            if r.key not in seen:
                seen[r.key] = r
                if cap is not None and len(seen) > cap:
                    return None
                queue.append(r)
    return list(seen.values())


def stabilizer(p: ProjectivePoint, G: FiniteLinearGroup) -> list[int]:
    return [i for i, g in enumerate(G.elements) if g.apply(p) == p]


# -- fixed loci and short orbits -------------------------------------------------


@dataclass
class FixedLocus:
    points: list
    lines: list
    whole: bool = False


def fixed_points(g: ProjectiveTransform) -> FixedLocus:
    """Isolated fixed points and pointwise-fixed lines of ``g`` in P^2 (or P^1)."""
    eig = g.eigen
    n = lcm(g.n, g.lift_order)
    if len(eig) == 1:
        return FixedLocus([], [], whole=True)
    pts, lines = [], []
    for es in eig:
        if len(es.basis) == 1:
            pts.append(ProjectivePoint(es.basis[0], n))
        elif len(es.basis) == 2 and g.size == 3:
            lines.append(ProjectiveLine.through(*es.basis))
    return FixedLocus(pts, lines)


def _power_eigen_loci(g: ProjectiveTransform):
    """Fixed loci of every power of g, from one eigendecomposition."""
    eig = g.eigen
    k = g.lift_order
    n = lcm(g.n, k)
    vecs = [(es.exponent, v) for es in eig for v in es.basis]
    pts, lines = [], []
    for j in range(1, k):
        groups: dict[Fraction, list] = {}
        for q, v in vecs:
            groups.setdefault((q * j) % 1, []).append(v)
        if len(groups) == 1:
            continue
        for vs in groups.values():
            if len(vs) == 1:
                pts.append(ProjectivePoint(vs[0], n))
            elif len(vs) == 2:
                lines.append(ProjectiveLine.through(*vs))
    return pts, lines


@dataclass
class OrbitFamily:
    """One-parameter family of orbits sweeping the G-orbit of a line."""

    lines: list
    generic_length: int

    def __repr__(self):
        return f"OrbitFamily(length={self.generic_length}, lines={len(self.lines)})"


@dataclass
class OrbitScan:
    orbits: list = field(default_factory=list)  # list of (points, length)
    families: list = field(default_factory=list)
    whole_plane: bool = False

    def lengths(self) -> list[int]:
        return sorted(length for _, length in self.orbits)


def characteristic_loci(G: FiniteLinearGroup):
    """Isolated fixed points and fixed lines of all nontrivial elements."""
    seen_cyclic = set()
    pts: dict = {}
    lines: dict = {}
    for i in range(1, G.order):
        cyc = G.cyclic_subgroup(i)
        if cyc in seen_cyclic:
            continue
        seen_cyclic.add(cyc)
        p, ls = _power_eigen_loci(G.elements[i])
        for x in p:
            pts.setdefault(x, x)
        for ln in ls:
            lines.setdefault(ln, ln)
    return list(pts.values()), list(lines.values())


def small_orbits(G: FiniteLinearGroup, max_len: int) -> OrbitScan:
    """All G-orbits in P^2 of length at most ``max_len``.

    A point whose orbit is shorter than |G| has a nontrivial stabilizer, so it
    is an isolated eigenpoint of some element or lies on a pointwise-fixed
    line.  Points on such a line with a stabilizer larger than the line's
    pointwise stabilizer are isolated eigenpoints of another element or
    intersections with another fixed line.  Lines whose generic orbit is short
    are returned as families.
    """
    scan = OrbitScan()
    if G.order <= max_len:
        scan.whole_plane = True
    pts, lines = characteristic_loci(G)
    cands = list(pts)
    for a, b in itertools.combinations(lines, 2):
        m = lcm(a.form.n, b.form.n)
        c = cross([x.embed(m) for x in a.form.coords], [x.embed(m) for x in b.form.coords])
        if any(c):
            cands.append(ProjectivePoint(c, m))
    m_all = lcm(G.n, *(p.n for p in cands)) if cands else G.n
    found = {}
    orbits = {}
    for p in cands:
        p = p.embed(m_all)
        if p.key in found:
            continue
        orb = orbit(p, G, cap=max_len)
        if orb is None:
            found[p.key] = None
            continue
        keys = frozenset(q.key for q in orb)
        for q in orb:
            found[q.key] = keys
        orbits.setdefault(keys, (orb, len(orb)))
    scan.orbits = sorted(orbits.values(), key=lambda t: (t[1], repr(t[0][0])))
    seen_lines = set()
    for ln in lines:
        if ln in seen_lines:
            continue
        k = sum(1 for g in G.elements if _fixes_line_pointwise(g, ln))
        generic = G.order // k
        line_orbit = _line_orbit(ln, G)
        seen_lines.update(line_orbit)
        if generic <= max_len:
            scan.families.append(OrbitFamily(line_orbit, generic))
    return scan


def _fixes_line_pointwise(g: ProjectiveTransform, ln: ProjectiveLine) -> bool:
    u, v = ln.span
    w = ProjectivePoint([a + b for a, b in zip(*(_common(u, v)))])
    return g.apply(u) == u and g.apply(v) == v and g.apply(w) == w


def _common(u, v):
    m = lcm(u.n, v.n)
    return u.embed(m).coords, v.embed(m).coords


def _line_orbit(ln: ProjectiveLine, G: FiniteLinearGroup) -> list:
    """Orbit of a line; linear forms transform by the inverse transpose."""
    out = {ln}
    queue = [ln]
    dual = [g.inverse().transpose() for g in G.generators]
    while queue:
        cur = queue.pop()
        for d in dual:
            img = ProjectiveLine.from_form(d.apply(cur.form).coords)
            if img not in out:
                out.add(img)
                queue.append(img)
    return list(out)


# -- configurations ----------------------------------------------------------------


@dataclass
class PositionReport:
    collinear_triples: list
    on_conic: bool
    singular_cubic: bool = False
    size: int = 0

    @property
    def no_three_collinear(self) -> bool:
        return not self.collinear_triples

    @property
    def general_position(self) -> bool:
        """Blowing the points up gives a del Pezzo surface."""
        n = self.size
        if self.collinear_triples:
            return False
        if n >= 6 and self.on_conic:
            return False
        return not self.singular_cubic


_CUBIC_MONOMIALS = [(a, b, 3 - a - b) for a in range(3, -1, -1) for b in range(3 - a, -1, -1)]


def _cubic_row(v):
    out = []
    for a, b, c in _CUBIC_MONOMIALS:
        out.append(v[0] ** a * v[1] ** b * v[2] ** c)
    return out


def _cubic_grad_rows(v):
    rows = []
    for k in range(3):
        row = []
        for mono in _CUBIC_MONOMIALS:
            e = mono[k]
            if e == 0:
                row.append(v[0] * 0)
                continue
            red = list(mono)
            red[k] -= 1
            row.append(e * v[0] ** red[0] * v[1] ** red[1] * v[2] ** red[2])
        rows.append(row)
    return rows


def general_position(points) -> PositionReport:
    """Position predicates for a finite set of points of P^2.

    ``on_conic`` is the rank test on the Veronese matrix (always true for at
    most five points); ``singular_cubic`` (eight points only) flags a cubic
    through all points that is singular at one of them.
    """
    pts = list(points)
    m = lcm(*(p.n for p in pts))
    vs = [p.embed(m).coords for p in pts]
    triples = [
        (i, j, k)
        for i, j, k in itertools.combinations(range(len(vs)), 3)
        if not det([vs[i], vs[j], vs[k]])
    ]
    if len(vs) <= 5:
        on_conic = True
    else:
        ver = [[x * x, y * y, z * z, x * y, x * z, y * z] for x, y, z in vs]
        on_conic = rank(ver) < 6
    singular = False
    if len(vs) == 8:
        for i in range(8):
            rows = [_cubic_row(v) for j, v in enumerate(vs) if j != i] + _cubic_grad_rows(vs[i])
            if rank(rows) < 10:
                singular = True
                break
    return PositionReport(triples, on_conic, singular, len(vs))


# -- conjugator search -------------------------------------------------------------


@dataclass
class NotConjugate:
    reason: str
    element: int | None = None

    def __bool__(self):
        return False


def _twist_candidates(a: ProjectiveTransform, b: ProjectiveTransform):
    qa = a.eigenvalue_exponents()
    qb = b.eigenvalue_exponents()
    out = []
    for q in sorted({(qa[0] - x) % 1 for x in qb}):
        if sorted((x + q) % 1 for x in qb) == qa:
            out.append(q)
    return out


def intertwiners(gens1, gens2, twists):
    """Basis of {H : H A_i = exp(2 pi i q_i) B_i H for all i}."""
    size = gens1[0].size
    m = lcm(*(g.n for g in gens1 + gens2), *(q.denominator for q in twists))
    rows = []
    for a, b, q in zip(gens1, gens2, twists):
        A = a.embed(m).rows
        B = b.embed(m).rows
        c = zeta(q.denominator, q.numerator).embed(m) if q else Cyclo.one(m)
        cB = [[c * x for x in r] for r in B]
        for i in range(size):
            for j in range(size):
                # (H A)_{ij} - (c B H)_{ij}
                row = [Cyclo.zero(m)] * (size * size)
                for k in range(size):
                    row[i * size + k] = row[i * size + k] + A[k][j]
                    row[k * size + j] = row[k * size + j] - cB[i][k]
                if any(row):
                    rows.append(row)
    if not rows:
        basis = [[Cyclo.one(m) if t == s else Cyclo.zero(m) for t in range(size * size)] for s in range(size * size)]
    else:
        basis = nullspace(rows)
    return m, [[v[i * size:(i + 1) * size] for i in range(size)] for v in basis]


def _invertible_combination(basis, m):
    if len(basis) == 1:
        return basis[0] if det(basis[0]) else None
    size = len(basis[0])
    grid = range(0, size + 1)
    limit = 6
    for coeffs in itertools.product(grid, repeat=min(len(basis), limit)):
        coeffs = list(coeffs) + [0] * (len(basis) - len(coeffs))
        if not any(coeffs):
            continue
        h = [[Cyclo.zero(m)] * size for _ in range(size)]
        for c, b in zip(coeffs, basis):
            if c:
                h = [[h[i][j] + b[i][j] * c for j in range(size)] for i in range(size)]
        if det(h):
            return h
    return None


def find_conjugator(gens1, gens2, group1: FiniteLinearGroup | None = None,
                    group2: FiniteLinearGroup | None = None):
    """A transform h with h gens1[i] h^-1 = gens2[i] for all i, else NotConjugate.

    For every choice of scalar twists compatible with the spectra, the linear
    intertwining equations are solved exactly; an invertible solution is the
    conjugator.  When full groups are given, eigenvalue-ratio multisets of all
    matched elements are compared first and a mismatch is returned as the
    certificate.
    """
    if len(gens1) != len(gens2):
        raise ValueError("generator lists differ in length")
    if group1 is not None and group2 is not None:
        if group1.right != group2.right:
            return NotConjugate("generator lists define different abstract groups")
        for i, (a, b) in enumerate(zip(group1.elements, group2.elements)):
            if a.ratio_multiset() != b.ratio_multiset():
                return NotConjugate("eigenvalue ratio multisets differ", element=i)
    options = []
    for i, (a, b) in enumerate(zip(gens1, gens2)):
        tw = _twist_candidates(a, b)
        if not tw:
            return NotConjugate("eigenvalue ratio multisets differ", element=group1.generator_index(i) if group1 else None)
        options.append(tw)
    for twists in itertools.product(*options):
        m, basis = intertwiners(list(gens1), list(gens2), list(twists))
        if not basis:
            continue
        h = _invertible_combination(basis, m)
        if h is not None:
            H = ProjectiveTransform(h, m)
            if all(H @ a == b @ H for a, b in zip(gens1, gens2)):
                return H
    return NotConjugate("no invertible intertwiner for any scalar twist")


def random_transform(rng, size: int = 3, n: int = 1, spread: int = 2) -> ProjectiveTransform:
    """Random invertible matrix with small entries in Q(zeta_n)."""
    from .cyclo import reduce_to_basis

    d = euler_phi(n)
    while True:
        rows = [
            [reduce_to_basis(n, [rng.randint(-spread, spread) for _ in range(d)]) for _ in range(size)]
            for _ in range(size)
        ]
        h = ProjectiveTransform(rows, n)
        if h.det():
            return h
