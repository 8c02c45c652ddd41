"""Action types and the invariants of intransitive actions.

Sign convention for the normal character: for g in the generic stabilizer,
chi(g) = (eigenvalue on the fixed point) / (eigenvalue on the invariant line),
so diag(1, a, a) has chi = 1/a.  It is reported as an exponent k mod t with
chi(c) = zeta_t^k on the canonical generator c of C_t (the generator of
order t with the smallest element index).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .action import GroupAction
from .cyclo import lcm, root_of_unity_exponent
from .linalg import inverse, mat_mul
from .projgeom import (
    NotConjugate,
    ProjectiveLine,
    ProjectivePoint,
    ProjectiveTransform,
    find_conjugator,
    small_orbits,
)


class NotIntransitive(ValueError):
    pass


@dataclass
class ActionType:
    tag: str  # "I", "T" or "P"
    witness: object = None  # fixed point, length-3 orbit, or None
    fixed_points: list = field(default_factory=list)


def _intersect(a, b, m):
    """Intersection of two subspaces given by spanning vectors."""
    from .linalg import intersect_subspaces

    return intersect_subspaces(a, b, m)


def common_fixed_subspaces(generators, dual: bool = False) -> list:
    """Maximal subspaces on which every generator acts by a scalar.

    With ``dual`` the transposes are used, which yields invariant lines.
    """
    mats = [g.transpose() if dual else g for g in generators]
    size = mats[0].size
    m = lcm(*(g.n for g in mats), *(g.lift_order for g in mats))
    spaces = [[[c.embed(m) for c in v] for v in es.basis] for es in mats[0].eigen]
    for g in mats[1:]:
        nxt = []
        for sp in spaces:
            for es in g.eigen:
                basis = [[c.embed(m) for c in v] for v in es.basis]
                inter = _intersect(sp, basis, size)
                if inter:
                    nxt.append(inter)
        spaces = nxt
        if not spaces:
            break
    return [(sp, m) for sp in spaces]


def fixed_points(action: GroupAction) -> list[ProjectivePoint]:
    """Isolated common fixed points; for pointwise-fixed lines, their basis points."""
    out = []
    for sp, m in common_fixed_subspaces(action.generators):
        for v in sp:
            out.append(ProjectivePoint(v, m))
    out.sort(key=repr)
    return out


def action_type(action: GroupAction) -> ActionType:
    if action.dim != 2:
        raise ValueError("action type is defined for actions on P^2")
    pts = fixed_points(action)
    if pts:
        e1 = ProjectivePoint([1, 0, 0])
        witness = next((p for p in pts if p == e1), pts[0])
        return ActionType("I", witness, pts)
    scan = small_orbits(action.group, 3)
    triples = [orb for orb, length in scan.orbits if length == 3]
    if triples:
        return ActionType("T", triples[0])
    if any(f.generic_length == 3 for f in scan.families):
        return ActionType("T", None)
    return ActionType("P")


def gbar_type(group) -> str:
    """Isomorphism tag of a finite subgroup of PGL2."""
    n = group.order
    top = max(group.element_orders)
    if top == n:
        return f"C{n}"
    if 2 * top == n:
        return f"D{top}"
    return {12: "A4", 24: "S4", 60: "A5"}.get(n, f"?{n}")


@dataclass
class IntransitiveData:
    fixed_point: ProjectivePoint
    line: ProjectiveLine
    frame: list  # columns: fixed point, then two points spanning the line
    t: int
    ct_elements: frozenset
    ct_generator: int
    chi: int  # exponent mod t on ct_generator
    residual: GroupAction  # induced action on the line, matched generators
    gbar: str
    blocks: list = field(default_factory=list)  # residual transform of every element of G

    @property
    def chi_pair(self) -> frozenset:
        if self.t <= 1:
            return frozenset({0})
        return frozenset({self.chi % self.t, (-self.chi) % self.t})


def _block(g: ProjectiveTransform, frame, frame_inv, m):
    """(lambda, 2x2 block) of g in the frame (p, u, v)."""
    a = mat_mul(mat_mul(frame_inv, g.embed(m).rows), frame)
    return a[0][0], [[a[1][1], a[1][2]], [a[2][1], a[2][2]]]


def invariant_lines(action: GroupAction) -> list[ProjectiveLine]:
    out = []
    for sp, m in common_fixed_subspaces(action.generators, dual=True):
        if len(sp) == 1:
            out.append(ProjectiveLine.from_form(sp[0]))
        else:
            # a 2-dimensional space of invariant forms: take its basis lines
            out.extend(ProjectiveLine.from_form(v) for v in sp)
    return out


def _data_for(action: GroupAction, p: ProjectivePoint, ln: ProjectiveLine) -> IntransitiveData:
    G = action.group
    m = lcm(G.n, p.n, ln.form.n, *(g.lift_order for g in G.elements))
    u, v = (q.embed(m).coords for q in ln.span)
    pc = p.embed(m).coords
    frame = [[pc[i], u[i], v[i]] for i in range(3)]
    frame_inv = inverse(frame)
    ct = []
    chis = {}
    blocks = []
    for i, g in enumerate(G.elements):
        lam, b = _block(g, frame, frame_inv, m)
        blocks.append(ProjectiveTransform(b, m))
        if not b[0][1] and not b[1][0] and b[0][0] == b[1][1]:
            ct.append(i)
            chis[i] = root_of_unity_exponent(lam / b[0][0])
    t = len(ct)
    orders = G.element_orders
    gen = min((i for i in ct if orders[i] == t), default=0)
    chi = int(chis[gen] * t) % t if t > 1 else 0
    res_gens = []
    for g in action.generators:
        _, b = _block(g, frame, frame_inv, m)
        res_gens.append(ProjectiveTransform(b, m))
    residual = GroupAction(res_gens, action.names, order_bound=action.order_bound)
    if residual.order * t != G.order:
        raise ArithmeticError("residual order times t differs from |G|")
    return IntransitiveData(p, ln, frame, t, frozenset(ct), gen, chi, residual,
                            gbar_type(residual.group), blocks)


def intransitive_data(action: GroupAction) -> list[IntransitiveData]:
    """Invariants for each (fixed point, complementary invariant line) pair.

    Nonabelian actions have exactly one pair; abelian ones may have several.
    """
    pts = fixed_points(action)
    if not pts:
        raise NotIntransitive("no common fixed point")
    lines = invariant_lines(action)
    out = []
    for p in pts:
        for ln in lines:
            if not ln.contains(p):
                out.append(_data_for(action, p, ln))
    if not out:
        raise NotIntransitive("no invariant line complementary to a fixed point")
    return out


def primary_data(action: GroupAction) -> IntransitiveData:
    """The unique pair with a noncyclic residual; otherwise the largest generic stabilizer."""
    data = intransitive_data(action)
    best = min(range(len(data)), key=lambda i: (data[i].gbar.startswith("C"), -data[i].t, i))
    return data[best]


@dataclass
class P1Comparison:
    isomorphic: bool
    conjugator: ProjectiveTransform | None = None
    automorphism: list | None = None
    reason: str = ""

    def __bool__(self):
        return self.isomorphic


def p1_actions_isomorphic(res1: GroupAction, res2: GroupAction, mode: str = "strict") -> P1Comparison:
    """Whether two matched actions on P^1 are conjugate (optionally after an automorphism)."""
    h = find_conjugator(res1.generators, res2.generators)
    if not isinstance(h, NotConjugate):
        return P1Comparison(True, h, None)
    if mode == "strict":
        return P1Comparison(False, reason=h.reason)
    from .groups import automorphisms, isomorphisms

    G1, G2 = res1.group, res2.group
    iso = isomorphisms(G1, G2, first_only=True)
    if not iso:
        return P1Comparison(False, reason="residual groups are not isomorphic")
    table = automorphisms(G1)
    base = iso[0]
    for alpha in table.outer_reps:
        images = [G2.elements[base[alpha[G1.generator_index(k)]]] for k in range(len(res1.generators))]
        h = find_conjugator(res1.generators, images)
        if not isinstance(h, NotConjugate):
            return P1Comparison(True, h, [base[alpha[G1.generator_index(k)]] for k in range(len(images))])
    return P1Comparison(False, reason="no automorphism twist admits a conjugator")
