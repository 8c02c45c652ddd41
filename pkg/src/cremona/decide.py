"""Deciding conjugacy of two actions in the plane Cremona group.

The decision tree dispatches on the action type.  Positive intransitive
answers carry a chain of explicit maps found by breadth-first search over the
weight space of the catalog family; the chain is re-verified by conjugating
the first action through it and comparing generators with the second.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from . import ratmaps as RM
from .action import GroupAction
from .burnside import burnside_class, classes_equal
from .catalog import Family, FamilySpec, build, spec_of, validate, weight_moduli
from .classify import action_type, primary_data
from .fileio import format_matrix
from .groups import AutomorphismTable, BoundExceeded, automorphisms, isomorphisms, iso_type, outer_image_order
from .kernels import extend_hom
from .projgeom import NotConjugate, ProjectiveTransform, find_conjugator, small_orbits

__all__ = [
    "Answer", "Verdict", "MismatchedGroups", "Unknown", "AutomorphismTable", "BoundExceeded",
    "automorphisms", "decide_cr2", "count_actions", "WeightSpace", "PRIMITIVE_TABLE",
]


class MismatchedGroups(ValueError):
    pass


class Answer(str, Enum):
    PGL3 = "ConjugateInPGL3"
    CR2 = "ConjugateInCr2"
    NO = "NotConjugate"
    OUT = "OutOfScope"


class _Unknown:
    def __repr__(self):
        return "Unknown"

    __str__ = __repr__


Unknown = _Unknown()


@dataclass
class Verdict:
    answer: Answer
    mode: str
    branch: str
    reason: str = ""
    conjugator: ProjectiveTransform | None = None
    chain: list = field(default_factory=list)  # RationalMaps, applied first to last
    psi: list | None = None  # element indices of B's group hit by A's generators
    invariant: str = ""
    verified: bool | None = None

    def lines(self) -> list[str]:
        out = [f"answer={self.answer.value}", f"mode={self.mode}", f"branch={self.branch}"]
        if self.reason:
            out.append(f"reason={self.reason}")
        if self.invariant:
            out.append(f"invariant={self.invariant}")
        if self.conjugator is not None:
            out.append(f"conjugator={format_matrix(self.conjugator.rows, self.conjugator.n)}")
        if self.chain:
            out.append("chain=" + ",".join(f.name for f in self.chain))
            out.append(f"chain_verified={'yes' if self.verified else 'no'}")
        if self.psi is not None:
            out.append("psi=" + ",".join(map(str, self.psi)))
        return out


# -- primitive groups: hard-coded entries of the classification of primitive actions ------

PRIMITIVE_TABLE = {
    # family: (name, actions on P^2, classes in Cr_2)
    Family.PRIM_A5: ("A5", 2, 1),
    Family.PRIM_A6: ("A6", 4, 4),
    Family.PRIM_PSL27: ("PSL2(7)", 2, 2),
    Family.PRIM_PSU3F2: ("PSU3(2)", 2, 2),
    Family.PRIM_HESSIAN: ("ASL2(3)", 2, 2),
    Family.PRIM_C32C4: ("C3^2:C4", 2, 1),
}


@lru_cache(maxsize=None)
def _primitive_fingerprints():
    from .catalog import load_primitive

    return {iso_type(load_primitive(f).group): f for f in PRIMITIVE_TABLE}


def primitive_entry(action: GroupAction):
    fam = _primitive_fingerprints().get(iso_type(action.group))
    return (fam, PRIMITIVE_TABLE[fam]) if fam else (None, None)


# -- twists and matching ----------------------------------------------------------------


def generator_matching(A: GroupAction, B: GroupAction) -> list[int] | None:
    """Index map G_A -> G_B sending generator i to generator i, if it is an isomorphism."""
    G1, G2 = A.group, B.group
    if G1.order != G2.order or len(A.generators) != len(B.generators):
        return None
    images = [G2.generator_index(k) for k in range(len(B.generators))]
    f = extend_hom(G1.right, G1.words, G2.table, images, 0)
    if f is None or len(set(f)) != G1.order:
        return None
    return f


def twisted(B: GroupAction, A: GroupAction, f) -> GroupAction:
    """The action g_i -> B(f(g_i)) presented with A's generator names."""
    G1, G2 = A.group, B.group
    gens = [G2.elements[f[G1.generator_index(k)]] for k in range(len(A.generators))]
    return GroupAction(gens, A.names, B.family, B.params, B.order_bound)


def twists(A: GroupAction, B: GroupAction, mode: str):
    """(index map, action) pairs: the matching alone, or all outer classes of isomorphisms."""
    if mode == "strict":
        f = generator_matching(A, B)
        if f is None:
            raise MismatchedGroups("generators do not correspond under an isomorphism")
        return [(f, B)]
    iso = isomorphisms(A.group, B.group, first_only=True)
    if not iso:
        raise MismatchedGroups("the groups are not isomorphic")
    base = iso[0]
    out = []
    for alpha in automorphisms(A.group).outer_reps:
        f = [base[alpha[i]] for i in range(A.group.order)]
        out.append((f, twisted(B, A, f)))
    # prefer the literal matching when it is an isomorphism
    lit = generator_matching(A, B)
    if lit is not None:
        out.insert(0, (lit, B))
    return out


def _psi(A: GroupAction, f) -> list[int]:
    return [f[A.group.generator_index(k)] for k in range(len(A.generators))]


# -- weight spaces and moves -----------------------------------------------------------


def _linear(*rows) -> RM.RationalMap:
    return RM.RationalMap.from_transform(ProjectiveTransform(rows))


def family_moves(spec: FamilySpec) -> list[RM.RationalMap]:
    """The explicit weight-changing maps for an intransitive family."""
    f = spec.family
    swap = RM.RationalMap.from_transform(ProjectiveTransform.permutation([0, 2, 1]))
    flip = RM.RationalMap.from_transform(ProjectiveTransform.diag(1, 1, -1))
    if f is Family.INTR_DN_ODD:
        io = RM.compose(RM.build_map("IOTA"), swap)
        io._name = "iota_swap"
        swap._name, flip._name = "swap23", "flip3"
        return [io, swap, flip]
    if f in (Family.INTR_DN_EVEN_A, Family.INTR_DN_EVEN_B, Family.INTR_DN_EVEN_C):
        flip._name = "flip3"
        return [RM.build_map("DN_EVEN_IOTA"), flip, RM.build_map("GAMMA", n=spec.n)]
    if f in (Family.INTR_A4_A, Family.INTR_A4_B):
        return [RM.build_map("A4_SIGMA"), RM.build_map("A4_GAMMA")]
    if f is Family.INTR_S4:
        return [RM.build_map("S4_SIGMA"), RM.build_map("S4_GAMMA")]
    if f is Family.INTR_A5:
        return [RM.build_map("A5_SIGMA")]
    return []


def _gen_signature(action: GroupAction) -> tuple:
    return tuple(g.ratio_multiset() for g in action.generators)


class WeightSpace:
    """All valid weight vectors of one intransitive family with fixed (n, r, m, s)."""

    def __init__(self, spec: FamilySpec, order_bound: int = 5000):
        self.base = spec
        self.order_bound = order_bound
        mods = weight_moduli(spec)
        self.keys = list(mods)
        self.vectors = []
        for vals in itertools.product(*(range(mods[k]) for k in self.keys)):
            s = spec.with_weights(**dict(zip(self.keys, vals)))
            if not validate(s):
                self.vectors.append(vals)
        self._actions = {}
        self._sig = {}
        self._edges = {}
        self._rep = {}
        self.moves = family_moves(spec)

    def spec(self, w) -> FamilySpec:
        return self.base.with_weights(**dict(zip(self.keys, w)))

    def action(self, w) -> GroupAction:
        if w not in self._actions:
            self._actions[w] = build(self.spec(w), self.order_bound)
            self._sig[w] = _gen_signature(self._actions[w])
        return self._actions[w]

    def _match(self, action: GroupAction):
        """Any (w, h) with catalog(w) = h action h^-1; literal matches first."""
        for w in self.vectors:
            c = self.action(w)
            if all(a == b for a, b in zip(action.generators, c.generators)):
                return w, None
        sig = _gen_signature(action)
        for w in self.vectors:
            c = self.action(w)
            if self._sig[w] != sig:
                continue
            h = find_conjugator(action.generators, c.generators)
            if not isinstance(h, NotConjugate):
                return w, h
        return None

    def representative(self, w):
        """(rep, k): the smallest vector PGL3-conjugate to w, with catalog(rep) = k catalog(w) k^-1."""
        if w not in self._rep:
            c = self.action(w)
            self._rep[w] = (w, None)
            for v in self.vectors:
                if v >= w:
                    break
                self.action(v)
                if self._sig[v] != self._sig[w]:
                    continue
                k = find_conjugator(c.generators, self.action(v).generators)
                if not isinstance(k, NotConjugate):
                    self._rep[w] = (v, k)
                    break
        return self._rep[w]

    def identify(self, action: GroupAction):
        """(rep, h) with catalog(rep) = h action h^-1 and rep canonical in its PGL3 class."""
        got = self._match(action)
        if got is None:
            return None
        w, h = got
        rep, k = self.representative(w)
        if k is None:
            return rep, h
        return rep, k if h is None else k @ h

    def neighbours(self, w):
        if w in self._edges:
            return self._edges[w]
        out = []
        for f in self.moves:
            try:
                moved = RM.conjugate_action(f, self.action(w))
            except RM.NotRegularizable:
                continue
            got = self.identify(moved)
            if got is None:
                continue
            w2, h = got
            steps = [f] + ([RM.RationalMap.from_transform(h)] if h is not None else [])
            out.append((w2, steps))
        self._edges[w] = out
        return out

    def path(self, start, goal, limit: int = 10000):
        """Breadth-first search for a chain of moves from start to goal (canonical vectors)."""
        if start == goal:
            return []
        prev = {start: None}
        queue = deque([start])
        while queue and len(prev) < limit:
            w = queue.popleft()
            for w2, steps in self.neighbours(w):
                if w2 in prev:
                    continue
                prev[w2] = (w, steps)
                if w2 == goal:
                    chain = []
                    node = w2
                    while prev[node] is not None:
                        node, st = prev[node]
                        chain[:0] = st
                    return chain
                queue.append(w2)
        return None


def _base_spec(*actions) -> FamilySpec | None:
    for a in actions:
        s = spec_of(a)
        if s is not None and s.family.kind == "I":
            return s
    return None


def weight_chain(A: GroupAction, B: GroupAction, spec: FamilySpec | None = None):
    """A verified chain of maps carrying A to B, or (None, reason)."""
    spec = spec or _base_spec(A, B)
    if spec is None:
        return None, "no catalog family recorded on the inputs"
    ws = WeightSpace(spec, A.order_bound)
    if not ws.moves:
        return None, "no weight moves for this family"
    ia, ib = ws.identify(A), ws.identify(B)
    if ia is None or ib is None:
        return None, "input is not conjugate to a catalog presentation"
    (wa, ha), (wb, hb) = ia, ib
    path = ws.path(wa, wb)
    if path is None:
        return None, "weight search did not reach the target"
    chain = []
    if ha is not None:
        chain.append(RM.RationalMap.from_transform(ha))
    chain.extend(path)
    if hb is not None:
        chain.append(RM.RationalMap.from_transform(hb.inverse()))
    if not chain:
        chain = [RM.RationalMap.identity()]
    return chain, ""


# -- the decision procedure ------------------------------------------------------------


def _pgl3(A, tw):
    for f, Bt in tw:
        h = find_conjugator(A.generators, Bt.generators)
        if not isinstance(h, NotConjugate):
            return h, f
    return None, None


def _coordinate_frames(A: GroupAction):
    """Transforms moving a length-3 orbit of A to the coordinate triangle."""
    frames = [ProjectiveTransform.identity()]
    scan = small_orbits(A.group, 3)
    for pts, length in scan.orbits:
        if length != 3:
            continue
        from .cyclo import lcm

        m = lcm(*(p.n for p in pts))
        cols = [p.embed(m).coords for p in pts]
        h = ProjectiveTransform([[cols[j][i] for j in range(3)] for i in range(3)], m)
        if h.det():
            frames.append(h.inverse())
    return frames


def iota_link(A: GroupAction, B: GroupAction):
    """Chain [frame, iota, conjugator] with B = result, or None."""
    iota = RM.build_map("IOTA")
    for h0 in _coordinate_frames(A):
        A0 = A.conjugate_by(h0) if not h0.is_scalar() else A
        try:
            A1 = RM.conjugate_action(iota, A0)
        except RM.NotRegularizable:
            continue
        k = find_conjugator(A1.generators, B.generators)
        if isinstance(k, NotConjugate):
            continue
        chain = []
        if not h0.is_scalar():
            chain.append(RM.RationalMap.from_transform(h0))
        chain.append(iota)
        if not k.is_scalar():
            chain.append(RM.RationalMap.from_transform(k))
        return chain
    return None


def decide_cr2(A: GroupAction, B: GroupAction, mode: str = "strict") -> Verdict:
    if mode not in ("strict", "up_to_aut"):
        raise ValueError("mode is strict or up_to_aut")
    tw = twists(A, B, mode)
    ta, tb = action_type(A), action_type(B)
    if ta.tag != tb.tag:
        return Verdict(Answer.NO, mode, "a", "actions of different types",
                       invariant=f"type {ta.tag} vs {tb.tag}")
    h, f = _pgl3(A, tw)
    if h is not None:
        return Verdict(Answer.PGL3, mode, "pgl3", "linear conjugator found", conjugator=h, psi=_psi(A, f))
    if ta.tag == "P":
        fam, entry = primitive_entry(A)
        if entry is None:
            return Verdict(Answer.OUT, mode, "b", "primitive group outside the table")
        name, _, classes = entry
        if classes == 1:
            return Verdict(Answer.CR2, mode, "b", f"table: the two {name}-actions are conjugate in Cr2",
                           invariant=f"table:{name}")
        return Verdict(Answer.NO, mode, "b", f"table: {name} is birationally super-rigid",
                       invariant=f"table:{name}")
    if ta.tag == "T":
        for f, Bt in tw:
            chain = iota_link(A, Bt)
            if chain:
                ok = RM.verify_chain(chain, A, Bt)
                return Verdict(Answer.CR2, mode, "c", "conjugate by the standard involution",
                               chain=chain, psi=_psi(A, f), verified=ok)
        return Verdict(Answer.NO, mode, "c", "neither linearly nor iota-conjugate",
                       invariant="imprimitive: no linear or iota link")
    # intransitive
    if A.group.is_abelian():
        return Verdict(Answer.OUT, mode, "f", "abelian intransitive actions are not decided here")
    dA = primary_data(A)
    if dA.t <= 1:
        return Verdict(Answer.CR2, mode, "e", "trivial generic stabilizer (no-name lemma)",
                       invariant="t=1")
    cA = burnside_class(A)
    for f, Bt in tw:
        cB = burnside_class(Bt)
        if classes_equal(cA, cB, "strict"):
            chain, why = weight_chain(A, Bt, _base_spec(A, B))
            if chain is None:
                return Verdict(Answer.CR2, mode, "d", f"Burnside classes agree; no explicit chain ({why})",
                               psi=_psi(A, f), verified=False)
            ok = RM.verify_chain(chain, A, Bt)
            return Verdict(Answer.CR2, mode, "d", "Burnside classes agree", chain=chain,
                           psi=_psi(A, f), verified=ok)
    cB = burnside_class(B)
    return Verdict(Answer.NO, mode, "d", "incompressible Burnside classes differ",
                   invariant=f"{cA.text().replace(chr(10), ' + ')} vs {cB.text().replace(chr(10), ' + ')}")


# -- counting actions -------------------------------------------------------------------


def _twist_action(A: GroupAction, alpha) -> GroupAction:
    G = A.group
    gens = [G.elements[alpha[G.generator_index(k)]] for k in range(len(A.generators))]
    return GroupAction(gens, A.names, order_bound=A.order_bound)


def linear_stabilizer(A: GroupAction, table: AutomorphismTable | None = None) -> list:
    """Outer representatives alpha with A o alpha PGL3-conjugate to A."""
    table = table or automorphisms(A.group)
    out = []
    for alpha in table.outer_reps:
        B = _twist_action(A, alpha)
        if not isinstance(find_conjugator(A.generators, B.generators), NotConjugate):
            out.append(alpha)
    return out


def iota_automorphism(A: GroupAction):
    """The automorphism of G induced by the standard involution in a triangle frame."""
    G = A.group
    iota = RM.build_map("IOTA")
    for h0 in _coordinate_frames(A):
        A0 = A.conjugate_by(h0)
        cert = RM.equivariance_certificate(iota, A0, A0)
        if cert:
            return extend_hom(G.right, G.words, G.table, cert.images, 0)
    return None


def count_actions(A: GroupAction, level: str = "regular"):
    """Number of actions with the same image, up to PGL3 or up to Cr2 conjugation."""
    try:
        table = automorphisms(A.group)
    except BoundExceeded:
        return Unknown
    stab = linear_stabilizer(A, table)
    if level == "regular":
        return table.outer_order // len(stab)
    tag = action_type(A).tag
    if tag == "P":
        _, entry = primitive_entry(A)
        return entry[2] if entry else Unknown
    if tag == "T":
        beta = iota_automorphism(A)
        if beta is None:
            return Unknown
        return table.outer_order // outer_image_order(A.group, list(stab) + [beta])
    if A.group.is_abelian():
        return Unknown
    if primary_data(A).t <= 1:
        return 1
    # intransitive: group outer twists by equality of Burnside classes
    reps = []
    for alpha in table.outer_reps:
        c = burnside_class(_twist_action(A, alpha))
        if not any(classes_equal(c, r, "strict") for r in reps):
            reps.append(c)
    return len(reps)
