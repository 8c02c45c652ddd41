"""Incompressible Burnside classes of linear intransitive actions.

Only the invariant line contributes: the class is the pair of symbols
(C_t, Gbar on the line, chi) + (C_t, Gbar on the line, -chi), and it is
empty when the residual group is cyclic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .action import GroupAction
from .classify import IntransitiveData, action_type, p1_actions_isomorphic, primary_data


class NotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class BurnsideSymbol:
    stabilizer: frozenset  # element indices of C_t
    generator: int  # canonical generator of C_t
    t: int
    gbar: str
    fingerprint: tuple  # per element of G: eigenvalue-ratio class on the line
    weight: int  # chi exponent mod t

    def text(self) -> str:
        return f"(t={self.t}, Gbar={self.gbar}, chi={self.weight})"


@dataclass
class BurnsideClass:
    symbols: list
    data: IntransitiveData | None = None
    action: GroupAction | None = None

    def sorted_symbols(self) -> list[BurnsideSymbol]:
        return sorted(self.symbols, key=lambda s: (s.t, s.gbar, s.weight))

    def text(self) -> str:
        return "\n".join(s.text() for s in self.sorted_symbols())

    def __len__(self):
        return len(self.symbols)


def _ratio_class(g) -> Fraction:
    """Unordered eigenvalue ratio {q, -q} of a P^1 transform as min(q, 1 - q)."""
    a, b = g.eigenvalue_exponents()
    q = (a - b) % 1
    return min(q, (1 - q) % 1)


def fingerprint(data: IntransitiveData) -> tuple:
    """Residual eigenvalue-ratio class of every element of G, in index order."""
    return tuple(_ratio_class(b) for b in data.blocks)


def burnside_class(action: GroupAction) -> BurnsideClass:
    if action_type(action).tag != "I":
        raise NotApplicable("Burnside classes here are defined for intransitive actions")
    data = primary_data(action)
    if data.t <= 1:
        raise NotApplicable("trivial generic stabilizer")
    if data.gbar.startswith("C"):
        return BurnsideClass([], data, action)
    fp = fingerprint(data)
    syms = [
        BurnsideSymbol(data.ct_elements, data.ct_generator, data.t, data.gbar, fp, w % data.t)
        for w in (data.chi, -data.chi)
    ]
    return BurnsideClass(syms, data, action)


def _weights(c: BurnsideClass) -> frozenset:
    return frozenset(s.weight for s in c.symbols)


def classes_equal(c1: BurnsideClass, c2: BurnsideClass, mode: str = "strict") -> bool:
    """Equality of incompressible classes, elementwise or up to Aut(G)."""
    if not c1.symbols or not c2.symbols:
        return not c1.symbols and not c2.symbols
    s1, s2 = c1.symbols[0], c2.symbols[0]
    if s1.t != s2.t or s1.gbar != s2.gbar:
        return False
    G1, G2 = c1.action.group, c2.action.group
    if G1.order != G2.order:
        return False
    strict_ok = (
        G1.right == G2.right
        and s1.stabilizer == s2.stabilizer
        and s1.fingerprint == s2.fingerprint
        and _weights(c1) == _weights(c2)
        and p1_actions_isomorphic(c1.data.residual, c2.data.residual, "strict").isomorphic
    )
    if strict_ok or mode == "strict":
        return strict_ok
    return _equal_up_to_aut(c1, c2)


def _equal_up_to_aut(c1: BurnsideClass, c2: BurnsideClass) -> bool:
    from .groups import automorphisms, isomorphisms
    from .projgeom import NotConjugate, find_conjugator

    G1, G2 = c1.action.group, c2.action.group
    iso = isomorphisms(G1, G2, first_only=True)
    if not iso:
        return False
    base = iso[0]
    s1, s2 = c1.symbols[0], c2.symbols[0]
    t = s1.t
    # position of each C_t2 element as a power of its generator
    power = {}
    x, k = 0, 0
    while True:
        power[x] = k
        x = G2.table[x][s2.generator]
        k += 1
        if x == 0:
            break
    res1 = c1.data.residual
    for alpha in automorphisms(G1).outer_reps:
        f = [base[alpha[i]] for i in range(G1.order)]
        if frozenset(f[i] for i in s1.stabilizer) != s2.stabilizer:
            continue
        if any(s1.fingerprint[i] != s2.fingerprint[f[i]] for i in range(G1.order)):
            continue
        k = power[f[s1.generator]]
        w2 = {(w * k) % t for w in _weights(c2)}
        if w2 != set(_weights(c1)):
            continue
        images = [c2.data.blocks[f[G1.generator_index(j)]] for j in range(len(res1.generators))]
        if not isinstance(find_conjugator(res1.generators, images), NotConjugate):
            return True
    return False
