"""Abstract-group computations on enumerated groups.

Everything here works on element indices of a :class:`FiniteLinearGroup`
(its Cayley table), never on matrices.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

from .kernels import extend_hom


class BoundExceeded(RuntimeError):
    pass


def generated(G, idxs) -> frozenset[int]:
    """Subgroup generated by the given element indices."""
    t = G.table
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s in idxs:
            y = t[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def center(G) -> list[int]:
    t = G.table
    gens = [G.generator_index(g) for g in range(len(G.generators))]
    return [i for i in range(G.order) if all(t[i][s] == t[s][i] for s in gens)]


def small_generating_set(G, max_pairs: int = 5000) -> list[int]:
    """A short generating list whose element orders are rare.

    Automorphism searches try every image of matching order for each
    generator, so pairs are ranked by the product of those class sizes.
    """
    orders = G.element_orders
    counts = Counter(orders)
    ranked = sorted(range(1, G.order), key=lambda i: (counts[orders[i]], -orders[i], i))
    if not ranked:
        return []
    if len(generated(G, [ranked[0]])) == G.order:
        return [ranked[0]]
    pairs = sorted(((a, b) for a in ranked for b in ranked if a < b),
                   key=lambda p: (counts[orders[p[0]]] * counts[orders[p[1]]], p))
    for a, b in pairs[:max_pairs]:
        if len(generated(G, [a, b])) == G.order:
            return [a, b]
    chosen = [ranked[0]]
    sub = generated(G, chosen)
    while len(sub) < G.order:
        b = next(x for x in ranked if x not in sub)
        chosen.append(b)
        sub = generated(G, chosen)
    return chosen


def _cayley_for(G, gens):
    t = G.table
    right = [[t[i][s] for s in gens] for i in range(G.order)]
    words = [None] * G.order
    words[0] = ()
    queue = deque([0])
    order = [0]
    while queue:
        x = queue.popleft()
        for k, s in enumerate(gens):
            y = t[x][s]
            if words[y] is None:
                words[y] = words[x] + (k,)
                queue.append(y)
                order.append(y)
    return right, words


def _homs(G, H, gens, bijective: bool, first_only: bool, bound: int):
    right, words = _cayley_for(G, gens)
    ords_g = G.element_orders
    ords_h = H.element_orders
    by_order: dict[int, list[int]] = {}
    for i, o in enumerate(ords_h):
        by_order.setdefault(o, []).append(i)
    cand = [by_order.get(ords_g[s], []) for s in gens]
    out = []
    table_h = H.table

    def rec(k, images):
        if k == len(gens):
            f = extend_hom(right, words, table_h, images, 0)
            if f is not None and (not bijective or len(set(f)) == G.order):
                out.append(f)
                if len(out) > bound:
                    raise BoundExceeded(f"more than {bound} maps")
                return first_only
            return False
        for c in cand[k]:
            if rec(k + 1, images + [c]):
                return True
        return False

    rec(0, [])
    return out


def isomorphisms(G, H, first_only: bool = False, bound: int = 100000) -> list[list[int]]:
    """Isomorphisms G -> H as index maps (all, or only the first found)."""
    if G.order != H.order or G.order_statistics() != H.order_statistics():
        return []
    gens = small_generating_set(G)
    return _homs(G, H, gens, True, first_only, bound)


@dataclass
class AutomorphismTable:
    group_order: int
    generators: list  # small generating set used for the search
    autos: list  # each automorphism as a full index permutation
    inner_order: int
    outer_reps: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.autos)

    @property
    def outer_order(self) -> int:
        return self.order // self.inner_order


def conjugation_perm(G, x: int) -> list[int]:
    t = G.table
    xi = G.inverses[x]
    return [t[t[x][i]][xi] for i in range(G.order)]


def _coset_key(G, images):
    """Key of an automorphism modulo inner ones: min over conjugates of images."""
    t = G.table
    inv = G.inverses
    best = None
    for y in range(G.order):
        yi = inv[y]
        k = tuple(t[t[y][a]][yi] for a in images)
        if best is None or k < best:
            best = k
    return best


def automorphisms(G, bound: int = 600) -> AutomorphismTable:
    if G.order > bound:
        raise BoundExceeded(f"|G| = {G.order} exceeds automorphism bound {bound}")
    gens = small_generating_set(G)
    autos = _homs(G, G, gens, True, False, 10**6)
    inner = G.order // len(center(G))
    reps = []
    seen = set()
    for f in autos:
        key = _coset_key(G, [f[s] for s in gens])
        if key not in seen:
            seen.add(key)
            reps.append(f)
    # put the identity first
    ident = list(range(G.order))
    reps.sort(key=lambda f: f != ident)
    return AutomorphismTable(G.order, gens, autos, inner, reps)


def perm_group_order(perms, n: int) -> int:
    """Order of the permutation group generated by ``perms`` on range(n)."""
    ident = tuple(range(n))
    gens = [tuple(p) for p in perms]
    seen = {ident}
    queue = [ident]
    while queue:
        x = queue.pop()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)


def outer_image_order(G, perms) -> int:
    """|<Inn(G), perms> / Inn(G)| for automorphisms given as permutations."""
    inner = [conjugation_perm(G, G.generator_index(g)) for g in range(len(G.generators))]
    total = perm_group_order(list(perms) + inner, G.order)
    return total // (G.order // len(center(G)))


def iso_type(G) -> tuple:
    """Cheap isomorphism fingerprint: order, abelian flag, element-order counts."""
    return (G.order, G.is_abelian(), G.order_statistics())
