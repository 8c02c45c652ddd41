import random

import numpy as np
import pytest

from cremona.cyclo import zeta
from cremona.projgeom import (
    NotConjugate,
    OrderBoundExceeded,
    ProjectivePoint,
    ProjectiveTransform as PT,
    close_group,
    find_conjugator,
    general_position,
    orbit,
    random_transform,
    stabilizer,
)


def numeric(g):
    return np.array([[complex(x) for x in r] for r in g.rows])


def numeric_closure_order(gens, cap=2000):
    """Brute-force closure in PGL over floating point, modulo scalars."""

    def key(m):
        flat = m.flatten()
        lead = flat[np.argmax(np.abs(flat) > 1e-9)]
        v = flat / lead
        return tuple(np.round(v.real, 6)) + tuple(np.round(v.imag, 6))

    mats = [numeric(g) for g in gens]
    start = np.eye(mats[0].shape[0], dtype=complex)
    seen = {key(start): start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for m in mats:
                y = x @ m
                k = key(y)
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
        frontier = nxt
        if len(seen) > cap:
            raise RuntimeError("cap")
    return len(seen)


@pytest.mark.parametrize(
    "family,params",
    [
        ("IMPRIM_CN2_S3", {"n": 3}),
        ("IMPRIM_CNCNR_C3", {"n": 7, "r": 7, "s": 3}),
        ("INTR_DN_EVEN_B", {"n": 4, "r": 3, "m": 1}),
        ("INTR_A4_A", {"r": 2}),
        ("INTR_S4", {"r": 2, "m": 1}),
        ("PRIM_A5", {}),
        ("PRIM_PSL27", {}),
    ],
)
def test_exact_closure_matches_numeric_oracle(make, family, params):
    A = make(family, **params)
    assert A.order == numeric_closure_order(A.generators)


def test_group_indices_and_words(make):
    G = make("IMPRIM_CN2_S3", n=2).group
    assert G.elements[0] == PT.identity()
    for i, w in enumerate(G.words):
        assert G.evaluate_word(G.generators, w) == G.elements[i]
    for i in range(G.order):
        for g in range(len(G.generators)):
            assert G.elements[G.right[i][g]] == G.elements[i] @ G.generators[g]


def test_order_bound_is_enforced():
    with pytest.raises(OrderBoundExceeded):
        close_group([PT.diag(1, zeta(7), 1), PT.diag(1, 1, zeta(7))], bound=20)


def test_projective_equality_ignores_scalars():
    g = PT.diag(1, zeta(3), 1)
    assert g == g.scale(zeta(5))
    assert g != PT.diag(1, 1, zeta(3))


def test_lift_order():
    assert PT.diag(zeta(3), zeta(3), 1).lift_order == 3
    assert PT.permutation([1, 2, 0]).lift_order == 3


@pytest.mark.parametrize("seed", range(8))
def test_find_conjugator_recovers_a_random_conjugation(make, seed):
    rng = random.Random(seed)
    A = make("IMPRIM_CN2_S3", n=2)
    h = random_transform(rng, n=1)
    B = A.conjugate_by(h)
    k = find_conjugator(A.generators, B.generators)
    assert not isinstance(k, NotConjugate)
    assert all(k @ a @ k.inverse() == b for a, b in zip(A.generators, B.generators))


def test_find_conjugator_refuses_different_spectra():
    a = [PT.diag(1, zeta(3), zeta(3))]
    b = [PT.diag(1, 1, zeta(3))]
    res = find_conjugator(a, b)
    assert isinstance(res, NotConjugate) and not res


def test_orbit_stabilizer_on_eigenpoints(make):
    G = make("IMPRIM_CNCN3_S3", n=3).group
    for p in [ProjectivePoint([1, 0, 0]), ProjectivePoint([1, 1, 1]), ProjectivePoint([1, zeta(3), 0])]:
        assert len(orbit(p, G)) * len(stabilizer(p, G)) == G.order


def test_general_position_predicates():
    pts = [ProjectivePoint(v) for v in ([1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1])]
    assert general_position(pts).general_position
    rep = general_position(pts + [ProjectivePoint([1, 1, 0])])
    assert not rep.no_three_collinear
    conic = [ProjectivePoint([t * t, t, 1]) for t in range(6)]
    assert general_position(conic).on_conic
    assert not general_position(conic).general_position


def test_random_transform_is_invertible():
    rng = random.Random(3)
    for n in (1, 3, 4):
        h = random_transform(rng, n=n)
        assert h.det()
        assert h @ h.inverse() == PT.identity(3, h.n)


def test_point_equality_across_scalars():
    p = ProjectivePoint([1, zeta(3), 2])
    q = ProjectivePoint([zeta(4) * c for c in p.coords])
    assert p == q and hash(p) == hash(q)
    with pytest.raises(ValueError):
        ProjectivePoint([0, 0, 0])
