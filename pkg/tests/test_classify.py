import random

import pytest

from cremona.action import GroupAction
from cremona.catalog import Family, FamilySpec, build
from cremona.classify import (
    NotIntransitive,
    action_type,
    intransitive_data,
    p1_actions_isomorphic,
    primary_data,
)
from cremona.cyclo import zeta
from cremona.projgeom import ProjectivePoint, ProjectiveTransform as PT, random_transform


@pytest.mark.parametrize(
    "family,params,tag",
    [
        ("INTR_S4", {"r": 1}, "I"),
        ("INTR_S4", {"r": 4, "m": 2, "t1": 3}, "I"),
        ("IMPRIM_CN2_C3", {"n": 2}, "T"),
        ("IMPRIM_CNCN3_S3", {"n": 3}, "T"),
        ("PRIM_A6", {}, "P"),
        ("PRIM_HESSIAN", {}, "P"),
    ],
)
def test_action_types(make, family, params, tag):
    at = action_type(make(family, **params))
    assert at.tag == tag
    if tag == "I":
        assert at.witness == ProjectivePoint([1, 0, 0])
    if tag == "T" and at.witness:
        assert len(at.witness) == 3


@pytest.mark.parametrize("seed", range(5))
def test_type_is_conjugation_invariant(make, seed):
    rng = random.Random(seed)
    for family, params in [("INTR_DN_EVEN_A", {"n": 4, "r": 2}), ("IMPRIM_CN2_S3", {"n": 2})]:
        A = make(family, **params)
        assert action_type(A.conjugate_by(random_transform(rng))).tag == action_type(A).tag


@pytest.mark.parametrize("r", [1, 3, 5])
def test_a5_generic_stabilizer(make, r):
    d = primary_data(make("INTR_A5", r=r))
    # diag(1,-1,-1) always acts trivially on the line; with r odd it joins chi_r
    assert d.t == 2 * r
    assert d.gbar == "A5"
    assert d.residual.order * d.t == make("INTR_A5", r=r).order


def test_dn_odd_trivial_stabilizer(make):
    d = primary_data(make("INTR_DN_ODD", n=3, r=1, m=0))
    assert d.t == 1 and d.gbar == "D3"


def test_chi_sign_convention():
    A = GroupAction([PT.diag(1, zeta(3), zeta(3))])
    d = primary_data(A)
    assert d.t == 3
    # chi = (eigenvalue at the point)/(eigenvalue on the line) = zeta_3^-1
    assert d.chi == 2
    assert d.chi_pair == frozenset({1, 2})


def test_dn_even_stabilizer_contains_minus_identity_on_line(make):
    A = make("INTR_DN_EVEN_A", n=4, r=3)
    d = primary_data(A)
    G = A.group
    minus = G.locate(PT.diag(1, -1, -1))
    assert minus in d.ct_elements
    assert d.t == 6


def test_abelian_actions_report_every_pair():
    A = GroupAction([PT.diag(1, zeta(3), zeta(3) ** 2)])
    data = intransitive_data(A)
    assert len(data) == 3
    assert {d.t for d in data} == {1}


def test_not_intransitive(make):
    with pytest.raises(NotIntransitive):
        intransitive_data(make("IMPRIM_CN2_C3", n=2))


def test_two_a5_actions_on_the_line(make):
    A = make("INTR_A5", r=1)
    B = GroupAction([PT([[c.galois(2) for c in row] for row in g.rows]) for g in A.generators], A.names)
    rA, rB = primary_data(A).residual, primary_data(B).residual
    assert p1_actions_isomorphic(rA, rA).isomorphic
    assert not p1_actions_isomorphic(rA, rB, "strict")
    res = p1_actions_isomorphic(rA, rB, "up_to_aut")
    assert res.isomorphic and res.conjugator is not None


def test_every_catalog_intransitive_family_satisfies_order_identity():
    for spec in [
        FamilySpec(Family.INTR_CYCLIC, n=4, r=2, m=1),
        FamilySpec(Family.INTR_DN_ODD, n=5, r=3, m=1),
        FamilySpec(Family.INTR_DN_EVEN_B, n=4, r=1, m=1),
        FamilySpec(Family.INTR_DN_EVEN_C, n=4, r=2, m=2, t4=3),
        FamilySpec(Family.INTR_A4_B, r=2, m=1, t3=2),
    ]:
        A = build(spec)
        d = primary_data(A)
        assert d.t * d.residual.order == A.order
        if not A.group.is_abelian():
            assert d.fixed_point == ProjectivePoint([1, 0, 0])
