"""Acceptance suite: one marked group of checks per criterion.

The terminal summary (see conftest) prints one PASS/FAIL line per criterion.
"""
import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona import ratmaps as R
from cremona.burnside import burnside_class, classes_equal
from cremona.catalog import (
    Family,
    FamilySpec,
    build,
    c3_squared_pair,
    expected_order,
    normalizer_finite,
    twisted_a4_pair,
    validate,
    weight_moduli,
)
from cremona.classify import action_type, primary_data
from cremona.cyclo import Cyclo, zeta
from cremona.decide import Answer, decide_cr2
from cremona.groups import generated
from cremona.projgeom import (
    NotConjugate,
    ProjectiveLine,
    ProjectivePoint,
    ProjectiveTransform as PT,
    _fixes_line_pointwise,
    eigenspaces,
    find_conjugator,
    general_position,
    orbit,
    random_transform,
    small_orbits,
    stabilizer,
)

from test_projgeom import numeric_closure_order


def crit(k):
    return pytest.mark.criterion(k)


# ---------------------------------------------------------------- 1. orders

IMPRIMITIVE_SMALLEST = [
    (Family.IMPRIM_CN2_C3, {"n": 2}, lambda n: 3 * n * n),
    (Family.IMPRIM_CN2_S3, {"n": 2}, lambda n: 6 * n * n),
    (Family.IMPRIM_CNCNR_C3, {"n": 3, "r": 3, "s": 2}, lambda n: 3 * n * n // 3),
    (Family.IMPRIM_CNCN3_S3, {"n": 3}, lambda n: 2 * n * n),
]

PRIMITIVE_ORDERS = {
    Family.PRIM_A5: 60,
    Family.PRIM_A6: 360,
    Family.PRIM_PSL27: 168,
    Family.PRIM_HESSIAN: 216,
    Family.PRIM_PSU3F2: 72,
    Family.PRIM_C32C4: 36,
}

INTRANSITIVE_SMALLEST = [
    (Family.INTR_DN_ODD, {"n": 3, "r": 1, "m": 0}, 6),
    (Family.INTR_DN_EVEN_A, {"n": 2, "r": 1}, 4),
    (Family.INTR_DN_EVEN_B, {"n": 2, "r": 1, "m": 1}, 4),
    (Family.INTR_DN_EVEN_C, {"n": 4, "r": 1, "m": 1}, 8),
    (Family.INTR_A4_A, {"r": 1}, 12),
    (Family.INTR_A4_B, {"r": 1, "m": 1}, 12),
    (Family.INTR_S4, {"r": 1, "m": 0}, 24),
    (Family.INTR_A5, {"r": 1}, 60),
]


@crit(1)
@pytest.mark.parametrize("family,params,formula", IMPRIMITIVE_SMALLEST, ids=lambda x: getattr(x, "value", ""))
def test_c1_imprimitive_orders(family, params, formula):
    spec = FamilySpec(family, **params)
    assert validate(spec) == []
    A = build(spec)
    assert A.order == formula(params["n"]) == expected_order(spec)
    assert numeric_closure_order(A.generators, cap=500) == A.order


@crit(1)
@pytest.mark.parametrize("family", list(PRIMITIVE_ORDERS), ids=lambda f: f.value)
def test_c1_primitive_orders(family):
    A = build(FamilySpec(family))
    assert A.order == PRIMITIVE_ORDERS[family]


@crit(1)
@pytest.mark.parametrize("family,params,gbar_order", INTRANSITIVE_SMALLEST, ids=lambda x: getattr(x, "value", ""))
def test_c1_intransitive_orders(family, params, gbar_order):
    # no closed form is stated for these; |G| = t |Gbar| against a floating-point closure
    A = build(FamilySpec(family, **params))
    d = primary_data(A)
    assert A.order == d.t * gbar_order
    assert numeric_closure_order(A.generators, cap=500) == A.order


# ---------------------------------------------------------------- 2. C3^2


@crit(2)
def test_c2_two_classes_of_c3_squared():
    a, b = c3_squared_pair()
    assert a.order == b.order == 9
    assert {action_type(a).tag, action_type(b).tag} == {"I", "T"}
    G = b.group
    images = [
        (x, y)
        for x, y in itertools.product(range(G.order), repeat=2)
        if len(generated(G, [x, y])) == 9
    ]
    assert len(images) == 48  # |GL_2(F_3)|: every automorphism of C3^2
    for x, y in images:
        assert isinstance(find_conjugator(a.generators, [G.elements[x], G.elements[y]]), NotConjugate)
    assert decide_cr2(a, b, "up_to_aut").answer is Answer.NO


@crit(2)
@pytest.mark.parametrize("seed", range(3))
def test_c2_every_conjugate_lands_in_one_class(seed):
    rng = random.Random(seed)
    a, b = c3_squared_pair()
    for rep in (a, b):
        h = random_transform(rng, n=3)
        c = rep.conjugate_by(h)
        assert not isinstance(find_conjugator(rep.generators, c.generators), NotConjugate)
        other = b if rep is a else a
        assert isinstance(find_conjugator(other.generators, c.generators), NotConjugate)


# ---------------------------------------------------------------- 3. twisted A4 pair


@crit(3)
def test_c3_twisted_pair_line_stabilizers():
    g1, g2 = twisted_a4_pair(1)
    assert g1.order == g2.order
    assert isinstance(find_conjugator(g1.generators, g2.generators), NotConjugate)
    w = zeta(3)
    line = ProjectiveLine.from_form([0, 1, -(2 * w + 1)])
    sizes = [sum(1 for g in A.group.elements if _fixes_line_pointwise(g, line)) for A in (g1, g2)]
    assert sizes == [1, 3]


# ---------------------------------------------------------------- 4. orbits


@crit(4)
def test_c4_a6_has_no_small_orbits():
    scan = small_orbits(build(FamilySpec(Family.PRIM_A6)).group, 8)
    assert scan.orbits == [] and not scan.families


@crit(4)
def test_c4_a5_has_one_orbit_of_six():
    scan = small_orbits(build(FamilySpec(Family.PRIM_A5)).group, 8)
    assert scan.lengths() == [6] and not scan.families
    pos = general_position(scan.orbits[0][0])
    assert pos.no_three_collinear and not pos.on_conic


@crit(4)
def test_c4_imprimitive_s4_orbits():
    A = build(FamilySpec(Family.IMPRIM_CN2_S3, n=2))
    assert A.order == 24
    scan = small_orbits(A.group, 8)
    assert not scan.families and not scan.whole_plane
    good = [pts for pts, _ in scan.orbits if general_position(pts).general_position]
    triangle = [ProjectivePoint(v) for v in ([1, 0, 0], [0, 1, 0], [0, 0, 1])]
    four = [ProjectivePoint(v) for v in ([1, 1, 1], [-1, 1, 1], [1, -1, 1], [1, 1, -1])]

    def same(xs, ys):
        return len(xs) == len(ys) and all(any(x == y for y in ys) for x in xs)

    assert len(good) == 2
    assert any(same(o, triangle) for o in good) and any(same(o, four) for o in good)


@crit(4)
def test_c4_c3_semidirect_s3_has_four_orbits_of_three():
    A = build(FamilySpec(Family.IMPRIM_CNCN3_S3, n=3))
    assert A.order == 18
    scan = small_orbits(A.group, 3)
    assert scan.lengths() == [3, 3, 3, 3] and not scan.families


# ---------------------------------------------------------------- 5. map certificates

IMPRIMITIVE_FAMILIES = [
    (Family.IMPRIM_CN2_C3, {"n": 2}),
    (Family.IMPRIM_CN2_C3, {"n": 3}),
    (Family.IMPRIM_CN2_S3, {"n": 2}),
    (Family.IMPRIM_CN2_S3, {"n": 3}),
    (Family.IMPRIM_CNCNR_C3, {"n": 3, "r": 3, "s": 2}),
    (Family.IMPRIM_CNCNR_C3, {"n": 7, "r": 7, "s": 3}),
    (Family.IMPRIM_CNCNR_C3, {"n": 6, "r": 3, "s": 2}),
    (Family.IMPRIM_CNCN3_S3, {"n": 3}),
    (Family.IMPRIM_CNCN3_S3, {"n": 6}),
]


def _ids(x):
    if isinstance(x, Family):
        return x.value
    if isinstance(x, dict):
        return "-".join(f"{k}{v}" for k, v in x.items())
    return None


@crit(5)
def test_c5_iota_squared():
    i = R.iota()
    assert R.compose(i, i) == R.RationalMap.identity()


@crit(5)
@pytest.mark.parametrize("lam", [2, 3, zeta(5)], ids=["2", "3", "zeta5"])
def test_c5_theta_involution(lam):
    assert R.is_involution(R.theta_a4(lam))


@crit(5)
@pytest.mark.parametrize("family,params", IMPRIMITIVE_FAMILIES, ids=_ids)
def test_c5_iota_normalises_imprimitive(family, params):
    A = build(FamilySpec(family, **params))
    assert R.equivariance_certificate(R.iota(), A, A)


EVEN_DN = [
    (Family.INTR_DN_EVEN_A, {"n": 2, "r": 3}),
    (Family.INTR_DN_EVEN_A, {"n": 4, "r": 3}),
    (Family.INTR_DN_EVEN_B, {"n": 2, "r": 3, "m": 1}),
    (Family.INTR_DN_EVEN_B, {"n": 4, "r": 3, "m": 1}),
    (Family.INTR_DN_EVEN_C, {"n": 4, "r": 3, "m": 1}),
]


@crit(5)
@pytest.mark.parametrize("family,params", EVEN_DN, ids=_ids)
def test_c5_gamma_and_tau(family, params):
    A = build(FamilySpec(family, **params))
    n = params["n"]
    assert R.equivariance_certificate(R.build_map("GAMMA", n=n), A, A)
    for lam in (2, 3):
        assert R.equivariance_certificate(R.build_map("TAU_X23", n=n, lam=lam), A, A)


@crit(5)
@pytest.mark.xfail(strict=True, raises=R.NotRegularizable, reason="tau as stated lacks the x2 <-> x3 symmetry")
def test_c5_stated_tau_is_not_equivariant():
    A = build(FamilySpec(Family.INTR_DN_EVEN_A, n=4, r=3))
    R.conjugate_action(R.build_map("TAU", n=4, lam=2), A)


# ---------------------------------------------------------------- 6. weight ledger

SWAP23 = R.RationalMap.from_transform(PT.permutation([0, 2, 1]))
FLIP3 = R.RationalMap.from_transform(PT.diag(1, 1, -1))


def weights(spec):
    return {k: getattr(spec, k) for k in weight_moduli(spec)}


def reproduces(spec, f, predicted):
    """The f-conjugate of the catalog action is (up to PGL3) the catalog action at ``predicted`` weights."""
    mods = weight_moduli(spec)
    target = spec.with_weights(**{k: v % mods[k] for k, v in predicted.items()})
    assert validate(target) == [], "predicted weights leave the family"
    assert predicted != weights(spec) or all(v % mods[k] == getattr(spec, k) % mods[k] for k, v in predicted.items())
    B = R.conjugate_action(f, build(spec))
    C = build(target)
    if all(a == b for a, b in zip(B.generators, C.generators)):
        return True
    return not isinstance(find_conjugator(B.generators, C.generators), NotConjugate)


def moved(spec, predicted):
    mods = weight_moduli(spec)
    return any((predicted[k] - getattr(spec, k)) % mods[k] for k in predicted)


@crit(6)
@pytest.mark.parametrize("m", [1, 2, 3])
def test_c6_odd_dihedral(m):
    s = FamilySpec(Family.INTR_DN_ODD, n=3, r=4, m=m, t1=1, t2=1, t3=1)
    W = weights(s)
    io = R.compose(R.iota(), SWAP23)
    assert reproduces(s, io, dict(W, t1=-W["t1"], t3=-W["t3"]))
    assert reproduces(s, SWAP23, dict(W, t2=-W["t2"]))
    if m >= 2:  # at m = 1 the shift would make t3 even
        assert reproduces(s, FLIP3, dict(W, t3=W["t3"] + 2 ** (m - 1)))


EVEN_LEDGER = [
    (Family.INTR_DN_EVEN_A, 2, {}),
    (Family.INTR_DN_EVEN_A, 4, {}),
    (Family.INTR_DN_EVEN_B, 2, {"m": 1}),
    (Family.INTR_DN_EVEN_B, 4, {"m": 1}),
    (Family.INTR_DN_EVEN_B, 4, {"m": 2}),
    (Family.INTR_DN_EVEN_C, 4, {"m": 1}),
    (Family.INTR_DN_EVEN_C, 4, {"m": 2}),
]


@crit(6)
@pytest.mark.parametrize("family,n,extra", EVEN_LEDGER, ids=_ids)
def test_c6_even_dihedral(family, n, extra):
    s = FamilySpec(family, n=n, r=3, t1=1, t2=1, t3=1, t4=1, **extra)
    W = weights(s)
    m = s.m
    neg = {k: (v if k == "t2" else -v) for k, v in W.items()}
    assert reproduces(s, R.build_map("DN_EVEN_IOTA"), neg)
    flip = dict(W)
    if "t4" in W:
        flip["t4"] += 2**m
    assert reproduces(s, FLIP3, flip)
    gamma = R.build_map("GAMMA", n=n)
    assert reproduces(s, gamma, dict(W, t2=W["t2"] + n))
    if "t3" in W:
        assert reproduces(s, gamma, dict(W, t3=W["t3"] + 2**m))


A4_SPECS = [
    FamilySpec(Family.INTR_A4_A, r=3, t1=1, t2=1),
    FamilySpec(Family.INTR_A4_A, r=2, t1=1, t2=0),
    FamilySpec(Family.INTR_A4_B, r=2, m=1, t1=1, t2=1, t3=1),
    FamilySpec(Family.INTR_A4_B, r=2, m=2, t1=1, t2=1, t3=1),
]


@crit(6)
@pytest.mark.parametrize("s", A4_SPECS, ids=lambda s: f"{s.family.value}-m{s.m}")
def test_c6_tetrahedral(s):
    W = weights(s)
    sigma = R.build_map("A4_SIGMA")
    assert moved(s, dict(W, t2=W["t2"] + 1))
    assert reproduces(s, sigma, dict(W, t2=W["t2"] + 1))
    if "t3" in W:
        # t3 sits on a 3^(m+1)-th root of unity, so the shift equivalent to t2 + 1 is 3^m
        assert reproduces(s, sigma, dict(W, t3=W["t3"] + 3**s.m))
    assert reproduces(s, R.build_map("A4_GAMMA"), {k: -v for k, v in W.items()})


@crit(6)
@pytest.mark.xfail(strict=True, reason="a t3 shift of 3^(m-1) is not realised by sigma in this normalisation")
def test_c6_tetrahedral_stated_shift():
    s = FamilySpec(Family.INTR_A4_B, r=2, m=1, t1=1, t2=1, t3=1)
    assert reproduces(s, R.build_map("A4_SIGMA"), dict(weights(s), t3=1 + 3 ** (s.m - 1)))


@crit(6)
@pytest.mark.parametrize("m", [0, 1, 2])
def test_c6_octahedral(m):
    s = FamilySpec(Family.INTR_S4, r=3, m=m, t1=1, t2=1, t3=1)
    W = weights(s)
    sigma = R.build_map("S4_SIGMA")
    if m >= 1:  # at m = 0 the t2 shift would make t2 even
        assert reproduces(s, sigma, dict(W, t2=W["t2"] + 2**m))
    assert reproduces(s, sigma, dict(W, t3=W["t3"] + 2))
    assert reproduces(s, R.build_map("S4_GAMMA"), {k: -v for k, v in W.items()})


@crit(6)
@pytest.mark.parametrize("r", [3, 4])
def test_c6_icosahedral(r):
    s = FamilySpec(Family.INTR_A5, r=r, t1=1)
    assert reproduces(s, R.build_map("A5_SIGMA"), {"t1": -1})


# ---------------------------------------------------------------- 7. decision sweep

SWEEP_BASES = [
    FamilySpec(Family.INTR_DN_ODD, n=5, r=2, m=0),
    FamilySpec(Family.INTR_DN_ODD, n=3, r=4, m=2),
    FamilySpec(Family.INTR_DN_EVEN_A, n=4, r=3),
    FamilySpec(Family.INTR_DN_EVEN_B, n=4, r=3, m=1),
    FamilySpec(Family.INTR_DN_EVEN_C, n=4, r=3, m=1),
    FamilySpec(Family.INTR_A4_A, r=3),
    FamilySpec(Family.INTR_A4_B, r=2, m=1),
    FamilySpec(Family.INTR_S4, r=3, m=1),
    FamilySpec(Family.INTR_A5, r=5),
]


def _valid_weightings(base):
    mods = weight_moduli(base)
    keys = list(mods)
    out = []
    for vals in itertools.product(*(range(mods[k]) for k in keys)):
        s = base.with_weights(**dict(zip(keys, vals)))
        if not validate(s):
            out.append(s)
    return out


def _sweep_pairs():
    pairs = []
    for base in SWEEP_BASES:
        valid = _valid_weightings(base)
        pairs += [(valid[0], s) for s in valid[1:4]]
    return pairs


SWEEP = _sweep_pairs()


def test_sweep_is_large_enough():
    assert len(SWEEP) >= 20


@crit(7)
@pytest.mark.parametrize("sa,sb", SWEEP, ids=lambda s: f"{s.family.value}{tuple(weights(s).values())}")
def test_c7_decision_matches_burnside(sa, sb):
    A, B = build(sa), build(sb)
    v = decide_cr2(A, B)
    equal = classes_equal(burnside_class(A), burnside_class(B))
    assert (v.answer in (Answer.CR2, Answer.PGL3)) == equal
    assert v.answer in (Answer.CR2, Answer.PGL3, Answer.NO)
    if v.answer is Answer.CR2:
        assert v.verified and R.verify_chain(v.chain, A, B)
    if v.answer is Answer.PGL3:
        h = v.conjugator
        assert all(h @ a @ h.inverse() == b for a, b in zip(A.generators, B.generators))


# ---------------------------------------------------------------- 8. iota links

NON_A4_S4 = [(f, p) for f, p in IMPRIMITIVE_FAMILIES if build(FamilySpec(f, **p)).order not in (12, 24)]


@crit(8)
@pytest.mark.parametrize("family,params", NON_A4_S4, ids=_ids)
def test_c8_iota_conjugate_is_cremona_but_not_linear(family, params):
    A = build(FamilySpec(family, **params))
    B = R.conjugate_action(R.iota(), A)
    assert isinstance(find_conjugator(A.generators, B.generators), NotConjugate)
    v = decide_cr2(A, B)
    assert v.answer is Answer.CR2
    assert [f.name for f in v.chain] == ["iota"]
    assert v.verified and R.verify_chain(v.chain, A, B)


# ---------------------------------------------------------------- 9. finite normalizers

NORMALIZER_CASES = [
    (Family.INTR_DN_ODD, {"n": 5, "r": 2, "m": 0}, False),
    (Family.INTR_DN_EVEN_A, {"n": 4, "r": 3}, False),
    (Family.INTR_A5, {"r": 1}, False),
    (Family.INTR_CYCLIC, {"n": 2, "r": 1, "m": 0}, False),
    (Family.IMPRIM_CN2_C3, {"n": 2}, False),  # A4
    (Family.IMPRIM_CNCNR_C3, {"n": 3, "r": 3, "s": 2}, False),  # C3^2
    (Family.IMPRIM_CNCN3_S3, {"n": 3}, False),  # C3 x| S3
    (Family.IMPRIM_CNCNR_C3, {"n": 7, "r": 7, "s": 3}, False),  # C7 x| C3
    (Family.PRIM_C32C4, {}, False),
    (Family.IMPRIM_CN2_C3, {"n": 3}, True),
    (Family.IMPRIM_CN2_S3, {"n": 2}, True),
    (Family.IMPRIM_CN2_S3, {"n": 3}, True),
    (Family.IMPRIM_CNCNR_C3, {"n": 13, "r": 13, "s": 4}, True),
    (Family.IMPRIM_CNCNR_C3, {"n": 6, "r": 3, "s": 2}, True),
    (Family.IMPRIM_CNCN3_S3, {"n": 6}, True),
    (Family.PRIM_A5, {}, True),
    (Family.PRIM_A6, {}, True),
    (Family.PRIM_PSL27, {}, True),
    (Family.PRIM_HESSIAN, {}, True),
    (Family.PRIM_PSU3F2, {}, True),
]


@crit(9)
@pytest.mark.parametrize("family,params,finite", NORMALIZER_CASES, ids=_ids)
def test_c9_normalizer_finite(family, params, finite):
    assert normalizer_finite(build(FamilySpec(family, **params))) is finite


# ---------------------------------------------------------------- 10. property suites

CONDUCTORS = [1, 3, 4, 5, 7, 8, 12, 15]


@st.composite
def field_triples(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    coeffs = st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=5), min_size=1, max_size=n)
    return tuple(Cyclo.from_raw(n, draw(coeffs)) for _ in range(3))


@crit(10)
@settings(max_examples=1000, deadline=None)
@given(field_triples())
def test_c10_field_axioms(abc):
    a, b, c = abc
    zero, one = a - a, a ** 0
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a and a + (-a) == zero
    if a != zero:
        assert a * a.inverse() == one
        assert (b / a) * a == b


ORBIT_GROUPS = [
    (Family.IMPRIM_CN2_S3, {"n": 2}),
    (Family.IMPRIM_CNCN3_S3, {"n": 3}),
    (Family.PRIM_A5, {}),
    (Family.PRIM_HESSIAN, {}),
    (Family.INTR_DN_EVEN_B, {"n": 4, "r": 3, "m": 1}),
]


@crit(10)
@pytest.mark.parametrize("seed", range(100))
def test_c10_orbit_stabilizer(seed):
    rng = random.Random(seed)
    family, params = ORBIT_GROUPS[seed % len(ORBIT_GROUPS)]
    G = build(FamilySpec(family, **params)).group
    if seed % 2:
        g = G.elements[rng.randrange(1, G.order)]
        # eigenpoints have large stabilizers, which is where the identity has teeth
        pts = [ProjectivePoint(list(sp.basis[0])) for sp in eigenspaces(g) if len(sp.basis) == 1]
        p = rng.choice(pts or [ProjectivePoint([1, 0, 0])])
    else:
        coords = [0, 0, 0]
        while coords == [0, 0, 0]:
            coords = [rng.randint(-3, 3) for _ in range(3)]
        p = ProjectivePoint(coords)
    assert len(orbit(p, G)) * len(stabilizer(p, G)) == G.order


@crit(10)
@pytest.mark.parametrize("seed", range(20))
def test_c10_find_conjugator_soundness(seed):
    rng = random.Random(seed)
    family, params = ORBIT_GROUPS[seed % len(ORBIT_GROUPS)]
    A = build(FamilySpec(family, **params))
    B = A.conjugate_by(random_transform(rng, n=rng.choice([1, 3])))
    for target in (B, R.conjugate_action(R.iota(), A) if seed % 5 == 0 else B):
        k = find_conjugator(A.generators, target.generators)
        if not isinstance(k, NotConjugate):
            assert all(k @ a @ k.inverse() == b for a, b in zip(A.generators, target.generators))
    assert not isinstance(find_conjugator(A.generators, B.generators), NotConjugate)


BURNSIDE_BASES = [
    FamilySpec(Family.INTR_DN_ODD, n=5, r=2, m=0, t2=1),
    FamilySpec(Family.INTR_DN_EVEN_A, n=4, r=3, t1=1, t2=1),
    FamilySpec(Family.INTR_A4_A, r=3, t1=1, t2=1),
    FamilySpec(Family.INTR_S4, r=3, m=1, t1=1, t2=1, t3=1),
]


@crit(10)
@pytest.mark.parametrize("seed", range(20))
def test_c10_burnside_invariance(seed):
    rng = random.Random(1000 + seed)
    A = build(BURNSIDE_BASES[seed % len(BURNSIDE_BASES)])
    B = A.conjugate_by(random_transform(rng, n=rng.choice([1, 4])))
    ca, cb = burnside_class(A), burnside_class(B)
    assert ca.symbols and classes_equal(ca, cb)
