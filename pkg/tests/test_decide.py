import pytest

from cremona import ratmaps as R
from cremona.action import GroupAction
from cremona.catalog import c3_squared_pair
from cremona.cyclo import zeta
from cremona.decide import (
    Answer,
    MismatchedGroups,
    Unknown,
    WeightSpace,
    count_actions,
    decide_cr2,
    family_moves,
    weight_chain,
)
from cremona.catalog import Family, FamilySpec
from cremona.projgeom import ProjectiveTransform as PT


def galois_twin(A, k):
    """The action obtained by applying the Galois automorphism z -> z^k to every entry."""
    gens = [PT([[c.embed(g.n).galois(k) for c in row] for row in g.rows], g.n) for g in A.generators]
    return GroupAction(gens, A.names)


def test_self_pair_is_linear(make):
    A = make("INTR_DN_EVEN_B", n=4, r=3, m=1)
    v = decide_cr2(A, A)
    assert v.answer is Answer.PGL3
    assert v.lines()[0] == "answer=ConjugateInPGL3"


def test_mismatched_groups(make):
    with pytest.raises(MismatchedGroups):
        decide_cr2(make("INTR_DN_EVEN_A", n=4, r=3), make("INTR_A4_A", r=2))


def test_c3_squared_types_differ():
    a, b = c3_squared_pair()
    v = decide_cr2(a, b, "up_to_aut")
    assert v.answer is Answer.NO and v.branch == "a"


def test_primitive_table(make):
    a5 = make("PRIM_A5")
    twin = galois_twin(a5, 2)
    v = decide_cr2(a5, twin)
    assert v.branch == "b" and v.answer is Answer.CR2
    psl = make("PRIM_PSL27")
    v = decide_cr2(psl, galois_twin(psl, 3))
    assert v.branch == "b" and v.answer is Answer.NO


def test_imprimitive_iota_link(make):
    A = make("IMPRIM_CN2_S3", n=3)
    B = R.conjugate_action(R.iota(), A)
    v = decide_cr2(A, B)
    assert v.answer is Answer.CR2 and v.branch == "c"
    assert v.verified and v.chain[0].name == "iota"


def test_intransitive_positive_with_chain(make):
    A = make("INTR_DN_EVEN_B", n=4, r=3, m=1, t2=1)
    B = make("INTR_DN_EVEN_B", n=4, r=3, m=1, t2=3, t1=2)
    v = decide_cr2(A, B)
    assert v.answer is Answer.CR2 and v.branch == "d"
    assert v.verified and R.verify_chain(v.chain, A, B)


def test_intransitive_negative(make):
    A = make("INTR_A5", r=5, t1=1)
    B = make("INTR_A5", r=5, t1=2)
    v = decide_cr2(A, B)
    assert v.answer is Answer.NO and "vs" in v.invariant


def test_abelian_out_of_scope(make):
    A = make("INTR_CYCLIC", n=4, r=2, m=1)
    assert decide_cr2(A, A.conjugate_by(PT.diag(1, 1, 1))).answer is Answer.PGL3
    i = zeta(4)
    B = GroupAction([PT.diag(1, 1, i)], ["g"])
    C = GroupAction([PT.diag(1, i, -1)], ["g"])
    assert decide_cr2(B, C).answer is Answer.OUT


def test_trivial_stabilizer(make):
    A = make("INTR_DN_ODD", n=3, r=1, m=0, t2=1)
    B = make("INTR_DN_ODD", n=3, r=1, m=0, t2=2)
    v = decide_cr2(A, B)
    assert v.answer in (Answer.PGL3, Answer.CR2)
    if v.answer is Answer.CR2:
        assert v.branch == "e"


def test_up_to_aut_mode(make):
    A = make("INTR_DN_ODD", n=5, r=5, t1=1)
    B = make("INTR_DN_ODD", n=5, r=5, t1=2)
    assert decide_cr2(A, B).answer is Answer.NO
    assert decide_cr2(A, B, "up_to_aut").answer is Answer.PGL3


def test_weight_space_and_moves():
    spec = FamilySpec(Family.INTR_DN_EVEN_A, n=4, r=3)
    ws = WeightSpace(spec)
    assert len(ws.vectors) == 2 * 4
    assert len(family_moves(spec)) == 3
    rep, _ = ws.representative((2, 7))
    assert rep <= (2, 7)


def test_weight_chain_needs_catalog_metadata(make):
    A = make("INTR_DN_EVEN_A", n=4, r=3)
    bare = GroupAction(A.generators, A.names)
    chain, why = weight_chain(bare, bare)
    assert chain is None and "catalog" in why


@pytest.mark.parametrize(
    "family,params,regular,birational",
    [
        ("PRIM_A5", {}, 2, 1),
        ("PRIM_C32C4", {}, 2, 1),
        ("IMPRIM_CNCNR_C3", {"n": 7, "r": 7, "s": 3}, 2, 1),
        ("IMPRIM_CN2_S3", {"n": 5}, 4, 2),
        ("IMPRIM_CNCN3_S3", {"n": 3}, 2, 1),
        ("INTR_DN_EVEN_A", {"n": 4, "r": 3}, 4, 1),
    ],
)
def test_count_actions(make, family, params, regular, birational):
    A = make(family, **params)
    assert count_actions(A, "regular") == regular
    assert count_actions(A, "birational") == birational


def test_count_unknown_for_abelian_intransitive(make):
    assert count_actions(make("INTR_CYCLIC", n=4, r=2, m=1), "birational") is Unknown
