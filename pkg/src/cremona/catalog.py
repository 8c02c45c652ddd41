"""Constructors for the classified finite subgroups of PGL3.

Matrices act on column vectors; a substitution written as
``(x1, a x2 + b x3, c x2 + d x3)`` becomes the matrix with those rows.
Intransitive families carry weight parameters ``t1..t4`` so that one
constructor covers every action of a given subgroup, not only one per
subgroup.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum
from importlib import resources

from .action import DEFAULT_ORDER_BOUND, GroupAction
from .cyclo import zeta
from .projgeom import ProjectiveTransform as PT


class Family(str, Enum):
    IMPRIM_CN2_C3 = "IMPRIM_CN2_C3"
    IMPRIM_CN2_S3 = "IMPRIM_CN2_S3"
    IMPRIM_CNCNR_C3 = "IMPRIM_CNCNR_C3"
    IMPRIM_CNCN3_S3 = "IMPRIM_CNCN3_S3"
    INTR_CYCLIC = "INTR_CYCLIC"
    INTR_DN_ODD = "INTR_DN_ODD"
    INTR_DN_EVEN_A = "INTR_DN_EVEN_A"
    INTR_DN_EVEN_B = "INTR_DN_EVEN_B"
    INTR_DN_EVEN_C = "INTR_DN_EVEN_C"
    INTR_A4_A = "INTR_A4_A"
    INTR_A4_B = "INTR_A4_B"
    INTR_S4 = "INTR_S4"
    INTR_A5 = "INTR_A5"
    PRIM_A5 = "PRIM_A5"
    PRIM_A6 = "PRIM_A6"
    PRIM_PSL27 = "PRIM_PSL27"
    PRIM_HESSIAN = "PRIM_HESSIAN"
    PRIM_PSU3F2 = "PRIM_PSU3F2"
    PRIM_C32C4 = "PRIM_C32C4"

    @property
    def kind(self) -> str:
        return {"IMPRIM": "T", "INTR": "I", "PRIM": "P"}[self.value.split("_")[0]]


# parameters each family actually reads, in display order
PARAMS: dict[Family, tuple[str, ...]] = {
    Family.IMPRIM_CN2_C3: ("n",),
    Family.IMPRIM_CN2_S3: ("n",),
    Family.IMPRIM_CNCNR_C3: ("n", "r", "s"),
    Family.IMPRIM_CNCN3_S3: ("n",),
    Family.INTR_CYCLIC: ("n", "r", "m"),
    Family.INTR_DN_ODD: ("n", "r", "m", "t1", "t2", "t3"),
    Family.INTR_DN_EVEN_A: ("n", "r", "t1", "t2"),
    Family.INTR_DN_EVEN_B: ("n", "r", "m", "t1", "t2", "t3"),
    Family.INTR_DN_EVEN_C: ("n", "r", "m", "t1", "t2", "t4"),
    Family.INTR_A4_A: ("r", "t1", "t2"),
    Family.INTR_A4_B: ("r", "m", "t1", "t2", "t3"),
    Family.INTR_S4: ("r", "m", "t1", "t2", "t3"),
    Family.INTR_A5: ("r", "t1"),
}

# generator names, matched across all actions of one family
GEN_NAMES: dict[Family, tuple[str, ...]] = {
    Family.IMPRIM_CN2_C3: ("d", "sigma123"),
    Family.IMPRIM_CN2_S3: ("d", "sigma123", "sigma12"),
    Family.IMPRIM_CNCNR_C3: ("d1", "d2", "sigma123"),
    Family.IMPRIM_CNCN3_S3: ("d1", "d2", "sigma123", "sigma12"),
    Family.INTR_CYCLIC: ("chi", "g"),
    Family.INTR_DN_ODD: ("chi", "rot", "swap"),
    Family.INTR_DN_EVEN_A: ("chi", "rot", "swap"),
    Family.INTR_DN_EVEN_B: ("chi", "rot", "swap"),
    Family.INTR_DN_EVEN_C: ("chi", "rot", "swap"),
    Family.INTR_A4_A: ("chi", "a", "b"),
    Family.INTR_A4_B: ("chi", "a", "b"),
    Family.INTR_S4: ("chi", "a", "b"),
    Family.INTR_A5: ("chi", "a", "b"),
}


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    n: int = 1
    r: int = 1
    m: int = 0
    s: int = 0
    t1: int = 1
    t2: int = 1
    t3: int = 1
    t4: int = 1

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))

    def params(self) -> dict[str, int]:
        d = asdict(self)
        return {k: d[k] for k in PARAMS.get(self.family, ())}

    def with_weights(self, **w) -> "FamilySpec":
        d = asdict(self)
        d.update(w)
        return FamilySpec(**d)


def _coprime(a: int, b: int) -> bool:
    return math.gcd(a, b) == 1


def validate(spec: FamilySpec) -> list[str]:
    """Parameter violations of ``spec`` (empty when valid)."""
    f = spec.family
    out: list[str] = []
    p = spec.params()
    if f.kind == "P":
        return out
    if "n" in p and spec.n < 1:
        out.append("n must be >= 1")
    if "r" in p and spec.r < 1:
        out.append("r must be >= 1")
    if "m" in p and spec.m < 0:
        out.append("m must be >= 0")
    if out:
        return out
    n, r, m = spec.n, spec.r, spec.m
    if f is Family.IMPRIM_CNCNR_C3:
        if n % r:
            out.append("r does not divide n")
        if (spec.s * spec.s - spec.s + 1) % r:
            out.append("s^2 - s + 1 is not 0 mod r")
    elif f is Family.IMPRIM_CNCN3_S3:
        if n % 3:
            out.append("3 ∤ n")
    elif f is Family.INTR_DN_ODD:
        if n % 2 == 0 or n < 3:
            out.append("n must be odd and >= 3")
        if not _coprime(spec.t2, n):
            out.append("t2 must be prime to n")
        if m >= 1 and spec.t3 % 2 == 0:
            out.append("t3 must be odd")
    elif f in (Family.INTR_DN_EVEN_A, Family.INTR_DN_EVEN_B, Family.INTR_DN_EVEN_C):
        if n % 2:
            out.append("n must be even")
        if f is Family.INTR_DN_EVEN_C and n == 2:
            out.append("n must differ from 2")
        if f is not Family.INTR_DN_EVEN_A and m < 1:
            out.append("m must be >= 1")
        if not _coprime(spec.t2, 2 * n):
            out.append("t2 must be prime to 2n")
        if f is Family.INTR_DN_EVEN_B and spec.t3 % 2 == 0:
            out.append("t3 must be odd")
        if f is Family.INTR_DN_EVEN_C and spec.t4 % 2 == 0:
            out.append("t4 must be odd")
    elif f in (Family.INTR_A4_A, Family.INTR_A4_B):
        if f is Family.INTR_A4_B:
            if m < 1:
                out.append("m must be >= 1")
            if spec.t3 % 3 == 0:
                out.append("t3 must be prime to 3")
    elif f is Family.INTR_S4:
        if spec.t2 % 2 == 0:
            out.append("t2 must be odd")
        if spec.t3 % 2 == 0:
            out.append("t3 must be odd")
    if "t1" in p and not _coprime(spec.t1, r):
        out.append("t1 must be prime to r")
    return out


def normalise(spec: FamilySpec) -> FamilySpec:
    """Pick the smaller root s of s^2 - s + 1 = 0 mod r.

    The other root 1 - s gives the conjugate subgroup sigma12 G sigma12.
    """
    if spec.family is not Family.IMPRIM_CNCNR_C3:
        return spec
    r = spec.r
    s = min(spec.s % r, (1 - spec.s) % r) if r > 1 else 0
    return spec.with_weights(s=s)


def weight_moduli(spec: FamilySpec) -> dict[str, int]:
    """Modulus of each weight parameter of an intransitive family."""
    f, n, r, m = spec.family, spec.n, spec.r, spec.m
    table = {
        Family.INTR_DN_ODD: {"t1": r, "t2": n, "t3": 2 ** m},
        Family.INTR_DN_EVEN_A: {"t1": r, "t2": 2 * n},
        Family.INTR_DN_EVEN_B: {"t1": r, "t2": 2 * n, "t3": 2 ** (m + 1)},
        Family.INTR_DN_EVEN_C: {"t1": r, "t2": 2 * n, "t4": 2 ** (m + 1)},
        Family.INTR_A4_A: {"t1": r, "t2": 3},
        Family.INTR_A4_B: {"t1": r, "t2": 3, "t3": 3 ** (m + 1)},
        Family.INTR_S4: {"t1": r, "t2": 2 ** (m + 1), "t3": 4},
        Family.INTR_A5: {"t1": r},
    }
    return table.get(f, {})


def _lin(a, b, c, d) -> PT:
    """(x1, a x2 + b x3, c x2 + d x3)."""
    return PT([[1, 0, 0], [0, a, b], [0, c, d]])


def _chi(r: int, t1: int) -> PT:
    z = zeta(r, t1)
    return PT.diag(1, z, z)


def s_constants():
    z8 = zeta(8)
    return z8**3 + z8 - 1, z8**3 + z8 + 1


def generators(spec: FamilySpec) -> list[PT]:
    f = spec.family
    n, r, m = spec.n, spec.r, spec.m
    t1, t2, t3, t4 = spec.t1, spec.t2, spec.t3, spec.t4
    s123 = PT.permutation([1, 2, 0])
    s12 = PT.permutation([1, 0, 2])
    if f is Family.IMPRIM_CN2_C3:
        return [PT.diag(zeta(n), 1, 1), s123]
    if f is Family.IMPRIM_CN2_S3:
        return [PT.diag(zeta(n), 1, 1), s123, s12]
    if f is Family.IMPRIM_CNCNR_C3:
        return [PT.diag(zeta(n, r), 1, 1), PT.diag(zeta(n, spec.s), zeta(n), 1), s123]
    if f is Family.IMPRIM_CNCN3_S3:
        return [PT.diag(zeta(n, 3), 1, 1), PT.diag(zeta(n, 2), zeta(n), 1), s123, s12]
    if f is Family.INTR_CYCLIC:
        return [_chi(r, 1), PT.diag(1, zeta(n, r), zeta(n, m))]
    chi = _chi(r, t1)
    if f is Family.INTR_DN_ODD:
        a = zeta(2**m, t3)
        return [chi, PT.diag(1, zeta(n, t2), zeta(n, -t2)), _lin(0, a, a, 0)]
    i4 = zeta(4)
    if f is Family.INTR_DN_EVEN_A:
        return [chi, PT.diag(1, zeta(2 * n, t2), zeta(2 * n, -t2)), _lin(0, i4, i4, 0)]
    if f is Family.INTR_DN_EVEN_B:
        c = zeta(2 ** (m + 1), t3)
        return [chi, PT.diag(1, c * zeta(2 * n, t2), c * zeta(2 * n, -t2)), _lin(0, i4, i4, 0)]
    if f is Family.INTR_DN_EVEN_C:
        c = zeta(2 ** (m + 1), t4) * i4
        return [chi, PT.diag(1, zeta(2 * n, t2), zeta(2 * n, -t2)), _lin(0, c, c, 0)]
    if f in (Family.INTR_A4_A, Family.INTR_A4_B):
        w = zeta(3)
        c = w**t2
        if f is Family.INTR_A4_B:
            c = c * zeta(3 ** (m + 1), t3)
        return [chi, _lin(c * w**2, 0, -c, c * w), _lin(0, 1, -1, 0)]
    if f is Family.INTR_S4:
        s1, s2 = s_constants()
        c = zeta(2 ** (m + 1), t2) * zeta(4, t3)
        return [chi, _lin(-2 * c, c * s1, c * s2, 2 * c), _lin(-s2, -1, s1, s1 + 1)]
    if f is Family.INTR_A5:
        z = zeta(5)
        return [chi, _lin(z**3 + z**4, -(z**4 + 1), z**3, z**2 + z), _lin(0, z**2, -z**3, 0)]
    raise InvalidParams(f"no generator recipe for {f.value}")


def load_primitive(family: Family, order_bound: int = DEFAULT_ORDER_BOUND) -> GroupAction:
    name = Family(family).value.lower() + ".act"
    text = resources.files("cremona").joinpath("data", name).read_text()
    return GroupAction.from_text(text, order_bound)


def build(spec: FamilySpec, order_bound: int = DEFAULT_ORDER_BOUND) -> GroupAction:
    """The action of ``spec`` (validated, then closed lazily on first use)."""
    if spec.family.kind == "P":
        return load_primitive(spec.family, order_bound)
    problems = validate(spec)
    if problems:
        raise InvalidParams("; ".join(problems))
    spec = normalise(spec)
    return GroupAction(generators(spec), GEN_NAMES[spec.family], spec.family.value,
                       spec.params(), order_bound)


def spec_of(action: GroupAction) -> FamilySpec | None:
    """Recover the family spec recorded on an action, if any."""
    if not action.family:
        return None
    return FamilySpec(Family(action.family), **action.params)


def expected_order(spec: FamilySpec) -> int | None:
    """Closed-form order for the imprimitive and primitive families."""
    f, n = spec.family, spec.n
    closed = {
        Family.IMPRIM_CN2_C3: 3 * n * n,
        Family.IMPRIM_CN2_S3: 6 * n * n,
        Family.IMPRIM_CNCNR_C3: 3 * n * n // spec.r,
        Family.IMPRIM_CNCN3_S3: 2 * n * n,
        Family.PRIM_A5: 60,
        Family.PRIM_A6: 360,
        Family.PRIM_PSL27: 168,
        Family.PRIM_HESSIAN: 216,
        Family.PRIM_PSU3F2: 72,
        Family.PRIM_C32C4: 36,
    }
    return closed.get(f)


# -- special pairs ------------------------------------------------------------------


def c3_squared_pair() -> tuple[GroupAction, GroupAction]:
    """The two C3^2 subgroups: diagonal (type I) and with a 3-cycle (type T)."""
    w = zeta(3)
    a = GroupAction([PT.diag(1, w, 1), PT.diag(1, 1, w)], ["a", "b"])
    b = GroupAction([PT.diag(1, w, w**2), PT.permutation([2, 0, 1])], ["a", "b"])
    return a, b


def twisted_a4_pair(n: int = 1) -> tuple[GroupAction, GroupAction]:
    """Isomorphic nonabelian subgroups that are not conjugate in PGL3."""
    w = zeta(3)
    d = PT.diag(zeta(n), 1, 1)
    b = _lin(0, 1, -1, 0)
    g1 = GroupAction([d, _lin(w**2, 0, -1, w), b], ["d", "a", "b"])
    g2 = GroupAction([d, _lin(1, 0, -w, w**2), b], ["d", "a", "b"])
    return g1, g2


# -- normalizer finiteness ------------------------------------------------------------

# fingerprints (order, abelian, element-order statistics) of the groups whose
# transitive actions have an infinite normalizer in the Cremona group
def _exceptional_fingerprints():
    from .groups import iso_type

    reps = [
        FamilySpec(Family.IMPRIM_CN2_C3, n=2),  # A4
        FamilySpec(Family.IMPRIM_CNCNR_C3, n=3, r=3, s=2),  # C3^2
        FamilySpec(Family.IMPRIM_CNCN3_S3, n=3),  # C3 x| S3
        FamilySpec(Family.IMPRIM_CNCNR_C3, n=7, r=7, s=3),  # C7 x| C3
        FamilySpec(Family.PRIM_C32C4),
    ]
    return {iso_type(build(s).group) for s in reps}


_EXCEPTIONAL = None


def normalizer_finite(action: GroupAction, action_type: str | None = None) -> bool:
    """Whether the normalizer of the action in the Cremona group is finite."""
    global _EXCEPTIONAL
    from .classify import action_type as classify_type
    from .groups import iso_type

    tag = action_type or classify_type(action).tag
    if tag == "I":
        return False
    if _EXCEPTIONAL is None:
        _EXCEPTIONAL = _exceptional_fingerprints()
    return iso_type(action.group) not in _EXCEPTIONAL
