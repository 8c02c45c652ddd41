"""Regenerate the bundled primitive-group action files.

Run from the repository root:  python3 scripts/make_primitive_data.py
Each group is closed and its order checked before the file is written.
"""

from pathlib import Path

from cremona.action import GroupAction
from cremona.cyclo import Cyclo, zeta
from cremona.projgeom import OrderBoundExceeded, ProjectiveTransform as PT, close_group

OUT = Path(__file__).resolve().parent.parent / "src" / "cremona" / "data"

SIGMA = PT.permutation([1, 2, 0])


def a5():
    z = zeta(5)
    sqrt5 = z - z**2 - z**3 + z**4
    mu1 = (sqrt5 - 1) / 2
    mu2 = (-sqrt5 - 1) / 2
    h = Cyclo.rational(1, 5) / 2
    s3 = PT([[-h, mu2 * h, mu1 * h], [mu2 * h, mu1 * h, -h], [mu1 * h, -h, mu2 * h]])
    return [SIGMA, PT.diag(1, -1, -1), s3], ["sigma", "d", "s"], 60


def a6():
    gens, names, _ = a5()
    w = zeta(3)
    s4 = PT([[-1, 0, 0], [0, 0, -w], [0, -w**2, 0]])
    return gens + [s4], names + ["u"], 360


def klein():
    b = zeta(7)
    sq = (b + b**2 + b**4) - (b**3 + b**5 + b**6)  # sqrt(-7)
    c = -1 / sq
    x, y, v = b**4 - b**3, b**2 - b**5, b - b**6
    r = PT([[c * x, c * y, c * v], [c * y, c * v, c * x], [c * v, c * x, c * y]])
    return [PT.diag(b, b**2, b**4), SIGMA, r], ["d", "sigma", "r"], 168


def _hesse():
    w = zeta(3)
    # scaled by 1/(1 + 2w) so that t^4 = 1 on the nose
    c = 1 / (1 + 2 * w)
    t = PT([[c, c, c], [c, c * w, c * w**2], [c, c * w**2, c * w]])
    return w, t


def hessian():
    w, t = _hesse()
    return [SIGMA, PT.diag(1, w, w**2), t, PT.diag(1, 1, w)], ["sigma", "d", "t", "u"], 216


def c32c4():
    w, t = _hesse()
    return [SIGMA, PT.diag(1, w, w**2), t], ["sigma", "d", "t"], 36


def psu3():
    w, t = _hesse()
    base = [SIGMA, PT.diag(1, w, w**2), t]
    hess = close_group(hessian()[0])
    for x in hess.elements:
        if x.projective_order() != 4:
            continue
        try:
            if close_group(base + [x], bound=73).order == 72:
                return base + [x], ["sigma", "d", "t", "q"], 72
        except OrderBoundExceeded:
            continue
    raise RuntimeError("no order-72 extension found")


GROUPS = {
    "PRIM_A5": a5,
    "PRIM_A6": a6,
    "PRIM_PSL27": klein,
    "PRIM_HESSIAN": hessian,
    "PRIM_PSU3F2": psu3,
    "PRIM_C32C4": c32c4,
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for fam, make in GROUPS.items():
        gens, names, order = make()
        got = close_group(gens).order
        if got != order:
            raise SystemExit(f"{fam}: closure has order {got}, expected {order}")
        text = GroupAction(gens, names, fam).to_text()
        (OUT / f"{fam.lower()}.act").write_text(text)
        print(f"{fam}: order {got}")


if __name__ == "__main__":
    main()
