"""Flat text formats for actions and rational maps.

Action file::

    conductor: 12
    dim: 3
    family: INTR_DN_EVEN_A          (optional)
    params: n=4 r=3 t1=1            (optional)
    gen chi: [[1, 0, 0], [0, z^4, 0], [0, 0, z^4]]

Map file::

    conductor: 3
    deg: 2
    comp_1: 1 * x2^1 x3^1
    comp_2: ...
    comp_3: ...

Coefficients use the ``z`` grammar of :func:`cremona.cyclo.parse_cyclo`;
blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import math
import re
from pathlib import Path

from .cyclo import Cyclo, format_cyclo, parse_cyclo
from .projgeom import ProjectiveTransform


class FormatError(ValueError):
    pass


def _header_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise FormatError(f"line {lineno}: expected 'key: value'")
        key, value = line.split(":", 1)
        yield lineno, key.strip(), value.strip()


def parse_params(text: str) -> dict[str, int]:
    out = {}
    for tok in text.split():
        if "=" not in tok:
            raise FormatError(f"bad parameter {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = int(v)
    return out


def format_params(params: dict[str, int]) -> str:
    return " ".join(f"{k}={v}" for k, v in params.items())


def parse_matrix(text: str, n: int):
    s = text.strip()
    if not (s.startswith("[[") and s.endswith("]]")):
        raise FormatError(f"matrix must look like [[..], ..]: {text!r}")
    rows = []
    for chunk in re.split(r"\]\s*,\s*\[", s[2:-2]):
        rows.append([parse_cyclo(e, n) for e in chunk.split(",")])
    if any(len(r) != len(rows) for r in rows):
        raise FormatError("matrix is not square")
    return rows


def format_matrix(rows, n: int) -> str:
    return "[" + ", ".join(
        "[" + ", ".join(format_cyclo(x.embed(n)) for x in r) + "]" for r in rows
    ) + "]"


def read_action(text: str) -> dict:
    """Parse an action file into conductor, dim, generator list and metadata."""
    info = {"conductor": None, "dim": 2, "family": None, "params": {}, "generators": []}
    for lineno, key, value in _header_lines(text):
        try:
            if key == "conductor":
                info["conductor"] = int(value)
            elif key == "dim":
                info["dim"] = int(value)
            elif key == "family":
                info["family"] = value
            elif key == "params":
                info["params"] = parse_params(value)
            elif key.startswith("gen"):
                if info["conductor"] is None:
                    raise FormatError("conductor must precede generators")
                name = key[3:].strip() or f"g{len(info['generators']) + 1}"
                rows = parse_matrix(value, info["conductor"])
                if len(rows) != info["dim"] + 1:
                    raise FormatError(f"generator {name} has wrong size for dim {info['dim']}")
                info["generators"].append((name, ProjectiveTransform(rows, info["conductor"])))
            else:
                raise FormatError(f"unknown key {key!r}")
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, FormatError):
                raise FormatError(f"line {lineno}: {exc}") from None
            raise FormatError(f"line {lineno}: {exc}") from exc
    if info["conductor"] is None or not info["generators"]:
        raise FormatError("action file needs a conductor and at least one generator")
    return info


def write_action(generators, names=None, family=None, params=None) -> str:
    n = math.lcm(*(g.n for g in generators))
    names = names or [f"g{i + 1}" for i in range(len(generators))]
    lines = [f"conductor: {n}", f"dim: {generators[0].dim}"]
    if family:
        lines.append(f"family: {family}")
    if params:
        lines.append(f"params: {format_params(params)}")
    for name, g in zip(names, generators):
        lines.append(f"gen {name}: {format_matrix(g.rows, n)}")
    return "\n".join(lines) + "\n"


def load_action_file(path) -> dict:
    return read_action(Path(path).read_text())


# -- maps -------------------------------------------------------------------------

_MONO = re.compile(r"x([123])\s*(?:\^\s*(\d+))?")
_COEF = r"\d+(?:/\d+)?\s*\*\s*z(?:\s*\^\s*\d+)?|\d+(?:/\d+)?|z(?:\s*\^\s*\d+)?"
_TERM = re.compile(
    r"\s*([+-])?\s*(?:\(([^()]*)\)|(" + _COEF + r"))?\s*(\*)?\s*((?:x[123](?:\s*\^\s*\d+)?\s*)*)"
)


def parse_polynomial(text: str, n: int) -> dict:
    """``c * x1^a x2^b x3^c + ...`` to a dict {(a, b, c): Cyclo}.

    Coefficients are wrapped in parentheses when they have several terms:
    ``(1 + z) * x1^2``.
    """
    out: dict[tuple, Cyclo] = {}
    s = text.strip()
    if s == "0":
        return out
    pos = 0
    term_re = _TERM
    first = True
    while pos < len(s):
        m = term_re.match(s, pos)
        if not m or m.end() == pos:
            raise FormatError(f"cannot parse polynomial at offset {pos}: {text!r}")
        sign, paren, simple, _star, monos = m.groups()
        if sign is None and not first:
            raise FormatError(f"missing operator at offset {pos}: {text!r}")
        coeff_text = paren if paren is not None else simple
        c = parse_cyclo(coeff_text, n) if coeff_text else Cyclo.one(n)
        if sign == "-":
            c = -c
        exps = [0, 0, 0]
        for v, e in _MONO.findall(monos or ""):
            exps[int(v) - 1] += int(e) if e else 1
        key = tuple(exps)
        total = out.get(key, Cyclo.zero(n)) + c
        if total:
            out[key] = total
        else:
            out.pop(key, None)
        pos = m.end()
        first = False
    return out


def format_polynomial(poly: dict, n: int) -> str:
    if not poly:
        return "0"
    out = []
    for exps in sorted(poly, reverse=True):
        ctext = format_cyclo(poly[exps].embed(n))
        sign = "+"
        if ctext.startswith("-") and " " not in ctext:
            sign, ctext = "-", ctext[1:]
        elif " " in ctext:
            ctext = f"({ctext})"
        mono = " ".join(f"x{i + 1}^{e}" for i, e in enumerate(exps) if e)
        body = f"{ctext} * {mono}" if mono else ctext
        if out:
            out.append(f"{sign} {body}")
        else:
            out.append(("-" if sign == "-" else "") + body)
    return " ".join(out)


def read_map(text: str) -> dict:
    info = {"conductor": None, "deg": None, "components": [None, None, None]}
    for lineno, key, value in _header_lines(text):
        if key == "conductor":
            info["conductor"] = int(value)
        elif key == "deg":
            info["deg"] = int(value)
        elif key.startswith("comp_"):
            if info["conductor"] is None:
                raise FormatError(f"line {lineno}: conductor must come first")
            i = int(key[5:]) - 1
            if i not in (0, 1, 2):
                raise FormatError(f"line {lineno}: component index out of range")
            info["components"][i] = parse_polynomial(value, info["conductor"])
        else:
            raise FormatError(f"line {lineno}: unknown key {key!r}")
    if info["conductor"] is None or any(c is None for c in info["components"]):
        raise FormatError("map file needs a conductor and three components")
    return info


def write_map(components, n: int, deg: int) -> str:
    lines = [f"conductor: {n}", f"deg: {deg}"]
    for i, c in enumerate(components, 1):
        lines.append(f"comp_{i}: {format_polynomial(c, n)}")
    return "\n".join(lines) + "\n"
