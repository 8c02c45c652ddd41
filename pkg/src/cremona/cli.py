"""Command-line front end.

Every subcommand produces an ordered list of ``(key, value)`` pairs.  The
``structured-lines`` format prints them as ``key=value``; ``text`` aligns them
as ``key: value``.  Usage errors exit with 64, computation errors with 70 and
a line naming the exception class.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .action import DEFAULT_ORDER_BOUND, GroupAction
from .cyclo import format_cyclo
from .fileio import FormatError, _header_lines, format_matrix, parse_matrix
from .projgeom import ProjectiveTransform

EX_USAGE = 64
EX_SOFTWARE = 70

CERT_TAG = "# cremona certificate"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    paths: list = field(default_factory=list)
    options: dict = field(default_factory=dict)
    order_bound: int = DEFAULT_ORDER_BOUND
    fmt: str = "text"


@dataclass
class Report:
    pairs: list = field(default_factory=list)
    code: int = 0
    raw: str | None = None

    def add(self, key, value):
        if isinstance(value, bool):
            value = "yes" if value else "no"
        self.pairs.append((key, value))

    def render(self, fmt: str) -> str:
        if fmt == "structured-lines":
            return "".join(f"{k}={v}\n" for k, v in self.pairs)
        width = max((len(k) for k, _ in self.pairs), default=0)
        return "".join(f"{k.ljust(width)} : {v}\n" for k, v in self.pairs)


def fmt_point(p) -> str:
    q = p.normalized
    return "[" + ":".join(format_cyclo(c) for c in q.coords) + "]"


def _load(path, bound) -> GroupAction:
    return GroupAction.load(path, bound)


# -- subcommands ----------------------------------------------------------------------


def cmd_catalog(cfg: RunConfig) -> Report:
    from .catalog import Family, FamilySpec, build, validate

    opts = cfg.options
    try:
        fam = Family(opts["family"].upper())
    except ValueError:
        raise UsageError(f"unknown family {opts['family']!r}") from None
    params = {k: opts[k] for k in ("n", "r", "m", "s", "t1", "t2", "t3", "t4") if opts.get(k) is not None}
    spec = FamilySpec(fam, **params)
    problems = validate(spec)
    if problems:
        raise UsageError("; ".join(problems))
    action = build(spec, cfg.order_bound)
    text = action.to_text()
    rep = Report()
    if opts.get("out"):
        Path(opts["out"]).write_text(text)
        rep.add("family", fam.value)
        rep.add("params", " ".join(f"{k}={v}" for k, v in action.params.items()) or "-")
        rep.add("order", action.order)
        rep.add("written", opts["out"])
    else:
        rep.raw = text
    return rep


def cmd_classify(cfg: RunConfig) -> Report:
    from .classify import action_type, primary_data

    A = _load(cfg.paths[0], cfg.order_bound)
    at = action_type(A)
    rep = Report()
    rep.add("type", at.tag)
    rep.add("order", A.order)
    if at.tag == "I":
        rep.add("witness", fmt_point(at.witness))
        d = primary_data(A)
        rep.add("t", d.t)
        rep.add("chi", f"±{d.chi}" if d.t > 1 else "0")
        rep.add("gbar", d.gbar)
    elif at.tag == "T":
        rep.add("witness", " ".join(fmt_point(p) for p in at.witness) if at.witness else "family")
    else:
        rep.add("witness", "-")
    return rep


def cmd_invariants(cfg: RunConfig) -> Report:
    from .classify import action_type, intransitive_data
    from .groups import iso_type

    A = _load(cfg.paths[0], cfg.order_bound)
    G = A.group
    rep = Report()
    rep.add("order", G.order)
    rep.add("abelian", "yes" if G.is_abelian() else "no")
    stats = iso_type(G)[-1]
    rep.add("element_orders", " ".join(f"{o}:{c}" for o, c in stats))
    tag = action_type(A).tag
    rep.add("type", tag)
    if tag == "I":
        for k, d in enumerate(intransitive_data(A), 1):
            rep.add(f"pair{k}.point", fmt_point(d.fixed_point))
            rep.add(f"pair{k}.line", fmt_point(d.line.form))
            rep.add(f"pair{k}.t", d.t)
            rep.add(f"pair{k}.chi", f"±{d.chi}" if d.t > 1 else "0")
            rep.add(f"pair{k}.gbar", d.gbar)
    return rep


def cmd_burnside(cfg: RunConfig) -> Report:
    from .burnside import burnside_class

    A = _load(cfg.paths[0], cfg.order_bound)
    c = burnside_class(A)
    rep = Report()
    rep.add("symbols", len(c))
    for k, s in enumerate(c.sorted_symbols(), 1):
        rep.add(f"symbol{k}", s.text())
    return rep


def cmd_orbits(cfg: RunConfig) -> Report:
    from .projgeom import general_position, small_orbits

    A = _load(cfg.paths[0], cfg.order_bound)
    bound = cfg.options["max_len"]
    if bound < 1:
        raise UsageError("--max-len must be positive")
    scan = small_orbits(A.group, bound)
    rep = Report()
    rep.add("orbits", len(scan.orbits))
    for k, (pts, length) in enumerate(scan.orbits, 1):
        pos = general_position(pts)
        rep.add(f"orbit{k}.length", length)
        rep.add(f"orbit{k}.general_position", "yes" if pos.general_position else "no")
        rep.add(f"orbit{k}.no_three_collinear", "yes" if pos.no_three_collinear else "no")
        rep.add(f"orbit{k}.on_conic", "yes" if pos.on_conic else "no")
        rep.add(f"orbit{k}.points", " ".join(sorted(fmt_point(p) for p in pts)))
    rep.add("families", len(scan.families))
    for k, fam in enumerate(scan.families, 1):
        rep.add(f"family{k}.generic_length", fam.generic_length)
    return rep


def _read_certificate(text: str):
    """(chain, psi generator matrices, mode) from a certificate file."""
    from .ratmaps import RationalMap

    head, *blocks = text.split("\nmap:")
    psi = []
    nmaps = None
    cond = None
    mode = "strict"
    for lineno, key, value in _header_lines(head):
        if key == "mode":
            if value not in ("strict", "up_to_aut"):
                raise FormatError(f"line {lineno}: unknown mode {value!r}")
            mode = value
        elif key == "maps":
            nmaps = int(value)
        elif key == "psi_conductor":
            cond = int(value)
        elif key.startswith("psi "):
            if cond is None:
                raise FormatError(f"line {lineno}: psi_conductor must come first")
            psi.append(ProjectiveTransform(parse_matrix(value, cond), cond))
        elif key != "answer":
            raise FormatError(f"line {lineno}: unknown key {key!r}")
    chain = []
    for block in blocks:
        body = block.split("\n", 1)[1] if "\n" in block else ""
        chain.append(RationalMap.from_text(body))
    if nmaps is None or nmaps != len(chain):
        raise FormatError("certificate map count does not match its sections")
    return chain, psi, mode


def write_certificate(verdict, A: GroupAction) -> str:
    from .ratmaps import RationalMap, conjugate_action

    chain = list(verdict.chain)
    if verdict.conjugator is not None:
        chain = [RationalMap.from_transform(verdict.conjugator)]
    cur = A
    for f in chain:
        cur = conjugate_action(f, cur)
    n = math.lcm(*(g.n for g in cur.generators))
    lines = [CERT_TAG, f"answer: {verdict.answer.value}", f"mode: {verdict.mode}", f"maps: {len(chain)}", f"psi_conductor: {n}"]
    for name, g in zip(A.names, cur.generators):
        lines.append(f"psi {name}: {format_matrix(g.rows, n)}")
    out = "\n".join(lines) + "\n"
    for k, f in enumerate(chain, 1):
        out += f"map: {k}\n" + f.to_text()
    return out


def check_certificate(text: str, A: GroupAction, B: GroupAction) -> tuple[bool, str]:
    """Re-verify a certificate.

    The chain must carry A onto the psi images. In strict mode those are B's own
    generators; up to automorphisms they need only generate B's group.
    """
    from .ratmaps import NotRegularizable, conjugate_action

    chain, psi, mode = _read_certificate(text)
    if len(psi) != len(A.generators):
        return False, "psi lists the wrong number of generators"
    cur = A
    for k, f in enumerate(chain, 1):
        try:
            cur = conjugate_action(f, cur)
        except NotRegularizable as exc:
            return False, f"map {k} is not regularizable ({exc})"
    for name, got, want in zip(A.names, cur.generators, psi):
        if got != want:
            return False, f"chain does not send {name} to its psi image"
    if mode == "strict":
        for name, got, want in zip(A.names, psi, B.generators):
            if got != want:
                return False, f"psi image of {name} is not the target generator"
        return True, "chain verified"
    G = B.group
    if not all(g in G for g in psi):
        return False, "a psi image lies outside the target group"
    sub = GroupAction(psi, A.names, order_bound=B.order_bound)
    if sub.order != G.order:
        return False, "psi images do not generate the target group"
    return True, "chain verified"


def cmd_verify_map(cfg: RunConfig) -> Report:
    from .ratmaps import NotRegularizable, RationalMap, equivariance_certificate

    text = Path(cfg.paths[0]).read_text()
    A = _load(cfg.paths[1], cfg.order_bound)
    B = _load(cfg.paths[2], cfg.order_bound) if len(cfg.paths) > 2 else A
    rep = Report()
    if text.startswith(CERT_TAG):
        ok, why = check_certificate(text, A, B)
        rep.add("kind", "certificate")
        rep.add("verified", "yes" if ok else "no")
        rep.add("reason", why)
        rep.code = 0 if ok else 1
        return rep
    f = RationalMap.from_text(text)
    rep.add("kind", "map")
    rep.add("degree", f.degree)
    try:
        cert = equivariance_certificate(f, A, B)
    except NotRegularizable as exc:
        rep.add("verified", "no")
        rep.add("reason", f"NotRegularizable: {exc}")
        rep.code = 1
        return rep
    if not cert:
        rep.add("verified", "no")
        rep.add("failed_generator", A.names[cert.generator])
        rep.add("reason", cert.reason)
        rep.code = 1
        return rep
    rep.add("verified", "yes")
    rep.add("inner", "yes" if cert.inner else "no")
    for name, w in zip(A.names, cert.words):
        rep.add(f"psi.{name}", " ".join(B.names[i] for i in w) or "1")
    return rep


def cmd_decide(cfg: RunConfig) -> Report:
    from .decide import Answer, decide_cr2

    A = _load(cfg.paths[0], cfg.order_bound)
    B = _load(cfg.paths[1], cfg.order_bound)
    mode = "up_to_aut" if cfg.options.get("up_to_aut") else "strict"
    v = decide_cr2(A, B, mode)
    rep = Report()
    for line in v.lines():
        k, val = line.split("=", 1)
        rep.add(k, val)
    path = cfg.options.get("emit_certificate")
    if path:
        if v.conjugator is not None or (v.chain and v.verified):
            Path(path).write_text(write_certificate(v, A))
            rep.add("certificate", path)
        else:
            rep.add("certificate", "none")
    rep.code = {Answer.PGL3: 0, Answer.CR2: 0, Answer.NO: 1, Answer.OUT: 2}[v.answer]
    return rep


def cmd_normalizer_finite(cfg: RunConfig) -> Report:
    from .catalog import normalizer_finite
    from .classify import action_type

    A = _load(cfg.paths[0], cfg.order_bound)
    tag = action_type(A).tag
    rep = Report()
    rep.add("type", tag)
    rep.add("finite", normalizer_finite(A, tag))
    return rep


def cmd_count_actions(cfg: RunConfig) -> Report:
    from .decide import count_actions

    A = _load(cfg.paths[0], cfg.order_bound)
    level = cfg.options["level"]
    rep = Report()
    rep.add("level", level)
    rep.add("count", count_actions(A, level))
    return rep


COMMANDS = {
    "catalog": cmd_catalog,
    "classify": cmd_classify,
    "invariants": cmd_invariants,
    "burnside": cmd_burnside,
    "orbits": cmd_orbits,
    "verify-map": cmd_verify_map,
    "decide": cmd_decide,
    "normalizer-finite": cmd_normalizer_finite,
    "count-actions": cmd_count_actions,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cremona", description="Finite linear actions on the plane up to Cremona conjugacy.")
    p.add_argument("--order-bound", type=int, default=DEFAULT_ORDER_BOUND,
                   help="largest group order enumerated before giving up")
    p.add_argument("--format", choices=["text", "structured-lines"], default="text")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("catalog", help="write a catalog action")
    c.add_argument("family")
    for k in ("n", "r", "m", "s", "t1", "t2", "t3", "t4"):
        c.add_argument(f"--{k}", type=int)
    c.add_argument("--out")

    for name, text in (
        ("classify", "type and intransitive data"),
        ("invariants", "group-theoretic invariants"),
        ("burnside", "incompressible Burnside symbols"),
        ("normalizer-finite", "whether the Cremona normalizer is finite"),
    ):
        sub.add_parser(name, help=text).add_argument("action")

    o = sub.add_parser("orbits", help="orbits of small length")
    o.add_argument("action")
    o.add_argument("--max-len", type=int, default=8)

    v = sub.add_parser("verify-map", help="check a map or a certificate against actions")
    v.add_argument("map")
    v.add_argument("action")
    v.add_argument("target", nargs="?")

    d = sub.add_parser("decide", help="decide Cremona conjugacy of two actions")
    d.add_argument("first")
    d.add_argument("second")
    d.add_argument("--up-to-aut", action="store_true")
    d.add_argument("--emit-certificate")

    n = sub.add_parser("count-actions", help="actions with the same image, up to conjugacy")
    n.add_argument("action")
    n.add_argument("--level", choices=["regular", "birational"], default="regular")
    return p


def config_from_args(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    if not args.command:
        raise UsageError("a subcommand is required")
    if args.order_bound < 1:
        raise UsageError("--order-bound must be positive")
    ns = vars(args)
    path_keys = {"catalog": [], "verify-map": ["map", "action", "target"], "decide": ["first", "second"]}
    keys = path_keys.get(args.command, ["action"])
    paths = [ns[k] for k in keys if ns.get(k)]
    for pth in paths:
        if not Path(pth).is_file():
            raise UsageError(f"cannot read {pth}")
    skip = set(keys) | {"command", "order_bound", "format"}
    options = {k: v for k, v in ns.items() if k not in skip}
    return RunConfig(args.command, paths, options, args.order_bound, args.format)


def run(cfg: RunConfig) -> Report:
    return COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = config_from_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        rep = run(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except Exception as exc:  # surfaced with the module's error name
        print(f"error={type(exc).__name__}: {exc}", file=sys.stderr)
        return EX_SOFTWARE
    sys.stdout.write(rep.raw if rep.raw is not None else rep.render(cfg.fmt))
    return rep.code


if __name__ == "__main__":
    sys.exit(main())
