"""Command-line front end.

Every result is written to stdout as one JSON object per line with sorted
keys.  Each record carries the command, the ring, the bounds in force and the
tool version, so identical invocations give byte-identical output.

Exit codes: 0 ok, 1 a check failed, 2 usage or config error, 3 bound exceeded.

Ring specs::

    exterior, exterior(n), cube, cube(n,m), cube-bar(n,m), rado, epsilon,
    f2[x:1,y:1]/(x*y)

Element syntax (sums with +, products with *, powers with ^)::

    exterior, rado   x{0,2}  x3 (= x{3})
    cube             y0^2*y1  x3 (the element y_3 + y_2^2)
    epsilon          x[w^2]^2*x[1]
    presentations    generator names, e.g. x*y^2
    any ring         1, and 0@d for the zero of degree d
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__, baer, jring, ordinals, rootalg
from .adjust import PresentedRing, adjust_step_report
from .engine import BoundError, Element, RingEngine, hilbert
from .ideals import ann, conductor, dann_check, ideal_span, poincare_check, socle, step_check
from .zoo.cube import Cube
from .zoo.epsilon import Epsilon, check_epsilon_witness, epsilon_witness
from .zoo.exterior import Exterior
from .zoo.rado import Rado, check_rado_witness, rado_witness

DEFAULT_DMAX = 16
# refuse bounds whose degreewise tables cannot fit in memory
MAX_DMAX = 4096
ENV_DMAX = "INJRING_DMAX"

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# -- ring and element syntax --------------------------------------------------


class Ring:
    """A resolved ring spec: the engine plus, for presentations, the presentation."""

    def __init__(self, spec: str, engine: RingEngine, presented: PresentedRing | None = None):
        self.spec = spec
        self.engine = engine
        self.presented = presented


def parse_ring(spec: str, dmax: int) -> Ring:
    s = spec.strip()
    if dmax < 0:
        raise UsageError("dmax must be non-negative")
    if dmax > MAX_DMAX:
        raise BoundError(f"dmax={dmax} exceeds the command-line limit {MAX_DMAX}")
    if s.startswith("f2["):
        pr = PresentedRing.parse(s, dmax)
        return Ring(s, pr.engine, pr)
    m = re.fullmatch(r"([a-z-]+)\s*(?:\(([\d\s,]*)\))?", s)
    if not m:
        raise UsageError(f"unknown ring spec {spec!r}")
    name = m.group(1)
    args = [int(a) for a in m.group(2).split(",")] if m.group(2) else []
    if name == "exterior" and len(args) <= 1:
        return Ring(s, Exterior(dmax, *args))
    if name == "cube" and not args:
        return Ring(s, Cube(dmax))
    if name in ("cube", "cube-bar") and len(args) == 2:
        return Ring(s, Cube(dmax, args[0], args[1], bar=name == "cube-bar"))
    if name == "rado" and not args:
        return Ring(s, Rado(dmax))
    if name == "epsilon" and not args:
        return Ring(s, Epsilon(dmax))
    raise UsageError(f"unknown ring spec {spec!r}")


def split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside (), [] and {}."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _atom(ring: Ring, text: str) -> Element:
    eng = ring.engine
    if text == "1":
        return eng.unit()
    m = re.fullmatch(r"0@(-?\d+)", text)
    if m:
        return eng.zero(int(m.group(1)))
    if ring.presented is not None:
        if text not in ring.presented.free._names:
            raise UsageError(f"unknown generator {text!r}")
        return ring.presented.gen(text)
    if isinstance(eng, (Exterior, Rado)):
        m = re.fullmatch(r"x\{([\d\s,]*)\}", text)
        if m:
            idx = [int(i) for i in m.group(1).split(",") if i.strip()]
            return eng.x(*idx)
        m = re.fullmatch(r"x(\d+)", text)
        if m:
            return eng.x(int(m.group(1)))
    elif isinstance(eng, Cube):
        m = re.fullmatch(r"([xy])(\d+)", text)
        if m:
            k = int(m.group(2))
            return eng.y(k) if m.group(1) == "y" else eng.x(k)
    elif isinstance(eng, Epsilon):
        m = re.fullmatch(r"x\[(.+)\]", text)
        if m:
            return eng.x(ordinals.parse_ordinal(m.group(1)))
    raise UsageError(f"cannot parse {text!r} as an element of {eng.name}")


def parse_element(ring: Ring, text: str, degree: int | None = None) -> Element:
    text = text.strip()
    if text == "0":
        if degree is None:
            raise UsageError("write the zero element as 0@d")
        return ring.engine.zero(degree)
    total = None
    for term in split_top(text, "+"):
        if not term:
            raise UsageError(f"empty term in {text!r}")
        prod = None
        for fac in split_top(term, "*"):
            pieces = split_top(fac, "^")
            if len(pieces) > 2 or not pieces[0]:
                raise UsageError(f"bad factor {fac!r}")
            a = _atom(ring, pieces[0])
            if len(pieces) == 2:
                a = a ** int(pieces[1])
            prod = a if prod is None else prod * a
        total = prod if total is None else total + prod
    assert total is not None
    return total


def parse_elements(ring: Ring, text: str) -> list[Element]:
    return [parse_element(ring, t) for t in split_top(text, ",") if t]


def _parse_pair(ring: Ring, u_text: str, v_text: str, d: int) -> tuple[baer.TestPair, list[str]]:
    u = parse_elements(ring, u_text)
    vs = split_top(v_text, ",")
    if len(vs) != len(u):
        raise UsageError("u and v must have the same length")
    v, notes = [], []
    for a, t in zip(u, vs):
        b = parse_element(ring, t, a.degree + d)
        if not b.coords and b.degree != a.degree + d:
            # a zero entry has no intrinsic degree; take the one the pair needs
            notes.append(f"zero entry {t!r} read as 0@{a.degree + d}")
            b = ring.engine.zero(a.degree + d)
        v.append(b)
    return baer.TestPair(u, v, d), notes


# -- output -------------------------------------------------------------------


class Emitter:
    def __init__(self, command: str, ring: str | None, bounds: dict, out=None):
        self.command = command
        self.ring = ring
        self.bounds = bounds
        self.out = out or sys.stdout

    def __call__(self, **payload):
        rec = {
            "command": self.command,
            "bounds": self.bounds,
            "provenance": {"tool": "injring", "version": __version__},
        }
        if self.ring is not None:
            rec["ring"] = self.ring
        rec.update(payload)
        self.out.write(json.dumps(rec, sort_keys=True, separators=(",", ":"), default=str) + "\n")


def _slice_record(ideal, elements: bool) -> dict:
    out = {"dims": ideal.dims()}
    if elements:
        out["basis"] = {str(e): [str(x) for x in ideal.elements(e)] for e in sorted(ideal.slices)}
    return out


# -- subcommands --------------------------------------------------------------


def cmd_hilbert(a, ring, emit):
    emit(hilbert=hilbert(ring.engine, a.dmax))
    return EXIT_OK


def cmd_basis(a, ring, emit):
    eng = ring.engine
    degrees = [a.degree] if a.degree is not None else range(0, a.dmax + 1)
    for d in degrees:
        emit(degree=d, basis=[eng.format_label(lab) for lab in eng.basis(d)])
    return EXIT_OK


def cmd_mul(a, ring, emit):
    items = [parse_element(ring, t) for t in a.elements]
    out = items[0]
    for x in items[1:]:
        out = out * x
    emit(factors=[str(x) for x in items], product=str(out), degree=out.degree)
    return EXIT_OK


def cmd_ann(a, ring, emit):
    gens = parse_elements(ring, a.gens)
    emit(gens=[str(g) for g in gens], **_slice_record(ann(ring.engine, gens), a.elements))
    return EXIT_OK


def cmd_dann(a, ring, emit):
    gens = parse_elements(ring, a.gens)
    rep = dann_check(ring.engine, gens, a.upto)
    emit(gens=[str(g) for g in gens], **rep.as_record())
    return EXIT_OK if rep.equal else EXIT_CHECK


def cmd_conductor(a, ring, emit):
    gens = parse_elements(ring, a.gens)
    x = parse_element(ring, a.element)
    res = conductor(ideal_span(ring.engine, gens), x)
    emit(gens=[str(g) for g in gens], element=str(x), **_slice_record(res, a.elements))
    return EXIT_OK


def cmd_socle(a, ring, emit):
    emit(**_slice_record(socle(ring.engine), True))
    return EXIT_OK


def cmd_poincare(a, ring, emit):
    rep = poincare_check(ring.engine)
    emit(**rep.as_record())
    return EXIT_OK if rep.passed else EXIT_CHECK


def cmd_classify_pair(a, ring, emit):
    tp, notes = _parse_pair(ring, a.u, a.v, a.d)
    for n in notes:
        print(f"note: {n}", file=sys.stderr)
    res = baer.classify(tp, ring.engine, a.dmax)
    emit(pair=tp.describe(), **baer.classification_record(res))
    return EXIT_OK


def cmd_bad_pairs(a, ring, emit):
    bad = baer.enumerate_bad_pairs(ring.engine, a.weight, a.dmax)
    for tp in bad:
        emit(pair=tp.describe(), result=f"BadUpTo({a.dmax})")
    emit(summary=True, count=len(bad))
    return EXIT_OK


def cmd_adjust(a, ring, emit):
    if ring.presented is None:
        raise UsageError("adjust needs a presentation such as f2[x:1,y:1]/(x*y)")
    cur = ring.presented
    ok = True
    for i in range(a.steps):
        k = a.start + i
        cur, rep = adjust_step_report(cur, k, a.m, a.slack)
        ok = ok and rep.all_good_after
        emit(stage=i + 1, presentation=cur.describe(), **rep.as_record())
    return EXIT_OK if ok else EXIT_CHECK


def cmd_syzygy_check(a, ring, emit):
    cube = Cube(a.dmax)
    r = Ring("cube", cube)
    u = parse_elements(r, a.u)
    rep = step_check(u, a.p, a.dmax)
    emit(u=[str(x) for x in u], **rep.as_record())
    return EXIT_OK if rep.holds else EXIT_CHECK


def _labels(ring: Ring, text: str) -> list:
    out = []
    for x in parse_elements(ring, text):
        labs = x.labels()
        if len(labs) != 1:
            raise UsageError(f"{x} is not a monomial")
        out.append(labs[0])
    return out


def cmd_rado_witness(a, ring, emit):
    r = Ring("rado", Rado(a.dmax))
    gens = _labels(r, a.gens)
    target = _labels(r, a.target)[0]
    n = rado_witness(gens, target)
    if n is None:
        emit(target=a.target, witness=None, reason="target lies in the ideal")
        return EXIT_CHECK
    ok = check_rado_witness(gens, target, n)
    emit(target=a.target, witness=n, verified=ok)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_epsilon_witness(a, ring, emit):
    r = Ring("epsilon", Epsilon(a.dmax))
    gens = _labels(r, a.gens)
    target = _labels(r, a.target)[0]
    ks = epsilon_witness(gens, target)
    if ks is None:
        emit(target=a.target, witness=None, reason="target lies in the ideal")
        return EXIT_CHECK
    ok = check_epsilon_witness(gens, target, ks)
    emit(target=a.target, witness=[ordinals.format_ordinal(k) for k in ks], verified=ok)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_ordinal(a, ring, emit):
    P = ordinals.parse_ordinal
    fmt = ordinals.format_ordinal
    if a.op == "delta":
        x = P(a.args[0])
        emit(op="delta", ordinal=fmt(x), delta=ordinals.delta(x))
    elif a.op == "phi":
        x = P(a.args[0])
        emit(op="phi", ordinal=fmt(x), word=ordinals.phi_word(x))
    elif a.op == "decode":
        emit(op="decode", word=a.args[0], ordinal=fmt(ordinals.decode_phi(a.args[0])))
    elif a.op == "mu":
        x, y = P(a.args[0]), P(a.args[1])
        emit(op="mu", a=fmt(x), b=fmt(y), mu=ordinals.mu(x, y))
    elif a.op == "extend":
        J = sorted({P(t) for t in a.args}, reverse=True)
        nu = {}
        for item in a.nu or []:
            k, _, v = item.partition("=")
            nu[P(k)] = int(v)
        w = ordinals.extension_witness(J, nu)
        emit(op="extend", J=[fmt(j) for j in J], nu={fmt(k): v for k, v in nu.items()}, witness=fmt(w),
             mu={fmt(j): ordinals.mu(w, j) for j in J})
    else:
        raise UsageError(f"unknown ordinal operation {a.op!r}")
    return EXIT_OK


def cmd_root(a, ring, emit):
    S = lambda t: rootalg.parse_series(t, a.prime)  # noqa: E731
    op = a.op
    if op == "mul":
        x, y = S(a.args[0]), S(a.args[1])
        emit(op=op, product=str(rootalg.root_mul(x, y)))
    elif op == "delta":
        d = rootalg.root_delta(S(a.args[0]))
        emit(op=op, delta="inf" if d == rootalg.INF else str(d))
    elif op == "lambda":
        emit(op=op, t=str(Fraction(a.t)), result=str(rootalg.lambda_t(S(a.args[0]), Fraction(a.t))))
    elif op == "invert":
        emit(op=op, inverse=str(rootalg.root_inverse(S(a.args[0]))))
    elif op == "nilpotency":
        emit(op=op, index=rootalg.root_nilpotency_index(S(a.args[0])))
    elif op == "classify":
        emit(op=op, ideal=rootalg.classify_ideal([S(t) for t in a.args]).as_record())
    elif op == "ann":
        ideal = rootalg.SymbolicIdeal(Fraction(a.t), a.closed)
        emit(op=op, ideal=ideal.as_record(), ann=rootalg.symbolic_ann(ideal).as_record())
    elif op == "witness":
        emit(op=op, t=str(Fraction(a.t)), witness=str(rootalg.baer_witness(Fraction(a.t), S(a.args[0]))))
    else:
        raise UsageError(f"unknown root operation {op!r}")
    return EXIT_OK


_JTERM = re.compile(r"(?:(-?\d+)\*)?(eta|zeta|alpha)\(([^)]*)\)")


def parse_jelem(text: str, p: int, M: int) -> jring.JElem:
    """``eta(3)``, ``zeta(1/3)``, ``alpha(2)``, ``2*alpha(-1)`` or ``0@d``."""
    text = text.strip()
    m = re.fullmatch(r"0@(-?\d+)", text)
    if m:
        return jring.j_zero(int(m.group(1)), p, M)
    m = _JTERM.fullmatch(text.replace(" ", ""))
    if not m:
        raise UsageError(f"cannot parse {text!r} as an element of the J-ring")
    c = int(m.group(1) or 1)
    kind, arg = m.group(2), m.group(3)
    if kind == "eta":
        return jring.eta(c * int(arg), p, M)
    if kind == "zeta":
        return jring.zeta_inv(c * Fraction(arg), p, M)
    return jring.alpha(int(arg), p, M, c)


def cmd_jring(a, ring, emit):
    p, M = a.prime, a.trunc
    if a.op == "group":
        emit(op="group", **jring.j_degree_group(a.degree, p, M).as_record())
        return EXIT_OK
    if a.op == "mul":
        x, y = parse_jelem(a.args[0], p, M), parse_jelem(a.args[1], p, M)
        z = jring.j_mul(x, y)
        emit(op="mul", factors=[str(x), str(y)], product=str(z), degree=z.degree)
        return EXIT_OK
    if a.op == "duality":
        if a.k is not None:
            degrees = [a.k]
        else:
            degrees = sorted({0, -2} | {2 * (p - 1) * k - 1 for k in range(-a.range, a.range + 1) if k})
        ok = True
        for d in degrees:
            rep = jring.pontrjagin_check(d, p, M)
            ok = ok and rep.passed
            emit(op="duality", **rep.as_record())
        return EXIT_OK if ok else EXIT_CHECK
    raise UsageError(f"unknown jring operation {a.op!r}")


# -- argument handling --------------------------------------------------------


COMMANDS = {
    "hilbert": cmd_hilbert,
    "basis": cmd_basis,
    "mul": cmd_mul,
    "ann": cmd_ann,
    "dann": cmd_dann,
    "conductor": cmd_conductor,
    "socle": cmd_socle,
    "poincare": cmd_poincare,
    "classify-pair": cmd_classify_pair,
    "bad-pairs": cmd_bad_pairs,
    "adjust": cmd_adjust,
    "syzygy-check": cmd_syzygy_check,
    "rado-witness": cmd_rado_witness,
    "epsilon-witness": cmd_epsilon_witness,
    "ordinal": cmd_ordinal,
    "root": cmd_root,
    "jring": cmd_jring,
}

# commands that do not take --ring
RINGLESS = {"syzygy-check", "rado-witness", "epsilon-witness", "ordinal", "root", "jring"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default values for any flag")
    common.add_argument("--dmax", type=int, default=None, help=f"degree bound (default ${ENV_DMAX} or {DEFAULT_DMAX})")
    ringed = argparse.ArgumentParser(add_help=False, parents=[common])
    ringed.add_argument("--ring", default=None, help="ring spec, e.g. exterior, cube(0,3), f2[x:1,y:1]/(x*y)")
    with_elems = argparse.ArgumentParser(add_help=False)
    with_elems.add_argument("--elements", action="store_true", help="also print a basis of each degree")

    p = _Parser(prog="injring", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"injring {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("hilbert", parents=[ringed], help="dimensions of each degree")
    s = sub.add_parser("basis", parents=[ringed], help="basis monomials")
    s.add_argument("--degree", type=int)
    s = sub.add_parser("mul", parents=[ringed], help="multiply elements")
    s.add_argument("elements", nargs="+")
    s = sub.add_parser("ann", parents=[ringed, with_elems], help="annihilator of an ideal")
    s.add_argument("--gens", required=True, help="comma-separated generators")
    s = sub.add_parser("dann", parents=[ringed], help="compare J with ann(ann(J))")
    s.add_argument("--gens", required=True)
    s.add_argument("--upto", type=int)
    s = sub.add_parser("conductor", parents=[ringed, with_elems], help="(J : a)")
    s.add_argument("--gens", required=True)
    s.add_argument("--element", required=True)
    sub.add_parser("socle", parents=[ringed], help="socle of a finite ring")
    sub.add_parser("poincare", parents=[ringed], help="Poincare duality check")
    s = sub.add_parser("classify-pair", parents=[ringed], help="transporter, block or BadUpTo")
    s.add_argument("--u", required=True)
    s.add_argument("--v", required=True)
    s.add_argument("--d", type=int, required=True)
    s = sub.add_parser("bad-pairs", parents=[ringed], help="nondegenerate pairs with no witness up to dmax")
    s.add_argument("--weight", type=int, required=True)
    s = sub.add_parser("adjust", parents=[ringed], help="tower of block adjunctions")
    s.add_argument("--steps", type=int, default=1)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--start", type=int, default=6, help="weight handled by the first stage")
    s.add_argument("--slack", type=int, default=8)
    s = sub.add_parser("syzygy-check", parents=[common], help="K(u,p+1) = C[0,p+1].K(u,p)")
    s.add_argument("--u", required=True, help="entries in cube syntax")
    s.add_argument("--p", type=int, required=True)
    s = sub.add_parser("rado-witness", parents=[common], help="vertex witnessing a monomial outside ann^2")
    s.add_argument("--gens", required=True)
    s.add_argument("--target", required=True)
    s = sub.add_parser("epsilon-witness", parents=[common], help="generators witnessing a monomial outside ann^2")
    s.add_argument("--gens", required=True)
    s.add_argument("--target", required=True)
    s = sub.add_parser("ordinal", parents=[common], help="delta, phi, decode, mu, extend")
    s.add_argument("op", choices=["delta", "phi", "decode", "mu", "extend"])
    s.add_argument("args", nargs="*")
    s.add_argument("--nu", nargs="*", help="prescribed mu values, e.g. w=2 1=1")
    s = sub.add_parser("root", parents=[common], help="root algebra on finite rational supports")
    s.add_argument("op", choices=["mul", "delta", "lambda", "invert", "nilpotency", "classify", "ann", "witness"])
    s.add_argument("args", nargs="*")
    s.add_argument("--prime", type=int, default=2)
    s.add_argument("--t", default="0")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--closed", dest="closed", action="store_true", default=True)
    g.add_argument("--open", dest="closed", action="store_false")
    s = sub.add_parser("jring", parents=[common], help="the p-complete J-ring at truncation M")
    s.add_argument("op", choices=["group", "mul", "duality"])
    s.add_argument("args", nargs="*")
    s.add_argument("--prime", type=int, default=3)
    s.add_argument("--trunc", type=int, default=6)
    s.add_argument("--degree", type=int, default=0)
    s.add_argument("--k", type=int)
    s.add_argument("--range", type=int, default=30)
    return p


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser, argv: Sequence[str]) -> None:
    cfg = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
    given = {a.split("=")[0].lstrip("-").replace("-", "_") for a in argv if a.startswith("--")}
    for key, val in cfg.items():
        k = key.replace("-", "_")
        if not hasattr(args, k):
            raise UsageError(f"unknown config key {key!r}")
        if k not in given:
            setattr(args, k, val)
    if args.dmax is None:
        env = os.environ.get(ENV_DMAX)
        try:
            args.dmax = int(env) if env else DEFAULT_DMAX
        except ValueError as exc:
            raise UsageError(f"{ENV_DMAX} must be an integer") from exc
    if args.dmax > MAX_DMAX:
        raise BoundError(f"dmax={args.dmax} exceeds the command-line limit {MAX_DMAX}")


def _bounds(args) -> dict:
    b = {"dmax": args.dmax}
    if args.command == "bad-pairs":
        b["weight_cap"] = args.weight
    if args.command == "adjust":
        b.update(m=args.m, slack=args.slack, start=args.start)
    if args.command == "jring":
        b.update(p=args.prime, M=args.trunc)
    if args.command == "dann" and args.upto is not None:
        b["upto"] = args.upto
    return b


def run(argv: Sequence[str] | None = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args, parser, argv)
        ring = None
        if args.command not in RINGLESS:
            if not args.ring:
                raise UsageError(f"{args.command} needs --ring")
            ring = parse_ring(args.ring, args.dmax)
        emit = Emitter(args.command, ring.spec if ring else None, _bounds(args), out)
        return COMMANDS[args.command](args, ring, emit)
    except BoundError as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except jring.TruncationError as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
