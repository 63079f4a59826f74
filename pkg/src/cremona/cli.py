"""Command line front end.

Every invocation prints one document: ``kind``, ``n``, ``field``, ``payload``
and ``report``.  ``--format structured`` emits it as JSON, ``--format text``
as indented key/value lines.  Exit status: 0 success, 2 invalid input,
3 failed computation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CremonaError, DimensionMismatch, InvalidParameter
from .families import STANDARD_SAMPLES, Family, conj_limit, specialize, verify_family
from .fields import FieldDescriptor
from .finite import SUPPORTED_ORDERS, is_simple, pgl2_enumerate
from .lingroup import det_class, psl_path, sl_decompose, word_length_bound
from .maps import (
    INDETERMINATE,
    SINGULAR,
    CremonaMap,
    Point,
    ProjMatrix,
    compose_all,
    dejonquieres_h,
    derivative_at_fixed_point,
    evaluate,
    identity,
    scaling_g_a,
    standard_involution,
    twoderivatives_gadget,
    verify_certificate,
)
from .paths import DEFAULT_HEIGHT_BOUND, connect
from .parsing import parse_matrix_rows

GADGETS = ("twoderivatives", "involution", "dejonquieres", "scaling", "identity")


# argument decoding ----------------------------------------------------------


def _named_map(text: str, field, n):
    """Shorthands: id, sigma, h, gadget:LAMBDA, g_a:A."""
    name, _, arg = text.strip().partition(":")
    dim = n if n is not None else 2
    if name == "id":
        return identity(dim, field)
    if name == "sigma":
        return standard_involution(dim, field)
    if name == "h":
        return dejonquieres_h(n if n is not None else 3, field)
    if name == "gadget" and arg:
        return twoderivatives_gadget(field.parse_raw(arg), dim, field)
    if name == "g_a" and arg:
        return scaling_g_a(field.parse_raw(arg), n if n is not None else 3, field)
    return None


def read_map(text: str, field, n) -> CremonaMap:
    named = _named_map(text, field, n)
    if named is not None:
        if n is not None and named.n != n:
            raise DimensionMismatch(f"{text} lives on P^{named.n}, not P^{n}")
        return named
    return CremonaMap.parse(text, field, n)


def read_point(text: str, field, n) -> Point:
    p = Point.parse(text, field)
    if n is not None and p.n != n:
        raise DimensionMismatch(f"point has {p.n + 1} coordinates, expected {n + 1}")
    return p


def read_samples(text: str | None, field):
    raw = STANDARD_SAMPLES if text is None else [s for s in text.split(",") if s.strip()]
    return [field.parse_raw(s) for s in raw]


def read_matrix(text: str, field, n):
    rows = [[field.parse_raw(e) for e in r] for r in parse_matrix_rows(text)]
    if len(rows) != len(rows[0]):
        raise InvalidParameter("matrix must be square")
    if n is not None and len(rows) != n + 1:
        raise DimensionMismatch(f"matrix has size {len(rows)}, expected {n + 1}")
    return rows


# commands ------------------------------------------------------------------


def cmd_compose(args, field):
    maps = [read_map(m, field, args.n) for m in args.maps]
    out = compose_all(*maps)
    return "map", out.n, out.to_dict(), None


def cmd_verify(args, field):
    f = read_map(args.map, field, args.n)
    ok = verify_certificate(f)
    return "certificate", f.n, {"map": f.to_dict()}, {"certified": ok}


def cmd_evaluate(args, field):
    f = read_map(args.map, field, args.n)
    p = read_point(args.point, field, f.n)
    q = evaluate(f, p)
    return "point", f.n, {"point": str(p), "image": str(q), "indeterminate": q is INDETERMINATE}, None


def cmd_derivative(args, field):
    f = read_map(args.map, field, args.n)
    p = read_point(args.point, field, f.n)
    D = derivative_at_fixed_point(f, p)
    if D is SINGULAR:
        return "derivative", f.n, {"point": str(p), "singular": True, "matrix": None}, None
    return "derivative", f.n, {"point": str(p), "singular": False, "matrix": str(D)}, None


def _family_report(nu, samples):
    rep = verify_family(nu, samples)
    return rep.family, rep.to_dict()


def cmd_conjlimit(args, field):
    g = read_map(args.map, field, args.n)
    p = read_point(args.point, field, g.n)
    samples = read_samples(args.samples, field)
    rho = conj_limit(g, p)
    rho, report = _family_report(rho, samples)
    payload = {"family": rho.to_dict(), "at_zero": specialize(rho, 0).to_dict()}
    return "family", g.n, payload, report


def cmd_specialize(args, field):
    nu = Family.parse(args.family, field, args.n)
    a = field.parse_raw(args.value)
    f = specialize(nu, a)
    return "map", nu.n, {"t": field.format(a), "map": f.to_dict()}, None


def cmd_connect(args, field):
    f = read_map(args.source, field, args.n)
    g = read_map(args.target, field, args.n)
    samples = read_samples(args.samples, field)
    res = connect(f, g, args.height_bound)
    nu, report = _family_report(res.family, samples)
    report["endpoints"] = {
        "t0_equals_source": specialize(nu, 0).same_as(f),
        "t1_equals_target": specialize(nu, 1).same_as(g),
    }
    report["steps"] = [verify_family(s.family, samples).all_ok for s in res.plan.steps]
    payload = {
        "family": nu.to_dict(),
        "plan": res.plan.to_dict(),
        "point": None if res.point is None else str(res.point),
    }
    return "connection", f.n, payload, report


def cmd_sl_decompose(args, field):
    rows = read_matrix(args.matrix, field, args.n)
    word = sl_decompose(rows, field)
    payload = {"size": word.size, "length": len(word), "bound": word_length_bound(word.size), "word": word.to_list()}
    return "word", word.size - 1, payload, {"roundtrip": word.product() == rows}


def cmd_psl_path(args, field):
    A = read_matrix(args.start, field, args.n)
    B = read_matrix(args.end, field, args.n)
    path = psl_path(A, B, field)
    samples = read_samples(args.samples, field)
    nu, report = _family_report(path.family, samples)
    payload = {
        "family": nu.to_dict(),
        "t_matrix": [[str(e) for e in r] for r in path.t_matrix],
    }
    return "family", len(A) - 1, payload, report


def cmd_det_class(args, field):
    rows = read_matrix(args.matrix, field, args.n)
    P = ProjMatrix(rows, field)
    cls = det_class(P)
    payload = {
        "canonical": str(P),
        "witness": str(cls.witness),
        "in_psl": cls.in_psl,
        "root": None if cls.root is None else str(cls.root),
    }
    return "det-class", P.n, payload, None


def cmd_pgl2_finite(args, field):
    G = pgl2_enumerate(args.q)
    payload = {"q": args.q, "order": G.order}
    checks = args.check or ["simple"]
    for c in checks:
        if c == "simple":
            payload["simple"] = is_simple(G)
        elif c == "psl":
            payload["psl_order"] = len(G.psl)
            payload["pgl_equals_psl"] = G.pgl_equals_psl
        elif c == "table":
            payload["closed"] = G.closed()
            payload["associative_spot_check"] = G.spot_check_associative()
    return "pgl2", 1, payload, None


def cmd_gadget(args, field):
    n = args.n
    kind = args.kind
    if kind == "twoderivatives":
        f = twoderivatives_gadget(field.parse_raw(args.param or "2"), n if n is not None else 2, field)
    elif kind == "involution":
        f = standard_involution(n if n is not None else 2, field)
    elif kind == "dejonquieres":
        f = dejonquieres_h(n if n is not None else 3, field)
    elif kind == "scaling":
        f = scaling_g_a(field.parse_raw(args.param or "2"), n if n is not None else 3, field)
    else:
        f = identity(n if n is not None else 2, field)
    return "map", f.n, f.to_dict(), None


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q (rationals) or fp:<p>")
    common.add_argument("--n", type=int, default=None, help="projective dimension")
    common.add_argument("--samples", default=None, help="comma separated t-values")
    common.add_argument("--height-bound", type=int, default=DEFAULT_HEIGHT_BOUND)
    common.add_argument("--format", choices=("text", "structured"), default="structured")

    parser = argparse.ArgumentParser(prog="cremona", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *positionals, **extra):
        p = sub.add_parser(name, parents=[common])
        for pos in positionals:
            if isinstance(pos, tuple):
                p.add_argument(pos[0], nargs=pos[1])
            else:
                p.add_argument(pos)
        for flag, kw in extra.items():
            p.add_argument(flag, **kw)
        p.set_defaults(func=func)
        return p

    add("compose", cmd_compose, ("maps", "+"))
    add("verify", cmd_verify, "map")
    add("evaluate", cmd_evaluate, "map", "point")
    add("derivative", cmd_derivative, "map", "point")
    add("conjlimit", cmd_conjlimit, "map", "point")
    add("specialize", cmd_specialize, "family", "value")
    add("connect", cmd_connect, "source", "target")
    add("sl-decompose", cmd_sl_decompose, "matrix")
    add("psl-path", cmd_psl_path, "start", "end")
    add("det-class", cmd_det_class, "matrix")
    pg = add("pgl2-finite", cmd_pgl2_finite)
    pg.add_argument("--q", type=int, required=True, choices=SUPPORTED_ORDERS)
    pg.add_argument("--check", action="append", choices=("simple", "psl", "table"))
    gd = add("gadget", cmd_gadget)
    gd.add_argument("--kind", choices=GADGETS, default="twoderivatives")
    gd.add_argument("--param", default=None, help="lambda or a")
    return parser


def _text_lines(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {v}"
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                yield f"{pad}-"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}- {v}"
    else:
        yield f"{pad}{obj}"


def render(doc: dict, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(doc, indent=2)
    return "\n".join(_text_lines(doc))


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        field = FieldDescriptor.parse(args.field)
        kind, n, payload, report = args.func(args, field)
    except CremonaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return exc.exit_code
    doc = {"kind": kind, "n": n, "field": field.selector, "payload": payload, "report": report}
    print(render(doc, args.format), file=stdout)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
