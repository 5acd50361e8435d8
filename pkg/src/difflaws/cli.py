"""Command line: ``difflaws VERB ...``.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage, parse or
input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import expr as E
from . import homcat as H
from . import laws as L
from . import manifold as M
from . import prolong as P
from .checker import (
    SuiteReport, difference_groupoid, difference_pregroupoid, double_prolongation, run_doublecat_suite,
    run_groupoid_suite, run_kt_suite, run_pregroupoid_suite, run_scaled_action_suite,
)
from .errors import DiffLawsError
from .rings import Ring, parse_ring

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

BUILTINS = ("groupoid", "doublecat", "doublecat-transposed", "pregroupoid", "kt-ring", "endomorphisms",
            "scaled-action")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Argument helpers


def _ring(spec: str | None, default: str) -> Ring:
    try:
        return parse_ring(spec or default)
    except (ValueError, DiffLawsError) as exc:
        raise UsageError(f"bad ring {spec!r}: {exc}") from exc


def _bindings(text: str | None, ring: Ring) -> dict:
    """``"x=1,v=1/2"`` -> {"x": 1, "v": 1/2} with values parsed in ``ring``."""
    out: dict = {}
    if not text:
        return out
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"expected name=value, got {part!r}")
        name, value = (s.strip() for s in part.split("=", 1))
        out[name] = ring.parse(value)
    return out


def _values(text: str | None, ring: Ring, default: str) -> list:
    return [ring.parse(s.strip()) for s in (text or default).split(",") if s.strip()]


def _take(bindings: dict, names: Sequence[str], what: str) -> tuple:
    missing = [n for n in names if n not in bindings]
    if missing:
        raise UsageError(f"missing {what} binding(s): {', '.join(missing)}")
    return tuple(bindings[n] for n in names)


def _coords(e: E.Expr, given: str | None) -> tuple:
    if given:
        return tuple(s.strip() for s in given.split(","))
    return L._coords_for([e])


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _report_text(rep: SuiteReport, fmt: str) -> str:
    if fmt == "tsv":
        lines = ["check\tinstances\tfailures"]
        lines += [f"{n}\t{k}\t{rep.failures.get(n, 0)}" for n, k in rep.checks.items()]
        lines.append(f"passed\t{str(rep.passed).lower()}\t")
        return "\n".join(lines)
    return rep.to_json()


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _law(path: str, ring_spec: str | None, seed: int, verify: bool = True) -> L.Law:
    data = _load_json(path)
    ring = _ring(ring_spec, "Q") if ring_spec else None
    return L.law_from_json(data, ring, verify=verify, seed=seed)


# ---------------------------------------------------------------------------
# Verbs


def cmd_eval(args) -> int:
    ring = _ring(args.ring, "Q")
    e = E.parse(args.expr)
    env = _bindings(args.at, ring)
    value = E.evaluate(e, env, ring)
    if args.format == "json":
        _emit(args, json.dumps({"expression": E.to_text(e), "ring": str(ring),
                                "at": {k: ring.format(v) for k, v in env.items()}, "value": ring.format(value)},
                               indent=2))
    else:
        _emit(args, ring.format(value))
    return EXIT_OK


def _spot_checks(e: E.Expr, fac: E.Expr, coords, dirs, ring: Ring, seed: int, count: int = 3) -> list:
    """Compare f(x + tv) - f(x) with F(x, v, t) t at ``count`` sampled points."""
    rng = random.Random(seed)
    f, F = E.compile_expr(e, ring), E.compile_expr(fac, ring)
    out = []
    for _ in range(200):
        if len(out) == count:
            break
        x = [ring.random_element(rng) for _ in coords]
        v = [ring.random_element(rng) for _ in coords]
        t = ring.random_element(rng)
        moved = [ring.add(a, ring.mul(b, t)) for a, b in zip(x, v)]
        env = dict(zip(coords, x))
        env2 = dict(zip(coords, moved))
        envF = dict(env, **dict(zip(dirs, v)), **{E.T_VAR: t})
        try:
            lhs = ring.sub(f(env2), f(env))
            rhs = ring.mul(F(envF), t)
        except DiffLawsError:
            continue
        out.append({"x": [ring.format(c) for c in x], "v": [ring.format(c) for c in v], "t": ring.format(t),
                    "difference": ring.format(lhs), "F*t": ring.format(rhs), "ok": lhs == rhs})
    return out


def cmd_factorize(args) -> int:
    ring = _ring(args.ring, "Q")
    e = E.parse(args.expr)
    coords = _coords(e, args.vars)
    dirs = E.direction_names(coords)
    fac = E.factorizer_expr(e, coords, dirs)
    checks = _spot_checks(e, fac, coords, dirs, ring, args.seed)
    ok = all(c["ok"] for c in checks)
    if args.format == "json":
        _emit(args, json.dumps({"expression": E.to_text(e), "ring": str(ring), "variables": list(coords),
                                "directions": list(dirs), "factorizer": E.to_text(fac), "checks": checks},
                               indent=2))
    else:
        lines = [E.to_text(fac)]
        for c in checks:
            lines.append(f"check x={','.join(c['x'])} v={','.join(c['v'])} t={c['t']}: "
                         f"{c['difference']} = {c['F*t']} {'ok' if c['ok'] else 'FAIL'}")
        _emit(args, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_diff(args) -> int:
    ring = _ring(args.ring, "Q")
    e = E.parse(args.expr)
    coords = _coords(e, args.vars)
    dirs = E.direction_names(coords)
    fac = E.factorizer_expr(e, coords, dirs)
    env = _bindings(args.at, ring)
    x = _take(env, coords, "point")
    v = _take(env, dirs, "direction")
    base = dict(zip(coords, x), **dict(zip(dirs, v)))
    F = E.compile_expr(fac, ring)
    rows = []
    for t in _values(args.t, ring, "0,1"):
        rows.append((ring.format(t), ring.format(F(dict(base, **{E.T_VAR: t})))))
    if args.format == "json":
        _emit(args, json.dumps({"expression": E.to_text(e), "ring": str(ring), "factorizer": E.to_text(fac),
                                "at": {k: ring.format(val) for k, val in base.items()},
                                "rows": [{"t": t, "F": val} for t, val in rows]}, indent=2))
    else:
        _emit(args, "\n".join(["t\tF"] + [f"{t}\t{val}" for t, val in rows]))
    return EXIT_OK


def cmd_apply(args) -> int:
    law = _law(args.law, args.ring, args.seed)
    ring = law.ring
    env = _bindings(args.arrow, ring)
    x = _take(env, law.domain.coords, "point")
    v = _take(env, law.directions, "direction")
    (t,) = _take(env, ["t"], "t")
    if "s" in env:
        image = L.apply2(law, law.domain.arrow2(x, v, env["s"], t))
    else:
        image = L.apply1(law, law.domain.arrow1(x, v, t))
    if args.format == "json":
        _emit(args, json.dumps(image.to_json(), indent=2))
    else:
        _emit(args, str(image))
    return EXIT_OK


def _builtin_report(name: str, ring: Ring, dim: int, seed: int, ts) -> SuiteReport:
    if not ring.is_finite:
        raise UsageError(f"builtin:{name} enumerates the ring; use a finite ring such as Z3")
    space = P.LinearSet(ring, dim)
    if name == "groupoid":
        rep = run_groupoid_suite(difference_groupoid(space))
    elif name == "doublecat":
        rep = run_doublecat_suite(double_prolongation(space), seed)
    elif name == "doublecat-transposed":
        rep = run_doublecat_suite(double_prolongation(space).transposed(), seed)
    elif name == "pregroupoid":
        rep = run_pregroupoid_suite(difference_pregroupoid(space), seed)
    elif name == "endomorphisms":
        rep = H.check_endomorphism_commutation(space)
    elif name == "kt-ring":
        rep = None
        for t in ts if ts is not None else ring.elements():
            sub = run_kt_suite(ring, t, seed)
            rep = sub if rep is None else rep.merge(sub)
        rep.suite = f"K_t over {ring}"
    elif name == "scaled-action":
        els = list(ring.elements())
        rep = run_scaled_action_suite(els, ring.mul, ring.one, list(space.vectors()), space.scale,
                                      is_unit=ring.is_unit, seed=seed)
    else:
        raise UsageError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
    rep.seed = seed
    return rep


def cmd_check(args) -> int:
    target = args.target
    if target.startswith("builtin:"):
        ring = _ring(args.ring, "Z3")
        ts = _values(args.t, ring, "") if args.t else None
        rep = _builtin_report(target.split(":", 1)[1], ring, args.dim, args.seed, ts)
    elif target in ("law", "gluing"):
        if not args.path:
            raise UsageError(f"check {target} needs a file")
        if target == "law":
            # the file's factorizer is what is being checked: failures are reported, not raised
            law = _law(args.path, args.ring, args.seed, verify=False)
            rep = L.check_law_axioms(law, L.Sampler(law.domain, args.seed, args.samples or L.DEFAULT_SAMPLES))
        else:
            g = M.gluing_from_json(_load_json(args.path), _ring(args.ring, "Q") if args.ring else None)
            rep = M.validate_gluing(g, args.seed, args.samples or M.DEFAULT_SAMPLES)
    else:
        raise UsageError(f"unknown check target {target!r}; use builtin:NAME, law FILE or gluing FILE")
    _emit(args, _report_text(rep, args.format))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_manifold(args) -> int:
    ring = _ring(args.ring, "Q") if args.ring else None
    g = M.gluing_from_json(_load_json(args.path), ring)
    if not args.arrow:
        rep = M.validate_gluing(g, args.seed, args.samples)
        _emit(args, _report_text(rep, args.format))
        return EXIT_OK if rep.passed else EXIT_FAIL
    env = _bindings(args.arrow, g.ring)
    if "chart" not in env:
        raise UsageError("--arrow needs chart=I")
    chart = int(env.pop("chart"))
    space = g.chart(chart)
    x = _take(env, space.coords, "point")
    v = _take(env, E.direction_names(space.coords), "direction")
    (t,) = _take(env, ["t"], "t")
    a = g.arrow(chart, x, v, t)
    out = M.transport_arrow(g, a, args.to if args.to is not None else chart)
    if args.format == "json":
        _emit(args, json.dumps({"chart": out.chart, "arrow": out.arrow.to_json()}, indent=2))
    else:
        _emit(args, str(out))
    return EXIT_OK


def cmd_homcat(args) -> int:
    if args.first == "builtin:z4":
        ring = parse_ring("Z4")
        U, W = P.LinearSet(ring), P.LinearSet(ring)
        f = L.law_with_factorizer(U, W, ["0"], ["2*v*(1-T^2)"])
        g = L.law_with_factorizer(U, W, ["0"], ["2*v*(1+T)"])
    else:
        if not args.second:
            raise UsageError("homcat needs two law files (or builtin:z4)")
        f = _law(args.first, args.ring, args.seed)
        g = _law(args.second, args.ring, args.seed)
        g = L.Law(f.domain, f.codomain, g.base, g.factorizer, g.kind, g.directions) \
            if g.domain.dim == f.domain.dim and g.codomain.dim == f.codomain.dim else g
    F, G = H.from_law(f), H.from_law(g)
    sampler = L.Sampler(f.domain, args.seed, args.samples)
    arrows = [P.Arrow1(f.domain, x, v, t, _checked=True) for x, v, t in sampler.triples()]
    if not H.hom_composable_star(F, G, arrows):
        raise UsageError("the two morphisms are not *-composable on the samples")
    rep = H.check_hom_closure(F, G, sampler)
    rep.declare("zero section is a unit")
    Z = H.hom_unit_right(F)
    rep.record("zero section is a unit", H.hom_equal(H.hom_star(F, Z), F, arrows), [F.name])
    rep.seed = args.seed
    _emit(args, _report_text(rep, args.format))
    return EXIT_OK if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="Q, Z, Zn (e.g. Z5), Kt(base,t) or a JSON descriptor")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "tsv"), default=None)
    common.add_argument("--output", help="write to PATH instead of stdout")

    parser = argparse.ArgumentParser(prog="difflaws", description="Difference factorizers and C^1 laws over rings.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("expr")
    p.add_argument("--at", help='bindings, e.g. "x=1,y=2"')
    p.set_defaults(func=cmd_eval, default_format="tsv")

    p = sub.add_parser("factorize", parents=[common], help="print the difference factorizer")
    p.add_argument("expr")
    p.add_argument("--vars", help="comma-separated coordinates (default: inferred)")
    p.set_defaults(func=cmd_factorize, default_format="tsv")

    p = sub.add_parser("diff", parents=[common], help="table of F(x, v, t) over t")
    p.add_argument("expr")
    p.add_argument("--vars")
    p.add_argument("--at", help='point and direction, e.g. "x=1,v=1"')
    p.add_argument("--t", help='comma-separated t values (default "0,1")')
    p.set_defaults(func=cmd_diff, default_format="tsv")

    p = sub.add_parser("apply", parents=[common], help="apply a law file to an arrow")
    p.add_argument("law")
    p.add_argument("--arrow", required=True, help='"x=1,v=1,t=2" (add s=... for a double arrow)')
    p.set_defaults(func=cmd_apply, default_format="json")

    p = sub.add_parser("check", parents=[common], help="run an axiom suite")
    p.add_argument("target", help=f"builtin:NAME ({', '.join(BUILTINS)}), law or gluing")
    p.add_argument("path", nargs="?")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--t", help="t values for builtin:kt-ring")
    p.add_argument("--samples", type=int, help="sample count for non-exhaustive suites")
    p.set_defaults(func=cmd_check, default_format="json")

    p = sub.add_parser("manifold", parents=[common], help="validate gluing data or transport an arrow")
    p.add_argument("path")
    p.add_argument("--arrow", help='"chart=1,x=1,v=1,t=1"')
    p.add_argument("--to", type=int)
    p.add_argument("--samples", type=int, default=M.DEFAULT_SAMPLES)
    p.set_defaults(func=cmd_manifold, default_format="json")

    p = sub.add_parser("homcat", parents=[common], help="pointwise * of two morphisms")
    p.add_argument("first", help="law file or builtin:z4")
    p.add_argument("second", nargs="?")
    p.add_argument("--samples", type=int, default=L.DEFAULT_SAMPLES)
    p.set_defaults(func=cmd_homcat, default_format="json")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"difflaws: {exc}", file=sys.stderr)
    except (DiffLawsError, ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"difflaws: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
