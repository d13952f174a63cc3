"""Command-line front end: coset computation, digit expansion, embedding,
level-wise arithmetic, and the law suites, all with reproducible seeds.

Every run echoes its configuration; identical configuration means
byte-identical output.  Exit codes: 0 on success and on a passing law
suite, 1 when a suite records counterexamples, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import suites
from .basefields import PadicRationals, QuadraticExtension, make_field
from .cosets import coset_of, coset_value, hyperadd, hypersum_value_set
from .oag import value_to_json
from .limit import (
    check_singlevalued,
    check_universal_property,
    from_field,
    hensel_finder,
    limit_arith,
    limit_eq,
    rebuild_from_digits,
    sigma_embed,
    to_approximation,
)
from .sampling import sample_element
from .tower import (
    CosetCarrier,
    LawReport,
    LevelPair,
    TropCarrier,
    check_hom_law,
    check_projection_containment,
    check_slice_triangles,
    cone_over_diagram,
    project,
)

SUITES = (
    "lee",
    "tropical",
    "hom",
    "cone",
    "singlevalued",
    "universal",
    "oracle-roundtrip",
)


class UsageError(Exception):
    pass


def _emit(doc):
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def _field_of(args):
    kind = getattr(args, "field", "rational")
    return make_field(kind, args.p)


def _parse_element(field, text):
    try:
        payload = json.loads(text)
    except json.JSONDecodeError:
        payload = text
    try:
        return field.element(payload)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"malformed element {text!r}: {exc}") from exc


def _seed_of(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HYPERTOWER_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"bad HYPERTOWER_SEED: {env!r}") from exc
    return 0


def _config(args, **extra):
    cfg = {"command": args.command}
    for key in ("field", "p", "gamma", "digits", "samples", "height", "suite", "op"):
        if hasattr(args, key):
            cfg[key] = getattr(args, key)
    cfg.update(extra)
    return cfg


def cmd_coset(args):
    field = _field_of(args)
    x = _parse_element(field, args.x)
    c = coset_of(field, x, args.gamma)
    _emit(
        {
            "config": _config(args, x=args.x),
            "coset": c.to_json(),
            "value": value_to_json(coset_value(c)),
        }
    )
    return 0


def cmd_hyperadd(args):
    field = _field_of(args)
    x = _parse_element(field, args.x)
    y = _parse_element(field, args.y)
    s = hyperadd(coset_of(field, x, args.gamma), coset_of(field, y, args.gamma))
    _emit(
        {
            "config": _config(args, x=args.x, y=args.y),
            "hypersum": s.to_json(),
            "values": hypersum_value_set(s).to_json(),
        }
    )
    return 0


def cmd_project(args):
    field = _field_of(args)
    x = _parse_element(field, args.x)
    if args.to > args.frm:
        raise UsageError(f"cannot project level {args.frm} up to {args.to}")
    upper = coset_of(field, x, args.frm)
    lower = project(upper, args.to)
    _emit(
        {
            "config": _config(args, x=args.x, frm=args.frm, to=args.to),
            "input": upper.to_json(),
            "output": lower.to_json(),
        }
    )
    return 0


def cmd_expand(args):
    field = _field_of(args)
    x = _parse_element(field, args.x)
    appr = field.expand(x, args.digits)
    _emit({"config": _config(args, x=args.x), **appr.to_json()})
    return 0


def cmd_embed(args):
    if args.ext != "quadratic":
        raise UsageError(f"unknown extension {args.ext!r}")
    ext = QuadraticExtension(args.p)
    base = PadicRationals(args.p)
    x = _parse_element(ext, args.x) if args.x else ext.generator()
    element = sigma_embed(x, hensel_finder(ext, base))
    appr = to_approximation(element, args.digits)
    _emit(
        {
            "config": _config(args, ext=args.ext, x=args.x),
            "element": ext.to_json(x),
            "approximation": appr.to_json(),
            "cosets": element.to_json(levels=min(args.digits, 4))["cosets"],
        }
    )
    return 0


def cmd_limit_arith(args):
    field = _field_of(args)
    lhs = from_field(field, _parse_element(field, args.lhs))
    rhs = None
    if args.op in ("add", "mul"):
        if args.rhs is None:
            raise UsageError(f"--rhs is required for {args.op}")
        rhs = from_field(field, _parse_element(field, args.rhs))
    out, ledger = limit_arith(args.op, lhs, rhs)
    appr = to_approximation(out, args.digits)
    _emit(
        {
            "config": _config(args, lhs=args.lhs, rhs=args.rhs),
            "approximation": appr.to_json(),
            "ledger": ledger.to_json(delivered=args.digits),
        }
    )
    return 0


def _suite_reports(args, rng):
    name = args.suite
    samples = args.samples
    height = args.height
    if name == "lee":
        reports = []
        for gamma in (0, 1, 2):
            reports.append(
                suites.lee_suite(
                    args.p,
                    gamma,
                    rng,
                    exhaustive_bound=min(height, 6),
                    sample_bound=height,
                    sample_pairs=samples,
                )
            )
        return reports
    if name == "tropical":
        return [
            suites.tropical_suite(rng, samples, arity=1),
            suites.tropical_suite(rng, samples, arity=2),
        ]
    field = make_field(args.field, args.p)
    pairs = [LevelPair(a, b) for a in range(4) for b in range(a, 4)]
    elements = [sample_element(field, rng, height) for _ in range(max(8, samples // 8))]
    if name == "hom":
        reports = [
            check_slice_triangles(field, pairs, elements),
            check_projection_containment(field, pairs[:6], elements[:12]),
        ]
        for level in (0, 1, 2):
            dom = CosetCarrier(field, level)
            cod = TropCarrier(1)
            reports.append(
                check_hom_law(dom, cod, lambda c: coset_value(c), rng, samples=samples // 4 or 8)
            )
        dom = CosetCarrier(field, 3)
        cod = CosetCarrier(field, 1)
        reports.append(
            check_hom_law(dom, cod, lambda c: project(c, 1), rng, samples=samples // 4 or 8)
        )
        return reports
    if name == "cone":
        def plain_sides(g):
            return lambda x: coset_of(field, x, g)

        reports = [cone_over_diagram(plain_sides, pairs, elements)]
        if isinstance(field, PadicRationals):
            # vertex of completed digit streams: sides truncate one digit
            # past the level, which pins the class exactly
            def stream_sides(g):
                def side(x):
                    appr = field.expand(x, g + 1)
                    return coset_of(field, field.from_approximation(appr), g)

                return side

            reports.append(
                cone_over_diagram(
                    stream_sides, pairs, [e for e in elements if not field.is_zero(e)]
                )
            )
        return reports
    if name == "singlevalued":
        reports = []
        for _ in range(max(4, samples // 16)):
            a = from_field(field, sample_element(field, rng, height))
            b = from_field(field, sample_element(field, rng, height))
            reports.append(check_singlevalued(a, b, 12, rng, chains=4))
        return reports
    if name == "universal":
        base = PadicRationals(args.p)
        xs = [base.random_nonzero(rng, height) for _ in range(max(4, samples // 16))]
        reports = [
            check_universal_property(
                base,
                xs,
                lambda x, g: coset_of(base, x, g),
                [("plain", lambda x: from_field(base, x))],
                12,
            )
        ]
        if args.p % 2 and args.p != 3:
            ext = QuadraticExtension(args.p)
            rf = hensel_finder(ext, base)
            ys = [ext.generator(), ext.element([2, 3])]
            reports.append(
                check_universal_property(
                    base,
                    ys,
                    lambda x, g: coset_of(base, rf(x, g), g),
                    [("sigma", lambda x: sigma_embed(x, rf))],
                    12,
                )
            )
        return reports
    if name == "oracle-roundtrip":
        report = LawReport("oracle-roundtrip")
        digits = args.digits
        for _ in range(samples):
            report.tick()
            x = sample_element(field, rng, height)
            y = sample_element(field, rng, height)
            ex, ey = from_field(field, x), from_field(field, y)
            jobs = [("add", field.add(x, y), limit_arith("add", ex, ey)[0]),
                    ("mul", field.mul(x, y), limit_arith("mul", ex, ey)[0]),
                    ("neg", field.neg(x), limit_arith("neg", ex)[0])]
            if not field.is_zero(x):
                jobs.append(("inv", field.inv(x), limit_arith("inv", ex)[0]))
            for op, exact, lifted in jobs:
                if to_approximation(lifted, digits) != field.expand(exact, digits):
                    report.fail(op=op, x=str(x), y=str(y))
            rebuilt = rebuild_from_digits(field, to_approximation(ex, digits + 1))
            if not limit_eq(ex, rebuilt, digits).equal:
                report.fail(op="rebuild", x=str(x))
        return [report]
    raise UsageError(f"unknown suite {name!r} (choose from {', '.join(SUITES)})")


def cmd_laws(args):
    seed = _seed_of(args)
    rng = random.Random(seed)
    reports = _suite_reports(args, rng)
    ok = all(r.passed for r in reports)
    _emit(
        {
            "config": _config(args, seed=seed),
            "reports": [r.to_json() for r in reports],
            "pass": ok,
        }
    )
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hypertower",
        description="exact coset towers over valued fields, with law suites",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, field=True, gamma=False, digits=False):
        if field:
            sp.add_argument("--field", default="rational",
                            choices=["rational", "function", "quadratic"])
            sp.add_argument("--p", type=int, default=5)
        if gamma:
            sp.add_argument("--gamma", type=int, required=True)
        if digits:
            sp.add_argument("--digits", type=int, default=8)

    sp = sub.add_parser("coset", help="class of an element at a level")
    common(sp, gamma=True)
    sp.add_argument("--x", required=True)
    sp.set_defaults(fn=cmd_coset)

    sp = sub.add_parser("hyperadd", help="multivalued sum descriptor of two classes")
    common(sp, gamma=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.set_defaults(fn=cmd_hyperadd)

    sp = sub.add_parser("project", help="lower a class to a smaller level")
    common(sp)
    sp.add_argument("--x", required=True)
    sp.add_argument("--from", dest="frm", type=int, required=True)
    sp.add_argument("--to", type=int, required=True)
    sp.set_defaults(fn=cmd_project)

    sp = sub.add_parser("expand", help="digit/Laurent expansion of an element")
    common(sp, digits=True)
    sp.add_argument("--x", required=True)
    sp.set_defaults(fn=cmd_expand)

    sp = sub.add_parser("embed", help="embed an extension element as digits")
    sp.add_argument("--ext", default="quadratic")
    sp.add_argument("--p", type=int, default=5)
    sp.add_argument("--x", default=None)
    sp.add_argument("--digits", type=int, default=8)
    sp.set_defaults(fn=cmd_embed)

    sp = sub.add_parser("limit-arith", help="level-wise arithmetic with a ledger")
    common(sp, digits=True)
    sp.add_argument("--op", required=True, choices=["add", "mul", "neg", "inv"])
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", default=None)
    sp.set_defaults(fn=cmd_limit_arith)

    sp = sub.add_parser("laws", help="run a law suite; exit 1 on counterexamples")
    common(sp, digits=True)
    sp.add_argument("--suite", required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--height", type=int, default=30)
    sp.set_defaults(fn=cmd_laws)

    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
