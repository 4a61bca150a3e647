"""Command-line entry point: ``qsatake <command> ...``.

Exit status is 0 on success, 1 when a check fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__

SUITES = ("frobenius", "relations", "functor", "weylrep", "webs")


class UsageError(Exception):
    pass


def _parser():
    p = argparse.ArgumentParser(prog="qsatake", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"qsatake {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--n", type=int, default=3,
                   help="sl_n for webs/functor/frobenius/relations (2 or 3); "
                        "the affine rank for weylrep")
    v.add_argument("--degree-cutoff", type=int, default=12)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=None,
                   help="random samples for the webs and functor suites")
    v.add_argument("--json", action="store_true")

    for name, text in (("eval-web", "evaluate a closed web"),
                       ("reduce-web", "reduce a web to non-elliptic webs"),
                       ("functor-image", "print the bimodule map of a web")):
        w = sub.add_parser(name, help=text)
        w.add_argument("file", help="web in JSON form ('-' reads stdin)")
        w.add_argument("--json", action="store_true")
        if name == "reduce-web":
            w.add_argument("--strategy", choices=("smallest", "random"), default="smallest")
            w.add_argument("--seed", type=int, default=0)

    d = sub.add_parser("demazure", help="apply Demazure operators to a polynomial")
    d.add_argument("--ops", required=True, help="primary colours, rightmost acts first")
    d.add_argument("--poly", required=True, help="e.g. 'a_r^2 - q*a_b'")
    d.add_argument("--n", type=int, default=3)
    d.add_argument("--json", action="store_true")

    b = sub.add_parser("dual-bases", help="dual bases of a Frobenius extension")
    b.add_argument("--ext", required=True, help="lower and upper colour, e.g. '∅r' or 'rp'")
    b.add_argument("--n", type=int, default=3)
    b.add_argument("--json", action="store_true")

    k = sub.add_parser("kernel-check", help="kernel of the reflection action at roots of unity")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--m", type=int, required=True)
    k.add_argument("--json", action="store_true")
    return p


# -------------------------------------------------------------- commands


def _ring(n):
    from .polyring import realization
    if n not in (2, 3):
        raise UsageError(f"--n must be 2 or 3 here, got {n}")
    return realization(n)


def _emit_report(rep, as_json, out):
    out.write((rep.to_json() if as_json else rep.to_table()) + "\n")
    return 0 if rep.ok else 1


def cmd_verify(args, out):
    if args.suite == "frobenius":
        from .frobhypercube import verify_hypercube
        rep = verify_hypercube(_ring(args.n), args.degree_cutoff)
    elif args.suite == "relations":
        from .bimodcalc import verify_relations
        rep = verify_relations(_ring(args.n), args.degree_cutoff)
    elif args.suite == "functor":
        from .satake import verify_functor
        _ring(args.n)
        kw = {} if args.samples is None else {"samples": args.samples}
        rep = verify_functor(args.n, args.seed, **kw)
    elif args.suite == "webs":
        from .webs import verify_webs
        _ring(args.n)
        kw = {} if args.samples is None else {"samples": args.samples}
        rep = verify_webs(args.n, args.seed, **kw)
    else:
        from .weylrep import verify_weylrep
        if args.n < 1 or args.n > 8:
            raise UsageError("--n must lie in 1..8 for the weylrep suite")
        rep = verify_weylrep(args.n)
    rep.seed = args.seed
    return _emit_report(rep, args.json, out)


def _read_combo(path):
    from .webs import WebCombo
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    try:
        return WebCombo.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a valid web: {exc}") from None


def cmd_eval_web(args, out):
    from .qarith import QLaurent
    from .webs import evaluate_closed
    combo = _read_combo(args.file)
    if combo.source != (combo.source[0],) or combo.target != combo.source:
        raise UsageError("eval-web needs a web without boundary points")
    total = QLaurent.const(0)
    for c, w in combo.items():
        total = total + c * evaluate_closed(w)
    out.write((json.dumps({"value": str(total)}) if args.json else str(total)) + "\n")
    return 0


def cmd_reduce_web(args, out):
    from .webs import reduce
    combo = reduce(_read_combo(args.file), args.strategy, args.seed)
    out.write(combo.to_text() + "\n")
    return 0


def cmd_functor_image(args, out):
    from .satake import functor_image
    from .bimodcalc import scalar_of
    combo = _read_combo(args.file)
    if combo.is_zero():
        out.write("0\n")
        return 0
    term = functor_image(combo)
    scalar = scalar_of(term) if term.source == term.target else None
    if args.json:
        out.write(json.dumps({"source": str(term.source), "target": str(term.target),
                              "degree": term.degree, "term": str(term),
                              "scalar": None if scalar is None else str(scalar)},
                             ensure_ascii=False) + "\n")
    else:
        out.write(f"{term.source} -> {term.target}, degree {term.degree}\n{term}\n")
        if scalar is not None:
            out.write(f"acts as the scalar {scalar}\n")
    return 0


def cmd_demazure(args, out):
    from .polyring import demazure_word, parse_poly
    ring = _ring(args.n)
    ops = [c for c in re.split(r"[\s,]+", args.ops.strip()) if c]
    if len(ops) == 1 and len(ops[0]) > 1:
        ops = list(ops[0])
    for s in ops:
        if s not in ring.primaries:
            raise UsageError(f"{s!r} is not a primary colour of {ring.name}")
    try:
        f = parse_poly(ring, args.poly)
    except (ValueError, SyntaxError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot parse polynomial: {exc}") from None
    g = demazure_word(ops, f)
    out.write((json.dumps({"result": str(g)}) if args.json else str(g)) + "\n")
    return 0


def _parse_ext(ring, text):
    parts = [p for p in re.split(r"[\s,⊂<]+", text.strip()) if p]
    if len(parts) == 1:
        parts = list(parts[0])
    if len(parts) != 2:
        raise UsageError(f"--ext needs a lower and an upper colour, got {text!r}")
    try:
        lower, upper = (ring.parse_label(p) for p in parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if lower == upper or not ring.is_subset(lower, upper):
        raise UsageError(f"{lower} is not properly contained in {upper}")
    return lower, upper


def cmd_dual_bases(args, out):
    from .frobhypercube import dual_bases, extension, mu
    ring = _ring(args.n)
    lower, upper = _parse_ext(ring, args.ext)
    b, dual = dual_bases(ring, lower, upper)
    total = sum((x * y for x, y in zip(b, dual)), type(b[0]).zero(ring))
    ok = total == mu(ring, lower, upper)
    if args.json:
        out.write(json.dumps({"extension": [lower, upper],
                              "trace": extension(ring, lower, upper).describe(),
                              "basis": [str(x) for x in b], "dual": [str(y) for y in dual],
                              "sum_equals_mu": ok}, ensure_ascii=False) + "\n")
    else:
        out.write(f"{lower} ⊂ {upper}, trace {extension(ring, lower, upper).describe()}\n")
        for i, (x, y) in enumerate(zip(b, dual)):
            out.write(f"  b{i} = {x}    b{i}* = {y}\n")
        out.write(f"  sum b_i b_i* = {total} ({'equals' if ok else 'differs from'} mu)\n")
    return 0 if ok else 1


def cmd_kernel_check(args, out):
    from .weylrep import kernel_check
    if args.n < 1 or args.n > 8 or args.m < 2 or args.m > 8:
        raise UsageError("kernel-check needs 1 <= n <= 8 and 2 <= m <= 8")
    return _emit_report(kernel_check(args.n, args.m), args.json, out)


COMMANDS = {
    "verify": cmd_verify,
    "eval-web": cmd_eval_web,
    "reduce-web": cmd_reduce_web,
    "functor-image": cmd_functor_image,
    "demazure": cmd_demazure,
    "dual-bases": cmd_dual_bases,
    "kernel-check": cmd_kernel_check,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        sys.stderr.write(f"qsatake: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
