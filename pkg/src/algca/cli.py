"""Command-line interface: ``algca <command> ...``.

Algebras, groups and CA are given as file paths or built-in names (``@Z2``,
``@S3``, ``@2^2``; the ``@`` is optional when no file of that name exists).
Exit status: 0 success, 1 failed verification, 2 usage or input error,
3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys

from .algebra import check_entropic, dump_algebra, hom_violation, power_algebra
from .automata import (
    compose,
    dump_ca,
    eca,
    evolve,
    load_ca,
    local_hom,
    minimal_memory,
    resolve_algebra,
    resolve_group,
)
from .endo import PREDICATES, classify_eca, count_endoca, enumerate_endoca
from .errors import AlgCAError, CapExceeded
from .groups import Configuration
from .homs import count_homs, enumerate_homs, power_homs
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _name(spec: str) -> str:
    return spec[1:] if spec.startswith("@") else spec


def _algebra(spec: str):
    return resolve_algebra(_name(spec))


def _group(spec: str):
    return resolve_group(_name(spec))


def _ca(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return load_ca(text, os.path.dirname(os.path.abspath(path)))


def _ints(text: str) -> list[int]:
    """``"0,1,1"``, ``"0 1 1"`` or the digit string ``"011"``."""
    text = text.strip()
    try:
        if "," in text or " " in text:
            return [int(t) for t in text.replace(",", " ").split()]
        return [int(c) for c in text]
    except ValueError:
        raise UsageError(f"bad value list {text!r}") from None


def _period(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"bad period {text!r}") from None


def _format_config(x: Configuration, q: int) -> list[str]:
    sep = "" if q <= 10 else " "
    return [sep.join(map(str, row)) for row in x.rows()]


# -- commands ----------------------------------------------------------------


def cmd_algebra_check(args) -> int:
    a = _algebra(args.algebra)
    ops = ", ".join(f"{op.name}/{op.arity}" for op in a.ops)
    print(f"valid: algebra {a.name} size {a.size} ops {ops}")
    if args.entropic:
        result = check_entropic(a, args.cap)
        print(f"entropic: {'true' if result.entropic else 'false'}")
        if result.witness is not None:
            print(f"witness: {result.witness}")
    if args.dump:
        sys.stdout.write(dump_algebra(a))
    return EXIT_OK


def cmd_group_check(args) -> int:
    g = _group(args.group)
    if not g.is_finite:
        print(f"valid: lattice group {g.name}")
        return EXIT_OK
    print(f"valid: group {g.name} order {g.order} {'abelian' if g.is_abelian() else 'nonabelian'}")
    return EXIT_OK


def _hom_domain(args):
    dom, cod = _algebra(args.domain), _algebra(args.codomain)
    if args.power is not None:
        if args.power < 0:
            raise UsageError("--power must be non-negative")
        dom = power_algebra(dom, range(args.power), args.cap)
    return dom, cod


def cmd_hom(args) -> int:
    dom, cod = _hom_domain(args)
    if args.action == "count":
        print(count_homs(dom, cod, args.cap))
        return EXIT_OK
    if args.power is not None and getattr(dom, "base", None) == cod:
        homs = power_homs(cod, args.power, args.cap)
    else:
        homs = enumerate_homs(dom, cod, args.cap)
    for t in homs.tables():
        print(" ".join(map(str, t)))
    return EXIT_OK


def cmd_ca(args) -> int:
    if args.action == "compose":
        if len(args.files) != 2:
            raise UsageError("ca compose takes two CA files (outer first)")
        t1, t2 = (_ca(p) for p in args.files)
        out = compose(t1, t2, args.cap)
        sys.stdout.write(dump_ca(minimal_memory(out) if args.minimize else out, f"{t1.name}.{t2.name}"))
        return EXIT_OK
    if len(args.files) != 1:
        raise UsageError(f"ca {args.action} takes one CA file")
    ca = _ca(args.files[0])
    if args.action == "minimize":
        sys.stdout.write(dump_ca(minimal_memory(ca)))
    elif args.action == "is-endo":
        phi = local_hom(ca, args.cap)
        violation = hom_violation(phi)
        print(f"endomorphic: {'true' if violation is None else 'false'}")
        if violation is not None:
            inputs = ", ".join(str(phi.domain.decode(a)) for a in violation.args)
            print(
                f"witness: mu({violation.op}({inputs})) = {violation.image_of_result} "
                f"but {violation.op} of the images = {violation.result_of_images}"
            )
    else:
        if args.init is None:
            raise UsageError("ca apply needs --init")
        period = _period(args.period)
        if not ca.group.is_finite and period is None:
            raise UsageError(f"CA over {ca.group.name} needs --period")
        x = Configuration(ca.group, _ints(args.init), period)
        for i, y in enumerate(evolve(ca, x, args.steps)):
            if i == 0 and not args.show_initial:
                continue
            print("\n".join(_format_config(y, ca.alphabet.size)))
    return EXIT_OK


def cmd_endoca(args) -> int:
    group, alphabet = _group(args.group), _algebra(args.alphabet)
    memory = [group.parse_element(tok) for tok in args.memory.split()]
    if args.action == "count":
        result = count_endoca(group, memory, alphabet, args.cap)
        print(result.count)
        if args.verbose:
            print(f"method: {result.method} (agreeing: {', '.join(result.agreeing)})")
        return EXIT_OK
    family = enumerate_endoca(group, memory, alphabet, args.cap)
    for t in family.tables():
        print(" ".join(map(str, t)))
    return EXIT_OK


def cmd_eca(args) -> int:
    if args.action == "classify":
        if args.predicate is None:
            raise UsageError("eca classify needs --predicate")
        alphabet = _algebra(args.alphabet) if args.alphabet else None
        if args.predicate == "endomorphic-under" and alphabet is None:
            raise UsageError("predicate endomorphic-under needs --alphabet")
        print(",".join(map(str, classify_eca(args.predicate, alphabet))))
        return EXIT_OK
    if args.rule is None or args.init is None:
        raise UsageError("eca run needs a rule number and --init")
    bits = _ints(args.init)
    if any(b not in (0, 1) for b in bits):
        raise UsageError("--init must be a 0/1 string")
    period = args.period if args.period is not None else len(bits)
    if period != len(bits):
        raise UsageError(f"--init has {len(bits)} cells, period is {period}")
    if not 0 <= args.rule <= 255:
        raise UsageError(f"ECA rule number {args.rule} outside 0..255")
    ca = eca(args.rule)
    x = Configuration(ca.group, bits, (period,))
    for y in evolve(ca, x, args.steps):
        print("".join(map(str, y.values)))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; expected one of {', '.join(SUITES)}, all")
    report = run_suite(args.suite, cap=args.cap, seed=args.seed)
    print(report)
    return EXIT_OK if report.ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def _add_cap(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cap", type=int, default=None, help="largest domain for exhaustive search")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="algca", description="Cellular automata over finite algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="validate an algebra file")
    alg.add_argument("action", choices=["check"])
    alg.add_argument("algebra")
    alg.add_argument("--entropic", action="store_true", help="decide the interchange law")
    alg.add_argument("--dump", action="store_true", help="print the algebra in file format")
    _add_cap(alg)
    alg.set_defaults(func=cmd_algebra_check)

    grp = sub.add_parser("group", help="validate a group file")
    grp.add_argument("action", choices=["check"])
    grp.add_argument("group")
    grp.set_defaults(func=cmd_group_check)

    hom = sub.add_parser("hom", help="count or list homomorphisms DOMAIN -> CODOMAIN")
    hom.add_argument("action", choices=["count", "list"])
    hom.add_argument("domain")
    hom.add_argument("codomain")
    hom.add_argument("--power", type=int, default=None, help="use DOMAIN^s as the domain")
    _add_cap(hom)
    hom.set_defaults(func=cmd_hom)

    ca = sub.add_parser("ca", help="work with CA files")
    ca.add_argument("action", choices=["apply", "compose", "is-endo", "minimize"])
    ca.add_argument("files", nargs="+")
    ca.add_argument("--init", help="initial configuration, e.g. 0110 or 0,1,1,0")
    ca.add_argument("--period", help="lattice period, m or m,n")
    ca.add_argument("--steps", type=int, default=1)
    ca.add_argument("--show-initial", action="store_true")
    ca.add_argument("--minimize", action="store_true", help="minimize the composite's memory")
    _add_cap(ca)
    ca.set_defaults(func=cmd_ca)

    endo = sub.add_parser("endoca", help="count or list endomorphic CA")
    endo.add_argument("action", choices=["count", "list"])
    endo.add_argument("group")
    endo.add_argument("alphabet")
    endo.add_argument("--memory", required=True, help='memory set, e.g. "-1 0 1"')
    endo.add_argument("-v", "--verbose", action="store_true")
    _add_cap(endo)
    endo.set_defaults(func=cmd_endoca)

    e = sub.add_parser("eca", help="elementary CA")
    e.add_argument("action", choices=["classify", "run"])
    e.add_argument("rule", nargs="?", type=int)
    e.add_argument("--predicate", choices=PREDICATES)
    e.add_argument("--alphabet")
    e.add_argument("--period", type=int)
    e.add_argument("--steps", type=int, default=1)
    e.add_argument("--init")
    e.set_defaults(func=cmd_eca)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", help=f"one of {', '.join(SUITES)}, all")
    ver.add_argument("--seed", type=int, default=0)
    _add_cap(ver)
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "steps", 0) is not None and getattr(args, "steps", 0) < 0:
        parser.error("--steps must be non-negative")
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, AlgCAError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
