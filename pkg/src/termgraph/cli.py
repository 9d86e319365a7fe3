"""Command-line front end.

Exit codes: 0 on success, 1 when a check fails or program text is
semantically wrong, 2 for usage or syntax errors.  ``TG_COLOR=1`` colours
diagnostics on stderr; it never affects checked output on stdout.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import codegraph as cg
from . import dot as dot_format
from . import hypergraph as hg
from . import laws
from . import sequential as sq
from . import source
from . import worlds as w
from .errors import ParseError, TermGraphError


def _diag(message: str) -> None:
    if os.environ.get("TG_COLOR") == "1":
        message = f"\x1b[31m{message}\x1b[0m"
    print(message, file=sys.stderr)


def _parse_file(path: str) -> source.SourceProgram:
    return source.parse(Path(path).read_text(encoding="utf-8"))


def _load_tgp(path: str) -> sq.TGp:
    prog = _parse_file(path)
    if prog.typed:
        raise TermGraphError(f"{path}: typed programs only work with 'typecheck'")
    weak = source.elaborate(prog)
    return sq.strengthen(w.fresh_empty(), w.Env.empty(), weak)


def _load_jungle(path: str) -> hg.Hypergraph:
    return sq.to_jungle(_load_tgp(path))


def _cmd_check(args) -> int:
    prog = _parse_file(args.file)
    if prog.typed:
        graph = source.elaborate_typed(prog)
        violations = cg.typecheck(graph)
        if violations:
            for v in violations:
                _diag(str(v))
            return 1
        print(
            f"ok: {len(graph.in_types)} -> {len(graph.out_types)}, "
            f"{len(graph.edges)} edges, well typed"
        )
        return 0
    jungle = sq.to_jungle(
        sq.strengthen(w.fresh_empty(), w.Env.empty(), source.elaborate(prog))
    )
    kind = "jungle" if hg.is_jungle(jungle) else "hypergraph"
    shape = "acyclic" if hg.is_acyclic(jungle) else "cyclic"
    print(f"ok: {jungle.m} -> {jungle.n}, {len(jungle.edges)} edges, {kind}, {shape}")
    return 0


def _cmd_dot(args) -> int:
    sys.stdout.write(dot_format.render(_load_jungle(args.file)))
    return 0


def _cmd_compose(args) -> int:
    g1, g2 = _load_tgp(args.first), _load_tgp(args.second)
    composed = sq.seq(g1, g2) if args.seq else sq.par(g1, g2)
    sys.stdout.write(source.format_program(composed))
    return 0


def _cmd_iso(args) -> int:
    witness = laws.isomorphic(_load_jungle(args.first), _load_jungle(args.second))
    if witness is None:
        print("not isomorphic")
        return 1
    print("isomorphic")
    return 0


def _cmd_axioms(args) -> int:
    report = laws.check_axioms(args.seed, args.count, max_inner=args.max_inner)
    sys.stdout.write(report.table())
    return 0 if report.ok else 1


def _cmd_typecheck(args) -> int:
    prog = _parse_file(args.file)
    if not prog.typed:
        raise TermGraphError(f"{args.file}: no typed signatures to check")
    graph = source.elaborate_typed(prog)
    violations = cg.typecheck(graph)
    if violations:
        for v in violations:
            print(str(v))
        return 1
    print("well typed")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tg", description="term-graph construction, checking, and rendering"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="validate a program")
    check.add_argument("file")
    check.set_defaults(run=_cmd_check)

    dotp = commands.add_parser("dot", help="emit DOT for a program's graph")
    dotp.add_argument("file")
    dotp.set_defaults(run=_cmd_dot)

    compose = commands.add_parser("compose", help="compose two programs")
    how = compose.add_mutually_exclusive_group(required=True)
    how.add_argument("--seq", action="store_true", help="glue outputs onto inputs")
    how.add_argument("--par", action="store_true", help="place side by side")
    compose.add_argument("first")
    compose.add_argument("second")
    compose.set_defaults(run=_cmd_compose)

    iso = commands.add_parser("iso", help="decide graph isomorphism")
    iso.add_argument("first")
    iso.add_argument("second")
    iso.set_defaults(run=_cmd_iso)

    axioms = commands.add_parser("axioms", help="fuzz the composition algebra")
    axioms.add_argument("--seed", type=int, default=0)
    axioms.add_argument("--count", type=int, default=100)
    axioms.add_argument("--max-inner", type=int, default=4)
    axioms.set_defaults(run=_cmd_axioms)

    typecheck = commands.add_parser("typecheck", help="typecheck a typed program")
    typecheck.add_argument("file")
    typecheck.set_defaults(run=_cmd_typecheck)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ParseError as exc:
        _diag(f"error: {exc}")
        return 2
    except TermGraphError as exc:
        _diag(f"error: {exc}")
        return 1
    except OSError as exc:
        _diag(f"error: {exc}")
        return 2


def entry() -> None:
    sys.exit(main())
