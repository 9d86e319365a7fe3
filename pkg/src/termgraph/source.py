"""Parsing, printing, and elaboration of the textual let-language.

One graph per file::

    label F : 1
    label G : 2
    inputs 3
    let a = F(i0)
    let b = G(a, i1)
    outputs b, a

Arguments are input positions ``i0, i1, ...`` or previously bound names; a
later ``let`` of an already-used name shadows the earlier binding.  In typed
mode the signatures carry type vectors and the inputs line lists the input
types instead of a count::

    label add : [int, int] -> [int]
    inputs [int, int]

Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from . import codegraph as cg
from . import hypergraph as hg
from . import sequential as sq
from . import worlds as w
from .errors import ArityError, ParseError, ScopeError, TermGraphError

_INPUT_ARG = re.compile(r"^i([0-9]+)$")
_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_']*|[0-9]+")


@dataclass(frozen=True)
class ArgTok:
    kind: str  # "input" | "name"
    value: int | str
    line: int


@dataclass(frozen=True)
class LetLine:
    name: str
    label: str
    args: tuple[ArgTok, ...]
    line: int


@dataclass
class SourceProgram:
    typed: bool
    labels: dict
    label_lines: dict[str, int]
    input_count: int
    in_types: tuple[str, ...]
    lets: list[LetLine]
    outputs: tuple[ArgTok, ...]


class _Cursor:
    """Single-line scanner with column tracking for error messages."""

    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.pos + 1)

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_word(self) -> str:
        self._skip_ws()
        match = _WORD.match(self.text, self.pos)
        if not match:
            raise self.error("expected an identifier or number")
        self.pos = match.end()
        return match.group()

    def expect(self, literal: str) -> None:
        self._skip_ws()
        if not self.text.startswith(literal, self.pos):
            raise self.error(f"expected {literal!r}")
        self.pos += len(literal)

    def at_end(self) -> bool:
        self._skip_ws()
        return self.pos >= len(self.text)

    def expect_end(self) -> None:
        if not self.at_end():
            raise self.error("unexpected trailing text")


def _type_list(cur: _Cursor) -> tuple[str, ...]:
    cur.expect("[")
    types: list[str] = []
    if cur.peek() != "]":
        types.append(cur.take_word())
        while cur.peek() == ",":
            cur.expect(",")
            types.append(cur.take_word())
    cur.expect("]")
    return tuple(types)


def _arg_tokens(cur: _Cursor, closing: str | None) -> tuple[ArgTok, ...]:
    args: list[ArgTok] = []
    if (closing and cur.peek() == closing) or (not closing and cur.at_end()):
        return ()
    while True:
        word = cur.take_word()
        matched = _INPUT_ARG.match(word)
        if matched:
            args.append(ArgTok("input", int(matched.group(1)), cur.line))
        elif word.isdigit():
            raise cur.error(f"{word!r} is not an argument")
        else:
            args.append(ArgTok("name", word, cur.line))
        if cur.peek() != ",":
            return tuple(args)
        cur.expect(",")


def parse(text: str) -> SourceProgram:
    """Parse one program; syntax errors report line and column."""
    typed: bool | None = None
    labels: dict = {}
    label_lines: dict[str, int] = {}
    input_count: int | None = None
    in_types: tuple[str, ...] | None = None
    lets: list[LetLine] = []
    outputs: tuple[ArgTok, ...] | None = None

    def set_mode(is_typed: bool, cur: _Cursor) -> None:
        nonlocal typed
        if typed is None:
            typed = is_typed
        elif typed != is_typed:
            raise cur.error("mixed typed and untyped declarations")

    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.split("#", 1)[0]
        if not stripped.strip():
            continue
        cur = _Cursor(stripped, lineno)
        if outputs is not None:
            raise cur.error("text after the outputs line")
        head = cur.take_word()
        if head == "label":
            name = cur.take_word()
            cur.expect(":")
            if cur.peek() == "[":
                set_mode(True, cur)
                ins = _type_list(cur)
                cur.expect("->")
                outs = _type_list(cur)
                labels[name] = cg.typed_label(name, ins, outs)
            else:
                set_mode(False, cur)
                word = cur.take_word()
                if not word.isdigit():
                    raise cur.error(f"expected an arity, got {word!r}")
                labels[name] = hg.Label(name, int(word))
            label_lines[name] = lineno
            cur.expect_end()
        elif head == "inputs":
            if input_count is not None or in_types is not None:
                raise cur.error("duplicate inputs line")
            if cur.peek() == "[":
                set_mode(True, cur)
                in_types = _type_list(cur)
            else:
                set_mode(False, cur)
                word = cur.take_word()
                if not word.isdigit():
                    raise cur.error(f"expected an input count, got {word!r}")
                input_count = int(word)
            cur.expect_end()
        elif head == "let":
            if input_count is None and in_types is None:
                raise cur.error("lets must come after the inputs line")
            name = cur.take_word()
            if _INPUT_ARG.match(name):
                raise cur.error(f"{name!r} is reserved for input positions")
            cur.expect("=")
            label = cur.take_word()
            cur.expect("(")
            args = _arg_tokens(cur, ")")
            cur.expect(")")
            cur.expect_end()
            lets.append(LetLine(name, label, args, lineno))
        elif head == "outputs":
            outputs = _arg_tokens(cur, None)
            cur.expect_end()
        else:
            raise cur.error(f"unknown directive {head!r}")

    if input_count is None and in_types is None:
        raise ParseError("missing inputs line")
    if outputs is None:
        raise ParseError("missing outputs line")
    return SourceProgram(
        typed=bool(typed),
        labels=labels,
        label_lines=label_lines,
        input_count=input_count if input_count is not None else len(in_types or ()),
        in_types=in_types or (),
        lets=lets,
        outputs=outputs,
    )


def _lookup_label(prog: SourceProgram, name: str, line: int):
    if name not in prog.labels or prog.label_lines[name] > line:
        raise ScopeError(f"label {name!r} used before its declaration", line)
    return prog.labels[name]


def elaborate(prog: SourceProgram) -> sq.TGp:
    """Build the weak-link sequential term graph a program denotes."""
    if prog.typed:
        raise TermGraphError("typed programs elaborate to code graphs")
    m = prog.input_count

    def resolve(tok: ArgTok, world: w.World) -> sq.Arg:
        if tok.kind == "input":
            if not 0 <= tok.value < m:
                raise ScopeError(f"input i{tok.value} out of range (inputs {m})", tok.line)
            return sq.InputArg(tok.value)
        slot = world.resolve(tok.value)
        if slot is None:
            raise ScopeError(f"{tok.value!r} used before definition", tok.line)
        return sq.VarArg(w.Name(world, slot))

    world = w.EMPTY
    decls: list[tuple[w.Link, hg.Label, sq.Args]] = []
    for ll in prog.lets:
        label = _lookup_label(prog, ll.label, ll.line)
        args = tuple(resolve(tok, world) for tok in ll.args)
        if len(args) != label.arity:
            raise ArityError(
                f"line {ll.line}: {label.name} expects {label.arity} "
                f"arguments, got {len(args)}"
            )
        link = w.extend_weak(world, ll.name)
        decls.append((link, label, args))
        world = link.target

    result: sq.TGp = sq.Output(world, m, tuple(resolve(t, world) for t in prog.outputs))
    for link, label, args in reversed(decls):
        result = sq.Let(link, label, args, result)
    return result


def elaborate_typed(prog: SourceProgram) -> cg.CodeGraph:
    """Build a code graph from a typed program; types are *not* judged here."""
    if not prog.typed:
        raise TermGraphError("untyped programs elaborate to term graphs")
    in_types = prog.in_types
    scope: dict[str, int] = {}
    inner_types: list[str] = []
    edges: list[cg.CGEdge] = []

    def resolve(tok: ArgTok) -> hg.NodeRef:
        if tok.kind == "input":
            if not 0 <= tok.value < len(in_types):
                raise ScopeError(
                    f"input i{tok.value} out of range (inputs {len(in_types)})", tok.line
                )
            return hg.Input(tok.value)
        if tok.value not in scope:
            raise ScopeError(f"{tok.value!r} used before definition", tok.line)
        return hg.Inner(scope[tok.value])

    for ll in prog.lets:
        label = _lookup_label(prog, ll.label, ll.line)
        if label.etype.out_arity != 1:
            raise ArityError(
                f"line {ll.line}: {label.name} produces "
                f"{label.etype.out_arity} values, a let binds exactly one"
            )
        if len(ll.args) != label.etype.in_arity:
            raise ArityError(
                f"line {ll.line}: {label.name} expects {label.etype.in_arity} "
                f"arguments, got {len(ll.args)}"
            )
        refs = tuple(resolve(tok) for tok in ll.args)
        index = len(inner_types)
        inner_types.append(label.out_types[0])
        edges.append(cg.CGEdge(label, refs, (hg.Inner(index),)))
        scope[ll.name] = index

    output = tuple(resolve(tok) for tok in prog.outputs)
    out_types = tuple(
        in_types[r.index] if isinstance(r, hg.Input) else inner_types[r.index]
        for r in output
    )
    return cg.CodeGraph(in_types, out_types, tuple(inner_types), tuple(edges), output)


def format_program(g: sq.TGp) -> str:
    """Print a closed strong-link graph back as program text.

    Binders are renamed to ``n0, n1, ...`` in declaration order, which is
    also how name arguments resolve, so reparsing reproduces the graph.
    """
    if g.world != w.EMPTY:
        raise TermGraphError("only graphs over the empty world can be printed")
    arities: dict[str, int] = {}
    decls: list[tuple[hg.Label, sq.Args]] = []
    m = g.m

    def fmt(arg: sq.Arg) -> str:
        if isinstance(arg, sq.InputArg):
            return f"i{arg.index}"
        return f"n{arg.name.slot}"

    node: sq.TGp = g
    while isinstance(node, sq.Let):
        label = node.label
        if arities.setdefault(label.name, label.arity) != label.arity:
            raise TermGraphError(f"label {label.name!r} printed at two arities")
        decls.append((label, node.args))
        node = node.body

    lines = [f"label {name} : {arity}" for name, arity in sorted(arities.items())]
    lines.append(f"inputs {m}")
    for index, (label, args) in enumerate(decls):
        lines.append(f"let n{index} = {label.name}({', '.join(map(fmt, args))})")
    out = ", ".join(map(fmt, node.args))
    lines.append(f"outputs {out}" if out else "outputs")
    return "\n".join(lines) + "\n"
