"""Sequential-let term graphs: a chain of node declarations, then outputs.

A value is either ``Output(args)`` or ``Let(link, label, args, body)``,
read as ``let x = label(args) in body``: one binder per declaration, each
argument an input position or a previously declared node.  The canonical
compositional form lives over the empty world with strong links; weak-link
values exist as input to `strengthen`.

Composition works by splicing one graph's declarations between the last
declaration and the output vector of the other (`in_let`), renaming the
spliced graph with the fresh supply reached at that point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import hypergraph as hg
from . import worlds as w
from .errors import (
    ArityMismatch,
    InterfaceMismatch,
    RangeError,
    UnboundName,
    WorldMismatch,
)


@dataclass(frozen=True)
class InputArg:
    """Argument referring to input position ``index``."""

    index: int


@dataclass(frozen=True)
class VarArg:
    """Argument referring to a declared node by name."""

    name: w.Name


Arg = InputArg | VarArg
Args = tuple[Arg, ...]


def _check_args(args: Args, world: w.World, m: int, where: str) -> None:
    for a in args:
        if isinstance(a, InputArg):
            if not 0 <= a.index < m:
                raise RangeError(f"{where}: input {a.index} out of range (m={m})")
        elif isinstance(a, VarArg):
            if a.name.world != world:
                raise WorldMismatch(f"{where}: name {a.name.key!r} from another world")
        else:
            raise RangeError(f"{where}: {a!r} is not an argument")


@dataclass(frozen=True)
class Output:
    """The end of the declaration chain: the vector of output nodes."""

    world: w.World
    m: int
    args: Args

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        _check_args(self.args, self.world, self.m, "output")

    @property
    def n(self) -> int:
        return len(self.args)


@dataclass(frozen=True)
class Let:
    """``let x = label(args) in body`` for the binder carried by ``link``."""

    link: w.Link
    label: hg.Label
    args: Args
    body: TGp

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.label.arity:
            raise ArityMismatch(
                f"let of {self.label} given {len(self.args)} arguments"
            )
        if self.body.world != self.link.target:
            raise WorldMismatch("let body must live in the link's target world")
        _check_args(self.args, self.link.source, self.body.m, f"let {self.label.name}")

    @property
    def world(self) -> w.World:
        return self.link.source

    @property
    def m(self) -> int:
        return self.body.m

    @property
    def n(self) -> int:
        return self.body.n


TGp = Output | Let


def let_count(g: TGp) -> int:
    count = 0
    while isinstance(g, Let):
        count += 1
        g = g.body
    return count


# ---------------------------------------------------------------------------
# constructors


def prim(label: hg.Label) -> TGp:
    """``let x = label(inputs...) in [x]`` over the empty world."""
    k = label.arity
    link, _ = w.fresh_empty().extend()
    args = tuple(InputArg(i) for i in range(k))
    body = Output(link.target, k, (VarArg(link.name),))
    return Let(link, label, args, body)


def wire(m: int, targets) -> TGp:
    """Outputs are the selected input positions; no declarations."""
    targets = tuple(targets)
    for i in targets:
        if not 0 <= i < m:
            raise RangeError(f"wire target {i} out of range (m={m})")
    return Output(w.EMPTY, m, tuple(InputArg(i) for i in targets))


def id_wire(k: int) -> TGp:
    return wire(k, range(k))


def dup(k: int) -> TGp:
    return wire(k, (*range(k), *range(k)))


def term(k: int) -> TGp:
    return wire(k, ())


# ---------------------------------------------------------------------------
# argument transport


def map_var_args(f: Callable[[w.Name], w.Name], args: Args) -> Args:
    """Apply ``f`` to every name argument; input positions pass through."""
    return tuple(VarArg(f(a.name)) if isinstance(a, VarArg) else a for a in args)


def seq_args(outs: Args, args: Args) -> Args:
    """Substitute ``outs[i]`` for every occurrence of input position ``i``."""
    result = []
    for a in args:
        if isinstance(a, InputArg):
            if not 0 <= a.index < len(outs):
                raise RangeError(f"input {a.index} has no matching output")
            result.append(outs[a.index])
        else:
            result.append(a)
    return tuple(result)


def _retype(g: TGp, m: int, adjust: Callable[[int], int]) -> TGp:
    if isinstance(g, Output):
        args = tuple(
            InputArg(adjust(a.index)) if isinstance(a, InputArg) else a for a in g.args
        )
        return Output(g.world, m, args)
    args = tuple(
        InputArg(adjust(a.index)) if isinstance(a, InputArg) else a for a in g.args
    )
    return Let(g.link, g.label, args, _retype(g.body, m, adjust))


def extend_inputs(extra: int, g: TGp) -> TGp:
    """Widen the input interface on the right; indices are unchanged."""
    return _retype(g, g.m + extra, lambda i: i)


def shift_inputs(offset: int, g: TGp) -> TGp:
    """Widen the input interface on the left, shifting every index up."""
    return _retype(g, offset + g.m, lambda i: i + offset)


# ---------------------------------------------------------------------------
# strengthening and splicing


def strengthen(fr: w.Fresh, env: w.Env, g: TGp) -> TGp:
    """Rebind every declaration with a strong link drawn from ``fr``.

    ``env`` carries the free names of ``g`` into ``fr``'s world.  Applied to
    a weak-link graph this removes shadowing; applied to a strong-link graph
    it renames it fresh relative to a new world.  Structure and declaration
    count are preserved.
    """
    if isinstance(g, Output):
        return Output(fr.world, g.m, map_var_args(env.lookup, g.args))
    link, fr2 = fr.extend()
    env2 = env.map_values(lambda nm: w.import_through(link, nm)).insert(g.link, link.name)
    return Let(
        link,
        g.label,
        map_var_args(env.lookup, g.args),
        strengthen(fr2, env2, g.body),
    )


def in_let(
    path: w.LinkPath,
    fr: w.Fresh,
    callback: Callable[[w.LinkPath, w.Fresh, Args], TGp],
    g: TGp,
) -> TGp:
    """Rebuild ``g``'s declarations, handing its output vector to ``callback``.

    The callback receives the path of links walked past and the fresh supply
    valid at that innermost point, and supplies the replacement tail.
    """
    if isinstance(g, Output):
        return callback(path, fr, g.args)
    return Let(
        g.link,
        g.label,
        g.args,
        in_let(path.extend(g.link), w.fresh_after(g.link.target), callback, g.body),
    )


def map_args(
    path: w.LinkPath, f: Callable[[w.LinkPath, Args], Args], g: TGp, m: int | None = None
) -> TGp:
    """Transform every argument vector in ``g``, threading the link path.

    Passing ``m`` retypes the input interface at the same time, for callers
    whose transformation eliminates or renumbers input references.
    """
    if isinstance(g, Output):
        return Output(g.world, g.m if m is None else m, f(path, g.args))
    return Let(
        g.link,
        g.label,
        f(path, g.args),
        map_args(path.extend(g.link), f, g.body, m),
    )


def fork(g1: TGp, g2: TGp) -> TGp:
    """Concatenate the outputs of two graphs over the same inputs.

    ``g1``'s declarations are kept; ``g2`` is renamed past them with the
    fresh supply reached there, and ``g1``'s outputs are imported into the
    final world before concatenation.  Duplication stays duplication: the
    two halves never share declarations.
    """
    _require_closed(g1)
    _require_closed(g2)
    if g1.m != g2.m:
        raise ArityMismatch(f"fork of {g1.m}-input and {g2.m}-input graphs")

    def after_g1(path1: w.LinkPath, fr: w.Fresh, outs1: Args) -> TGp:
        renamed = strengthen(fr, w.Env.empty(w.EMPTY), g2)

        def after_g2(path2: w.LinkPath, _fr: w.Fresh, outs2: Args) -> TGp:
            moved = map_var_args(lambda nm: w.import_name(path2, nm), outs1)
            return Output(path2.end, g1.m, moved + outs2)

        return in_let(w.LinkPath(fr.world), fr, after_g2, renamed)

    return in_let(w.LinkPath(w.EMPTY), w.fresh_empty(), after_g1, g1)


def par(g1: TGp, g2: TGp) -> TGp:
    """Side-by-side composition: fork after widening both input interfaces."""
    return fork(extend_inputs(g2.m, g1), shift_inputs(g1.m, g2))


def seq(g1: TGp, g2: TGp) -> TGp:
    """Sequential composition ``g1 : k -> m`` then ``g2 : m -> n``.

    ``g1``'s declarations are preserved; ``g2`` is renamed past them and
    every reference to one of its inputs is replaced by the corresponding
    output of ``g1``, imported into the world where the reference sits.
    """
    _require_closed(g1)
    _require_closed(g2)
    if g1.n != g2.m:
        raise InterfaceMismatch(f"cannot glue {g1.n} outputs onto {g2.m} inputs")

    def after_g1(path1: w.LinkPath, fr: w.Fresh, outs1: Args) -> TGp:
        renamed = strengthen(fr, w.Env.empty(w.EMPTY), g2)

        def splice(path2: w.LinkPath, args: Args) -> Args:
            moved = map_var_args(lambda nm: w.import_name(path2, nm), outs1)
            return seq_args(moved, args)

        return map_args(w.LinkPath(fr.world), splice, renamed, m=g1.m)

    return in_let(w.LinkPath(w.EMPTY), w.fresh_empty(), after_g1, g1)


def _require_closed(g: TGp) -> None:
    if g.world != w.EMPTY:
        raise WorldMismatch("composition expects graphs over the empty world")


# ---------------------------------------------------------------------------
# conversion


def to_jungle(g: TGp) -> hg.Hypergraph:
    """Convert to a hypergraph: declaration order numbers nodes and edges.

    Over the empty world, the binder of declaration ``j`` is slot ``j`` of
    every later world, so name arguments translate directly to inner-node
    references.  The result is a jungle and acyclic by construction.
    """
    _require_closed(g)
    m = g.m
    declared = 0
    edges: list[hg.Edge] = []

    def convert(args: Args) -> tuple[hg.NodeRef, ...]:
        refs: list[hg.NodeRef] = []
        for a in args:
            if isinstance(a, InputArg):
                refs.append(hg.Input(a.index))
            else:
                if a.name.slot >= declared:
                    raise UnboundName(f"{a.name.key!r} is not a declared node")
                refs.append(hg.Inner(a.name.slot))
        return tuple(refs)

    while isinstance(g, Let):
        label = hg.Label(g.label.name, g.label.arity)
        edges.append(hg.Edge(label, convert(g.args), declared))
        declared += 1
        g = g.body
    return hg.Hypergraph(m, declared, tuple(edges), convert(g.args))
