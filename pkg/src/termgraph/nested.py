"""Nested-let term graphs with fork.

The constructors mirror a tiny expression language: an input position or a
bound name produces one output, ``Empty`` produces none, ``Fork``
concatenates the outputs of two subtrees, and ``Let(link, label, arg, body)``
reads ``let x = label(arg) in body`` — the argument subtree lives in the
outer world (it cannot see ``x``), the body in the extended one.

Every node carries its world and input arity so that construction, not use,
is where violations surface.  `flatten` linearises a tree into the
sequential form, hoisting argument subtrees in front of their binder,
left-to-right and innermost-first.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import hypergraph as hg
from . import sequential as sq
from . import worlds as w
from .errors import ArityMismatch, RangeError, WorldMismatch


@dataclass(frozen=True)
class Input:
    """Produce input position ``index`` as the single output."""

    world: w.World
    m: int
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.m:
            raise RangeError(f"input {self.index} out of range (m={self.m})")

    @property
    def n(self) -> int:
        return 1


@dataclass(frozen=True)
class Var:
    """Produce the node bound to ``name`` as the single output."""

    world: w.World
    m: int
    name: w.Name

    def __post_init__(self):
        if self.name.world != self.world:
            raise WorldMismatch(f"name {self.name.key!r} from another world")

    @property
    def n(self) -> int:
        return 1


@dataclass(frozen=True)
class Empty:
    """The suffix producing no outputs; the unit of fork."""

    world: w.World
    m: int

    @property
    def n(self) -> int:
        return 0


@dataclass(frozen=True)
class Fork:
    """Union of two suffixes with concatenated output vectors."""

    left: TG
    right: TG

    def __post_init__(self):
        if self.left.world != self.right.world:
            raise WorldMismatch("forked suffixes must share a world")
        if self.left.m != self.right.m:
            raise ArityMismatch("forked suffixes must share an input arity")

    @property
    def world(self) -> w.World:
        return self.left.world

    @property
    def m(self) -> int:
        return self.left.m

    @property
    def n(self) -> int:
        return self.left.n + self.right.n


@dataclass(frozen=True)
class Let:
    """``let x = label(arg) in body``; ``arg`` cannot use the new name."""

    link: w.Link
    label: hg.Label
    arg: TG
    body: TG

    def __post_init__(self):
        if self.arg.world != self.link.source:
            raise WorldMismatch("let argument must live in the link's source world")
        if self.body.world != self.link.target:
            raise WorldMismatch("let body must live in the link's target world")
        if self.arg.m != self.body.m:
            raise ArityMismatch("let argument and body must share an input arity")
        if self.arg.n != self.label.arity:
            raise ArityMismatch(
                f"{self.label} applied to a {self.arg.n}-output suffix"
            )

    @property
    def world(self) -> w.World:
        return self.link.source

    @property
    def m(self) -> int:
        return self.body.m

    @property
    def n(self) -> int:
        return self.body.n


TG = Input | Var | Empty | Fork | Let


# ---------------------------------------------------------------------------
# input-interface adjustment and parallel composition


def _retype(t: TG, m: int, offset: int) -> TG:
    match t:
        case Input():
            return Input(t.world, m, t.index + offset)
        case Var():
            return Var(t.world, m, t.name)
        case Empty():
            return Empty(t.world, m)
        case Fork(left, right):
            return Fork(_retype(left, m, offset), _retype(right, m, offset))
        case Let(link, label, arg, body):
            return Let(link, label, _retype(arg, m, offset), _retype(body, m, offset))
    raise TypeError(f"not a term-graph node: {t!r}")


def extend_inputs(extra: int, t: TG) -> TG:
    """Widen the input interface on the right; indices unchanged."""
    return _retype(t, t.m + extra, 0)


def shift_inputs(offset: int, t: TG) -> TG:
    """Widen the input interface on the left, shifting every index up."""
    return _retype(t, offset + t.m, offset)


def par(t: TG, u: TG) -> TG:
    """Side-by-side composition as a fork over the widened interface."""
    if t.world != u.world:
        raise WorldMismatch("parallel composition needs a shared world")
    return Fork(extend_inputs(u.m, t), shift_inputs(t.m, u))


# ---------------------------------------------------------------------------
# strengthening


def strengthen(fr: w.Fresh, env: w.Env, t: TG) -> TG:
    """Rebind every let with a strong link; rename uses through ``env``.

    ``env`` must carry every free name of ``t`` into ``fr``'s world.  The
    serial counter is threaded through the whole traversal, so distinct
    binders receive distinct serials even across fork branches.
    """
    result, _ = _strengthen(fr, env, t)
    return result


def _strengthen(fr: w.Fresh, env: w.Env, t: TG) -> tuple[TG, int]:
    match t:
        case Input():
            return Input(fr.world, t.m, t.index), fr.next_serial
        case Var():
            return Var(fr.world, t.m, env.lookup(t.name)), fr.next_serial
        case Empty():
            return Empty(fr.world, t.m), fr.next_serial
        case Fork(left, right):
            new_left, serial = _strengthen(fr, env, left)
            new_right, serial = _strengthen(w.Fresh(fr.world, serial), env, right)
            return Fork(new_left, new_right), serial
        case Let(link, label, arg, body):
            new_link, fr2 = fr.extend()
            new_arg, serial = _strengthen(w.Fresh(fr.world, fr2.next_serial), env, arg)
            env2 = env.map_values(lambda nm: w.import_through(new_link, nm))
            env2 = env2.insert(link, new_link.name)
            new_body, serial = _strengthen(w.Fresh(new_link.target, serial), env2, body)
            return Let(new_link, label, new_arg, new_body), serial
    raise TypeError(f"not a term-graph node: {t!r}")


# ---------------------------------------------------------------------------
# flattening into the sequential form


def flatten(fr: w.Fresh, env: w.Env, t: TG) -> sq.TGp:
    """Linearise into the sequential form, strengthening along the way.

    Argument subtrees are hoisted to declarations in front of their binder,
    left-to-right and innermost-first, so the declaration count equals the
    let count of ``t`` and the reading of the tree is unchanged.
    """
    fr2, _, decls, outs = _collect(fr, env, t)
    result: sq.TGp = sq.Output(fr2.world, t.m, outs)
    for link, label, args in reversed(decls):
        result = sq.Let(link, label, args, result)
    return result


def _collect(
    fr: w.Fresh, env: w.Env, t: TG
) -> tuple[w.Fresh, w.LinkPath, list[tuple[w.Link, hg.Label, sq.Args]], sq.Args]:
    """Walk a suffix, emitting declarations; returns the links it created.

    ``env`` payloads must live in ``fr``'s world on entry; the returned path
    lets the caller transport values into the world reached on exit.
    """
    match t:
        case Input():
            return fr, w.LinkPath(fr.world), [], (sq.InputArg(t.index),)
        case Var():
            return fr, w.LinkPath(fr.world), [], (sq.VarArg(env.lookup(t.name)),)
        case Empty():
            return fr, w.LinkPath(fr.world), [], ()
        case Fork(left, right):
            fr1, path1, decls1, outs1 = _collect(fr, env, left)
            env1 = env.map_values(lambda nm: w.import_name(path1, nm))
            fr2, path2, decls2, outs2 = _collect(fr1, env1, right)
            moved = sq.map_var_args(lambda nm: w.import_name(path2, nm), outs1)
            return fr2, path1.join(path2), decls1 + decls2, moved + outs2
        case Let(link, label, arg, body):
            fr1, path1, decls1, outs1 = _collect(fr, env, arg)
            env1 = env.map_values(lambda nm: w.import_name(path1, nm))
            new_link, fr2 = fr1.extend()
            env2 = env1.map_values(lambda nm: w.import_through(new_link, nm))
            env2 = env2.insert(link, new_link.name)
            fr3, path3, decls3, outs3 = _collect(fr2, env2, body)
            path = path1.extend(new_link).join(path3)
            decls = decls1 + [(new_link, label, outs1)] + decls3
            return fr3, path, decls, outs3
    raise TypeError(f"not a term-graph node: {t!r}")
