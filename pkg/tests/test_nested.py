import random

import pytest

from termgraph import hypergraph as hg
from termgraph import laws
from termgraph import nested as nt
from termgraph import sequential as sq
from termgraph import worlds as w
from termgraph.errors import ArityMismatch, RangeError, UnmappedName, WorldMismatch

from helpers import F, G, H, TG0_TERM, weak_tg0


def test_fork_of_empties_has_no_outputs():
    t = nt.Fork(nt.Empty(w.EMPTY, 2), nt.Empty(w.EMPTY, 2))
    assert (t.m, t.n) == (2, 0)


def test_tg0_is_well_formed():
    t = weak_tg0()
    assert (t.m, t.n) == (3, 1)
    assert t.world == w.EMPTY


def test_let_rejects_arity_mismatch():
    link = w.extend_weak(w.EMPTY, "x")
    two_outputs = nt.Fork(nt.Input(w.EMPTY, 1, 0), nt.Input(w.EMPTY, 1, 0))
    with pytest.raises(ArityMismatch):
        nt.Let(link, F, two_outputs, nt.Var(link.target, 1, link.name))


def test_constructor_world_checks():
    link = w.extend_weak(w.EMPTY, "x")
    with pytest.raises(WorldMismatch):
        nt.Var(w.EMPTY, 1, link.name)
    with pytest.raises(WorldMismatch):
        nt.Fork(nt.Empty(w.EMPTY, 1), nt.Empty(link.target, 1))
    with pytest.raises(RangeError):
        nt.Input(w.EMPTY, 1, 1)
    with pytest.raises(ArityMismatch):
        nt.Fork(nt.Empty(w.EMPTY, 1), nt.Empty(w.EMPTY, 2))


def test_strengthen_gives_distinct_fresh_binders():
    strong = nt.strengthen(w.fresh_empty(), w.Env.empty(), weak_tg0())

    def binders(t: nt.TG) -> list[w.Link]:
        match t:
            case nt.Let(link, _, arg, body):
                return [link] + binders(arg) + binders(body)
            case nt.Fork(left, right):
                return binders(left) + binders(right)
            case _:
                return []

    links = binders(strong)
    assert len(links) == 3
    assert all(link.kind is w.LinkKind.STRONG for link in links)
    serials = [link.name.serial for link in links]
    assert len(set(serials)) == 3
    keys = [link.name.key for link in links]
    assert len(set(keys)) == 3


def test_strengthen_of_empty_is_empty():
    t = nt.Empty(w.EMPTY, 5)
    assert nt.strengthen(w.fresh_empty(), w.Env.empty(), t) == t


def test_strengthen_rejects_unmapped_free_names():
    link = w.extend_weak(w.EMPTY, "x")
    stray = nt.Var(link.target, 1, link.name)
    with pytest.raises(UnmappedName):
        nt.strengthen(w.fresh_after(link.target), w.Env.empty(link.target), stray)


def test_extend_and_shift():
    t = weak_tg0()
    assert nt.extend_inputs(0, t) == t and nt.shift_inputs(0, t) == t
    wide = nt.extend_inputs(1, t)
    assert wide.m == 4 and wide.n == 1
    moved = nt.shift_inputs(2, nt.Input(w.EMPTY, 1, 0))
    assert moved == nt.Input(w.EMPTY, 3, 2)


def test_par_shifts_the_right_operand():
    left = nt.Input(w.EMPTY, 1, 0)
    right = nt.Input(w.EMPTY, 1, 0)
    combined = nt.par(left, right)
    assert combined == nt.Fork(nt.Input(w.EMPTY, 2, 0), nt.Input(w.EMPTY, 2, 1))
    with pytest.raises(WorldMismatch):
        nt.par(left, nt.Input(w.extend_weak(w.EMPTY, "x").target, 1, 0))


def test_flatten_of_pure_wiring():
    t = nt.Fork(nt.Input(w.EMPTY, 2, 0), nt.Input(w.EMPTY, 2, 1))
    flat = nt.flatten(w.fresh_empty(), w.Env.empty(), t)
    assert flat == sq.Output(w.EMPTY, 2, (sq.InputArg(0), sq.InputArg(1)))


def test_flatten_tg0():
    flat = nt.flatten(w.fresh_empty(), w.Env.empty(), weak_tg0())
    assert sq.let_count(flat) == 3
    node = flat
    seen = []
    while isinstance(node, sq.Let):
        seen.append((node.label, node.args))
        node = node.body
    assert [label for label, _ in seen] == [F, G, H]
    assert seen[0][1] == (sq.InputArg(0),)
    assert seen[1][1] == (sq.InputArg(1), sq.InputArg(2))
    jungle = sq.to_jungle(flat)
    assert laws.unfold(jungle) == (TG0_TERM,)


def test_flatten_after_strengthen_is_equivalent():
    direct = nt.flatten(w.fresh_empty(), w.Env.empty(), weak_tg0())
    strong = nt.strengthen(w.fresh_empty(), w.Env.empty(), weak_tg0())
    indirect = nt.flatten(w.fresh_empty(), w.Env.empty(), strong)
    assert laws.unfold(sq.to_jungle(direct)) == laws.unfold(sq.to_jungle(indirect))
    assert laws.isomorphic(sq.to_jungle(direct), sq.to_jungle(indirect)) is not None


def test_fork_output_arity_is_additive():
    rng = random.Random("fork-arity")
    world = w.EMPTY
    for _ in range(30):
        m = rng.randint(1, 3)
        left = _random_wiring(rng, world, m)
        right = _random_wiring(rng, world, m)
        assert nt.Fork(left, right).n == left.n + right.n


def _random_wiring(rng: random.Random, world: w.World, m: int) -> nt.TG:
    depth = rng.randint(0, 2)
    if depth == 0:
        return nt.Empty(world, m)
    parts = [nt.Input(world, m, rng.randrange(m)) for _ in range(depth)]
    t = parts[0]
    for part in parts[1:]:
        t = nt.Fork(t, part)
    return t


def test_par_flattens_to_jungle_par():
    rng = random.Random("nested-par")
    for i in range(20):
        m1, m2 = rng.randint(1, 2), rng.randint(1, 2)
        t = _random_let_tree(rng, m1)
        u = _random_let_tree(rng, m2)
        combined = nt.par(t, u)
        lhs = sq.to_jungle(nt.flatten(w.fresh_empty(), w.Env.empty(), combined))
        rhs = hg.par(
            sq.to_jungle(nt.flatten(w.fresh_empty(), w.Env.empty(), t)),
            sq.to_jungle(nt.flatten(w.fresh_empty(), w.Env.empty(), u)),
        )
        assert laws.isomorphic(lhs, rhs, max_inner=16) is not None


def _random_let_tree(rng: random.Random, m: int, depth: int = 2) -> nt.TG:
    """A small weak-link tree over the empty world."""

    def go(world: w.World, budget: int) -> nt.TG:
        roll = rng.random()
        if budget == 0 or roll < 0.3:
            if rng.random() < 0.5 and len(world):
                slot = rng.randrange(len(world))
                return nt.Var(world, m, w.Name(world, slot))
            return nt.Input(world, m, rng.randrange(m))
        if roll < 0.55:
            return nt.Fork(go(world, budget - 1), go(world, budget - 1))
        label = rng.choice((F, G))
        arg = go(world, budget - 1)
        arg = _pad_to_arity(arg, label.arity, m)
        link = w.extend_weak(world, "x")
        return nt.Let(link, label, arg, go(link.target, budget - 1))

    return go(w.EMPTY, depth)


def _pad_to_arity(t: nt.TG, arity: int, m: int) -> nt.TG:
    while t.n > arity:
        t = _drop_last_output(t)
    while t.n < arity:
        t = nt.Fork(t, nt.Input(t.world, m, 0))
    return t


def _drop_last_output(t: nt.TG) -> nt.TG:
    match t:
        case nt.Fork(left, right):
            if right.n > 0:
                return nt.Fork(left, _drop_last_output(right))
            return nt.Fork(_drop_last_output(left), right)
        case nt.Let(link, label, arg, body):
            return nt.Let(link, label, arg, _drop_last_output(body))
        case _:
            return nt.Empty(t.world, t.m)
