"""Shared builders and independent oracles for the test suite."""
from __future__ import annotations

import dataclasses
import itertools
import random

from termgraph import codegraph as cg
from termgraph import hypergraph as hg
from termgraph import laws
from termgraph import nested as nt
from termgraph import sequential as sq
from termgraph import worlds as w

F = hg.Label("F", 1)
G = hg.Label("G", 2)
H = hg.Label("H", 3)


def weak_tg0() -> nt.TG:
    """The three-binding nested example, every binder keyed ``x0``.

    Reads ``let x0 = H((let x0 = F(i0) in x0, x0) ▽ (let x0 = G(i1, i2)
    in x0)) in x0`` over three inputs.
    """
    m = 3
    root = w.EMPTY
    x_f = w.extend_weak(root, "x0")
    let_f = nt.Let(
        x_f,
        F,
        nt.Input(root, m, 0),
        nt.Fork(nt.Var(x_f.target, m, x_f.name), nt.Var(x_f.target, m, x_f.name)),
    )
    x_g = w.extend_weak(root, "x0")
    let_g = nt.Let(
        x_g,
        G,
        nt.Fork(nt.Input(root, m, 1), nt.Input(root, m, 2)),
        nt.Var(x_g.target, m, x_g.name),
    )
    x_h = w.extend_weak(root, "x0")
    return nt.Let(x_h, H, nt.Fork(let_f, let_g), nt.Var(x_h.target, m, x_h.name))


def tg0_sequential() -> sq.TGp:
    """The same graph assembled from the compositional combinators."""
    return sq.seq(sq.par(sq.seq(sq.prim(F), sq.dup(1)), sq.prim(G)), sq.prim(H))


TG0_TERM = laws.App(
    H,
    (
        laws.App(F, (laws.Var(0),)),
        laws.App(F, (laws.Var(0),)),
        laws.App(G, (laws.Var(1), laws.Var(2))),
    ),
)


# ---------------------------------------------------------------------------
# random sequential term graphs


def random_tgp(
    rng: random.Random, m: int, n: int, max_lets: int = 3, pool=None
) -> sq.TGp:
    """A random closed strong-link sequential graph with interface m -> n."""
    pool = list(pool if pool is not None else laws.default_label_pool(3))
    nullary = [lab for lab in pool if lab.arity == 0]
    fresh = w.fresh_empty()
    world = w.EMPTY
    decls: list[tuple[w.Link, hg.Label, sq.Args]] = []

    def candidates() -> list[sq.Arg]:
        inputs = [sq.InputArg(i) for i in range(m)]
        names = [sq.VarArg(w.Name(world, s)) for s in range(len(world))]
        return inputs + names

    for _ in range(rng.randint(0, max_lets)):
        options = candidates()
        usable = pool if options else nullary
        if not usable:
            break
        label = rng.choice(usable)
        args = tuple(rng.choice(options) for _ in range(label.arity))
        link, fresh = fresh.extend()
        decls.append((link, label, args))
        world = link.target
    if n > 0 and not candidates():
        link, fresh = fresh.extend()
        decls.append((link, rng.choice(nullary), ()))
        world = link.target

    outs = tuple(rng.choice(candidates()) for _ in range(n))
    result: sq.TGp = sq.Output(world, m, outs)
    for link, label, args in reversed(decls):
        result = sq.Let(link, label, args, result)
    return result


# ---------------------------------------------------------------------------
# random typed code graphs and single-port perturbation

TYPE_POOL = ("int", "float", "bool", "vec")


def random_typed_label(rng: random.Random, in_types=None) -> cg.TypedLabel:
    if in_types is None:
        in_types = tuple(rng.choice(TYPE_POOL) for _ in range(rng.randint(0, 3)))
    out_types = tuple(rng.choice(TYPE_POOL) for _ in range(rng.randint(0, 2)))
    return cg.typed_label(f"op{rng.randrange(10000)}", in_types, out_types)


def random_codegraph(rng: random.Random, depth: int = 3) -> cg.CodeGraph:
    """Random composite of prim/wire under seq/par; well typed by construction."""
    if depth == 0:
        if rng.random() < 0.6:
            return cg.prim(random_typed_label(rng))
        in_types = tuple(rng.choice(TYPE_POOL) for _ in range(rng.randint(0, 3)))
        count = rng.randint(0, 3) if in_types else 0
        targets = [rng.randrange(len(in_types)) for _ in range(count)]
        return cg.wire(in_types, targets)
    g1 = random_codegraph(rng, depth - 1)
    roll = rng.random()
    if roll < 0.4:
        return cg.par(g1, random_codegraph(rng, depth - 1))
    if roll < 0.7 and g1.out_types:
        label = random_typed_label(rng, in_types=g1.out_types)
        return cg.seq(g1, cg.prim(label))
    count = rng.randint(0, 3) if g1.out_types else 0
    targets = [rng.randrange(len(g1.out_types)) for _ in range(count)]
    return cg.seq(g1, cg.wire(g1.out_types, targets))


def referenced_nodes(graph: cg.CodeGraph) -> list[hg.NodeRef]:
    refs: list[hg.NodeRef] = []
    for edge in graph.edges:
        refs.extend(edge.inputs)
        refs.extend(edge.outputs)
    refs.extend(graph.output)
    return refs


def perturb_one_port(rng: random.Random, graph: cg.CodeGraph) -> cg.CodeGraph | None:
    """Flip the recorded type of one referenced node; None if nothing is referenced."""
    refs = referenced_nodes(graph)
    if not refs:
        return None
    ref = rng.choice(refs)
    current = cg.node_type(graph, ref)
    other = rng.choice([t for t in TYPE_POOL if t != current])
    if isinstance(ref, hg.Input):
        in_types = list(graph.in_types)
        in_types[ref.index] = other
        return dataclasses.replace(graph, in_types=tuple(in_types))
    inner_types = list(graph.inner_types)
    inner_types[ref.index] = other
    return dataclasses.replace(graph, inner_types=tuple(inner_types))


# ---------------------------------------------------------------------------
# independent oracles


def topo_acyclic(g: hg.Hypergraph) -> bool:
    """Kahn's algorithm over the reads-relation; independent of is_acyclic."""
    reads: dict[int, list[int]] = {j: [] for j in range(g.inner_count)}
    for e in g.edges:
        for ref in e.inputs:
            if isinstance(ref, hg.Inner):
                reads[e.out].append(ref.index)
    pending = {j: len(deps) for j, deps in reads.items()}
    consumers: dict[int, list[int]] = {j: [] for j in range(g.inner_count)}
    for j, deps in reads.items():
        for dep in deps:
            consumers[dep].append(j)
    queue = [j for j, count in pending.items() if count == 0]
    done = 0
    while queue:
        j = queue.pop()
        done += 1
        for user in consumers[j]:
            pending[user] -= 1
            if pending[user] == 0:
                queue.append(user)
    return done == g.inner_count


def naive_canon(g: hg.Hypergraph):
    """Canonical key by brute force over all inner/edge permutations."""
    best = None
    for iperm in itertools.permutations(range(g.inner_count)):
        def move(ref: hg.NodeRef):
            if isinstance(ref, hg.Input):
                return ("I", ref.index)
            return ("N", iperm[ref.index])

        rows = sorted(
            (e.label.name, e.label.arity, tuple(move(r) for r in e.inputs), iperm[e.out])
            for e in g.edges
        )
        key = (g.m, tuple(move(r) for r in g.output), tuple(rows))
        if best is None or key < best:
            best = key
    return best


def two_label_family(max_inner: int = 3) -> list[hg.Hypergraph]:
    """Every 1 -> 1 jungle over {A/1, B/2} whose edges read earlier nodes."""
    a, b = hg.Label("A", 1), hg.Label("B", 2)
    graphs: list[hg.Hypergraph] = []
    for k in range(max_inner + 1):
        def build(edges: list[hg.Edge], j: int) -> None:
            if j == k:
                nodes = [hg.Input(0)] + [hg.Inner(i) for i in range(k)]
                for out in nodes:
                    graphs.append(hg.Hypergraph(1, k, tuple(edges), (out,)))
                return
            pool = [hg.Input(0)] + [hg.Inner(i) for i in range(j)]
            for label in (a, b):
                for args in itertools.product(pool, repeat=label.arity):
                    build(edges + [hg.Edge(label, args, j)], j + 1)

        build([], 0)
    return graphs
