"""Untyped directed hypergraphs whose edges each produce a single node.

A graph with ``m`` input positions and ``n`` output positions is a morphism
``m -> n``: `seq` glues the outputs of one graph onto the inputs of the next,
and `par` places two graphs side by side.  Inner nodes and edges are dense
integer ranges, so the disjoint unions arising in composition are plain index
offsets.  All values are immutable; every operation returns a new graph.

A graph is a *jungle* when its edges biject with its inner nodes (each inner
node is produced by exactly one edge).  The constructors in this module only
ever build jungles, but the data type deliberately also admits unproduced
("undefined") and multiply-produced ("join") nodes, which `is_jungle`
detects.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityError, InterfaceMismatch, NotAJungle, RangeError


@dataclass(frozen=True)
class Label:
    """An operation symbol with a fixed number of arguments."""

    name: str
    arity: int

    def __post_init__(self):
        if self.arity < 0:
            raise ArityError(f"label {self.name!r} has negative arity {self.arity}")

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


@dataclass(frozen=True)
class Input:
    """Reference to input position ``index`` of the enclosing graph."""

    index: int


@dataclass(frozen=True)
class Inner:
    """Reference to inner node ``index`` of the enclosing graph."""

    index: int


NodeRef = Input | Inner


@dataclass(frozen=True)
class Edge:
    """A hyperedge ``label(inputs...) -> out`` producing one inner node."""

    label: Label
    inputs: tuple[NodeRef, ...]
    out: int

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        if len(self.inputs) != self.label.arity:
            raise ArityError(
                f"edge labelled {self.label} has {len(self.inputs)} inputs"
            )


@dataclass(frozen=True)
class Hypergraph:
    """A directed hypergraph ``m -> n`` with single-output edges.

    The input nodes are implicitly the positions ``0 .. m-1``; they are never
    stored.  ``output`` lists the nodes returned by the graph, and its length
    is the output arity ``n``.
    """

    m: int
    inner_count: int
    edges: tuple[Edge, ...]
    output: tuple[NodeRef, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "output", tuple(self.output))
        if self.m < 0 or self.inner_count < 0:
            raise RangeError("arities and node counts must be non-negative")
        for i, edge in enumerate(self.edges):
            for pos, ref in enumerate(edge.inputs):
                self._check_ref(ref, f"edge {i}, input {pos}")
            if not 0 <= edge.out < self.inner_count:
                raise RangeError(
                    f"edge {i} produces inner node {edge.out}, "
                    f"but the graph has {self.inner_count} inner nodes"
                )
        for pos, ref in enumerate(self.output):
            self._check_ref(ref, f"output {pos}")

    def _check_ref(self, ref: NodeRef, where: str) -> None:
        if isinstance(ref, Input):
            if not 0 <= ref.index < self.m:
                raise RangeError(f"{where}: input {ref.index} out of range (m={self.m})")
        elif isinstance(ref, Inner):
            if not 0 <= ref.index < self.inner_count:
                raise RangeError(
                    f"{where}: inner node {ref.index} out of range "
                    f"(inner count {self.inner_count})"
                )
        else:
            raise RangeError(f"{where}: {ref!r} is not a node reference")

    @property
    def n(self) -> int:
        return len(self.output)

    @property
    def input(self) -> tuple[NodeRef, ...]:
        """The implicit input node vector ``[Input(0) .. Input(m-1)]``."""
        return tuple(Input(i) for i in range(self.m))


def prim(label: Label) -> Hypergraph:
    """The one-edge graph applying ``label`` to all its inputs in order."""
    k = label.arity
    edge = Edge(label, tuple(Input(i) for i in range(k)), 0)
    return Hypergraph(k, 1, (edge,), (Inner(0),))


def wire(m: int, targets) -> Hypergraph:
    """An edge-free graph whose outputs are the inputs selected by ``targets``."""
    targets = tuple(targets)
    for i in targets:
        if not 0 <= i < m:
            raise RangeError(f"wire target {i} out of range (m={m})")
    return Hypergraph(m, 0, (), tuple(Input(i) for i in targets))


def identity(m: int) -> Hypergraph:
    return wire(m, range(m))


def duplicator(m: int) -> Hypergraph:
    """``m -> m + m``: every input is output twice, in order."""
    return wire(m, (*range(m), *range(m)))


def terminator(m: int) -> Hypergraph:
    """``m -> 0``: all inputs are dropped."""
    return wire(m, ())


def exchange(m: int, n: int) -> Hypergraph:
    """``m + n -> n + m``: the two blocks of inputs swapped."""
    return wire(m + n, (*range(m, m + n), *range(m)))


def seq(g1: Hypergraph, g2: Hypergraph) -> Hypergraph:
    """Compose ``g1 : k -> m`` with ``g2 : m -> n`` by gluing interfaces.

    Inner nodes and edges are the disjoint union of both graphs (``g2``'s
    shifted past ``g1``'s); each reference to input ``i`` of ``g2`` is
    replaced by output node ``i`` of ``g1``.
    """
    if g1.n != g2.m:
        raise InterfaceMismatch(
            f"cannot glue {g1.n} outputs onto {g2.m} inputs"
        )
    offset = g1.inner_count

    def transport(ref: NodeRef) -> NodeRef:
        if isinstance(ref, Input):
            return g1.output[ref.index]
        return Inner(ref.index + offset)

    edges = list(g1.edges)
    for e in g2.edges:
        edges.append(Edge(e.label, tuple(transport(r) for r in e.inputs), e.out + offset))
    output = tuple(transport(r) for r in g2.output)
    return Hypergraph(g1.m, offset + g2.inner_count, tuple(edges), output)


def par(g1: Hypergraph, g2: Hypergraph) -> Hypergraph:
    """Place ``g1 : m1 -> n1`` beside ``g2 : m2 -> n2`` as ``m1+m2 -> n1+n2``."""
    offset = g1.inner_count

    def transport(ref: NodeRef) -> NodeRef:
        if isinstance(ref, Input):
            return Input(ref.index + g1.m)
        return Inner(ref.index + offset)

    edges = list(g1.edges)
    for e in g2.edges:
        edges.append(Edge(e.label, tuple(transport(r) for r in e.inputs), e.out + offset))
    output = g1.output + tuple(transport(r) for r in g2.output)
    return Hypergraph(g1.m + g2.m, offset + g2.inner_count, tuple(edges), output)


def is_jungle(g: Hypergraph) -> bool:
    """True iff the edge-to-produced-node map is a bijection.

    Fails when some inner node is never produced ("undefined") or produced
    more than once ("join").
    """
    if len(g.edges) != g.inner_count:
        return False
    return len({e.out for e in g.edges}) == len(g.edges)


def is_acyclic(g: Hypergraph) -> bool:
    """True iff no inner node transitively feeds one of its producing edges."""
    reads: list[list[int]] = [[] for _ in range(g.inner_count)]
    for e in g.edges:
        for ref in e.inputs:
            if isinstance(ref, Inner):
                reads[e.out].append(ref.index)
    # 0 = unvisited, 1 = on the current path, 2 = finished
    state = [0] * g.inner_count

    def visit(j: int) -> bool:
        if state[j] == 1:
            return False
        if state[j] == 2:
            return True
        state[j] = 1
        for j2 in reads[j]:
            if not visit(j2):
                return False
        state[j] = 2
        return True

    return all(visit(j) for j in range(g.inner_count) if state[j] == 0)


@dataclass(frozen=True)
class TermGraphView:
    """A jungle reorganised so labels and arguments hang off inner nodes."""

    m: int
    nodes: tuple[tuple[Label, tuple[NodeRef, ...]], ...]
    output: tuple[NodeRef, ...]


def to_view(g: Hypergraph) -> TermGraphView:
    """Attach each inner node's producing label and arguments directly to it."""
    if not is_jungle(g):
        raise NotAJungle("term-graph view requires every inner node produced exactly once")
    producer = {e.out: e for e in g.edges}
    nodes = tuple(
        (producer[j].label, producer[j].inputs) for j in range(g.inner_count)
    )
    return TermGraphView(g.m, nodes, g.output)


def from_view(view: TermGraphView) -> Hypergraph:
    """Rebuild a hypergraph; edge ``j`` produces inner node ``j``."""
    edges = tuple(
        Edge(label, args, j) for j, (label, args) in enumerate(view.nodes)
    )
    return Hypergraph(view.m, len(view.nodes), edges, view.output)
