"""Typed code graphs: hyperedges with multiple typed inputs and outputs.

Node types are opaque symbols.  Constructors enforce structure (reference
ranges, port counts, edges producing only inner nodes); whether every port
actually carries the type its label demands is a separate, checkable
property — `typecheck` collects all violations rather than failing fast, so
an ill-typed graph is representable and fully diagnosable.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import hypergraph as hg
from .errors import ArityError, InterfaceMismatch, MultiOutputEdge, RangeError
from .hypergraph import Inner, Input, NodeRef


@dataclass(frozen=True)
class EdgeType:
    """Interface of an operation: input and output type vectors."""

    in_types: tuple[str, ...]
    out_types: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "in_types", tuple(self.in_types))
        object.__setattr__(self, "out_types", tuple(self.out_types))

    @property
    def in_arity(self) -> int:
        return len(self.in_types)

    @property
    def out_arity(self) -> int:
        return len(self.out_types)


@dataclass(frozen=True)
class TypedLabel:
    """An operation symbol together with its interface."""

    name: str
    etype: EdgeType

    @property
    def in_types(self) -> tuple[str, ...]:
        return self.etype.in_types

    @property
    def out_types(self) -> tuple[str, ...]:
        return self.etype.out_types

    def __str__(self) -> str:
        ins = ",".join(self.in_types)
        outs = ",".join(self.out_types)
        return f"{self.name} : [{ins}] -> [{outs}]"


def typed_label(name: str, in_types, out_types) -> TypedLabel:
    return TypedLabel(name, EdgeType(tuple(in_types), tuple(out_types)))


@dataclass(frozen=True)
class CGEdge:
    """A hyperedge with one port per entry of its label's type vectors."""

    label: TypedLabel
    inputs: tuple[NodeRef, ...]
    outputs: tuple[NodeRef, ...]

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if len(self.inputs) != self.label.etype.in_arity:
            raise ArityError(
                f"edge {self.label.name!r} has {len(self.inputs)} input ports, "
                f"label wants {self.label.etype.in_arity}"
            )
        if len(self.outputs) != self.label.etype.out_arity:
            raise ArityError(
                f"edge {self.label.name!r} has {len(self.outputs)} output ports, "
                f"label wants {self.label.etype.out_arity}"
            )
        for ref in self.outputs:
            if not isinstance(ref, Inner):
                raise RangeError(
                    f"edge {self.label.name!r} would produce graph input {ref!r}"
                )


@dataclass(frozen=True)
class CodeGraph:
    """A typed hypergraph ``in_types -> out_types``.

    ``inner_types`` records the type of every inner node; input positions
    take their types from ``in_types``.
    """

    in_types: tuple[str, ...]
    out_types: tuple[str, ...]
    inner_types: tuple[str, ...]
    edges: tuple[CGEdge, ...]
    output: tuple[NodeRef, ...]

    def __post_init__(self):
        for field in ("in_types", "out_types", "inner_types", "edges", "output"):
            object.__setattr__(self, field, tuple(getattr(self, field)))
        if len(self.output) != len(self.out_types):
            raise ArityError(
                f"{len(self.output)} output nodes for {len(self.out_types)} output types"
            )
        for i, edge in enumerate(self.edges):
            for pos, ref in enumerate(edge.inputs):
                self._check_ref(ref, f"edge {i}, input port {pos}")
            for pos, ref in enumerate(edge.outputs):
                self._check_ref(ref, f"edge {i}, output port {pos}")
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
    def m(self) -> int:
        return len(self.in_types)

    @property
    def n(self) -> int:
        return len(self.out_types)

    @property
    def inner_count(self) -> int:
        return len(self.inner_types)

    @property
    def cg_type(self) -> EdgeType:
        """The graph's own interface, viewed as a generalised hyperedge."""
        return EdgeType(self.in_types, self.out_types)


def node_type(cg: CodeGraph, ref: NodeRef) -> str:
    """The type carried by a node: input positions look it up in ``in_types``."""
    cg._check_ref(ref, "node_type")
    if isinstance(ref, Input):
        return cg.in_types[ref.index]
    return cg.inner_types[ref.index]


@dataclass(frozen=True)
class Violation:
    """One port whose node type differs from what the context demands."""

    site: str  # "edge-in", "edge-out", or "graph-out"
    edge: int | None
    position: int
    expected: str
    actual: str

    def __str__(self) -> str:
        at = f"edge {self.edge} " if self.edge is not None else ""
        return (
            f"{at}{self.site} port {self.position}: "
            f"expected {self.expected}, got {self.actual}"
        )


def typecheck(cg: CodeGraph) -> tuple[Violation, ...]:
    """Collect every port and output position whose types disagree.

    An empty result means the graph is correctly typed, both on its external
    interface and internally at each port of each edge.
    """
    found: list[Violation] = []
    for i, edge in enumerate(cg.edges):
        for pos, (ref, want) in enumerate(zip(edge.inputs, edge.label.in_types)):
            got = node_type(cg, ref)
            if got != want:
                found.append(Violation("edge-in", i, pos, want, got))
        for pos, (ref, want) in enumerate(zip(edge.outputs, edge.label.out_types)):
            got = node_type(cg, ref)
            if got != want:
                found.append(Violation("edge-out", i, pos, want, got))
    for pos, (ref, want) in enumerate(zip(cg.output, cg.out_types)):
        got = node_type(cg, ref)
        if got != want:
            found.append(Violation("graph-out", None, pos, want, got))
    return tuple(found)


def prim(label: TypedLabel) -> CodeGraph:
    """One edge wired straight through: inputs in order, one inner per output."""
    ins = tuple(Input(i) for i in range(label.etype.in_arity))
    outs = tuple(Inner(i) for i in range(label.etype.out_arity))
    edge = CGEdge(label, ins, outs)
    return CodeGraph(label.in_types, label.out_types, label.out_types, (edge,), outs)


def wire(in_types, targets) -> CodeGraph:
    """An edge-free graph routing inputs; output types follow the routing."""
    in_types = tuple(in_types)
    targets = tuple(targets)
    for i in targets:
        if not 0 <= i < len(in_types):
            raise RangeError(f"wire target {i} out of range (m={len(in_types)})")
    out_types = tuple(in_types[i] for i in targets)
    return CodeGraph(in_types, out_types, (), (), tuple(Input(i) for i in targets))


def seq(g1: CodeGraph, g2: CodeGraph) -> CodeGraph:
    """Glue ``g1``'s outputs onto ``g2``'s inputs; types must agree pointwise."""
    if len(g1.out_types) != len(g2.in_types):
        raise InterfaceMismatch(
            f"cannot glue {len(g1.out_types)} outputs onto {len(g2.in_types)} inputs"
        )
    for pos, (a, b) in enumerate(zip(g1.out_types, g2.in_types)):
        if a != b:
            raise InterfaceMismatch(f"position {pos}: {a} vs {b}")
    offset = g1.inner_count

    def transport(ref: NodeRef) -> NodeRef:
        if isinstance(ref, Input):
            return g1.output[ref.index]
        return Inner(ref.index + offset)

    edges = list(g1.edges)
    for e in g2.edges:
        edges.append(
            CGEdge(
                e.label,
                tuple(transport(r) for r in e.inputs),
                tuple(transport(r) for r in e.outputs),
            )
        )
    output = tuple(transport(r) for r in g2.output)
    return CodeGraph(
        g1.in_types, g2.out_types, g1.inner_types + g2.inner_types, tuple(edges), output
    )


def par(g1: CodeGraph, g2: CodeGraph) -> CodeGraph:
    """Place two typed graphs side by side, concatenating both interfaces."""
    offset = g1.inner_count

    def transport(ref: NodeRef) -> NodeRef:
        if isinstance(ref, Input):
            return Input(ref.index + g1.m)
        return Inner(ref.index + offset)

    edges = list(g1.edges)
    for e in g2.edges:
        edges.append(
            CGEdge(
                e.label,
                tuple(transport(r) for r in e.inputs),
                tuple(transport(r) for r in e.outputs),
            )
        )
    output = g1.output + tuple(transport(r) for r in g2.output)
    return CodeGraph(
        g1.in_types + g2.in_types,
        g1.out_types + g2.out_types,
        g1.inner_types + g2.inner_types,
        tuple(edges),
        output,
    )


def edge_label(cg: CodeGraph, e: int) -> TypedLabel:
    if not 0 <= e < len(cg.edges):
        raise RangeError(f"edge {e} out of range ({len(cg.edges)} edges)")
    return cg.edges[e].label


def edge_inputs(cg: CodeGraph, e: int) -> tuple[int, tuple[NodeRef, ...]]:
    """The edge's input arity and input nodes, type information discarded."""
    if not 0 <= e < len(cg.edges):
        raise RangeError(f"edge {e} out of range ({len(cg.edges)} edges)")
    edge = cg.edges[e]
    return edge.label.etype.in_arity, edge.inputs


def erase_to_jungle(cg: CodeGraph) -> hg.Hypergraph:
    """Forget all types.  Requires every edge to produce exactly one node."""
    edges = []
    for i, e in enumerate(cg.edges):
        if len(e.outputs) != 1:
            raise MultiOutputEdge(
                f"edge {i} ({e.label.name!r}) has {len(e.outputs)} output ports"
            )
        label = hg.Label(e.label.name, e.label.etype.in_arity)
        edges.append(hg.Edge(label, e.inputs, e.outputs[0].index))
    return hg.Hypergraph(cg.m, cg.inner_count, tuple(edges), cg.output)


def all_produced(cg: CodeGraph) -> bool:
    """True iff every inner node is produced by at least one edge port."""
    produced = {ref.index for e in cg.edges for ref in e.outputs}
    return len(produced) == cg.inner_count


def produced_once(cg: CodeGraph) -> bool:
    """True iff every inner node is produced by exactly one edge port."""
    seen: set[int] = set()
    for e in cg.edges:
        for ref in e.outputs:
            if ref.index in seen:
                return False
            seen.add(ref.index)
    return len(seen) == cg.inner_count
