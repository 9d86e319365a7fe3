"""Morphism equality and the wiring-algebra equation suite.

Two graphs denote the same morphism when they are isomorphic: related by a
label-, wiring-, and output-preserving bijection of inner nodes and edges
that fixes every input position.  `isomorphic` decides this exactly by
backtracking, and `unfold` gives an independent denotation of acyclic graphs
as first-order terms (forgetting sharing and garbage) used to cross-check
the composition operators.

`check_axioms` fuzzes every equation required of the sequential/parallel
composition algebra together with the duplicator, terminator, and exchange
wirings, comparing both sides up to isomorphism.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import hypergraph as hg
from .errors import (
    ArityError,
    CyclicGraph,
    MultiplyProduced,
    SizeLimit,
    TermGraphError,
    Unproduced,
)

# ---------------------------------------------------------------------------
# terms and unfolding


@dataclass(frozen=True)
class Var:
    """The term returning input position ``index`` unchanged."""

    index: int

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    """Application of a label to argument terms."""

    label: hg.Label
    args: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.label.arity:
            raise ArityError(f"{self.label} applied to {len(self.args)} arguments")

    def __str__(self) -> str:
        if not self.args:
            return self.label.name
        return f"{self.label.name}({', '.join(map(str, self.args))})"


Term = Var | App


def substitute(term: Term, replacements) -> Term:
    """Replace ``Var(i)`` with ``replacements[i]`` throughout."""
    if isinstance(term, Var):
        return replacements[term.index]
    return App(term.label, tuple(substitute(a, replacements) for a in term.args))


def shift_vars(term: Term, offset: int) -> Term:
    """Add ``offset`` to every variable index."""
    if isinstance(term, Var):
        return Var(term.index + offset)
    return App(term.label, tuple(shift_vars(a, offset) for a in term.args))


def unfold(g: hg.Hypergraph) -> tuple[Term, ...]:
    """Read each output of an acyclic graph as a first-order term.

    Sharing is forgotten (a node reached twice is printed twice) and edges
    not reachable from the outputs are ignored entirely.
    """
    producers: dict[int, list[hg.Edge]] = {}
    for e in g.edges:
        producers.setdefault(e.out, []).append(e)
    memo: dict[int, Term] = {}
    active: set[int] = set()

    def term_of(ref: hg.NodeRef) -> Term:
        if isinstance(ref, hg.Input):
            return Var(ref.index)
        j = ref.index
        if j in memo:
            return memo[j]
        if j in active:
            raise CyclicGraph(f"inner node {j} transitively feeds itself")
        found = producers.get(j, [])
        if not found:
            raise Unproduced(f"inner node {j} has no producing edge")
        if len(found) > 1:
            raise MultiplyProduced(f"inner node {j} has {len(found)} producing edges")
        active.add(j)
        term = App(found[0].label, tuple(term_of(r) for r in found[0].inputs))
        active.discard(j)
        memo[j] = term
        return term

    return tuple(term_of(ref) for ref in g.output)


# ---------------------------------------------------------------------------
# exact isomorphism


@dataclass(frozen=True)
class IsoWitness:
    """Bijections (as index tuples) sending one graph onto another."""

    inner_map: tuple[int, ...]
    edge_map: tuple[int, ...]


def witness_maps(g1: hg.Hypergraph, g2: hg.Hypergraph, w: IsoWitness) -> bool:
    """Check structurally that applying ``w`` maps ``g1`` exactly onto ``g2``."""
    if g1.m != g2.m or g1.inner_count != g2.inner_count:
        return False
    if len(g1.edges) != len(g2.edges):
        return False
    if sorted(w.inner_map) != list(range(g2.inner_count)):
        return False
    if sorted(w.edge_map) != list(range(len(g2.edges))):
        return False

    def mapped(ref: hg.NodeRef) -> hg.NodeRef:
        if isinstance(ref, hg.Input):
            return ref
        return hg.Inner(w.inner_map[ref.index])

    for e1, i2 in zip(g1.edges, w.edge_map):
        e2 = g2.edges[i2]
        if e1.label != e2.label:
            return False
        if tuple(mapped(r) for r in e1.inputs) != e2.inputs:
            return False
        if w.inner_map[e1.out] != e2.out:
            return False
    return tuple(mapped(r) for r in g1.output) == g2.output


def _edge_shape_ok(e1: hg.Edge, e2: hg.Edge) -> bool:
    # input positions are fixed pointwise, so they prune candidates early
    for r1, r2 in zip(e1.inputs, e2.inputs):
        if isinstance(r1, hg.Input) != isinstance(r2, hg.Input):
            return False
        if isinstance(r1, hg.Input) and r1.index != r2.index:
            return False
    return True


def isomorphic(
    g1: hg.Hypergraph, g2: hg.Hypergraph, max_inner: int = 12
) -> IsoWitness | None:
    """Return a witness iff the graphs are isomorphic; exact backtracking.

    Cheap interface and census rejections are always exact; an actual search
    on more than ``max_inner`` inner nodes raises `SizeLimit` so callers can
    reduce their test size instead of silently burning time.
    """
    if g1.m != g2.m or g1.n != g2.n:
        return None
    if g1.inner_count != g2.inner_count or len(g1.edges) != len(g2.edges):
        return None
    key = lambda e: (e.label.name, e.label.arity)
    if sorted(map(key, g1.edges)) != sorted(map(key, g2.edges)):
        return None
    ic = g1.inner_count
    if ic > max_inner:
        raise SizeLimit(f"{ic} inner nodes exceeds the exact-search bound {max_inner}")

    inner_map = [-1] * ic
    inner_used = [-1] * ic
    trail: list[int] = []

    def bind(j1: int, j2: int) -> bool:
        if inner_map[j1] != -1:
            return inner_map[j1] == j2
        if inner_used[j2] != -1:
            return False
        inner_map[j1] = j2
        inner_used[j2] = j1
        trail.append(j1)
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            j1 = trail.pop()
            inner_used[inner_map[j1]] = -1
            inner_map[j1] = -1

    # the output vectors are compared pointwise, which seeds the inner map
    for r1, r2 in zip(g1.output, g2.output):
        if isinstance(r1, hg.Input) and isinstance(r2, hg.Input):
            if r1.index != r2.index:
                return None
        elif isinstance(r1, hg.Inner) and isinstance(r2, hg.Inner):
            if not bind(r1.index, r2.index):
                return None
        else:
            return None

    n_edges = len(g1.edges)
    candidates = [
        [
            i2
            for i2, e2 in enumerate(g2.edges)
            if e2.label == e1.label and _edge_shape_ok(e1, e2)
        ]
        for e1 in g1.edges
    ]
    order = sorted(range(n_edges), key=lambda i: len(candidates[i]))
    edge_map = [-1] * n_edges
    edge_used = [False] * n_edges

    def matches(e1: hg.Edge, e2: hg.Edge) -> bool:
        if not bind(e1.out, e2.out):
            return False
        for r1, r2 in zip(e1.inputs, e2.inputs):
            if isinstance(r1, hg.Inner):
                if not bind(r1.index, r2.index):
                    return False
        return True

    def search(pos: int) -> bool:
        if pos == n_edges:
            return True
        i1 = order[pos]
        e1 = g1.edges[i1]
        for i2 in candidates[i1]:
            if edge_used[i2]:
                continue
            mark = len(trail)
            if matches(e1, g2.edges[i2]):
                edge_map[i1] = i2
                edge_used[i2] = True
                if search(pos + 1):
                    return True
                edge_used[i2] = False
                edge_map[i1] = -1
            undo(mark)
        return False

    if not search(0):
        return None

    # inner nodes untouched by edges and outputs are interchangeable
    spare = iter(j2 for j2 in range(ic) if inner_used[j2] == -1)
    for j1 in range(ic):
        if inner_map[j1] == -1:
            inner_map[j1] = next(spare)

    witness = IsoWitness(tuple(inner_map), tuple(edge_map))
    if not witness_maps(g1, g2, witness):
        raise TermGraphError("internal error: search produced an invalid witness")
    return witness


# ---------------------------------------------------------------------------
# seeded random jungles

_POOL_SPEC = (
    ("c", 0), ("d", 0), ("f", 1), ("k", 1), ("g", 2), ("p", 2), ("h", 3), ("q", 4),
)


def default_label_pool(max_arity: int = 3) -> tuple[hg.Label, ...]:
    return tuple(hg.Label(n, a) for n, a in _POOL_SPEC if a <= max_arity)


def random_jungle(
    seed=None,
    max_inner: int = 4,
    max_arity: int = 3,
    label_pool=None,
    *,
    m: int | None = None,
    n: int | None = None,
    rng: random.Random | None = None,
) -> hg.Hypergraph:
    """A seed-deterministic random jungle within the given bounds.

    Edges are laid down in topological order (each reads only inputs and
    earlier inner nodes), so every result is a jungle and acyclic.  ``m`` and
    ``n`` may be pinned to generate morphisms with a required interface.
    """
    if rng is None:
        rng = random.Random(seed)
    pool = [
        lab
        for lab in (label_pool if label_pool is not None else default_label_pool(max_arity))
        if lab.arity <= max_arity
    ]
    if not pool:
        raise ArityError("label pool is empty after applying the arity bound")
    nullary = [lab for lab in pool if lab.arity == 0]
    if m is None:
        m = rng.randint(0, 3)
    count = rng.randint(0, max_inner)
    edges: list[hg.Edge] = []
    for j in range(count):
        usable = pool if m + j > 0 else nullary
        if not usable:
            break
        label = rng.choice(usable)
        refs = [hg.Input(i) for i in range(m)] + [hg.Inner(i) for i in range(j)]
        args = tuple(rng.choice(refs) for _ in range(label.arity))
        edges.append(hg.Edge(label, args, j))
    if n is not None and n > 0 and m + len(edges) == 0:
        if not nullary:
            raise ArityError("cannot satisfy n > 0 without nodes or nullary labels")
        edges.append(hg.Edge(rng.choice(nullary), (), 0))
    nodes = [hg.Input(i) for i in range(m)] + [hg.Inner(j) for j in range(len(edges))]
    if n is None:
        n = rng.randint(0, 3) if nodes else 0
    output = tuple(rng.choice(nodes) for _ in range(n))
    return hg.Hypergraph(m, len(edges), tuple(edges), output)


# ---------------------------------------------------------------------------
# the equation suite


@dataclass(frozen=True)
class AxiomFailure:
    """A counterexample: the case seed that generated it and both sides."""

    case_seed: str
    lhs: hg.Hypergraph
    rhs: hg.Hypergraph


@dataclass(frozen=True)
class EquationResult:
    name: str
    cases: int
    failures: tuple[AxiomFailure, ...]


@dataclass(frozen=True)
class AxiomReport:
    seed: int
    results: tuple[EquationResult, ...]

    @property
    def total_failures(self) -> int:
        return sum(len(r.failures) for r in self.results)

    @property
    def ok(self) -> bool:
        return self.total_failures == 0

    def table(self) -> str:
        """Stable plain-text summary, rows sorted by equation name."""
        lines = [f"{'equation':<24} {'cases':>8} {'failures':>9}"]
        for r in sorted(self.results, key=lambda r: r.name):
            lines.append(f"{r.name:<24} {r.cases:>8} {len(r.failures):>9}")
        lines.append(f"{'total':<24} {sum(r.cases for r in self.results):>8} {self.total_failures:>9}")
        return "\n".join(lines) + "\n"


def _arity(rng: random.Random) -> int:
    return rng.randint(0, 2)


def _equations(mor):
    """Equation table: name -> builder returning (lhs, rhs) for one case."""
    s, p = hg.seq, hg.par
    ident, dup, term, exch = hg.identity, hg.duplicator, hg.terminator, hg.exchange

    def seq_assoc(rng):
        a, b, c, d = (_arity(rng) for _ in range(4))
        f, g, h = mor(rng, a, b), mor(rng, b, c), mor(rng, c, d)
        return s(s(f, g), h), s(f, s(g, h))

    def seq_left_id(rng):
        a, b = _arity(rng), _arity(rng)
        f = mor(rng, a, b)
        return s(ident(a), f), f

    def seq_right_id(rng):
        a, b = _arity(rng), _arity(rng)
        f = mor(rng, a, b)
        return s(f, ident(b)), f

    def tensor_interchange(rng):
        a, b, c, d, e, x = (_arity(rng) for _ in range(6))
        f1, f2 = mor(rng, a, b), mor(rng, b, c)
        g1, g2 = mor(rng, d, e), mor(rng, e, x)
        return s(p(f1, g1), p(f2, g2)), p(s(f1, f2), s(g1, g2))

    def tensor_id(rng):
        a, b = _arity(rng), _arity(rng)
        return p(ident(a), ident(b)), ident(a + b)

    def sym_natural(rng):
        a, b, c, d = (_arity(rng) for _ in range(4))
        f, g = mor(rng, a, c), mor(rng, b, d)
        return s(p(f, g), exch(c, d)), s(exch(a, b), p(g, f))

    def sym_involution(rng):
        a, b = _arity(rng), _arity(rng)
        return s(exch(a, b), exch(b, a)), p(ident(a), ident(b))

    def sym_decompose(rng):
        a, b, c = _arity(rng), _arity(rng), _arity(rng)
        return exch(a + b, c), s(p(ident(a), exch(b, c)), p(exch(a, c), ident(b)))

    def sym_unit(rng):
        return exch(0, 0), ident(0)

    def dup_coassoc(rng):
        a = _arity(rng)
        return s(dup(a), p(ident(a), dup(a))), s(dup(a), p(dup(a), ident(a)))

    def dup_comm(rng):
        a = _arity(rng)
        return s(dup(a), exch(a, a)), dup(a)

    def dup_counit(rng):
        a = _arity(rng)
        return s(dup(a), p(ident(a), term(a))), ident(a)

    def dup_tensor(rng):
        a, b = _arity(rng), _arity(rng)
        lhs = s(dup(a + b), p(p(ident(a), exch(b, a)), ident(b)))
        return lhs, p(dup(a), dup(b))

    def term_tensor(rng):
        a, b = _arity(rng), _arity(rng)
        return term(a + b), p(term(a), term(b))

    def unit_degenerate(rng):
        # id, terminator, and duplicator all coincide at arity 0
        return rng.choice((term(0), dup(0))), ident(0)

    return (
        ("seq-assoc", seq_assoc),
        ("seq-left-id", seq_left_id),
        ("seq-right-id", seq_right_id),
        ("tensor-interchange", tensor_interchange),
        ("tensor-id", tensor_id),
        ("sym-natural", sym_natural),
        ("sym-involution", sym_involution),
        ("sym-decompose", sym_decompose),
        ("sym-unit", sym_unit),
        ("dup-coassoc", dup_coassoc),
        ("dup-comm", dup_comm),
        ("dup-counit", dup_counit),
        ("dup-tensor", dup_tensor),
        ("term-tensor", term_tensor),
        ("unit-degenerate", unit_degenerate),
    )


def check_axioms(
    seed: int,
    count: int,
    max_inner: int = 4,
    max_arity: int = 3,
    label_pool=None,
) -> AxiomReport:
    """Fuzz all fifteen algebra equations on ``count`` random cases each.

    The report is deterministic in ``seed``.  Isomorphism is given head room
    for the largest composite any equation builds (four morphisms).
    """
    pool = label_pool if label_pool is not None else default_label_pool(max_arity)
    iso_bound = max(12, 4 * max_inner)

    def mor(rng: random.Random, m: int, n: int) -> hg.Hypergraph:
        return random_jungle(
            max_inner=max_inner, max_arity=max_arity, label_pool=pool, m=m, n=n, rng=rng
        )

    results = []
    for name, build in _equations(mor):
        failures = []
        for i in range(count):
            case_seed = f"{seed}:{name}:{i}"
            rng = random.Random(case_seed)
            lhs, rhs = build(rng)
            if isomorphic(lhs, rhs, max_inner=iso_bound) is None:
                failures.append(AxiomFailure(case_seed, lhs, rhs))
        results.append(EquationResult(name, count, tuple(failures)))
    return AxiomReport(seed, tuple(results))


def naturality_counterexample(label: hg.Label) -> tuple[bool, bool]:
    """Demonstrate that dropping and duplicating are not natural.

    For a unary ``label`` F, returns whether ``F ; term`` differs from
    ``term`` (the garbage edge survives) and whether ``F ; dup`` differs from
    ``dup ; (F x F)`` (sharing one edge is not the same graph as two edges),
    both up to isomorphism.  Both components are True for every label.
    """
    if label.arity != 1:
        raise ArityError(f"expected a unary label, got {label}")
    f = hg.prim(label)
    dropped = isomorphic(hg.seq(f, hg.terminator(1)), hg.terminator(1)) is None
    shared = hg.seq(f, hg.duplicator(1))
    duplicated = hg.seq(hg.duplicator(1), hg.par(f, f))
    split = isomorphic(shared, duplicated) is None
    return dropped, split
