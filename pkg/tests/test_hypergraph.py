import pytest
from hypothesis import given, strategies as st

from termgraph import hypergraph as hg
from termgraph import laws
from termgraph.errors import ArityError, InterfaceMismatch, NotAJungle, RangeError

from helpers import F, G, H, topo_acyclic

C = hg.Label("C", 0)


def test_empty_graph():
    g = hg.Hypergraph(0, 0, (), ())
    assert g.m == 0 and g.n == 0 and g.input == ()


def test_prim_unary():
    g = hg.prim(F)
    assert (g.m, g.n, g.inner_count) == (1, 1, 1)
    assert g.edges == (hg.Edge(F, (hg.Input(0),), 0),)
    assert g.output == (hg.Inner(0),)
    assert hg.is_jungle(g)


def test_prim_nullary_and_binary():
    c = hg.prim(C)
    assert (c.m, c.n) == (0, 1) and c.edges[0].inputs == ()
    g = hg.prim(G)
    assert g.edges[0].inputs == (hg.Input(0), hg.Input(1))
    assert g.output == (hg.Inner(0),)


def test_constructor_rejects_out_of_range_refs():
    with pytest.raises(RangeError):
        hg.Hypergraph(1, 0, (), (hg.Inner(0),))
    with pytest.raises(RangeError):
        hg.Hypergraph(1, 1, (hg.Edge(F, (hg.Input(3),), 0),), ())
    with pytest.raises(RangeError):
        hg.Hypergraph(0, 0, (hg.Edge(C, (), 0),), ())


def test_edge_rejects_wrong_arity():
    with pytest.raises(ArityError):
        hg.Edge(F, (), 0)
    with pytest.raises(ArityError):
        hg.Label("bad", -1)


def test_wire_swap_empty_dup():
    assert hg.wire(2, [1, 0]).output == (hg.Input(1), hg.Input(0))
    empty = hg.wire(3, [])
    assert (empty.m, empty.n, len(empty.edges)) == (3, 0, 0)
    assert hg.wire(1, [0, 0]).output == (hg.Input(0), hg.Input(0))
    with pytest.raises(RangeError):
        hg.wire(2, [2])


def test_wiring_families():
    assert hg.identity(0) == hg.Hypergraph(0, 0, (), ())
    assert hg.exchange(1, 1) == hg.wire(2, [1, 0])
    assert hg.duplicator(2) == hg.wire(2, [0, 1, 0, 1])
    assert hg.terminator(4) == hg.wire(4, [])


def test_seq_identity_laws_up_to_iso():
    g = hg.seq(hg.prim(F), hg.prim(hg.Label("K", 1)))
    assert laws.isomorphic(hg.seq(hg.identity(1), g), g) is not None
    assert laws.isomorphic(hg.seq(g, hg.identity(1)), g) is not None


def test_seq_chain_structure_and_unfolding():
    g = hg.seq(hg.prim(F), hg.prim(hg.Label("G", 1)))
    assert len(g.edges) == 2 and g.inner_count == 2
    assert laws.unfold(g) == (
        laws.App(hg.Label("G", 1), (laws.App(F, (laws.Var(0),)),)),
    )


def test_seq_onto_terminator_leaves_garbage():
    g = hg.seq(hg.prim(F), hg.terminator(1))
    assert g.n == 0 and len(g.edges) == 1
    assert hg.is_jungle(g)


def test_seq_interface_mismatch():
    with pytest.raises(InterfaceMismatch):
        hg.seq(hg.prim(F), hg.prim(G))


def test_par_with_empty_unit():
    unit = hg.Hypergraph(0, 0, (), ())
    g = hg.seq(hg.prim(F), hg.duplicator(1))
    assert laws.isomorphic(hg.par(unit, g), g) is not None
    assert laws.isomorphic(hg.par(g, unit), g) is not None


def test_par_structure_and_unfolding():
    g = hg.par(hg.prim(F), hg.prim(G))
    assert (g.m, g.n, len(g.edges)) == (3, 2, 2)
    assert g.output == (hg.Inner(0), hg.Inner(1))
    assert laws.unfold(g) == (
        laws.App(F, (laws.Var(0),)),
        laws.App(G, (laws.Var(1), laws.Var(2))),
    )


def test_par_of_identities_is_identity():
    assert hg.par(hg.identity(1), hg.identity(1)) == hg.identity(2)


def test_is_jungle_detects_undefined_and_join_nodes():
    assert hg.is_jungle(hg.prim(F))
    assert not hg.is_jungle(hg.Hypergraph(0, 1, (), ()))
    join = hg.Hypergraph(
        1,
        2,
        (hg.Edge(F, (hg.Input(0),), 0), hg.Edge(F, (hg.Input(0),), 0)),
        (),
    )
    assert not hg.is_jungle(join)


def test_is_acyclic():
    assert hg.is_acyclic(hg.prim(F))
    loop = hg.Hypergraph(0, 1, (hg.Edge(F, (hg.Inner(0),), 0),), ())
    assert not hg.is_acyclic(loop)
    g = hg.seq(hg.par(hg.prim(F), hg.prim(hg.Label("K", 1))), hg.prim(G))
    assert hg.is_acyclic(g)
    assert topo_acyclic(g)


def test_is_acyclic_agrees_with_topological_sort():
    for seed in range(60):
        g = laws.random_jungle(seed=seed, max_inner=5)
        assert hg.is_acyclic(g) == topo_acyclic(g)
    loop2 = hg.Hypergraph(
        0,
        2,
        (hg.Edge(F, (hg.Inner(1),), 0), hg.Edge(F, (hg.Inner(0),), 1)),
        (),
    )
    assert hg.is_acyclic(loop2) == topo_acyclic(loop2) == False  # noqa: E712


def test_view_of_prim():
    view = hg.to_view(hg.prim(F))
    assert view.nodes == ((F, (hg.Input(0),)),)
    assert view.output == (hg.Inner(0),)


def test_view_of_wire_has_no_nodes():
    view = hg.to_view(hg.wire(2, [0]))
    assert view.nodes == ()


def test_view_requires_jungle():
    with pytest.raises(NotAJungle):
        hg.to_view(hg.Hypergraph(0, 1, (), ()))


def test_view_round_trips():
    for seed in range(40):
        g = laws.random_jungle(seed=seed)
        view = hg.to_view(g)
        back = hg.from_view(view)
        assert laws.isomorphic(back, g) is not None
        assert hg.to_view(back) == view


@given(st.data())
def test_wire_fusion(data):
    m = data.draw(st.integers(0, 5))
    v = data.draw(st.lists(st.integers(0, max(m - 1, 0)), max_size=5)) if m else []
    w_ = data.draw(st.lists(st.integers(0, max(len(v) - 1, 0)), max_size=5)) if v else []
    fused = hg.seq(hg.wire(m, v), hg.wire(len(v), w_))
    assert fused == hg.wire(m, [v[i] for i in w_])


@given(st.integers(0, 2**32), st.integers(0, 2**32))
def test_composition_counts_are_additive(seed1, seed2):
    g1 = laws.random_jungle(seed=seed1)
    g2 = laws.random_jungle(seed=seed2, m=g1.n)
    composed = hg.seq(g1, g2)
    beside = hg.par(g1, g2)
    for combined in (composed, beside):
        assert len(combined.edges) == len(g1.edges) + len(g2.edges)
        assert combined.inner_count == g1.inner_count + g2.inner_count
        assert hg.is_jungle(combined)
        assert hg.is_acyclic(combined)
