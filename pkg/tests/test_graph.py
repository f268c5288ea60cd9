import networkx as nx
import pytest
from hypothesis import given, strategies as st

from tautilt.graph import (
    build_mutation_quiver, component_analysis, fac_hasse, hasse_diagram, is_directed_path, saturation_report,
    tilting_subquiver,
)
from tautilt.tilting import regular_pair, zero_pair

from conftest import pool_for, quiver_for


def _reduction_oracle(masks):
    g = nx.DiGraph()
    g.add_nodes_from(range(len(masks)))
    g.add_edges_from((i, j) for i, a in enumerate(masks) for j, b in enumerate(masks)
                     if i != j and b & ~a == 0)
    return set(nx.transitive_reduction(g).edges())


@given(st.lists(st.integers(0, 255), unique=True, max_size=14))
def test_hasse_matches_transitive_reduction(masks):
    assert hasse_diagram(masks) == _reduction_oracle(masks)


def test_a2_pentagon():
    mq, tq = quiver_for("A2")
    pool = mq.pool
    assert len(mq) == 5 and len(mq.edges) == 5
    g = mq.digraph().to_undirected()
    assert nx.is_isomorphic(g, nx.cycle_graph(5))
    assert [mq.vertices[i] for i in mq.sources()] == [regular_pair(pool)]
    assert [mq.vertices[i] for i in mq.sinks()] == [zero_pair(pool)]
    assert len(tq) == 2 and len(tq.edges) == 1


@pytest.mark.parametrize("name", ["A3", "D4"])
def test_every_arrow_is_a_computed_mutation(name):
    mq = build_mutation_quiver(pool_for(name), verify_exchange=True)
    assert all(o + e == mq.pool.n for o, e in mq.degrees())


@pytest.mark.parametrize("name", ["A3", "A4", "D4"])
def test_hasse_equals_mutation_quiver(name):
    mq, _ = quiver_for(name)
    assert fac_hasse(mq) == mq.labeled_edges()


def test_a3_saturation_by_hand():
    _, tq = quiver_for("A3")
    report = saturation_report(tq)
    assert len(report) == 5
    # no tilting module of A3 has all coordinates >= 2, so none is saturated
    assert all(r.saturated is False and not r.dim_criterion for r in report)
    comps = component_analysis(tq, report)
    assert len(comps) == 1 and comps[0].non_saturated == 5


def test_d4_has_saturated_vertices():
    _, tq = quiver_for("D4")
    report = saturation_report(tq)
    sat = [r for r in report if r.saturated]
    assert sat and all(r.dim_criterion for r in sat)
    assert all(r.agrees for r in report)


def test_kronecker_ball(k2):
    mq = build_mutation_quiver(k2, depth=5)
    assert not mq.exhaustive and mq.depth == 5
    labels = {mq.vertices[i].label(k2) for i in mq.frontier}
    assert labels == {"(6,5)+(7,6)", "(1,2)+(2,3)"}
    tq = tilting_subquiver(mq)
    comps = component_analysis(tq)
    assert len(comps) == 2
    assert all(is_directed_path(tq, c.vertices) for c in comps)
    assert sorted(c.indeterminate for c in comps) == [1, 1]


def test_bounded_quiver_needs_depth(k2):
    with pytest.raises(ValueError):
        build_mutation_quiver(k2)


def test_w4_ball_is_partial():
    pool = pool_for("W4", 2)
    mq = build_mutation_quiver(pool, depth=2)
    assert mq.frontier
    assert regular_pair(pool) in mq.vertices


def test_kronecker_saturated_vertex(k2):
    tq = tilting_subquiver(build_mutation_quiver(k2, depth=5))
    by_label = {r.pair.label(k2): r for r in saturation_report(tq)}
    entry = by_label["(2,1)+(3,2)"]
    assert entry.dim == (5, 3) and entry.saturated and entry.dim_criterion
    assert by_label["(1,0)+(2,1)"].saturated is False
