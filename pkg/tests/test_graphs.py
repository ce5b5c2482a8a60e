"""Graph protorootoids, rainbow graphs, and protomeshes."""

import itertools
import random

import pytest

from rootoids.boolring import Universe
from rootoids.corpus import GRAPH_951, GRAPH_952
from rootoids.graphs import (Protomesh, RainbowGraph, SimpleGraph,
                             even_graph_check, even_rainbow_model_of_graph,
                             graph_protorootoid, half_space_table, mesh_check,
                             protomesh_protorootoid, rainbow_from_forest,
                             rainbow_model_of_graph, rainbow_protorootoid,
                             splitting_check)
from rootoids.order import WeakOrder, order_isomorphic, rootoid_check
from rootoids.proto import build_even_variant, wec_check


def cycle(n):
    vs = [f"v{i}" for i in range(n)]
    return SimpleGraph(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


PENTAGON = SimpleGraph(
    list("pqrst"),
    [("p", "q"), ("q", "r"), ("r", "s"), ("s", "t"), ("t", "p")])


# -- basics -------------------------------------------------------------------

def test_simple_graph_validation():
    with pytest.raises(ValueError):
        SimpleGraph([1, 2], [(1, 1)])
    with pytest.raises(ValueError):
        SimpleGraph([1, 2], [(1, 2), (2, 1)])


def test_even_checks():
    assert even_graph_check(cycle(6))
    assert not even_graph_check(cycle(5))
    forest = SimpleGraph("abcd", [("a", "b"), ("b", "c"), ("b", "d")])
    assert even_graph_check(forest)


# -- half-space tables -----------------------------------------------------------

def test_ex951_full_table():
    xtab = half_space_table(GRAPH_951)
    expected = {
        ("p", "q"): "prs", ("q", "p"): "qt",
        ("p", "s"): "pqr", ("s", "p"): "st",
        ("p", "r"): "pqs", ("r", "p"): "rt",
        ("t", "q"): "rst", ("q", "t"): "pq",
        ("t", "s"): "qrt", ("s", "t"): "ps",
        ("t", "r"): "qst", ("r", "t"): "pr",
    }
    for key, val in expected.items():
        assert xtab[key] == frozenset(val), key


def test_pentagon_rainbow_labels():
    rainbow = rainbow_model_of_graph(PENTAGON)
    u = frozenset("tp")
    x = frozenset("qr")
    assert rainbow.label(("p", "q")) == frozenset({u, x})


# -- graph protorootoids ------------------------------------------------------------

def test_single_edge_even_chains():
    g = SimpleGraph("ab", [("a", "b")])
    pr, even, _ = graph_protorootoid(g)
    for a in range(2):
        wo = WeakOrder(even, a)
        assert len(wo.elements) == 2
        assert wo.maximum() is not None


def test_graph_direct_vs_rainbow_orders():
    for g in (cycle(5), cycle(6), GRAPH_951, GRAPH_952):
        pr, _, _ = graph_protorootoid(g)
        rpr = rainbow_protorootoid(rainbow_model_of_graph(g))
        for a in range(len(pr.gpd.objects)):
            assert order_isomorphic(WeakOrder(pr, a), WeakOrder(rpr, a))


def test_even_model_halves():
    for g in (cycle(6), GRAPH_952):
        rpr = rainbow_protorootoid(rainbow_model_of_graph(g))
        epr = rainbow_protorootoid(even_rainbow_model_of_graph(g))
        for m in range(rpr.gpd.n_morphisms()):
            assert len(rpr.nvals[m]) == 2 * len(epr.nvals[m])


def test_ex952_length_equality():
    pr, even, _ = graph_protorootoid(GRAPH_952)
    assert wec_check(pr)[0]  # l_N == l_S


def test_hexagon_even_rainbow_matches_variant():
    g = cycle(6)
    pr, even, _ = graph_protorootoid(g)
    epr = rainbow_protorootoid(even_rainbow_model_of_graph(g))
    for a in range(6):
        assert order_isomorphic(WeakOrder(even, a), WeakOrder(epr, a))


# -- rainbow extension ----------------------------------------------------------------

def test_rainbow_from_forest_triangle():
    g = SimpleGraph("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    ring = Universe(("b1", "b2"))
    labels = {frozenset(("a", "b")): frozenset({"b1"}),
              frozenset(("b", "c")): frozenset({"b2"})}
    rainbow = rainbow_from_forest(
        g, [("a", "b"), ("b", "c")], labels, ring)
    assert rainbow.label(("a", "c")) == frozenset({"b1", "b2"})


def test_rainbow_from_forest_four_cycle():
    g = cycle(4)
    vs = g.vertices
    ring = Universe(("x", "y", "z"))
    tree = [(vs[0], vs[1]), (vs[1], vs[2]), (vs[2], vs[3])]
    labels = {frozenset(e): frozenset({c})
              for e, c in zip(tree, ("x", "y", "z"))}
    rainbow = rainbow_from_forest(g, tree, labels, ring)
    assert rainbow.label((vs[3], vs[0])) == frozenset({"x", "y", "z"})


def test_rainbow_forest_is_identity_on_forests():
    g = SimpleGraph("abc", [("a", "b"), ("b", "c")])
    ring = Universe(("u",))
    labels = {frozenset(("a", "b")): frozenset({"u"}),
              frozenset(("b", "c")): frozenset()}
    rainbow = rainbow_from_forest(g, g.edges, labels, ring)
    assert rainbow.labels == {frozenset(("a", "b")): frozenset({"u"}),
                              frozenset(("b", "c")): frozenset()}


def test_rainbow_rejects_non_forest():
    g = SimpleGraph("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    ring = Universe(("u",))
    with pytest.raises(ValueError):
        rainbow_from_forest(g, g.edges, {e: frozenset() for e in g.edges}, ring)


def test_rainbow_cycle_condition_rejected():
    g = SimpleGraph("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    ring = Universe(("u",))
    labels = {frozenset(("a", "b")): frozenset({"u"}),
              frozenset(("b", "c")): frozenset(),
              frozenset(("a", "c")): frozenset()}
    with pytest.raises(ValueError):
        RainbowGraph(g, ring, labels)


def test_cycle_condition_on_random_cycles():
    # fundamental cycles zero out, hence every sampled closed walk does
    g = GRAPH_952
    rainbow = rainbow_model_of_graph(g)
    rng = random.Random(7)
    for _ in range(25):
        walk = [rng.choice(g.vertices)]
        for _ in range(rng.randrange(2, 9)):
            walk.append(rng.choice(sorted(g.adj[walk[-1]], key=repr)))
        back = list(reversed(walk[:-1]))
        cycle_walk = walk + back
        total = frozenset()
        for u, v in zip(cycle_walk, cycle_walk[1:]):
            total = total ^ rainbow.label((u, v))
        assert not total


def test_single_edge_rainbow():
    g = SimpleGraph("ab", [("a", "b")])
    ring = Universe(("c",))
    rainbow = RainbowGraph(g, ring, {frozenset(("a", "b")): frozenset({"c"})})
    pr = rainbow_protorootoid(rainbow)
    ab = pr.gpd.key_index[("a", "b")]
    assert pr.nvals[ab] == frozenset({0})


# -- protomeshes -----------------------------------------------------------------------

def test_trivial_mesh():
    mesh = Protomesh(Universe((1,)), [frozenset()])
    is_mesh, _, _ = mesh_check(mesh)
    assert is_mesh


def test_ideal_mesh_and_splitting():
    ring = Universe((1, 2, 3))
    ideal = [frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})]
    mesh = Protomesh(ring, ideal)
    is_mesh, is_complete, _ = mesh_check(mesh)
    assert is_mesh and is_complete
    ok, wit = splitting_check(mesh)
    assert ok, wit


def test_point_mesh():
    ring = Universe(("x", "y", "z"))
    mesh = Protomesh(ring, [frozenset(), frozenset("x"), frozenset("y"),
                            frozenset("z")])
    is_mesh, is_complete, _ = mesh_check(mesh)
    assert is_mesh and not is_complete


def test_mesh_protorootoid_faithful():
    ring = Universe((1, 2, 3))
    mesh = Protomesh(ring, [frozenset(), frozenset({1}), frozenset({1, 2})])
    pr = protomesh_protorootoid(mesh)
    from rootoids.proto import faithful_check
    assert faithful_check(pr)[0]
    assert pr.check_cocycle()[0]


def test_mesh_values_are_sums():
    ring = Universe((1, 2))
    fam = [frozenset(), frozenset({1}), frozenset({2})]
    mesh = Protomesh(ring, fam)
    pr = protomesh_protorootoid(mesh)
    for g in range(pr.gpd.n_morphisms()):
        i, j = pr.gpd.keys[g]
        expect = mesh.family[i] ^ mesh.family[j]
        got = {ring.labels[k] for k in pr.nvals[g]}
        assert got == set(expect)
