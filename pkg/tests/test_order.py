"""Weak orders, meets/joins, JOP, the verdict ladder, parabolic checks,
Hasse export."""

import itertools

import pytest

from rootoids import corpus
from rootoids.coxeter import reflection_cocycle
from rootoids.graphs import graph_protorootoid
from rootoids.order import (WeakOrder, covers_shape, hasse_dot, jop_check,
                            n_complete_check, order_isomorphic,
                            parabolic_check, preprincipal_check, rootoid_check,
                            weak_order)
from rootoids.proto import build_even_variant, build_from_c0


def boolean_lattice_order(rank):
    """Independent model: subsets of a rank-set ordered by inclusion,
    packaged with the WeakOrder interface for isomorphism tests."""
    class Fake:
        def __init__(self):
            self.elements = [frozenset(c) for r in range(rank + 1)
                             for c in itertools.combinations(range(rank), r)]
            self.nvals = {e: e for e in self.elements}

        def le(self, x, y):
            return x <= y
    return Fake()


# -- shapes of weak orders -----------------------------------------------------

def test_c4_weak_order_is_diamond(cyclic4_proto):
    wo = weak_order(cyclic4_proto, 0)
    pairs = sum(wo.le(x, y) for x in wo.elements for y in wo.elements)
    assert pairs == 9  # 4 reflexive + bottom<3 + 2 middles < top
    assert wo.maximum() is not None
    assert len(wo.atoms()) == 2


def test_ex8161_antichain():
    pr = corpus.build("ex8161").protorootoid()
    wo = weak_order(pr, 0)
    one = wo.minimum()
    for x in wo.elements:
        for y in wo.elements:
            if x != y and wo.le(x, y):
                assert x == one


def test_ex8164_boolean_rank3():
    pr = corpus.build("ex8164").protorootoid()
    wo = weak_order(pr, 0)
    assert order_isomorphic(wo, boolean_lattice_order(3))


def test_minimum_is_identity():
    for name in ("cyclic4", "hexagon", "pentagon", "ex8164"):
        pr = corpus.build(name).protorootoid()
        for a in range(len(pr.gpd.objects)):
            wo = weak_order(pr, a)
            assert wo.minimum() == pr.gpd.identity[a]
            assert all(wo.le(wo.minimum(), x) for x in wo.elements)


def test_covers_graded_by_two(cyclic4_proto, cyclic4):
    wo = weak_order(cyclic4_proto, 0)
    for x, y in wo.covers():
        assert len(wo.nvals[y]) - len(wo.nvals[x]) == 2
    even, _ = build_even_variant(cyclic4.gpd, cyclic4.S)
    woe = weak_order(even, 0)
    for x, y in woe.covers():
        assert len(woe.nvals[y]) - len(woe.nvals[x]) == 1


# -- meets and joins -----------------------------------------------------------

def test_meet_join_certified(cyclic4_proto):
    wo = weak_order(cyclic4_proto, 0)
    for r in (1, 2, 3):
        for combo in itertools.combinations(wo.elements, r):
            m = wo.meet(list(combo))
            assert m is not None
            assert all(wo.le(m, x) for x in combo)
            for z in wo.elements:
                if all(wo.le(z, x) for x in combo):
                    assert wo.le(z, m)
            j = wo.join(list(combo))
            if j is not None:
                assert all(wo.le(x, j) for x in combo)
                for z in wo.elements:
                    if all(wo.le(x, z) for x in combo):
                        assert wo.le(j, z)


def test_singleton_meet(cyclic4_proto):
    wo = weak_order(cyclic4_proto, 0)
    for x in wo.elements:
        assert wo.meet([x]) == x
        assert wo.join([x]) == x


def test_hexagon_atom_join_is_top(hexagon):
    pr, even, _ = graph_protorootoid(hexagon.graph)
    for a in range(len(pr.gpd.objects)):
        wo = weak_order(pr, a)
        atoms = wo.atoms()
        assert len(atoms) == 2
        assert wo.join(atoms) == wo.maximum() is not None


def test_pentagon_atom_join_absent(pentagon):
    pr = pentagon.protorootoid()
    wo = weak_order(pr, 0)
    assert wo.join(wo.atoms()) is None


# -- JOP ------------------------------------------------------------------------

def test_jop_examples(ex952):
    pr, even, _ = graph_protorootoid(ex952.graph)
    bad = [a for a in range(len(pr.gpd.objects)) if not jop_check(pr, a)[0]]
    assert bad, "the middle-atom failure must appear"
    a = bad[0]
    ok, wit = jop_check(pr, a)
    assert not ok and wit["witness"] is not None


def test_jop_diamond_and_antichain(cyclic4_proto):
    assert jop_check(cyclic4_proto, 0)[0]
    pr = corpus.build("ex8161").protorootoid()
    assert jop_check(pr, 0)[0]


def test_jop_bounded_flag(cyclic4_proto):
    ok, rep = jop_check(cyclic4_proto, 0, exhaustive_bound=2)
    assert ok and rep["bounded"]


# -- the verdict ladder ------------------------------------------------------------

def test_rootoid_check_hexagon(hexagon):
    _, even, _ = graph_protorootoid(hexagon.graph)
    rep = rootoid_check(even)
    assert rep.rootoid and rep.complete


def test_rootoid_check_ex952(ex952):
    pr = ex952.protorootoid()
    rep = rootoid_check(pr)
    assert rep.meet_semilattice and not rep.jop and not rep.rootoid
    assert "jop" in rep.witnesses


def test_rootoid_check_pentagon(pentagon):
    rep = rootoid_check(pentagon.protorootoid())
    assert rep.rootoid and not rep.complete


def test_preprincipal_examples(hexagon, pentagon):
    ok6, atoms6, _ = preprincipal_check(hexagon.protorootoid())
    assert ok6
    ok5, _, wit5 = preprincipal_check(pentagon.protorootoid())
    assert not ok5 and wit5 is not None


def test_preprincipal_atoms_are_generators(cyclic4, cyclic4_proto):
    ok, atoms_at, _ = preprincipal_check(cyclic4_proto)
    assert ok
    assert set(atoms_at[0]) == set(cyclic4.S.gens)


def test_preprincipal_requires_rootoid(ex952):
    with pytest.raises(ValueError):
        preprincipal_check(ex952.protorootoid())


def test_n_complete(A3, cyclic4_proto):
    pr = build_from_c0(A3.gpd, A3.S)
    assert n_complete_check(pr, 0) and n_complete_check(pr, 1)
    assert n_complete_check(pr, 2) and n_complete_check(pr, 3)
    assert n_complete_check(cyclic4_proto, 2)
    pent = corpus.build("pentagon").protorootoid()
    assert not n_complete_check(pent, 2)


# -- parabolic subgroupoids -----------------------------------------------------

def test_parabolic_standard(A3):
    refl = reflection_cocycle(A3)
    from rootoids.groupoid import subgroupoid
    sub, incl = subgroupoid(A3.gpd, [A3.gen("s1"), A3.gen("s2")])
    obj = [incl.obj_map[a] for a in range(len(sub.objects))]
    mors = set(incl.mor_map.values())
    ok, wit = parabolic_check(refl, obj, mors)
    assert ok, wit


def test_parabolic_empty_subgroupoid(A3):
    refl = reflection_cocycle(A3)
    ok, _ = parabolic_check(refl, [], set())
    assert ok


def test_parabolic_rotation_subgroup_fails(I23):
    refl = reflection_cocycle(I23)
    g_ = I23.gpd
    x = g_.compose(I23.gen("r"), I23.gen("s"))
    from rootoids.groupoid import subgroupoid
    sub, incl = subgroupoid(g_, [x])
    ok, wit = parabolic_check(refl, [0], set(incl.mor_map.values()))
    assert not ok


# -- Hasse export ------------------------------------------------------------------

def test_hasse_single_node():
    from rootoids.boolring import Universe
    from rootoids.groupoid import trivial_groupoid
    from rootoids.proto import Protorootoid
    gpd, _ = trivial_groupoid()
    pr = Protorootoid(gpd, [Universe(())], [()], [frozenset()])
    dot = hasse_dot(weak_order(pr, 0))
    assert dot.count("->") == 0
    assert dot.splitlines()[0].startswith("digraph")


def test_hasse_deterministic(hexagon):
    _, even, _ = graph_protorootoid(hexagon.graph)
    wo = weak_order(even, 0)
    assert hasse_dot(wo) == hasse_dot(weak_order(even, 0))


def test_hexagon_hasse_shape(hexagon):
    # 6 nodes: bottom, 2 atoms, 2 coatoms, top (the cycle directed by
    # distance from the base vertex)
    pr = hexagon.protorootoid()
    wo = weak_order(pr, 0)
    shape = covers_shape(wo)
    downs = sorted(d for (_, d, _) in shape)
    ups = sorted(u for (_, _, u) in shape)
    assert len(wo.elements) == 6
    assert downs == [0, 1, 1, 1, 1, 2]
    assert ups == [0, 1, 1, 1, 1, 2]


def test_ex952_three_hasse_types(ex952):
    _, even, _ = graph_protorootoid(ex952.graph)
    shapes = set()
    for a in range(len(even.gpd.objects)):
        shapes.add(tuple(covers_shape(weak_order(even, a))))
    assert len(shapes) == 3
    for shape in shapes:
        assert len(shape) == 7
