"""Coxeter groups: exact models, the reflection cocycle, the half-space
oracle, longest elements, and diagram-automorphism folding."""

import itertools

import pytest

from rootoids.boolring import SizeGateError
from rootoids.coxeter import (CoxeterMatrix, build_coxeter,
                              diagram_automorphism, fold_fixed_subgroup,
                              halfspace_oracle, longest_element,
                              parabolic_subgroup, reflection_cocycle)
from rootoids.order import WeakOrder, order_isomorphic, rootoid_check
from rootoids.proto import build_even_variant, build_from_c0, wec_check


# -- construction ------------------------------------------------------------

@pytest.mark.parametrize("name,order", [
    ("A2", 6), ("A3", 24), ("B3", 48), ("D4", 192),
    ("I2(2)", 4), ("I2(3)", 6), ("I2(4)", 8), ("I2(6)", 12),
])
def test_orders(name, order):
    sys = build_coxeter(CoxeterMatrix.preset(name))
    assert sys.order() == order


def test_d4_order_formula(D4):
    assert D4.order() == 2 ** 3 * 24  # 2^(n-1) n!


def test_matrix_validation():
    with pytest.raises(ValueError):
        CoxeterMatrix(["r", "s"], [[1, 2], [3, 1]])
    with pytest.raises(ValueError):
        CoxeterMatrix(["r", "s"], [[2, 3], [3, 1]])
    with pytest.raises(ValueError):
        CoxeterMatrix(["r", "s"], [[1, 1], [1, 1]])


def test_product_matrix():
    ent = [[1, 3, 2], [3, 1, 2], [2, 2, 1]]
    sys = build_coxeter(CoxeterMatrix(["a", "b", "c"], ent))
    assert sys.order() == 12  # A2 x A1


def test_generic_fallback_h3():
    sys = build_coxeter(CoxeterMatrix.preset("H3"))
    assert sys.order() == 120
    assert len(sys.reflections()) == 15


def test_infinite_rejected_by_gate():
    affine = CoxeterMatrix(["a", "b", "c"],
                           [[1, 3, 3], [3, 1, 3], [3, 3, 1]])
    with pytest.raises(SizeGateError):
        build_coxeter(affine)


def test_json_matrix():
    sys = build_coxeter(CoxeterMatrix.from_json(
        {"gens": ["r", "s"], "m": [[1, 4], [4, 1]]}))
    assert sys.order() == 8


# -- reflection cocycle ---------------------------------------------------------

def test_reflection_cocycle_gradedness(A3, refl_A3):
    l = A3.length
    for w in range(A3.gpd.n_morphisms()):
        assert len(refl_A3.nvals[w]) == l[w]


def test_reflection_cocycle_simple_values(A3, refl_A3):
    T = A3.reflections()
    for lab in ("s1", "s2", "s3"):
        s = A3.gen(lab)
        assert refl_A3.nvals[s] == frozenset({T.index(s)})


def test_reflection_cocycle_longest(I24, A3, refl_A3):
    refl = reflection_cocycle(I24)
    w0 = longest_element(I24)
    assert len(refl.nvals[w0]) == len(I24.reflections()) == 4
    assert len(refl_A3.nvals[longest_element(A3)]) == 6


def test_reflection_cocycle_law(A3, B3, I24, D4):
    for sys in (A3, B3, I24, D4):
        assert sys.order() <= 200 or sys is D4
        refl = reflection_cocycle(sys)
        ok, wit = refl.check_cocycle()
        assert ok, wit


# -- half-space oracle -------------------------------------------------------------

def test_halfspace_oracle_small(I23, A3):
    rep = halfspace_oracle(I23)
    assert rep["reflections"] == 3
    assert rep["carrier_size"] == 6
    assert rep["wec"] and rep["orders_isomorphic"]
    repA3 = halfspace_oracle(A3)
    assert repA3["wec"] and repA3["orders_isomorphic"]


def test_halfspaces_distinct(A3):
    # distinct signed reflections give distinct half-spaces
    g_ = A3.gpd
    l = A3.length
    halves = {}
    for t in A3.reflections():
        plus = frozenset(w for w in range(g_.n_morphisms())
                         if l[g_.compose(t, w)] > l[w])
        halves[(t, "+")] = plus
        halves[(t, "-")] = frozenset(range(g_.n_morphisms())) - plus
    assert len(set(halves.values())) == len(halves)


def test_coxeter_is_even_weak_exchange_rootoid(A3):
    pr = build_from_c0(A3.gpd, A3.S)
    assert wec_check(pr)[0]
    rep = rootoid_check(pr)
    assert rep.rootoid and rep.complete


# -- longest elements -----------------------------------------------------------------

def test_longest_singleton(A3):
    assert longest_element(A3, ["s1"]) == A3.gen("s1")


def test_longest_i24(I24):
    w0 = longest_element(I24)
    assert I24.length[w0] == 4
    assert I24.gpd.compose(w0, w0) == I24.gpd.identity[0]


def test_longest_a3_induces_flip(A3):
    w0 = longest_element(A3)
    g_ = A3.gpd
    conj = {lab: g_.compose(g_.compose(w0, A3.gen(lab)), w0)
            for lab in ("s1", "s2", "s3")}
    assert conj["s1"] == A3.gen("s3")
    assert conj["s2"] == A3.gen("s2")
    assert conj["s3"] == A3.gen("s1")


def test_longest_is_weak_order_maximum(A3, refl_A3):
    wo = WeakOrder(refl_A3, 0)
    assert wo.maximum() == longest_element(A3)


def test_parabolic_subgroup_size(A3):
    sub, incl = parabolic_subgroup(A3, ["s1", "s2"])
    assert sub.n_morphisms() == 6


# -- folding -----------------------------------------------------------------------

def test_fold_trivial_group(A3):
    rep = fold_fixed_subgroup(A3, [])
    assert rep["fixed_order"] == A3.order()
    assert rep["preprincipal"] and rep["aop"]


def test_fold_a3_flip(A3):
    flip = diagram_automorphism(A3, {"s1": "s3", "s2": "s2", "s3": "s1"})
    rep = fold_fixed_subgroup(A3, [flip])
    assert rep["fixed_order"] == 8
    assert rep["atoms_match"]
    assert rep["join_formula"]
    assert rep["preprincipal"]
    assert rep["aop"]
    # the atoms are the longest elements of the orbit parabolics
    names = sorted(A3.gpd.name(x) for x in rep["atoms"])
    assert names == ["s1.s3", "s2"]


def test_fold_fixed_subgroup_join_meet_closed(A3):
    flip = diagram_automorphism(A3, {"s1": "s3", "s2": "s2", "s3": "s1"})
    refl = reflection_cocycle(A3)
    wo = WeakOrder(refl, 0)
    fixed = {w for w in range(A3.gpd.n_morphisms()) if flip[w] == w}
    for x, y in itertools.combinations(sorted(fixed), 2):
        j = wo.join([x, y])
        m = wo.meet([x, y])
        if j is not None:
            assert j in fixed
        if m is not None:
            assert m in fixed


def test_diagram_automorphism_validation(A3):
    with pytest.raises(ValueError):
        diagram_automorphism(A3, {"s1": "s2", "s2": "s1", "s3": "s3"})


def test_rename_words_deterministic(A3):
    assert A3.gpd.name(A3.gen("s1")) == "s1"
    w0 = longest_element(A3)
    assert A3.gpd.name(w0).count(".") == 5
