"""Braid data extraction, shift closure, the word algorithm, and the
generator representation."""

import itertools

import pytest

from rootoids import corpus
from rootoids.braids import (braid_class, braid_data, braid_shift_check,
                             five_halves_check, reduced_words, tits_reduce,
                             word_product)
from rootoids.coxeter import longest_element
from rootoids.proto import build_from_c0


def bdata(name):
    pr = corpus.build(name).protorootoid()
    return pr, braid_data(pr)


# -- braid data ------------------------------------------------------------------

def test_cyclic4_matrix_and_pi(cyclic4, cyclic4_proto):
    bd = braid_data(cyclic4_proto)
    gpd = cyclic4.gpd
    x = [s for s in cyclic4.S.gens if gpd.name(s) == "x"][0]
    xs = gpd.inv(x)
    assert bd.matrices[(0, x, xs)] == 2  # m/2 with m = 4
    assert bd.pi[x][x] == xs and bd.pi[x][xs] == x
    assert len(bd.relations) == 1
    rel = bd.relations[0]
    assert {rel.left, rel.right} == {(x, x), (xs, xs)}


def test_cyclic6_relation():
    pr, bd = bdata("cyclic6")
    gpd = pr.gpd
    x = [s for s in pr.system.S.gens if gpd.name(s) == "x"][0]
    xs = gpd.inv(x)
    assert bd.matrices[(0, x, xs)] == 3
    rel = bd.relations[0]
    assert {rel.left, rel.right} == {(x, x, x), (xs, xs, xs)}


def test_ex8164_presentation():
    pr, bd = bdata("ex8164")
    gpd = pr.gpd
    name = gpd.name
    # three isolated vertices: all off-diagonal entries are 2
    offdiag = [m for (a, r, s), m in bd.matrices.items() if r != s]
    assert offdiag and all(m == 2 for m in offdiag)
    rels = sorted(
        (tuple(map(name, rel.left)), tuple(map(name, rel.right)))
        for rel in bd.relations)
    assert len(rels) == 3
    # pi_r is the transposition swapping s and rsr
    r = [g for g in pr.system.S.gens if name(g) == "r"][0]
    s = [g for g in pr.system.S.gens if name(g) == "s"][0]
    t = [g for g in pr.system.S.gens if name(g) == "r.s.r"][0]
    assert bd.pi[r][s] == t and bd.pi[r][t] == s and bd.pi[r][r] == r
    assert bd.pi[s] == {x: x for x in (r, s, t)}
    assert bd.pi[t] == {x: x for x in (r, s, t)}


def test_coxeter_braid_data_is_coxeter_presentation(A3):
    pr = build_from_c0(A3.gpd, A3.S)
    bd = braid_data(pr)
    for lab1, lab2 in itertools.combinations(("s1", "s2", "s3"), 2):
        r, s = A3.gen(lab1), A3.gen(lab2)
        assert bd.matrices[(0, r, s)] == A3.matrix.entry(lab1, lab2)
        # pi_r(s) = s when the entry is finite
        assert bd.pi[r][s] == s


def test_braid_shift_closure():
    for name in ("cyclic4", "cyclic6", "ex8163", "ex8164", "A3"):
        pr = corpus.build(name).protorootoid()
        bd = braid_data(pr)
        ok, wit = braid_shift_check(bd)
        assert ok, (name, wit)


def test_pi_bijection_inverse():
    for name in ("ex8163", "ex8164", "A3"):
        pr = corpus.build(name).protorootoid()
        bd = braid_data(pr)
        gpd = pr.gpd
        for r, table in bd.pi.items():
            back = bd.pi[gpd.inv(r)]
            for t, s in table.items():
                assert back[s] == t
            assert len(set(table.values())) == len(table)


# -- word algorithm -------------------------------------------------------------------

def test_tits_reduce_ss(A3):
    pr = build_from_c0(A3.gpd, A3.S)
    bd = braid_data(pr)
    s = A3.gen("s1")
    red, elem, _ = tits_reduce(bd, (s, s))
    assert red == () and A3.gpd.is_identity(elem)


def test_tits_reduce_rsrs(A3):
    pr = build_from_c0(A3.gpd, A3.S)
    bd = braid_data(pr)
    r, s = A3.gen("s1"), A3.gen("s2")
    red, elem, _ = tits_reduce(bd, (r, s, r, s))
    assert len(red) == 2
    assert elem == word_product(A3.gpd, (r, s, r, s))


def test_w0_class_size(A3):
    pr = build_from_c0(A3.gpd, A3.S)
    bd = braid_data(pr)
    w0 = longest_element(A3)
    words = reduced_words(pr, w0)
    assert len(words) == 16
    red, _, cls = tits_reduce(bd, words[0], want_class=True)
    assert len(cls) == 16
    assert set(cls) == set(map(tuple, words))


def test_reduce_length_matches_bfs(A3):
    pr = build_from_c0(A3.gpd, A3.S)
    bd = braid_data(pr)
    gpd = A3.gpd
    gens = list(A3.S.gens)
    import random
    rng = random.Random(3)
    for _ in range(40):
        word = [rng.choice(gens)]
        for _ in range(rng.randrange(0, 7)):
            word.append(rng.choice(gens))
        red, elem, _ = tits_reduce(bd, tuple(word))
        assert len(red) == pr.system.length[elem]


def test_reduced_words_connected_by_braid_moves():
    for name in ("cyclic6", "ex8164"):
        pr = corpus.build(name).protorootoid()
        bd = braid_data(pr)
        for g in range(pr.gpd.n_morphisms()):
            words = reduced_words(pr, g)
            if not words:
                continue
            cls = braid_class(bd, tuple(words[0]))
            assert set(map(tuple, words)) <= cls


def test_word_composability_checked(A3):
    pr = build_from_c0(A3.gpd, A3.S)
    bd = braid_data(pr)
    pent = corpus.build("pentagon").protorootoid()
    gpd = pent.gpd
    bad = None
    for s1 in pent.system.S.gens:
        for s2 in pent.system.S.gens:
            if gpd.dom[s1] != gpd.cod[s2]:
                bad = (s1, s2)
                break
        if bad:
            break
    bd5 = braid_data(pent)
    with pytest.raises(ValueError):
        tits_reduce(bd5, bad)


# -- the generator representation ------------------------------------------------------

def test_five_halves_ex8164():
    pr, bd = bdata("ex8164")
    ok, rep = five_halves_check(bd)
    assert ok
    name = pr.gpd.name
    r = [g for g in pr.system.S.gens if name(g) == "r"][0]
    table = rep[r]
    moved = {name(t) for t, s in table.items() if t != s}
    assert moved == {"s", "r.s.r"}


def test_five_halves_finite_two_complete():
    # finite 2-complete even systems are complete and pass
    for name in ("cyclic4", "cyclic6", "ex8163", "A3", "hexagon"):
        pr = corpus.build(name).protorootoid()
        bd = braid_data(pr)
        if not bd.is_two_complete():
            continue
        ok, _ = five_halves_check(bd)
        assert ok, name


def test_five_halves_requires_two_complete():
    pr = corpus.build("path4").protorootoid()
    bd = braid_data(pr)
    assert not bd.is_two_complete()
    with pytest.raises(ValueError):
        five_halves_check(bd)
