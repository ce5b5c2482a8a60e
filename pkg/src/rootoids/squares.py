"""Oriented and commutative squares, their rigidity, pasting, and
commutative-cube detection.

A quadruple (v, y, x, w) with vyxw an identity is an oriented square when
all four corner expressions vy, yx, xw, wv are compatible; equivalently
x.N(w) = N(y*) and N(w), N(x*) are disjoint.  Both routes are computed
and compared whenever a square is tested.
"""

from __future__ import annotations

import itertools

from .morphisms import compatible
from .proto import Protorootoid


def _composite_is_identity(pr, v, y, x, w):
    g_ = pr.gpd
    if (g_.dom[x] != g_.cod[w] or g_.dom[y] != g_.cod[x]
            or g_.dom[v] != g_.cod[y]):
        raise ValueError("the quadruple is not composable")
    comp = g_.compose(v, g_.compose(y, g_.compose(x, w)))
    return g_.is_identity(comp)


def is_oriented_square(pr: Protorootoid, v, y, x, w) -> bool:
    """Oriented-square test with the containment criterion and the
    corner-compatibility definition self-checked against each other."""
    if not _composite_is_identity(pr, v, y, x, w):
        raise ValueError("vyxw is not an identity morphism")
    g_ = pr.gpd
    by_criterion = (
        pr.dot(x, pr.nvals[w]) == pr.nvals[g_.inv(y)]
        and not (pr.nvals[w] & pr.nvals[g_.inv(x)])
    )
    by_definition = (
        compatible(pr, v, y) and compatible(pr, y, x)
        and compatible(pr, x, w) and compatible(pr, w, v)
    )
    if by_criterion != by_definition:
        raise AssertionError(
            "square criterion and compatibility definition disagree")
    return by_criterion


def is_commutative_square(pr: Protorootoid, top, left, bottom, right) -> bool:
    """Commutative diagram (top.left = right.bottom) that is a square:
    the quadruple (top, left, bottom*, right*) is oriented."""
    g_ = pr.gpd
    if g_.compose(top, left) != g_.compose(right, bottom):
        raise ValueError("the diagram does not commute")
    return is_oriented_square(pr, top, left, g_.inv(bottom), g_.inv(right))


def complete_square(pr: Protorootoid, x, w):
    """Rigidity: the unique (v, y) with (x, w, v, y) an oriented square,
    given the adjacent sides x and w with xw defined; None when no square
    exists.  Faithfulness makes y unique."""
    g_ = pr.gpd
    if g_.dom[x] != g_.cod[w]:
        raise ValueError("xw is not defined")
    if pr.nvals[w] & pr.nvals[g_.inv(x)]:
        return None
    target = pr.dot(x, pr.nvals[w])
    candidates = [g for g in pr.gpd.star(g_.cod[x])
                  if pr.nvals[g] == target]
    if not candidates:
        return None
    if len(candidates) > 1:
        raise AssertionError("multiple completions: the protorootoid is "
                             "not faithful")
    ystar = candidates[0]
    y = g_.inv(ystar)
    v = g_.compose(g_.inv(w), g_.compose(g_.inv(x), ystar))
    if not _composite_is_identity(pr, x, w, v, y):
        raise AssertionError("completion does not close up")
    return v, y


def paste_check(pr: Protorootoid, a, b, c, d, e, f, g):
    """Two-out-of-three for horizontally pasted squares.

    The 3x2 grid has top edges a, e (pointing left), bottom edges c, g
    (pointing left) and vertical edges d, b, f (pointing up), with
    ab = dc and ef = bg.  Returns the three square flags and whether every
    two-of-three pattern forces the third.
    """
    g_ = pr.gpd
    s1 = (a, b, g_.inv(c), g_.inv(d))
    s2 = (e, f, g_.inv(g), g_.inv(b))
    s3 = (g_.compose(a, e), f, g_.compose(g_.inv(g), g_.inv(c)), g_.inv(d))
    flags = []
    for (x, w, v, y) in (s1, s2, s3):
        flags.append(is_oriented_square(pr, x, w, v, y))
    two_of_three = sum(flags) != 2
    return flags, two_of_three


# ---------------------------------------------------------------------------
# Cosquares (complement-set variant; signed models only).


def is_oriented_cosquare(full_pr, even_data, v, y, x, w) -> bool:
    """Square condition on complements of positive parts, available for
    protorootoids carrying signed carriers: x maps the complement of the
    positive part of N(w) onto that of N(y*)."""
    g_ = full_pr.gpd
    if not _composite_is_identity(full_pr, v, y, x, w):
        raise ValueError("vyxw is not an identity morphism")

    def positive_part(z):
        su = even_data.signed[g_.cod[z]]
        return frozenset(i for i in full_pr.nvals[z] if su.is_positive(i))

    def complement(z):
        su = even_data.signed[g_.cod[z]]
        return frozenset(su.positives) - positive_part(z)

    return full_pr.dot(x, complement(w)) == complement(g_.inv(y))


# ---------------------------------------------------------------------------
# Commutative n-cubes.


class NCube:
    """A commutative n-cube: vertex morphisms from a base corner, with all
    two-dimensional faces commutative squares."""

    def __init__(self, pr, base_object, edges, vertex_morphisms):
        self.pr = pr
        self.base_object = base_object
        self.edges = tuple(edges)          # base-corner edges (dom = base)
        self.vertex = vertex_morphisms     # frozenset(subset) -> morphism

    @property
    def dimension(self):
        return len(self.edges)

    def edge(self, U, i):
        g_ = self.pr.gpd
        U = frozenset(U)
        return g_.compose(self.vertex[U | {i}], g_.inv(self.vertex[U]))

    def is_nontrivial(self):
        g_ = self.pr.gpd
        n = self.dimension
        for U in self.vertex:
            for i in range(n):
                if i not in U and g_.is_identity(self.edge(U, i)):
                    return False
        return True


def build_cube(pr: Protorootoid, base_edges):
    """Grow a commutative cube with the given base-corner edges, or None.

    The upper vertices are forced by rigidity, and every face is verified
    afterwards; base edges use dom = base object.
    """
    g_ = pr.gpd
    n = len(base_edges)
    if n == 0:
        raise ValueError("a cube needs at least one edge")
    base = g_.dom[base_edges[0]]
    if any(g_.dom[e] != base for e in base_edges):
        raise ValueError("base edges must share their domain object")
    vertex = {frozenset(): g_.identity[base]}
    for i, e in enumerate(base_edges):
        vertex[frozenset([i])] = e
    for k in range(2, n + 1):
        for U in itertools.combinations(range(n), k):
            Uf = frozenset(U)
            i, j = U[0], U[1]
            V = Uf - {i, j}
            ai = g_.compose(vertex[V | {i}], g_.inv(vertex[V]))
            aj = g_.compose(vertex[V | {j}], g_.inv(vertex[V]))
            got = complete_square(pr, aj, g_.inv(ai))
            if got is None:
                return None
            _, bi = got
            vertex[Uf] = g_.compose(bi, vertex[V | {j}])
    # verify every 2-face everywhere (the rigidity fill only used some)
    for U in vertex:
        for i in range(n):
            if i in U:
                continue
            for j in range(i + 1, n):
                if j in U:
                    continue
                ai = g_.compose(vertex[U | {i}], g_.inv(vertex[U]))
                aj = g_.compose(vertex[U | {j}], g_.inv(vertex[U]))
                bi = g_.compose(vertex[U | {i, j}], g_.inv(vertex[U | {j}]))
                bj = g_.compose(vertex[U | {i, j}], g_.inv(vertex[U | {i}]))
                if g_.compose(bj, ai) != g_.compose(bi, aj):
                    return None
                try:
                    if not is_commutative_square(pr, bi, aj, ai, bj):
                        return None
                except ValueError:
                    return None
    return NCube(pr, base, base_edges, vertex)


def max_nontrivial_cube(pr: Protorootoid, dimension_cap: int = 8) -> int:
    """Largest n admitting an n-cube with no identity edge.

    Search extends edge tuples at each base object, pruning by the
    pairwise square condition before building candidate cubes.
    """
    g_ = pr.gpd
    best = 0

    def pair_ok(e1, e2):
        return build_cube(pr, [e1, e2]) is not None

    for base in range(len(g_.objects)):
        cands = [e for e in range(g_.n_morphisms())
                 if g_.dom[e] == base and not g_.is_identity(e)]
        if cands and best < 1:
            best = 1
        ok_pairs = {}

        def extend(current, start):
            nonlocal best
            if len(current) > best:
                best = len(current)
            if len(current) >= dimension_cap:
                return
            for k in range(start, len(cands)):
                e = cands[k]
                if all(ok_pairs.setdefault(
                        (c, e), pair_ok(c, e)) for c in current):
                    cube = build_cube(pr, current + [e])
                    if cube is not None and cube.is_nontrivial():
                        extend(current + [e], k + 1)

        for k in range(len(cands)):
            extend([cands[k]], k + 1)
    return best
