"""Protorootoids of simple graphs, rainbow graphs, and protomeshes."""

from __future__ import annotations

import itertools
from collections import deque

from .boolring import RingElem, Universe
from .groupoid import FiniteGroupoid, GeneratorSet, pair_groupoid
from .order import WeakOrder, rootoid_check
from .proto import Protorootoid, build_even_variant, build_from_c0


class SimpleGraph:
    """Vertices plus two-element edge sets; no loops, no repeats."""

    def __init__(self, vertices, edges):
        self.vertices = list(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("repeated vertex")
        self.edges = []
        seen = set()
        for e in edges:
            e = frozenset(e)
            if len(e) != 2 or not e <= vset:
                raise ValueError(f"bad edge {sorted(e)!r}")
            if e in seen:
                raise ValueError("repeated edge")
            seen.add(e)
            self.edges.append(e)
        self.adj = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = sorted(e, key=repr)
            self.adj[a].add(b)
            self.adj[b].add(a)

    @staticmethod
    def from_json(data) -> "SimpleGraph":
        return SimpleGraph(data["vertices"], [tuple(e) for e in data["edges"]])

    def distances(self, source):
        dist = {source: 0}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def components(self):
        out, seen = [], set()
        for v in self.vertices:
            if v in seen:
                continue
            comp = set(self.distances(v))
            seen |= comp
            out.append(sorted(comp, key=repr))
        return out

    def is_even(self) -> bool:
        """No odd cycles: bipartite per component."""
        colour = {}
        for v in self.vertices:
            if v in colour:
                continue
            colour[v] = 0
            queue = deque([v])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if y not in colour:
                        colour[y] = 1 - colour[x]
                        queue.append(y)
                    elif colour[y] == colour[x]:
                        return False
        return True

    def spanning_forest(self):
        forest = []
        seen = set()
        for v in self.vertices:
            if v in seen:
                continue
            seen.add(v)
            queue = deque([v])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        forest.append(frozenset((x, y)))
                        queue.append(y)
        return forest


def even_graph_check(graph: SimpleGraph) -> bool:
    return graph.is_even()


# ---------------------------------------------------------------------------
# The protorootoid of a simple graph.


def half_space_table(graph: SimpleGraph):
    """X_(a,b) = vertices strictly closer to a than to b, for each edge
    direction (a, b)."""
    dist = {v: graph.distances(v) for v in graph.vertices}
    table = {}
    for e in graph.edges:
        a, b = sorted(e, key=repr)
        for s, t in ((a, b), (b, a)):
            table[(s, t)] = frozenset(
                x for x in dist[s] if dist[t][x] > dist[s][x])
    return table


def graph_protorootoid(graph: SimpleGraph):
    """Direct construction on the pair groupoid, cross-checked against the
    half-space rainbow model; returns (pr, even_pr_or_None, X-table)."""
    gpd, S = pair_groupoid(graph.vertices, graph.edges)
    pr = build_from_c0(gpd, S)
    xtab = half_space_table(graph)
    rainbow = rainbow_model_of_graph(graph)
    rpr = rainbow_protorootoid(rainbow)
    for g in range(gpd.n_morphisms()):
        if len(pr.nvals[g]) != len(rpr.nvals[g]):
            raise AssertionError(
                "direct and rainbow constructions disagree on a value size")
    even_pr = None
    if graph.is_even():
        even_pr, _ = build_even_variant(gpd, S)
    return pr, even_pr, xtab


# ---------------------------------------------------------------------------
# Rainbow graphs.


class RainbowGraph:
    """Edge labels in a Boolean ring summing to zero around every cycle."""

    def __init__(self, graph: SimpleGraph, ring: Universe, labels: dict,
                 check=True):
        self.graph = graph
        self.ring = ring
        self.labels = {frozenset(e): frozenset(v) for e, v in labels.items()}
        for e in graph.edges:
            if e not in self.labels:
                raise ValueError(f"edge {sorted(e)!r} has no label")
        if check:
            ok, cyc = self.cycle_condition()
            if not ok:
                raise ValueError(f"cycle condition fails on {cyc!r}")

    def label(self, e) -> frozenset:
        return self.labels[frozenset(e)]

    def cycle_condition(self):
        """Zero sums around the fundamental cycles of a spanning forest
        (hence around every cycle, by the cycle-space argument)."""
        forest = set(self.graph.spanning_forest())
        for e in self.graph.edges:
            if e in forest:
                continue
            a, b = sorted(e, key=repr)
            # path from b to a in the forest
            path = _forest_path(self.graph, forest, b, a)
            total = self.labels[e]
            for f in path:
                total = total ^ self.labels[f]
            if total:
                return False, sorted(e)
        return True, None


def _forest_path(graph, forest, src, dst):
    adj = {v: [] for v in graph.vertices}
    for e in forest:
        a, b = tuple(e)
        adj[a].append((b, e))
        adj[b].append((a, e))
    prev = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for y, e in adj[x]:
            if y not in prev:
                prev[y] = (x, e)
                queue.append(y)
    path = []
    x = dst
    while prev[x] is not None:
        x, e = prev[x]
        path.append(e)
    return path


def rainbow_from_forest(graph: SimpleGraph, forest_edges, labels: dict,
                        ring: Universe) -> RainbowGraph:
    """Unique rainbow extension of labels on a maximal subforest.

    Each non-forest edge closes one fundamental cycle; the cycle condition
    forces its label to be the sum along the forest path.
    """
    forest = {frozenset(e) for e in forest_edges}
    if not _is_maximal_forest(graph, forest):
        raise ValueError("edges do not form a maximal subforest")
    out = {frozenset(e): frozenset(v) for e, v in labels.items()}
    if set(out) != forest:
        raise ValueError("labels must be given exactly on the forest edges")
    for e in graph.edges:
        if e in forest:
            continue
        a, b = tuple(e)
        total = frozenset()
        for f in _forest_path(graph, forest, b, a):
            total = total ^ out[f]
        out[e] = total
    return RainbowGraph(graph, ring, out)


def _is_maximal_forest(graph, forest):
    sub = SimpleGraph(graph.vertices, [tuple(e) for e in forest])
    if len(forest) != len(graph.vertices) - len(graph.components()):
        return False
    return len(sub.components()) == len(graph.components())


def rainbow_model_of_graph(graph: SimpleGraph) -> RainbowGraph:
    """The canonical rainbow structure: colors are the half-spaces X_s and
    an edge is labelled by the colors split by it."""
    xtab = half_space_table(graph)
    colors = sorted(set(xtab.values()), key=sorted)
    ring = Universe(tuple(colors))
    labels = {}
    for e in graph.edges:
        a, b = tuple(e)
        labels[e] = frozenset(
            A for A in colors if len({a, b} & A) == 1)
    return RainbowGraph(graph, ring, labels)


def even_rainbow_model_of_graph(graph: SimpleGraph) -> RainbowGraph:
    """The halved model for even graphs: colors are the partitions
    {X_s, X_s*} and an edge is labelled by the partitions it crosses."""
    if not graph.is_even():
        raise ValueError("the graph has an odd cycle")
    xtab = half_space_table(graph)
    colors = sorted(
        {frozenset((xtab[(a, b)], xtab[(b, a)]))
         for (a, b) in xtab}, key=lambda Y: sorted(sorted(p) for p in Y))
    ring = Universe(tuple(colors))
    labels = {}
    for e in graph.edges:
        a, b = tuple(e)
        labels[e] = frozenset(
            Y for Y in colors
            if all(len({a, b} & part) == 1 for part in Y))
    return RainbowGraph(graph, ring, labels)


def rainbow_protorootoid(rainbow: RainbowGraph) -> Protorootoid:
    """Constant-ring protorootoid: N along any path, well defined by the
    cycle condition."""
    graph = rainbow.graph
    gpd, S = pair_groupoid(graph.vertices, graph.edges)
    uni = rainbow.ring
    color_idx = uni.index
    nsum = {}
    for a in graph.vertices:
        acc = {a: frozenset()}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y in graph.adj[x]:
                if y not in acc:
                    acc[y] = acc[x] ^ rainbow.label((x, y))
                    queue.append(y)
        for b, total in acc.items():
            nsum[(a, b)] = frozenset(color_idx[c] for c in total)
    carriers = [uni] * len(gpd.objects)
    ident_act = tuple(range(len(uni)))
    actions = [ident_act] * gpd.n_morphisms()
    nvals = []
    for g in range(gpd.n_morphisms()):
        a, b = gpd.keys[g]
        nvals.append(nsum[(a, b)])
    return Protorootoid(gpd, carriers, actions, nvals)


# ---------------------------------------------------------------------------
# Protomeshes.


class Protomesh:
    """A powerset ring with a distinguished nonempty family L.

    Family members are subsets of the ring universe, given by labels."""

    def __init__(self, ring: Universe, family):
        self.ring = ring
        self.family = []
        seen = set()
        for A in family:
            if isinstance(A, RingElem):
                A = frozenset(A.labels())
            else:
                A = frozenset(A)
            if not all(x in ring.index for x in A):
                raise ValueError("family member outside the ring universe")
            if A not in seen:
                seen.add(A)
                self.family.append(A)
        if not self.family:
            raise ValueError("protomeshes need a nonempty family")
        self.family.sort(key=lambda s: sorted(map(repr, s)))


def protomesh_protorootoid(mesh: Protomesh) -> Protorootoid:
    """Complete graph on L with N(A, B) = A + B over the constant ring."""
    labels = [tuple(sorted(A)) for A in mesh.family]
    n = len(labels)
    keys, dom, cod = [], [], []
    index = {}
    for i in range(n):
        for j in range(n):
            index[(i, j)] = len(keys)
            keys.append((i, j))
            dom.append(j)
            cod.append(i)
    table = {}
    for (i, j), g in index.items():
        for (j2, k), h in index.items():
            if j == j2:
                table[(g, h)] = index[(i, k)]
    gpd = FiniteGroupoid(labels, keys, dom, cod, table,
                         [f"f[{labels[i]}<-{labels[j]}]" for (i, j) in keys])
    uni = mesh.ring
    ident = tuple(range(len(uni)))
    actions = [ident] * len(keys)
    nvals = []
    for (i, j) in keys:
        nvals.append(frozenset(uni.index[x] for x in
                               mesh.family[i] ^ mesh.family[j]))
    return Protorootoid(gpd, [uni] * n, actions, nvals)


def mesh_check(mesh: Protomesh):
    """(is_mesh, is_complete, report): the protomesh is a mesh when its
    protorootoid passes the full order ladder."""
    pr = protomesh_protorootoid(mesh)
    rep = rootoid_check(pr)
    return rep.rootoid, rep.complete, rep


def splitting_check(mesh: Protomesh):
    """Pseudoprincipal splitting: nonzero A meeting B splits inside L.

    For every A, B in L with A nonzero there must be a nonzero X in L
    with X <= A and either X <= B or X disjoint from B.
    """
    fam = mesh.family
    for A in fam:
        if not A:
            continue
        for B in fam:
            ok = any(X and X <= A and (X <= B or not (X & B)) for X in fam)
            if not ok:
                return False, (sorted(A), sorted(B))
    return True, None
