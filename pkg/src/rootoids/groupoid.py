"""Finite groupoids: closure from generators, lengths, sign characters,
semidirect products, graph groupoids and based datums.

Morphisms are interned: each has an integer id, a hashable key, and rows
in the dom/cod/inverse tables.  The star at an object a is the set of
morphisms with codomain a, so g in aG_b runs from b to a and a composite
g*h requires dom(g) = cod(h).
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Sequence

from .boolring import SizeGateError

MORPHISM_BOUND = 10 ** 6


class FiniteGroupoid:
    def __init__(self, objects: Sequence, keys: Sequence, dom: Sequence[int],
                 cod: Sequence[int], table: dict, names=None):
        self.objects = tuple(objects)
        self.obj_index = {o: i for i, o in enumerate(self.objects)}
        self.keys = list(keys)
        self.key_index = {k: i for i, k in enumerate(self.keys)}
        self.dom = list(dom)
        self.cod = list(cod)
        self.table = table  # (g, h) -> gh for dom(g) == cod(h)
        self.names = ([str(n) for n in names] if names
                      else [str(k) for k in self.keys])
        self.identity = [None] * len(self.objects)
        self.inverse = [None] * len(self.keys)
        self._index_structure()

    def _index_structure(self):
        for g in range(len(self.keys)):
            if self.dom[g] == self.cod[g]:
                if all(self.table.get((g, h)) == h
                       for h in self._cheap_star(self.dom[g])):
                    if self.identity[self.dom[g]] is None:
                        self.identity[self.dom[g]] = g
        if any(i is None for i in self.identity):
            raise ValueError("groupoid is missing an identity morphism")
        for g in range(len(self.keys)):
            a, b = self.cod[g], self.dom[g]
            for h in range(len(self.keys)):
                if self.dom[h] == a and self.cod[h] == b:
                    if self.table.get((g, h)) == self.identity[a]:
                        self.inverse[g] = h
                        break
            if self.inverse[g] is None:
                raise ValueError("groupoid is missing an inverse")
        self._stars = [[] for _ in self.objects]
        for g in range(len(self.keys)):
            self._stars[self.cod[g]].append(g)

    def _cheap_star(self, a):
        return [h for h in range(len(self.keys)) if self.cod[h] == a]

    # -- queries ----------------------------------------------------------
    def n_morphisms(self) -> int:
        return len(self.keys)

    def compose(self, g: int, h: int) -> int:
        """gh, defined when dom(g) = cod(h)."""
        try:
            return self.table[(g, h)]
        except KeyError:
            raise ValueError("morphisms are not composable") from None

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def star(self, a: int):
        """All morphisms with codomain a."""
        return self._stars[a]

    def hom(self, a: int, b: int):
        """Morphisms from b to a (codomain a, domain b)."""
        return [g for g in self._stars[a] if self.dom[g] == b]

    def is_identity(self, g: int) -> bool:
        return self.identity[self.dom[g]] == g

    def components(self):
        """Partition of object indices into connected components."""
        seen = set()
        comps = []
        for a in range(len(self.objects)):
            if a in seen:
                continue
            comp = {a}
            queue = deque([a])
            while queue:
                x = queue.popleft()
                for g in self._stars[x]:
                    d = self.dom[g]
                    if d not in comp:
                        comp.add(d)
                        queue.append(d)
            seen |= comp
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def name(self, g: int) -> str:
        return self.names[g]

    def check_axioms(self):
        """Exhaustive associativity / inverse sanity check (tests only)."""
        n = len(self.keys)
        for g in range(n):
            assert self.compose(g, self.identity[self.dom[g]]) == g
            assert self.compose(self.identity[self.cod[g]], g) == g
            assert self.compose(g, self.inv(g)) == self.identity[self.cod[g]]
            assert self.compose(self.inv(g), g) == self.identity[self.dom[g]]
        for g in range(n):
            for h in range(n):
                if self.dom[g] != self.cod[h]:
                    continue
                gh = self.compose(g, h)
                for k in range(n):
                    if self.dom[h] != self.cod[k]:
                        continue
                    assert self.compose(gh, k) == self.compose(g, self.compose(h, k))


class GeneratorSet:
    """Inversion-closed generating set without identities."""

    def __init__(self, gpd: FiniteGroupoid, gens: Iterable[int], check=True):
        self.gpd = gpd
        self.gens = tuple(sorted(set(gens)))
        if check:
            self.validate()

    def validate(self):
        g = self.gpd
        for s in self.gens:
            if g.is_identity(s):
                raise ValueError("generating set contains an identity")
            if g.inv(s) not in self.gens:
                raise ValueError("generating set is not closed under inversion")
        reached = set(g.identity)
        frontier = list(reached)
        while frontier:
            nxt = []
            for h in frontier:
                for s in self.gens:
                    if g.dom[s] == g.cod[h]:
                        x = g.compose(s, h)
                        if x not in reached:
                            reached.add(x)
                            nxt.append(x)
            frontier = nxt
        if len(reached) != g.n_morphisms():
            raise ValueError("set does not generate the groupoid")

    def at(self, a: int):
        """aS: generators with codomain a."""
        return [s for s in self.gens if self.gpd.cod[s] == a]


# ---------------------------------------------------------------------------
# Closure from a faithful action.


def closure_from_action(objects, gen_specs, bound=None, obj_names=None):
    """Cayley closure of generators acting faithfully on per-object sets.

    ``gen_specs`` is a list of (name, dom_object, cod_object, mapping)
    where mapping sends points of the domain object's set to points of the
    codomain object's set, bijectively.  Point sets are inferred from the
    mappings; identity maps must make sense on them.  Returns the groupoid
    and the generator set (inverses are adjoined automatically).
    """
    if bound is None:
        bound = MORPHISM_BOUND
    objects = list(objects)
    obj_index = {o: i for i, o in enumerate(objects)}
    points = {o: set() for o in objects}
    for name, d, c, mapping in gen_specs:
        points[d] |= set(mapping.keys())
        points[c] |= set(mapping.values())

    def point_key(p):
        try:
            return (0, p) if isinstance(p, (int, float)) else (1, repr(p))
        except TypeError:
            return (1, repr(p))

    point_list = {o: tuple(sorted(points[o], key=point_key)) for o in objects}
    point_idx = {o: {p: i for i, p in enumerate(point_list[o])} for o in objects}

    def as_tuple(d, c, mapping):
        src = point_list[d]
        if len(mapping) != len(src) or set(mapping) != set(src):
            raise ValueError(f"action of a generator is not total on {d!r}")
        img = tuple(point_idx[c][mapping[p]] for p in src)
        if len(set(img)) != len(img):
            raise ValueError("generator action is not a bijection")
        return img

    keys, names, dom, cod = [], [], [], []
    index = {}

    def intern(key, name):
        if key in index:
            if names[index[key]] != name and name is not None:
                # same morphism found twice; keep the first name
                pass
            return index[key]
        index[key] = len(keys)
        keys.append(key)
        names.append(name if name is not None else f"m{len(keys) - 1}")
        dom.append(key[1])
        cod.append(key[0])
        return index[key]

    for o in objects:
        i = obj_index[o]
        intern((i, i, tuple(range(len(point_list[o])))), f"1_{o}")
    gen_ids = []
    for name, d, c, mapping in gen_specs:
        di, ci = obj_index[d], obj_index[c]
        img = as_tuple(d, c, mapping)
        gid = intern((ci, di, img), name)
        gen_ids.append(gid)
        inv_img = [None] * len(img)
        for i, v in enumerate(img):
            inv_img[v] = i
        iid = intern((di, ci, tuple(inv_img)), f"{name}*")
        gen_ids.append(iid)

    def comp_key(kg, kh):
        # kg: (a, b, map), kh: (b, c, map): composite (a, c, g after h)
        (a, b, gm), (b2, c, hm) = kg, kh
        assert b == b2
        return (a, c, tuple(gm[v] for v in hm))

    table = {}
    frontier = list(range(len(keys)))
    while frontier:
        nxt = []
        for h in frontier:
            for g in list(range(len(keys))):
                for x, y in ((g, h), (h, g)):
                    if dom[x] != cod[y] or (x, y) in table:
                        continue
                    key = comp_key(keys[x], keys[y])
                    if key not in index:
                        if len(keys) >= bound:
                            raise SizeGateError(
                                f"groupoid closure exceeds {bound} morphisms"
                            )
                        z = intern(key, None)
                        nxt.append(z)
                    table[(x, y)] = index[key]
        frontier = nxt
    # complete the table on any remaining composable pairs
    n = len(keys)
    for g in range(n):
        for h in range(n):
            if dom[g] == cod[h] and (g, h) not in table:
                table[(g, h)] = index[comp_key(keys[g], keys[h])]
    gpd = FiniteGroupoid(objects, keys, dom, cod, table, names)
    return gpd, GeneratorSet(gpd, gen_ids)


def group_from_permutations(names_to_perms: dict, bound=None):
    """One-object groupoid from permutation generators (inverses adjoined)."""
    specs = []
    for name, perm in names_to_perms.items():
        mapping = {i: perm[i] for i in range(len(perm))}
        specs.append((name, "*", "*", mapping))
    return closure_from_action(["*"], specs, bound=bound)


def trivial_groupoid(obj="*"):
    g = FiniteGroupoid([obj], [(0, 0, ())], [0], [0], {(0, 0): 0}, [f"1_{obj}"])
    return g, GeneratorSet(g, [], check=False)


# ---------------------------------------------------------------------------
# Lengths and sign characters.


def length_table(gpd: FiniteGroupoid, S: GeneratorSet):
    """l_S(g): shortest factorisation length, by BFS from the identities."""
    dist = {e: 0 for e in gpd.identity}
    frontier = list(dist)
    while frontier:
        nxt = []
        for h in frontier:
            for s in S.gens:
                if gpd.dom[s] == gpd.cod[h]:
                    x = gpd.compose(s, h)
                    if x not in dist:
                        dist[x] = dist[h] + 1
                        nxt.append(x)
        frontier = nxt
    if len(dist) != gpd.n_morphisms():
        raise ValueError("generators do not reach every morphism")
    return dist


def length(gpd: FiniteGroupoid, S: GeneratorSet, g: int) -> int:
    return length_table(gpd, S)[g]


def rename_by_words(gpd: FiniteGroupoid, S: GeneratorSet):
    """Rename every morphism by a shortest generator word (display only)."""
    word = {e: "1" if len(gpd.objects) == 1 else f"1_{gpd.objects[a]}"
            for a, e in enumerate(gpd.identity)}
    frontier = list(word)
    order = sorted(S.gens, key=gpd.name)
    while frontier:
        nxt = []
        for h in frontier:
            for s in order:
                if gpd.dom[s] == gpd.cod[h]:
                    x = gpd.compose(s, h)
                    if x not in word:
                        word[x] = (gpd.name(s) if word[h].startswith("1")
                                   else gpd.name(s) + "." + word[h])
                        nxt.append(x)
        frontier = nxt
    for g, name in word.items():
        gpd.names[g] = name


def sign_character(gpd: FiniteGroupoid, S: GeneratorSet):
    """(exists, chi): chi maps morphisms to +-1 with chi(s) = -1 on S.

    Exists iff every S-factorisation of a morphism has constant parity,
    i.e. the Cayley graph is bipartite per component.
    """
    sign = {e: 1 for e in gpd.identity}
    frontier = list(sign)
    while frontier:
        nxt = []
        for h in frontier:
            for s in S.gens:
                if gpd.dom[s] == gpd.cod[h]:
                    x = gpd.compose(s, h)
                    if x in sign:
                        if sign[x] != -sign[h]:
                            return False, None
                    else:
                        sign[x] = -sign[h]
                        nxt.append(x)
        frontier = nxt
    return True, sign


# ---------------------------------------------------------------------------
# Pair groupoid of a simple graph.


def pair_groupoid(vertices, edges, bound=None):
    """Simply connected groupoid of a simple graph.

    Objects are the vertices; there is exactly one morphism (a, b): b -> a
    per ordered pair of vertices in a common component; the generators are
    the edge pairs.
    """
    if bound is None:
        bound = MORPHISM_BOUND
    vertices = list(vertices)
    vidx = {v: i for i, v in enumerate(vertices)}
    adj = {v: set() for v in vertices}
    for e in edges:
        a, b = tuple(e)
        if a == b:
            raise ValueError("simple graphs have no loops")
        adj[a].add(b)
        adj[b].add(a)
    comp_of = {}
    for v in vertices:
        if v in comp_of:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        for x in comp:
            comp_of[x] = min(comp, key=lambda z: vidx[z])
    keys, names, dom, cod = [], [], [], []
    index = {}
    for a in vertices:
        for b in vertices:
            if comp_of[a] == comp_of[b]:
                index[(a, b)] = len(keys)
                keys.append((a, b))
                names.append(f"({a},{b})")
                dom.append(vidx[b])
                cod.append(vidx[a])
    if len(keys) > bound:
        raise SizeGateError("pair groupoid exceeds the morphism bound")
    table = {}
    for (a, b), g in index.items():
        for (b2, c), h in index.items():
            if b == b2:
                table[(g, h)] = index[(a, c)]
    gpd = FiniteGroupoid(vertices, keys, dom, cod, table, names)
    gens = [index[(a, b)] for a in vertices for b in adj[a]]
    return gpd, GeneratorSet(gpd, gens, check=False)


# ---------------------------------------------------------------------------
# Semidirect products.


def semidirect_product(G: FiniteGroupoid, S: GeneratorSet, H: FiniteGroupoid,
                       R: GeneratorSet, action):
    """(K, T) = (G, S) x| (H, R) for a group H acting on (G, S).

    ``action`` maps each morphism id of the one-object group H to a pair
    (object_map, morphism_map) of dicts describing an automorphism of G.
    Morphisms of K are pairs (delta, h) with cod = cod(delta), dom =
    h*(dom delta), and (delta,h)(gamma,h') = (delta h(gamma), h h').
    """
    if len(H.objects) != 1:
        raise ValueError("the acting groupoid must be a group")
    for h in range(H.n_morphisms()):
        omap, mmap = action[h]
        for s in S.gens:
            if mmap[s] not in S.gens:
                raise ValueError("action does not preserve the generators")
        for g in range(G.n_morphisms()):
            if G.cod[mmap[g]] != omap[G.cod[g]] or G.dom[mmap[g]] != omap[G.dom[g]]:
                raise ValueError("action maps are not functorial")
    keys, names, dom, cod = [], [], [], []
    index = {}
    for d in range(G.n_morphisms()):
        for h in range(H.n_morphisms()):
            key = (d, h)
            index[key] = len(keys)
            keys.append(key)
            names.append(f"({G.name(d)},{H.name(h)})")
            hinv_omap = action[H.inv(h)][0]
            dom.append(hinv_omap[G.dom[d]])
            cod.append(G.cod[d])
    table = {}
    for (d, h), g1 in index.items():
        for (e, h2), g2 in index.items():
            if dom[g1] != cod[g2]:
                continue
            he = action[h][1][e]
            table[(g1, g2)] = index[(G.compose(d, he), H.compose(h, h2))]
    K = FiniteGroupoid(G.objects, keys, dom, cod, table, names)
    T = [index[(d, H.identity[0])] for d in S.gens]
    T += [index[(G.identity[a], r)] for a in range(len(G.objects)) for r in R.gens]
    return K, GeneratorSet(K, T)


# ---------------------------------------------------------------------------
# Homomorphisms and subgroupoids.


class GroupoidHom:
    """Object and morphism maps preserving dom, cod, composition, identities."""

    def __init__(self, dom_gpd: FiniteGroupoid, cod_gpd: FiniteGroupoid,
                 obj_map: dict, mor_map: dict, check=True):
        self.dom_gpd = dom_gpd
        self.cod_gpd = cod_gpd
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        if check:
            self.validate()

    def validate(self):
        H, G = self.dom_gpd, self.cod_gpd
        for h in range(H.n_morphisms()):
            g = self.mor_map[h]
            if G.dom[g] != self.obj_map[H.dom[h]] or G.cod[g] != self.obj_map[H.cod[h]]:
                raise ValueError("homomorphism does not preserve dom/cod")
        for a in range(len(H.objects)):
            if self.mor_map[H.identity[a]] != G.identity[self.obj_map[a]]:
                raise ValueError("homomorphism does not preserve identities")
        for h1 in range(H.n_morphisms()):
            for h2 in range(H.n_morphisms()):
                if H.dom[h1] != H.cod[h2]:
                    continue
                lhs = self.mor_map[H.compose(h1, h2)]
                rhs = G.compose(self.mor_map[h1], self.mor_map[h2])
                if lhs != rhs:
                    raise ValueError("homomorphism does not preserve composition")

    def star_injective(self) -> bool:
        H = self.dom_gpd
        for a in range(len(H.objects)):
            star = H.star(a)
            if len({self.mor_map[h] for h in star}) != len(star):
                return False
        return True

    @staticmethod
    def identity_of(gpd: FiniteGroupoid) -> "GroupoidHom":
        n = gpd.n_morphisms()
        return GroupoidHom(gpd, gpd, {a: a for a in range(len(gpd.objects))},
                           {g: g for g in range(n)}, check=False)


def subgroupoid(gpd: FiniteGroupoid, morphisms: Iterable[int]):
    """Full closure of a morphism set under inversion/composition as a
    standalone groupoid, with the inclusion homomorphism."""
    mors = set(morphisms)
    changed = True
    while changed:
        changed = False
        for g in list(mors):
            if gpd.inv(g) not in mors:
                mors.add(gpd.inv(g))
                changed = True
        for g in list(mors):
            for h in list(mors):
                if gpd.dom[g] == gpd.cod[h] and gpd.compose(g, h) not in mors:
                    mors.add(gpd.compose(g, h))
                    changed = True
    objs = sorted({gpd.dom[g] for g in mors} | {gpd.cod[g] for g in mors})
    for a in objs:
        mors.add(gpd.identity[a])
    objs = sorted({gpd.dom[g] for g in mors} | {gpd.cod[g] for g in mors})
    obj_new = {a: i for i, a in enumerate(objs)}
    ids = sorted(mors)
    mor_new = {g: i for i, g in enumerate(ids)}
    table = {}
    for g in ids:
        for h in ids:
            if gpd.dom[g] == gpd.cod[h]:
                table[(mor_new[g], mor_new[h])] = mor_new[gpd.compose(g, h)]
    sub = FiniteGroupoid(
        [gpd.objects[a] for a in objs],
        [gpd.keys[g] for g in ids],
        [obj_new[gpd.dom[g]] for g in ids],
        [obj_new[gpd.cod[g]] for g in ids],
        table,
        [gpd.name(g) for g in ids],
    )
    incl = GroupoidHom(sub, gpd, {obj_new[a]: a for a in objs},
                       {mor_new[g]: g for g in ids}, check=False)
    return sub, incl


# ---------------------------------------------------------------------------
# Based datums (groupoid <-> (vertex group, star, basepoint)).


class BasedDatum:
    """(A, X, x): a group with a free left action on X and a basepoint."""

    def __init__(self, group_elements, act, star_elements, basepoint):
        self.group_elements = list(group_elements)
        self.act = act  # act(a, x) -> x'
        self.star_elements = list(star_elements)
        self.basepoint = basepoint
        for x in self.star_elements:
            hits = [a for a in self.group_elements if self.act(a, x) == x]
            if len(hits) != 1:
                raise ValueError("the action is not free")
        if basepoint not in self.star_elements:
            raise ValueError("basepoint must lie in the star set")


def datum_of_based_groupoid(gpd: FiniteGroupoid, a: int) -> BasedDatum:
    """(aG_a, aG, 1_a) with aG_a acting by left multiplication."""
    if not gpd.is_connected():
        raise ValueError("the groupoid must be connected")
    vertex = gpd.hom(a, a)
    star = gpd.star(a)

    def act(g, x):
        return gpd.compose(g, x)

    return BasedDatum(vertex, act, star, gpd.identity[a])


def groupoid_of_datum(datum: BasedDatum):
    """Reconstruct a based connected groupoid from its datum.

    Objects are the orbits of the vertex group on the star set; the
    morphism classes [z, y] act like z* y, composed by [w, z][z, y] = [w, y].
    """
    orbits = []
    orbit_of = {}
    for x in datum.star_elements:
        if x in orbit_of:
            continue
        orb = sorted((datum.act(a, x) for a in datum.group_elements), key=repr)
        rep = orb[0]
        orbits.append(rep)
        for y in orb:
            orbit_of[y] = rep

    def normalise(z, y):
        # translate so that the second slot is its orbit representative
        rep = orbit_of[y]
        for a in datum.group_elements:
            if datum.act(a, y) == rep:
                return (datum.act(a, z), rep)
        raise AssertionError("free action lost an orbit representative")

    obj_index = {rep: i for i, rep in enumerate(orbits)}
    keys, dom, cod = [], [], []
    index = {}
    for y_rep in orbits:
        for z in datum.star_elements:
            key = normalise(z, y_rep)
            if key not in index:
                index[key] = len(keys)
                keys.append(key)
                dom.append(obj_index[y_rep])
                cod.append(obj_index[orbit_of[z]])
    table = {}
    for (z, y), g in index.items():
        for (w, z2), h in index.items():
            # compose h: [w, z2] after g: [z, y]: align z2 with z first
            if orbit_of[z2] != orbit_of[z]:
                continue
            for a in datum.group_elements:
                if datum.act(a, z2) == z:
                    table[(h, g)] = index[normalise(datum.act(a, w), y)]
                    break
    gpd = FiniteGroupoid([repr(r) for r in orbits], keys, dom, cod, table,
                         [f"[{z!r},{y!r}]" for (z, y) in keys])
    base_obj = obj_index[orbit_of[datum.basepoint]]
    return gpd, base_obj


def groupoids_isomorphic_based(g1: FiniteGroupoid, a1: int,
                               g2: FiniteGroupoid, a2: int) -> bool:
    """Connected based groupoids are isomorphic iff their datums match:
    same number of objects and isomorphic vertex groups (checked by a
    brute-force isomorphism search, so only sensible at desk scale)."""
    if len(g1.objects) != len(g2.objects):
        return False
    v1 = g1.hom(a1, a1)
    v2 = g2.hom(a2, a2)
    if len(v1) != len(v2):
        return False
    return _groups_isomorphic(g1, v1, g2, v2)


def _groups_isomorphic(g1, v1, g2, v2):
    if len(v1) != len(v2):
        return False
    if len(v1) > 12:
        # order profile check only, to keep the search bounded
        def profile(g, v):
            orders = []
            for x in v:
                k, y = 1, x
                while not g.is_identity(y):
                    y = g.compose(y, x)
                    k += 1
                orders.append(k)
            return sorted(orders)
        return profile(g1, v1) == profile(g2, v2)
    id1 = next(x for x in v1 if g1.is_identity(x))
    id2 = next(x for x in v2 if g2.is_identity(x))
    rest1 = [x for x in v1 if x != id1]
    for perm in itertools.permutations([x for x in v2 if x != id2]):
        iso = dict(zip(rest1, perm))
        iso[id1] = id2
        if all(iso[g1.compose(x, y)] == g2.compose(iso[x], iso[y])
               for x in v1 for y in v1):
            return True
    return False
