"""Normalizer groupoids, functor groupoids with the square condition,
evaluation and duality, and the stable-subset lattice of a based rootoid.

A natural transformation between functors H -> G belongs to the square
subgroupoid when each naturality square is a commutative square of the
protorootoid; rigidity pins all of its components once one is chosen, so
components are explored by seeding the basepoint component and completing
squares along a spanning tree of H.
"""

from __future__ import annotations

import itertools
from collections import deque

from .groupoid import FiniteGroupoid, GeneratorSet, GroupoidHom
from .order import WeakOrder
from .proto import Protorootoid, pullback
from .squares import complete_square


# ---------------------------------------------------------------------------
# Normalizer groupoids.


def normalizer_transport(pr: Protorootoid, g: int, X):
    """Transport a subset X of the star at dom(g) across g by squares.

    Returns the image set Y when every x in X admits the commutative
    square with top g (N(x) disjoint from N(g*), and g.N(x) realised by a
    unique star element), else None.
    """
    g_ = pr.gpd
    b = g_.cod[g]
    ngstar = pr.nvals[g_.inv(g)]
    Y = set()
    for x in X:
        if pr.nvals[x] & ngstar:
            return None
        target = pr.dot(g, pr.nvals[x])
        y = pr.nvalue_index(b).get(target)
        if y is None:
            return None
        Y.add(y)
    if len(Y) != len(X):
        return None
    return frozenset(Y)


class NormalizerComponent:
    def __init__(self, pr, objects, gpd, theta, pulled):
        self.base = pr
        self.objects = objects      # list of (object id, frozenset X)
        self.gpd = gpd
        self.theta = theta          # GroupoidHom into pr.gpd
        self.pullback = pulled

    def star_stats(self):
        """Per object: star size, atom count, longest-element length over
        the atomic generators, maximum cocycle size."""
        out = []
        atoms_all = self._atomic_generators()
        dist = self._atom_lengths(atoms_all)
        for a in range(len(self.gpd.objects)):
            wo = WeakOrder(self.pullback, a)
            top = wo.maximum()
            out.append({
                "object": self.objects[a],
                "star_size": len(self.gpd.star(a)),
                "atoms": len(wo.atoms()),
                "longest_length": None if top is None else dist[top],
                "max_cocycle": max(len(wo.nvals[x]) for x in wo.elements),
            })
        return out

    def _atomic_generators(self):
        atoms = []
        for a in range(len(self.gpd.objects)):
            atoms.extend(WeakOrder(self.pullback, a).atoms())
        return atoms

    def _atom_lengths(self, atoms):
        g_ = self.gpd
        dist = {e: 0 for e in g_.identity}
        frontier = list(dist)
        while frontier:
            nxt = []
            for h in frontier:
                for s in atoms:
                    if g_.dom[s] == g_.cod[h]:
                        x = g_.compose(s, h)
                        if x not in dist:
                            dist[x] = dist[h] + 1
                            nxt.append(x)
            frontier = nxt
        return dist


def normalizer_component(pr: Protorootoid, a: int, X) -> NormalizerComponent:
    """Component of the object (a, X) of the normalizer groupoid: objects
    are transported subsets, morphisms are triples (B, g, A)."""
    from .proto import faithful_check
    ok, _ = faithful_check(pr)
    if not ok:
        raise ValueError("the normalizer groupoid needs a faithful protorootoid")
    g_ = pr.gpd
    X = frozenset(X)
    if not all(g_.cod[x] == a for x in X):
        raise ValueError("X must lie inside the star at a")
    start = (a, X)
    obj_list = [start]
    obj_index = {start: 0}
    mors = []
    frontier = [start]
    while frontier:
        nxt = []
        for A in frontier:
            ao, AX = A
            for g in range(g_.n_morphisms()):
                if g_.dom[g] != ao:
                    continue
                Y = normalizer_transport(pr, g, AX)
                if Y is None:
                    continue
                B = (g_.cod[g], Y)
                if B not in obj_index:
                    obj_index[B] = len(obj_list)
                    obj_list.append(B)
                    nxt.append(B)
                mors.append((obj_index[B], g, obj_index[A]))
        frontier = nxt
    keys = sorted(set(mors))
    kidx = {k: i for i, k in enumerate(keys)}
    dom = [k[2] for k in keys]
    cod = [k[0] for k in keys]
    table = {}
    for (c, h, b1) in keys:
        for (b2, g, a1) in keys:
            if b1 == b2:
                table[(kidx[(c, h, b1)], kidx[(b2, g, a1)])] = \
                    kidx[(c, g_.compose(h, g), a1)]
    names = [f"[{g_.name(g)}:{i}<-{j}]" for (i, g, j) in keys]
    gpd = FiniteGroupoid([str(o) for o in obj_list], keys, dom, cod, table, names)
    theta = GroupoidHom(
        gpd, g_,
        {i: obj_list[i][0] for i in range(len(obj_list))},
        {kidx[k]: k[1] for k in keys},
        check=False,
    )
    pulled = pullback(pr, theta)
    return NormalizerComponent(pr, obj_list, gpd, theta, pulled)


# ---------------------------------------------------------------------------
# Presented groupoids H and functors into G.


class PresentedH:
    """Desk-scale presentation: objects, generator arrows, relator words.

    A relator is a tuple of (generator index, exponent +-1) pairs whose
    left-to-right composite must be an identity.  The generator graph must
    be connected.  Functors H -> G are stored by generator images, so H
    itself may be infinite (e.g. a free loop).
    """

    def __init__(self, objects, gens, relators, basepoint=0):
        self.objects = list(objects)
        self.gens = list(gens)              # (name, dom, cod)
        self.relators = [tuple(r) for r in relators]
        self.basepoint = basepoint
        self.tree = self._spanning_tree()

    def _spanning_tree(self):
        reached = {self.basepoint}
        tree = []
        changed = True
        while changed:
            changed = False
            for k, (_, d, c) in enumerate(self.gens):
                if d in reached and c not in reached:
                    reached.add(c)
                    tree.append((k, +1))
                    changed = True
                elif c in reached and d not in reached:
                    reached.add(d)
                    tree.append((k, -1))
                    changed = True
        if len(reached) != len(self.objects):
            raise ValueError("the generator graph is not connected")
        return tree

    @staticmethod
    def free_loop(basepoint_label="c"):
        return PresentedH([basepoint_label], [("h", 0, 0)], [], 0)

    @staticmethod
    def arrow(src_label="c", dst_label="d"):
        """The interval: two objects, one isomorphism, based at the target."""
        return PresentedH([src_label, dst_label], [("h", 0, 1)], [], 1)

    @staticmethod
    def from_groupoid(K: FiniteGroupoid, basepoint=0):
        """All non-identity morphisms as generators, with the composition
        table as relators."""
        gens = []
        gen_of = {}
        for g in range(K.n_morphisms()):
            if not K.is_identity(g):
                gen_of[g] = len(gens)
                gens.append((K.name(g), K.dom[g], K.cod[g]))
        relators = []
        for g in gen_of:
            for h in gen_of:
                if K.dom[g] != K.cod[h]:
                    continue
                gh = K.compose(g, h)
                if K.is_identity(gh):
                    relators.append(((gen_of[g], 1), (gen_of[h], 1)))
                else:
                    relators.append(((gen_of[gh], -1), (gen_of[g], 1),
                                     (gen_of[h], 1)))
        H = PresentedH(list(K.objects), gens, relators, basepoint)
        H.source_groupoid = K
        H.source_gen_of = gen_of
        return H


class FunctorObj:
    """A functor H -> G, stored by object and generator images."""

    def __init__(self, obj_images, gen_images):
        self.obj_images = tuple(obj_images)
        self.gen_images = tuple(gen_images)

    def key(self):
        return (self.obj_images, self.gen_images)

    def __eq__(self, other):
        return isinstance(other, FunctorObj) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def functor_valid(G: FiniteGroupoid, H: PresentedH, F: FunctorObj):
    for k, (_, d, c) in enumerate(H.gens):
        g = F.gen_images[k]
        if G.dom[g] != F.obj_images[d] or G.cod[g] != F.obj_images[c]:
            return False
    for rel in H.relators:
        prod = None
        for (k, e) in rel:
            g = F.gen_images[k] if e > 0 else G.inv(F.gen_images[k])
            prod = g if prod is None else G.compose(prod, g)
        if prod is not None and not G.is_identity(prod):
            return False
    return True


class SquareComponent:
    """A component of the square subgroupoid of G^H, with the evaluation
    homomorphism at the basepoint and its pullback protorootoid."""

    def __init__(self, pr, H, objects, gpd, rho, pulled):
        self.base = pr
        self.H = H
        self.objects = objects        # list of FunctorObj; index 0 = seed
        self.gpd = gpd
        self.rho = rho                # GroupoidHom into pr.gpd
        self.pullback = pulled

    def vertex_values(self):
        """Basepoint components of the automorphisms of the seed."""
        seed_loops = self.gpd.hom(0, 0)
        return frozenset(self.rho.mor_map[n] for n in seed_loops)

    def star_values(self):
        """Basepoint components of the morphisms into the seed."""
        return frozenset(self.rho.mor_map[n] for n in self.gpd.star(0))


def _propagate(pr, H, F, t):
    """Components of the candidate transformation with basepoint part t,
    plus the target functor, or None when some square fails.

    Walks the spanning tree completing squares; then verifies the square
    condition on every generator.
    """
    G = pr.gpd
    b = H.basepoint
    nu = {b: t}
    gen_img = {}
    for (k, direction) in H.tree:
        name, d, c = H.gens[k]
        Fh = F.gen_images[k]
        if direction > 0:
            # know nu at dom: complete (F(h), nu_d*, ?, ?) to get nu_c
            got = complete_square(pr, Fh, G.inv(nu[d]))
            if got is None:
                return None
            v, y = got
            nu[c] = y
            gen_img[k] = G.inv(v)
        else:
            # know nu at cod: complete (nu_c, F(h), ?, ?) to get nu_d
            got = complete_square(pr, nu[c], Fh)
            if got is None:
                return None
            v, y = got
            nu[d] = G.inv(v)
            gen_img[k] = G.inv(y)
    for k, (_, d, c) in enumerate(H.gens):
        Fh = F.gen_images[k]
        img = G.compose(nu[c], G.compose(Fh, G.inv(nu[d])))
        gen_img[k] = img
        if pr.nvals[Fh] & pr.nvals[G.inv(nu[c])]:
            return None
        if pr.dot(nu[c], pr.nvals[Fh]) != pr.nvals[img]:
            return None
    obj_images = tuple(G.cod[nu[d]] for d in range(len(H.objects)))
    comps = tuple(nu[d] for d in range(len(H.objects)))
    return comps, FunctorObj(obj_images, tuple(gen_img[k]
                                               for k in range(len(H.gens))))


def square_component(pr: Protorootoid, H: PresentedH, F: FunctorObj,
                     check_seed=True) -> SquareComponent:
    G = pr.gpd
    if check_seed and not functor_valid(G, H, F):
        raise ValueError("the seed is not a functor (relator violation)")
    b = H.basepoint
    objects = [F]
    obj_index = {F: 0}
    mors = []
    frontier = [F]
    while frontier:
        nxt = []
        for src in frontier:
            for t in range(G.n_morphisms()):
                if G.dom[t] != src.obj_images[b]:
                    continue
                got = _propagate(pr, H, src, t)
                if got is None:
                    continue
                comps, tgt = got
                if tgt not in obj_index:
                    obj_index[tgt] = len(objects)
                    objects.append(tgt)
                    nxt.append(tgt)
                mors.append((obj_index[tgt], comps, obj_index[src]))
        frontier = nxt
    keys = sorted(set(mors))
    kidx = {k: i for i, k in enumerate(keys)}
    table = {}
    for (c, mu, b1) in keys:
        for (b2, nu, a1) in keys:
            if b1 == b2:
                comp = tuple(G.compose(mu[i], nu[i]) for i in range(len(mu)))
                table[(kidx[(c, mu, b1)], kidx[(b2, nu, a1)])] = \
                    kidx[(c, comp, a1)]
    gpd = FiniteGroupoid(
        [f"F{i}" for i in range(len(objects))],
        keys,
        [k[2] for k in keys],
        [k[0] for k in keys],
        table,
        [f"nu{t}[{i}<-{j}]" for t, (i, _, j) in enumerate(keys)],
    )
    rho = GroupoidHom(
        gpd, G,
        {i: objects[i].obj_images[b] for i in range(len(objects))},
        {kidx[k]: k[1][b] for k in keys},
        check=False,
    )
    if not rho.star_injective():
        raise AssertionError("evaluation is not star-injective")
    pulled = pullback(pr, rho)
    return SquareComponent(pr, H, objects, gpd, rho, pulled)


def dual(pr: Protorootoid, H: PresentedH, F: FunctorObj,
         check_seed=True) -> SquareComponent:
    """e(F): the component of F in the square subgroupoid, based at F,
    with the evaluation morphism to the base."""
    return square_component(pr, H, F, check_seed=check_seed)


def double_dual(pr: Protorootoid, comp: SquareComponent) -> SquareComponent:
    """e(e(F)): functors out of the component groupoid, seeded by the
    evaluation functor."""
    K = comp.gpd
    H2 = PresentedH.from_groupoid(K, basepoint=0)
    gen_list = sorted(H2.source_gen_of, key=lambda g: H2.source_gen_of[g])
    gen_images = tuple(comp.rho.mor_map[g] for g in gen_list)
    obj_images = tuple(comp.rho.obj_map[i] for i in range(len(K.objects)))
    seed = FunctorObj(obj_images, gen_images)
    return square_component(pr, H2, seed, check_seed=False)


# ---------------------------------------------------------------------------
# chi and the stable-subset family.


def chi(pr: Protorootoid, H: PresentedH, F: FunctorObj):
    """chi(F) = image of the vertex-group map + image of the star map of
    the based-groupoid datum of F, inside aG_a and aG for a = F(b).

    Works from the presentation: fundamental loops generate the vertex
    image and tree translates sweep out the star image.
    """
    G = pr.gpd
    b = H.basepoint
    a = F.obj_images[b]
    q = {b: G.identity[a]}
    for (k, direction) in H.tree:
        _, d, c = H.gens[k]
        if direction > 0:
            q[c] = G.compose(F.gen_images[k], q[d])
        else:
            q[d] = G.compose(G.inv(F.gen_images[k]), q[c])
    lam = []
    for k, (_, d, c) in enumerate(H.gens):
        lam.append(G.compose(G.inv(q[c]), G.compose(F.gen_images[k], q[d])))
    vertex = {G.identity[a]}
    frontier = list(vertex)
    while frontier:
        nxt = []
        for x in frontier:
            for g in lam + [G.inv(l) for l in lam]:
                y = G.compose(g, x)
                if y not in vertex:
                    vertex.add(y)
                    nxt.append(y)
        frontier = nxt
    star = set()
    for c in range(len(H.objects)):
        qc_star = G.inv(q[c])
        for alpha in vertex:
            star.add(G.compose(alpha, qc_star))
    return frozenset(vertex), frozenset(star)


class StableFamily:
    """Intersection-closed family of subsets of aG_a + aG containing the
    top, produced from the duals of the singleton datums."""

    def __init__(self, ground_vertex, ground_star, members):
        self.ground_vertex = frozenset(ground_vertex)
        self.ground_star = frozenset(ground_star)
        self.members = set(members)

    def __len__(self):
        return len(self.members)

    def check_closed(self):
        for (v1, s1), (v2, s2) in itertools.combinations(self.members, 2):
            if (v1 & v2, s1 & s2) not in self.members:
                return False
        return (self.ground_vertex, self.ground_star) in self.members


def stable_sets(pr: Protorootoid, a: int) -> StableFamily:
    """The stable-subset family at a, generated by chi of the duals of
    loop datums (one per vertex-group element) and arrow datums (one per
    star element), closed under intersection, together with the top."""
    G = pr.gpd
    seeds = {}
    loopH = PresentedH.free_loop()
    for x in G.hom(a, a):
        F = FunctorObj((a,), (x,))
        comp = square_component(pr, loopH, F)
        seeds[("loop", x)] = (comp.vertex_values(), comp.star_values())
    arrowH = PresentedH.arrow()
    for x in G.star(a):
        F = FunctorObj((G.dom[x], a), (x,))
        comp = square_component(pr, arrowH, F)
        seeds[("arrow", x)] = (comp.vertex_values(), comp.star_values())
    top = (frozenset(G.hom(a, a)), frozenset(G.star(a)))
    family = set(seeds.values())
    family.add(top)
    changed = True
    while changed:
        changed = False
        for p, q in itertools.combinations(list(family), 2):
            r = (p[0] & q[0], p[1] & q[1])
            if r not in family:
                family.add(r)
                changed = True
    return StableFamily(top[0], top[1], family)
