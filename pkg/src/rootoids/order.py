"""Weak orders, meets/joins, the join orthogonality property, and the
verdict hierarchy on protorootoids.

The weak order on a star is containment of cocycle values, N(x) <= N(y);
for weak-exchange systems this reproduces the length-additivity order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .proto import Protorootoid, faithful_check, wec_check

JOP_EXHAUSTIVE_STAR_BOUND = 20


class WeakOrder:
    """Containment order N(x) <= N(y) on the star at one object."""

    def __init__(self, pr: Protorootoid, a: int):
        self.pr = pr
        self.object = a
        self.elements = list(pr.gpd.star(a))
        self.nvals = {g: pr.nvals[g] for g in self.elements}
        self.is_partial = len({self.nvals[g] for g in self.elements}) == len(
            self.elements
        )
        self._le = {
            (x, y): self.nvals[x] <= self.nvals[y]
            for x in self.elements for y in self.elements
        }

    def le(self, x, y) -> bool:
        return self._le[(x, y)]

    def minimum(self):
        return self.pr.gpd.identity[self.object]

    def meet(self, subset):
        """Maximum lower bound of a nonempty subset, or None."""
        subset = list(subset)
        if not subset:
            raise ValueError("meet of the empty set is not defined here")
        lower = [z for z in self.elements
                 if all(self.le(z, x) for x in subset)]
        maxima = [z for z in lower
                  if all(self.le(w, z) for w in lower)]
        return maxima[0] if len(maxima) == 1 else None

    def join(self, subset):
        """Minimum upper bound of a nonempty subset, or None."""
        subset = list(subset)
        if not subset:
            raise ValueError("join of the empty set is not defined here")
        upper = [z for z in self.elements
                 if all(self.le(x, z) for x in subset)]
        minima = [z for z in upper
                  if all(self.le(z, w) for w in upper)]
        return minima[0] if len(minima) == 1 else None

    def atoms(self):
        """Minimal non-identity elements."""
        one = self.minimum()
        rest = [x for x in self.elements if x != one and self.nvals[x]]
        return [x for x in rest
                if not any(self.nvals[y] < self.nvals[x] for y in rest)]

    def maximum(self):
        tops = [x for x in self.elements
                if all(self.le(y, x) for y in self.elements)]
        return tops[0] if len(tops) == 1 else None

    def is_meet_semilattice(self) -> bool:
        """Every nonempty subset has a meet; for finite orders it is enough
        to check pairs, given the minimum element."""
        if not all(self.le(self.minimum(), x) for x in self.elements):
            return False
        return all(
            self.meet([x, y]) is not None
            for x, y in itertools.combinations(self.elements, 2)
        )

    def covers(self):
        """Covering pairs (x, y): x < y with nothing in between."""
        out = []
        for x in self.elements:
            for y in self.elements:
                if x == y or not self.le(x, y):
                    continue
                if any(z != x and z != y and self.le(x, z) and self.le(z, y)
                       for z in self.elements):
                    continue
                out.append((x, y))
        return out


def weak_order(pr: Protorootoid, a: int) -> WeakOrder:
    return WeakOrder(pr, a)


def jop_check(pr: Protorootoid, a: int, exhaustive_bound=None):
    """Join orthogonality at one object.

    True iff whenever a subset has a join j, anything disjoint from every
    member is disjoint from N(j).  Searched over all subsets when the star
    is small, else over atom-generated families (verdict tagged "bounded").
    """
    if exhaustive_bound is None:
        exhaustive_bound = JOP_EXHAUSTIVE_STAR_BOUND
    wo = WeakOrder(pr, a)
    star = wo.elements
    bounded = len(star) > exhaustive_bound
    if bounded:
        atoms = wo.atoms()
        families = [list(c) for r in (1, 2, 3)
                    for c in itertools.combinations(atoms, r)]
        families += [[x, y] for x, y in itertools.combinations(star, 2)]
    else:
        families = [list(c) for r in range(1, len(star) + 1)
                    for c in itertools.combinations(star, r)]
    for fam in families:
        j = wo.join(fam)
        if j is None:
            continue
        nj = wo.nvals[j]
        for x in star:
            nx = wo.nvals[x]
            if any(nx & wo.nvals[m] for m in fam):
                continue
            if nx & nj:
                return False, {"object": a, "witness": x, "family": fam,
                               "join": j, "bounded": bounded}
    return True, {"bounded": bounded}


@dataclass
class VerdictReport:
    faithful: bool = False
    wec: bool = None
    meet_semilattice: bool = False
    jop: bool = False
    rootoid: bool = False
    complete: bool = False
    preprincipal: bool = None
    interval_finite: bool = True
    even: bool = None
    principal_via_correspondence: bool = None
    n_complete: dict = field(default_factory=dict)
    five_halves: bool = None
    witnesses: dict = field(default_factory=dict)

    def to_json(self):
        out = {}
        for k in ("faithful", "wec", "meet_semilattice", "jop", "rootoid",
                  "complete", "preprincipal", "interval_finite", "even",
                  "principal_via_correspondence", "five_halves"):
            out[k] = getattr(self, k)
        out["n_complete"] = {str(k): v for k, v in sorted(self.n_complete.items())}
        out["witnesses"] = {k: str(v) for k, v in sorted(self.witnesses.items())}
        return out


def rootoid_check(pr: Protorootoid) -> VerdictReport:
    """The verdict ladder: faithful, meet semilattices, JOP, completeness.

    rootoid := faithful and every weak order is a complete meet
    semilattice and JOP holds at every object; complete := every weak
    order has a maximum.
    """
    rep = VerdictReport()
    ok, wit = faithful_check(pr)
    rep.faithful = ok
    if not ok:
        rep.witnesses["faithful"] = pr.gpd.name(wit)
    rep.meet_semilattice = True
    rep.jop = True
    rep.complete = True
    for a in range(len(pr.gpd.objects)):
        wo = WeakOrder(pr, a)
        if not wo.is_meet_semilattice():
            rep.meet_semilattice = False
            rep.witnesses.setdefault("meet_semilattice", pr.gpd.objects[a])
        jok, jwit = jop_check(pr, a)
        if not jok:
            rep.jop = False
            rep.witnesses.setdefault(
                "jop",
                f"object {pr.gpd.objects[a]}: {pr.gpd.name(jwit['witness'])} meets "
                f"join of {[pr.gpd.name(x) for x in jwit['family']]}",
            )
        if wo.maximum() is None:
            rep.complete = False
            rep.witnesses.setdefault("complete", pr.gpd.objects[a])
    rep.rootoid = rep.faithful and rep.meet_semilattice and rep.jop
    return rep


def preprincipal_check(pr: Protorootoid):
    """Atom dichotomy: every atom's value is contained in or disjoint from
    every value on its star.  Returns (verdict, atoms per object, witness)."""
    rep = rootoid_check(pr)
    if not rep.rootoid:
        raise ValueError("preprincipal_check needs a rootoid")
    atoms_at = {}
    for a in range(len(pr.gpd.objects)):
        wo = WeakOrder(pr, a)
        atoms = wo.atoms()
        atoms_at[a] = atoms
        for r in atoms:
            nr = wo.nvals[r]
            for w in wo.elements:
                nw = wo.nvals[w]
                if not (nr <= nw or not (nr & nw)):
                    return False, atoms_at, (a, r, w)
    return True, atoms_at, None


def n_complete_check(pr: Protorootoid, n: int):
    """Every subset of at most n atoms at each object has a join."""
    if n <= 1:
        return True
    for a in range(len(pr.gpd.objects)):
        wo = WeakOrder(pr, a)
        atoms = wo.atoms()
        for r in range(2, min(n, len(atoms)) + 1):
            for combo in itertools.combinations(atoms, r):
                if wo.join(list(combo)) is None:
                    return False
    return True


def parabolic_check(pr: Protorootoid, sub_objects, sub_morphisms):
    """Standard-parabolic test: each star of the subgroupoid must be a
    join-closed order ideal of the ambient star in weak order."""
    subm = set(sub_morphisms)
    for a in sub_objects:
        wo = WeakOrder(pr, a)
        inside = [g for g in wo.elements if g in subm]
        for h in inside:
            for g in wo.elements:
                if wo.le(g, h) and g not in subm:
                    return False, ("ideal", a, g, h)
        for r in range(2, len(inside) + 1):
            for combo in itertools.combinations(inside, r):
                j = wo.join(list(combo))
                if j is not None and j not in subm:
                    return False, ("join", a, combo, j)
    return True, None


def hasse_dot(wo: WeakOrder, title="weak_order") -> str:
    """Covering relation as deterministic DOT text."""
    gpd = wo.pr.gpd
    order = sorted(wo.elements, key=lambda g: (len(wo.nvals[g]), gpd.name(g)))
    lines = [f'digraph "{title}" {{', "  rankdir=BT;"]
    for g in order:
        lines.append(f'  "{gpd.name(g)}";')
    covers = sorted(
        wo.covers(),
        key=lambda p: (gpd.name(p[0]), gpd.name(p[1])),
    )
    for x, y in covers:
        lines.append(f'  "{gpd.name(x)}" -> "{gpd.name(y)}";')
    lines.append("}")
    return "\n".join(lines)


def order_isomorphic(wo1: WeakOrder, wo2: WeakOrder) -> bool:
    """Brute-force order isomorphism for desk-scale stars, pruned by the
    (down-set size, up-set size) invariant."""
    e1, e2 = wo1.elements, wo2.elements
    if len(e1) != len(e2):
        return False

    def profile(wo, x):
        down = sum(wo.le(y, x) for y in wo.elements)
        up = sum(wo.le(x, y) for y in wo.elements)
        return (down, up)

    p1 = {x: profile(wo1, x) for x in e1}
    p2 = {x: profile(wo2, x) for x in e2}
    if sorted(p1.values()) != sorted(p2.values()):
        return False

    def extend(assign, rest):
        if not rest:
            return True
        x = rest[0]
        for y in e2:
            if y in assign.values() or p1[x] != p2[y]:
                continue
            if all(wo1.le(x, u) == wo2.le(y, v)
                   and wo1.le(u, x) == wo2.le(v, y)
                   for u, v in assign.items()):
                assign[x] = y
                if extend(assign, rest[1:]):
                    return True
                del assign[x]
        return False

    return extend({}, list(e1))


def covers_shape(wo: WeakOrder):
    """Canonical-ish shape of the Hasse diagram: sorted degree data by rank."""
    ranks = {x: len(wo.nvals[x]) for x in wo.elements}
    cov = wo.covers()
    up = {x: 0 for x in wo.elements}
    down = {x: 0 for x in wo.elements}
    for x, y in cov:
        up[x] += 1
        down[y] += 1
    return sorted((ranks[x], down[x], up[x]) for x in wo.elements)
