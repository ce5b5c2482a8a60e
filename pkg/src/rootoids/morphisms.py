"""Partially defined adjoints of local embeddings, the adjoint
orthogonality property, and the condition predicates for images of
atomic generators under local embeddings."""

from __future__ import annotations

import itertools

from .groupoid import GroupoidHom
from .order import WeakOrder, preprincipal_check
from .proto import Protorootoid, pullback


class LocalEmbedding:
    """A star-injective homomorphism into the groupoid of a protorootoid,
    carrying the pullback protorootoid on its domain."""

    def __init__(self, pr: Protorootoid, theta: GroupoidHom):
        if theta.cod_gpd is not pr.gpd:
            raise ValueError("homomorphism does not land in the protorootoid")
        if not theta.star_injective():
            raise ValueError("star maps are not injective")
        self.codomain = pr
        self.theta = theta
        self.domain = pullback(pr, theta)
        self._ideal = {}

    def image_star(self, a: int):
        """theta(aH) inside the star at theta(a)."""
        H = self.theta.dom_gpd
        return [self.theta.mor_map[h] for h in H.star(a)]

    def ideal(self, a: int):
        """The order ideal of the codomain star generated by the image."""
        if a not in self._ideal:
            pr = self.codomain
            wo = WeakOrder(pr, self.theta.obj_map[a])
            image = set(self.image_star(a))
            self._ideal[a] = frozenset(
                w for w in wo.elements
                if any(wo.le(w, u) for u in image))
        return self._ideal[a]


def theta_perp(le: LocalEmbedding, a: int, w: int):
    """The minimum domain element u with w <= theta(u), or None when w is
    outside the ideal generated by the image.

    Raises when upper bounds exist but no minimum does (the map then
    fails to be a local embedding adjoint)."""
    pr = le.codomain
    H = le.theta.dom_gpd
    nw = pr.nvals[w]
    candidates = [u for u in H.star(a)
                  if nw <= pr.nvals[le.theta.mor_map[u]]]
    if not candidates:
        return None
    minima = [u for u in candidates
              if all(pr.nvals[le.theta.mor_map[u]] <= pr.nvals[le.theta.mor_map[v]]
                     for v in candidates)]
    if not minima:
        raise ValueError("no minimum over the image: not a local embedding")
    return minima[0]


def aop_check(le: LocalEmbedding):
    """Adjoint orthogonality: disjointness from the image transfers
    through the adjoint.  Returns (verdict, witness)."""
    pr = le.codomain
    H = le.theta.dom_gpd
    for a in range(len(H.objects)):
        ideal = le.ideal(a)
        for wp in H.star(a):
            nwp = pr.nvals[le.theta.mor_map[wp]]
            for w in ideal:
                if nwp & pr.nvals[w]:
                    continue
                u = theta_perp(le, a, w)
                if u is None:
                    continue
                if nwp & pr.nvals[le.theta.mor_map[u]]:
                    return False, {"object": a, "domain_elem": wp,
                                   "ideal_elem": w, "adjoint": u}
    return True, None


def compatible(pr: Protorootoid, x: int, y: int) -> bool:
    """The expression xy is compatible: its cocycle summands are disjoint,
    equivalently |N(xy)| = |N(x)| + |N(y)|."""
    xy = pr.gpd.compose(x, y)
    return len(pr.nvals[xy]) == len(pr.nvals[x]) + len(pr.nvals[y])


def thm133_conditions(pr: Protorootoid, theta: GroupoidHom, R):
    """Evaluate the three order-theoretic conditions for a generating set
    R of the domain against a preprincipal codomain, extract the expected
    atomic generators R', and assert the conclusion on the pullback.

    (i)  each pair (r, w) admits a compatible expression on one side;
    (ii) existing joins of images of distinct generators lie in the image;
    (iii) each codomain atom s below the image has a cover generator
          s^ in R squeezing between s and everything above, and repelled
          by everything disjoint.
    Returns a report dict with flags, R', and the pullback assertions.
    """
    H = theta.dom_gpd
    R = sorted(set(R))
    if not R:
        raise ValueError("R must be a nonempty generating set")
    for r in R:
        if H.is_identity(r):
            raise ValueError("R contains an identity")
        if H.inv(r) not in R:
            raise ValueError("R is not inversion-closed")
    le = LocalEmbedding(pr, theta)
    pulled = le.domain
    th = theta.mor_map

    cond_i = True
    for a in range(len(H.objects)):
        for w in H.star(a):
            for r in R:
                if H.dom[r] != a:
                    continue
                wprime = H.compose(r, w)
                if not (compatible(pr, th[r], th[w])
                        or compatible(pr, th[H.inv(r)], th[wprime])):
                    cond_i = False

    cond_ii = True
    for a in range(len(H.objects)):
        wo = WeakOrder(pr, theta.obj_map[a])
        image = {th[h] for h in H.star(a)}
        for r, s in itertools.combinations([x for x in R if H.cod[x] == a], 2):
            j = wo.join([th[r], th[s]])
            if j is not None and j not in image:
                cond_ii = False

    cond_iii = True
    rprime = set()
    for a in range(len(H.objects)):
        ga = theta.obj_map[a]
        wo = WeakOrder(pr, ga)
        atoms = wo.atoms()
        star_h = H.star(a)
        for s in atoms:
            ns = pr.nvals[s]
            above = [w for w in star_h if ns <= pr.nvals[th[w]]]
            if not above:
                continue
            hats = []
            for rh in R:
                if H.cod[rh] != a:
                    continue
                nrh = pr.nvals[th[rh]]
                ok1 = all(ns <= nrh <= pr.nvals[th[w]] for w in above)
                ok2 = all(not (pr.nvals[th[w]] & nrh)
                          for w in star_h if not (ns & pr.nvals[th[w]]))
                if ok1 and ok2:
                    hats.append(rh)
            if not hats:
                cond_iii = False
            else:
                rprime.update(hats)

    report = {"i": cond_i, "ii": cond_ii, "iii": cond_iii,
              "R_prime": sorted(rprime), "R": R}
    if cond_ii and cond_iii:
        pre, atoms_at, _ = preprincipal_check(pulled)
        report["pullback_preprincipal"] = pre
        atom_ids = sorted({x for at in atoms_at.values() for x in at})
        report["pullback_atoms"] = atom_ids
        report["atoms_are_R_prime"] = atom_ids == sorted(rprime)
    return report
