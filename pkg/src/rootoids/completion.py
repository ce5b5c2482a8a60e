"""Galois gluing, join-closed-ideal completion, and the embedding of weak
orders as order ideals of ortholattices."""

from __future__ import annotations

import itertools

from .boolring import SizeGateError
from .order import WeakOrder, jop_check

IDEAL_ENUMERATION_BOUND = 18


class FinitePoset:
    def __init__(self, elements, le):
        """``le`` is either a callable or a set of ordered pairs."""
        self.elements = list(elements)
        if callable(le):
            self._le = {(x, y): bool(le(x, y))
                        for x in self.elements for y in self.elements}
        else:
            pairs = set(le)
            self._le = {(x, y): (x, y) in pairs or x == y
                        for x in self.elements for y in self.elements}
        self.validate()

    def validate(self):
        for x in self.elements:
            if not self.le(x, x):
                raise ValueError("order is not reflexive")
        for x in self.elements:
            for y in self.elements:
                if x != y and self.le(x, y) and self.le(y, x):
                    raise ValueError("order is not antisymmetric")
                for z in self.elements:
                    if self.le(x, y) and self.le(y, z) and not self.le(x, z):
                        raise ValueError("order is not transitive")

    def le(self, x, y):
        return self._le[(x, y)]

    def meet(self, xs):
        xs = list(xs)
        lower = [z for z in self.elements if all(self.le(z, x) for x in xs)]
        maxima = [z for z in lower if all(self.le(w, z) for w in lower)]
        return maxima[0] if len(maxima) == 1 else None

    def join(self, xs):
        xs = list(xs)
        upper = [z for z in self.elements if all(self.le(x, z) for x in xs)]
        minima = [z for z in upper if all(self.le(z, w) for w in upper)]
        return minima[0] if len(minima) == 1 else None

    def minimum(self):
        mins = [z for z in self.elements
                if all(self.le(z, x) for x in self.elements)]
        return mins[0] if len(mins) == 1 else None

    def maximum(self):
        tops = [z for z in self.elements
                if all(self.le(x, z) for x in self.elements)]
        return tops[0] if len(tops) == 1 else None

    def is_lattice(self):
        return all(
            self.meet([x, y]) is not None and self.join([x, y]) is not None
            for x, y in itertools.combinations(self.elements, 2)
        ) and self.minimum() is not None and self.maximum() is not None


class GaloisConnection:
    """Order-reversing alpha, beta with y <= alpha(x) iff x <= beta(y)."""

    def __init__(self, X: FinitePoset, Y: FinitePoset, alpha, beta):
        self.X = X
        self.Y = Y
        self.alpha = dict(alpha) if not callable(alpha) else {
            x: alpha(x) for x in X.elements}
        self.beta = dict(beta) if not callable(beta) else {
            y: beta(y) for y in Y.elements}
        self.validate()

    def validate(self):
        for x in self.X.elements:
            for y in self.Y.elements:
                if self.Y.le(y, self.alpha[x]) != self.X.le(x, self.beta[y]):
                    raise ValueError("the Galois adjunction axiom fails")

    def facts(self):
        """The standard package: antitone maps, unit inequality,
        idempotence, stable elements as images, join-to-meet, and the
        stable-part bijection.  Returns a dict of booleans."""
        X, Y, a, b = self.X, self.Y, self.alpha, self.beta
        out = {}
        out["antitone"] = all(
            (not X.le(x, xp)) or Y.le(a[xp], a[x])
            for x in X.elements for xp in X.elements)
        out["unit"] = all(X.le(x, b[a[x]]) for x in X.elements)
        out["idempotent"] = all(a[b[a[x]]] == a[x] for x in X.elements)
        stable_x = {x for x in X.elements if b[a[x]] == x}
        out["stable_are_images"] = stable_x == {b[y] for y in Y.elements}
        # binary joins suffice: finite joins are iterated binary joins
        ok = True
        for xs in itertools.combinations(X.elements, 2):
            j = X.join(xs)
            if j is None:
                continue
            m = Y.meet([a[x] for x in xs])
            if m is None or a[j] != m:
                ok = False
        out["join_to_meet"] = ok
        stable_y = {y for y in Y.elements if a[b[y]] == y}
        out["stable_bijection"] = (
            {a[x] for x in stable_x} == stable_y
            and {b[y] for y in stable_y} == stable_x)
        return out


class OrthoLattice:
    """Bounded lattice with an order-reversing complement involution."""

    def __init__(self, poset: FinitePoset, complement: dict):
        self.poset = poset
        self.complement = dict(complement)

    def check_axioms(self):
        P, c = self.poset, self.complement
        if not P.is_lattice():
            return False, "not a lattice"
        top, bot = P.maximum(), P.minimum()
        for z in P.elements:
            if c[c[z]] != z:
                return False, ("involution", z)
            if P.join([z, c[z]]) != top:
                return False, ("join", z)
            if P.meet([z, c[z]]) != bot:
                return False, ("meet", z)
        for x in P.elements:
            for y in P.elements:
                if P.le(x, y) and not P.le(c[y], c[x]):
                    return False, ("antitone", x, y)
        return True, None


def galois_glue(gc: GaloisConnection):
    """Glue X and Y along the connection into one lattice V.

    V = i0(X) + i1(Y) with i0 an order embedding, i1 a reversed
    embedding, i0(x) <= i1(y) iff y <= alpha(x), and never i1 <= i0.
    When X = Y and alpha = beta with x meet alpha(x) = 0, swapping the two
    copies is an orthocomplementation.
    """
    X, Y = gc.X, gc.Y
    elements = [("0", x) for x in X.elements] + [("1", y) for y in Y.elements]

    def le(u, v):
        (su, xu), (sv, xv) = u, v
        if su == "0" and sv == "0":
            return X.le(xu, xv)
        if su == "1" and sv == "1":
            return Y.le(xv, xu)
        if su == "1" and sv == "0":
            return False
        return Y.le(xv, gc.alpha[xu])

    V = FinitePoset(elements, le)
    if not V.is_lattice():
        raise AssertionError("the glued poset is not a lattice")
    # the explicit join rule i0(x) v i1(y) = i1(alpha(x) ^ y)
    for x in X.elements:
        for y in Y.elements:
            j = V.join([("0", x), ("1", y)])
            if j != ("1", Y.meet([gc.alpha[x], y])):
                raise AssertionError("the cross-join rule fails")
    ortho = None
    if (X.elements == Y.elements and gc.alpha == gc.beta
            and all(X.meet([x, gc.alpha[x]]) == X.minimum()
                    for x in X.elements)):
        comp = {("0", x): ("1", x) for x in X.elements}
        comp.update({("1", x): ("0", x) for x in X.elements})
        ortho = OrthoLattice(V, comp)
        ok, why = ortho.check_axioms()
        if not ok:
            raise AssertionError(f"orthocomplement axioms fail: {why}")
    return V, ortho


def ideal_completion(L: FinitePoset, bound=None):
    """L' = nonempty join-closed order ideals of L by inclusion, with the
    principal-ideal embedding (an isomorphism onto an order ideal)."""
    if bound is None:
        bound = IDEAL_ENUMERATION_BOUND
    if L.minimum() is None:
        raise ValueError("the semilattice needs a minimum")
    if len(L.elements) > bound:
        raise SizeGateError(
            f"{len(L.elements)} elements exceed the ideal enumeration bound")
    # in a finite meet semilattice a bounded subset has a join, so
    # closure under binary joins already gives closure under all joins
    ideals = []
    elems = list(L.elements)
    for r in range(1, len(elems) + 1):
        for combo in itertools.combinations(elems, r):
            s = set(combo)
            if any(L.le(y, x) and y not in s for x in s for y in elems):
                continue
            ok = True
            for x, y in itertools.combinations(combo, 2):
                j = L.join([x, y])
                if j is not None and j not in s:
                    ok = False
                    break
            if ok:
                ideals.append(frozenset(s))
    Lp = FinitePoset(ideals, lambda p, q: p <= q)

    def embed(y):
        return frozenset(x for x in elems if L.le(x, y))

    for y in elems:
        if embed(y) not in set(ideals):
            raise AssertionError("principal ideals must be join-closed ideals")
    return Lp, embed


def is_order_ideal_image(L: FinitePoset, Lp: FinitePoset, embed) -> bool:
    image = {embed(y) for y in L.elements}
    for z in image:
        for w in Lp.elements:
            if Lp.le(w, z) and w not in image:
                return False
    # the embedding preserves and reflects order
    for x in L.elements:
        for y in L.elements:
            if L.le(x, y) != Lp.le(embed(x), embed(y)):
                return False
    return True


def check_orthogonality_relation(L: FinitePoset, P):
    """The three axioms: symmetry; each slice a nonempty join-closed order
    ideal; only the minimum is self-orthogonal.  Returns (ok, witness)."""
    pairs = set(P)
    for (x, y) in pairs:
        if (y, x) not in pairs:
            return False, ("symmetry", x, y)
    bottom = L.minimum()
    for x in L.elements:
        slice_x = [y for y in L.elements if (x, y) in pairs]
        if not slice_x:
            return False, ("empty-slice", x)
        sset = set(slice_x)
        for y in slice_x:
            for z in L.elements:
                if L.le(z, y) and z not in sset:
                    return False, ("ideal", x, y, z)
        for combo in itertools.combinations(slice_x, 2):
            j = L.join(combo)
            if j is not None and j not in sset:
                return False, ("join-closed", x, combo)
    for a in L.elements:
        if (a, a) in pairs and a != bottom:
            return False, ("self-orthogonal", a)
    return True, None


def ortho_embed(L: FinitePoset, P):
    """Embed a meet semilattice with an orthogonality relation as an order
    ideal of an ortholattice: complete to join-closed ideals, restrict the
    double-perp Galois map, and glue."""
    ok, wit = check_orthogonality_relation(L, P)
    if not ok:
        raise ValueError(f"orthogonality axioms fail: {wit}")
    pairs = set(P)
    Lp, embed = ideal_completion(L)

    def theta(ideal):
        return frozenset(
            b for b in L.elements
            if all((a, b) in pairs for a in ideal))

    theta_map = {z: theta(z) for z in Lp.elements}
    for z, tz in theta_map.items():
        if tz not in set(Lp.elements):
            raise AssertionError("perp of an ideal must be an ideal")
    gc = GaloisConnection(Lp, Lp, theta_map, theta_map)
    bottom = Lp.minimum()
    for z in Lp.elements:
        if Lp.meet([z, theta_map[z]]) != bottom:
            raise AssertionError("z meet perp(z) must vanish")
    V, ortho = galois_glue(gc)
    if ortho is None:
        raise AssertionError("gluing did not produce an ortholattice")

    def full_embed(y):
        return ("0", embed(y))

    return ortho, full_embed


def rootoid_ortho_embed(pr, a: int):
    """Cor-of-theorem pipeline on one weak order: orthogonality is
    disjointness of cocycle values; join-closure of the slices is the JOP.
    Returns (ortholattice, embedding, report)."""
    wo = WeakOrder(pr, a)
    values = sorted({wo.nvals[x] for x in wo.elements}, key=sorted)
    L = FinitePoset(values, lambda p, q: p <= q)
    P = [(p, q) for p in values for q in values if not (p & q)]
    jok, _ = jop_check(pr, a)
    ortho, embed = ortho_embed(L, P)
    ok, why = ortho.check_axioms()
    image_ok = _embedded_ideal_ok(L, ortho, embed)
    report = {"jop": jok, "ortholattice": ok,
              "order_ideal_embedding": image_ok,
              "lattice_size": len(ortho.poset.elements)}
    return ortho, embed, report


def _embedded_ideal_ok(L, ortho, embed):
    P = ortho.poset
    image = {embed(y) for y in L.elements}
    for z in image:
        for w in P.elements:
            if P.le(w, z) and w not in image:
                return False
    for x in L.elements:
        for y in L.elements:
            if L.le(x, y) != P.le(embed(x), embed(y)):
                return False
    return True
