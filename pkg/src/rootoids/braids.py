"""Braid presentations of even weak-exchange systems and the word
algorithm they support.

The braid data of a system consists of one Coxeter matrix per object
(entries are lengths of joins of pairs of simple generators), the braid
relations (the two reduced expressions of each such join), and the
partially defined maps pi_r that chain relations together.
"""

from __future__ import annotations

import itertools
from collections import deque

from .boolring import SizeGateError
from .order import WeakOrder
from .proto import Protorootoid

BRAID_CLASS_CAP = 10 ** 5


class BraidRelation:
    """a[r1..rn]b = a[s1..sn]b, stored with both endpoint objects."""

    def __init__(self, obj_a, obj_b, left, right):
        self.obj_a = obj_a
        self.obj_b = obj_b
        self.left = tuple(left)
        self.right = tuple(right)

    def sides(self):
        return frozenset((self.left, self.right))

    def __repr__(self):
        return f"BraidRelation({self.left} = {self.right})"


class BraidData:
    def __init__(self, pr: Protorootoid, matrices, relations, pi):
        self.pr = pr
        self.matrices = matrices      # (a, r, s) -> finite m, missing = infinity
        self.relations = relations    # list of BraidRelation
        self.pi = pi                  # r -> {t: s}

    def entry(self, a, r, s):
        return self.matrices.get((a, r, s))

    def is_two_complete(self) -> bool:
        sys = self.pr.system
        g_ = self.pr.gpd
        for a in range(len(g_.objects)):
            for r, s in itertools.combinations(sys.S.at(a), 2):
                if (a, r, s) not in self.matrices:
                    return False
        return True

    def to_json(self):
        g_ = self.pr.gpd
        return {
            "generators": [g_.name(s) for s in sorted(self.pr.system.S.gens)],
            "trivial_relations": [
                f"{g_.name(s)}^-1 = {g_.name(g_.inv(s))}"
                for s in sorted(self.pr.system.S.gens)],
            "matrices": {
                f"{g_.objects[a]}|{g_.name(r)},{g_.name(s)}": m
                for (a, r, s), m in sorted(
                    self.matrices.items(),
                    key=lambda kv: (str(kv[0][0]), g_.name(kv[0][1]),
                                    g_.name(kv[0][2])))},
            "relations": sorted(
                " ".join(g_.name(x) for x in rel.left)
                + " = " + " ".join(g_.name(x) for x in rel.right)
                for rel in self.relations),
            "pi": {
                g_.name(r): {g_.name(t): g_.name(s) for t, s in sorted(m.items())}
                for r, m in sorted(self.pi.items())},
        }


def reduced_words(pr: Protorootoid, g: int):
    """All reduced expressions of g over the system generators, as tuples
    read left to right (first letter has the codomain of g)."""
    sys = pr.system
    gpd = pr.gpd
    l = sys.length

    def rec(x):
        if gpd.is_identity(x):
            return [()]
        out = []
        for s in sys.S.at(gpd.cod[x]):
            rest = gpd.compose(gpd.inv(s), x)
            if l[rest] == l[x] - 1:
                out.extend((s,) + w for w in rec(rest))
        return out

    return rec(g)


def braid_data(pr: Protorootoid) -> BraidData:
    """Extract matrices, relations and pi maps from an even weak-exchange
    system's protorootoid.  A join with other than exactly two reduced
    expressions contradicts the verdicts and raises."""
    sys = getattr(pr, "system", None)
    if sys is None:
        raise ValueError("braid_data needs a protorootoid built from a system")
    g_ = pr.gpd
    l = sys.length
    matrices = {}
    relations = []
    pi = {}
    for s in sys.S.gens:
        pi.setdefault(s, {})[g_.inv(s)] = s
    for a in range(len(g_.objects)):
        sa = sys.S.at(a)
        for r in sa:
            matrices[(a, r, r)] = 1
        wo = WeakOrder(pr, a)
        for r, s in itertools.combinations(sa, 2):
            j = wo.join([r, s])
            if j is None:
                continue
            m = l[j]
            matrices[(a, r, s)] = m
            matrices[(a, s, r)] = m
            words = reduced_words(pr, j)
            if len(words) != 2:
                raise AssertionError(
                    f"join of {g_.name(r)}, {g_.name(s)} has {len(words)} "
                    "reduced expressions, not two")
            w1, w2 = words
            if w1[0] == s:
                w1, w2 = w2, w1
            if w1[0] != r or w2[0] != s:
                raise AssertionError("reduced expressions do not start with r, s")
            relations.append(BraidRelation(a, g_.dom[j], w1, w2))
            if len(w1) > 1:
                pi.setdefault(r, {})[w1[1]] = s
                pi.setdefault(s, {})[w2[1]] = r
    return BraidData(pr, matrices, relations, pi)


def braid_shift_check(bd: BraidData):
    """Inverses and cyclic shifts of relations are again relations, and the
    endpoint Coxeter entries agree (the shift-invariance package)."""
    g_ = bd.pr.gpd
    all_sides = {rel.sides() for rel in bd.relations}

    def is_relation(w1, w2):
        return frozenset((tuple(w1), tuple(w2))) in all_sides

    for rel in bd.relations:
        rs, ss = rel.left, rel.right
        n = len(rs)
        inv_l = tuple(g_.inv(x) for x in reversed(rs))
        inv_r = tuple(g_.inv(x) for x in reversed(ss))
        if not is_relation(inv_l, inv_r):
            return False, ("inverse", rel)
        shift_l = (g_.inv(ss[0]),) + rs[:-1]
        shift_r = ss[1:] + (g_.inv(rs[-1]),)
        if not is_relation(shift_l, shift_r):
            return False, ("shift", rel)
        a = rel.obj_a
        b = rel.obj_b
        m = bd.matrices.get((a, rs[0], ss[0]))
        m_inv = bd.matrices.get((b, g_.inv(rs[-1]), g_.inv(ss[-1])))
        if m != m_inv:
            return False, ("entry-inverse", rel)
        a2 = g_.dom[ss[0]]
        m_shift = bd.matrices.get((a2, g_.inv(ss[0]), ss[1]))
        if m != m_shift:
            return False, ("entry-shift", rel)
    return True, None


# ---------------------------------------------------------------------------
# The word algorithm.


def _word_ok(gpd, word):
    for i in range(len(word) - 1):
        if gpd.dom[word[i]] != gpd.cod[word[i + 1]]:
            raise ValueError("word letters are not composable")


def word_product(gpd, word, cod_hint=None):
    if not word:
        if cod_hint is None:
            raise ValueError("the empty word needs an object")
        return gpd.identity[cod_hint]
    out = word[0]
    for s in word[1:]:
        out = gpd.compose(out, s)
    return out


def braid_class(bd: BraidData, word, cap: int = BRAID_CLASS_CAP):
    """All words reachable from ``word`` by braid moves alone."""
    _word_ok(bd.pr.gpd, word)
    subs = {}
    for rel in bd.relations:
        subs.setdefault(rel.left, set()).add(rel.right)
        subs.setdefault(rel.right, set()).add(rel.left)
        inv_l = tuple(bd.pr.gpd.inv(x) for x in reversed(rel.left))
        inv_r = tuple(bd.pr.gpd.inv(x) for x in reversed(rel.right))
        subs.setdefault(inv_l, set()).add(inv_r)
        subs.setdefault(inv_r, set()).add(inv_l)
    lengths = {len(side) for side in subs}
    word = tuple(word)
    seen = {word}
    queue = deque([word])
    while queue:
        w = queue.popleft()
        for i in range(len(w)):
            for length in lengths:
                if i + length > len(w):
                    continue
                chunk = w[i:i + length]
                for repl in subs.get(chunk, ()):
                    w2 = w[:i] + repl + w[i + length:]
                    if w2 not in seen:
                        if len(seen) >= cap:
                            raise SizeGateError("braid class exceeds the cap")
                        seen.add(w2)
                        queue.append(w2)
    return seen


def tits_reduce(bd: BraidData, word, want_class=False, cap=BRAID_CLASS_CAP):
    """Reduce a word by braid moves plus deletion of adjacent s s*.

    Returns (reduced_word, element, braid_class_of_reduced or None).  The
    reduced word is the lexicographically least member of its class.
    """
    gpd = bd.pr.gpd
    word = tuple(word)
    _word_ok(gpd, word)
    if word:
        element = word_product(gpd, word)
    else:
        raise ValueError("reduce needs a nonempty word (object is ambiguous)")
    while True:
        cls = braid_class(bd, word, cap=cap)
        shorter = None
        for w in cls:
            for i in range(len(w) - 1):
                if gpd.inv(w[i]) == w[i + 1]:
                    shorter = w[:i] + w[i + 2:]
                    break
            if shorter is not None:
                break
        if shorter is None:
            reduced = min(cls)
            assert (word_product(gpd, reduced, gpd.cod[element])
                    == element)
            return reduced, element, (cls if want_class else None)
        word = shorter


# ---------------------------------------------------------------------------
# The generator representation of 2-complete systems.


def five_halves_check(bd: BraidData):
    """2-completeness plus: the pi maps assemble into a representation of
    the groupoid on its own simple generators.

    Returns (verdict, pi_of_morphism or witness).  Raises when the system
    is not 2-complete (pi is then only partially defined)."""
    if not bd.is_two_complete():
        raise ValueError("five-halves needs a 2-complete system")
    pr = bd.pr
    g_ = pr.gpd
    sys = pr.system
    s_at = {a: tuple(sys.S.at(a)) for a in range(len(g_.objects))}
    for r in sys.S.gens:
        a, c = g_.cod[r], g_.dom[r]
        dom_r = set(s_at[c])
        if set(bd.pi[r]) != dom_r:
            return False, ("pi not total", r)
        if set(bd.pi[r].values()) != set(s_at[a]):
            return False, ("pi not onto", r)
    rep = {g_.identity[a]: {s: s for s in s_at[a]}
           for a in range(len(g_.objects))}
    frontier = list(rep)
    while frontier:
        nxt = []
        for h in frontier:
            for r in sys.S.gens:
                if g_.dom[r] != g_.cod[h]:
                    continue
                x = g_.compose(r, h)
                composed = {t: bd.pi[r][rep[h][t]] for t in rep[h]}
                if x in rep:
                    if rep[x] != composed:
                        return False, ("inconsistent", x)
                else:
                    rep[x] = composed
                    nxt.append(x)
        frontier = nxt
    # functoriality on all composable pairs
    for g in range(g_.n_morphisms()):
        for h in range(g_.n_morphisms()):
            if g_.dom[g] != g_.cod[h]:
                continue
            gh = g_.compose(g, h)
            if rep[gh] != {t: rep[g][rep[h][t]] for t in rep[h]}:
                return False, ("not functorial", (g, h))
    return True, rep
