"""Finite Boolean-ring arithmetic over interned universes.

Every finite Boolean ring that occurs here is a powerset: elements are
subsets of an ordered universe, + is symmetric difference, * is
intersection, and the natural partial order is containment.  Subrings,
free and presented rings, quotients and unital completions are all
reported through the atom partitions they induce.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence


class SizeGateError(RuntimeError):
    """A configurable desk-scale bound was exceeded."""


FREE_RING_GENERATOR_BOUND = 16


class Universe:
    """Ordered list of pairwise-distinct hashable labels, interned once."""

    __slots__ = ("labels", "index")

    def __init__(self, labels: Iterable):
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise ValueError("universe labels must be pairwise distinct")
        self.labels = labels
        self.index = index

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"Universe({list(self.labels)!r})"

    def __eq__(self, other):
        return isinstance(other, Universe) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def subset(self, labels: Iterable) -> "RingElem":
        return RingElem(self, frozenset(self.index[lab] for lab in labels))

    def from_indices(self, indices: Iterable[int]) -> "RingElem":
        members = frozenset(indices)
        if any(i < 0 or i >= len(self.labels) for i in members):
            raise ValueError("index outside universe")
        return RingElem(self, members)

    @property
    def zero(self) -> "RingElem":
        return RingElem(self, frozenset())

    @property
    def one(self) -> "RingElem":
        return RingElem(self, frozenset(range(len(self.labels))))


class RingElem:
    """A subset of a universe, doubling as a Boolean-ring element."""

    __slots__ = ("universe", "members")

    def __init__(self, universe: Universe, members: frozenset):
        self.universe = universe
        self.members = members

    def _check(self, other):
        if self.universe is not other.universe and self.universe != other.universe:
            raise ValueError("ring elements live in different universes")

    def __add__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return RingElem(self.universe, self.members ^ other.members)

    def __mul__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return RingElem(self.universe, self.members & other.members)

    def __le__(self, other: "RingElem") -> bool:
        self._check(other)
        return self.members <= other.members

    def __lt__(self, other: "RingElem") -> bool:
        self._check(other)
        return self.members < other.members

    def __eq__(self, other):
        return (
            isinstance(other, RingElem)
            and self.universe == other.universe
            and self.members == other.members
        )

    def __hash__(self):
        return hash((self.universe.labels, self.members))

    def __bool__(self):
        return bool(self.members)

    def __len__(self):
        return len(self.members)

    def labels(self) -> list:
        return [self.universe.labels[i] for i in sorted(self.members)]

    def complement(self) -> "RingElem":
        return RingElem(
            self.universe, frozenset(range(len(self.universe))) - self.members
        )

    def __repr__(self):
        return f"RingElem({self.labels()!r})"

    def to_json(self):
        return {
            "universe": [_label_json(lab) for lab in self.universe.labels],
            "members": [_label_json(lab) for lab in self.labels()],
        }


def _label_json(lab):
    if isinstance(lab, frozenset):
        return sorted(_label_json(x) for x in lab)
    if isinstance(lab, tuple):
        return [_label_json(x) for x in lab]
    return lab


class SignedUniverse:
    """Universe with a fixed-point-free negation and a positive half."""

    __slots__ = ("base", "negation", "positives")

    def __init__(self, base: Universe, negation: Sequence[int], positives):
        negation = tuple(negation)
        positives = frozenset(positives)
        n = len(base)
        if sorted(negation) != list(range(n)):
            raise ValueError("negation must be a permutation of the universe")
        for i, j in enumerate(negation):
            if j == i:
                raise ValueError("negation has a fixed point")
            if negation[j] != i:
                raise ValueError("negation is not an involution")
        if positives | {negation[i] for i in positives} != set(range(n)) or (
            positives & {negation[i] for i in positives}
        ):
            raise ValueError("positives and their negatives must partition the universe")
        self.base = base
        self.negation = negation
        self.positives = positives

    def neg(self, i: int) -> int:
        return self.negation[i]

    def is_positive(self, i: int) -> bool:
        return i in self.positives


# ---------------------------------------------------------------------------
# Subrings of a powerset.


def subring_atoms(ambient: Universe, gens: Iterable[RingElem]):
    """Atom partition of the subring of P(ambient) generated by ``gens``.

    The atoms are the nonempty classes of points sharing a membership
    pattern, restricted to points lying in at least one generator; they
    partition the union of the generator supports.
    """
    gens = list(gens)
    cells = {}
    for g in gens:
        if g.universe != ambient:
            raise ValueError("generator not in the ambient universe")
    support = set()
    for g in gens:
        support |= g.members
    for point in support:
        pattern = frozenset(k for k, g in enumerate(gens) if point in g.members)
        cells.setdefault(pattern, set()).add(point)
    atoms = sorted((frozenset(c) for c in cells.values()), key=sorted)
    return atoms


class Subring:
    """Enumerated subring of a powerset, reported via its atom partition."""

    def __init__(self, ambient: Universe, atoms, elements):
        self.ambient = ambient
        self.atoms = atoms
        self.elements = elements

    def __len__(self):
        return len(self.elements)

    def __contains__(self, elem: RingElem):
        return elem in self.elements


def subring_generated(ambient: Universe, gens: Iterable[RingElem],
                      enumeration_bound: int = 2 ** 20) -> Subring:
    """Smallest subset of P(ambient) containing ``gens`` closed under + and *."""
    atoms = subring_atoms(ambient, gens)
    if 2 ** len(atoms) > enumeration_bound:
        raise SizeGateError(
            f"subring has 2^{len(atoms)} elements, above the enumeration bound"
        )
    elements = set()
    for r in range(len(atoms) + 1):
        for combo in itertools.combinations(atoms, r):
            members = frozenset().union(*combo) if combo else frozenset()
            elements.add(RingElem(ambient, members))
    return Subring(ambient, atoms, elements)


# ---------------------------------------------------------------------------
# Free and presented Boolean rings.


class PresentedRing:
    """Finite Boolean ring presented by generators, stored atom-wise.

    The ring is the powerset of its surviving atoms; each atom is labelled
    by the subset Y of generators it sits under, and a generator x expands
    to the sum of the atoms labelled by the Y containing x.
    """

    def __init__(self, generators: Sequence, atoms: Sequence[frozenset],
                 unital: bool):
        self.generators = tuple(generators)
        self.atoms = tuple(atoms)
        self.unital = unital
        self.universe = Universe(self.atoms)

    def __len__(self):
        # the ring is the full powerset of its atoms
        return 2 ** len(self.atoms)

    def gen_image(self, x) -> RingElem:
        if x not in self.generators:
            raise ValueError(f"{x!r} is not one of the generators")
        return RingElem(
            self.universe,
            frozenset(i for i, Y in enumerate(self.atoms) if x in Y),
        )

    def element(self, atom_subset: Iterable[frozenset]) -> RingElem:
        return self.universe.subset(atom_subset)

    def zero(self):
        return self.universe.zero

    def one(self):
        return self.universe.one


def free_boolean_ring(X: Sequence, bound: int = FREE_RING_GENERATOR_BOUND):
    """Free Boolean ring on X and its unital completion, as a pair.

    The non-unital free ring has atoms e_Y for the nonempty subsets Y of X
    and 2^(2^n - 1) elements; the unital completion keeps the atom e_{} as
    well, giving 2^(2^n) elements, and 1 of the non-unital ring is 1 + e_{}.
    """
    X = tuple(X)
    if len(set(X)) != len(X):
        raise ValueError("generators must be distinct")
    if len(X) > bound:
        raise SizeGateError(f"{len(X)} generators exceed the free-ring bound {bound}")
    subsets = []
    for r in range(len(X) + 1):
        for combo in itertools.combinations(X, r):
            subsets.append(frozenset(combo))
    nonempty = [Y for Y in subsets if Y]
    free = PresentedRing(X, nonempty, unital=False)
    unital = PresentedRing(X, subsets, unital=True)
    return free, unital


def quotient_by_ideal(ring: PresentedRing, ideal_gens: Iterable[RingElem]):
    """Quotient of a finite Boolean ring by the ideal its generators span.

    In a finite Boolean ring the ideal generated by a set equals the
    principal ideal of the join of its generators, so the quotient is the
    subring on the atoms not below that join.  Returns the quotient ring
    and the projection map on elements.
    """
    dead = set()
    for g in ideal_gens:
        if g.universe != ring.universe:
            raise ValueError("ideal generator not in the ring")
        dead |= g.members
    survivors = [i for i in range(len(ring.atoms)) if i not in dead]
    quotient = PresentedRing(
        ring.generators, [ring.atoms[i] for i in survivors], ring.unital
    )
    reindex = {old: new for new, old in enumerate(survivors)}

    def project(elem: RingElem) -> RingElem:
        return RingElem(
            quotient.universe,
            frozenset(reindex[i] for i in elem.members if i in reindex),
        )

    return quotient, project


def unital_completion(universe: Universe, unit_label="1?"):
    """U(B) = B (+) F2 for B = P(universe): doubles the cardinality.

    Returns the enlarged universe and the embedding b -> b; the old ring
    sits inside as an order ideal and every new element is 1 + b.
    """
    label = unit_label
    while label in universe.index:
        label = (label, "'")
    big = Universe(universe.labels + (label,))

    def embed(elem: RingElem) -> RingElem:
        if elem.universe != universe:
            raise ValueError("element not in the ring being completed")
        return RingElem(big, elem.members)

    return big, embed
