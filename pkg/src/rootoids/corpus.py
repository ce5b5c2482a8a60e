"""Named instances used by the command line and the golden tests.

Every pinned expectation is re-derived by the verdict machinery; the pins
here only gate pass/fail in `verify`.
"""

from __future__ import annotations

from .boolring import Universe
from .coxeter import CoxeterMatrix, build_coxeter, reflection_cocycle
from .graphs import Protomesh, SimpleGraph, graph_protorootoid, protomesh_protorootoid
from .groupoid import GeneratorSet, group_from_permutations, rename_by_words
from .proto import build_from_c0


class Instance:
    def __init__(self, name, kind, pins=None, **data):
        self.name = name
        self.kind = kind            # "system" | "coxeter" | "graph" | "mesh"
        self.pins = pins or {}
        self.__dict__.update(data)

    def protorootoid(self):
        """The generating-set protorootoid (or mesh protorootoid)."""
        if self.kind == "mesh":
            return protomesh_protorootoid(self.mesh)
        if self.kind == "graph":
            pr, _, _ = graph_protorootoid(self.graph)
            return pr
        return build_from_c0(self.gpd, self.S)

    def reflection(self):
        if self.kind != "coxeter":
            raise ValueError("only Coxeter entries carry a reflection model")
        return reflection_cocycle(self.coxeter)


def _cyclic(n):
    perm = tuple((i + 1) % n for i in range(n))
    gpd, S = group_from_permutations({"x": perm})
    rename_by_words(gpd, S)
    return gpd, S


def _dihedral8_with(labels):
    sys = build_coxeter(CoxeterMatrix.preset("I2(4)"))
    g_ = sys.gpd
    r, s = sys.gen("r"), sys.gen("s")
    t = g_.compose(g_.compose(r, s), r)
    x = g_.compose(r, s)
    lookup = {"r": r, "s": s, "t": t, "x": x, "x*": g_.inv(x)}
    return g_, GeneratorSet(g_, [lookup[l] for l in labels])


def _klein_all():
    gpd, S = group_from_permutations({"a": (1, 0, 2, 3), "b": (0, 1, 3, 2)})
    rename_by_words(gpd, S)
    gens = [g for g in range(gpd.n_morphisms()) if not gpd.is_identity(g)]
    return gpd, GeneratorSet(gpd, gens)


def _cycle_graph(n):
    vs = [f"v{i}" for i in range(n)]
    return SimpleGraph(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


GRAPH_951 = SimpleGraph(
    list("pqrst"),
    [("p", "q"), ("p", "r"), ("p", "s"), ("q", "t"), ("r", "t"), ("s", "t")])

GRAPH_952 = SimpleGraph(
    list("pqrstuv"),
    [("p", "q"), ("q", "r"), ("r", "v"), ("s", "p"), ("s", "u"),
     ("s", "t"), ("t", "q"), ("t", "v"), ("u", "v")])


def _builders():
    out = {}

    def coxeter(name, preset=None):
        def build():
            sys = build_coxeter(CoxeterMatrix.preset(preset or name))
            return Instance(
                name, "coxeter", gpd=sys.gpd, S=sys.S, coxeter=sys,
                pins={"wec": True, "rootoid": True, "complete": True,
                      "even": True, "preprincipal": True})
        return build

    for name in ("A2", "A3", "B3", "D4", "I2(2)", "I2(3)", "I2(4)", "I2(6)"):
        out[name] = coxeter(name)

    def cyclic(n):
        def build():
            gpd, S = _cyclic(n)
            even = n % 2 == 0
            return Instance(
                f"cyclic{n}", "system", gpd=gpd, S=S,
                pins={"wec": True, "rootoid": True, "even": even,
                      "complete": even})
        return build

    for n in (3, 4, 6):
        out[f"cyclic{n}"] = cyclic(n)

    def ex8161():
        gpd, S = _klein_all()
        return Instance("ex8161", "system", gpd=gpd, S=S,
                        pins={"wec": True, "rootoid": True, "even": False})
    out["ex8161"] = ex8161

    def ex8163():
        gpd, S = _dihedral8_with(["x", "x*", "r"])
        return Instance("ex8163", "system", gpd=gpd, S=S,
                        pins={"wec": True, "rootoid": True, "even": True})
    out["ex8163"] = ex8163

    def ex8164():
        gpd, S = _dihedral8_with(["r", "s", "t"])
        return Instance("ex8164", "system", gpd=gpd, S=S,
                        pins={"wec": True, "rootoid": True, "even": True,
                              "complete": True})
    out["ex8164"] = ex8164

    def graph(name, g, pins):
        def build():
            return Instance(name, "graph", graph=g, pins=pins)
        return build

    out["pentagon"] = graph(
        "pentagon", _cycle_graph(5),
        {"wec": True, "rootoid": True, "complete": False, "even": False,
         "preprincipal": False})
    out["hexagon"] = graph(
        "hexagon", _cycle_graph(6),
        {"wec": True, "rootoid": True, "complete": True, "even": True,
         "preprincipal": True})
    out["square4"] = graph(
        "square4", _cycle_graph(4),
        {"wec": True, "rootoid": True, "complete": True, "even": True})
    out["ex951"] = graph("ex951", GRAPH_951, {"wec": False, "even": True})
    out["ex952"] = graph(
        "ex952", GRAPH_952,
        {"wec": True, "rootoid": False, "even": True})
    out["path4"] = graph(
        "path4",
        SimpleGraph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")]),
        {"wec": True, "rootoid": True, "even": True, "complete": False})
    out["star4"] = graph(
        "star4",
        SimpleGraph(["c", "x", "y", "z"], [("c", "x"), ("c", "y"), ("c", "z")]),
        {"wec": True, "rootoid": True, "even": True})

    def mesh_ideal():
        ring = Universe((1, 2, 3))
        mesh = Protomesh(ring, [frozenset(), frozenset({1}), frozenset({2}),
                                frozenset({1, 2})])
        return Instance("mesh-ideal", "mesh", mesh=mesh,
                        pins={"rootoid": True, "complete": True})
    out["mesh-ideal"] = mesh_ideal

    def mesh_points():
        ring = Universe(("x", "y", "z"))
        mesh = Protomesh(ring, [frozenset(), frozenset("x"), frozenset("y"),
                                frozenset("z")])
        return Instance("mesh-points", "mesh", mesh=mesh,
                        pins={"rootoid": True, "complete": False})
    out["mesh-points"] = mesh_points

    return out


BUILDERS = _builders()


def names():
    return sorted(BUILDERS)


def build(name: str) -> Instance:
    if name not in BUILDERS:
        raise KeyError(f"unknown corpus entry {name!r}; try one of {names()}")
    return BUILDERS[name]()
