"""Command-line workbench: verdicts, presentations, Hasse diagrams,
squares and cubes, normalizer and functor components, stable sets,
ortholattice completions, adjoint checks, and dumps.

Exit codes: 0 pass, 1 verdict-false, 2 input error, 3 size gate exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from . import corpus
from .boolring import SizeGateError, Universe
from .braids import braid_data, braid_shift_check, five_halves_check
from .completion import rootoid_ortho_embed
from .coxeter import CoxeterMatrix, build_coxeter, diagram_automorphism, fold_fixed_subgroup
from .functor import (FunctorObj, PresentedH, normalizer_component,
                      square_component, stable_sets)
from .graphs import Protomesh, RainbowGraph, SimpleGraph, graph_protorootoid, mesh_check, rainbow_protorootoid
from .groupoid import (GeneratorSet, GroupoidHom, closure_from_action,
                       sign_character, subgroupoid)
from .morphisms import LocalEmbedding, aop_check, theta_perp
from .order import (WeakOrder, hasse_dot, jop_check, n_complete_check,
                    preprincipal_check, rootoid_check)
from .proto import build_from_c0, faithful_check, wec_check
from .squares import complete_square, max_nontrivial_cube


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Input resolution.


def load_instance(spec: str) -> corpus.Instance:
    if spec.startswith("corpus:"):
        try:
            return corpus.build(spec[len("corpus:"):])
        except KeyError as e:
            raise InputError(str(e)) from None
    try:
        with open(spec) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {spec!r}: {e}") from None
    return instance_from_json(data, name=spec)


def instance_from_json(data, name="input") -> corpus.Instance:
    kind = data.get("type")
    if kind == "graph":
        graph = SimpleGraph.from_json(data)
        return corpus.Instance(name, "graph", graph=graph)
    if kind == "coxeter":
        if "preset" in data:
            matrix = CoxeterMatrix.preset(data["preset"])
        else:
            matrix = CoxeterMatrix.from_json(data)
        sys_ = build_coxeter(matrix)
        return corpus.Instance(name, "coxeter", gpd=sys_.gpd, S=sys_.S,
                               coxeter=sys_)
    if kind == "groupoid":
        gpd, S = groupoid_from_json(data)
        return corpus.Instance(name, "system", gpd=gpd, S=S)
    if kind == "mesh":
        ring = Universe(tuple(data["universe"]))
        mesh = Protomesh(ring, [frozenset(f) for f in data["family"]])
        return corpus.Instance(name, "mesh", mesh=mesh)
    if kind == "rainbow":
        graph = SimpleGraph.from_json(data)
        ring = Universe(tuple(data["colors"]))
        labels = {frozenset(item["edge"]): frozenset(item["label"])
                  for item in data["labels"]}
        rainbow = RainbowGraph(graph, ring, labels)
        return corpus.Instance(name, "rainbow", rainbow=rainbow)
    raise InputError(f"unknown input type {kind!r}")


def groupoid_from_json(data):
    objects = data["objects"]
    specs = []
    for gen in data["generators"]:
        mapping = gen["action"]
        if isinstance(mapping, list):
            mapping = {i: v for i, v in enumerate(mapping)}
        else:
            mapping = {_maybe_int(k): v for k, v in mapping.items()}
        specs.append((gen["name"], gen["dom"], gen["cod"], mapping))
    return closure_from_action(objects, specs)


def _maybe_int(x):
    try:
        return int(x)
    except (TypeError, ValueError):
        return x


def instance_protorootoid(inst):
    if inst.kind == "rainbow":
        return rainbow_protorootoid(inst.rainbow)
    return inst.protorootoid()


# ---------------------------------------------------------------------------
# The verdict ladder.


def verdict_ladder(inst: corpus.Instance):
    """faithful -> WEC/C1 -> rootoid/C2 -> complete -> preprincipal ->
    n-complete -> even / principal-via-correspondence / five-halves."""
    pr = instance_protorootoid(inst)
    report = {}
    ok, wit = faithful_check(pr)
    report["faithful"] = ok
    if hasattr(pr, "system"):
        wec_ok, wec_wit = wec_check(pr)
        report["wec"] = wec_ok
        if not wec_ok:
            report["wec_witness"] = pr.gpd.name(wec_wit)
        even_ok, _ = sign_character(pr.gpd, pr.system.S)
        report["even"] = even_ok
    base = rootoid_check(pr)
    report["meet_semilattice"] = base.meet_semilattice
    report["jop"] = base.jop
    rootoid = base.rootoid and report.get("wec", True)
    report["rootoid"] = rootoid
    report["complete"] = base.complete
    report["witnesses"] = {k: str(v) for k, v in base.witnesses.items()}
    if rootoid:
        pre, atoms_at, _ = preprincipal_check(pr)
        report["preprincipal"] = pre
        report["atoms"] = {
            str(pr.gpd.objects[a]): sorted(pr.gpd.name(x) for x in atoms)
            for a, atoms in atoms_at.items()}
        report["n_complete"] = {n: n_complete_check(pr, n) for n in (2, 3)}
        if report.get("even") and report.get("wec"):
            report["principal_via_correspondence"] = True
            bd = braid_data(pr)
            if bd.is_two_complete():
                fh, _ = five_halves_check(bd)
                report["five_halves"] = fh
        elif "even" in report:
            report["principal_via_correspondence"] = False
    return pr, report


def check_pins(inst, report):
    mismatches = {}
    for key, want in inst.pins.items():
        got = report.get(key)
        if got != want:
            mismatches[key] = {"expected": want, "computed": got}
    return mismatches


# ---------------------------------------------------------------------------
# Subcommands.


def cmd_verify(args):
    inst = load_instance(args.input)
    pr, report = verdict_ladder(inst)
    mismatches = check_pins(inst, report)
    if args.json:
        print(_dumps({"name": inst.name, "report": report,
                      "pin_mismatches": mismatches}))
    else:
        order = ["faithful", "wec", "meet_semilattice", "jop", "rootoid",
                 "complete", "preprincipal", "even",
                 "principal_via_correspondence", "five_halves"]
        for key in order:
            if key in report:
                print(f"{key}: {report[key]}")
        if "n_complete" in report:
            print("n_complete:", " ".join(
                f"{n}:{v}" for n, v in sorted(report["n_complete"].items())))
        if "atoms" in report:
            print("atoms:", _dumps(report["atoms"]))
        for k, v in report.get("witnesses", {}).items():
            print(f"witness[{k}]: {v}")
        if mismatches:
            print("pin mismatches:", _dumps(mismatches))
    if mismatches or not report.get("rootoid", False):
        return 1
    return 0


def cmd_present(args):
    inst = load_instance(args.input)
    pr = instance_protorootoid(inst)
    bd = braid_data(pr)
    shift_ok, _ = braid_shift_check(bd)
    data = bd.to_json()
    data["shift_closed"] = shift_ok
    if args.json:
        print(_dumps(data))
    else:
        print("generators:", ", ".join(data["generators"]))
        for rel in data["trivial_relations"]:
            print("trivial:", rel)
        for rel in data["relations"]:
            print("braid:", rel)
        for r, table in data["pi"].items():
            print(f"pi[{r}]:", " ".join(f"{t}->{s}" for t, s in table.items()))
        print("shift_closed:", shift_ok)
    return 0


def cmd_hasse(args):
    inst = load_instance(args.input)
    pr = instance_protorootoid(inst)
    for a in range(len(pr.gpd.objects)):
        wo = WeakOrder(pr, a)
        print(hasse_dot(wo, title=f"{inst.name}@{pr.gpd.objects[a]}"))
    return 0


def cmd_squares(args):
    inst = load_instance(args.input)
    pr = instance_protorootoid(inst)
    g_ = pr.gpd
    count = 0
    samples = []
    for x in range(g_.n_morphisms()):
        for w in range(g_.n_morphisms()):
            if g_.dom[x] != g_.cod[w]:
                continue
            got = complete_square(pr, x, w)
            if got is None:
                continue
            v, y = got
            count += 1
            if len(samples) < args.limit:
                samples.append([g_.name(x), g_.name(w), g_.name(v), g_.name(y)])
    out = {"oriented_squares": count, "samples (x,w,v,y)": samples}
    print(_dumps(out) if args.json else
          f"oriented squares (by adjacent sides): {count}")
    if not args.json:
        for s in samples:
            print("  ", " , ".join(s))
    return 0


def cmd_maxcube(args):
    inst = load_instance(args.input)
    pr = instance_protorootoid(inst)
    n = max_nontrivial_cube(pr)
    print(_dumps({"max_nontrivial_cube": n}) if args.json else n)
    return 0


def _resolve_object(pr, token):
    for a, obj in enumerate(pr.gpd.objects):
        if str(obj) == token:
            return a
    raise InputError(f"unknown object {token!r}")


def _resolve_morphisms(pr, tokens):
    out = []
    for tok in tokens:
        hits = [g for g in range(pr.gpd.n_morphisms())
                if pr.gpd.name(g) == tok]
        if len(hits) != 1:
            raise InputError(f"morphism name {tok!r} is not unique or unknown")
        out.append(hits[0])
    return out


def _pick_model(inst):
    """Reflection model for Coxeter entries, else the generating-set one."""
    if inst.kind == "coxeter":
        return inst.reflection()
    return instance_protorootoid(inst)


def cmd_normalizer(args):
    inst = load_instance(args.input)
    pr = _pick_model(inst)
    obj_tok, _, gen_tok = args.seed.partition(":")
    a = _resolve_object(pr, obj_tok)
    gens = [t for t in gen_tok.split(",") if t]
    X = _resolve_morphisms(pr, gens)
    comp = normalizer_component(pr, a, X)
    stats = comp.star_stats()
    rep = rootoid_check(comp.pullback)
    out = {
        "objects": len(comp.objects),
        "stars": [
            {"star_size": s["star_size"], "atoms": s["atoms"],
             "longest_length": s["longest_length"]}
            for s in stats],
        "rootoid": rep.rootoid,
        "complete": rep.complete,
    }
    if args.json:
        print(_dumps(out))
    else:
        print(f"objects: {out['objects']}")
        for s in out["stars"]:
            print(f"  star {s['star_size']}, atoms {s['atoms']}, "
                  f"longest {s['longest_length']}")
        print(f"rootoid: {rep.rootoid}  complete: {rep.complete}")
    return 0


def cmd_functor(args):
    inst = load_instance(args.input)
    pr = _pick_model(inst)
    (x,) = _resolve_morphisms(pr, [args.morphism])
    g_ = pr.gpd
    if args.shape == "loop":
        if g_.dom[x] != g_.cod[x]:
            raise InputError("loop datum needs a loop morphism")
        H = PresentedH.free_loop()
        F = FunctorObj((g_.cod[x],), (x,))
    else:
        H = PresentedH.arrow()
        F = FunctorObj((g_.dom[x], g_.cod[x]), (x,))
    comp = square_component(pr, H, F)
    rep = rootoid_check(comp.pullback)
    out = {
        "objects": len(comp.objects),
        "morphisms": comp.gpd.n_morphisms(),
        "vertex_values": sorted(g_.name(v) for v in comp.vertex_values()),
        "star_values": sorted(g_.name(v) for v in comp.star_values()),
        "rootoid": rep.rootoid,
    }
    print(_dumps(out) if args.json else out)
    return 0


def cmd_stable(args):
    inst = load_instance(args.input)
    pr = _pick_model(inst)
    a = _resolve_object(pr, args.object) if args.object else 0
    fam = stable_sets(pr, a)
    out = {"object": str(pr.gpd.objects[a]), "count": len(fam),
           "intersection_closed": fam.check_closed()}
    print(_dumps(out) if args.json else out["count"])
    return 0


def cmd_complete(args):
    inst = load_instance(args.input)
    pr = _pick_model(inst)
    results = []
    for a in range(len(pr.gpd.objects)):
        ortho, emb, rep = rootoid_ortho_embed(pr, a)
        rep["object"] = str(pr.gpd.objects[a])
        results.append(rep)
        if args.dot:
            elems = sorted(ortho.poset.elements, key=str)
            print(f"// ortholattice at {rep['object']}: "
                  f"{len(elems)} elements")
    print(_dumps(results) if args.json else results)
    return 0 if all(r["ortholattice"] for r in results) else 1


def cmd_aop(args):
    inst = load_instance(args.input)
    pr = _pick_model(inst)
    if args.fixed_by:
        if inst.kind != "coxeter":
            raise InputError("--fixed-by needs a Coxeter entry")
        perm = dict(pair.split(":") for pair in args.fixed_by.split(","))
        auto = diagram_automorphism(inst.coxeter, perm)
        rep = fold_fixed_subgroup(inst.coxeter, [auto])
        out = {
            "fixed_order": rep["fixed_order"],
            "atoms": sorted(pr.gpd.name(x) for x in rep["atoms"]),
            "atoms_match_adjoints": rep["atoms_match"],
            "join_formula": rep["join_formula"],
            "preprincipal": rep["preprincipal"],
            "aop": rep["aop"],
        }
        print(_dumps(out) if args.json else out)
        return 0 if rep["aop"] else 1
    gens = _resolve_morphisms(pr, [t for t in args.subgroup.split(",") if t])
    sub, incl = subgroupoid(pr.gpd, gens)
    le = LocalEmbedding(pr, incl)
    ok, wit = aop_check(le)
    table = {}
    for a in range(len(sub.objects)):
        for w in le.ideal(a):
            u = theta_perp(le, a, w)
            if u is not None:
                table[pr.gpd.name(w)] = sub.name(u)
    out = {"aop": ok, "witness": None if wit is None else str(wit),
           "theta_perp": table}
    print(_dumps(out) if args.json else out)
    return 0 if ok else 1


def cmd_dump(args):
    inst = load_instance(args.input)
    pr = instance_protorootoid(inst)
    print(_dumps(pr.to_json()))
    return 0


def _dumps(data):
    return json.dumps(data, sort_keys=True, indent=2, default=str)


# ---------------------------------------------------------------------------


def build_parser():
    top = argparse.ArgumentParser(
        prog="rootoids",
        description="Workbench for groupoid cocycles, weak orders and their "
                    "verdict hierarchy.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="corpus:NAME or a JSON input file")
        p.add_argument("--json", action="store_true")
        p.add_argument("--gate-morphisms", type=int, default=None,
                       help="closure bound on morphism counts")
        p.add_argument("--gate-group-order", type=int, default=None,
                       help="bound on Coxeter group orders")
        p.add_argument("--gate-free-ring", type=int, default=None,
                       help="bound on presented-ring generator counts")
        p.add_argument("--gate-jop-width", type=int, default=None,
                       help="star size above which the JOP search is bounded")
        p.add_argument("--gate-ideals", type=int, default=None,
                       help="bound on semilattice sizes for ideal enumeration")

    p = sub.add_parser("verify", help="run the verdict ladder")
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("present", help="braid presentation and pi maps")
    common(p)
    p.set_defaults(fn=cmd_present)

    p = sub.add_parser("hasse", help="DOT Hasse diagrams per object")
    common(p)
    p.set_defaults(fn=cmd_hasse)

    p = sub.add_parser("squares", help="count oriented squares")
    common(p)
    p.add_argument("--limit", type=int, default=8)
    p.set_defaults(fn=cmd_squares)

    p = sub.add_parser("maxcube", help="largest nontrivial cube dimension")
    common(p)
    p.set_defaults(fn=cmd_maxcube)

    p = sub.add_parser("normalizer", help="normalizer component statistics")
    common(p)
    p.add_argument("--seed", required=True,
                   help="OBJECT:gen1,gen2 (empty set: 'OBJECT:')")
    p.set_defaults(fn=cmd_normalizer)

    p = sub.add_parser("functor", help="functor-groupoid component")
    common(p)
    p.add_argument("--shape", choices=["loop", "arrow"], default="loop")
    p.add_argument("--morphism", required=True)
    p.set_defaults(fn=cmd_functor)

    p = sub.add_parser("stable", help="stable-subset count")
    common(p)
    p.add_argument("--object", default=None)
    p.set_defaults(fn=cmd_stable)

    p = sub.add_parser("complete", help="ortholattice completion per object")
    common(p)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(fn=cmd_complete)

    p = sub.add_parser("aop", help="adjoint orthogonality of an embedding")
    common(p)
    p.add_argument("--subgroup", default="",
                   help="comma-separated generating morphism names")
    p.add_argument("--fixed-by", default=None,
                   help="diagram automorphism as s1:s3,s2:s2,s3:s1")
    p.set_defaults(fn=cmd_aop)

    p = sub.add_parser("dump", help="protorootoid JSON dump")
    common(p)
    p.set_defaults(fn=cmd_dump)

    return top


def _apply_gates(args):
    """Gates are process-wide knobs on the owning modules."""
    from . import completion as completion_mod
    from . import coxeter as coxeter_mod
    from . import groupoid as groupoid_mod
    from . import order as order_mod
    from . import proto as proto_mod
    if getattr(args, "gate_morphisms", None):
        groupoid_mod.MORPHISM_BOUND = args.gate_morphisms
    if getattr(args, "gate_group_order", None):
        coxeter_mod.GROUP_ORDER_BOUND = args.gate_group_order
    if getattr(args, "gate_free_ring", None):
        proto_mod.FREE_RING_BOUND = args.gate_free_ring
    if getattr(args, "gate_jop_width", None):
        order_mod.JOP_EXHAUSTIVE_STAR_BOUND = args.gate_jop_width
    if getattr(args, "gate_ideals", None):
        completion_mod.IDEAL_ENUMERATION_BOUND = args.gate_ideals


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_gates(args)
    try:
        return args.fn(args)
    except SizeGateError as e:
        print(f"size gate exceeded: {e}", file=sys.stderr)
        return 3
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
