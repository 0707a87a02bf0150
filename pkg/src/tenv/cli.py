"""Command line interface: ``tenv <command> [options]``.

Every command builds a scene dict (from --scene JSON and/or flags), validates
it against scene.schema.json, runs, and prints deterministic output.

Exit codes: 0 ok, 2 malformed input, 3 resource bound exceeded,
4 a checked identity or contract failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

import jsonschema

from .backend import make_backend
from .config import Bounds, ContractViolation, ResourceBoundError, SchemaError
from .degree import DegreeFunction, table_degree, validate_degree_axioms, validated
from .envelope import check_associativity, end_algebra, hom_basis
from .radical import (
    gram_omega,
    indecomposable_surjections,
    nonsingularity_verdict,
    omega,
    radical,
    simple_census,
)
from .relations import Relation, weighted_compose
from .scalars import T, factor_str, fmt, parse_scalar, simplify
from .specialization import (
    UniformFunctor,
    fullness_rank,
    functoriality_check,
    interpolation_dim_check,
    pstar_and_invariants,
    relation_matrix,
    uniformity_and_adapted_check,
)

COMMANDS = (
    "hom",
    "compose",
    "gram",
    "omega",
    "singular",
    "endalg",
    "radical",
    "census",
    "specialize",
    "validate-degree",
)


def load_schema():
    text = resources.files("tenv").joinpath("scene.schema.json").read_text()
    return json.loads(text)


def _pointer(path):
    return "/" + "/".join(str(p) for p in path)


def validate_scene(scene):
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = sorted(validator.iter_errors(scene), key=lambda e: list(e.path))
    if errors:
        err = errors[0]
        raise SchemaError(err.message, _pointer(err.absolute_path))
    if scene["backend"] == "setop":
        for key in ("q", "dim"):
            if key in scene:
                raise SchemaError(f"'{key}' belongs to the vect backend", f"/{key}")
    else:
        if "size" in scene:
            raise SchemaError("use 'dim' for the vect backend", "/size")


# ----- scene -> objects -----


class Context:
    def __init__(self, scene):
        validate_scene(scene)
        self.scene = scene
        b = scene.get("bounds", {})
        self.bounds = Bounds(**{**Bounds.from_env().__dict__, **b})
        self.backend = make_backend(scene["backend"], scene.get("q", 2), self.bounds)
        self.x = self._object(scene.get("size", scene.get("dim", 1)), "/size")
        self.y = self._object(scene["target"], "/target") if "target" in scene else self.x
        self.param = self._param(scene.get("param", "t"))
        self.delta = self._degree(scene.get("degree"))

    def _object(self, obj, pointer):
        if isinstance(obj, int):
            return obj
        if obj["backend"] != self.backend.name:
            raise SchemaError(f"object from backend {obj['backend']!r} in a {self.backend.name} scene", pointer)
        if obj["backend"] == "vect" and obj.get("q", self.backend.q) != self.backend.q:
            raise SchemaError("object over a different field", pointer + "/q")
        key = "size" if obj["backend"] == "setop" else "dim"
        if key not in obj:
            raise SchemaError(f"missing '{key}'", pointer)
        return obj[key]

    def _param(self, p):
        if isinstance(p, int):
            return Fraction(p)
        text = p.strip()
        if text.startswith("t="):
            text = text[2:]
        if text == "t":
            return T
        try:
            return Fraction(text)
        except ValueError:
            raise SchemaError(f"parameter must be 't' or a rational, got {p!r}", "/param")

    def _degree(self, spec):
        natural = "setop" if self.backend.name == "setop" else "vect"
        if spec is None:
            return DegreeFunction(natural, self.param)
        fam = spec["family"]
        if fam == "table":
            if "table" not in spec:
                raise SchemaError("table family needs a 'table'", "/degree/table")
            vals = {}
            for i, row in enumerate(spec["table"]):
                try:
                    v = parse_scalar(str(row["value"]))
                except ValueError as exc:
                    raise SchemaError(str(exc), f"/degree/table/{i}/value")
                vals[(row["source"], row["target"])] = v
            d = table_degree(vals)
            return d.at(self.param) if isinstance(self.param, Fraction) else d
        if fam in ("setop",) and self.backend.name != "setop":
            raise SchemaError("setop degree on a vect scene", "/degree/family")
        if fam in ("vect", "length") and self.backend.name != "vect":
            raise SchemaError(f"{fam} degree on a setop scene", "/degree/family")
        return DegreeFunction(fam, self.param)

    def relations(self):
        out = []
        for i, rel in enumerate(self.scene.get("relations", [])):
            out.append(self.relation(rel, f"/relations/{i}"))
        return out

    def relation(self, rel, pointer):
        m = self._object(rel["left"], pointer + "/left")
        n = self._object(rel["right"], pointer + "/right")
        xy = self.backend.product(m, n)[0]
        if self.backend.name == "setop":
            if "partition" not in rel:
                raise SchemaError("setop relations need 'partition'", pointer)
            blocks = []
            for j, b in enumerate(rel["partition"]):
                idx = []
                for lab in b:
                    k = int(lab[1:])
                    side_n = m if lab[0] == "x" else n
                    if k > side_n:
                        raise SchemaError(f"label {lab} out of range", f"{pointer}/partition/{j}")
                    idx.append(k - 1 if lab[0] == "x" else m + k - 1)
                blocks.append(idx)
            flat = sorted(k for b in blocks for k in b)
            if flat != list(range(xy)):
                raise SchemaError("blocks must cover every label exactly once", pointer + "/partition")
            u = self.backend.subobject_from_json(xy, blocks)
        else:
            if "basis" not in rel:
                raise SchemaError("vect relations need 'basis'", pointer)
            for j, r in enumerate(rel["basis"]):
                if len(r) != xy:
                    raise SchemaError(f"basis vectors need {xy} coordinates", f"{pointer}/basis/{j}")
            u = self.backend.subobject_from_json(xy, rel["basis"])
        return Relation(m, n, u)

    def relation_json(self, r):
        out = {"left": r.left, "right": r.right}
        if self.backend.name == "setop":
            m = r.left
            out["partition"] = [
                [f"x{k + 1}" if k < m else f"y{k - m + 1}" for k in b] for b in r.body.key
            ]
        else:
            out["basis"] = [list(v) for v in r.body.key]
        return out

    def object_json(self, x):
        return self.backend.describe(x)


def scalar_json(c):
    c = simplify(c)
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return fmt(c)


# ----- commands -----


def cmd_hom(ctx):
    space = hom_basis(ctx.backend, ctx.x, ctx.y)
    basis = [ctx.relation_json(r) for r in space.basis]
    return {
        "source": ctx.object_json(ctx.x),
        "target": ctx.object_json(ctx.y),
        "dim": len(space),
        "basis": basis,
    }, [(i, json.dumps(b, sort_keys=True)) for i, b in enumerate(basis)]


def cmd_compose(ctx):
    rels = ctx.relations()
    if len(rels) < 2:
        raise SchemaError("compose needs at least two relations (applied left to right)", "/relations")
    coeff = simplify(1)
    cur = rels[0]
    for i, s in enumerate(rels[1:], start=1):
        if cur.right != s.left:
            raise SchemaError("relations are not composable", f"/relations/{i}/left")
        w = weighted_compose(ctx.backend, cur, s, ctx.delta)
        coeff = simplify(coeff * w.coeff)
        cur = w.relation
    out = {"coefficient": scalar_json(coeff), "relation": ctx.relation_json(cur)}
    return out, [(scalar_json(coeff), json.dumps(out["relation"], sort_keys=True))]


def cmd_gram(ctx):
    rep = gram_omega(ctx.backend, ctx.x, ctx.delta)
    factors = [
        {"subobject": ctx.backend.subobject_json(u), "omega": scalar_json(o.value)}
        for u, o in zip(rep.subobjects, rep.omega_factors)
    ]
    det = simplify(rep.det)
    out = {
        "object": ctx.object_json(ctx.x),
        "matrix": [[scalar_json(c) for c in row] for row in rep.matrix],
        "det": scalar_json(det),
        "det_factored": factor_str(det),
        "omega_factors": factors,
        "factorization_check": "pass",
    }
    ordered = sorted((o.value for o in rep.omega_factors), key=lambda v: (_deg(v), fmt(v)))
    text = "Omega = " + " * ".join(_paren(fmt(v)) for v in ordered)
    rows = [(json.dumps(f["subobject"]), f["omega"]) for f in factors]
    return out, rows, text


def _deg(v):
    v = simplify(v)
    return v.degree() if hasattr(v, "degree") else 0


def _paren(s):
    return f"({s})" if (" + " in s or " - " in s) else s


def cmd_omega(ctx):
    indec = set(indecomposable_surjections(ctx.backend, ctx.x))
    items = []
    for e in ctx.backend.quotients(ctx.x):
        if e.target == ctx.x:
            continue
        ov = omega(ctx.backend, e, ctx.delta)
        items.append(
            {
                "surjection": ctx.backend.morphism_json(e),
                "indecomposable": e in indec,
                "omega": scalar_json(ov.value),
            }
        )
    out = {"object": ctx.object_json(ctx.x), "surjections": items}
    rows = [(json.dumps(i["surjection"]["map" if "map" in i["surjection"] else "matrix"]), i["indecomposable"], i["omega"]) for i in items]
    return out, rows


def cmd_singular(ctx):
    m = ctx.scene.get("max_size", 3)
    v = nonsingularity_verdict(ctx.backend, ctx.delta, m)
    if v.symbolic:
        out = {"singular_params": [scalar_json(r) for r in v.singular_params]}
        if v.irrational_factors:
            out["irrational_factors"] = [fmt(p) for p in v.irrational_factors]
        if v.identically_zero:
            out["identically_zero"] = True
        rows = [(p,) for p in out["singular_params"]]
        text = "singular parameters: " + ", ".join(str(p) for p in out["singular_params"])
        return out, rows, text
    out = {
        "nonsingular": v.nonsingular,
        "failing": [ctx.backend.morphism_json(e) for e in v.failing],
    }
    return out, [(v.nonsingular,)]


def cmd_endalg(ctx):
    E = end_algebra(ctx.backend, ctx.x, ctx.delta)
    rows = []
    for (i, j), (k, c) in sorted(E.table.items()):
        if c != 0:
            # b_i * b_j = c b_k means b_i after b_j
            rows.append((j, i, k, scalar_json(c)))
    rows.sort()
    header = {
        "object": ctx.object_json(ctx.x),
        "dim": E.dim,
        "scalar": "symbolic" if ctx.delta.symbolic else "rational",
        "associative": check_associativity(E) if E.dim <= 60 else None,
        "product": "row (i, j, k, c) means b_i * b_j = c * b_k, with b_i * b_j = b_i after b_j",
    }
    out = dict(header)
    out["table"] = [list(r) for r in rows]
    return out, rows, None, header


def cmd_radical(ctx):
    rep = radical(ctx.backend, ctx.x, ctx.y, ctx.delta)
    out = {
        "source": ctx.object_json(ctx.x),
        "target": ctx.object_json(ctx.y),
        "hom_dim": rep.hom_dim,
        "radical_dim": rep.radical_dim,
        "basis": [[scalar_json(c) for c in v] for v in rep.basis],
    }
    return out, [(rep.hom_dim, rep.radical_dim)]


def cmd_census(ctx):
    rep = simple_census(ctx.backend, ctx.x, ctx.delta)
    out = {
        "object": ctx.object_json(ctx.x),
        "predicted_blocks": rep.predicted,
        "computed_blocks": rep.computed,
        "block_sizes": rep.blocks.blocks,
        "unsplit": [list(u) for u in rep.blocks.unsplit],
        "subquotients": [[ctx.backend.rank(y), c] for y, c in rep.subquotients],
        "radical_dim": rep.blocks.radical_dim,
        "method": rep.blocks.method,
        "match": rep.match,
    }
    if not rep.match:
        raise ContractViolation(json.dumps(out, sort_keys=True))
    return out, [(rep.predicted, rep.computed, rep.match)]


def cmd_specialize(ctx):
    size = ctx.scene.get("X", 2)
    P = UniformFunctor(ctx.backend, size)
    t_adapted = P.adapted_parameter()
    delta = ctx.delta.at(t_adapted) if ctx.delta.symbolic else ctx.delta
    unif = uniformity_and_adapted_check(P, delta, max_rank=min(ctx.x, 2))
    func = functoriality_check(P, delta, objects=tuple(range(1, min(ctx.x, 2) + 1)))
    pstar = pstar_and_invariants(P, ctx.x)
    interp = interpolation_dim_check(P, ctx.x, ctx.y, delta)
    out = {
        "functor": {"backend": ctx.backend.name, "X": size, "adapted_t": scalar_json(t_adapted)},
        "uniform_adapted": unif.passed,
        "functorial": func.passed,
        "pstar_partition": pstar.partition_ok,
        "pstar_invariants": pstar.invariant_ok,
        "pstar_orbits": pstar.orbit_ok,
        "nonempty_pstar": pstar.nonempty,
        "fullness_rank": fullness_rank(P, ctx.x),
        "interpolation": {
            "hom_dim": interp.hom_dim,
            "radical_dim": interp.radical_dim,
            "orbit_count": interp.orbit_count,
            "match": interp.match,
        },
    }
    mats = []
    for r in ctx.relations():
        m = relation_matrix(P, r)
        mats.append({"relation": ctx.relation_json(r), "matrix": [[scalar_json(c) for c in row] for row in m.to_rows()]})
    if mats:
        out["matrices"] = mats
    rows = []
    for k, mat in enumerate(mats):
        for i, row in enumerate(mat["matrix"]):
            for j, c in enumerate(row):
                if c != 0:
                    rows.append((k, i, j, c))
    if not (unif.passed and func.passed and interp.match):
        raise ContractViolation(json.dumps(out, sort_keys=True))
    return out, rows


def cmd_validate_degree(ctx):
    m = ctx.scene.get("max_size", 3)
    rep = validate_degree_axioms(ctx.delta, ctx.backend, max_rank=m)
    out = {
        "family": ctx.delta.family,
        "passed": rep.passed,
        "checked": rep.checked,
        "failures": [[a, msg] for a, msg in rep.failures[:20]],
    }
    if not rep.passed:
        raise ContractViolation(json.dumps(out, sort_keys=True))
    validated(ctx.delta, ctx.backend, max_rank=m)
    return out, [(k, v) for k, v in sorted(rep.checked.items())]


HANDLERS = {
    "hom": cmd_hom,
    "compose": cmd_compose,
    "gram": cmd_gram,
    "omega": cmd_omega,
    "singular": cmd_singular,
    "endalg": cmd_endalg,
    "radical": cmd_radical,
    "census": cmd_census,
    "specialize": cmd_specialize,
    "validate-degree": cmd_validate_degree,
}


# ----- argument handling -----


def build_parser():
    p = argparse.ArgumentParser(prog="tenv", description="Relations, degree functions and their tensor envelopes.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--scene", help="JSON scene file ('-' for stdin)")
        s.add_argument("--backend", choices=["setop", "vect"])
        s.add_argument("--q", type=int)
        s.add_argument("--size", type=int, help="set size of the object (setop)")
        s.add_argument("--dim", type=int, help="dimension of the object (vect)")
        s.add_argument("--target", type=int, help="second object for hom / radical")
        s.add_argument("--param", help="'t' for symbolic, or a rational such as 3 or 7/2 (t=3 also accepted)")
        s.add_argument("--degree", choices=["setop", "vect", "length", "trivial"])
        s.add_argument("--X", type=int, dest="X", help="|X| (setop) or n (vect) for specialize")
        s.add_argument("--max-size", type=int, dest="max_size")
        s.add_argument("--relation", action="append", default=[], help="relation JSON (repeatable)")
        s.add_argument("--format", choices=["json", "tsv", "text"], default="json")
        s.add_argument("--max-setsize", type=int, dest="max_setsize")
        s.add_argument("--max-qdim", type=int, dest="max_qdim")
        s.add_argument("--max-psize", type=int, dest="max_psize")
    return p


def scene_from_args(args):
    scene = {}
    if args.scene:
        try:
            text = sys.stdin.read() if args.scene == "-" else open(args.scene).read()
        except OSError as exc:
            raise SchemaError(f"cannot read scene: {exc}")
        try:
            scene = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}")
        if not isinstance(scene, dict):
            raise SchemaError("scene must be a JSON object")
    for key in ("backend", "q", "size", "dim", "target", "param", "X", "max_size"):
        v = getattr(args, key)
        if v is not None:
            scene[key] = v
    if args.degree:
        scene["degree"] = {"family": args.degree}
    if args.relation:
        rels = []
        for i, text in enumerate(args.relation):
            try:
                rels.append(json.loads(text))
            except json.JSONDecodeError as exc:
                raise SchemaError(f"invalid relation JSON: {exc}", f"/relations/{i}")
        scene["relations"] = rels
    bounds = {k: getattr(args, k) for k in ("max_setsize", "max_qdim", "max_psize") if getattr(args, k) is not None}
    if bounds:
        scene["bounds"] = {**scene.get("bounds", {}), **bounds}
    if "backend" not in scene:
        scene["backend"] = "setop"
    return scene


def render(result, fmt_name):
    out = result[0]
    rows = result[1] if len(result) > 1 else []
    text = result[2] if len(result) > 2 else None
    header = result[3] if len(result) > 3 else None
    if fmt_name == "json":
        return json.dumps(out, sort_keys=True, indent=2)
    if fmt_name == "tsv":
        lines = []
        if header is not None:
            lines.append("# " + json.dumps(header, sort_keys=True))
        lines.extend("\t".join(str(c) for c in row) for row in rows)
        return "\n".join(lines)
    if text is not None:
        return text
    return "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(out.items()))


def run(argv):
    """Run the CLI; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), "", ""
    try:
        scene = scene_from_args(args)
        ctx = Context(scene)
        result = HANDLERS[args.command](ctx)
        return 0, render(result, args.format), ""
    except SchemaError as exc:
        return 2, "", f"error: {exc}"
    except ResourceBoundError as exc:
        return 3, "", f"resource bound: {exc}"
    except ContractViolation as exc:
        return 4, "", f"check failed: {exc}"


def main(argv=None):
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
