"""Command-line interface.

Exit codes: 0 success, 2 unreadable input, 3 enumeration cap exceeded,
4 internal consistency failure.
"""

import argparse
import json
import sys

import numpy as np

from . import documents
from .classify import classify, homogeneous_census
from .errors import CapExceededError, ConsistencyError, DocumentError, EmptyInputError
from .rootsystem import DEFAULT_MAX_GROUP, catalog
from .vectorset import DEFAULT_MAX_CHAMBERS, DEFAULT_TOL, ToleranceContext
from .zonotope import (
    Zonotope,
    export_mesh,
    faces_from_flats,
    normalize,
    project_along,
    vertices,
)

EXIT_PARSE, EXIT_CAP, EXIT_CONSISTENCY = 2, 3, 4


def _tol(args):
    return ToleranceContext(args.tol_abs, args.tol_rel)


def _load(args):
    tol = _tol(args)
    if args.catalog:
        try:
            return catalog(args.catalog, tol=tol), {"catalog": args.catalog}
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
    if not args.input:
        raise DocumentError("give an input document or --catalog LABEL")
    overrides = tol if (args.tol_abs, args.tol_rel) != (DEFAULT_TOL.eps_abs, DEFAULT_TOL.eps_rel) else None
    return documents.load_document(args.input, overrides)


def _emit(args, obj):
    text = documents.dumps(obj)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args):
    R, meta = _load(args)
    verdict = classify(R, max_chambers=args.max_chambers, max_group=args.max_group)
    out = verdict.to_dict()
    out["metadata"] = meta
    _emit(args, out)
    types = ", ".join(t.label for t in verdict.permutahedron_types) or "-"
    print(
        f"vertex-transitive: {verdict.vertex_transitive} ({verdict.vt_mode}); "
        f"root system: {verdict.root_system.is_root_system}; "
        f"homogeneous: {verdict.homogeneous}; inscribed: {verdict.inscribed['value']}; types: {types}",
        file=sys.stderr,
    )
    if not verdict.equivalences_consistent:
        print("equivalence check FAILED", file=sys.stderr)
        return EXIT_CONSISTENCY
    return 0


def cmd_vertices(args):
    R, _ = _load(args)
    Z = Zonotope(R, args.max_chambers)
    verts = vertices(Z)
    _emit(args, {"dimension": R.dim, "count": len(verts), "vertices": verts.tolist()})
    return 0


def cmd_faces(args):
    R, _ = _load(args)
    Z = Zonotope(R, args.max_chambers)
    faces = faces_from_flats(Z, args.rank, all_translates=args.all)
    out = []
    for f in faces:
        out.append({
            "face_dim": f.face_dim,
            "r_plus": list(f.r_plus),
            "r_zero": f.r_zero.indices,
            "translate": f.translate.tolist(),
            "vertices": f.vertices().tolist(),
        })
    _emit(args, {"dimension": R.dim, "rank": args.rank, "count": len(out), "faces": out})
    return 0


def cmd_project(args):
    R, meta = _load(args)
    Z = Zonotope(R, args.max_chambers)
    if args.along is not None:
        r = np.array([float(x) for x in args.along.split(",")])
    else:
        r = R.vectors[args.along_generator]
    P = project_along(Z, r)
    meta = dict(meta, projected_along=",".join(f"{x:.12g}" for x in r))
    _emit(args, documents.to_document(P.gens, meta))
    return 0


def cmd_normalize(args):
    R, meta = _load(args)
    _emit(args, documents.to_document(normalize(Zonotope(R)).gens, meta))
    return 0


def cmd_mesh(args):
    R, _ = _load(args)
    nv, nf = export_mesh(Zonotope(R, args.max_chambers), args.mesh_output)
    print(f"wrote {args.mesh_output}: {nv} vertices, {nf} faces", file=sys.stderr)
    return 0


def cmd_catalog(args):
    R = catalog(args.label, tol=_tol(args))
    _emit(args, documents.to_document(R, {"catalog": args.label}))
    return 0


def cmd_table(args):
    census = homogeneous_census(range(args.min_dim, args.max_dim + 1))
    counts = {d: len(groups) for d, groups in census.items()}
    for d, groups in census.items():
        names = ", ".join("=".join(g) for g in groups)
        print(f"d={d}: {counts[d]}  ({names})", file=sys.stderr)
    _emit(args, {"counts": {str(d): c for d, c in counts.items()},
                 "types": {str(d): g for d, g in census.items()}})
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-abs", type=float, default=DEFAULT_TOL.eps_abs)
    common.add_argument("--tol-rel", type=float, default=DEFAULT_TOL.eps_rel)
    common.add_argument("--max-chambers", type=int, default=DEFAULT_MAX_CHAMBERS)
    common.add_argument("--max-group", type=int, default=DEFAULT_MAX_GROUP)
    common.add_argument("-o", "--output", help="write JSON here instead of stdout")

    source = argparse.ArgumentParser(add_help=False, parents=[common])
    source.add_argument("input", nargs="?", help="JSON vector-set document")
    source.add_argument("--catalog", metavar="LABEL", help="catalog root system, e.g. B:3 or I2:6:orbit=1,2")

    parser = argparse.ArgumentParser(prog="zonoclass", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[source], help="vertex-transitivity verdict")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("vertices", parents=[source], help="list zonotope vertices")
    p.set_defaults(func=cmd_vertices)
    p = sub.add_parser("faces", parents=[source], help="faces for the flats of one rank")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--all", action="store_true", help="every parallel copy, not one per flat")
    p.set_defaults(func=cmd_faces)
    p = sub.add_parser("project", parents=[source], help="project along a direction")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--along-generator", type=int, metavar="INDEX")
    g.add_argument("--along", metavar="X,Y,...")
    p.set_defaults(func=cmd_project)
    p = sub.add_parser("normalize", parents=[source], help="replace generators by unit vectors")
    p.set_defaults(func=cmd_normalize)
    p = sub.add_parser("mesh", parents=[source], help="write an OBJ mesh (d = 2 or 3)")
    p.add_argument("mesh_output", metavar="OUT.obj")
    p.set_defaults(func=cmd_mesh)
    p = sub.add_parser("catalog", parents=[common], help="emit a catalog root system")
    p.add_argument("label")
    p.set_defaults(func=cmd_catalog)
    p = sub.add_parser("table", parents=[common], help="count irreducible homogeneous zonotopes")
    p.add_argument("--min-dim", type=int, default=3)
    p.add_argument("--max-dim", type=int, default=8)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, EmptyInputError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    raise SystemExit(main())
