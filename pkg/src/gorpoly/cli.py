"""Command line interface: ``gorpoly analyze|hvector|reduce|triangulate|lift|corpus``.

Exit codes: 0 success, 2 bad input, 3 a verification that should never
fail did fail.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cone import monoid_of_polytope
from .ehrhart import boundary_h_vector, ehrhart_data, h_vector, interior_h_numerator
from .errors import InputError, VerificationError
from .gorenstein import reduce_polytope
from .io import (
    complete_weights,
    corpus_names,
    format_polytope,
    format_rational,
    read_polytope,
    read_weights,
    resolve_input,
)
from .lifting import lift_polytope
from .report import analyze, exit_code, render_text, to_json
from .triangulation import build_triangulations, default_weights, regular_subdivision

EXIT_INPUT = 2
EXIT_VERIFICATION = 3


def _load(arg: str):
    return read_polytope(resolve_input(arg))


def _weights(P, path):
    """Weights for the lattice points of P from ``path`` (or pulling weights)."""
    pts = P.lattice_points(1)
    if path is None:
        return default_weights(P), []
    raw = read_weights(resolve_input(path, suffix=".weights"), P.ambient_dim)
    return complete_weights(raw, pts)


def _missing_note(missing) -> list[str]:
    if not missing:
        return []
    pts = ", ".join("(" + " ".join(str(x) for x in p) + ")" for p in missing)
    return [f"# {len(missing)} lattice points without a weight, set to 0: {pts}"]


def _emit(text: str, out: str = None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    P = _load(args.file)
    w, missing, source = None, None, None
    if args.weights:
        w, missing = _weights(P, args.weights)
        source = "file"
    elif args.pulling:
        source = "pulling"
    report = analyze(
        P,
        max_dilate=args.max_dilate,
        weights=w,
        weights_missing=missing,
        weights_source=source,
        timings=args.timings,
        samples=args.samples,
    )
    if args.json:
        Path(args.json).write_text(to_json(report))
    sys.stdout.write(render_text(report))
    return exit_code(report)


def cmd_hvector(args) -> int:
    P = _load(args.file)
    data = ehrhart_data(P)
    res = {"h": list(h_vector(P, data)), "counts": list(data.counts)}
    if args.interior:
        res["h_interior"] = list(interior_h_numerator(P, data))
        res["interior_counts"] = list(data.interior)
    if args.boundary:
        res["h_boundary"] = list(boundary_h_vector(P, data))
        res["boundary_counts"] = list(data.boundary)
    if args.json:
        sys.stdout.write(json.dumps(res, indent=2) + "\n")
    else:
        for key in ("h", "h_interior", "h_boundary", "counts", "interior_counts", "boundary_counts"):
            if key in res:
                sys.stdout.write(f"{key} = {' '.join(str(x) for x in res[key])}\n")
    return 0


def cmd_reduce(args) -> int:
    P = _load(args.file)
    R = reduce_polytope(P, monoid_of_polytope(P))
    notes = [
        f"reduction of {P.name or 'polytope'}: m = {R.certificate.m}",
        "interior point " + " ".join(str(x) for x in R.interior_point),
        "h = " + " ".join(str(x) for x in R.h_Q),
    ]
    _emit(format_polytope(R.Q, notes), args.output)
    return 0


def _format_triangulation(T, title: str, extra=()) -> str:
    out = [f"# {title}"] + list(extra)
    out.append(f"points {len(T.points)}")
    out.extend(f"{i}: {' '.join(str(x) for x in p)}" for i, p in enumerate(T.points))
    out.append(f"cells {len(T.cells)}")
    out.extend(" ".join(str(i) for i in c) for c in T.cells)
    return "\n".join(out) + "\n"


def cmd_triangulate(args) -> int:
    P = _load(args.file)
    w, missing = _weights(P, args.weights)
    if args.stage == "xi":
        T = regular_subdivision(P.lattice_points(1), w)
    else:
        R = reduce_polytope(P, monoid_of_polytope(P))
        chain = build_triangulations(P, R, weights=w, samples=args.samples)
        T = {"delta1": chain.delta1, "delta1-prime": chain.delta1_prime, "boundary": chain.boundary}[args.stage]
    verdict = f"simplicial {'yes' if T.is_simplicial else 'no'}"
    if T.is_simplicial:
        verdict += f", unimodular {'yes' if T.is_unimodular() else 'no'}"
    title = f"{args.stage} of {P.name or 'polytope'}: {len(T.cells)} cells, {verdict}"
    sys.stdout.write(_format_triangulation(T, title, _missing_note(missing)))
    return 0


def cmd_lift(args) -> int:
    P = _load(args.file)
    w, missing = _weights(P, args.weights)
    cs = lift_polytope(P, w)
    out = [
        f"# P' over {P.name or 'polytope'}: {len(cs.vertices)} vertices, {len(cs.facets)} facets, "
        f"simplicial {'yes' if cs.simplicial else 'no'}, boundary complex matches: {'yes' if cs.equivalent else 'no'}"
    ]
    out += _missing_note(missing)
    x, z = cs.apex
    out.append("# apex " + " ".join(format_rational(v) for v in tuple(x) + (z,)))
    out.append(f"vertices {len(cs.vertices)}")
    for v in cs.vertices:
        out.append(" ".join(format_rational(c) for c in v))
    out.append(f"facets {len([f for f in cs.facets if f])}")
    out.extend(" ".join(str(i) for i in f) for f in cs.facets if f)
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def cmd_corpus(args) -> int:
    for name in corpus_names():
        P = _load(name)
        sys.stdout.write(f"{name}: dim {P.dim} in Z^{P.ambient_dim}, {len(P.vertices)} vertices\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gorpoly", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the whole pipeline on a polytope file")
    a.add_argument("file", help="polytope file or corpus name")
    a.add_argument("--max-dilate", type=int, default=None, help="count lattice points up to this dilation")
    g = a.add_mutually_exclusive_group()
    g.add_argument("--weights", help="weights file for the triangulation stages")
    g.add_argument("--pulling", action="store_true", help="triangulation stages with pulling weights")
    a.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    a.add_argument("--timings", action="store_true", help="record wall time per stage")
    a.add_argument("--samples", type=int, default=1000, help="points located when checking the cover of Delta")
    a.set_defaults(func=cmd_analyze)

    h = sub.add_parser("hvector", help="Ehrhart h-vectors")
    h.add_argument("file")
    h.add_argument("--interior", action="store_true")
    h.add_argument("--boundary", action="store_true")
    h.add_argument("--json", action="store_true", help="print JSON instead of text")
    h.set_defaults(func=cmd_hvector)

    r = sub.add_parser("reduce", help="write the reduced polytope Q")
    r.add_argument("file")
    r.add_argument("-o", "--output", help="write Q here instead of stdout")
    r.set_defaults(func=cmd_reduce)

    t = sub.add_parser("triangulate", help="print a triangulation as cell index lists")
    t.add_argument("file")
    t.add_argument("--weights", help="weights file (default: pulling weights)")
    t.add_argument("--stage", choices=["xi", "delta1", "delta1-prime", "boundary"], default="xi")
    t.add_argument("--samples", type=int, default=1000)
    t.set_defaults(func=cmd_triangulate)

    li = sub.add_parser("lift", help="simplicial polytope P' over a regular triangulation")
    li.add_argument("file")
    li.add_argument("--weights", help="weights file (default: pulling weights)")
    li.set_defaults(func=cmd_lift)

    c = sub.add_parser("corpus", help="list the bundled polytopes")
    c.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
