"""End-to-end analysis of a polytope as a deterministic report.

The report is a plain dict (JSON-ready; rationals become ``"p/q"``
strings) and renders to text with :func:`render_text`.  Stages run in a
fixed order; the first stage that raises stops the run and is recorded
under ``failure``.
"""
from __future__ import annotations

import json
import time
from fractions import Fraction
from importlib import resources
from typing import Optional

from .complexes import g_vector, h_vector_complex, is_m_sequence
from .cone import is_integrally_closed, monoid_of_polytope
from .ehrhart import (
    boundary_h_vector,
    ehrhart_data,
    h_vector,
    interior_h_numerator,
    is_symmetric,
    is_unimodal,
)
from .errors import InputError, VerificationError
from .gorenstein import gorenstein_certificate, reduce_polytope
from .io import format_rational
from .lifting import lift_polytope
from .polytope import VPolytope
from .triangulation import WeightVector, build_triangulations

__all__ = ["SCHEMA_VERSION", "analyze", "render_text", "to_json", "load_schema", "exit_code"]

SCHEMA_VERSION = "1.0"


def _vec(v) -> list:
    return [format_rational(x) if isinstance(x, Fraction) and x.denominator != 1 else int(x) for x in v]


def _cells(T) -> list:
    return [[list(T.points[i]) for i in c] for c in T.cells]


class _Runner:
    def __init__(self, report: dict, timings: bool):
        self.report = report
        self.timings = timings
        if timings:
            report["timings"] = {}

    def run(self, stage: str, fn):
        if self.report["failure"] is not None:
            return None
        start = time.perf_counter()
        try:
            return fn()
        except (InputError, VerificationError, ValueError) as exc:
            kind = "verification" if isinstance(exc, VerificationError) else "input"
            self.report["failure"] = {
                "stage": stage,
                "kind": kind,
                "check": getattr(exc, "check", None),
                "message": str(exc),
            }
            return None
        finally:
            if self.timings:
                self.report["timings"][stage] = round(time.perf_counter() - start, 6)


def analyze(
    P: VPolytope,
    max_dilate: Optional[int] = None,
    weights: Optional[WeightVector] = None,
    weights_missing: Optional[list] = None,
    weights_source: Optional[str] = None,
    timings: bool = False,
    samples: int = 1000,
) -> dict:
    """Run every stage on ``P``; with ``weights_source`` also the triangulation chain.

    ``weights_source`` is ``"file"`` (use ``weights``) or ``"pulling"``.
    """
    report = {
        "schema_version": SCHEMA_VERSION,
        "name": P.name or "polytope",
        "ambient_dim": P.ambient_dim,
        "dim": P.dim,
        "vertices": [list(v) for v in P.vertices],
        "facets": None,
        "equations": None,
        "ehrhart": None,
        "integrally_closed": None,
        "gorenstein": None,
        "reduction": None,
        "g_theorem": None,
        "triangulation": None,
        "failure": None,
    }
    run = _Runner(report, timings).run

    def dual():
        h = P.hrep
        report["facets"] = len(h.inequalities)
        report["equations"] = len(h.equations)

    run("dual-description", dual)

    def ehrhart():
        top = max(P.dim + 1, max_dilate or 0)
        data = ehrhart_data(P, upto=top)
        hP = h_vector(P, data)
        report["ehrhart"] = {
            "counts": list(data.counts),
            "interior_counts": list(data.interior),
            "h_vector": list(hP),
            "h_interior": list(interior_h_numerator(P, data)),
            "h_boundary": list(boundary_h_vector(P, data)),
            "symmetric": is_symmetric(hP),
            "unimodal": is_unimodal(hP),
        }
        return hP

    hP = run("ehrhart", ehrhart)

    def closure():
        M = monoid_of_polytope(P)
        res = is_integrally_closed(P, M)
        report["integrally_closed"] = {
            "closed": res.closed,
            "witness": list(res.witness) if res.witness else None,
            "hilbert_basis_size": len(M.hilbert_basis),
        }
        return M

    M = run("integral-closure", closure)

    def gorenstein():
        if not report["integrally_closed"]["closed"]:
            report["gorenstein"] = {"gorenstein": None, "reason": "not integrally closed"}
            return None
        cert = gorenstein_certificate(M)
        if cert is None:
            report["gorenstein"] = {"gorenstein": False}
            return None
        report["gorenstein"] = {
            "gorenstein": True,
            "y": list(cert.y),
            "m": cert.m,
            "decomposition": [list(y) for y in cert.decomposition],
            "support_partition": [sorted(s) for s in cert.support_partition],
            "k": list(cert.k),
        }
        return cert

    cert = run("gorenstein", gorenstein)

    def reduction():
        R = reduce_polytope(P, M, cert)
        report["reduction"] = {
            "status": "ok",
            "Q_dim": R.Q.dim,
            "Q_vertices": [list(v) for v in sorted(R.Q.vertices)],
            "projection": [list(r) for r in R.projection],
            "kernel_basis": [list(r) for r in R.kernel_basis],
            "interior_point": list(R.interior_point),
            "h_Q": list(R.h_Q),
            "h_boundary_Q": list(R.h_boundary_Q),
        }
        return R

    R = None
    if cert is not None:
        R = run("reduction", reduction)
    elif report["failure"] is None:
        report["reduction"] = {"status": "skipped", "reason": "not Gorenstein"}

    def g_theorem():
        if not report["ehrhart"]["symmetric"]:
            report["g_theorem"] = {"g_vector": None, "m_sequence": None, "reason": "h-vector not symmetric"}
            return
        g = g_vector(hP)
        report["g_theorem"] = {"g_vector": list(g.entries), "m_sequence": is_m_sequence(g.entries)}

    run("g-theorem", g_theorem)

    if weights_source is not None and R is not None:

        def triangulate():
            w = weights if weights_source == "file" else None
            T = build_triangulations(P, R, weights=w, samples=samples)
            cs = lift_polytope(R.Q, T.q_weights)
            hb = h_vector_complex(cs.complex)
            report["triangulation"] = {
                "weights": weights_source,
                "weights_missing": [list(p) for p in (weights_missing or [])],
                "xi_cells": _cells(T.xi),
                "regular_unimodular": True,
                "gamma_cells": _cells(T.gamma.sigma),
                "delta_cells": len(T.delta.cells),
                "delta_cover_samples": T.delta.report.cover_samples,
                "delta_unimodular": T.delta.report.unimodular,
                "delta1_cells": _cells(T.delta1),
                "modified_weights": {
                    " ".join(str(x) for x in p): format_rational(v) for p, v in sorted(T.modified_weights.items())
                },
                "modified_weights_induce_delta1": True,
                "delta_prime_unimodular": T.delta_prime.report.unimodular,
                "delta1_prime_cells": _cells(T.delta1_prime),
                "lift": {
                    "vertices": [_vec(v) for v in cs.vertices],
                    "facets": [list(f) for f in cs.facets],
                    "simplicial": cs.simplicial,
                    "equivalent": cs.equivalent,
                    "boundary_h": list(hb),
                    "h_matches": list(hb) == list(hP),
                },
            }

        run("triangulation", triangulate)
    elif weights_source is not None and report["failure"] is None:
        report["triangulation"] = {"weights": weights_source, "skipped": "no reduction"}
    return report


def exit_code(report: dict) -> int:
    f = report.get("failure")
    if f is None:
        return 0
    return 3 if f["kind"] == "verification" else 2


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def load_schema() -> dict:
    return json.loads((resources.files("gorpoly") / "schema" / "report.schema.json").read_text())


def _join(v) -> str:
    return " ".join(str(x) for x in v)


def _yes(b) -> str:
    return "yes" if b else "no"


def render_text(report: dict) -> str:
    out = [f"polytope {report['name']}: dim {report['dim']} in Z^{report['ambient_dim']}, {len(report['vertices'])} vertices"]
    if report["facets"] is not None:
        out.append(f"facets {report['facets']}, affine equations {report['equations']}")
    e = report["ehrhart"]
    if e:
        out.append(f"E(P,m) m=0..{len(e['counts']) - 1}: {_join(e['counts'])}")
        out.append(f"h = {_join(e['h_vector'])}")
        out.append(f"h_interior = {_join(e['h_interior'])}")
        out.append(f"h_boundary = {_join(e['h_boundary'])}")
        out.append(f"symmetric {_yes(e['symmetric'])}, unimodal {_yes(e['unimodal'])}")
    ic = report["integrally_closed"]
    if ic:
        line = f"integrally closed: {_yes(ic['closed'])}"
        if ic["witness"]:
            line += f" (Hilbert basis element {tuple(ic['witness'])})"
        out.append(line)
    g = report["gorenstein"]
    if g:
        if g["gorenstein"] is None:
            out.append(f"gorenstein: undecided ({g['reason']})")
        elif not g["gorenstein"]:
            out.append("gorenstein: no")
        else:
            out.append(f"gorenstein: yes, y = {tuple(g['y'])}, m = {g['m']}")
            for i, (y, s) in enumerate(zip(g["decomposition"], g["support_partition"]), start=1):
                out.append(f"  y_{i} = {tuple(y)}  support {{{', '.join(str(j) for j in s)}}}")
    r = report["reduction"]
    if r:
        if r["status"] != "ok":
            out.append(f"reduction: skipped ({r['reason']})")
        else:
            verts = " ".join("(" + ", ".join(str(x) for x in v) + ")" for v in r["Q_vertices"])
            out.append(f"reduction: Q of dim {r['Q_dim']} with vertices {verts}")
            out.append(f"  interior point {tuple(r['interior_point'])}, h(Q) = {_join(r['h_Q'])}, h(boundary Q) = {_join(r['h_boundary_Q'])}")
    gt = report["g_theorem"]
    if gt:
        if gt["g_vector"] is None:
            out.append(f"g-vector: undefined ({gt['reason']})")
        else:
            out.append(f"g = {_join(gt['g_vector'])}, M-sequence: {_yes(gt['m_sequence'])}")
    t = report["triangulation"]
    if t:
        if "skipped" in t:
            out.append(f"triangulation: skipped ({t['skipped']})")
        else:
            if t["weights_missing"]:
                out.append(f"weights: {len(t['weights_missing'])} lattice points without a weight, set to 0")
            out.append(f"triangulation ({t['weights']} weights): {len(t['xi_cells'])} cells, regular unimodular")
            out.append(f"  Delta: {t['delta_cells']} cones, cover checked on {t['delta_cover_samples']} points, unimodular {_yes(t['delta_unimodular'])}")
            out.append(f"  Delta_1: {len(t['delta1_cells'])} simplices, induced by modified weights {_yes(t['modified_weights_induce_delta1'])}")
            out.append(f"  Delta'_1: {len(t['delta1_prime_cells'])} simplices on Q, Delta' unimodular {_yes(t['delta_prime_unimodular'])}")
            lift = t["lift"]
            out.append(
                f"  P': {len(lift['vertices'])} vertices, {len(lift['facets'])} facets, simplicial {_yes(lift['simplicial'])}, "
                f"boundary h = {_join(lift['boundary_h'])} (matches h: {_yes(lift['h_matches'])})"
            )
    f = report["failure"]
    if f:
        out.append(f"FAILED at stage {f['stage']}: {f['message']}")
    if "timings" in report:
        out.append("timings: " + ", ".join(f"{k} {v:.3f}s" for k, v in report["timings"].items()))
    return "\n".join(out) + "\n"
