"""Report documents: one germ in, one serialisable analysis out.

This is plumbing: every number in a document is computed by a module
operation elsewhere, assembled here into plain dictionaries whose JSON
form is deterministic (sorted keys, rationals as ``p/q`` strings, no
floats anywhere).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from . import __version__
from .doublepoint import InconsistencyError
from .exactpoly import MPoly, is_associate
from .germs import MapGerm
from .imagefit import image_equation, presentation_matrix, triple_point_oracle
from .invariants import InvariantReport, full_report
from .transversal import SliceData, slice_for_report

DEFAULT_MAX_ORDER = 64


def encode_number(value) -> Any:
    if value is None:
        return None
    if isinstance(value, bool) or isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    raise TypeError(f"cannot encode {value!r}")


@dataclass
class AnalysisResult:
    """Everything computed for one germ, pre-serialisation."""

    report: InvariantReport
    slice_data: SliceData | None
    image_eq: MPoly | None
    image_reduced: bool | None
    presentation_size: int | None
    det_matches_resultant: bool | None
    triple_oracle: int | None        # None: not applicable; -1: not finite
    inconsistencies: list[str]
    notes: list[str]


def analyze(f: MapGerm, seed: int = 0, max_order: int = DEFAULT_MAX_ORDER,
            with_image: bool = True) -> AnalysisResult:
    """Full pipeline: invariants, image equation and Fitting data where
    applicable, slice identities where applicable."""
    rep = full_report(f, seed=seed, max_order=max_order)
    inconsistencies = list(rep.inconsistencies)
    notes = list(rep.notes)

    image_eq = None
    image_reduced = None
    presentation_size = None
    det_ok = None
    triple: int | None = None
    if with_image and rep.corank <= 1 and f.f1 == MPoly.var(f.vars, f.vars[0]):
        try:
            ie = image_equation(f)
            image_eq, image_reduced = ie.poly, ie.reduced
            if not ie.reduced:
                notes.append("image equation had repeated factors; squarefree part reported")
        except ValueError as exc:
            notes.append(f"image equation unavailable: {exc}")
        pm = presentation_matrix(f)
        if pm is not None:
            presentation_size = pm.size
            if image_eq is not None and image_reduced:
                det_ok = is_associate(pm.det(), image_eq)
                if not det_ok:
                    inconsistencies.append(
                        "presentation determinant is not an associate of the "
                        "eliminated image equation")
            t_res = triple_point_oracle(f, max_order=max_order)
            if t_res is not None:
                triple = t_res.value if t_res.finite else -1
                if t_res.finite and rep.finitely_determined and rep.T_formula is not None:
                    if rep.T_formula != t_res.value:
                        inconsistencies.append(
                            f"triple points: formula {rep.T_formula} != "
                            f"Fitting colength {t_res.value}")
                elif not t_res.finite and rep.finitely_determined:
                    inconsistencies.append("triple-point ideal has infinite colength "
                                           "despite finite determinacy")
        if image_eq is not None and rep.finitely_determined and rep.m_formula is not None:
            if Fraction(image_eq.order_at_origin()) != rep.m_formula:
                inconsistencies.append(
                    f"image equation order {image_eq.order_at_origin()} != "
                    f"multiplicity formula {rep.m_formula}")

    slice_data = None
    try:
        slice_data = slice_for_report(rep, seed=seed, max_order=max_order)
    except InconsistencyError as exc:
        inconsistencies.append(str(exc))
    except ValueError as exc:
        notes.append(f"slice analysis unavailable: {exc}")
    if slice_data is not None:
        inconsistencies.extend(slice_data.inconsistencies)

    return AnalysisResult(report=rep, slice_data=slice_data,
                          image_eq=image_eq, image_reduced=image_reduced,
                          presentation_size=presentation_size,
                          det_matches_resultant=det_ok,
                          triple_oracle=triple,
                          inconsistencies=inconsistencies, notes=notes)


def document(result: AnalysisResult, seed: int, max_order: int) -> dict:
    """Serialisable report document (stable key order, exact numbers)."""
    rep = result.report
    f = rep.germ
    doc: dict[str, Any] = {
        "germ": {
            "label": f.label,
            "vars": list(f.vars),
            "map": [str(c) for c in f.components],
        },
        "corank": rep.corank,
        "qh_type": None,
        "fd": rep.verdict.value,
        "lambda": str(rep.lam) if rep.lam is not None else None,
        "branches": [],
        "invariants": {
            "C": encode_number(rep.C_formula),
            "C_oracle": rep.C_oracle.value if rep.C_oracle else None,
            "T": encode_number(rep.T_formula),
            "ae_codim": encode_number(rep.ae),
            "mu_D": rep.mu_d,
            "r_i": rep.r_i,
            "r_f": rep.r_f,
            "m_image": encode_number(rep.m_formula),
            "m_image_direct": rep.m_direct.value if rep.m_direct else None,
            "s_vector": list(rep.svec.as_tuple()) if rep.svec else None,
            "fold_plane": rep.fold_plane,
        },
        "image": {
            "equation": str(result.image_eq) if result.image_eq is not None else None,
            "reduced": result.image_reduced,
            "presentation_size": result.presentation_size,
            "det_matches_resultant": result.det_matches_resultant,
            "triple_point_oracle": result.triple_oracle,
        },
        "slice": None,
        "inconsistencies": list(result.inconsistencies),
        "notes": list(result.notes),
        "version": __version__,
        "seed": seed,
        "max_colength": max_order,
    }
    if rep.qh_type is not None:
        qh = rep.qh_type
        doc["qh_type"] = {
            "degrees": list(qh.degrees),
            "weights": list(qh.weights),
            "delta": encode_number(qh.delta),
            "epsilon": qh.epsilon,
        }
    if rep.branches is not None:
        for br in rep.branches.branches:
            doc["branches"].append({
                "kind": br.kind.value,
                "factor": str(br.factor),
                "class_poly": str(br.class_poly) if br.class_poly is not None else None,
                "classification": br.classification.value,
                "count": br.count,
                "restriction_degree": br.degree,
                "slice_order": br.min_order,
            })
    if result.slice_data is not None:
        sd = result.slice_data
        doc["slice"] = {
            "plane": sd.plane.describe(),
            "plane_coeffs": [encode_number(c) for c in sd.plane.coeffs],
            "mu_gamma": sd.mu_gamma,
            "m_fD": sd.m_fd,
            "i_D_gamma": sd.i_d_gamma,
            "mu_W": sd.mu_w,
            "mu_W_oracle": sd.mu_w_oracle,
            "transversal": sd.transversal,
            "checks": list(sd.plane.checks),
        }
    return doc


def to_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def render_text(doc: dict) -> str:
    """Human-readable rendering of a report document."""
    lines: list[str] = []
    g = doc["germ"]
    label = g["label"] or "germ"
    lines.append(f"{label}: ({', '.join(g['map'])})")
    if doc["qh_type"]:
        t = doc["qh_type"]
        d = ",".join(str(x) for x in t["degrees"])
        w = ",".join(str(x) for x in t["weights"])
        lines.append(f"  quasihomogeneous of type ({d}; {w})   "
                     f"delta={t['delta']} epsilon={t['epsilon']}")
    else:
        lines.append("  not quasihomogeneous")
    lines.append(f"  corank {doc['corank']}, verdict: {doc['fd']}")
    if doc["lambda"] is not None:
        lines.append(f"  double point curve: {doc['lambda']}")
    if doc["branches"]:
        lines.append("  branches:")
        for br in doc["branches"]:
            extra = f" ({br['class_poly']})" if br["class_poly"] else ""
            lines.append(f"    {br['kind']:7s} {br['factor']}{extra} "
                         f"x{br['count']}: {br['classification']}")
    inv = doc["invariants"]
    shown = [(k, inv[k]) for k in ("C", "T", "ae_codim", "mu_D", "r_i", "r_f",
                                   "m_image", "m_image_direct", "fold_plane")
             if inv[k] is not None]
    if shown:
        lines.append("  invariants: " + "  ".join(f"{k}={v}" for k, v in shown))
    if inv["s_vector"]:
        lines.append(f"  s-vector: {tuple(inv['s_vector'])}")
    img = doc["image"]
    if img["equation"]:
        lines.append(f"  image equation: {img['equation']}")
        if img["triple_point_oracle"] is not None:
            t_o = img["triple_point_oracle"]
            lines.append(f"  triple-point colength: {'infinite' if t_o == -1 else t_o}")
    if doc["slice"]:
        s = doc["slice"]
        lines.append(f"  slice: plane {s['plane']}  mu_gamma={s['mu_gamma']}  "
                     f"m(f(D))={s['m_fD']}  i(D,gamma)={s['i_D_gamma']}  mu_W={s['mu_W']}")
    for n in doc["notes"]:
        lines.append(f"  note: {n}")
    for inc in doc["inconsistencies"]:
        lines.append(f"  INCONSISTENCY: {inc}")
    return "\n".join(lines)
