"""JSON-lines records: input parsing, classification/equivalence reports, schema."""
from __future__ import annotations

import json
import math

import numpy as np

from . import __version__
from . import type_a as ta
from . import type_b as tb
from .errors import AffineModuliError
from .tensor_core import DEFAULT_TOL, ChristoffelA, LinearMap2, Tolerances, pullback_a


class RecordError(AffineModuliError):
    """Malformed input record."""


class UsageError(AffineModuliError):
    """Request that is well-formed but not meaningful (e.g. family mismatch)."""


def parse_record(obj, line_no=None) -> dict:
    where = f" (line {line_no})" if line_no is not None else ""
    if not isinstance(obj, dict):
        raise RecordError(f"record must be a JSON object{where}")
    rid = obj.get("id")
    if not isinstance(rid, str) or not rid:
        raise RecordError(f"record needs a non-empty string id{where}")
    fam = obj.get("family", "A")
    if fam not in ("A", "B"):
        raise RecordError(f"family must be 'A' or 'B'{where}")
    g = obj.get("gamma")
    if not isinstance(g, list) or len(g) != 6:
        raise RecordError(f"gamma must be a list of 6 numbers{where}")
    vals = []
    for t in g:
        if isinstance(t, bool) or not isinstance(t, (int, float)) or not math.isfinite(t):
            raise RecordError(f"gamma entries must be finite numbers{where}")
        vals.append(float(t))
    orient = obj.get("orientation", "plus")
    if orient not in ("plus", "minus"):
        raise RecordError(f"orientation must be 'plus' or 'minus'{where}")
    return {"id": rid, "family": fam, "gamma": vals, "orientation": orient}


def tolerance_dict(tol: Tolerances) -> dict:
    return {"zero_tol": tol.zero_tol, "invariant_tol": tol.invariant_tol, "rank_tol": tol.rank_tol}


def _mat(m) -> list:
    return (np.asarray(m, dtype=float) + 0.0).tolist()


def _f(x) -> float:
    return float(x) + 0.0  # normalizes -0.0


def _header(rec, tol):
    return {
        "id": rec["id"],
        "family": rec["family"],
        "orientation": rec["orientation"],
        "gamma": list(rec["gamma"]),
        "status": "ok",
        "tool_version": __version__,
        "tolerances": tolerance_dict(tol),
    }


def map_dict(t: LinearMap2) -> dict:
    return {"matrix": _mat(t.matrix), "det": _f(t.det)}


def gauge_dict(g: tb.GaugeTransform) -> dict:
    b, c = g.effective
    return {"b": _f(g.b), "c": _f(g.c), "flip": g.flip, "effective": [_f(b), _f(c)]}


def canonical_dict(form: ta.CanonicalFormA) -> dict:
    return {
        "variant": form.variant,
        "x": _f(form.x),
        "y": _f(form.y),
        "symbol": [_f(t) for t in form.symbol().as_vector()],
        "witness": map_dict(form.witness),
    }


def _orient_sign(rec):
    return 1.0 if rec["orientation"] == "plus" else -1.0


def classify_a_record(rec, tol: Tolerances = DEFAULT_TOL) -> dict:
    g = ChristoffelA.from_vector(rec["gamma"])
    rd = ta.ricci_type_a(g, tol)
    out = _header(rec, tol)
    out["ricci"] = {"matrix": _mat(rd.matrix), "rank": rd.rank, "signature": rd.signature}
    res = ta.classify_a(g, tol)
    out["membership"] = {"flat": "Flat", "rank1": "Rank1", "rank2": "Rank2"}[res.kind]
    out["rank1"] = None
    out["rank2"] = None
    out["canonical"] = None
    if res.kind == "rank1":
        r = res.invariants
        out["rank1"] = {"alpha": _f(r.alpha), "epsilon": r.epsilon,
                        "is_symmetric": r.is_symmetric, "also_type_b": r.also_type_b}
    elif res.kind == "rank2":
        r = res.invariants
        out["rank2"] = {
            "sig": r.sig,
            "psi3": _f(r.psi3),
            "Psi3": _f(r.Psi3),
            # chi of the oriented surface: the minus orientation negates the volume form
            "chi": _f(_orient_sign(rec) * r.chi),
            "region": r.region,
            "region_tag": {"which": r.region_tag.which, "position": r.region_tag.position},
            "iso_plus": r.iso_plus,
            "iso_full": r.iso_full,
        }
        out["canonical"] = canonical_dict(res.canonical)
    return out


def classify_b_record(rec, tol: Tolerances = DEFAULT_TOL) -> dict:
    C = tb.TypeBSymbol.from_vector(rec["gamma"])
    rep = tb.report_b(C, tol)
    out = _header(rec, tol)
    t = rep.tensors
    out["ricci"] = {"matrix": _mat(rep.ricci.matrix), "rank": rep.ricci.rank,
                    "signature": rep.ricci.signature}
    out["membership"] = rep.membership
    out["kappa"] = rep.kappa
    out["tensors"] = {
        "rho0": _mat(t.rho0), "rho1": _mat(t.rho1), "rho2": _mat(t.rho2),
        "rho3": _mat(t.rho3), "rho4": _mat(t.rho4), "exponents": dict(t.exponents),
    }
    out["amphichiral"] = rep.amphichiral
    out["isotropy"] = None if rep.iso_plus is None else [rep.iso_plus, rep.iso_full]
    out["chart"] = None
    if rep.chart is not None:
        out["chart"] = {"chart": rep.chart.chart, "z": [_f(z) for z in rep.chart.z],
                        "gauge": gauge_dict(rep.chart.gauge)}
    return out


def classify_record(rec, tol: Tolerances = DEFAULT_TOL) -> dict:
    if rec["family"] == "A":
        return classify_a_record(rec, tol)
    return classify_b_record(rec, tol)


def canonical_record(rec, tol: Tolerances = DEFAULT_TOL) -> dict:
    out = {"id": rec["id"], "family": rec["family"], "status": "ok", "tool_version": __version__}
    if rec["family"] == "A":
        g = ChristoffelA.from_vector(rec["gamma"])
        rd = ta.ricci_type_a(g, tol)
        out["canonical"] = canonical_dict(ta.canonicalize(g, tol)) if rd.rank == 2 else None
        out["rank"] = rd.rank
    else:
        C = tb.TypeBSymbol.from_vector(rec["gamma"])
        m = tb.membership_b(C, tol)
        out["membership"] = m
        out["canonical"] = None
        if m == "Z23B":
            ca = tb.chart_assign(C, tol)
            out["canonical"] = {"chart": ca.chart, "z": [_f(z) for z in ca.z],
                                "symbol": [_f(t) for t in tb.pullback_b(C, ca.gauge).as_vector()],
                                "gauge": gauge_dict(ca.gauge)}
    return out


def error_record(rid, exc, kind="record") -> dict:
    return {"id": rid, "status": "error",
            "error": {"kind": kind, "type": type(exc).__name__, "message": str(exc)}}


def _equiv_a(r1, r2, oriented, tol):
    g1 = np.array(r1["gamma"])
    g2 = np.array(r2["gamma"])
    o1, o2 = _orient_sign(r1), _orient_sign(r2)
    pre = np.eye(2)
    if oriented and o1 != o2:
        # compare g1 against the reflected g2 with matching volume forms
        pre = ta.FLIP_Y
    g2r = pullback_a(g2, LinearMap2.from_matrix(pre)).as_vector()
    rk = ta.ricci_type_a(g1, tol).rank
    same = ta.equivalent_a(g1, g2r, oriented, tol)
    witness = None
    if same and rk == 2:
        t = ta.equivalence_witness_a(g1, g2r, oriented, tol)
        if t is not None:
            # pull(g1, t) = pull(g2, pre)  =>  pull(g1, t @ pre^-1) = g2
            witness = map_dict(LinearMap2.from_matrix(t.matrix @ np.linalg.inv(pre)))
    return same, witness


def _equiv_b(r1, r2, oriented, tol):
    C1 = np.array(r1["gamma"])
    C2 = np.array(r2["gamma"])
    pre = None
    if oriented and _orient_sign(r1) != _orient_sign(r2):
        pre = tb.FLIP
        C2 = tb.flip(C2).as_vector()
    g = tb.equivalent_b(C1, C2, oriented, tol)
    if g is None:
        return False, None
    if pre is not None:
        g = g.compose(pre)  # flip is an involution
    return True, gauge_dict(g)


def equiv_record(pair_id, r1, r2, oriented, tol: Tolerances = DEFAULT_TOL) -> dict:
    if r1["family"] != r2["family"]:
        raise UsageError("cannot compare records of different families")
    if r1["family"] == "A":
        same, witness = _equiv_a(r1, r2, oriented, tol)
    else:
        same, witness = _equiv_b(r1, r2, oriented, tol)
    return {
        "id": pair_id,
        "family": r1["family"],
        "first": r1["id"],
        "second": r2["id"],
        "oriented": bool(oriented),
        "status": "ok",
        "verdict": "equivalent" if same else "inequivalent",
        "witness": witness,
        "tool_version": __version__,
        "tolerances": tolerance_dict(tol),
    }


def dumps(rec) -> str:
    return json.dumps(rec, separators=(",", ":"), allow_nan=False)


# --- schema ------------------------------------------------------------

_NUM = {"type": "number"}
_VEC6 = {"type": "array", "items": _NUM, "minItems": 6, "maxItems": 6}
_MAT2 = {"type": "array", "items": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2},
         "minItems": 2, "maxItems": 2}
_TOLS = {"type": "object", "required": ["zero_tol", "invariant_tol", "rank_tol"]}
_MAP = {"type": "object", "required": ["matrix", "det"], "properties": {"matrix": _MAT2, "det": _NUM}}
_GAUGE = {"type": "object", "required": ["b", "c", "flip", "effective"],
          "properties": {"b": _NUM, "c": _NUM, "flip": {"type": "boolean"}}}

INPUT_SCHEMA = {
    "type": "object",
    "required": ["id", "gamma"],
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "family": {"enum": ["A", "B"]},
        "gamma": _VEC6,
        "orientation": {"enum": ["plus", "minus"]},
    },
}

ERROR_SCHEMA = {
    "type": "object",
    "required": ["id", "status", "error"],
    "properties": {"status": {"const": "error"},
                   "error": {"type": "object", "required": ["kind", "type", "message"]}},
}

CLASSIFY_A_SCHEMA = {
    "type": "object",
    "required": ["id", "family", "orientation", "gamma", "status", "tool_version", "tolerances",
                 "ricci", "membership", "rank1", "rank2", "canonical"],
    "properties": {
        "family": {"const": "A"},
        "gamma": _VEC6,
        "tolerances": _TOLS,
        "ricci": {"type": "object", "required": ["matrix", "rank", "signature"],
                  "properties": {"matrix": _MAT2, "rank": {"enum": [0, 1, 2]}}},
        "membership": {"enum": ["Flat", "Rank1", "Rank2"]},
        "rank1": {"oneOf": [{"type": "null"}, {
            "type": "object", "required": ["alpha", "epsilon", "is_symmetric", "also_type_b"],
            "properties": {"epsilon": {"enum": [1, -1]}}}]},
        "rank2": {"oneOf": [{"type": "null"}, {
            "type": "object",
            "required": ["sig", "psi3", "Psi3", "chi", "region", "region_tag", "iso_plus", "iso_full"],
            "properties": {"sig": {"enum": ["plus", "zero", "minus"]},
                           "region": {"enum": ["interior", "boundary", "cusp"]},
                           "iso_plus": {"enum": [1, 3]}, "iso_full": {"enum": [1, 2, 6]}}}]},
        "canonical": {"oneOf": [{"type": "null"}, {
            "type": "object", "required": ["variant", "x", "y", "symbol", "witness"],
            "properties": {"variant": {"enum": ["DefPlus", "DefMinus", "Indef1", "Indef2",
                                                "IndefExceptional"]},
                           "symbol": _VEC6, "witness": _MAP}}]},
    },
}

CLASSIFY_B_SCHEMA = {
    "type": "object",
    "required": ["id", "family", "orientation", "gamma", "status", "tool_version", "tolerances",
                 "ricci", "membership", "kappa", "tensors", "amphichiral", "isotropy", "chart"],
    "properties": {
        "family": {"const": "B"},
        "gamma": _VEC6,
        "membership": {"enum": ["Flat", "KappaFour", "Z23B"]},
        "kappa": {"enum": ["flat", "four", "two_or_three"]},
        "tensors": {"type": "object", "required": ["rho0", "rho1", "rho2", "rho3", "rho4", "exponents"]},
        "chart": {"oneOf": [{"type": "null"}, {
            "type": "object", "required": ["chart", "z", "gauge"],
            "properties": {"chart": {"enum": list(tb.CHARTS)},
                           "z": {"type": "array", "items": _NUM, "minItems": 4, "maxItems": 4},
                           "gauge": _GAUGE}}]},
    },
}

EQUIV_SCHEMA = {
    "type": "object",
    "required": ["id", "family", "first", "second", "oriented", "status", "verdict", "witness"],
    "properties": {"verdict": {"enum": ["equivalent", "inequivalent"]},
                   "witness": {"oneOf": [{"type": "null"}, _MAP, _GAUGE]}},
}

CANON_SCHEMA = {
    "type": "object",
    "required": ["id", "family", "status", "canonical"],
}


def schema_for(kind: str, rec: dict) -> dict:
    if rec.get("status") == "error":
        return ERROR_SCHEMA
    if kind == "classify":
        return CLASSIFY_A_SCHEMA if rec.get("family") == "A" else CLASSIFY_B_SCHEMA
    return {"equiv": EQUIV_SCHEMA, "canon": CANON_SCHEMA, "sample": INPUT_SCHEMA}[kind]
