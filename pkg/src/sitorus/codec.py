"""JSON encodings for matrices, polynomials, tuples, measures and reports.

Exact numbers travel as decimal strings (``"-3"``, ``"2/7"``); float
diagnostics are plain JSON numbers. Every ``decode_*`` accepts what the
matching ``encode_*`` produces.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .arith import parse_rational
from .criteria import CriterionReport, DensityEstimate, DensitySet, FolnerFamily, PairRecord
from .exact import FpMatrix, RatMatrix
from .irreducible import IrredVerdict, ModPFactorization
from .polynomial import FpPoly, IntPoly
from .rigidity import AuditReport
from .strong import CertReport, ComplexWitness, MatrixTuple
from .torus import Atomic, Lebesgue, OrbitRecord, TorusMeasure, TorusPoint

__all__ = [
    "CodecError",
    "decode_matrix",
    "decode_measure",
    "decode_poly",
    "decode_tuple",
    "decode_freq",
    "decode_point",
    "dumps",
    "encode_matrix",
    "encode_measure",
    "encode_poly",
    "encode_tuple",
]


class CodecError(ValueError):
    """Input JSON does not have the expected shape."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def _s(x) -> str:
    return str(Fraction(x)) if not isinstance(x, int) else str(x)


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise CodecError(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise CodecError(f"field {key!r} has the wrong type")
    return val


def _rat(x) -> Fraction:
    if isinstance(x, bool):
        raise CodecError("booleans are not numbers")
    if isinstance(x, int):
        return Fraction(x)
    if not isinstance(x, str):
        raise CodecError(f"exact numbers must be strings, got {x!r}")
    try:
        return parse_rational(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise CodecError(str(exc)) from None


def _int(x) -> int:
    r = _rat(x)
    if r.denominator != 1:
        raise CodecError(f"expected an integer, got {x!r}")
    return r.numerator


decode_int = _int


# -- matrices, polynomials, tuples -----------------------------------------

def encode_matrix(M: RatMatrix | FpMatrix) -> dict:
    out = {"n": M.n, "entries": [[_s(x) for x in row] for row in M.rows]}
    if isinstance(M, FpMatrix):
        out.update(field="Fp", p=M.p)
    else:
        out["field"] = "Q"
    return out


def decode_matrix(obj) -> RatMatrix | FpMatrix:
    rows = _need(obj, "entries", list)
    n = obj.get("n", len(rows))
    if not isinstance(n, int) or n < 1 or len(rows) != n or any(
        not isinstance(r, list) or len(r) != n for r in rows
    ):
        raise CodecError("entries must form an n x n array")
    field = obj.get("field", "Q")
    if field == "Q":
        return RatMatrix([[_rat(x) for x in r] for r in rows])
    if field == "Fp":
        p = _need(obj, "p", int)
        return FpMatrix(p, [[_int(x) for x in r] for r in rows])
    raise CodecError(f"unknown field {field!r}")


def encode_poly(f: IntPoly | FpPoly) -> dict:
    if isinstance(f, FpPoly):
        return {"coeffs": [str(c) for c in f.coeffs], "p": f.p}
    return {"coeffs": [_s(c) for c in f.coeffs]}


def decode_poly(obj) -> IntPoly | FpPoly:
    coeffs = _need(obj, "coeffs", list)
    if "p" in obj:
        return FpPoly(_need(obj, "p", int), [_int(c) for c in coeffs])
    return IntPoly([_rat(c) for c in coeffs])


def encode_tuple(T: MatrixTuple) -> dict:
    out = {"n": T.n, "field": T.field, "mats": [encode_matrix(m) for m in T.mats]}
    if T.p is not None:
        out["p"] = T.p
    return out


def decode_tuple(obj) -> MatrixTuple:
    mats = _need(obj, "mats", list)
    field = obj.get("field")
    dec = []
    for m in mats:
        if isinstance(m, dict):
            m = dict(m)
            if field is not None:
                m.setdefault("field", field)
            if "p" in obj:
                m.setdefault("p", obj["p"])
        dec.append(decode_matrix(m))
    T = MatrixTuple(dec)
    if "n" in obj and obj["n"] != T.n:
        raise CodecError("declared n does not match the matrices")
    return T


# -- torus ------------------------------------------------------------------

def encode_point(x: TorusPoint) -> list[str]:
    return [str(c) for c in x.coords]


def decode_point(obj) -> TorusPoint:
    if isinstance(obj, dict):
        obj = _need(obj, "x" if "x" in obj else "coords", list)
    if not isinstance(obj, list) or not obj:
        raise CodecError("a point is a nonempty list of rationals")
    return TorusPoint([_rat(c) for c in obj])


def decode_freq(obj) -> tuple[int, ...]:
    if isinstance(obj, dict):
        obj = _need(obj, "k", list)
    if not isinstance(obj, list) or not obj:
        raise CodecError("a frequency is a nonempty list of integers")
    return tuple(_int(c) for c in obj)


def encode_measure(mu: TorusMeasure) -> dict:
    if isinstance(mu, Lebesgue):
        return {"kind": "lebesgue", "n": mu.n}
    return {
        "kind": "atomic",
        "n": mu.n,
        "points": [encode_point(x) for x in mu.points],
        "weights": [str(w) for w in mu.weights],
    }


def decode_measure(obj) -> TorusMeasure:
    kind = _need(obj, "kind", str)
    if kind == "lebesgue":
        return Lebesgue(_need(obj, "n", int))
    if kind != "atomic":
        raise CodecError(f"unknown measure kind {kind!r}")
    pts = [decode_point(p) for p in _need(obj, "points", list)]
    ws = [_rat(w) for w in _need(obj, "weights", list)]
    mu = Atomic(pts, ws)
    if "n" in obj and obj["n"] != mu.n:
        raise CodecError("declared n does not match the points")
    return mu


def decode_family(obj) -> FolnerFamily:
    if obj is None:
        return FolnerFamily()
    keys = ("start", "start_slope", "length", "length_slope")
    if not isinstance(obj, dict) or set(obj) - set(keys):
        raise CodecError(f"a family has integer fields {keys}")
    return FolnerFamily(**{k: _int(v) for k, v in obj.items()})


def encode_family(F: FolnerFamily) -> dict:
    return {"start": F.start, "start_slope": F.start_slope, "length": F.length, "length_slope": F.length_slope}


def decode_density_set(obj) -> DensitySet:
    kind = _need(obj, "kind", str)
    if kind == "progression":
        return DensitySet.progression(_int(obj.get("start", 0)), _int(_need(obj, "step")))
    if kind == "finite":
        return DensitySet.finite(_int(e) for e in _need(obj, "elements", list))
    if kind == "cofinite":
        return DensitySet.cofinite(_int(e) for e in obj.get("missing", []))
    raise CodecError(f"unknown set kind {kind!r}")


# -- reports ----------------------------------------------------------------

def _f(x) -> float:
    return float(x) + 0.0  # folds -0.0 into 0.0


def _value(v) -> dict:
    c = complex(v)
    out = {"value_re": _f(c.real), "value_im": _f(c.imag)}
    if isinstance(v, Fraction):
        out["value_exact"] = str(v)
    return out


def _dev(d) -> dict:
    out = {"deviation": float(d)}
    if isinstance(d, Fraction):
        out["deviation_exact"] = str(d)
    return out


def encode_verdict(v: IrredVerdict) -> dict:
    out = {"verdict": v.verdict, "method": v.method}
    if v.prime is not None:
        out["prime"] = v.prime
    if v.witness is not None:
        out["witness"] = [encode_poly(g) for g in v.witness]
    return out


def encode_factorization(fac: ModPFactorization) -> dict:
    return {
        "p": fac.p,
        "unit": str(fac.unit),
        "factors": [encode_poly(g) for g in fac.factors],
        "irreducible": fac.is_irreducible,
    }


def encode_cert(rep: CertReport, timing: bool = False) -> dict:
    out: dict = {"status": rep.status}
    if rep.evidence is not None:
        out["evidence"] = out["method"] = rep.evidence
    if rep.prime is not None:
        out["prime"] = rep.prime
    if rep.witness is not None:
        out["witness"] = [str(x) for x in rep.witness]
        out["witness_kind"] = rep.witness_kind
    if rep.verdict is not None:
        out["irreducibility"] = encode_verdict(rep.verdict)
    if rep.diagnostics:
        out["diagnostics"] = json.loads(json.dumps(rep.diagnostics, default=str))
    if timing:
        out["elapsed"] = rep.elapsed
    return out


def encode_witness(w: ComplexWitness) -> dict:
    return {
        "z": [[_f(c.real), _f(c.imag)] for c in w.z],
        "residual": float(w.residual),
        "restarts": w.restarts,
    }


def encode_orbit(o: OrbitRecord) -> dict:
    return {"preperiod": o.preperiod, "period": o.period, "points": [encode_point(x) for x in o.points]}


def _encode_record(r: PairRecord) -> dict:
    samples = []
    for s in r.samples:
        row = {"j": s["j"]} if "j" in s else {"m": s["m"]}
        row.update(_value(s["value"]))
        row.update(_dev(s["deviation"]))
        samples.append(row)
    target = complex(r.target)
    out = {
        "k": [str(x) for x in r.k],
        "l": [str(x) for x in r.l],
        "target_re": _f(target.real),
        "target_im": _f(target.imag),
        "status": r.status,
        "excluded": r.excluded,
        "samples": samples,
    }
    if isinstance(r.target, Fraction):
        out["target_exact"] = str(r.target)
    out.update(_dev(r.deviation))
    return out


def encode_criterion(rep: CriterionReport, samples: bool = True) -> dict:
    params = {}
    for key, val in rep.params.items():
        if isinstance(val, FolnerFamily):
            val = encode_family(val)
        elif isinstance(val, tuple):
            val = list(val)
        params[key] = val
    out = {
        "kind": rep.kind,
        "verdict": rep.verdict,
        "tol": rep.tol,
        "params": params,
        "pairs": [_encode_record(r) for r in rep.records],
    }
    if not samples:
        for p in out["pairs"]:
            p.pop("samples")
    if rep.worst is not None and rep.verdict != "PassWithin":
        out["worst"] = {"k": [str(x) for x in rep.worst.k], "l": [str(x) for x in rep.worst.l],
                        **_dev(rep.worst.deviation)}
    out.update(_dev(rep.max_deviation))
    return out


def encode_density(est: DensityEstimate) -> dict:
    return {"samples": [str(s) for s in est.samples], "estimate": str(est.estimate),
            "estimate_float": float(est.estimate)}


def encode_audit(rep: AuditReport, timing: bool = False) -> dict:
    cls = {"kind": rep.classification}
    if rep.size is not None:
        cls["size"] = rep.size
    if rep.detail is not None:
        cls["detail"] = rep.detail
    return {
        "hypotheses": {
            "invariance": rep.invariance,
            "all_hold": rep.hypotheses_hold,
            "tuple": encode_cert(rep.tuple_status, timing),
            "density_of_E": {"estimate": str(rep.density.estimate),
                             "estimate_float": float(rep.density.estimate)},
        },
        "criteria": {k: encode_criterion(v, samples=False) for k, v in rep.criteria.items()},
        "classification": cls,
        "flags": rep.flags,
    }
