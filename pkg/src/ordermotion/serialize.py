"""JSON and CSV interchange for tuples, order types, plans, and reports.

Rationals travel as "num/den" strings in lowest terms (plain integers are
accepted on input); every writer sorts keys and emits a trailing newline so
reruns with the same configuration are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path
from typing import Any

from .blowup import BlowupReport, BlowupResult, CloudSpec
from .geometry import OrderType, PointTuple, as_scalar, colex_subsets
from .motion import MotionPlan
from .pencil import CoefficientDecayReport
from .polynomial import RationalPolynomial
from .rotation import MeasureEstimate, RotationCostReport


def scalar_str(value: Fraction) -> str:
    return str(value)


def parse_scalar(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"expected an exact rational, got {value!r}")
    return as_scalar(value)


def json_dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Point tuples
# ---------------------------------------------------------------------------

def point_tuple_to_obj(P: PointTuple) -> dict:
    return {
        "d": P.dim,
        "points": [[scalar_str(c) for c in p] for p in P.points],
    }


def point_tuple_from_obj(obj: dict) -> PointTuple:
    if not isinstance(obj, dict) or "d" not in obj or "points" not in obj:
        raise ValueError("point tuple object needs 'd' and 'points'")
    d = obj["d"]
    if not isinstance(d, int):
        raise ValueError("'d' must be an integer")
    points = tuple(tuple(parse_scalar(c) for c in row) for row in obj["points"])
    return PointTuple(d, points)


def load_point_tuple(path: str | Path) -> PointTuple:
    with open(path, "r", encoding="utf-8") as fh:
        return point_tuple_from_obj(json.load(fh))


def dump_point_tuple(P: PointTuple, path: str | Path) -> None:
    Path(path).write_text(json_dumps(point_tuple_to_obj(P)), encoding="utf-8")


# ---------------------------------------------------------------------------
# Order types
# ---------------------------------------------------------------------------

def order_type_to_obj(t: OrderType) -> dict:
    return {"n": t.n, "d": t.d, "signs": list(t.signs)}


def order_type_from_obj(obj: dict) -> OrderType:
    return OrderType(n=obj["n"], d=obj["d"], signs=tuple(obj["signs"]))


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

def polynomial_to_obj(p: RationalPolynomial) -> dict:
    return {"coeffs": [scalar_str(c) for c in p.coeffs]}


def polynomial_from_obj(obj: dict) -> RationalPolynomial:
    return RationalPolynomial.from_coeffs([parse_scalar(c) for c in obj["coeffs"]])


# ---------------------------------------------------------------------------
# Motion plans
# ---------------------------------------------------------------------------

def plan_to_obj(plan: MotionPlan) -> dict:
    return {
        "n": plan.n,
        "d": plan.d,
        "total": plan.total,
        "needs_serialization": plan.needs_serialization,
        "shared_roots": [[list(a), list(b)] for a, b in plan.shared_roots],
        "segments": [
            {
                "kind": seg.kind,
                "scaling": None
                if seg.scaling is None
                else [scalar_str(v) for v in seg.scaling],
                "rotation": seg.rotation,
                "start": point_tuple_to_obj(seg.start),
                "end": point_tuple_to_obj(seg.end),
            }
            for seg in plan.segments
        ],
        "ledger": [
            {"subset": list(subset), "flips": flips} for subset, flips in plan.ledger
        ],
    }


def ledger_csv(plan: MotionPlan) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"i{k}" for k in range(plan.d + 1)] + ["flips"])
    for subset, flips in plan.ledger:
        writer.writerow(list(subset) + [flips])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Order types as CSV (subset, sign) rows
# ---------------------------------------------------------------------------

def order_type_csv(t: OrderType) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"i{k}" for k in range(t.d + 1)] + ["sign"])
    for subset, sign in zip(colex_subsets(t.n, t.d + 1), t.signs):
        writer.writerow(list(subset) + [sign])
    return buf.getvalue()


def aspect_csv(d: int, squares: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"i{k}" for k in range(d + 1)] + ["aspect"])
    for subset, sq in squares.items():
        writer.writerow(list(subset) + [float(sq) ** 0.5])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def decay_report_to_obj(report: CoefficientDecayReport) -> dict:
    return {
        "eta": scalar_str(report.eta),
        "lambdas": [scalar_str(v) for v in report.lam],
        "per_index_error": [scalar_str(e) for e in report.per_index_error],
        "max_error": scalar_str(report.max_error),
        "max_error_float": float(report.max_error),
    }


def measure_to_obj(est: MeasureEstimate) -> dict:
    return {
        "estimate": est.fraction,
        "half_width": est.half_width,
        "n_samples": est.n_samples,
        "n_good": est.n_good,
        "seed": est.seed,
        "dichotomy_failures": est.dichotomy_failures,
    }


def rotation_report_to_obj(report: RotationCostReport) -> dict:
    return {
        "n": report.n,
        "d": report.d,
        "n_rotations": report.n_rotations,
        "seed": report.seed,
        "aspect_bound": float(report.aspect_bound_sq) ** 0.5,
        "aspect_bound_sq": scalar_str(report.aspect_bound_sq),
        "low_aspect_fraction": report.low_aspect_fraction,
        "per_rotation_costs": list(report.costs),
        "best_cost": report.best_cost,
        "mean_cost": report.mean_cost,
        "bound": report.bound,
        "bound_met": report.bound_met,
        "resamples": report.resamples,
    }


def rotation_costs_csv(report: RotationCostReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rotation_index", "cost"])
    for i, cost in enumerate(report.costs):
        writer.writerow([i, cost])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Blow-ups
# ---------------------------------------------------------------------------

def _cloud_spec_to_obj(spec: CloudSpec) -> dict:
    return {
        "epsilon": scalar_str(spec.epsilon),
        "delta": scalar_str(spec.delta),
        "directions": [[scalar_str(v) for v in a] for a in spec.directions],
        "curvatures": [[scalar_str(v) for v in b] for b in spec.curvatures],
        "partitions": [
            {"left": list(left), "right": list(right)}
            for left, right in spec.partitions
        ],
    }


def blowup_to_obj(result: BlowupResult) -> dict:
    return {
        "r": result.r,
        "m": result.m,
        "certificate": result.certificate,
        "asymptotic_constant": scalar_str(result.asymptotic_constant),
        "asymptotic_constant_float": float(result.asymptotic_constant),
        "P": point_tuple_to_obj(result.P),
        "P_prime": point_tuple_to_obj(result.Pprime),
        "spec": _cloud_spec_to_obj(result.spec),
        "spec_prime": _cloud_spec_to_obj(result.spec_prime),
    }


def blowup_report_to_obj(report: BlowupReport) -> dict:
    obj = asdict(report)
    obj["all_pass"] = report.all_pass
    return obj
