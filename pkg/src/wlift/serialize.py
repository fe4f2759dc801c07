"""JSON/CSV serialization for spaces, measures, couplings, lifts, and
reports."""

from __future__ import annotations

import csv
import json

import numpy as np

from . import spaces
from .errors import ValidationError
from .lifts import Lift
from .measures import DiscreteMeasure, make_measure
from .paths import PiecewiseGeodesicPath
from .transport import MultiCoupling


def space_to_json(space: spaces.Space) -> dict:
    if space.kind == "euclidean":
        return {"kind": "euclidean", "d": space.dim}
    return {"kind": space.kind, "perimeter": space.perimeter}


def space_from_json(obj: dict) -> spaces.Space:
    kind = obj.get("kind")
    if kind == "euclidean":
        return spaces.euclidean(int(obj.get("d", 1)))
    if kind == "circle":
        return spaces.circle(float(obj.get("perimeter", 2.0)))
    if kind == "cylinder":
        return spaces.cylinder(float(obj.get("perimeter", 2.0)))
    raise ValidationError(f"unknown space kind {kind!r}")


def measure_to_json(mu: DiscreteMeasure) -> dict:
    return {
        "space": space_to_json(mu.space),
        "atoms": mu.atoms.tolist(),
        "weights": mu.weights.tolist(),
    }


def measure_from_json(obj: dict) -> DiscreteMeasure:
    try:
        space = space_from_json(obj["space"])
        return make_measure(space, obj["atoms"], obj["weights"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed measure JSON: {exc}") from exc


def multicoupling_to_json(mc: MultiCoupling) -> dict:
    return {
        "marginals": [measure_to_json(m) for m in mc.marginals],
        "indices": mc.indices.tolist(),
        "weights": mc.weights.tolist(),
        "labels": list(mc.labels),
    }


def lift_to_json(lift: Lift) -> dict:
    return {
        "level": lift.level,
        "space": space_to_json(lift.paths[0].space),
        "paths": [{"breakpoints": p.breakpoints.tolist()} for p in lift.paths],
        "weights": lift.weights.tolist(),
    }


def lift_from_json(obj: dict) -> Lift:
    space = space_from_json(obj["space"])
    level = int(obj["level"])
    paths = tuple(
        PiecewiseGeodesicPath(space, p["breakpoints"], level) for p in obj["paths"]
    )
    return Lift(paths, np.asarray(obj["weights"], dtype=float), level)


def norm_report(norm: str, params: dict, value: float, truncation_level=None, tail_estimate=None) -> dict:
    return {
        "norm": norm,
        "params": params,
        "value": value,
        "truncation_level": truncation_level,
        "tail_estimate": tail_estimate,
    }


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read JSON {path}: {exc}") from exc


def dump_json(obj, path: str | None):
    text = json.dumps(obj, indent=2, default=float)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def dump_csv(rows, fieldnames, path: str | None):
    if path:
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=fieldnames)
            w.writeheader()
            w.writerows(rows)
    else:
        import sys

        w = csv.DictWriter(sys.stdout, fieldnames=fieldnames)
        w.writeheader()
        w.writerows(rows)
