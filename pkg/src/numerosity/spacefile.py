"""Reading measure-space description files and serializing builder
reports.

A description is a JSON document:

    {
      "universe": "real-line" | "coin-toss" | "atoms",
      "weights": ["1/3", "0.25", ...],        # atoms only
      "weight_mode": "rational" | "decimal",  # atoms only, default rational
      "subring": [<set>, ...],                # generators, may be empty
      "points": [<point>, ...],
      "sets": [{"set": <set>, "in_subring": bool}, ...],
      "m": 100
    }

Sets and points are grammar strings for the real-line and coin-toss
universes ("[0,1/2) u {2}", "C(1:H, 2:T)", "O(HHT|H)", "1/8"), and
index data for the atom universe (sets are lists of atom indices,
points are [atom, counter] pairs).  Reports are emitted with every
rational rendered as a string, never as a float.
"""

from __future__ import annotations

import json
from pathlib import Path

from .lambda_builder import LambdaReport, LambdaRequest, LambdaVerdict, MeasureSpaceDesc
from .spaces import AtomSpace, CoinTossSpace, RealLineSpace

UNIVERSES = ("real-line", "coin-toss", "atoms")


def _as_document(source) -> dict:
    if isinstance(source, dict):
        return source
    text = Path(source).read_text()
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("description must be a JSON object")
    return doc


def space_from_document(doc: dict):
    kind = doc.get("universe")
    if kind == "real-line":
        return RealLineSpace()
    if kind == "coin-toss":
        return CoinTossSpace()
    if kind == "atoms":
        weights = doc.get("weights")
        if not weights:
            raise ValueError("atom universe needs a non-empty 'weights' list")
        mode = doc.get("weight_mode", "rational")
        return AtomSpace(weights, mode)
    raise ValueError(f"unknown universe {kind!r}, expected one of {UNIVERSES}")


def load_description(source) -> tuple[MeasureSpaceDesc, LambdaRequest]:
    """Load a description file (path or parsed dict) into a space
    description and a build request."""
    doc = _as_document(source)
    space = space_from_document(doc)
    subring = tuple(space.set_from_data(g) for g in doc.get("subring", ()))
    points = tuple(space.point_from_data(x) for x in doc.get("points", ()))
    raw_sets = doc.get("sets")
    if not raw_sets:
        raise ValueError("description needs a non-empty 'sets' list")
    sets, flags = [], []
    for entry in raw_sets:
        sets.append(space.set_from_data(entry["set"]))
        flags.append(bool(entry.get("in_subring", False)))
    if "m" not in doc:
        raise ValueError("description needs the tolerance denominator 'm'")
    req = LambdaRequest(int(doc["m"]), points, tuple(sets), tuple(flags))
    desc_kwargs = {}
    if "search_ceiling" in doc:
        desc_kwargs["search_ceiling"] = int(doc["search_ceiling"])
    return MeasureSpaceDesc(space, subring, **desc_kwargs), req


def load_lambda(desc: MeasureSpaceDesc, source) -> tuple:
    """Load a sampling set: either a bare JSON list of points or a
    report object with a 'lambda' key."""
    if isinstance(source, (list, tuple)):
        data = source
    elif isinstance(source, dict):
        data = source.get("lambda")
    else:
        doc = json.loads(Path(source).read_text())
        data = doc.get("lambda") if isinstance(doc, dict) else doc
    if not isinstance(data, list):
        raise ValueError("sampling-set document must be a list or have a 'lambda' list")
    return tuple(desc.space.point_from_data(x) for x in data)


def verdict_to_dict(verdict: LambdaVerdict) -> dict:
    return {
        "points_present": verdict.points_present,
        "equal_traces": verdict.equal_traces,
        "ratios_within": verdict.ratios_within,
        "all_ok": verdict.all_ok,
        "traces": list(verdict.traces),
        "deviations": [
            {"i": i, "j": j, "value": None if dev is None else str(dev)}
            for i, j, dev in verdict.deviations
        ],
    }


def report_to_dict(desc: MeasureSpaceDesc, req: LambdaRequest, report: LambdaReport) -> dict:
    """Stable, exact JSON form of a build report."""
    space = desc.space
    h = len(report.subring_pieces)
    positive_cells = []
    for s, cell in enumerate(report.positive_cells):
        entry = {
            "set": space.set_to_data(cell),
            "measure": str(report.cell_measures[s]),
            "quota": report.cell_quotas[s],
            "frac": str(report.cell_fracs[s]),
        }
        if s < h:
            entry["dock"] = report.piece_docks[s]
        positive_cells.append(entry)
    sets = []
    for i, a in enumerate(req.sets):
        sets.append(
            {
                "set": space.set_to_data(a),
                "measure": str(report.set_measures[i]),
                "in_subring": req.in_subring[i],
                "trace": report.verdict.traces[i],
                "rounding_loss": str(report.rounding_loss[i]),
                "docked_points": report.docked_points[i],
                "null_points": report.null_points[i],
                "net_error": str(report.net_error[i]),
            }
        )
    return {
        "universe": space.kind,
        "m": req.m,
        "points": [space.point_to_data(x) for x in req.points],
        "subring_pieces": [space.set_to_data(b) for b in report.subring_pieces],
        "null_cells": [space.set_to_data(d) for d in report.null_cells],
        "positive_cells": positive_cells,
        "sets": sets,
        "alpha_bound": str(report.alpha_bound),
        "c_min": str(report.c_min),
        "N": report.density,
        "identity_ok": report.identity_ok,
        "lambda": [space.point_to_data(x) for x in report.lam],
        "verdicts": verdict_to_dict(report.verdict),
    }
