"""Canonical JSON encoding and decoding of the package structures.

Every encoder emits plain dicts tagged with a "kind" key, with point
labels listed sorted and relations as sorted label pairs, so equal
structures always produce equal bytes.  Decoders rebuild through the
validating constructors, so a parse is also a structural check.  Volatile
report fields (wall time) are excluded from the canonical form to keep
reports reproducible byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bits import iter_bits
from .colimits import PushoutLocaleResult
from .errors import ParseError
from .frames import FiniteFrame, FrameHom, frame_from_poset
from .lifting import (
    CellStage,
    FactorizationTrace,
    LiftingSquare,
    LiftVerdict,
    PreMap,
    Preorder,
)
from .poset import FinitePoset, MonotoneMap, transitive_closure, validate_poset
from .pstop import PsSpace
from .spaces import FiniteSpace, SpaceMap


def canonical_json(data):
    """Deterministic text form: sorted keys, two-space indent, newline end."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _mask_labels(labels, mask):
    return [labels[i] for i in iter_bits(mask)]


def _relation_pairs(labels, up):
    pairs = []
    for i, row in enumerate(up):
        for j in iter_bits(row):
            if j != i:
                pairs.append([labels[i], labels[j]])
    pairs.sort()
    return pairs


def _order_data(kind, labels, up):
    order = sorted(range(len(labels)), key=lambda i: labels[i])
    pos = {i: k for k, i in enumerate(order)}
    rows = [0] * len(labels)
    for i, row in enumerate(up):
        for j in iter_bits(row):
            rows[pos[i]] |= 1 << pos[j]
    sorted_labels = [labels[i] for i in order]
    return {
        "kind": kind,
        "points": sorted_labels,
        "leq": _relation_pairs(sorted_labels, rows),
    }


def _map_data(kind, source, target, mapping, source_labels, target_labels):
    return {
        "kind": kind,
        "source": source,
        "target": target,
        "mapping": {
            source_labels[i]: target_labels[v] for i, v in enumerate(mapping)
        },
    }


@dataclass(frozen=True)
class LocPushoutData:
    """Pushout components as parsed back from a report."""

    apex: FiniteFrame
    left_leg: FrameHom
    right_leg: FrameHom


def _pushout_parts(obj):
    if isinstance(obj, PushoutLocaleResult):
        return obj.apex, obj.proj_b, obj.proj_c
    return obj.apex, obj.left_leg, obj.right_leg


def structure_data(obj):
    """Encode a supported structure as canonical JSON data."""
    if isinstance(obj, FinitePoset):
        return _order_data("poset", obj.labels, obj.up)
    if isinstance(obj, FiniteFrame):
        data = _order_data("frame", obj.order.labels, obj.order.up)
        data["kind"] = "frame"
        return data
    if isinstance(obj, FrameHom):
        return _map_data(
            "frame-hom",
            structure_data(obj.source),
            structure_data(obj.target),
            obj.mapping,
            obj.source.order.labels,
            obj.target.order.labels,
        )
    if isinstance(obj, (PushoutLocaleResult, LocPushoutData)):
        apex, left_leg, right_leg = _pushout_parts(obj)
        return {
            "kind": "loc-pushout",
            "apex": structure_data(apex),
            "left-leg": structure_data(left_leg),
            "right-leg": structure_data(right_leg),
        }
    if isinstance(obj, FiniteSpace):
        return {
            "kind": "space",
            "points": list(obj.points),
            "opens": sorted(
                sorted(_mask_labels(obj.points, m)) for m in obj.opens
            ),
        }
    if isinstance(obj, SpaceMap):
        return _map_data(
            "space-map",
            structure_data(obj.source),
            structure_data(obj.target),
            obj.mapping,
            obj.source.points,
            obj.target.points,
        )
    if isinstance(obj, MonotoneMap):
        return _map_data(
            "monotone-map",
            structure_data(obj.source),
            structure_data(obj.target),
            obj.mapping,
            obj.source.labels,
            obj.target.labels,
        )
    if isinstance(obj, PsSpace):
        return {
            "kind": "pstop",
            "points": list(obj.points),
            "limits": {
                x: sorted(_mask_labels(obj.points, obj.lim[i]))
                for i, x in enumerate(obj.points)
            },
        }
    if isinstance(obj, Preorder):
        return _order_data("preorder", obj.points, obj.up)
    if isinstance(obj, PreMap):
        return _map_data(
            "premap",
            structure_data(obj.source),
            structure_data(obj.target),
            obj.mapping,
            obj.source.points,
            obj.target.points,
        )
    if isinstance(obj, LiftingSquare):
        return {
            "kind": "lifting-square",
            "left": structure_data(obj.left),
            "right": structure_data(obj.right),
            "top": structure_data(obj.top),
            "bottom": structure_data(obj.bottom),
        }
    if isinstance(obj, LiftVerdict):
        return {
            "kind": "lift-verdict",
            "holds": obj.holds,
            "witness": None if obj.witness is None else structure_data(obj.witness),
        }
    if isinstance(obj, FactorizationTrace):
        stages = []
        complex_points = obj.original.source.points
        target_points = obj.original.target.points
        for stage in obj.stages:
            stages.append(
                {
                    "problems": [
                        {
                            "generator": t,
                            "top": [complex_points[v] for v in top],
                            "bottom": [target_points[v] for v in bottom],
                        }
                        for t, top, bottom in stage.problems
                    ],
                    "attached": structure_data(stage.attached),
                    "step": structure_data(stage.step),
                    "cells": structure_data(stage.cells),
                    "right": structure_data(stage.right),
                }
            )
            complex_points = stage.attached.points
        return {
            "kind": "factorization-trace",
            "original": structure_data(obj.original),
            "verdict": obj.verdict,
            "stages": stages,
            "left": structure_data(obj.left),
            "right": structure_data(obj.right),
        }
    raise ParseError(f"no encoding for {type(obj).__name__}")


def _expect(data, kind):
    if not isinstance(data, dict) or data.get("kind") != kind:
        raise ParseError(f"expected a {kind} object")


def _parse_poset(data):
    _expect(data, "poset")
    return validate_poset(data["points"], [tuple(p) for p in data["leq"]])


def _parse_frame(data):
    _expect(data, "frame")
    poset = validate_poset(data["points"], [tuple(p) for p in data["leq"]])
    return frame_from_poset(poset)


def _positional(mapping, source_labels, target_labels):
    index = {x: i for i, x in enumerate(target_labels)}
    try:
        return [index[mapping[x]] for x in source_labels]
    except KeyError as miss:
        raise ParseError(f"mapping misses label {miss}") from None


def _parse_frame_hom(data):
    _expect(data, "frame-hom")
    source = _parse_frame(data["source"])
    target = _parse_frame(data["target"])
    mapping = _positional(
        data["mapping"], source.order.labels, target.order.labels
    )
    return FrameHom(source, target, mapping)


def _parse_space(data):
    _expect(data, "space")
    points = sorted(data["points"])
    if len(set(points)) != len(points):
        raise ParseError("duplicate points")
    index = {x: i for i, x in enumerate(points)}
    opens = []
    for members in data["opens"]:
        m = 0
        for x in members:
            if x not in index:
                raise ParseError(f"open set mentions unknown point {x!r}")
            m |= 1 << index[x]
        opens.append(m)
    return FiniteSpace(points, opens)


def _parse_space_map(data):
    _expect(data, "space-map")
    source = _parse_space(data["source"])
    target = _parse_space(data["target"])
    mapping = _positional(data["mapping"], source.points, target.points)
    return SpaceMap(source, target, mapping)


def _parse_monotone_map(data):
    _expect(data, "monotone-map")
    source = _parse_poset(data["source"])
    target = _parse_poset(data["target"])
    mapping = _positional(data["mapping"], source.labels, target.labels)
    return MonotoneMap(source, target, mapping)


def _parse_pstop(data):
    _expect(data, "pstop")
    return PsSpace.from_lim(data["points"], data["limits"])


def _parse_preorder(data):
    _expect(data, "preorder")
    points = sorted(data["points"])
    if len(set(points)) != len(points):
        raise ParseError("duplicate points")
    index = {x: i for i, x in enumerate(points)}
    rows = [1 << i for i in range(len(points))]
    for x, y in data["leq"]:
        if x not in index or y not in index:
            raise ParseError("relation mentions unknown labels")
        rows[index[x]] |= 1 << index[y]
    return Preorder(points, transitive_closure(rows))


def _parse_premap(data):
    _expect(data, "premap")
    source = _parse_preorder(data["source"])
    target = _parse_preorder(data["target"])
    mapping = _positional(data["mapping"], source.points, target.points)
    return PreMap(source, target, mapping)


def _parse_loc_pushout(data):
    apex = _parse_frame(data["apex"])
    left = _parse_frame_hom(data["left-leg"])
    right = _parse_frame_hom(data["right-leg"])
    if left.source != apex or right.source != apex:
        raise ParseError("pushout legs must start at the apex")
    return LocPushoutData(apex, left, right)


def _parse_square(data):
    _expect(data, "lifting-square")
    return LiftingSquare(
        _parse_premap(data["left"]),
        _parse_premap(data["right"]),
        _parse_premap(data["top"]),
        _parse_premap(data["bottom"]),
    )


def _parse_trace(data):
    _expect(data, "factorization-trace")
    original = _parse_premap(data["original"])
    complex_index = {x: i for i, x in enumerate(original.source.points)}
    target_index = {x: i for i, x in enumerate(original.target.points)}
    stages = []
    for stage in data["stages"]:
        problems = tuple(
            (
                p["generator"],
                tuple(complex_index[x] for x in p["top"]),
                tuple(target_index[x] for x in p["bottom"]),
            )
            for p in stage["problems"]
        )
        attached = _parse_preorder(stage["attached"])
        stages.append(
            CellStage(
                problems,
                attached,
                _parse_premap(stage["step"]),
                _parse_premap(stage["cells"]),
                _parse_premap(stage["right"]),
            )
        )
        complex_index = {x: i for i, x in enumerate(attached.points)}
    return FactorizationTrace(
        original,
        tuple(stages),
        _parse_premap(data["left"]),
        _parse_premap(data["right"]),
        data["verdict"],
    )


_PARSERS = {
    "poset": _parse_poset,
    "frame": _parse_frame,
    "frame-hom": _parse_frame_hom,
    "space": _parse_space,
    "space-map": _parse_space_map,
    "monotone-map": _parse_monotone_map,
    "pstop": _parse_pstop,
    "loc-pushout": _parse_loc_pushout,
    "preorder": _parse_preorder,
    "premap": _parse_premap,
    "lifting-square": _parse_square,
    "factorization-trace": _parse_trace,
}


def parse_structure(data):
    """Decode canonical JSON data into the structure it describes."""
    if not isinstance(data, dict):
        raise ParseError("structure data must be an object")
    kind = data.get("kind")
    if kind not in _PARSERS:
        raise ParseError(f"unknown structure kind {kind!r}")
    try:
        return _PARSERS[kind](data)
    except ParseError:
        raise
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed {kind} data: {exc}") from None


def load_structure(path):
    """Read and decode one canonical JSON file."""
    with open(path, encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
    return parse_structure(data)


def dump_structure(obj):
    """Encode a structure as canonical JSON text."""
    return canonical_json(structure_data(obj))
