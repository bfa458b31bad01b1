"""JSON encodings.

Rationals are written as lowest-terms ``"p/q"`` strings and interval
endpoints may be ``"-inf"``/``"inf"``.  Decoding then re-encoding reproduces
the input exactly.
"""

from __future__ import annotations

import json
from typing import Any

from .intervals import IntervalSet, RationalSet
from .orders import (
    CompositeOrdering,
    GermOrdering,
    GermVariant,
    PointStream,
    SignAssignment,
    Stage,
    StagedOrdering,
    StandardOrdering,
)
from .pl import PLHomeo, Sign
from .rationals import format_rational, parse_rational

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def homeo_to_json(f: PLHomeo) -> dict:
    return f.to_json()


def homeo_from_json(data) -> PLHomeo:
    try:
        return PLHomeo.from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad PLHomeo encoding: {exc}") from exc


def intervals_to_json(s: IntervalSet) -> list:
    return s.to_json()


def intervals_from_json(data) -> IntervalSet:
    try:
        return IntervalSet.from_json(data)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad IntervalSet encoding: {exc}") from exc


def _signs_to_json(sa: SignAssignment) -> tuple[dict, str]:
    return {str(k): v.symbol for k, v in sorted(sa.table.items())}, sa.default.symbol


def _signs_from_json(data: dict) -> SignAssignment:
    table = {int(k): Sign.from_symbol(v) for k, v in data.get("signs", {}).items()}
    return SignAssignment(table, Sign.from_symbol(data.get("default", "+")))


def ordering_to_json(ord) -> dict:
    if isinstance(ord, StandardOrdering):
        signs, default = _signs_to_json(ord.signs)
        return {
            "kind": "standard",
            "prefix": [format_rational(p) for p in ord.stream.prefix],
            "signs": signs,
            "default": default,
        }
    if isinstance(ord, StagedOrdering):
        stages = []
        for st in ord.stages:
            signs, default = _signs_to_json(st.signs)
            stages.append({
                "region": st.region.to_json(),
                "prefix": [format_rational(p) for p in st.stream.prefix],
                "signs": signs,
                "default": default,
            })
        return {"kind": "staged", "stages": stages}
    if isinstance(ord, CompositeOrdering):
        return {
            "kind": "composite",
            "germ": {
                "variant": ord.germ.variant.value,
                "points": [format_rational(p) for p in ord.germ.points],
            },
            "interior": ordering_to_json(ord.interior),
        }
    raise TypeError(f"cannot encode {type(ord).__name__}")


def ordering_from_json(data: dict):
    try:
        kind = data["kind"]
        if kind == "standard":
            prefix = tuple(parse_rational(p) for p in data.get("prefix", []))
            return StandardOrdering(PointStream(prefix), _signs_from_json(data))
        if kind == "staged":
            stages = []
            for st in data["stages"]:
                region = intervals_from_json(st["region"])
                prefix = tuple(parse_rational(p) for p in st.get("prefix", []))
                stages.append(Stage(PointStream(prefix, region), _signs_from_json(st)))
            return StagedOrdering(tuple(stages))
        if kind == "composite":
            g = data["germ"]
            germ = GermOrdering(GermVariant(g["variant"]),
                                tuple(parse_rational(p) for p in g.get("points", [])))
            interior = ordering_from_json(data.get("interior", {"kind": "standard"}))
            if not isinstance(interior, StandardOrdering):
                raise SchemaError("composite interior must be a standard ordering")
            return CompositeOrdering(germ, interior)
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad ordering encoding: {exc}") from exc
    raise SchemaError(f"unknown ordering kind {data.get('kind')!r}")


def rational_set_to_json(s: RationalSet) -> dict:
    return s.to_json()


def anb_to_json(result) -> dict:
    cert = {k: v.to_json() for k, v in result.certificate.items()}
    return {
        "region": result.region.to_json(),
        "g_parts": [p.to_json() for p in result.g_parts],
        "g": result.g.to_json(),
        "h_parts": [p.to_json() for p in result.h_parts],
        "h": result.h.to_json(),
        "gamma": result.gamma.to_json(),
        "gamma_h": result.gamma_h.to_json(),
        "h_index_map": list(result.h_index_map),
        "certificate": cert,
        "refinement_rounds": list(result.rounds),
    }


def dumps(payload: Any) -> str:
    """Deterministic JSON text (sorted keys, fixed separators)."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
