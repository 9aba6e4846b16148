"""JSON loading and canonical serialization for every structure the package reads.

Each object carries a ``"kind"`` tag:

=====================  ====================================================
kind                   fields
=====================  ====================================================
biquandle              ``under``, ``over`` (``size`` optional, checked)
shadow                 ``biquandle`` (nested object) and ``action``
dihedral               ``n``
alexander              ``n`` and ``p`` (coefficients, constant term first)
alexander_biquandle    ``n`` and ``s``
tribracket             ``table`` (``size`` optional, checked)
dihedral_tribracket    ``n``
pd                     ``crossings``
surface                see :class:`tknots.surfaces.SurfaceCode`
cochain                ``theory``, ``mod``, ``degree``, ``values``
=====================  ====================================================

Cochain ``values`` are either ``[[generator, value], ...]`` pairs or a dense
nested array indexed by the generator tuple.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import (
    FiniteBiquandle,
    FiniteBSet,
    ShadowBiquandle,
    alexander,
    alexander_biquandle,
    build_strong_connectivity,
    dihedral,
)
from .cochains import CochainTable
from .diagrams import DiagramStructure, PDCode, build_structure
from .errors import InputError
from .surfaces import SurfaceCode
from .tribracket import HorizontalTribracket, corresponding_tribracket, dihedral_tribracket

__all__ = [
    "read_json",
    "dumps",
    "write_json",
    "parse_object",
    "load",
    "shadow_to_json",
    "tribracket_to_json",
    "as_tribracket",
    "structure_to_json",
]

ALGEBRA_KINDS = ("biquandle", "shadow", "dihedral", "alexander", "alexander_biquandle")


def read_json(source: str | Path | dict) -> dict:
    """Read a JSON object from a path; dicts pass through unchanged."""
    if isinstance(source, dict):
        return source
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}", "file_not_found") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: malformed JSON ({exc.msg} at line {exc.lineno})", "malformed_json") from exc
    if not isinstance(obj, dict):
        raise InputError(f"{source}: top-level JSON value must be an object", "malformed_json")
    return obj


def _plain(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, compact separators, plain Python scalars."""
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def write_json(obj: Any, path: str | Path) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def _field(obj: dict, key: str):
    try:
        return obj[key]
    except KeyError as exc:
        raise InputError(f"{obj.get('kind', 'object')} JSON lacks field {key!r}", "malformed_json") from exc


def _int_field(obj: dict, key: str) -> int:
    v = _field(obj, key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InputError(f"field {key!r} must be an integer", "malformed_json")
    return v


def _check_size(obj: dict, actual: int) -> None:
    if "size" in obj and obj["size"] != actual:
        raise InputError(f"declared size {obj['size']} but tables have size {actual}", "size_mismatch")


def _biquandle(obj: dict) -> FiniteBiquandle:
    bq = FiniteBiquandle(_field(obj, "under"), _field(obj, "over"), obj.get("labels"))
    _check_size(obj, bq.size)
    return bq


def _cochain(obj: dict) -> CochainTable:
    theory = obj.get("theory", "SB")
    if theory not in ("SB", "LB", "N"):
        raise InputError(f"unknown cochain theory {theory!r}", "malformed_json")
    m, deg = _int_field(obj, "mod"), _int_field(obj, "degree")
    if m < 1 or deg < 0:
        raise InputError("cochain needs mod >= 1 and degree >= 0", "malformed_json")
    raw = _field(obj, "values")
    width = deg + 2 if theory == "N" else deg + 1
    pairs = isinstance(raw, list) and all(
        isinstance(r, list) and len(r) == 2 and isinstance(r[0], list) for r in raw
    )
    if pairs:
        values = {}
        for g, v in raw:
            if len(g) != width or not all(isinstance(a, int) for a in g) or not isinstance(v, int):
                raise InputError(f"cochain entry {[g, v]!r} is malformed", "malformed_json")
            if v % m:
                values[tuple(g)] = v % m
    else:
        try:
            dense = np.array(raw, dtype=np.int64)
        except (TypeError, ValueError) as exc:
            raise InputError("dense cochain values must be a rectangular integer array", "malformed_json") from exc
        if dense.ndim != width:
            raise InputError(f"dense cochain needs {width} axes, got {dense.ndim}", "malformed_json")
        values = {tuple(int(a) for a in g): int(dense[tuple(g)]) % m for g in np.argwhere(dense % m)}
    return CochainTable(theory, deg, m, values, obj.get("name", ""))


def parse_object(obj: dict):
    """Construct (and validate) the object described by a parsed JSON dict."""
    kind = obj.get("kind")
    if kind == "biquandle":
        return _biquandle(obj)
    if kind == "shadow":
        inner = _field(obj, "biquandle")
        if not isinstance(inner, dict):
            raise InputError("shadow: 'biquandle' must be an object", "malformed_json")
        bq = _biquandle(inner)
        bset = FiniteBSet(bq, _field(obj, "action"), obj.get("labels"))
        return build_strong_connectivity(ShadowBiquandle(bq, bset, obj.get("name", "")))
    if kind == "dihedral":
        return dihedral(_int_field(obj, "n"))
    if kind == "alexander":
        p = _field(obj, "p")
        if not isinstance(p, list) or not all(isinstance(c, int) for c in p):
            raise InputError("alexander: 'p' must be a list of integers", "malformed_json")
        return alexander(_int_field(obj, "n"), p)
    if kind == "alexander_biquandle":
        return alexander_biquandle(_int_field(obj, "n"), _int_field(obj, "s"))
    if kind == "tribracket":
        t = HorizontalTribracket(_field(obj, "table"), obj.get("labels"), obj.get("name", ""))
        _check_size(obj, t.size)
        return t
    if kind == "dihedral_tribracket":
        return dihedral_tribracket(_int_field(obj, "n"))
    if kind == "pd":
        return build_structure(PDCode(_field(obj, "crossings")))
    if kind == "surface":
        return SurfaceCode.from_json(obj)
    if kind == "cochain":
        return _cochain(obj)
    raise InputError(f"unknown or missing kind {kind!r}", "unknown_kind")


def load(source: str | Path | dict):
    return parse_object(read_json(source))


def as_tribracket(alg) -> HorizontalTribracket:
    """A tribracket as is, or the one corresponding to a shadow biquandle."""
    if isinstance(alg, HorizontalTribracket):
        return alg
    if isinstance(alg, ShadowBiquandle):
        return corresponding_tribracket(alg)
    raise InputError("expected a shadow biquandle or a tribracket", "invalid_structure")


def shadow_to_json(sb: ShadowBiquandle) -> dict:
    bq = sb.biquandle
    return {
        "kind": "shadow",
        "name": sb.name,
        "biquandle": {"kind": "biquandle", "size": bq.size, "under": bq.under, "over": bq.over},
        "action": sb.bset.action,
    }


def tribracket_to_json(t: HorizontalTribracket) -> dict:
    return {"kind": "tribracket", "size": t.size, "table": t.table, "name": t.name}


def structure_to_json(obj) -> dict:
    if isinstance(obj, ShadowBiquandle):
        return shadow_to_json(obj)
    if isinstance(obj, HorizontalTribracket):
        return tribracket_to_json(obj)
    if isinstance(obj, DiagramStructure):
        return obj.pd.to_json()
    if isinstance(obj, (SurfaceCode, CochainTable, PDCode)):
        return obj.to_json()
    raise InputError(f"cannot serialise {type(obj).__name__}", "invalid_structure")
