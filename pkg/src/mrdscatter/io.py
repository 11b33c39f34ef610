"""JSON file formats shared by the CLI and the scripts.

Field descriptor::

    {"p": 3, "e": 1, "m": 5}                     # default moduli and primitive element
    {"p": 2, "e": 1, "m": 7, "ext_modulus": [...], "primitive_elem": ...}

Elements are written as nested coordinate lists ``[[c_00, ..], .., [c_m0, ..]]``
(F_q coordinate i, F_p digit j). On input an element may also be a plain integer
encoding, a flat list of F_q coordinates, or ``{"xi_pow": j}``.

Object files::

    {"kind": "qsystem", "field": {...}, "k": 2, "n": 4, "basis": [[elem, elem], ..], "meta": {...}}
    {"kind": "code", "field": {...}, "k": 2, "n": 4, "G": [[elem, ..], ..], "meta": {...}}

Construction descriptors::

    {"family": "u-delta", "params": {"delta": 1}, "field": {"p": 3, "m": 5}, "as": "qsystem"}
"""
from __future__ import annotations

import dataclasses
import json
from pathlib import Path

from mrdscatter.codes import RankCode, from_system
from mrdscatter.constructions import FAMILY_NAMES, build_family
from mrdscatter.errors import DescriptorError, MRDScatterError
from mrdscatter.gfarith import tower_from_descriptor
from mrdscatter.linalg import EXT, Mat
from mrdscatter.systems import QSystem

INT_PARAMS = {"s", "k"}


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(obj, path):
    Path(path).write_text(dumps(obj))


def read_json(path):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DescriptorError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise DescriptorError(f"{path}: expected a JSON object")
    return data


def parse_field(d):
    if not isinstance(d, dict) or "p" not in d or "m" not in d:
        raise DescriptorError("field descriptor needs at least p and m")
    try:
        return tower_from_descriptor(d)
    except MRDScatterError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise DescriptorError(f"bad field descriptor: {exc}") from exc


def parse_element(F, x):
    if isinstance(x, dict):
        if set(x) != {"xi_pow"}:
            raise DescriptorError(f"unknown element form {x!r}")
        return F.xi_pow(int(x["xi_pow"]))
    try:
        return F.elem(x)
    except (TypeError, ValueError) as exc:
        raise DescriptorError(f"bad element {x!r}: {exc}") from exc


def _field_of(d, field_override):
    if "field" in d:
        return parse_field(d["field"])
    if field_override is None:
        raise DescriptorError("no field descriptor in file and no --field-file given")
    return field_override


def parse_family(F, family, params):
    cls = FAMILY_NAMES.get(family)
    if cls is None:
        raise DescriptorError(f"unknown family {family!r}; choose from {sorted(FAMILY_NAMES)}")
    names = {f.name for f in dataclasses.fields(cls)}
    extra = set(params) - names
    if extra:
        raise DescriptorError(f"unknown parameters for {family}: {sorted(extra)}")
    kw = {}
    for key, val in params.items():
        if key in INT_PARAMS:
            kw[key] = int(val)
        elif key == "v":
            kw[key] = tuple(parse_element(F, a) for a in val)
        elif val is not None:
            kw[key] = parse_element(F, val)
    try:
        return cls(**kw)
    except TypeError as exc:
        raise DescriptorError(f"bad parameters for {family}: {exc}") from exc


def construct(d, field_override=None):
    """Build the object described by a construction descriptor."""
    if "family" not in d:
        raise DescriptorError("construction descriptor needs a 'family'")
    F = _field_of(d, field_override)
    family = parse_family(F, d["family"], d.get("params", {}))
    U = build_family(family, F)
    meta = {"family": d["family"], "params": d.get("params", {})}
    kind = d.get("as", "qsystem")
    if kind == "qsystem":
        return U, meta
    if kind == "code":
        return from_system(U), meta
    raise DescriptorError(f"'as' must be qsystem or code, not {kind!r}")


def object_to_dict(obj, meta=None):
    F = obj.tower
    if isinstance(obj, QSystem):
        d = {"kind": "qsystem", **obj.to_dict()}
    elif isinstance(obj, RankCode):
        d = {"kind": "code", "k": obj.k, "n": obj.n, "G": [[F.coords(a) for a in r] for r in obj.G.to_rows()]}
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    d["field"] = F.to_descriptor()
    d["meta"] = meta or {}
    return d


def object_from_dict(d, field_override=None):
    kind = d.get("kind")
    if kind is None and "family" in d:
        return construct(d, field_override)[0]
    F = _field_of(d, field_override)
    try:
        if kind == "qsystem":
            basis = tuple(tuple(parse_element(F, a) for a in v) for v in d["basis"])
            return QSystem(F, int(d["k"]), basis)
        if kind == "code":
            rows = [[parse_element(F, a) for a in r] for r in d["G"]]
            return RankCode(F, Mat.from_rows(F, rows, EXT))
    except KeyError as exc:
        raise DescriptorError(f"missing key {exc}") from exc
    raise DescriptorError(f"unknown object kind {kind!r}")


def load_object(path, field_override=None):
    return object_from_dict(read_json(path), field_override)
