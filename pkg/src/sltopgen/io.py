"""Reading and writing class-tuple documents.

A document is JSON of the form::

    {"n": 3,
     "classes": [
       {"profile": [{"label": "a", "blocks": [2, 1]}],
        "order_mod_center": "involution",
        "values": {"a": "1"}}
     ]}

``order_mod_center`` and ``values`` are optional.  A class may also be given
as the bare profile list.  :func:`dump_tuple` writes the canonical form: keys
in the order shown, labels sorted, blocks non-increasing, two-space indent.
"""

from __future__ import annotations

import json
from pathlib import Path

from .classdata import ClassSpec, ClassTuple, EigenBlockProfile
from .errors import SpecError


class SpecFileError(SpecError):
    """Malformed class-tuple document; the message names the line or field."""


def _fail(source, where, msg):
    raise SpecFileError(f"{source}: {where}: {msg}")


def _int(value, source, where):
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(source, where, f"expected an integer, got {value!r}")
    return value


def _parse_class(obj, n, source, where) -> ClassSpec:
    if isinstance(obj, list):
        obj = {"profile": obj}
    if not isinstance(obj, dict):
        _fail(source, where, "a class is an object with a 'profile' list")
    unknown = set(obj) - {"profile", "order_mod_center", "values"}
    if unknown:
        _fail(source, where, f"unknown keys {sorted(unknown)}")
    profile = obj.get("profile")
    if not isinstance(profile, list) or not profile:
        _fail(source, f"{where}.profile", "expected a non-empty list of {label, blocks}")
    entries = []
    for j, entry in enumerate(profile):
        at = f"{where}.profile[{j}]"
        if not isinstance(entry, dict) or set(entry) != {"label", "blocks"}:
            _fail(source, at, "expected exactly the keys 'label' and 'blocks'")
        label = entry["label"]
        if not isinstance(label, str) or not label:
            _fail(source, f"{at}.label", "expected a non-empty string")
        blocks = entry["blocks"]
        if not isinstance(blocks, list) or not blocks:
            _fail(source, f"{at}.blocks", "expected a non-empty list of positive integers")
        entries.append((label, tuple(_int(b, source, f"{at}.blocks") for b in blocks)))
    values = obj.get("values")
    if values is not None:
        if not isinstance(values, dict) or not all(isinstance(v, (str, int)) for v in values.values()):
            _fail(source, f"{where}.values", "expected an object mapping labels to element strings")
        values = {k: str(v) for k, v in values.items()}
    try:
        return ClassSpec(n, EigenBlockProfile(tuple(entries)), obj.get("order_mod_center"), values)
    except SpecError as exc:
        _fail(source, where, str(exc))


def parse_tuple(text: str, source: str = "<string>") -> ClassTuple:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        _fail(source, "document", "expected an object with 'n' and 'classes'")
    # "seed" is run metadata written by the CLI and carries no class data
    unknown = set(doc) - {"n", "classes", "seed"}
    if unknown:
        _fail(source, "document", f"unknown keys {sorted(unknown)}")
    if "n" not in doc:
        _fail(source, "n", "missing")
    n = _int(doc["n"], source, "n")
    classes = doc.get("classes")
    if not isinstance(classes, list) or not classes:
        _fail(source, "classes", "expected a non-empty list")
    specs = tuple(_parse_class(c, n, source, f"classes[{i}]") for i, c in enumerate(classes))
    return ClassTuple(specs)


def load_tuple(path) -> ClassTuple:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecFileError(f"{path}: cannot read: {exc.strerror}") from None
    return parse_tuple(text, str(path))


def class_to_dict(spec: ClassSpec) -> dict:
    out: dict = {"profile": [{"label": label, "blocks": list(parts)} for label, parts in spec.profile.entries]}
    if spec.order_mod_center is not None:
        out["order_mod_center"] = spec.order_mod_center
    if spec.concrete_values is not None:
        out["values"] = dict(spec.concrete_values)
    return out


def tuple_to_dict(classes: ClassTuple) -> dict:
    return {"n": classes.n, "classes": [class_to_dict(c) for c in classes]}


def dump_tuple(classes: ClassTuple, seed: int | None = None) -> str:
    doc = tuple_to_dict(classes)
    if seed is not None:
        doc["seed"] = seed
    return json.dumps(doc, indent=2) + "\n"
