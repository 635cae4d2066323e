"""JSON input formats.

Group::

    {"name": "Z4", "table": [[0, 1, 2, 3], ...], "phi": [0, 1, 0, 1],
     "labels": ["e", "a", "a2", "a3"], "a0": 1}

``phi`` may be omitted for a plain group.  ``labels`` and ``a0`` are optional.

Twist (central extension of the group in the group file)::

    {"total": {group}, "projection": [0, 1, 2, 3, 0, 1, 2, 3],
     "kernel_character": "sign"}

Complex::

    {"cells": [{"id": "Gamma", "dim": 0, "stabilizer": [0, 1, 2, 3], "orientation": 1}, ...],
     "incidences": [{"upper": "sigma", "lower": "Gamma", "g": 0, "sign": -1}, ...]}

Overrides: a single ``{"page", "from", "matrix"}`` object, a list of them, or
``{"overrides": [...], "assume_remaining_zero": false}``.

Assertions: ``{"assertions": [{"degree": -2, "join": 0, "class": [[0], [1], [0]]},
{"degree": 0, "join": 1, "split": true}]}``.

Group elements may be written as indices or as labels.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from .ahss import Cell, DifferentialOverride, ExtensionAssertion, GCWComplex, Incidence
from .coefficients import Twist
from .errors import GroupTooLarge, ParseError
from .groups import CentralExtension, FiniteGroup, MagneticGroup, max_order


def load_json(path) -> Any:
    path = str(path)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path=path, line=None) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path=path, line=exc.lineno) from None


def _require(obj, key: str, kind, path: str, where: str = ""):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing key {key!r}{where}", path=path, line=None)
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"key {key!r}{where} has the wrong type", path=path, line=None)
    return value


def _int_matrix(value, path: str, what: str) -> list:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ParseError(f"{what} must be a list of rows", path=path, line=None)
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in value for x in r):
        raise ParseError(f"{what} entries must be integers", path=path, line=None)
    return value


def group_from_dict(data: dict, path: str = "<group>") -> FiniteGroup:
    table = _int_matrix(_require(data, "table", list, path), path, "table")
    n = len(table)
    if n > max_order():
        raise GroupTooLarge(f"group of order {n} exceeds the bound {max_order()}", order=n, bound=max_order())
    labels = data.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise ParseError("labels must list one string per element", path=path, line=None)
    labels = [str(x) for x in labels] if labels is not None else None
    phi = data.get("phi")
    if phi is None:
        return FiniteGroup(table, labels)
    if not isinstance(phi, list):
        raise ParseError("phi must be a list", path=path, line=None)
    a0 = data.get("a0")
    G = MagneticGroup(table, phi, labels, a0=None)
    if a0 is not None:
        G = G.with_a0(resolve_element(G, a0, path))
    return G


def load_group(path) -> FiniteGroup:
    return group_from_dict(load_json(path), str(path))


def resolve_element(G: FiniteGroup, x, path: str = "<input>") -> int:
    if isinstance(x, bool):
        raise ParseError("group element must be an index or a label", path=path, line=None)
    if isinstance(x, int):
        if not 0 <= x < G.order:
            raise ParseError(f"element index {x} out of range", path=path, line=None)
        return x
    if isinstance(x, str) and x in G.labels:
        return G.labels.index(x)
    raise ParseError(f"unknown group element {x!r}", path=path, line=None)


def twist_from_dict(data: dict, G: FiniteGroup, path: str = "<twist>") -> Twist:
    total = group_from_dict(_require(data, "total", dict, path), path)
    proj = _require(data, "projection", list, path)
    projection = [resolve_element(G, x, path) for x in proj]
    E = CentralExtension(total, G, projection)
    return Twist(E, data.get("kernel_character", "sign"))


def load_twist(path, G: FiniteGroup) -> Twist:
    return twist_from_dict(load_json(path), G, str(path))


def complex_from_dict(data: dict, G: FiniteGroup, path: str = "<complex>") -> GCWComplex:
    cells = []
    for i, c in enumerate(_require(data, "cells", list, path)):
        where = f" in cell {i}"
        cid = str(_require(c, "id", None, path, where))
        dim = _require(c, "dim", int, path, where)
        stab = [resolve_element(G, x, path) for x in _require(c, "stabilizer", list, path, where)]
        orient = c.get("orientation", 1)
        if orient not in (1, -1):
            raise ParseError(f"orientation must be 1 or -1{where}", path=path, line=None)
        cells.append(Cell(cid, dim, tuple(stab), orient))
    incs = []
    for i, inc in enumerate(data.get("incidences", [])):
        where = f" in incidence {i}"
        sign = inc.get("sign", inc.get("epsilon")) if isinstance(inc, dict) else None
        if sign not in (1, -1):
            raise ParseError(f"sign must be 1 or -1{where}", path=path, line=None)
        incs.append(Incidence(
            str(_require(inc, "upper", None, path, where)),
            str(_require(inc, "lower", None, path, where)),
            resolve_element(G, _require(inc, "g", None, path, where), path),
            sign,
        ))
    return GCWComplex(cells, incs)


def load_complex(path, G: FiniteGroup) -> GCWComplex:
    return complex_from_dict(load_json(path), G, str(path))


def overrides_from_json(data, path: str = "<overrides>") -> tuple:
    """(list of DifferentialOverride, assume_remaining_zero)."""
    assume = False
    if isinstance(data, dict) and "overrides" in data:
        assume = bool(data.get("assume_remaining_zero", False))
        data = data["overrides"]
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise ParseError("overrides must be an object or a list", path=path, line=None)
    out = []
    for i, ov in enumerate(data):
        where = f" in override {i}"
        page = _require(ov, "page", int, path, where)
        src = _require(ov, "from", list, path, where)
        if len(src) != 2 or not all(isinstance(x, int) for x in src):
            raise ParseError(f"'from' must be [n, t]{where}", path=path, line=None)
        mat = _int_matrix(_require(ov, "matrix", list, path, where), path, "override matrix")
        out.append(DifferentialOverride(page, tuple(src), tuple(tuple(r) for r in mat)))
    return out, assume


def load_overrides(path) -> tuple:
    return overrides_from_json(load_json(path), str(path))


def assertions_from_json(data, path: str = "<assertions>") -> list:
    if isinstance(data, dict):
        data = _require(data, "assertions", list, path)
    if not isinstance(data, list):
        raise ParseError("assertions must be a list", path=path, line=None)
    out = []
    for i, a in enumerate(data):
        where = f" in assertion {i}"
        degree = _require(a, "degree", int, path, where)
        join = _require(a, "join", int, path, where)
        if a.get("split"):
            out.append(ExtensionAssertion(degree, join, split=True))
        else:
            cls = _int_matrix(_require(a, "class", list, path, where), path, "extension class")
            out.append(ExtensionAssertion(degree, join, cls=tuple(tuple(r) for r in cls)))
    return out


def load_assertions(path) -> list:
    return assertions_from_json(load_json(path), str(path))


def parse_degrees(text: Optional[str]) -> Optional[list]:
    """'0..-7' -> [0, -1, ..., -7]; '-2' -> [-2]; '0,-2' -> [0, -2]."""
    if text is None:
        return None
    text = text.strip()
    try:
        if ".." in text:
            a, b = (int(x) for x in text.split(".."))
            step = -1 if b <= a else 1
            return list(range(a, b + step, step))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"bad degree range {text!r}", path="--degrees", line=None) from None
