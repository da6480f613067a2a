"""Map description files.

A map file is JSON or TOML (by extension) with the schema

    {
      "p": [[k, re, im], ...],          # coefficients of p, order k >= 2
      "q": [[i, j, re, im], ...],       # coefficients of q
      "defaults": {                     # optional run parameters
        "r_grid": [0.4, 0.2, 0.1, 0.05],
        "samples": 1024, "seed": 0, "tol": 1e-12, "n_max": 64
      }
    }

The order of p is implicit in the lowest k present.  Validation failures
report the offending entry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import InputError
from .poly import SkewProduct, bi_poly, uni_poly

RUN_DEFAULTS = {
    "r_grid": (0.4, 0.2, 0.1, 0.05),
    "samples": 1024,
    "seed": 0,
    "tol": 1e-12,
    "n_max": 64,
}


@dataclass(frozen=True)
class MapSpec:
    f: SkewProduct
    defaults: dict


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InputError(f"{where}: expected a number, got {x!r}")
    return float(x)


def _index(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{where}: expected an integer exponent, got {x!r}")
    return x


def parse_map(data: dict, where: str = "<map>") -> MapSpec:
    if not isinstance(data, dict):
        raise InputError(f"{where}: top level must be a table/object")
    for key in ("p", "q"):
        if key not in data or not isinstance(data[key], list) or not data[key]:
            raise InputError(f"{where}: missing or empty coefficient list '{key}'")
    p_terms = []
    for pos, entry in enumerate(data["p"]):
        ctx = f"{where}: p[{pos}] = {entry!r}"
        if not isinstance(entry, list) or len(entry) != 3:
            raise InputError(f"{ctx}: expected [k, re, im]")
        k = _index(entry[0], ctx)
        p_terms.append((k, complex(_number(entry[1], ctx), _number(entry[2], ctx))))
    q_terms = []
    for pos, entry in enumerate(data["q"]):
        ctx = f"{where}: q[{pos}] = {entry!r}"
        if not isinstance(entry, list) or len(entry) != 4:
            raise InputError(f"{ctx}: expected [i, j, re, im]")
        i = _index(entry[0], ctx)
        j = _index(entry[1], ctx)
        q_terms.append((i, j, complex(_number(entry[2], ctx),
                                      _number(entry[3], ctx))))
    try:
        f = SkewProduct(uni_poly(p_terms), bi_poly(q_terms))
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from exc
    defaults = dict(RUN_DEFAULTS)
    extra = data.get("defaults", {})
    if not isinstance(extra, dict):
        raise InputError(f"{where}: 'defaults' must be a table/object")
    for key, value in extra.items():
        if key not in RUN_DEFAULTS:
            raise InputError(f"{where}: unknown default '{key}'")
        defaults[key] = value
    return MapSpec(f=f, defaults=defaults)


def load_map(path: Union[str, Path]) -> MapSpec:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    suffix = path.suffix.lower()
    try:
        if suffix == ".toml":
            data = tomllib.loads(raw.decode("utf-8"))
        elif suffix == ".json":
            data = json.loads(raw.decode("utf-8"))
        else:
            raise InputError(f"{path}: unknown extension {suffix!r} "
                             "(use .json or .toml)")
    except (ValueError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: parse error: {exc}") from exc
    return parse_map(data, where=str(path))
