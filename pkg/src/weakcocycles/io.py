"""JSON interchange for groups, functions in Sl(G), cocycles and coset posets."""

from __future__ import annotations

import json
import os
import sys

from .cocycle import (CoboundarySeed, IdempotentCocycle, ValuedCocycle, ZERO,
                      monomial_from_json)
from .errors import InputError
from .groups import FiniteGroup, as_subgroup, left_cosets
from .order import CosetPoset
from .slg import SubadditiveFn


def read_json(path: str | None):
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path or 'stdin'}: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n"


def kind_of(data) -> str:
    if isinstance(data, dict):
        if "kind" in data:
            return data["kind"]
        if "leq" in data:
            return "poset"
        if "values" in data:
            return "r"
        if "table" in data:
            return "group"
    raise InputError("unrecognised JSON document")


def group_from_ref(ref, base: str | None = None) -> FiniteGroup:
    if isinstance(ref, str):
        path = ref if base is None or os.path.isabs(ref) else os.path.join(base, ref)
        ref = read_json(path)
    if not isinstance(ref, dict) or "table" not in ref:
        raise InputError("group must be an inline group object or a path")
    try:
        return FiniteGroup.from_json(ref)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed group: {exc}") from exc


def r_to_json(r: SubadditiveFn) -> dict:
    return {"group": r.group.to_json(), "values": list(r.values)}


def r_from_json(data, base=None) -> SubadditiveFn:
    if kind_of(data) != "r":
        raise InputError("expected an r-function document")
    return SubadditiveFn(group_from_ref(data["group"], base), tuple(data["values"]))


def cocycle_to_json(f) -> dict:
    return f.to_json()


def cocycle_from_json(data, base=None):
    kind = kind_of(data)
    G = group_from_ref(data["group"], base)
    if kind == "idempotent":
        return IdempotentCocycle(G, tuple(tuple(row) for row in data["entries"]))
    if kind == "valued":
        entries = tuple(tuple(monomial_from_json(x) for x in row) for row in data["entries"])
        seed = None
        if data.get("seed") is not None:
            vals = [monomial_from_json(x) for x in data["seed"]]
            if any(v is ZERO for v in vals):
                raise InputError("seed values must be nonzero")
            seed = CoboundarySeed(G, tuple(vals))
        return ValuedCocycle(G, entries, seed)
    raise InputError(f"expected a cocycle document, got {kind!r}")


def poset_to_json(P: CosetPoset) -> dict:
    return P.to_json()


def poset_from_json(data, base=None) -> CosetPoset:
    G = group_from_ref(data["group"], base)
    H = as_subgroup(G, data.get("subgroup", [0]))
    return CosetPoset(left_cosets(G, H), tuple(tuple(row) for row in data["leq"]))
