"""JSON formats for complexes, algebras and transferred structures.

complex    {"degrees": {"0": ["e1", "e2"], ...}, "d": [[from, to, "num/den"], ...]}
algebra    complex fields plus "star" and "bullet": [[x, y, [[z, "num/den"], ...]], ...]
structure  {"(i,j)": [[[v1, ..., vn], [[w, "num/den"], ...]], ...], ...}

Field names are fixed and unknown fields are rejected.  Shape problems raise
:class:`MalformedInput`; well-formed data that breaks a mathematical
contract (unknown basis names, d∘d != 0, a failed relation) raises
:class:`~operadkit.transfer.ContractError`.
"""

import json
import re

import jsonschema

from .ratlinalg import rat, rat_str
from .transfer import Bilinear, ChainComplex, ContractError, DgAs2Algebra, TransferredStructure, check_dg_as2


class MalformedInput(ValueError):
    pass


_RAT = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"}
_NAME = {"type": "string", "minLength": 1}
_COMBO = {"type": "array", "items": {"type": "array", "prefixItems": [_NAME, _RAT], "minItems": 2, "maxItems": 2}}
_COMPLEX_PROPS = {
    "degrees": {
        "type": "object",
        "propertyNames": {"pattern": r"^-?[0-9]+$"},
        "additionalProperties": {"type": "array", "items": _NAME},
    },
    "d": {"type": "array", "items": {"type": "array", "prefixItems": [_NAME, _NAME, _RAT], "minItems": 3, "maxItems": 3}},
}
_TABLE = {"type": "array", "items": {"type": "array", "prefixItems": [_NAME, _NAME, _COMBO], "minItems": 3, "maxItems": 3}}

COMPLEX_SCHEMA = {"type": "object", "properties": _COMPLEX_PROPS, "required": ["degrees"], "additionalProperties": False}
ALGEBRA_SCHEMA = {
    "type": "object",
    "properties": dict(_COMPLEX_PROPS, star=_TABLE, bullet=_TABLE),
    "required": ["degrees"],
    "additionalProperties": False,
}
STRUCTURE_SCHEMA = {
    "type": "object",
    "propertyNames": {"pattern": r"^\([0-9]+,[0-9]+\)$"},
    "additionalProperties": {
        "type": "array",
        "items": {"type": "array", "prefixItems": [{"type": "array", "items": _NAME}, _COMBO],
                  "minItems": 2, "maxItems": 2},
    },
}


def _validate(data, schema, what):
    try:
        jsonschema.validate(data, schema, cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<top level>"
        raise MalformedInput(f"{what}: bad field {where}: {exc.message}") from None


def _load_text(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{what}: not valid JSON ({exc})") from None


def _name_index(A, name, where):
    if name not in A.index:
        raise ContractError(f"{where}: unknown basis element {name!r}")
    return A.index[name]


def complex_from_data(data, what="complex"):
    _validate(data, COMPLEX_SCHEMA, what)
    return ChainComplex(data["degrees"], [tuple(e) for e in data.get("d", [])])


def complex_to_data(A):
    return {
        "degrees": {str(n): list(names) for n, names in A.degrees.items()},
        "d": sorted([src, tgt, rat_str(c)] for src, tgt, c in A.entries()),
    }


def _table(A, rows, where):
    table = {}
    for k, (x, y, combo) in enumerate(rows):
        key = (_name_index(A, x, f"{where}[{k}]"), _name_index(A, y, f"{where}[{k}]"))
        if key in table:
            raise ContractError(f"{where}[{k}]: product of {x!r} and {y!r} given twice")
        vec = {}
        for z, c in combo:
            zi = _name_index(A, z, f"{where}[{k}]")
            vec[zi] = vec.get(zi, 0) + rat(c)
        table[key] = vec
    return table


def algebra_from_data(data, check=True):
    _validate(data, ALGEBRA_SCHEMA, "algebra")
    A = ChainComplex(data["degrees"], [tuple(e) for e in data.get("d", [])])
    alg = DgAs2Algebra(A, Bilinear(A, _table(A, data.get("star", []), "star")),
                       Bilinear(A, _table(A, data.get("bullet", []), "bullet")))
    if check:
        res = check_dg_as2(alg)
        if not res:
            raise ContractError(f"not a dg As²-algebra: {res.witness}")
    return alg


def _combo(A, vec):
    return sorted([A.basis[k], rat_str(v)] for k, v in vec.items() if v)


def algebra_to_data(alg):
    A = alg.complex
    out = complex_to_data(A)
    for name, m in (("star", alg.star), ("bullet", alg.bullet)):
        out[name] = sorted([A.basis[x], A.basis[y], _combo(A, vec)] for (x, y), vec in m.table.items() if vec)
    return out


_KEY = re.compile(r"^\((\d+),(\d+)\)$")


def structure_from_data(data, V):
    _validate(data, STRUCTURE_SCHEMA, "structure")
    ops = {}
    for key, rows in data.items():
        i, j = (int(g) for g in _KEY.match(key).groups())
        if i + j < 1:
            raise ContractError(f"structure: {key} is not an operation (need i + j >= 1)")
        table = {}
        for k, (inputs, combo) in enumerate(rows):
            where = f"structure[{key}][{k}]"
            if len(inputs) != i + j + 1:
                raise ContractError(f"{where}: m[{i},{j}] takes {i + j + 1} inputs, got {len(inputs)}")
            xs = tuple(_name_index(V, x, where) for x in inputs)
            if xs in table:
                raise ContractError(f"{where}: inputs {inputs} given twice")
            vec = {}
            for z, c in combo:
                zi = _name_index(V, z, where)
                vec[zi] = vec.get(zi, 0) + rat(c)
            vec = {z: c for z, c in vec.items() if c}
            want = sum(V.degree[x] for x in xs) + i + j - 1
            for z in vec:
                if V.degree[z] != want:
                    raise ContractError(f"{where}: output {V.basis[z]!r} has degree {V.degree[z]}, expected {want}")
            if vec:
                table[xs] = vec
        ops[(i, j)] = table
    return TransferredStructure(V, ops)


def structure_to_data(t):
    V = t.complex
    out = {}
    for (i, j), table in t.ops.items():
        rows = [[[V.basis[x] for x in xs], _combo(V, vec)] for xs, vec in table.items() if vec]
        out[f"({i},{j})"] = sorted(rows)
    return out


def dumps(data):
    """Canonical text: one sorted top-level key per line, compact values."""

    def compact(v):
        return json.dumps(v, sort_keys=True, ensure_ascii=False, separators=(",", ":"))

    if not data:
        return "{}\n"
    lines = [f" {compact(k)}: {compact(data[k])}" for k in sorted(data)]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def load_complex(text):
    return complex_from_data(_load_text(text, "complex"))


def load_algebra(text, check=True):
    return algebra_from_data(_load_text(text, "algebra"), check)


def load_structure(text, V):
    return structure_from_data(_load_text(text, "structure"), V)
