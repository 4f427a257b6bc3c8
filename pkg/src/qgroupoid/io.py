"""JSON encoding of the package's data types.

Every file is one object with a ``"kind"`` discriminator.  Sparse vectors are
objects mapping basis indices (as strings) to scalars; scalars are ``"p/q"``
strings, integers, or ``{"a", "b", "d"}`` objects for ``a + b*sqrt(d)``.
"""

from __future__ import annotations

import json
from typing import Any

from .algebra import FiniteAlgebra, MultiMatrixAlgebra, make_multimatrix
from .bimodule import Bimodule
from .linalg import LinearMap, Vec
from .morita import MoritaContext, canonical_context, trivial_context
from .scalars import format_scalar, parse_scalar
from .weak import Base, Groupoid, WeakBialgebra, pair_groupoid, cyclic_group, disjoint_trivial

KINDS = ("algebra", "weak_bialgebra", "groupoid", "bimodule", "context", "pairing", "tower")


class MalformedInput(ValueError):
    """Input that does not decode; ``where`` names the line or field."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


def _p(where: str) -> str:
    return f"{where}." if where else ""


def _need(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise MalformedInput(where, "expected an object")
    if key not in obj:
        raise MalformedInput(f"{_p(where)}{key}", "missing field")
    return obj[key]


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise MalformedInput(where, f"expected an integer, got {x!r}")
    return x


# vectors -------------------------------------------------------------------------------

def dump_vec(v: Vec) -> dict:
    return {str(k): format_scalar(x) for k, x in sorted(v.items()) if x}


def load_vec(obj, where: str, field: int | None = None, bound: int | None = None) -> Vec:
    if not isinstance(obj, dict):
        raise MalformedInput(where, "expected a sparse vector object")
    out: Vec = {}
    for k, x in obj.items():
        try:
            i = int(k)
            val = parse_scalar(x, field)
        except (ValueError, TypeError, KeyError) as e:
            raise MalformedInput(f"{where}[{k}]", str(e) or "bad entry") from None
        if bound is not None and not 0 <= i < bound:
            raise MalformedInput(f"{where}[{k}]", f"index out of range 0..{bound - 1}")
        if val:
            out[i] = val
    return out


def dump_map(f: LinearMap) -> dict:
    return {"dim_in": f.domain, "dim_out": f.codomain, "cols": [dump_vec(c) for c in f.cols]}


def load_map(obj, where: str, field: int | None = None) -> LinearMap:
    n_in = _int(_need(obj, "dim_in", where), f"{_p(where)}dim_in")
    n_out = _int(_need(obj, "dim_out", where), f"{_p(where)}dim_out")
    cols = _need(obj, "cols", where)
    if not isinstance(cols, list) or len(cols) != n_in:
        raise MalformedInput(f"{_p(where)}cols", f"expected {n_in} columns")
    return LinearMap(n_in, n_out, [load_vec(c, f"{_p(where)}cols[{i}]", field, n_out) for i, c in enumerate(cols)])


# algebras ------------------------------------------------------------------------------

def dump_algebra(A: FiniteAlgebra) -> dict:
    out: dict[str, Any] = {"kind": "algebra", "dim": A.dim, "labels": list(A.labels), "field": A.field}
    if isinstance(A, MultiMatrixAlgebra):
        out["blocks"] = list(A.blocks)
    out["unit"] = dump_vec(A.unit)
    out["mult"] = [[i, j, dump_vec(v)] for (i, j), v in sorted(A.mult.items())]
    if A.frobenius is not None:
        out["frobenius"] = dump_vec(A.frobenius)
    return out


def load_algebra(obj, where: str = "") -> FiniteAlgebra:
    field = obj.get("field") if isinstance(obj, dict) else None
    if field is not None:
        field = _int(field, f"{_p(where)}field")
    if isinstance(obj, dict) and "blocks" in obj and "mult" not in obj:
        blocks = obj["blocks"]
        if not isinstance(blocks, list) or not all(isinstance(b, int) and b > 0 for b in blocks):
            raise MalformedInput(f"{_p(where)}blocks", "expected positive integers")
        return make_multimatrix(blocks, field)
    n = _int(_need(obj, "dim", where), f"{_p(where)}dim")
    labels = obj.get("labels") or [f"e{i}" for i in range(n)]
    if len(labels) != n:
        raise MalformedInput(f"{_p(where)}labels", f"expected {n} labels")
    mult = {}
    for k, entry in enumerate(_need(obj, "mult", where)):
        w = f"{_p(where)}mult[{k}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise MalformedInput(w, "expected [i, j, vector]")
        i, j = _int(entry[0], w), _int(entry[1], w)
        if not (0 <= i < n and 0 <= j < n):
            raise MalformedInput(w, "basis index out of range")
        mult[(i, j)] = load_vec(entry[2], w, field, n)
    unit = load_vec(_need(obj, "unit", where), f"{_p(where)}unit", field, n)
    frob = load_vec(obj["frobenius"], f"{_p(where)}frobenius", field, n) if "frobenius" in obj else None
    if "blocks" in obj:
        blocks = tuple(obj["blocks"])
        ref = make_multimatrix(blocks, field)
        A = FiniteAlgebra(n, list(labels), mult, unit, field, frob)
        if not ref.same_structure(A):
            raise MalformedInput(f"{_p(where)}blocks", "structure constants are not the matrix-unit ones")
        if frob is not None:
            ref.frobenius = frob
        ref.labels = list(labels)
        return ref
    return FiniteAlgebra(n, list(labels), mult, unit, field, frob)


def dump_weak(H: WeakBialgebra, include_base: bool = True) -> dict:
    out: dict[str, Any] = {"kind": "weak_bialgebra", "name": H.name, "algebra": dump_algebra(H.algebra)}
    n = H.dim
    out["comult"] = [{f"{k // n},{k % n}": format_scalar(x) for k, x in sorted(c.items()) if x}
                     for c in H.comult]
    out["counit"] = dump_vec(H.counit)
    if include_base and H.base is not None:
        out["base"] = {"algebra": dump_algebra(H.base.R), "source": dump_map(H.base.source),
                       "frobenius": dump_vec(H.base.frobenius)}
    if H.antipode is not None:
        out["antipode"] = dump_map(H.antipode)
    return out


def load_weak(obj, where: str = "") -> WeakBialgebra:
    A = load_algebra(_need(obj, "algebra", where), f"{_p(where)}algebra")
    n, field = A.dim, A.field
    raw = _need(obj, "comult", where)
    if not isinstance(raw, list) or len(raw) != n:
        raise MalformedInput(f"{_p(where)}comult", f"expected {n} entries")
    comult = []
    for i, c in enumerate(raw):
        w = f"{_p(where)}comult[{i}]"
        if not isinstance(c, dict):
            raise MalformedInput(w, "expected an object keyed by \"j,k\"")
        v: Vec = {}
        for key, x in c.items():
            try:
                j, k = (int(s) for s in key.split(","))
                val = parse_scalar(x, field)
            except (ValueError, TypeError, KeyError):
                raise MalformedInput(f"{w}[{key}]", "bad tensor entry") from None
            if not (0 <= j < n and 0 <= k < n):
                raise MalformedInput(f"{w}[{key}]", "basis index out of range")
            if val:
                v[j * n + k] = val
        comult.append(v)
    counit = load_vec(_need(obj, "counit", where), f"{_p(where)}counit", field, n)
    base = None
    if "base" in obj:
        b = obj["base"]
        R = load_algebra(_need(b, "algebra", f"{_p(where)}base"), f"{_p(where)}base.algebra")
        src = load_map(_need(b, "source", f"{_p(where)}base"), f"{_p(where)}base.source", field)
        frob = load_vec(b.get("frobenius", {}), f"{_p(where)}base.frobenius", field, R.dim)
        if src.domain != R.dim or src.codomain != n:
            raise MalformedInput(f"{_p(where)}base.source", "shape does not match base and algebra")
        if R.frobenius is None and frob:
            R.frobenius = frob
        base = Base(R, src, frob or dict(R.frobenius or {}))
    S = load_map(obj["antipode"], f"{_p(where)}antipode", field) if "antipode" in obj else None
    return WeakBialgebra(A, comult, counit, base, name=str(obj.get("name", "")), antipode=S)


# groupoids ------------------------------------------------------------------------------

def load_groupoid(obj, where: str = "") -> Groupoid:
    preset = obj.get("preset")
    if preset is not None:
        size = _int(_need(obj, "size", where), f"{_p(where)}size")
        makers = {"pair": pair_groupoid, "cyclic": cyclic_group, "disjoint": disjoint_trivial}
        if preset not in makers:
            raise MalformedInput(f"{_p(where)}preset", f"unknown preset {preset!r}")
        return makers[preset](size)
    objects = [str(x) for x in _need(obj, "objects", where)]
    src, tgt, arrows = {}, {}, []
    for k, a in enumerate(_need(obj, "arrows", where)):
        w = f"{_p(where)}arrows[{k}]"
        name = str(_need(a, "name", w))
        arrows.append(name)
        src[name] = str(_need(a, "source", w))
        tgt[name] = str(_need(a, "target", w))
    compose = {}
    for k, entry in enumerate(_need(obj, "compose", where)):
        if not isinstance(entry, list) or len(entry) != 3:
            raise MalformedInput(f"{_p(where)}compose[{k}]", "expected [g, h, gh]")
        compose[(str(entry[0]), str(entry[1]))] = str(entry[2])
    inverses = {str(k): str(v) for k, v in _need(obj, "inverses", where).items()}
    return Groupoid(objects, arrows, src, tgt, compose, inverses)


def dump_groupoid(G: Groupoid) -> dict:
    return {"kind": "groupoid", "objects": list(G.objects),
            "arrows": [{"name": g, "source": G.src[g], "target": G.tgt[g]} for g in G.arrows],
            "compose": [[g, h, gh] for (g, h), gh in sorted(G.compose.items())],
            "inverses": dict(sorted(G.inverses.items()))}


# bimodules and contexts -------------------------------------------------------------------

def _dump_action(action: dict) -> list:
    return [[i, j, dump_vec(v)] for (i, j), v in sorted(action.items()) if v]


def _load_action(raw, where: str, field, na: int, nb: int, dim: int) -> dict:
    out = {}
    for k, entry in enumerate(raw):
        w = f"{where}[{k}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise MalformedInput(w, "expected [i, j, vector]")
        i, j = _int(entry[0], w), _int(entry[1], w)
        if not (0 <= i < na and 0 <= j < nb):
            raise MalformedInput(w, "index out of range")
        out[(i, j)] = load_vec(entry[2], w, field, dim)
    return out


def dump_bimodule(M: Bimodule) -> dict:
    return {"kind": "bimodule", "dim": M.dim, "left": dump_algebra(M.left), "right": dump_algebra(M.right),
            "left_action": _dump_action(M.left_action), "right_action": _dump_action(M.right_action)}


def load_bimodule(obj, where: str = "") -> Bimodule:
    L = load_algebra(_need(obj, "left", where), f"{_p(where)}left")
    R = load_algebra(_need(obj, "right", where), f"{_p(where)}right")
    d = _int(_need(obj, "dim", where), f"{_p(where)}dim")
    field = L.field or R.field
    la = _load_action(_need(obj, "left_action", where), f"{_p(where)}left_action", field, L.dim, d, d)
    ra = _load_action(_need(obj, "right_action", where), f"{_p(where)}right_action", field, d, R.dim, d)
    return Bimodule(L, R, d, la, ra)


def dump_context(ctx: MoritaContext) -> dict:
    return {"kind": "context", "name": ctx.name, "R": dump_algebra(ctx.R), "S": dump_algebra(ctx.S),
            "P": dump_bimodule(ctx.P), "Q": dump_bimodule(ctx.Q), "f": dump_map(ctx.f), "g": dump_map(ctx.g),
            "f_inv": dump_vec(ctx.f_inv), "g_inv": dump_vec(ctx.g_inv)}


def load_context(obj, where: str = "") -> MoritaContext:
    preset = obj.get("preset")
    if preset == "canonical":
        blocks = _need(obj, "blocks", where)
        return canonical_context(make_multimatrix(blocks, obj.get("field")))
    if preset == "trivial":
        return trivial_context(load_algebra(_need(obj, "R", where), f"{_p(where)}R"))
    if preset is not None:
        raise MalformedInput(f"{_p(where)}preset", f"unknown preset {preset!r}")
    R = load_algebra(_need(obj, "R", where), f"{_p(where)}R")
    S = load_algebra(_need(obj, "S", where), f"{_p(where)}S")
    P = load_bimodule(_need(obj, "P", where), f"{_p(where)}P")
    Q = load_bimodule(_need(obj, "Q", where), f"{_p(where)}Q")
    field = R.field or S.field
    f = load_map(_need(obj, "f", where), f"{_p(where)}f", field)
    g = load_map(_need(obj, "g", where), f"{_p(where)}g", field)
    f_inv = load_vec(obj.get("f_inv", {}), f"{_p(where)}f_inv", field)
    g_inv = load_vec(obj.get("g_inv", {}), f"{_p(where)}g_inv", field)
    return MoritaContext(R, S, P, Q, f, g, f_inv, g_inv, str(obj.get("name", "")))


# files ----------------------------------------------------------------------------------------

def parse_text(text: str) -> dict:
    if not text.strip():
        raise MalformedInput("line 1", "empty input")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"line {e.lineno} column {e.colno}", e.msg) from None
    if not isinstance(obj, dict):
        raise MalformedInput("line 1", "top level must be an object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise MalformedInput("kind", f"expected one of {', '.join(KINDS)}, got {kind!r}")
    return obj


def load_file(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"
