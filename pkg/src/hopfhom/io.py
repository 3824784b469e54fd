"""JSON formats for Hopf algebras, morphisms, CW data, actions and chain complexes.

Structure tensors are written sparsely as sorted ``[i, j, k, c]`` entries;
omitted entries are zero.  Prime-field scalars are integers, rationals are
``"num/den"`` strings.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from .errors import InputError
from .hopf import HopfAlgebra, HopfMorphism
from .homology import CWComplexData, FpChainComplex, Subcomplex, subcomplex
from .linalg import Field

PathLike = Union[str, Path]

_META_VECTORS = ("known_group_likes", "known_dual_group_likes")


def read_json(path: PathLike) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def dumps(obj: Any) -> str:
    """Deterministic text: one top-level key per line, compact values."""
    if not isinstance(obj, dict):
        return json.dumps(obj, separators=(",", ":")) + "\n"
    lines = [f"  {json.dumps(key)}: {json.dumps(val, separators=(',', ':'))}" for key, val in obj.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def write_json(obj: Any, path: PathLike) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


# -- Hopf algebras ---------------------------------------------------------------


def _sparse(k: Field, t: np.ndarray) -> list:
    idx = np.argwhere(k.nonzero_mask(t))
    return [[int(i), int(j), int(l), k.to_json(t[i, j, l])] for i, j, l in idx]


def _dense3(k: Field, entries, n: int, what: str) -> np.ndarray:
    t = k.zeros((n, n, n))
    if not isinstance(entries, list):
        raise InputError(f"{what} must be a list of [i,j,k,c] entries")
    for e in entries:
        if not (isinstance(e, list) and len(e) == 4):
            raise InputError(f"{what}: bad entry {e!r}")
        i, j, l, c = e
        if not all(isinstance(x, int) and not isinstance(x, bool) and 0 <= x < n for x in (i, j, l)):
            raise InputError(f"{what}: index out of range in {e!r}")
        t[i, j, l] = k.add(t[i, j, l], k.scalar(c))
    return t


def _vector(k: Field, v, n: int, what: str) -> np.ndarray:
    if not (isinstance(v, list) and len(v) == n):
        raise InputError(f"{what} must be a list of length {n}")
    try:
        return k.array(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: {exc}") from exc


def _matrix(k: Field, m, rows: int, cols: int, what: str) -> np.ndarray:
    if not (isinstance(m, list) and len(m) == rows and all(isinstance(r, list) and len(r) == cols for r in m)):
        raise InputError(f"{what} must be a {rows}x{cols} matrix")
    if rows * cols == 0:
        return k.zeros((rows, cols))
    try:
        return k.array(m)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: {exc}") from exc


def hopf_to_json(h: HopfAlgebra) -> dict:
    k = h.field
    out: dict = {"field": k.spec_json(), "dim": h.dim}
    if h.basis_names is not None:
        out["basis_names"] = list(h.basis_names)
    out["mul"] = _sparse(k, h.mul)
    out["unit"] = k.array_to_json(h.unit)
    out["comul"] = _sparse(k, h.comul)
    out["counit"] = k.array_to_json(h.counit)
    out["antipode"] = k.array_to_json(h.antipode)
    meta = {}
    for key in ("origin", "group"):
        if key in h.metadata:
            meta[key] = h.metadata[key]
    for key in _META_VECTORS:
        if key in h.metadata:
            meta[key] = [k.array_to_json(k.array(v)) for v in h.metadata[key]]
    if meta:
        out["metadata"] = meta
    return out


def hopf_from_json(obj: Any) -> HopfAlgebra:
    if not isinstance(obj, dict):
        raise InputError("a Hopf algebra must be a JSON object")
    missing = [key for key in ("field", "dim", "mul", "unit", "comul", "counit", "antipode") if key not in obj]
    if missing:
        raise InputError(f"Hopf algebra JSON lacks {', '.join(missing)}")
    k = Field.from_json(obj["field"])
    n = obj["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("dim must be a positive integer")
    meta: dict = {}
    raw_meta = obj.get("metadata") or {}
    if not isinstance(raw_meta, dict):
        raise InputError("metadata must be an object")
    for key in ("origin", "group"):
        if key in raw_meta:
            meta[key] = raw_meta[key]
    for key in _META_VECTORS:
        if key in raw_meta:
            meta[key] = [list(_vector(k, v, n, key)) for v in raw_meta[key]]
    names = obj.get("basis_names")
    if names is not None and not (isinstance(names, list) and len(names) == n):
        raise InputError(f"basis_names must list {n} names")
    return HopfAlgebra(
        k,
        _dense3(k, obj["mul"], n, "mul"),
        _vector(k, obj["unit"], n, "unit"),
        _dense3(k, obj["comul"], n, "comul"),
        _vector(k, obj["counit"], n, "counit"),
        _matrix(k, obj["antipode"], n, n, "antipode"),
        basis_names=tuple(names) if names is not None else None,
        metadata=meta,
    )


def load_hopf(path: PathLike) -> HopfAlgebra:
    return hopf_from_json(read_json(path))


def save_hopf(h: HopfAlgebra, path: PathLike) -> None:
    write_json(hopf_to_json(h), path)


# -- morphisms -------------------------------------------------------------------


def morphism_to_json(f: HopfMorphism) -> dict:
    return {
        "source": hopf_to_json(f.source),
        "target": hopf_to_json(f.target),
        "matrix": f.field.array_to_json(f.matrix),
    }


def _hopf_or_ref(obj: Any, base: Optional[Path]) -> HopfAlgebra:
    if isinstance(obj, str):
        p = Path(obj)
        if not p.is_absolute() and base is not None:
            p = base / p
        return load_hopf(p)
    return hopf_from_json(obj)


def morphism_from_json(obj: Any, base: Optional[Path] = None) -> HopfMorphism:
    """``source``/``target`` may be inline objects or paths relative to ``base``."""
    if not isinstance(obj, dict) or not {"source", "target", "matrix"} <= obj.keys():
        raise InputError("a morphism needs source, target and matrix")
    src = _hopf_or_ref(obj["source"], base)
    tgt = _hopf_or_ref(obj["target"], base)
    if src.field != tgt.field:
        raise InputError("source and target live over different fields")
    return HopfMorphism(src, tgt, _matrix(src.field, obj["matrix"], tgt.dim, src.dim, "matrix"))


def load_morphism(path: PathLike) -> HopfMorphism:
    return morphism_from_json(read_json(path), Path(path).parent)


# -- CW complexes ----------------------------------------------------------------


def cw_to_json(kw: CWComplexData) -> dict:
    return {
        "cells": list(kw.cells),
        "boundary": [[[int(x) for x in row] for row in m] for m in kw.boundary],
        "name": kw.name,
    }


def cw_from_json(obj: Any) -> CWComplexData:
    if not isinstance(obj, dict) or "cells" not in obj:
        raise InputError("CW JSON needs a cells list")
    cells = obj["cells"]
    if not (isinstance(cells, list) and all(isinstance(n, int) and not isinstance(n, bool) for n in cells)):
        raise InputError("cells must be a list of integers")
    bounds = obj.get("boundary", [])
    if not isinstance(bounds, list):
        raise InputError("boundary must be a list of matrices")
    return CWComplexData(tuple(cells), tuple(bounds), str(obj.get("name", "")))


def load_cw(path: PathLike) -> CWComplexData:
    return cw_from_json(read_json(path))


def subcomplex_from_json(obj: Any, kw: CWComplexData) -> Subcomplex:
    if not isinstance(obj, dict) or not isinstance(obj.get("keep"), list):
        raise InputError('subcomplex JSON must be {"keep": [[indices], ...]}')
    return subcomplex(kw, obj["keep"])


# -- actions and F_p chains ----------------------------------------------------


def action_from_json(obj: Any, base: HopfAlgebra):
    from .actions import ActionSpec, canonical_action

    if not isinstance(obj, dict) or "prime" not in obj:
        raise InputError("action JSON needs a prime")
    p = obj["prime"]
    if obj.get("canonical"):
        return canonical_action(base, p)
    table = obj.get("table")
    if not isinstance(table, list):
        raise InputError('action JSON needs "canonical": true or a table')
    k = base.field
    mats = [_matrix(k, m, base.dim, base.dim, f"table[{i}]") for i, m in enumerate(table)]
    return ActionSpec(base, p, tuple(HopfMorphism(base, base, m) for m in mats))


def fp_chain_to_json(c: FpChainComplex) -> dict:
    return {
        "p": c.p,
        "dims": list(c.dims),
        "boundary": [[[int(x) for x in row] for row in m] for m in c.boundary],
    }


def fp_chain_from_json(obj: Any) -> FpChainComplex:
    if not isinstance(obj, dict) or not {"p", "dims"} <= obj.keys():
        raise InputError("F_p chain JSON needs p and dims")
    return FpChainComplex(obj["p"], tuple(obj["dims"]), tuple(obj.get("boundary", [])))


def load_fp_chain(path: PathLike) -> FpChainComplex:
    return fp_chain_from_json(read_json(path))
