"""JSON (de)serialization. Rationals are written as ``"p/q"`` strings."""

from __future__ import annotations

import json
from pathlib import Path

from .algorithms import D1Witness
from .complex import BoundaryComplex
from .exact import format_rational, parse_rational
from .polytope import Polytope
from .sphere_search import OrbitResult
from .tverberg import LinearMap, TverbergWitness

__all__ = [
    "dumps",
    "write_json",
    "read_json",
    "polytope_to_json",
    "polytope_from_json",
    "complex_to_json",
    "map_to_json",
    "map_from_json",
    "witness_to_json",
    "witness_from_json",
    "d1_witness_to_json",
    "orbit_to_json",
]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _qlist(v):
    return [format_rational(x) for x in v]


def polytope_to_json(P: Polytope) -> dict:
    return {
        "dim": P.dim,
        "name": P.name,
        "vertices": [_qlist(v) for v in P.vertices],
        "facets": [list(f) for f in P.facets],
    }


def polytope_from_json(obj: dict) -> Polytope:
    verts = [tuple(parse_rational(x) for x in v) for v in obj["vertices"]]
    if "facets" in obj and obj["facets"]:
        return Polytope(tuple(verts), tuple(tuple(f) for f in obj["facets"]),
                        int(obj["dim"]), obj.get("name", ""))
    return Polytope.from_vertices(verts, obj.get("name", ""))


def complex_to_json(P: Polytope, C: BoundaryComplex) -> dict:
    out = polytope_to_json(P)
    out["sphere_vertices"] = C.points.tolist()
    out["simplices"] = C.simplices.tolist()
    return out


def map_to_json(f: LinearMap) -> dict:
    return {"matrix": [_qlist(r) for r in f.matrix], "offset": _qlist(f.offset)}


def map_from_json(obj: dict) -> LinearMap:
    matrix = [[parse_rational(x) for x in row] for row in obj["matrix"]]
    offset = obj.get("offset")
    return LinearMap(matrix, None if offset is None else [parse_rational(x) for x in offset])


def witness_to_json(w: TverbergWitness) -> dict:
    return {
        "faces": [list(f) for f in w.faces],
        "z": _qlist(w.z),
        "coeffs": [_qlist(c) for c in w.coeffs],
    }


def witness_from_json(obj: dict) -> TverbergWitness:
    return TverbergWitness(
        tuple(tuple(f) for f in obj["faces"]),
        tuple(parse_rational(x) for x in obj["z"]),
        tuple(tuple(parse_rational(x) for x in c) for c in obj["coeffs"]),
    )


def d1_witness_to_json(w: D1Witness) -> dict:
    return {
        "edges": [list(e) for e in w.edges],
        "final_vertex": w.final_vertex,
        "value": format_rational(w.value),
    }


def orbit_to_json(res: OrbitResult) -> dict:
    return {
        "success": res.success,
        "residual": res.residual,
        "restart": res.restart,
        "iterations": res.iterations,
        "frame": {"x": res.frame.x.tolist(), "y": res.frame.y.tolist()},
        "points": res.points.tolist(),
        "values": res.values.tolist(),
        "great_circle_error": res.great_circle_error(),
        "min_pairwise_distance": res.min_pairwise_distance(),
    }
