"""JSON readers and writers for games, solutions and markets.

Every rational is written as a decimal-integer string or ``"p/q"`` in
lowest terms, so two runs on the same input produce identical bytes.
Parse errors are raised as :class:`GameInputError` naming the field.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .bargain import Face, Game2, Solution
from .errors import GameInputError
from .games.adnb2 import Adnb2Equilibrium, Adnb2Instance
from .games.dg2 import Dg2Instance, Dg2Pair
from .rational import format_rational, format_vector, parse_rational

__all__ = [
    "load_json",
    "game_from_dict",
    "game_to_dict",
    "solution_to_dict",
    "solution_from_dict",
    "face_to_dict",
    "face_from_dict",
    "dg2_from_dict",
    "adnb2_from_dict",
    "equilibrium_to_dict",
]


def load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise GameInputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise GameInputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise GameInputError(f"{path}: top level must be an object")
    return data


def _field(data: dict, name: str):
    if name not in data:
        raise GameInputError(f"missing field {name!r}")
    return data[name]


def _rat(value, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise GameInputError(f"{where}: {exc}") from None


def _rat_list(value, where: str, length=None) -> list:
    if not isinstance(value, list):
        raise GameInputError(f"{where}: expected a list")
    if length is not None and len(value) != length:
        raise GameInputError(f"{where}: expected {length} entries, got {len(value)}")
    return [_rat(v, f"{where}[{k}]") for k, v in enumerate(value)]


def _int_pair(value, where: str) -> list:
    if not isinstance(value, list) or len(value) != 2:
        raise GameInputError(f"{where}: expected two integers")
    for k, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise GameInputError(f"{where}[{k}]: expected a positive integer, got {v!r}")
    return value


# ---------------------------------------------------------------------------
# Game2


def game_from_dict(data: dict) -> Game2:
    w = _int_pair(data.get("w", [1, 1]), "w")
    c = _rat_list(data.get("c", ["0", "0"]), "c", 2)
    raw_a = _field(data, "A")
    if not isinstance(raw_a, list):
        raise GameInputError("A: expected a list of rows")
    A = [_rat_list(row, f"A[{i}]") for i, row in enumerate(raw_a)]
    m = len(A)
    b1 = _rat_list(_field(data, "b1"), "b1", m)
    b2 = _rat_list(_field(data, "b2"), "b2", m)
    e = _rat_list(_field(data, "e"), "e", m)
    if A and any(len(row) != len(A[0]) for row in A):
        raise GameInputError("A: rows have different lengths")
    return Game2(A, b1, b2, e, c[0], c[1], w[0], w[1])


def game_to_dict(game: Game2) -> dict:
    return {
        "w": [game.w1, game.w2],
        "c": format_vector((game.c1, game.c2)),
        "A": [format_vector(row) for row in game.A],
        "b1": format_vector(game.b1),
        "b2": format_vector(game.b2),
        "e": format_vector(game.e),
    }


def face_to_dict(face: Face) -> dict:
    if face.is_facet:
        return {
            "kind": "facet",
            "alpha": format_rational(face.alpha),
            "beta": format_rational(face.beta),
            "low": format_vector(face.low),
            "high": format_vector(face.high),
        }
    return {
        "kind": "vertex",
        "alpha1": format_rational(face.alpha1),
        "alpha2": format_rational(face.alpha2),
        "coords": format_vector(face.coords),
        "capped": face.capped,
    }


def face_from_dict(data: dict) -> Face:
    kind = _field(data, "kind")
    if kind == "facet":
        return Face.facet(
            _rat(_field(data, "alpha"), "face.alpha"),
            _rat(_field(data, "beta"), "face.beta"),
            _rat_list(_field(data, "low"), "face.low", 2),
            _rat_list(_field(data, "high"), "face.high", 2),
        )
    if kind == "vertex":
        capped = data.get("capped", False)
        if not isinstance(capped, bool):
            raise GameInputError("face.capped: expected a boolean")
        return Face.vertex(
            _rat(_field(data, "alpha1"), "face.alpha1"),
            _rat(_field(data, "alpha2"), "face.alpha2"),
            _rat_list(_field(data, "coords"), "face.coords", 2),
            capped,
        )
    raise GameInputError(f"face.kind: expected 'facet' or 'vertex', got {kind!r}")


def solution_to_dict(sol: Solution) -> dict:
    return {
        "status": "solved",
        "v": format_vector(sol.v),
        "y": format_vector(sol.y),
        "x": format_vector(sol.x),
        "face": face_to_dict(sol.face),
        "iterations": sol.iterations,
    }


def solution_from_dict(data: dict) -> Solution:
    if data.get("status") != "solved":
        raise GameInputError("status: expected 'solved'")
    v = _rat_list(_field(data, "v"), "v", 2)
    y = _rat_list(_field(data, "y"), "y", 2)
    x = _rat_list(_field(data, "x"), "x")
    face = _field(data, "face")
    if not isinstance(face, dict):
        raise GameInputError("face: expected an object")
    iterations = data.get("iterations", 0)
    if isinstance(iterations, bool) or not isinstance(iterations, int):
        raise GameInputError("iterations: expected an integer")
    return Solution(v[0], v[1], y[0], y[1], tuple(x), face_from_dict(face), iterations)


# ---------------------------------------------------------------------------
# games


def dg2_from_dict(data: dict) -> Dg2Instance:
    vertices = _field(data, "vertices")
    if not isinstance(vertices, list):
        raise GameInputError("vertices: expected a list")
    edges = []
    for k, edge in enumerate(_field(data, "edges")):
        if not isinstance(edge, dict):
            raise GameInputError(f"edges[{k}]: expected an object")
        try:
            edges.append((edge["from"], edge["to"], _rat(edge["cap"], f"edges[{k}].cap")))
        except KeyError as exc:
            raise GameInputError(f"edges[{k}]: missing field {exc.args[0]!r}") from None
    pairs = []
    raw_pairs = _field(data, "pairs")
    if not isinstance(raw_pairs, list) or len(raw_pairs) != 2:
        raise GameInputError("pairs: expected exactly two source-sink pairs")
    for i, p in enumerate(raw_pairs):
        if not isinstance(p, dict):
            raise GameInputError(f"pairs[{i}]: expected an object")
        try:
            s, t = p["s"], p["t"]
        except KeyError as exc:
            raise GameInputError(f"pairs[{i}]: missing field {exc.args[0]!r}") from None
        pairs.append(Dg2Pair(s, t, _rat(p.get("c", "0"), f"pairs[{i}].c"), p.get("w", 1)))
    return Dg2Instance(tuple(vertices), tuple(edges), tuple(pairs))


def adnb2_from_dict(data: dict) -> Adnb2Instance:
    u = _field(data, "u")
    if not isinstance(u, list) or len(u) != 2 or not all(isinstance(r, list) for r in u):
        raise GameInputError("u: expected two lists of integers")
    amounts = data.get("amounts")
    if amounts is not None:
        amounts = _rat_list(amounts, "amounts", len(u[0]))
    c = _rat_list(data.get("c", ["0", "0"]), "c", 2)
    w = _int_pair(data.get("w", [1, 1]), "w")
    return Adnb2Instance(u, amounts, c[0], c[1], w[0], w[1])


def equilibrium_to_dict(eq: Adnb2Equilibrium) -> dict:
    return {
        "status": "solved",
        "v": format_vector((eq.v1, eq.v2)),
        "prices": format_vector(eq.prices),
        "alloc": [format_vector(row) for row in eq.alloc],
        "gamma": format_vector(eq.gamma),
        "money": format_vector(eq.money),
        "case": eq.case,
        "k": eq.k,
        "split_good": eq.split_good,
        "groups": [list(g) for g in eq.market.groups or ()],
        "amounts": format_vector(eq.market.amounts),
    }
