"""Two-commodity flow bargaining (DG2).

Each player owns a source-sink pair on a shared capacitated digraph and
values the net amount of its own commodity leaving its source.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..bargain import Game2, Solution
from ..errors import BargainInternalError, GameInputError
from ..rational import as_fraction

ZERO = Fraction(0)


@dataclass(frozen=True)
class Dg2Pair:
    s: object
    t: object
    c: Fraction = ZERO
    w: int = 1


@dataclass(frozen=True)
class Dg2Instance:
    vertices: tuple
    edges: tuple  # (from, to, capacity)
    pairs: tuple  # two Dg2Pair

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if len(set(vertices)) != len(vertices):
            raise GameInputError("duplicate vertex ids")
        known = set(vertices)
        edges = []
        for k, edge in enumerate(self.edges):
            try:
                u, v, cap = edge
                cap = as_fraction(cap)
            except (TypeError, ValueError) as exc:
                raise GameInputError(f"edges[{k}]: {exc}") from None
            if u not in known or v not in known:
                raise GameInputError(f"edges[{k}]: endpoint not among vertices")
            if cap < 0:
                raise GameInputError(f"edges[{k}]: negative capacity")
            edges.append((u, v, cap))
        if len(self.pairs) != 2:
            raise GameInputError("DG2 needs exactly two source-sink pairs")
        pairs = []
        for i, p in enumerate(self.pairs):
            if not isinstance(p, Dg2Pair):
                p = Dg2Pair(*p)
            try:
                c = as_fraction(p.c)
            except (TypeError, ValueError) as exc:
                raise GameInputError(f"pairs[{i}].c: {exc}") from None
            if p.s not in known or p.t not in known:
                raise GameInputError(f"pairs[{i}]: terminal not among vertices")
            if p.s == p.t:
                raise GameInputError(f"pairs[{i}]: source equals sink")
            if c < 0:
                raise GameInputError(f"pairs[{i}].c must be >= 0")
            if isinstance(p.w, bool) or not isinstance(p.w, int) or p.w < 1:
                raise GameInputError(f"pairs[{i}].w must be a positive integer")
            pairs.append(Dg2Pair(p.s, p.t, c, p.w))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "pairs", tuple(pairs))


@dataclass(frozen=True)
class Dg2Flows:
    edge_flows: tuple  # per edge: (f_e^1, f_e^2)
    totals: tuple  # (f1, f2)

    def commodity(self, i: int) -> tuple:
        return tuple(f[i] for f in self.edge_flows)


def _var(inst: Dg2Instance, commodity: int, edge: int) -> int:
    return commodity * len(inst.edges) + edge


def build_dg2(inst: Dg2Instance) -> Game2:
    """Game2 whose ``x`` are the ``2|E|`` edge flows and ``v`` the totals.

    Rows: capacity per edge, conservation (as a pair of inequalities) at
    every vertex other than the commodity's own terminals, and the
    definition ``f_i = out(s_i) - in(s_i)``, again as two inequalities.
    """
    n_e = len(inst.edges)
    n = 2 * n_e
    A, b1, b2, e = [], [], [], []

    def add(coefs, v1, v2, rhs):
        row = [ZERO] * n
        for k, val in coefs.items():
            row[k] += val
        A.append(row), b1.append(Fraction(v1)), b2.append(Fraction(v2)), e.append(as_fraction(rhs))

    def net_out(i, node):
        coefs = {}
        for k, (u, v, _) in enumerate(inst.edges):
            if u == node:
                coefs[_var(inst, i, k)] = coefs.get(_var(inst, i, k), 0) + 1
            if v == node:
                coefs[_var(inst, i, k)] = coefs.get(_var(inst, i, k), 0) - 1
        return coefs

    for k, (_, _, cap) in enumerate(inst.edges):
        add({_var(inst, 0, k): 1, _var(inst, 1, k): 1}, 0, 0, cap)
    for i, pair in enumerate(inst.pairs):
        for node in inst.vertices:
            if node in (pair.s, pair.t):
                continue
            coefs = net_out(i, node)
            if not coefs:
                continue
            add(coefs, 0, 0, 0)
            add({k: -v for k, v in coefs.items()}, 0, 0, 0)
    for i, pair in enumerate(inst.pairs):
        coefs = net_out(i, pair.s)
        sel = (1, 0) if i == 0 else (0, 1)
        # v_i - net_out <= 0  and  net_out - v_i <= 0
        add({k: -v for k, v in coefs.items()}, *sel, 0)
        add(coefs, -sel[0], -sel[1], 0)

    p1, p2 = inst.pairs
    return Game2(A, b1, b2, e, p1.c, p2.c, p1.w, p2.w)


def extract_flows(inst: Dg2Instance, sol: Solution) -> Dg2Flows:
    """Unpack the allocation witness into per-edge flows and check it."""
    n_e = len(inst.edges)
    x = tuple(sol.x)
    if len(x) != 2 * n_e:
        raise GameInputError("solution does not belong to this DG2 instance")
    flows = tuple((x[k], x[n_e + k]) for k in range(n_e))
    for k, (u, v, cap) in enumerate(inst.edges):
        if flows[k][0] < 0 or flows[k][1] < 0 or flows[k][0] + flows[k][1] > cap:
            raise BargainInternalError(f"edge {u}->{v} violates capacity")
    totals = []
    for i, pair in enumerate(inst.pairs):
        net = {node: ZERO for node in inst.vertices}
        for k, (u, v, _) in enumerate(inst.edges):
            net[u] += flows[k][i]
            net[v] -= flows[k][i]
        for node, val in net.items():
            if node not in (pair.s, pair.t) and val != 0:
                raise BargainInternalError(f"commodity {i + 1} not conserved at {node!r}")
        totals.append(net[pair.s])
    if tuple(totals) != (sol.v1, sol.v2):
        raise BargainInternalError("flow totals disagree with the solution utilities")
    return Dg2Flows(flows, tuple(totals))
