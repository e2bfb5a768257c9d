"""Independent checks for the exact solvers.

* :func:`numeric_maximize` climbs the concave objective along the upper
  boundary of ``N`` with floating-point LPs (HiGHS via scipy), sharing no
  code with the exact path.
* :func:`brute_force_faces` rebuilds the useful chain of ``N`` from plain
  support LPs ``max y1 + alpha y2``, without any of the face procedures.
* :func:`adnb2_via_lnb2` feeds a goods market to the generic solver.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from .bargain import Face, Game2, NormalizedGame, Solution, kappa, solve
from .errors import BargainInternalError, InfeasibleGameError, NonCompactGameError
from .games.adnb2 import Adnb2Instance
from .lp import EQ, LE, MAXIMIZE, OPTIMAL, UNBOUNDED, LpProblem, solve_lp

__all__ = [
    "OracleResult",
    "numeric_maximize",
    "support_chain",
    "brute_force_faces",
    "face_for_alpha",
    "adnb2_via_lnb2",
    "adnb2_game",
]

ZERO = Fraction(0)
ONE = Fraction(1)
_INV_PHI = (math.sqrt(5) - 1) / 2
_HIGHS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


@dataclass(frozen=True)
class OracleResult:
    point: tuple
    objective: float
    method: str
    tolerance: float


class _FloatPi:
    """``Pi`` as float arrays for scipy."""

    def __init__(self, ng: NormalizedGame):
        self.n = ng.n
        rows = [[float(v) for v in ng.A[j]] + [float(ng.b1[j]), float(ng.b2[j])] for j in range(ng.m)]
        self.A_ub = np.array(rows, dtype=float).reshape(ng.m, ng.n + 2)
        self.b_ub = np.array([float(v) for v in ng.d], dtype=float)

    def _run(self, wy1, wy2, bounds):
        c = np.zeros(self.n + 2)
        c[-2], c[-1] = -wy1, -wy2
        res = linprog(c, A_ub=self.A_ub, b_ub=self.b_ub, bounds=bounds, method="highs", options=_HIGHS)
        if res.status == 3:
            raise NonCompactGameError("the feasible utility set is unbounded")
        return res if res.status == 0 else None

    def maximize(self, wy1, wy2, y2_min=None):
        bounds = [(0, None)] * (self.n + 2)
        if y2_min is not None:
            bounds[-1] = (y2_min, None)
        res = self._run(wy1, wy2, bounds)
        return None if res is None else (res.x[-2], res.x[-1])

    def upper(self, y1):
        """``(g(y1), g'(y1))`` with ``g(y1) = max{y2 : (y1, y2) in N}``.

        The slope is the LP marginal of the pinned ``y1`` bound, i.e. a
        supergradient of the concave ``g`` at kinks.
        """
        bounds = [(0, None)] * self.n + [(y1, y1), (0, None)]
        res = self._run(0.0, 1.0, bounds)
        if res is None:
            return -math.inf, 0.0
        slope = -(res.lower.marginals[-2] + res.upper.marginals[-2])
        return res.x[-1], slope


def numeric_maximize(ng: NormalizedGame, tol: float = 1e-9) -> OracleResult:
    """Maximize ``w1 log y1 + w2 log y2`` along the upper boundary of ``N``.

    Between the two lexicographic extremes that boundary is the graph of
    the concave ``g(y1) = max{y2 : (y1, y2) in N}``, so the objective
    ``f(y1) = w1 log y1 + w2 log g(y1)`` is strictly concave. Golden-section
    search on ``f`` narrows the bracket until function values stop being
    informative (around sqrt of machine precision); bisection on the sign
    of the supergradient ``w1/y1 + w2 g'/g`` then takes it down to ``tol``.
    """
    fp = _FloatPi(ng)
    w1, w2 = ng.w1, ng.w2
    wide = fp.maximize(1.0, 0.0)
    if wide is None:
        raise InfeasibleGameError("numeric oracle: Pi is empty")
    tall = fp.maximize(0.0, 1.0)
    narrow = fp.maximize(1.0, 0.0, y2_min=tall[1] - 1e-9 * max(1.0, abs(tall[1])))
    a, b = min(narrow[0], wide[0]), wide[0]

    def f(y1):
        y2 = fp.upper(y1)[0]
        if y1 <= 0 or y2 <= 0:
            return -math.inf
        return w1 * math.log(y1) + w2 * math.log(y2)

    coarse = max(tol, 1e-6 * max(1.0, b))
    if b - a > coarse:
        p = b - _INV_PHI * (b - a)
        q = a + _INV_PHI * (b - a)
        fp_, fq = f(p), f(q)
        while b - a > coarse:
            if fp_ < fq:
                a, p, fp_ = p, q, fq
                q = a + _INV_PHI * (b - a)
                fq = f(q)
            else:
                b, q, fq = q, p, fp_
                p = b - _INV_PHI * (b - a)
                fp_ = f(p)
    while b - a > tol:
        mid = 0.5 * (a + b)
        if mid in (a, b):
            break
        y2, slope = fp.upper(mid)
        if mid <= 0 or y2 <= 0:
            # only possible at an end of the bracket; move inward
            if mid <= 0:
                a = mid
            else:
                b = mid
            continue
        if w1 / mid + w2 * slope / y2 > 0:
            a = mid
        else:
            b = mid
    y1 = 0.5 * (a + b)
    y2 = fp.upper(y1)[0]
    obj = w1 * math.log(y1) + w2 * math.log(y2) if y1 > 0 and y2 > 0 else -math.inf
    return OracleResult((float(y1), float(y2)), float(obj), "golden-section + supergradient bisection", tol)


# ---------------------------------------------------------------------------
# exact face structure from support LPs only


def _support(ng: NormalizedGame, obj_y, extra=()):
    objective = (ZERO,) * ng.n + tuple(obj_y)
    out = solve_lp(LpProblem(objective, tuple(ng.pi_rows()) + tuple(extra), MAXIMIZE))
    if out.status == UNBOUNDED:
        raise NonCompactGameError("the feasible utility set is unbounded")
    if out.status != OPTIMAL:
        raise InfeasibleGameError("Pi is empty")
    return out


def _lex_max(ng: NormalizedGame, first: int):
    e = [ZERO, ZERO]
    e[first] = ONE
    top = _support(ng, e).value
    fix = (ZERO,) * ng.n + tuple(e)
    other = [ONE - v for v in e]
    second = _support(ng, other, [(fix, EQ, top)]).value
    return (top, second) if first == 0 else (second, top)


def _point(ng: NormalizedGame, alpha):
    out = _support(ng, (ONE, alpha))
    return out.primal[ng.n], out.primal[ng.n + 1]


def support_chain(ng: NormalizedGame) -> list:
    """Vertices of the useful chain, from the y1-extreme to the y2-extreme.

    Recursive support-function refinement: for consecutive known vertices
    P, Q maximize along the normal of PQ; either PQ is an edge or a new
    vertex appears beyond it.
    """
    l, h = _lex_max(ng, 0), _lex_max(ng, 1)
    if l == h:
        return [l]

    def refine(p, q):
        alpha = (p[0] - q[0]) / (q[1] - p[1])
        out = _support(ng, (ONE, alpha))
        if out.value == p[0] + alpha * p[1]:
            return []
        # the maximizer may be any point of a face beyond PQ; pin a vertex
        # with a lexicographic tie-break toward p
        beta = out.value
        line = ((ZERO,) * ng.n + (ONE, alpha), EQ, beta)
        a = _support(ng, (ONE, ZERO), [line]).value
        mid = (a, (beta - a) / alpha)
        return refine(p, mid) + [mid] + refine(mid, q)

    return [l] + refine(l, h) + [h]


def _chain_faces(ng: NormalizedGame, verts) -> list:
    huge = Fraction(1 << (2 * kappa(ng)))
    if len(verts) == 1:
        return [Face.vertex(ZERO, huge, verts[0], capped=True)]
    slopes = [(p[0] - q[0]) / (q[1] - p[1]) for p, q in zip(verts, verts[1:])]
    faces = []
    for k, v in enumerate(verts):
        lo = slopes[k - 1] if k > 0 else ZERO
        hi = slopes[k] if k < len(slopes) else huge
        faces.append(Face.vertex(lo, hi, v, capped=k == len(slopes)))
        if k < len(slopes):
            q = verts[k + 1]
            faces.append(Face.facet(slopes[k], v[0] + slopes[k] * v[1], q, v))
    return faces


def brute_force_faces(
    ng: NormalizedGame,
    grid: int = 256,
    alpha_lo: Optional[Fraction] = None,
    alpha_hi: Optional[Fraction] = None,
) -> list:
    """Useful faces of ``N`` (alternating vertex, facet, ..., vertex) from a slope sweep.

    ``y1 + alpha y2`` is maximized at ``grid`` evenly spaced slopes in
    ``[alpha_lo, alpha_hi]`` (by default the extreme slopes of
    :func:`support_chain`). Maximizers are fingerprinted by their exact
    ``(y1, y2)``; a run of equal fingerprints is one vertex, and consecutive
    distinct vertices bound a facet. Because the set of slopes a vertex
    owns is an interval, equal fingerprints at both ends of a stretch of
    grid points settle every point in between without solving it.
    """
    l, h = _lex_max(ng, 0), _lex_max(ng, 1)
    if l == h:
        return _chain_faces(ng, [l])
    if alpha_lo is None or alpha_hi is None:
        chain = support_chain(ng)
        slopes = [(p[0] - q[0]) / (q[1] - p[1]) for p, q in zip(chain, chain[1:])]
        alpha_lo = slopes[0] if alpha_lo is None else alpha_lo
        alpha_hi = slopes[-1] if alpha_hi is None else alpha_hi
    if grid < 2 or alpha_lo == alpha_hi:
        alphas = [Fraction(alpha_lo)]
    else:
        step = (Fraction(alpha_hi) - Fraction(alpha_lo)) / (grid - 1)
        alphas = [alpha_lo + k * step for k in range(grid)]
    seen = [None] * len(alphas)

    def fill(i, j):
        for k in (i, j):
            if seen[k] is None:
                seen[k] = _point(ng, alphas[k])
        if j - i <= 1:
            return
        if seen[i] == seen[j]:
            for k in range(i + 1, j):
                seen[k] = seen[i]
            return
        mid = (i + j) // 2
        fill(i, mid)
        fill(mid, j)

    fill(0, len(alphas) - 1)
    verts = sorted({l, h, *seen}, key=lambda p: (-p[0], p[1]))
    return _chain_faces(ng, verts)


def face_for_alpha(faces, alpha) -> Face:
    """The face of a chain (as returned above) that owns slope ``alpha``."""
    alpha = Fraction(alpha)
    for f in faces:
        if f.is_facet and f.alpha == alpha:
            return f
    for f in faces:
        if not f.is_facet and f.alpha1 < alpha and (f.capped or alpha < f.alpha2):
            return f
    raise BargainInternalError(f"no face owns slope {alpha}")


# ---------------------------------------------------------------------------


def adnb2_game(inst: Adnb2Instance) -> Game2:
    """The goods market as a generic game over ``x_1j, x_2j``."""
    g = inst.g
    n = 2 * g
    A, b1, b2, e = [], [], [], []
    for i in range(2):
        row = [ZERO] * n
        for j in range(g):
            row[i * g + j] = Fraction(inst.u[i][j])
        sel = (ONE, ZERO) if i == 0 else (ZERO, ONE)
        # v_i <= u_i . x_i  and  v_i >= u_i . x_i
        A.append([-v for v in row]), b1.append(sel[0]), b2.append(sel[1]), e.append(ZERO)
        A.append(row), b1.append(-sel[0]), b2.append(-sel[1]), e.append(ZERO)
    for j in range(g):
        row = [ZERO] * n
        row[j] = row[g + j] = ONE
        A.append(row), b1.append(ZERO), b2.append(ZERO), e.append(inst.amounts[j])
    return Game2(A, b1, b2, e, inst.c1, inst.c2, inst.w1, inst.w2)


def adnb2_via_lnb2(inst: Adnb2Instance) -> Solution:
    return solve(adnb2_game(inst))
