"""Exact solver for 2-player linear Nash / nonsymmetric bargaining games.

A game maximizes ``w1 log(v1 - c1) + w2 log(v2 - c2)`` subject to
``A x + b1 v1 + b2 v2 <= e``, ``x, v >= 0``. After shifting to
``y = v - c`` the feasible set is the polyhedron

    Pi = { (x, y1, y2) >= 0 : A x + b1 y1 + b2 y2 <= d },  d = e - c1 b1 - c2 b2

whose projection onto ``(y1, y2)`` is a polygon ``N``. The optimum lies on
the upper-right boundary chain of ``N``: facets ``y1 + alpha y2 <= beta`` with
``alpha, beta > 0`` and the vertices between them. Every face on that chain
owns a range of slopes ``alpha`` (a single value for a facet, an interval
for a vertex), ordered along the chain, so the right face is found by a
binary search over ``alpha`` in which each probe is a handful of exact LPs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import (
    BargainInternalError,
    GameInputError,
    InfeasibleGameError,
    NonCompactGameError,
)
from .lp import EQ, GE, INFEASIBLE, LE, MAXIMIZE, MINIMIZE, UNBOUNDED, LpProblem, solve_lp
from .rational import as_fraction, clear_denominators

__all__ = [
    "Game2",
    "NormalizedGame",
    "Face",
    "AlphaRange",
    "AlphaInterval",
    "SearchState",
    "Solution",
    "VerificationReport",
    "Feasibility",
    "check_feasible",
    "normalize",
    "compute_extremes",
    "find_face_by_alpha",
    "alpha_range_at_point",
    "find_face_by_point",
    "compute_alpha_interval",
    "kappa",
    "truncate",
    "iteration_cap",
    "solve",
    "verify_solution",
    "allocation_witness",
]

ZERO = Fraction(0)
ONE = Fraction(1)


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), ZERO)


@dataclass(frozen=True)
class Game2:
    """A linear bargaining game: ``A x + b1 v1 + b2 v2 <= e`` with disagreement ``c`` and clouts ``w``."""

    A: tuple
    b1: tuple
    b2: tuple
    e: tuple
    c1: Fraction = ZERO
    c2: Fraction = ZERO
    w1: int = 1
    w2: int = 1

    def __post_init__(self):
        def coerce(name, value):
            try:
                return as_fraction(value)
            except (TypeError, ValueError) as exc:
                raise GameInputError(f"{name}: {exc}") from None

        A = tuple(
            tuple(coerce(f"A[{i}][{j}]", v) for j, v in enumerate(row)) for i, row in enumerate(self.A)
        )
        b1, b2, e = (
            tuple(coerce(f"{name}[{j}]", v) for j, v in enumerate(getattr(self, name)))
            for name in ("b1", "b2", "e")
        )
        c1, c2 = coerce("c1", self.c1), coerce("c2", self.c2)
        m = len(e)
        if len(A) != m or len(b1) != m or len(b2) != m:
            raise GameInputError(
                f"A has {len(A)} rows, b1 {len(b1)}, b2 {len(b2)}, e {m}; they must agree"
            )
        widths = {len(row) for row in A}
        if len(widths) > 1:
            raise GameInputError(f"rows of A have different lengths {sorted(widths)}")
        for name in ("w1", "w2"):
            w = getattr(self, name)
            if isinstance(w, bool) or not isinstance(w, int) or w < 1:
                raise GameInputError(f"{name} must be a positive integer, got {w!r}")
        for name, val in (("A", A), ("b1", b1), ("b2", b2), ("e", e), ("c1", c1), ("c2", c2)):
            object.__setattr__(self, name, val)

    @property
    def m(self) -> int:
        return len(self.e)

    @property
    def n(self) -> int:
        return len(self.A[0]) if self.A else 0

    @property
    def r(self) -> Fraction:
        return Fraction(self.w1, self.w1 + self.w2)

    def with_clouts(self, w1: int, w2: int) -> "Game2":
        return Game2(self.A, self.b1, self.b2, self.e, self.c1, self.c2, w1, w2)


@dataclass(frozen=True)
class NormalizedGame:
    """The game in shifted coordinates ``y = v - c``.

    ``A, b1, b2, d`` describe ``Pi``. The first ``base.m`` rows are the
    game's own rows; when some ``c_i < 0`` the bound ``v_i >= 0`` is no
    longer implied by ``y_i >= 0`` and is appended as ``-y_i <= c_i``.
    """

    base: Game2
    d: tuple
    A: tuple
    b1: tuple
    b2: tuple

    @property
    def m(self) -> int:
        return len(self.d)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def w1(self) -> int:
        return self.base.w1

    @property
    def w2(self) -> int:
        return self.base.w2

    def pi_rows(self):
        """Constraint rows of ``Pi`` over ``(x_1..x_n, y1, y2)``."""
        return [
            (self.A[j] + (self.b1[j], self.b2[j]), LE, self.d[j]) for j in range(self.m)
        ]

    def contains(self, x, y1, y2) -> bool:
        if any(v < 0 for v in x) or y1 < 0 or y2 < 0:
            return False
        return all(
            _dot(self.A[j], x) + self.b1[j] * y1 + self.b2[j] * y2 <= self.d[j]
            for j in range(self.m)
        )


class Feasibility(NamedTuple):
    feasible: bool
    t_star: Optional[Fraction]


class AlphaRange(NamedTuple):
    """Slopes ``[lo, hi]`` for which a point maximizes ``y1 + alpha y2``.

    ``capped`` means the true upper end is +infinity and ``hi`` is a
    finite stand-in.
    """

    lo: Fraction
    hi: Fraction
    capped: bool = False


@dataclass(frozen=True)
class Face:
    """A useful facet ``y1 + alpha y2 <= beta`` or a vertex ``(alpha1, alpha2)``."""

    kind: str
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None
    low: Optional[tuple] = None
    high: Optional[tuple] = None
    alpha1: Optional[Fraction] = None
    alpha2: Optional[Fraction] = None
    coords: Optional[tuple] = None
    capped: bool = False

    FACET = "facet"
    VERTEX = "vertex"

    @classmethod
    def facet(cls, alpha, beta, low, high) -> "Face":
        return cls(cls.FACET, alpha=alpha, beta=beta, low=tuple(low), high=tuple(high))

    @classmethod
    def vertex(cls, alpha1, alpha2, coords, capped=False) -> "Face":
        return cls(cls.VERTEX, alpha1=alpha1, alpha2=alpha2, coords=tuple(coords), capped=capped)

    @property
    def is_facet(self) -> bool:
        return self.kind == self.FACET

    @property
    def beta1(self) -> Fraction:
        a, b = self.coords
        return a + self.alpha1 * b

    @property
    def beta2(self) -> Fraction:
        a, b = self.coords
        return a + self.alpha2 * b

    def r_bounds(self):
        """Values of ``w1/(w1+w2)`` for which the solution sits on this face.

        Closed ``[a1/beta, a2/beta]`` for a facet, open ``(a/beta2, a/beta1)``
        for a vertex. A capped vertex has ``alpha2 = +inf`` so its lower end
        is 0.
        """
        if self.is_facet:
            return self.low[0] / self.beta, self.high[0] / self.beta
        a = self.coords[0]
        if a == 0:
            return ZERO, ZERO
        lo = ZERO if self.capped else a / self.beta2
        return lo, a / self.beta1

    def accepts(self, r: Fraction) -> bool:
        lo, hi = self.r_bounds()
        if self.is_facet:
            return lo <= r <= hi
        return lo < r < hi


class AlphaInterval(NamedTuple):
    """Search range ``[lo, hi]`` plus the vertices at both ends of the chain.

    When the chain is a single point (``collapsed``) ``lo`` and ``hi`` are
    None and that point is the solution.
    """

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    low_vertex: Face
    high_vertex: Face

    @property
    def collapsed(self) -> bool:
        return self.lo is None


@dataclass(frozen=True)
class SearchState:
    l: Fraction
    h: Fraction
    alpha_lo: Fraction
    alpha_hi: Fraction
    kappa: int
    r: Fraction
    probe: Optional[Fraction] = None
    face: Optional[Face] = None


@dataclass(frozen=True)
class Solution:
    v1: Fraction
    v2: Fraction
    y1: Fraction
    y2: Fraction
    x: tuple
    face: Face
    iterations: int = 0

    @property
    def v(self):
        return (self.v1, self.v2)

    @property
    def y(self):
        return (self.y1, self.y2)


@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)
    z: Optional[Fraction] = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self):
        return [k for k, v in self.checks.items() if not v]


# ---------------------------------------------------------------------------
# LPs over Pi


def _pi_lp(ng: NormalizedGame, obj_y, sense=MAXIMIZE, extra=()) -> LpProblem:
    objective = (ZERO,) * ng.n + tuple(obj_y)
    return LpProblem(objective, tuple(ng.pi_rows()) + tuple(extra), sense)


def _y_row(ng: NormalizedGame, c1, c2):
    return (ZERO,) * ng.n + (as_fraction(c1), as_fraction(c2))


def _split(ng: NormalizedGame, primal):
    return primal[: ng.n], primal[ng.n], primal[ng.n + 1]


def _optimize(ng, obj_y, sense=MAXIMIZE, extra=()):
    out = solve_lp(_pi_lp(ng, obj_y, sense, extra))
    if out.status == UNBOUNDED:
        raise NonCompactGameError("the feasible utility set is unbounded")
    if out.status == INFEASIBLE:
        raise BargainInternalError("LP over Pi unexpectedly infeasible")
    return out


def check_feasible(game: Game2) -> Feasibility:
    """Maximize ``t`` subject to ``v_i >= c_i + t`` and the game's constraints.

    The game is feasible iff the optimum ``t*`` is strictly positive.
    ``t_star`` is None when the constraint system itself is empty.
    """
    n = game.n
    # variables: x (n), v1, v2, t (free)
    rows = [(game.A[j] + (game.b1[j], game.b2[j], ZERO), LE, game.e[j]) for j in range(game.m)]
    rows.append(((ZERO,) * n + (ONE, ZERO, -ONE), GE, game.c1))
    rows.append(((ZERO,) * n + (ZERO, ONE, -ONE), GE, game.c2))
    objective = (ZERO,) * (n + 2) + (ONE,)
    nonneg = (True,) * (n + 2) + (False,)
    out = solve_lp(LpProblem(objective, tuple(rows), MAXIMIZE, nonneg))
    if out.status == INFEASIBLE:
        return Feasibility(False, None)
    if out.status == UNBOUNDED:
        raise NonCompactGameError("utilities are unbounded: the feasible set is not compact")
    t = out.primal[-1]
    return Feasibility(t > 0, t)


def normalize(game: Game2) -> NormalizedGame:
    c1, c2 = game.c1, game.c2
    d = [game.e[j] - c1 * game.b1[j] - c2 * game.b2[j] for j in range(game.m)]
    A, b1, b2 = list(game.A), list(game.b1), list(game.b2)
    zeros = (ZERO,) * game.n
    if c1 < 0:
        A.append(zeros), b1.append(-ONE), b2.append(ZERO), d.append(c1)
    if c2 < 0:
        A.append(zeros), b1.append(ZERO), b2.append(-ONE), d.append(c2)
    return NormalizedGame(game, tuple(d), tuple(A), tuple(b1), tuple(b2))


def compute_extremes(ng: NormalizedGame):
    """Lexicographic maxima ``(l1, l2)`` (y1 first) and ``(h1, h2)`` (y2 first)."""
    l1 = _optimize(ng, (ONE, ZERO)).value
    l2 = _optimize(ng, (ZERO, ONE), extra=[(_y_row(ng, 1, 0), EQ, l1)]).value
    h2 = _optimize(ng, (ZERO, ONE)).value
    h1 = _optimize(ng, (ONE, ZERO), extra=[(_y_row(ng, 0, 1), EQ, h2)]).value
    return (l1, l2), (h1, h2)


def kappa(ng: NormalizedGame) -> int:
    """Bit budget for slopes and coordinates on the chain.

    Every slope or vertex coordinate is a ratio of determinants of
    ``(m+2) x (m+2)`` submatrices of the integer-cleared rows
    ``[A | b1 | b2 | d]``; Hadamard's bound caps those at
    ``((m+2) * maxentry^2)^((m+2)/2)``, which the formula below dominates.
    """
    maxentry = 0
    for j in range(ng.m):
        ints, _ = clear_denominators(list(ng.A[j]) + [ng.b1[j], ng.b2[j], ng.d[j]])
        maxentry = max([maxentry] + [abs(v) for v in ints])
    k = ng.m + 2
    return math.ceil(k * (math.log2(k) + math.log2(1 + maxentry))) + 2


def truncate(x, kappa: int) -> Fraction:
    """``floor(x * 2^kappa) / 2^kappa`` for ``x >= 0``."""
    x = as_fraction(x)
    if x < 0:
        raise ValueError("truncate expects a nonnegative value")
    scale = 1 << kappa
    return Fraction(math.floor(x * scale), scale)


def iteration_cap(kap: int) -> int:
    return 2 * kap + 8


def _huge(ng: NormalizedGame) -> Fraction:
    return Fraction(1 << (2 * kappa(ng)))


def alpha_range_at_point(ng: NormalizedGame, witness) -> AlphaRange:
    """Range of ``alpha`` for which ``(y1*, y2*)`` maximizes ``y1 + alpha y2``.

    Solves the dual system restricted by complementary slackness with the
    primal witness ``(x*, y1*, y2*)``: multipliers ``p >= 0`` vanish on slack
    rows, columns with ``x_i* > 0`` are tight, and the ``y`` columns read
    ``b1.p = 1``, ``b2.p = alpha``. A zero ``y_i*`` relaxes its column to
    ``>=``, which is what lets the range reach 0 or +infinity at the two
    ends of the chain.
    """
    x, y1, y2 = witness
    x = tuple(as_fraction(v) for v in x)
    y1, y2 = as_fraction(y1), as_fraction(y2)
    tight = [
        j
        for j in range(ng.m)
        if _dot(ng.A[j], x) + ng.b1[j] * y1 + ng.b2[j] * y2 == ng.d[j]
    ]
    k = len(tight)
    if k == 0:
        raise BargainInternalError("point is interior to Pi: no supporting slope")
    # variables: p_j for tight rows, then r >= 0
    rows = [
        (tuple(ng.b1[j] for j in tight) + (ZERO,), EQ if y1 > 0 else GE, ONE),
        (tuple(ng.b2[j] for j in tight) + (-ONE,), EQ if y2 > 0 else GE, ZERO),
    ]
    for i in range(ng.n):
        col = tuple(ng.A[j][i] for j in tight) + (ZERO,)
        rows.append((col, EQ if x[i] > 0 else GE, ZERO))
    rows = tuple(rows)
    objective = (ZERO,) * k + (ONE,)
    lo = solve_lp(LpProblem(objective, rows, MINIMIZE))
    if lo.status == INFEASIBLE:
        raise BargainInternalError("slope system infeasible: witness is not on the useful boundary")
    hi = solve_lp(LpProblem(objective, rows, MAXIMIZE))
    if hi.status == UNBOUNDED:
        return AlphaRange(lo.value, _huge(ng), True)
    return AlphaRange(lo.value, hi.value, False)


def find_face_by_alpha(ng: NormalizedGame, alpha) -> Face:
    """The face of ``N`` on which ``y1 + alpha y2`` is maximized.

    A facet when the maximizers form a segment, otherwise the unique
    maximizing vertex together with its full slope range.
    """
    alpha = as_fraction(alpha)
    if alpha <= 0:
        raise GameInputError("alpha must be positive")
    top = _optimize(ng, (ONE, alpha))
    beta = top.value
    on_line = [(_y_row(ng, 1, alpha), EQ, beta)]
    lo = _optimize(ng, (ONE, ZERO), MINIMIZE, on_line)
    a1 = lo.value
    a2 = _optimize(ng, (ONE, ZERO), MAXIMIZE, on_line).value
    if a1 < a2:
        return Face.facet(alpha, beta, (a1, (beta - a1) / alpha), (a2, (beta - a2) / alpha))
    x, a, b = _split(ng, lo.primal)
    rng = alpha_range_at_point(ng, (x, a, b))
    return Face.vertex(rng.lo, rng.hi, (a, b), rng.capped)


def _witness_for(ng: NormalizedGame, point):
    a, b = (as_fraction(v) for v in point)
    fix = [(_y_row(ng, 1, 0), EQ, a), (_y_row(ng, 0, 1), EQ, b)]
    out = solve_lp(_pi_lp(ng, (ZERO, ZERO), MAXIMIZE, fix))
    if out.status != "optimal":
        return None
    return _split(ng, out.primal)


def allocation_witness(ng: NormalizedGame, point) -> tuple:
    """An ``x`` with ``(x, point)`` in ``Pi``; GameInputError if none exists."""
    w = _witness_for(ng, point)
    if w is None:
        raise GameInputError(f"point {tuple(point)} is not in the feasible set")
    return tuple(w[0])


def find_face_by_point(ng: NormalizedGame, point) -> Face:
    """Facet or vertex of the useful chain containing boundary point ``point``."""
    w = _witness_for(ng, point)
    if w is None:
        raise GameInputError(f"point {tuple(point)} is not in the feasible set")
    try:
        rng = alpha_range_at_point(ng, w)
    except BargainInternalError:
        raise GameInputError(f"point {tuple(point)} is not on the useful boundary") from None
    a, b = w[1], w[2]
    if rng.lo == rng.hi:
        facet = find_face_by_alpha(ng, rng.lo)
        if not facet.is_facet:
            raise BargainInternalError("single supporting slope but no facet")
        return facet
    return Face.vertex(rng.lo, rng.hi, (a, b), rng.capped)


def compute_alpha_interval(ng: NormalizedGame) -> AlphaInterval:
    """Slopes of the first and last useful facets.

    The first facet leaves ``(l1, l2)``, so its slope is the upper end of
    that vertex's range; symmetrically the last one is the lower end of
    the range at ``(h1, h2)``.
    """
    l_pt, h_pt = compute_extremes(ng)
    lf = find_face_by_point(ng, l_pt)
    if l_pt == h_pt:
        return AlphaInterval(None, None, lf, lf)
    hf = find_face_by_point(ng, h_pt)
    if lf.is_facet or hf.is_facet:
        raise BargainInternalError("an extreme point was classified as facet-interior")
    return AlphaInterval(lf.alpha2, hf.alpha1, lf, hf)


# ---------------------------------------------------------------------------
# binary search


def _facet_point(face: Face, r: Fraction):
    return face.beta * r, face.beta * (1 - r) / face.alpha


def solve(game: Game2, trace: Optional[list] = None) -> Solution:
    """Exact maximizer of ``w1 log(v1 - c1) + w2 log(v2 - c2)``.

    ``trace``, when given, receives one :class:`SearchState` per probe.
    """
    feas = check_feasible(game)
    if not feas.feasible:
        raise InfeasibleGameError("game is infeasible", t_star=feas.t_star)
    ng = normalize(game)
    r = game.r
    interval = compute_alpha_interval(ng)
    iterations = 0

    if interval.collapsed:
        face = interval.low_vertex
        point = face.coords
    elif interval.low_vertex.accepts(r):
        face = interval.low_vertex
        point = face.coords
    elif interval.high_vertex.accepts(r):
        face = interval.high_vertex
        point = face.coords
    else:
        kap = kappa(ng)
        cap = iteration_cap(kap)
        l, h = interval.lo, interval.hi
        face = point = None
        while point is None:
            if iterations >= cap:
                raise BargainInternalError(f"binary search exceeded {cap} probes")
            if l == h:
                alpha = l
            else:
                mid = (l + h) / 2
                alpha = truncate(mid, kap)
                if alpha <= l:
                    # grid too coarse for this interval: probe the exact midpoint
                    alpha = mid
            face = find_face_by_alpha(ng, alpha)
            iterations += 1
            if trace is not None:
                trace.append(SearchState(l, h, interval.lo, interval.hi, kap, r, alpha, face))
            if face.is_facet:
                lo_r, hi_r = face.r_bounds()
                if lo_r <= r <= hi_r:
                    point = _facet_point(face, r)
                elif r < lo_r:
                    l = alpha
                else:
                    h = alpha
            else:
                if face.accepts(r):
                    point = face.coords
                elif r <= face.coords[0] / face.beta2:
                    l = face.alpha2
                else:
                    h = face.alpha1
            if point is None and l > h:
                raise BargainInternalError("search interval became empty")

    y1, y2 = point
    if y1 <= 0 or y2 <= 0:
        raise BargainInternalError(f"solution {point} is not strictly positive")
    x = allocation_witness(ng, point)
    return Solution(y1 + game.c1, y2 + game.c2, y1, y2, x, face, iterations)


def verify_solution(game: Game2, sol: Solution) -> VerificationReport:
    """Check a solution exactly against the optimality conditions.

    The ratio ``z = (y1/w1) / (y2/w2)`` must equal the facet slope for a
    facet-interior optimum and fall strictly between the two slopes for a
    vertex optimum.
    """
    rep = VerificationReport()
    ng = normalize(game)
    y1, y2 = as_fraction(sol.y1), as_fraction(sol.y2)
    rep.checks["v = y + c"] = sol.v1 == y1 + game.c1 and sol.v2 == y2 + game.c2
    rep.checks["y > 0"] = y1 > 0 and y2 > 0
    x = tuple(as_fraction(v) for v in sol.x)
    rep.checks["x has n entries"] = len(x) == ng.n
    rep.checks["(x, y) in Pi"] = len(x) == ng.n and ng.contains(x, y1, y2)
    if not rep.checks["y > 0"]:
        return rep
    z = (y1 / game.w1) / (y2 / game.w2)
    rep.z = z
    face = sol.face
    if face.is_facet:
        rep.checks["on facet"] = y1 + face.alpha * y2 == face.beta
        rep.checks["tangency z = alpha"] = z == face.alpha
        rep.checks["facet endpoints in N"] = all(
            _witness_for(ng, p) is not None for p in (face.low, face.high)
        )
    else:
        rep.checks["at vertex"] = (y1, y2) == tuple(face.coords)
        upper = face.capped or z < face.alpha2
        rep.checks["alpha1 < z < alpha2"] = face.alpha1 < z and upper
    rep.checks["face accepts r"] = face.accepts(game.r)
    # face-independent certificate: the objective's gradient direction
    # (1, z) supports N exactly at y
    best = _optimize(ng, (ONE, z)).value
    rep.checks["(1, z) supports N at y"] = best == y1 + z * y2
    return rep
