"""Instance generators and independent reference implementations for tests."""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from nashbargain.bargain import Game2, check_feasible, compute_extremes, normalize
from nashbargain.errors import NonCompactGameError
from nashbargain.games import Adnb2Instance, Dg2Instance, Dg2Pair, check_adnb2_feasible
from nashbargain.lp import EQ, GE, LE, MAXIMIZE, LpProblem

F = Fraction


# ---------------------------------------------------------------------------
# bargaining games


def triangle(w1=1, w2=1, c1=0, c2=0) -> Game2:
    return Game2([[]], [1], [1], [1], c1, c2, w1, w2)


def two_facet(w1=1, w2=1) -> Game2:
    # y1 + y2/2 <= 1 and y1/2 + y2 <= 1
    return Game2([[], []], [1, F(1, 2)], [F(1, 2), 1], [1, 1], 0, 0, w1, w2)


def box(w1=1, w2=1) -> Game2:
    return Game2([[], []], [1, 0], [0, 1], [1, 1], 0, 0, w1, w2)


def random_game(rng: random.Random, max_m=6, max_n=6, lo=-5, hi=5) -> Game2:
    """A random feasible compact game; infeasible or unbounded draws are rerolled."""
    while True:
        m, n = rng.randint(1, max_m), rng.randint(0, max_n)
        A = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]
        b1 = [rng.randint(lo, hi) for _ in range(m)]
        b2 = [rng.randint(lo, hi) for _ in range(m)]
        e = [rng.randint(lo, hi) for _ in range(m)]
        c1 = F(rng.randint(0, 6), rng.randint(1, 6))
        c2 = F(rng.randint(0, 6), rng.randint(1, 6))
        game = Game2(A, b1, b2, e, c1, c2, rng.randint(1, 4), rng.randint(1, 4))
        try:
            if not check_feasible(game).feasible:
                continue
            compute_extremes(normalize(game))
        except NonCompactGameError:
            continue
        return game


# ---------------------------------------------------------------------------
# games frontends


def bottleneck(w1=1, w2=1) -> Dg2Instance:
    """Two pairs whose only routes share the unit edge a -> b."""
    return Dg2Instance(
        ["s1", "s2", "a", "b", "t1", "t2"],
        [("s1", "a", 1), ("s2", "a", 1), ("a", "b", 1), ("b", "t1", 1), ("b", "t2", 1)],
        [Dg2Pair("s1", "t1", 0, w1), Dg2Pair("s2", "t2", 0, w2)],
    )


def random_market(rng: random.Random, max_goods=6, unit_amounts=False) -> Adnb2Instance:
    """Feasible market with utilities in 1..10 and random rational disagreement."""
    while True:
        g = rng.randint(1, max_goods)
        u = [[rng.randint(1, 10) for _ in range(g)] for _ in range(2)]
        if unit_amounts:
            amounts = [F(1)] * g
        else:
            amounts = [F(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(g)]
        tot = [sum(a * b for a, b in zip(row, amounts)) for row in u]
        c1 = F(rng.randint(0, int(3 * tot[0])), rng.randint(3, 8))
        c2 = F(rng.randint(0, int(3 * tot[1])), rng.randint(3, 8))
        inst = Adnb2Instance(u, amounts, c1, c2, rng.randint(1, 4), rng.randint(1, 4))
        if check_adnb2_feasible(inst).feasible:
            return inst


# ---------------------------------------------------------------------------
# LP reference: vertex enumeration


def random_lp(rng: random.Random, max_vars=5, max_rows=5) -> LpProblem:
    """Entries in [-5, 5]; mostly ``<=`` rows with rhs >= 0 so that all three
    outcomes show up in useful proportions."""
    n, m = rng.randint(1, max_vars), rng.randint(1, max_rows)
    rows = []
    for _ in range(m):
        row = [rng.randint(-5, 5) for _ in range(n)]
        rel = rng.choice((LE, LE, LE, LE, GE, EQ))
        rhs = rng.randint(0, 5) if rel == LE else rng.randint(-5, 5)
        rows.append((row, rel, rhs))
    if rng.random() < 0.5:
        rows.append(([rng.randint(0, 3) for _ in range(n)], LE, rng.randint(1, 9)))
    objective = [rng.randint(-5, 5) for _ in range(n)]
    sense = rng.choice(("max", "min"))
    return LpProblem(objective, rows, sense)


def _solve_square(M, rhs):
    """Unique solution of ``M x = rhs`` (integer data), or None if singular.

    Plain integer Gauss-Jordan: rows are cross-multiplied and reduced by
    their gcd, and the answer is read off as ``rhs_i / diag_i``.
    """
    n = len(M)
    aug = [[int(v) for v in row] + [int(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f, g = aug[r][col], p[col]
                new = [g * a - f * b for a, b in zip(aug[r], p)]
                d = math.gcd(*new)
                aug[r] = [v // d for v in new] if d > 1 else new
    return [F(row[n], row[i]) for i, row in enumerate(aug)]


def _vertices(G, h, eq=()):
    """Vertices of ``{x : G x <= h, E x = f}`` for ``eq = [(E_row, f), ...]``."""
    n = len(G[0])
    k = n - len(eq)
    found = set()
    for subset in itertools.combinations(range(len(G)), k):
        M = [G[i] for i in subset] + [row for row, _ in eq]
        rhs = [h[i] for i in subset] + [f for _, f in eq]
        x = _solve_square(M, rhs)
        if x is None:
            continue
        if all(sum(a * v for a, v in zip(row, x)) <= b for row, b in zip(G, h)):
            found.add(tuple(x))
    return found


def enumerate_lp(problem: LpProblem):
    """Reference (status, value) by brute force; every variable must be >= 0.

    Vertices of the feasible set give the optimum; extreme rays of its
    recession cone, normalized by ``sum(d) = 1``, decide unboundedness.
    """
    assert all(problem.nonneg)
    n = problem.n_vars
    G, h = [], []
    for row, rel, rhs in problem.constraints:
        if rel in (LE, EQ):
            G.append(list(row)), h.append(rhs)
        if rel in (GE, EQ):
            G.append([-a for a in row]), h.append(-rhs)
    for i in range(n):
        G.append([-1 if j == i else 0 for j in range(n)]), h.append(0)
    sign = 1 if problem.sense == MAXIMIZE else -1
    c = [sign * a for a in problem.objective]

    verts = _vertices(G, h)
    if not verts:
        return "infeasible", None
    rays = _vertices(G, [0] * len(G), eq=[([1] * n, 1)])
    if any(sum(a * d for a, d in zip(c, ray)) > 0 for ray in rays):
        return "unbounded", None
    best = max(sum(a * v for a, v in zip(c, x)) for x in verts)
    return "optimal", sign * best


def certificate_residuals(problem: LpProblem, primal, dual, value) -> list:
    """Re-derive the optimality certificate; returns the nonzero residuals."""
    out = []
    maximize = problem.sense == MAXIMIZE
    for j, (row, rel, rhs) in enumerate(problem.constraints):
        lhs = sum(a * x for a, x in zip(row, primal))
        slack = rhs - lhs
        if rel == LE and slack < 0 or rel == GE and slack > 0 or rel == EQ and slack != 0:
            out.append(("primal", j))
        y = dual[j]
        if rel == LE and (y < 0 if maximize else y > 0):
            out.append(("dual sign", j))
        if rel == GE and (y > 0 if maximize else y < 0):
            out.append(("dual sign", j))
        if y * slack != 0:
            out.append(("slackness", j))
    for i in range(problem.n_vars):
        col = sum(row[i] * y for (row, _, _), y in zip(problem.constraints, dual))
        red = problem.objective[i] - col
        if (red > 0) if maximize else (red < 0):
            out.append(("reduced cost", i))
        if red * primal[i] != 0:
            out.append(("slackness", f"x{i}"))
    if sum(rhs * y for (_, _, rhs), y in zip(problem.constraints, dual)) != value:
        out.append(("gap", None))
    if sum(a * x for a, x in zip(problem.objective, primal)) != value:
        out.append(("value", None))
    return out
