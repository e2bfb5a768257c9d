"""Combinatorial solver for 2-player bargaining over divisible goods (ADNB2).

The bargaining solution coincides with the equilibrium of a flexible
budget market in which buyer ``i`` spends ``w_i + c_i / gamma_i`` where
``gamma_i`` is its maximum bang-per-buck. With goods sorted by
``u_1j / u_2j`` the equilibrium allocation is a split point: player 1 takes
a prefix, player 2 the suffix, and at most one good is shared. Each of the
``O(g)`` split patterns gives linear equations for the prices, so the
candidates can be enumerated and checked exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from ..errors import BargainInternalError, GameInputError, InfeasibleGameError
from ..rational import as_fraction

ZERO = Fraction(0)


@dataclass(frozen=True)
class Adnb2Instance:
    """Utilities ``u`` (2 x g, nonnegative ints), per-good ``amounts``.

    ``groups`` is set only on merged instances: ``groups[j]`` lists the
    original goods that merged good ``j`` stands for.
    """

    u: tuple
    amounts: Optional[tuple] = None
    c1: Fraction = ZERO
    c2: Fraction = ZERO
    w1: int = 1
    w2: int = 1
    groups: Optional[tuple] = None

    def __post_init__(self):
        if len(self.u) != 2:
            raise GameInputError("u must have exactly two rows")
        u = tuple(tuple(row) for row in self.u)
        g = len(u[0])
        if g == 0 or len(u[1]) != g:
            raise GameInputError("both rows of u must list the same, nonzero number of goods")
        for row in u:
            for val in row:
                if isinstance(val, bool) or not isinstance(val, int) or val < 0:
                    raise GameInputError(f"utilities must be nonnegative integers, got {val!r}")
        amounts = (Fraction(1),) * g if self.amounts is None else tuple(as_fraction(a) for a in self.amounts)
        if len(amounts) != g:
            raise GameInputError(f"amounts has {len(amounts)} entries, expected {g}")
        if any(a <= 0 for a in amounts):
            raise GameInputError("amounts must be positive")
        if any(u[0][j] == 0 and u[1][j] == 0 for j in range(g)):
            raise GameInputError("every good must be desired by some player")
        if not any(u[0]) or not any(u[1]):
            raise GameInputError("every player must desire some good")
        c1, c2 = as_fraction(self.c1), as_fraction(self.c2)
        if c1 < 0 or c2 < 0:
            raise GameInputError("disagreement utilities must be >= 0")
        for name in ("w1", "w2"):
            w = getattr(self, name)
            if isinstance(w, bool) or not isinstance(w, int) or w < 1:
                raise GameInputError(f"{name} must be a positive integer")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "amounts", amounts)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    @property
    def g(self) -> int:
        return len(self.amounts)

    @property
    def merged(self) -> bool:
        return self.groups is not None


class Adnb2Feasibility(NamedTuple):
    """Result of the greedy sweeps; indices are 0-based positions in the merged order.

    ``k1``/``k2`` is None when that player cannot reach its disagreement
    utility even with every good.
    """

    feasible: bool
    k1: Optional[int]
    k2: Optional[int]
    x: Optional[Fraction]
    y: Optional[Fraction]


@dataclass(frozen=True)
class Adnb2Equilibrium:
    market: Adnb2Instance  # the merged market the fields refer to
    prices: tuple
    alloc: tuple  # alloc[i][j]: amount of merged good j bought by player i
    v1: Fraction
    v2: Fraction
    gamma: tuple
    money: tuple
    case: int
    k: int
    split_good: Optional[int] = None


def _ratio_key(u1: int, u2: int):
    # sort key for u1/u2 with u2 == 0 treated as +infinity
    return (1, Fraction(u1)) if u2 == 0 else (0, Fraction(u1, u2))


def merge_goods(raw: Adnb2Instance) -> Adnb2Instance:
    """Collapse goods with equal ``u_1j/u_2j`` and sort by that ratio, decreasing.

    A class is represented by its member with the smallest positive
    utility for a player who values the class (player 1 unless the ratio
    is 0); each member counts as ``u_ij / u_ik`` units of the
    representative, so the utility both players can draw from a class is
    unchanged.
    """
    classes = {}
    for j in range(raw.g):
        classes.setdefault(_ratio_key(raw.u[0][j], raw.u[1][j]), []).append(j)
    u1, u2, amounts, groups = [], [], [], []
    for key in sorted(classes, reverse=True):
        members = classes[key]
        scale_row = 0 if raw.u[0][members[0]] > 0 else 1
        k = min(members, key=lambda j: (raw.u[scale_row][j], j))
        base = raw.u[scale_row][k]
        amounts.append(sum((Fraction(raw.u[scale_row][j], base) * raw.amounts[j] for j in members), ZERO))
        u1.append(raw.u[0][k])
        u2.append(raw.u[1][k])
        groups.append(tuple(members))
    return Adnb2Instance(
        (tuple(u1), tuple(u2)), tuple(amounts), raw.c1, raw.c2, raw.w1, raw.w2, tuple(groups)
    )


def _ensure_merged(inst: Adnb2Instance) -> Adnb2Instance:
    return inst if inst.merged else merge_goods(inst)


def _sweep(utils, amounts, need):
    """First index where ``need`` is met buying greedily in the given order.

    Returns ``(index, amount of that good)`` with the amount strictly below
    the good's supply unless it is the last one, or None if unreachable.
    """
    for j, (u, b) in enumerate(zip(utils, amounts)):
        if need < u * b:
            return j, need / u
        need -= u * b
    if need == 0:
        return len(amounts) - 1, amounts[-1]
    return None


def check_adnb2_feasible(inst: Adnb2Instance) -> Adnb2Feasibility:
    """Can both players strictly exceed their disagreement utilities?

    Player 1 is served from the front of the ratio order, player 2 from the
    back; the game is feasible iff the two greedy baskets leave something
    over, i.e. ``k1 < k2`` or ``k1 == k2`` and ``x + y < b_k1``.
    """
    mk = _ensure_merged(inst)
    n = mk.g
    s1 = _sweep(mk.u[0], mk.amounts, mk.c1)
    s2 = _sweep(mk.u[1][::-1], mk.amounts[::-1], mk.c2)
    k1, x = s1 if s1 else (None, None)
    k2, y = (n - 1 - s2[0], s2[1]) if s2 else (None, None)
    if k1 is None or k2 is None:
        return Adnb2Feasibility(False, k1, k2, x, y)
    ok = k1 < k2 or (k1 == k2 and x + y < mk.amounts[k1])
    return Adnb2Feasibility(ok, k1, k2, x, y)


def equilibrium_violations(eq: Adnb2Equilibrium) -> list:
    """Exact market conditions that fail for ``eq`` (empty when it is an equilibrium)."""
    mk = eq.market
    bad = []
    if any(p <= 0 for p in eq.prices):
        return ["nonpositive price"]
    for j in range(mk.g):
        if eq.alloc[0][j] < 0 or eq.alloc[1][j] < 0:
            bad.append(f"negative allocation of good {j}")
        if eq.alloc[0][j] + eq.alloc[1][j] != mk.amounts[j]:
            bad.append(f"good {j} does not clear")
    c = (mk.c1, mk.c2)
    w = (mk.w1, mk.w2)
    v = (eq.v1, eq.v2)
    for i in range(2):
        bpb = [Fraction(mk.u[i][j]) / eq.prices[j] for j in range(mk.g)]
        gamma = max(bpb)
        if gamma != eq.gamma[i]:
            bad.append(f"gamma_{i + 1} is not the maximum bang-per-buck")
        for j in range(mk.g):
            if eq.alloc[i][j] > 0 and bpb[j] != gamma:
                bad.append(f"player {i + 1} buys good {j} below maximum bang-per-buck")
        spent = sum((eq.prices[j] * eq.alloc[i][j] for j in range(mk.g)), ZERO)
        if spent != eq.money[i] or spent != w[i] + c[i] / gamma:
            bad.append(f"player {i + 1} budget equation fails")
        util = sum((mk.u[i][j] * eq.alloc[i][j] for j in range(mk.g)), ZERO)
        if util != v[i]:
            bad.append(f"v{i + 1} does not match the allocation")
        if util <= c[i]:
            bad.append(f"player {i + 1} does not beat the disagreement point")
    return bad


def _build(mk, prices, alloc, case, k, split):
    v = [sum((mk.u[i][j] * alloc[i][j] for j in range(mk.g)), ZERO) for i in range(2)]
    gamma = []
    for i in range(2):
        gamma.append(max(Fraction(mk.u[i][j]) / prices[j] for j in range(mk.g)))
    money = tuple(sum((prices[j] * alloc[i][j] for j in range(mk.g)), ZERO) for i in range(2))
    return Adnb2Equilibrium(
        mk, tuple(prices), tuple(tuple(r) for r in alloc), v[0], v[1], tuple(gamma), money, case, k, split
    )


def _case1(mk: Adnb2Instance, k: int):
    """Player 1 takes goods ``0..k``, player 2 the rest."""
    n = mk.g
    if k >= n - 1:
        return None
    u1, u2, b = mk.u[0], mk.u[1], mk.amounts
    if any(u1[j] == 0 for j in range(k + 1)) or any(u2[j] == 0 for j in range(k + 1, n)):
        return None
    s1 = sum((u1[j] * b[j] for j in range(k + 1)), ZERO)
    s2 = sum((u2[j] * b[j] for j in range(k + 1, n)), ZERO)
    if s1 <= mk.c1 or s2 <= mk.c2:
        return None
    # x = 1/gamma_1 from x*s1 = w1 + c1*x, likewise y
    x = mk.w1 / (s1 - mk.c1)
    y = mk.w2 / (s2 - mk.c2)
    prices = [x * u1[j] if j <= k else y * u2[j] for j in range(n)]
    alloc = [[b[j] if j <= k else ZERO for j in range(n)], [ZERO if j <= k else b[j] for j in range(n)]]
    return _build(mk, prices, alloc, 1, k, None)


def _case2(mk: Adnb2Instance, k: int):
    """Player 1 takes goods ``0..k-1``, player 2 goods ``k+1..``, both share ``k``."""
    n = mk.g
    u1, u2, b = mk.u[0], mk.u[1], mk.amounts
    if u1[k] == 0 or u2[k] == 0:
        return None
    if any(u1[j] == 0 for j in range(k)) or any(u2[j] == 0 for j in range(k + 1, n)):
        return None
    alpha = Fraction(u1[k], u2[k])
    total = sum((u1[j] * b[j] for j in range(k + 1)), ZERO) + alpha * sum(
        (u2[j] * b[j] for j in range(k + 1, n)), ZERO
    )
    denom = total - mk.c1 - alpha * mk.c2
    if denom <= 0:
        return None
    x = (mk.w1 + mk.w2) / denom
    prices = [x * u1[j] if j <= k else alpha * x * u2[j] for j in range(n)]
    m1 = mk.w1 + mk.c1 * x
    rest = m1 - sum((prices[j] * b[j] for j in range(k)), ZERO)
    share = rest / prices[k]
    if not 0 < share < b[k]:
        return None
    alloc = [
        [b[j] if j < k else (share if j == k else ZERO) for j in range(n)],
        [ZERO if j < k else (b[k] - share if j == k else b[j]) for j in range(n)],
    ]
    return _build(mk, prices, alloc, 2, k, k)


def solve_adnb2(inst: Adnb2Instance) -> Adnb2Equilibrium:
    """Equilibrium of the flexible budget market, hence the bargaining solution.

    Every split pattern is tried (all Case 1 prefixes, then all shared
    goods) and checked exactly; exactly one must pass.
    """
    mk = _ensure_merged(inst)
    feas = check_adnb2_feasible(mk)
    if not feas.feasible:
        raise InfeasibleGameError("market is infeasible", k1=feas.k1, k2=feas.k2, x=feas.x, y=feas.y)
    passed = []
    for build in (_case1, _case2):
        for k in range(mk.g):
            cand = build(mk, k)
            if cand is not None and not equilibrium_violations(cand):
                passed.append(cand)
    if not passed:
        raise BargainInternalError("no split pattern yields an equilibrium")
    if len(passed) > 1:
        raise BargainInternalError(
            f"{len(passed)} split patterns verified; equilibrium prices should be unique"
        )
    return passed[0]
