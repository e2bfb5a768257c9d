"""Acceptance gate.

One test per criterion. Each prints a single ``PASS``/``FAIL`` line (shown
even under output capture) and then asserts, so the pytest result and the
printed line always agree.
"""
import math
import random
import time

import pytest

from nashbargain import (
    compute_alpha_interval,
    find_face_by_alpha,
    iteration_cap,
    kappa,
    normalize,
    solve,
    solve_lp,
    verify_solution,
)
from nashbargain.games import (
    build_dg2,
    equilibrium_violations,
    extract_flows,
    solve_adnb2,
    solve_circle,
)
from nashbargain.lp import OPTIMAL
from nashbargain.oracle import (
    adnb2_via_lnb2,
    brute_force_faces,
    face_for_alpha,
    numeric_maximize,
    support_chain,
)
from support import F, bottleneck, certificate_residuals, enumerate_lp, random_game, random_lp, random_market


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def suite():
    """200 random feasible games with their exact solutions."""
    rng = random.Random(20240601)
    t0 = time.perf_counter()
    games = [random_game(rng) for _ in range(200)]
    sols = [solve(g) for g in games]
    return games, sols, time.perf_counter() - t0


def test_rationality(suite, capsys):
    games, sols, elapsed = suite
    t0 = time.perf_counter()
    bad = []
    for k, (g, s) in enumerate(zip(games, sols)):
        exact = all(isinstance(v, F) for v in (s.v1, s.v2, s.y1, s.y2, *s.x))
        ng = normalize(g)
        residual_zero = ng.contains(s.x, s.y1, s.y2) and all(
            sum(a * x for a, x in zip(g.A[j], s.x)) + g.b1[j] * s.v1 + g.b2[j] * s.v2 <= g.e[j]
            for j in range(g.m)
        )
        rep = verify_solution(g, s)
        if not (exact and residual_zero and rep.ok):
            bad.append((k, rep.failures()))
    total = elapsed + time.perf_counter() - t0
    report(
        capsys, 1, not bad and total < 60,
        f"200 games solved exactly and verified, {len(bad)} failures, {total:.1f}s",
    )


def test_oracle_agreement(suite, capsys):
    games, sols, _ = suite
    worst = 0.0
    for g, s in zip(games, sols):
        res = numeric_maximize(normalize(g), tol=1e-9)
        worst = max(worst, abs(res.point[0] - float(s.y1)), abs(res.point[1] - float(s.y2)))
    report(capsys, 2, worst <= 1e-6, f"max |exact - numeric| = {worst:.2e} (bound 1e-6)")


def test_iteration_bound(suite, capsys):
    games, sols, _ = suite
    over = [
        (s.iterations, iteration_cap(kappa(normalize(g))))
        for g, s in zip(games, sols)
        if s.iterations > iteration_cap(kappa(normalize(g)))
    ]
    most = max(s.iterations for s in sols)
    report(capsys, 3, not over, f"max iterations {most}, {len(over)} over 2*kappa+8")


def test_face_procedures_match_sweep(capsys):
    rng = random.Random(77)
    mismatches, endpoint_errors, probes = 0, 0, 0
    for _ in range(50):
        ng = normalize(random_game(rng))
        faces = brute_force_faces(ng, grid=512)
        iv = compute_alpha_interval(ng)
        if iv.collapsed:
            endpoint_errors += len(faces) != 1 or faces[0].coords != iv.low_vertex.coords
            continue
        facets = [f for f in faces if f.is_facet]
        endpoint_errors += (iv.lo, iv.hi) != (facets[0].alpha, facets[-1].alpha)
        # the grid is laid over the support-function chain's slope range
        chain = support_chain(ng)
        lo = (chain[0][0] - chain[1][0]) / (chain[1][1] - chain[0][1])
        hi = (chain[-2][0] - chain[-1][0]) / (chain[-1][1] - chain[-2][1])
        step = (hi - lo) / 511
        for k in range(512):
            alpha = lo + k * step
            probes += 1
            mismatches += find_face_by_alpha(ng, alpha) != face_for_alpha(faces, alpha)
    report(
        capsys, 4, mismatches == 0 and endpoint_errors == 0,
        f"{probes} grid probes, {mismatches} face mismatches, {endpoint_errors} interval mismatches",
    )


def test_adnb2_equivalence(capsys):
    rng = random.Random(4242)
    t0 = time.perf_counter()
    unequal, broken = 0, 0
    for _ in range(100):
        inst = random_market(rng, unit_amounts=True)
        eq = solve_adnb2(inst)
        other = adnb2_via_lnb2(inst)
        unequal += (eq.v1, eq.v2) != other.v
        broken += bool(equilibrium_violations(eq))
    elapsed = time.perf_counter() - t0
    report(
        capsys, 5, unequal == 0 and broken == 0 and elapsed < 30,
        f"100 markets, {unequal} disagreements, {broken} equilibrium violations, {elapsed:.1f}s",
    )


def test_dg2_bottleneck(capsys):
    ok = True
    for w, v in (((1, 1), (F(1, 2), F(1, 2))), ((2, 1), (F(2, 3), F(1, 3)))):
        inst = bottleneck(*w)
        sol = solve(build_dg2(inst))
        flows = extract_flows(inst, sol)  # raises on any capacity or conservation defect
        ok &= sol.v == v and flows.totals == v
        ok &= all(f1 + f2 <= cap for (f1, f2), (_, _, cap) in zip(flows.edge_flows, inst.edges))
    report(capsys, 6, ok, "bottleneck gives (1/2, 1/2) and (2/3, 1/3) with exact flows")


def test_circle(capsys):
    p = solve_circle(0, 0)
    origin_err = max(abs(p.x - math.sqrt(2) / 2), abs(p.y - math.sqrt(2) / 2))
    rng = random.Random(99)
    worst_res, worst_tan = 0.0, 0.0
    n = 0
    while n < 50:
        c1, c2 = rng.random(), rng.random()
        if c1 * c1 + c2 * c2 >= 1:
            continue
        n += 1
        q = solve_circle(c1, c2)
        worst_res = max(worst_res, q.residual)
        worst_tan = max(worst_tan, abs((q.y - c2) / (q.x - c1) - q.x / q.y))
    ok = origin_err <= 1e-10 and worst_res <= 1e-10 and worst_tan <= 1e-9
    report(
        capsys, 7, ok,
        f"origin error {origin_err:.1e}, max quartic residual {worst_res:.1e}, max tangency gap {worst_tan:.1e}",
    )


def test_clout_monotonicity(capsys):
    rng = random.Random(808)
    drops = 0
    for _ in range(20):
        game = random_game(rng)
        v1 = [solve(game.with_clouts(w1, 1)).v1 for w1 in range(1, 9)]
        drops += any(a > b for a, b in zip(v1, v1[1:]))
    report(capsys, 8, drops == 0, f"20 games x w1 in 1..8, {drops} with decreasing v1")


def test_lp_soundness(capsys):
    rng = random.Random(5150)
    wrong, cert = 0, 0
    counts = {}
    for _ in range(500):
        p = random_lp(rng)
        status, value = enumerate_lp(p)
        out = solve_lp(p)
        counts[status] = counts.get(status, 0) + 1
        if out.status != status or (status == OPTIMAL and out.value != value):
            wrong += 1
        elif status == OPTIMAL and certificate_residuals(p, out.primal, out.dual, out.value):
            cert += 1
    report(
        capsys, 9, wrong == 0 and cert == 0,
        f"500 LPs {counts}, {wrong} disagree with enumeration, {cert} certificate failures",
    )
