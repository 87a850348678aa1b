"""
Randomised end-to-end sweeps: solve, reconstruct, propagate
"""

import math

import numpy as np
import pytest

from core_geometry import problem_from_triangle, reduce_to_rectilinear
from core_solver import CERTIFIED_NEWTON_STEPS, Tail
from utils_numerics import Numerics

pytestmark = pytest.mark.slow

SEED = 20240611


def random_problems(count, seed=SEED):
    rng = np.random.default_rng(seed)
    problems = []
    for _ in range(count):
        r_a, r_b = rng.uniform(0.2, 5.0, size=2)
        theta = rng.uniform(0.05, 2 * math.pi - 0.05)
        tof = rng.uniform(0.05, 50.0)
        problems.append(problem_from_triangle(float(r_a), float(r_b), theta=float(theta), tof=float(tof)))
    return problems


def crossing_bracket(solver, re, tail, tof):
    """[lo, hi] with time(lo) < tof < time(hi)"""
    ve = re.escape_velocity
    lo = -ve
    while solver.time(re, lo, tail) >= tof:
        lo *= 2.0
    eps = 1e-2
    while solver.time(re, ve * (1.0 - eps), tail) <= tof:
        eps *= 0.1
    return lo, ve * (1.0 - eps)


@pytest.mark.parametrize("p", random_problems(100))
def test_simple_arcs_reach_b(solver, reconstructor, p):
    re = reduce_to_rectilinear(p)
    for tail in (Tail.DIRECT, Tail.INDIRECT):
        sol = solver.solve_simple(re, p.tof, tail)
        records = reconstructor.verify_solution(p, sol)
        assert [r.status for r in records] == ["ok"]
        assert records[0].residual <= 1e-8


@pytest.mark.parametrize("p", random_problems(12, seed=SEED + 1))
def test_simple_root_is_unique(solver, p):
    re = reduce_to_rectilinear(p)
    for tail in (Tail.DIRECT, Tail.INDIRECT):
        sol = solver.solve_simple(re, p.tof, tail)
        if tail is Tail.DIRECT:
            assert sol.iterations <= CERTIFIED_NEWTON_STEPS

        lo, hi = crossing_bracket(solver, re, tail, p.tof)
        root = Numerics.bracketed_root(lambda v: solver.time(re, v, tail) - p.tof, lo, hi)
        assert root == pytest.approx(sol.va, rel=1e-8, abs=1e-10 * re.escape_velocity)

        grid = np.linspace(lo, hi, 200)
        excess = np.array([solver.time(re, float(v), tail) - p.tof for v in grid])
        assert np.count_nonzero(np.diff(np.sign(excess))) == 1


@pytest.mark.parametrize("p", random_problems(6))
def test_direct_time_is_monotone(solver, p):
    # a single crossing of any target level
    re = reduce_to_rectilinear(p)
    ve = re.escape_velocity
    grid = np.linspace(-4.0 * ve, ve * (1 - 1e-3), 120)
    times = np.array([solver.time(re, float(v), Tail.DIRECT) for v in grid])
    assert np.all(np.diff(times) > 0)


@pytest.mark.parametrize("p", random_problems(6))
@pytest.mark.parametrize("n", [1, 2, 3])
def test_multirev_pairs_around_tmin(solver, reconstructor, p, n):
    re = reduce_to_rectilinear(p)
    t_min, va_min = solver.tmin_multirev(re, n)
    assert solver.solve_multirev(re, n, 0.5 * t_min) == []

    target = p.with_tof(2.0 * t_min)
    pair = solver.solve_multirev(re, n, target.tof)
    assert len(pair) == 2
    assert pair[0].va < va_min < pair[1].va
    for sol in pair:
        assert sol.iterations <= CERTIFIED_NEWTON_STEPS
        records = reconstructor.verify_solution(target, sol)
        assert [r.status for r in records] == ["ok"]


@pytest.mark.parametrize("p", random_problems(30, seed=SEED + 2))
def test_census_agrees_with_solution_lists(solver, p):
    census = solver.count_solutions(p, p.tof, 2, classes="direct")
    solutions = solver.solve_all(p, p.tof, n_max=2, classes="direct")
    assert census.total() == len(solutions)


@pytest.mark.parametrize("p", random_problems(3, seed=SEED + 3))
def test_indirect_multirev_count_stable_under_oversampling(solver, p):
    re = reduce_to_rectilinear(p)
    tof = solver.time(re, 0.3 * re.escape_velocity, Tail.INDIRECT, 1)
    coarse = solver.solve_multirev_indirect(re, 1, tof, samples=2048)
    fine = solver.solve_multirev_indirect(re, 1, tof, samples=20480)
    assert len(coarse) == len(fine) >= 1
    assert [s.va for s in coarse] == pytest.approx([s.va for s in fine], rel=1e-9, abs=1e-12)
