"""
Shared fixtures
"""

import math

import pytest
from hypothesis import settings

from config_settings import SolverConfig
from core_geometry import BoundaryProblem, RectilinearEquivalent, problem_from_triangle, reduce_to_rectilinear
from core_reconstruct import Reconstructor
from core_solver import LambertSolver

settings.register_profile("solver", max_examples=25, deadline=None)
settings.load_profile("solver")


@pytest.fixture
def solver_config():
    return SolverConfig()


@pytest.fixture
def solver(solver_config):
    return LambertSolver(solver_config)


@pytest.fixture
def reconstructor(solver_config):
    return Reconstructor(solver_config)


@pytest.fixture
def quarter_circle():
    """Unit circle, A at 0 and B at 90 degrees; the circular arc takes pi/2"""
    return problem_from_triangle(1.0, 1.0, theta=math.pi / 2, tof=math.pi / 2)


@pytest.fixture
def general_problem():
    return BoundaryProblem((1.2, 0.3), (-0.4, 1.7), tof=2.5)


@pytest.fixture
def general_re(general_problem):
    return reduce_to_rectilinear(general_problem)


@pytest.fixture
def flat_pair():
    """x_A = 2, x_B = 1: indirect parabolic arc takes 1.8047379"""
    return RectilinearEquivalent(2.0, 1.0)


@pytest.fixture
def opposite_problem():
    """O on the open segment AB"""
    return BoundaryProblem((1.0, 0.0), (-2.0, 0.0), tof=3.0)
