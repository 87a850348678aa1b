import math

import pytest
from pydantic import ValidationError

from config_settings import AppConfig, CliConfig, SolverConfig
from core_errors import NoConvergence, QuadratureFailure
from utils_helpers import Helpers
from utils_numerics import Numerics


@pytest.fixture
def clean_env(monkeypatch):
    for name in SolverConfig.model_fields:
        monkeypatch.delenv(AppConfig.ENV_PREFIX + name.upper(), raising=False)
    return monkeypatch


def test_solver_settings_from_environment(clean_env, tmp_path):
    clean_env.setenv("LAMBERT_QUAD_RTOL", "1e-10")
    clean_env.setenv("LAMBERT_INDIRECT_SAMPLES", "512")
    config = AppConfig.load_solver_config(str(tmp_path / "missing.env"))
    assert config.quad_rtol == 1e-10
    assert config.indirect_samples == 512
    assert config.root_rtol == SolverConfig().root_rtol


def test_invalid_environment_falls_back_to_defaults(clean_env, tmp_path):
    clean_env.setenv("LAMBERT_QUAD_RTOL", "-1")
    assert AppConfig.load_solver_config(str(tmp_path / "missing.env")) == SolverConfig()


def test_solver_config_is_validated():
    with pytest.raises(ValidationError):
        SolverConfig(indirect_samples=4)
    with pytest.raises(ValidationError):
        SolverConfig(root_maxiter=0)


def test_cli_config_requires_one_input_mode():
    with pytest.raises(ValidationError):
        CliConfig(subcommand="curve")
    config = CliConfig(subcommand="curve", xa=2.0, xb=1.0, rectilinear=True)
    assert config.input_mode == "rectilinear"
    assert config.tof is None


def test_exit_code_table():
    assert AppConfig.get_exit_codes() == {"ok": 0, "usage": 1, "empty": 2, "numerical": 3}


def test_unit_conversions():
    assert Helpers.time_to_internal(1.0, 4.0) == 2.0
    assert Helpers.time_to_user(2.0, 4.0) == 1.0
    assert Helpers.velocity_to_user(0.5, 9.0) == 1.5
    assert Helpers.energy_to_user(-0.5, 4.0) == -2.0


def test_format_number():
    assert Helpers.format_number(None) == "-"
    assert Helpers.format_number(True) == "yes"
    assert Helpers.format_number(3) == "3"
    assert Helpers.format_number(0.25) == "0.25"
    assert "e" in Helpers.format_number(1e-9)


def test_integrate_matches_closed_form():
    assert Numerics.integrate(math.sin, 0.0, math.pi) == pytest.approx(2.0, rel=1e-12)
    assert Numerics.integrate(math.sin, 1.0, 1.0) == 0.0
    # integrable endpoint singularity
    assert Numerics.integrate(lambda x: 1.0 / math.sqrt(x), 0.0, 1.0) == pytest.approx(2.0, rel=1e-10)


def test_integrate_rejects_divergent_integral():
    with pytest.raises(QuadratureFailure):
        Numerics.integrate(lambda x: 1.0 / x, 0.0, 1.0)


@pytest.mark.parametrize("abserr, accepted", [(1e-16, True), (1e-6, False)])
def test_flagged_quadrature_acceptance(monkeypatch, abserr, accepted):
    flagged = (1e-3, abserr, {}, "The occurrence of roundoff error is detected")
    monkeypatch.setattr("utils_numerics.integrate.quad", lambda *args, **kwargs: flagged)
    if accepted:
        assert Numerics.integrate(math.cos, 0.0, 1.0) == 1e-3
    else:
        with pytest.raises(QuadratureFailure):
            Numerics.integrate(math.cos, 0.0, 1.0)


def test_safeguarded_newton():
    root, iterations = Numerics.safeguarded_newton(lambda x: (x ** 3 - 2.0, 3 * x * x), 0.0, 2.0,
                                                   ftol=1e-14, xtol=1e-15)
    assert root == pytest.approx(2.0 ** (1.0 / 3.0), rel=1e-13)
    assert iterations < 60
    # zero slope at the start point falls back to bisection
    root, _ = Numerics.safeguarded_newton(lambda x: (x ** 3 - 2.0, 3 * x * x), -1.0, 2.0, x0=0.0,
                                          ftol=1e-14)
    assert root == pytest.approx(2.0 ** (1.0 / 3.0), rel=1e-12)


def test_safeguarded_newton_gives_up():
    with pytest.raises(NoConvergence):
        Numerics.safeguarded_newton(lambda x: (x - 1.0, 1.0), 0.0, 3.0, x0=0.1, maxiter=1)
    with pytest.raises(ValueError):
        Numerics.safeguarded_newton(lambda x: (x, 1.0), 1.0, 0.0)


def test_golden_minimum():
    x, f = Numerics.golden_minimum(lambda v: (v - 0.3) ** 2 + 1.0, -2.0, 2.0)
    assert x == pytest.approx(0.3, abs=1e-6)
    assert f == pytest.approx(1.0, abs=1e-12)
    # minimum at the edge of the coarse grid
    x, _ = Numerics.golden_minimum(lambda v: math.exp(v), 0.0, 1.0)
    assert x < 1e-3
