"""
Numerical utilities: quadrature, bracketed Newton, 1-D minimisation
"""

import logging
import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize

from config_settings import SolverConfig
from core_errors import NoConvergence, QuadratureFailure

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = SolverConfig()


class Numerics:
    """Thin wrappers around scipy with the solver's acceptance rules"""

    @staticmethod
    def integrate(
        func: Callable[[float], float],
        a: float,
        b: float,
        points: Optional[Sequence[float]] = None,
        config: SolverConfig = DEFAULT_CONFIG,
    ) -> float:
        """
        Adaptive Gauss-Kronrod quadrature of func over [a, b]

        QUADPACK warnings (roundoff, subdivision limit) are accepted when the
        reported error is within config.quad_accept of the value or below the
        absolute floor config.quad_atol; otherwise QuadratureFailure is raised.
        """
        if a == b:
            return 0.0

        kwargs = dict(
            epsabs=config.quad_atol,
            epsrel=config.quad_rtol,
            limit=config.quad_limit,
            full_output=1,
        )
        if points:
            lo, hi = min(a, b), max(a, b)
            inner = [p for p in points if lo < p < hi]
            if inner:
                kwargs["points"] = inner

        result = integrate.quad(func, a, b, **kwargs)
        value, abserr = result[0], result[1]

        if not math.isfinite(value):
            raise QuadratureFailure(f"non-finite integral over [{a}, {b}]")

        if len(result) > 3:
            message = result[3]
            if abserr > max(config.quad_accept * abs(value), config.quad_atol):
                raise QuadratureFailure(
                    f"quadrature over [{a}, {b}] failed: {message} (abserr={abserr:.3e})"
                )
            logger.debug("Accepted flagged quadrature (abserr=%.3e): %s", abserr, message)

        return value

    @staticmethod
    def safeguarded_newton(
        funcs: Callable[[float], Tuple[float, float]],
        lo: float,
        hi: float,
        x0: Optional[float] = None,
        ftol: float = 0.0,
        xtol: float = 0.0,
        maxiter: int = 100,
    ) -> Tuple[float, int]:
        """
        Root of an increasing function bracketed by lo < hi

        funcs(x) returns (f(x), f'(x)). A Newton step leaving the bracket, or a
        non-positive slope, falls back to bisection. Stops when |f| <= ftol or
        the step is <= xtol. Returns (root, iterations).
        """
        if not lo < hi:
            raise ValueError(f"invalid bracket [{lo}, {hi}]")

        x = 0.5 * (lo + hi) if x0 is None else x0
        for iteration in range(1, maxiter + 1):
            f, df = funcs(x)
            if abs(f) <= ftol:
                return x, iteration

            if f < 0.0:
                lo = x
            else:
                hi = x

            step_ok = df > 0.0 and math.isfinite(df)
            x_new = x - f / df if step_ok else None
            if x_new is None or not lo < x_new < hi:
                x_new = 0.5 * (lo + hi)

            if abs(x_new - x) <= xtol or x_new == x:
                return x_new, iteration
            x = x_new

        raise NoConvergence(f"Newton iteration did not converge in {maxiter} steps (x={x})")

    @staticmethod
    def bracketed_root(func: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-14) -> float:
        """Brent's method on a sign-changing bracket"""
        return optimize.brentq(func, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)

    @staticmethod
    def golden_minimum(func: Callable[[float], float], lo: float, hi: float, grid: int = 64, xtol: float = 1e-12) -> Tuple[float, float]:
        """
        Minimum of a unimodal func on (lo, hi)

        A coarse grid supplies the three-point bracket, golden-section search
        refines it. Returns (x_min, f_min).
        """
        xs = np.linspace(lo, hi, grid + 2)[1:-1]
        values = np.array([func(x) for x in xs])
        k = int(np.argmin(values))
        if k == 0 or k == len(xs) - 1:
            logger.debug("Coarse minimum at grid edge (k=%d); using bounded search", k)
            res = optimize.minimize_scalar(func, bounds=(lo, hi), method="bounded",
                                           options={"xatol": xtol})
            return float(res.x), float(res.fun)

        res = optimize.minimize_scalar(func, bracket=(xs[k - 1], xs[k], xs[k + 1]),
                                       method="golden", tol=xtol)
        return float(res.x), float(res.fun)

    @staticmethod
    def central_differences(func: Callable[[float], float], x: float, h: float) -> Tuple[float, float]:
        """First and second central differences (f' and f'' estimates)"""
        fm, f0, fp = func(x - h), func(x), func(x + h)
        return (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)
