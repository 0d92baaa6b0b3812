"""Pauli dynamical maps generated by time-local Pauli generators.

With decoherence rates gamma_k(t) the eigenvalues evolve as
lambda_k(t) = exp(-(G_j(t) + G_m(t))), G_j(t) = int_0^t gamma_j, {j, m} the
complement of k.
"""
from __future__ import annotations

import io
import logging
import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import sympy
from scipy import integrate
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from app.core.config import settings
from app.core.errors import (
    InvalidGrid,
    EigenvalueOverflow,
    InvalidRateSpec,
    NegativeRate,
    NegativeTime,
    NotTlgObtainable,
    QuadratureFailure,
)
from app.models.types import PauliEigenvalues, Trajectory, TrajectoryPoint
from app.services.channels import classify

log = logging.getLogger("dynamics")

_COMPLEMENT = ((1, 2), (0, 2), (0, 1))
_T = sympy.Symbol("t", real=True)
_MAX_EXPONENT = math.log(np.finfo(float).max)


class RateFunction(ABC):
    """A decoherence rate gamma(t) that can integrate itself over [a, b]."""

    @abstractmethod
    def __call__(self, t: float) -> float: ...

    @abstractmethod
    def integral(self, a: float, b: float, tol: float) -> float: ...

    @abstractmethod
    def describe(self) -> str: ...


@dataclass(frozen=True)
class ConstantRate(RateFunction):
    value: float

    def __call__(self, t: float) -> float:
        return self.value

    def integral(self, a: float, b: float, tol: float) -> float:
        return self.value * (b - a)

    def describe(self) -> str:
        return f"{self.value:g}"


@dataclass(frozen=True)
class PiecewiseConstantRate(RateFunction):
    """Takes values[i] on [breakpoints[i], breakpoints[i+1]); the last value holds for ever."""

    breakpoints: Tuple[float, ...]
    values: Tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.breakpoints or len(self.breakpoints) != len(self.values):
            raise InvalidRateSpec("piecewise rate needs one value per breakpoint")
        if self.breakpoints[0] != 0.0:
            raise InvalidRateSpec("piecewise rate must start at t=0")
        if any(b <= a for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise InvalidRateSpec("piecewise breakpoints must be strictly increasing")

    def __call__(self, t: float) -> float:
        idx = int(np.searchsorted(self.breakpoints, t, side="right")) - 1
        return self.values[max(idx, 0)]

    def integral(self, a: float, b: float, tol: float) -> float:
        edges = list(self.breakpoints[1:]) + [math.inf]
        total = 0.0
        for start, end, value in zip(self.breakpoints, edges, self.values):
            lo, hi = max(a, start), min(b, end)
            if hi > lo:
                total += value * (hi - lo)
        return total

    def describe(self) -> str:
        return "steps:" + ",".join(f"{t:g}={v:g}" for t, v in zip(self.breakpoints, self.values))


@dataclass(frozen=True)
class CallbackRate(RateFunction):
    fn: Callable[[float], float]
    expression: str = "callback"

    def __call__(self, t: float) -> float:
        return float(self.fn(t))

    def integral(self, a: float, b: float, tol: float) -> float:
        try:
            result = integrate.quad(
                self.fn, a, b, epsabs=tol, epsrel=0.0, limit=settings.QUAD_LIMIT, full_output=1
            )
        except (ArithmeticError, ValueError, TypeError) as exc:
            raise QuadratureFailure(f"rate {self.expression!r} cannot be evaluated on [{a:g}, {b:g}]: {exc}") from exc
        value, abserr = result[0], result[1]
        # a message entry means QUADPACK stopped early
        if len(result) > 3 or not math.isfinite(value) or abserr > tol:
            raise QuadratureFailure(
                f"rate {self.expression!r} on [{a:g}, {b:g}]: error estimate {abserr:.3g} above tolerance {tol:.3g}"
            )
        return float(value)

    def describe(self) -> str:
        return self.expression


@dataclass(frozen=True)
class RateSpec:
    rates: Tuple[RateFunction, RateFunction, RateFunction]

    @classmethod
    def constant(cls, gamma: Sequence[float]) -> "RateSpec":
        return cls(tuple(ConstantRate(float(g)) for g in gamma))  # type: ignore[arg-type]

    @property
    def labels(self) -> List[str]:
        return [r.describe() for r in self.rates]


# ---------------------------------------------------------------------------
# parsing of textual rate specs ("1;1;-tanh(t)", "steps:0=1,2=-0.5")
# ---------------------------------------------------------------------------

_ALLOWED_CHARS = re.compile(r"^[0-9A-Za-z_+\-*/().^ \t]*$")
_ALLOWED_NAMES = {
    "t", "exp", "log", "sqrt", "sin", "cos", "tan", "sinh", "cosh", "tanh",
    "atan", "Abs", "pi", "E", "Heaviside", "Min", "Max",
}


def parse_rate(text: str) -> RateFunction:
    text = text.strip()
    if not text:
        raise InvalidRateSpec("empty rate expression")
    if text.startswith("steps:"):
        try:
            pairs = [item.split("=", 1) for item in text[len("steps:"):].split(",") if item.strip()]
            points = [(float(t), float(v)) for t, v in pairs]
        except ValueError as exc:
            raise InvalidRateSpec(f"bad piecewise rate {text!r}: expected steps:t0=v0,t1=v1,...") from exc
        return PiecewiseConstantRate(tuple(t for t, _ in points), tuple(v for _, v in points))

    names = set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text))
    if not _ALLOWED_CHARS.match(text) or "__" in text or names - _ALLOWED_NAMES:
        raise InvalidRateSpec(
            f"rate {text!r} uses unsupported symbols; allowed names: {', '.join(sorted(_ALLOWED_NAMES))}"
        )
    try:
        expr = parse_expr(text, local_dict={"t": _T}, transformations=standard_transformations + (convert_xor,))
    except Exception as exc:  # sympy raises many exception types here
        raise InvalidRateSpec(f"cannot parse rate {text!r}: {exc}") from exc
    if not isinstance(expr, sympy.Expr) or expr.free_symbols - {_T}:
        raise InvalidRateSpec(f"rate {text!r} may only depend on t")
    if not expr.free_symbols:
        try:
            value = float(expr)
        except (TypeError, ValueError) as exc:
            raise InvalidRateSpec(f"rate {text!r} is not a real number") from exc
        if not math.isfinite(value):
            raise InvalidRateSpec(f"rate {text!r} is not finite")
        return ConstantRate(value)
    return CallbackRate(sympy.lambdify(_T, expr, modules="math"), expression=text)


def parse_rates(text: str) -> RateSpec:
    parts = text.split(";")
    if len(parts) != 3:
        raise InvalidRateSpec(f"expected three rates separated by ';', got {len(parts)}")
    return RateSpec(tuple(parse_rate(p) for p in parts))  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def eigenvalues_from_integrated_rates(big_gamma: Sequence[float]) -> PauliEigenvalues:
    g = [float(v) for v in big_gamma]
    exponents = [-(g[j] + g[m]) for j, m in _COMPLEMENT]
    if any(math.isnan(x) or x >= _MAX_EXPONENT for x in exponents):
        raise EigenvalueOverflow(
            f"integrated rates {g} give eigenvalues beyond floating-point range; the rates are too negative"
        )
    return PauliEigenvalues.of(math.exp(x) for x in exponents)


def semigroup_eigenvalues(gamma: Sequence[float], t: float) -> PauliEigenvalues:
    gamma = [float(g) for g in gamma]
    if len(gamma) != 3:
        raise ValueError("expected three rates")
    if any(g < 0 for g in gamma):
        raise NegativeRate(f"semigroup rates must be nonnegative, got {gamma}")
    if t < 0:
        raise NegativeTime(f"time must be nonnegative, got {t}")
    return eigenvalues_from_integrated_rates([g * t for g in gamma])


def _check_grid(grid: Sequence[float]) -> List[float]:
    points = [float(t) for t in grid]
    if not points:
        raise InvalidGrid("time grid is empty")
    if any(not math.isfinite(t) for t in points):
        raise InvalidGrid("time grid has non-finite points")
    if any(t < 0 for t in points):
        raise NegativeTime("time grid has negative points")
    if any(b <= a for a, b in zip(points, points[1:])):
        raise InvalidGrid("time grid must be strictly increasing")
    if points[0] != 0.0:
        points.insert(0, 0.0)
    return points


def trajectory(rates: RateSpec, grid: Sequence[float], tol: Optional[float] = None) -> Trajectory:
    tol = settings.QUAD_TOL if tol is None else float(tol)
    if not tol > 0:
        raise ValueError("quadrature tolerance must be positive")
    points = _check_grid(grid)
    per_interval = tol / max(len(points) - 1, 1)

    cumulative = np.zeros(3)
    samples: List[TrajectoryPoint] = []
    for idx, t in enumerate(points):
        if idx:
            a = points[idx - 1]
            cumulative += [rate.integral(a, t, per_interval) for rate in rates.rates]
        e = eigenvalues_from_integrated_rates(cumulative)
        samples.append(TrajectoryPoint(t=t, eigenvalues=e.as_tuple(), report=classify(e)))

    log.info("trajectory", extra={"rates": rates.labels, "points": len(points), "tol": tol})
    return Trajectory(tol=tol, rates=rates.labels, samples=samples)


def semigroup_trajectory(gamma: Sequence[float], grid: Sequence[float]) -> Trajectory:
    if any(float(g) < 0 for g in gamma):
        raise NegativeRate(f"semigroup rates must be nonnegative, got {list(gamma)}")
    return trajectory(RateSpec.constant(gamma), grid)


def tlg_rates_for_target(e: PauliEigenvalues) -> Tuple[float, float, float]:
    """Integrated rates G with exp(-(G_j + G_m)) = lambda_k; needs every eigenvalue positive."""
    values = e.as_tuple()
    if any(v <= 0 for v in values):
        raise NotTlgObtainable(
            f"{values} has a non-positive eigenvalue; only strictly positive targets are reached in finite time"
        )
    logs = [math.log(v) for v in values]
    return tuple(0.5 * (logs[k] - logs[j] - logs[m]) for k, (j, m) in enumerate(_COMPLEMENT))  # type: ignore[return-value]


def trajectory_frame(traj: Trajectory) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "t": p.t,
                "lambda1": p.eigenvalues[0],
                "lambda2": p.eigenvalues[1],
                "lambda3": p.eigenvalues[2],
                "cptp": p.report.cptp,
                "eb": p.report.entanglement_breaking,
                "pdiv": p.report.p_divisible,
                "cpdiv": p.report.cp_divisible,
                "ldiv": p.report.l_divisible_literal,
            }
            for p in traj.samples
        ],
        columns=["t", "lambda1", "lambda2", "lambda3", "cptp", "eb", "pdiv", "cpdiv", "ldiv"],
    )


def trajectory_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    trajectory_frame(traj).to_csv(buf, index=False, float_format="%.15g", lineterminator="\n")
    return buf.getvalue()
