import numpy as np
from fastapi import APIRouter

from app.core.config import settings
from app.models.dto import EigenvaluesIn, RatesOut, SemigroupIn, TrajectoryIn
from app.models.types import PauliEigenvalues, Trajectory
from app.services import dynamics

router = APIRouter()


@router.post("/semigroup", response_model=Trajectory)
def semigroup(body: SemigroupIn):
    return dynamics.semigroup_trajectory(body.gamma, body.times)


@router.post("/trajectory", response_model=Trajectory)
def trajectory(body: TrajectoryIn):
    spec = dynamics.parse_rates(body.rates)
    grid = np.linspace(0.0, body.t_max, body.steps + 1)
    return dynamics.trajectory(spec, grid, body.tol)


@router.post("/rates", response_model=RatesOut)
def rates(body: EigenvaluesIn):
    e = PauliEigenvalues.of(body.eigenvalues)
    big_gamma = dynamics.tlg_rates_for_target(e)
    return RatesOut(
        eigenvalues=e.as_tuple(),
        integrated_rates=big_gamma,
        nonnegative=all(g >= -settings.PREDICATE_TOL for g in big_gamma),
    )
