from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class FiniteModel(BaseModel):
    model_config = ConfigDict(allow_inf_nan=False)


class ChannelIn(FiniteModel):
    eigenvalues: Optional[Tuple[float, float, float]] = None
    probabilities: Optional[Tuple[float, float, float, float]] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "ChannelIn":
        if (self.eigenvalues is None) == (self.probabilities is None):
            raise ValueError("give exactly one of eigenvalues or probabilities")
        return self


class EigenvaluesIn(FiniteModel):
    eigenvalues: Tuple[float, float, float]


class ChoiOut(BaseModel):
    real: List[List[float]]
    imag: List[List[float]]
    spectrum: List[float]
    probabilities: Tuple[float, float, float, float]


class SemigroupIn(FiniteModel):
    gamma: Tuple[float, float, float]
    times: List[float] = Field(min_length=1)


class TrajectoryIn(FiniteModel):
    rates: str = Field(description='"g1;g2;g3", each an expression in t, a number or steps:t0=v0,...')
    t_max: float = Field(1.0, gt=0.0)
    steps: int = Field(100, ge=1, le=100_000)
    tol: Optional[float] = Field(None, gt=0.0)


class RatesOut(BaseModel):
    eigenvalues: Tuple[float, float, float]
    integrated_rates: Tuple[float, float, float]
    nonnegative: bool
