from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class LdivMode(str, Enum):
    LITERAL = "literal"
    CPDIV = "cpdiv"


class Method(str, Enum):
    EXACT = "exact"
    MC = "mc"


class Family(str, Enum):
    AXIAL = "axial"
    PAIR_ZERO = "pair-zero"
    DEPOLARIZING = "depolarizing"
    TWO_DISTINCT_ZERO = "two-distinct-zero"
    DEGENERATE_PAIR = "degenerate-pair"
    TWO_PAULI = "two-pauli"
    DEPHASING = "dephasing"
    GENERAL = "general"


class RegionId(str, Enum):
    PT = "pt"
    CPT = "cpt"
    EBC = "ebc"
    TLG = "tlg"
    PT_TLG = "pt-tlg"
    CPT_TLG = "cpt-tlg"
    EBC_TLG = "ebc-tlg"
    PDIV = "pdiv"
    CPDIV = "cpdiv"
    LDIV = "ldiv"
    PDIV_TLG = "pdiv-tlg"
    CPDIV_TLG = "cpdiv-tlg"
    LDIV_TLG = "ldiv-tlg"

    @property
    def base(self) -> "RegionId":
        """The region with any TLG intersection removed."""
        if self is RegionId.TLG:
            return RegionId.PT
        if self.value.endswith("-tlg"):
            return RegionId(self.value[: -len("-tlg")])
        return self

    @property
    def with_tlg(self) -> bool:
        return self is RegionId.TLG or self.value.endswith("-tlg")


def _finite(values: Iterable[float], what: str) -> Tuple[float, ...]:
    out = tuple(float(v) for v in values)
    if not all(math.isfinite(v) for v in out):
        raise ValueError(f"{what} must be finite reals, got {out}")
    return out


@dataclass(frozen=True)
class PauliEigenvalues:
    """Eigenvalues (lambda1, lambda2, lambda3) of a trace-preserving Pauli map; lambda0 = 1 is implicit."""

    lambda1: float
    lambda2: float
    lambda3: float

    def __post_init__(self) -> None:
        values = _finite((self.lambda1, self.lambda2, self.lambda3), "eigenvalues")
        object.__setattr__(self, "lambda1", values[0])
        object.__setattr__(self, "lambda2", values[1])
        object.__setattr__(self, "lambda3", values[2])

    @classmethod
    def of(cls, values: Iterable[float]) -> "PauliEigenvalues":
        values = list(values)
        if len(values) != 3:
            raise ValueError(f"expected 3 eigenvalues, got {len(values)}")
        return cls(*values)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.lambda1, self.lambda2, self.lambda3)


@dataclass(frozen=True)
class PauliProbabilities:
    """Weights (p0, p1, p2, p3) of the identity and the three Pauli conjugations."""

    p0: float
    p1: float
    p2: float
    p3: float

    def __post_init__(self) -> None:
        values = _finite((self.p0, self.p1, self.p2, self.p3), "probabilities")
        for name, value in zip(("p0", "p1", "p2", "p3"), values):
            object.__setattr__(self, name, value)

    @classmethod
    def of(cls, values: Iterable[float]) -> "PauliProbabilities":
        values = list(values)
        if len(values) != 4:
            raise ValueError(f"expected 4 probabilities, got {len(values)}")
        return cls(*values)

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.p0, self.p1, self.p2, self.p3)


class ClassificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    eigenvalues: Tuple[float, float, float]
    positive_tp: bool
    cptp: bool
    entanglement_breaking: bool
    tlg_obtainable: bool
    invertible: bool
    p_divisible: bool
    cp_divisible: bool
    l_divisible_literal: bool
    l_divisible_cpdiv_mode: bool
    boundary: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)


class VolumeEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: Family
    region: RegionId
    mode: LdivMode
    method: Method
    value: float = Field(ge=0.0)
    stderr: float = Field(ge=0.0)
    samples: int = Field(default=0, ge=0)
    seed: Optional[int] = None


class RatioResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: Family
    numerator: RegionId
    denominator: RegionId
    mode: LdivMode
    method: Method
    value: float = Field(ge=0.0)
    stderr: float = Field(ge=0.0)
    samples: int = Field(default=0, ge=0)
    seed: Optional[int] = None


class ChartStatus(str, Enum):
    CONSISTENT = "consistent"
    DISCREPANT = "discrepant"
    UNREPORTED = "unreported"


class ChartRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: Family
    ratio_name: str
    value: float
    paper_value: Optional[float] = None
    status: ChartStatus


class LabeledPolygon(BaseModel):
    label: str
    vertices: List[Tuple[float, float, float]]


class CrossSection(BaseModel):
    family: Family
    plane: str
    regions: List[LabeledPolygon]


class TrajectoryPoint(BaseModel):
    t: float
    eigenvalues: Tuple[float, float, float]
    report: ClassificationReport


class Trajectory(BaseModel):
    tol: float
    rates: List[str]
    samples: List[TrajectoryPoint]


class Counterexample(BaseModel):
    eigenvalues: Tuple[float, float, float]
    l_divisible_literal: bool
    cp_divisible_and_tlg: bool


class ConjectureReport(BaseModel):
    samples: int
    seed: int
    agreement_rate: float
    l_divisible_count: int
    cp_divisible_tlg_count: int
    counterexamples: List[Counterexample]
