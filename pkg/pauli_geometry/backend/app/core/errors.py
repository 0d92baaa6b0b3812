"""Domain errors raised by the geometry services.

Every error carries a short machine code so the CLI and the HTTP app can
report it without string matching.
"""
from __future__ import annotations


class PauliGeometryError(Exception):
    code = "domain_error"

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message


class NonUnitSum(PauliGeometryError):
    code = "non_unit_sum"


class InvalidState(PauliGeometryError):
    code = "invalid_state"


class NotAChannel(PauliGeometryError):
    code = "not_a_channel"


class DimensionMismatch(PauliGeometryError):
    code = "dimension_mismatch"


class UnsupportedRegion(PauliGeometryError):
    code = "unsupported_region"


class ZeroDenominator(PauliGeometryError):
    code = "zero_denominator"


class NegativeRate(PauliGeometryError):
    code = "negative_rate"


class NegativeTime(PauliGeometryError):
    code = "negative_time"


class NotTlgObtainable(PauliGeometryError):
    code = "not_tlg_obtainable"


class QuadratureFailure(PauliGeometryError):
    code = "quadrature_failure"


class InvalidGrid(PauliGeometryError):
    code = "invalid_grid"


class InvalidRateSpec(PauliGeometryError):
    code = "invalid_rate_spec"


class EigenvalueOverflow(PauliGeometryError):
    code = "eigenvalue_overflow"
