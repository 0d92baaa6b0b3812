import math

import numpy as np
import pytest

from app.core.errors import DimensionMismatch
from app.models.types import Family
from app.services import channels
from app.services.families import box_volume, dimension, embed, embed_many, metric_scale, parameter_box


@pytest.mark.parametrize(
    "family, x, expected",
    [
        (Family.PAIR_ZERO, [1.0], (1, 1, 0)),
        (Family.TWO_PAULI, [0.5], (0.5, 0.5, 0)),
        (Family.DEPHASING, [0.0], (1, 1, 1)),
        (Family.AXIAL, [0.3], (0.3, 0, 0)),
        (Family.DEPOLARIZING, [-0.2], (-0.2, -0.2, -0.2)),
        (Family.TWO_DISTINCT_ZERO, [0.1, 0.2], (0.1, 0.2, 0)),
        (Family.DEGENERATE_PAIR, [0.1, 0.2], (0.1, 0.1, 0.2)),
        (Family.GENERAL, [0.1, 0.2, 0.3], (0.1, 0.2, 0.3)),
    ],
)
def test_embed(family, x, expected):
    assert embed(family, x).as_tuple() == pytest.approx(expected)


def test_embed_pair_zero_endpoint_is_not_a_channel():
    assert not channels.is_cptp(embed(Family.PAIR_ZERO, [1.0]))


def test_structural_zeros_are_exact():
    assert embed(Family.PAIR_ZERO, [0.7]).lambda3 == 0.0
    assert not channels.is_invertible(embed(Family.TWO_DISTINCT_ZERO, [0.3, 0.4]))


def test_embed_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        embed(Family.DEGENERATE_PAIR, [0.1])
    with pytest.raises(DimensionMismatch):
        embed(Family.AXIAL, [0.1, 0.2])


def test_embed_many_matches_embed(rng):
    xs = rng.uniform(-1, 1, size=(50, 2))
    rows = embed_many(Family.DEGENERATE_PAIR, xs)
    for x, row in zip(xs, rows):
        assert tuple(row) == pytest.approx(embed(Family.DEGENERATE_PAIR, x).as_tuple())


@pytest.mark.parametrize(
    "family, expected",
    [
        (Family.AXIAL, 0.5),
        (Family.PAIR_ZERO, math.sqrt(2) / 2),
        (Family.DEPOLARIZING, math.sqrt(3) / 2),
        (Family.TWO_DISTINCT_ZERO, 0.25),
        (Family.DEGENERATE_PAIR, math.sqrt(2) / 4),
        (Family.GENERAL, 0.125),
    ],
)
def test_metric_scale(family, expected):
    assert metric_scale(family) == pytest.approx(expected, abs=1e-14)


def test_parameter_boxes():
    assert parameter_box(Family.AXIAL) == [(-1.0, 1.0)]
    assert parameter_box(Family.DEGENERATE_PAIR) == [(-1.0, 1.0), (-1.0, 1.0)]
    assert parameter_box(Family.DEPHASING) == [(0.0, 1.0)]
    assert parameter_box(Family.TWO_PAULI) == [(0.0, 1.0)]
    assert dimension(Family.GENERAL) == 3
    assert box_volume(Family.GENERAL) == 8.0


@pytest.mark.parametrize("family", [Family.TWO_PAULI, Family.DEPHASING])
def test_subfamilies_are_channels_on_their_box(family):
    for p in np.linspace(0.0, 1.0, 101):
        assert channels.is_cptp(embed(family, [p]))
