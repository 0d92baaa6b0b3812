import math

import jsonschema
import pytest

from app.models.dto import ChoiOut
from app.models.types import ChartRow, ClassificationReport, RatioResult, Trajectory, VolumeEstimate


def test_classify_eigenvalues(client):
    res = client.post("/channels/classify", json={"eigenvalues": [0.9, 0.9, 0.9]})
    assert res.status_code == 200
    data = res.json()
    jsonschema.validate(data, ClassificationReport.model_json_schema())
    assert data["cp_divisible"] and not data["entanglement_breaking"]


def test_classify_probabilities(client):
    res = client.post("/channels/classify", json={"probabilities": [0.25, 0.25, 0.25, 0.25]})
    assert res.status_code == 200
    assert res.json()["eigenvalues"] == [0.0, 0.0, 0.0]


@pytest.mark.parametrize(
    "body",
    [{}, {"eigenvalues": [1, 1, 1], "probabilities": [1, 0, 0, 0]}, {"eigenvalues": [1, 1]}],
)
def test_classify_rejects_malformed_bodies(client, body):
    assert client.post("/channels/classify", json=body).status_code == 422


def test_domain_error_shape(client):
    res = client.post("/channels/classify", json={"probabilities": [0.5, 0.5, 0.5, 0.0]})
    assert res.status_code == 422
    assert res.json()["code"] == "non_unit_sum"


def test_choi(client):
    res = client.post("/channels/choi", json={"eigenvalues": [1, 1, 1]})
    assert res.status_code == 200
    data = res.json()
    jsonschema.validate(data, ChoiOut.model_json_schema())
    assert data["spectrum"] == pytest.approx([0, 0, 0, 1], abs=1e-12)
    assert data["probabilities"] == pytest.approx([1, 0, 0, 0])


def test_volume(client):
    res = client.get("/volumes/degenerate-pair/cpdiv")
    assert res.status_code == 200
    data = res.json()
    jsonschema.validate(data, VolumeEstimate.model_json_schema())
    assert data["value"] == pytest.approx(math.sqrt(2) / 3, abs=1e-12)


def test_volume_monte_carlo(client):
    res = client.get("/volumes/general/cpt", params={"method": "mc", "samples": 10_000, "seed": 4})
    assert res.status_code == 200
    data = res.json()
    assert data["method"] == "mc" and data["samples"] == 10_000
    assert abs(data["value"] - 1 / 3) <= 4 * data["stderr"]


@pytest.mark.parametrize(
    "path",
    ["/volumes/bogus/cpt", "/volumes/axial/bogus", "/volumes/axial/cpt?ldiv_mode=bogus", "/volumes/axial/cpt?method=x"],
)
def test_unknown_names_are_bad_requests(client, path):
    assert client.get(path).status_code == 400


def test_ratio(client):
    res = client.get("/ratios/general", params={"num": "ebc", "den": "cpt"})
    assert res.status_code == 200
    data = res.json()
    jsonschema.validate(data, RatioResult.model_json_schema())
    assert data["value"] == pytest.approx(0.5, abs=1e-12)


def test_ratio_zero_denominator(client):
    res = client.get("/ratios/pair-zero", params={"num": "cpt", "den": "cpdiv"})
    assert res.status_code == 422
    assert res.json()["code"] == "zero_denominator"


def test_regions(client):
    res = client.get("/regions/two-distinct-zero/cpt")
    assert res.status_code == 200
    assert res.json()["parameters"] == ["lambda", "eta"]


def test_charts(client):
    res = client.get("/charts", params={"ldiv_mode": "cpdiv"})
    assert res.status_code == 200
    rows = res.json()
    assert len(rows) == 56
    for row in rows:
        jsonschema.validate(row, ChartRow.model_json_schema())


def test_cross_sections(client):
    res = client.get("/cross-sections/two-distinct-zero")
    assert res.status_code == 200
    assert [s["plane"] for s in res.json()] == ["lambda3=0", "lambda1=0", "lambda2=0"]


def test_semigroup(client):
    res = client.post("/dynamics/semigroup", json={"gamma": [0, 0, 1], "times": [0, math.log(2)]})
    assert res.status_code == 200
    data = res.json()
    jsonschema.validate(data, Trajectory.model_json_schema())
    assert data["samples"][-1]["eigenvalues"] == pytest.approx([0.5, 0.5, 1.0])


def test_semigroup_negative_rate(client):
    res = client.post("/dynamics/semigroup", json={"gamma": [0, -1, 1], "times": [1.0]})
    assert res.status_code == 422
    assert res.json()["code"] == "negative_rate"


def test_trajectory(client):
    res = client.post("/dynamics/trajectory", json={"rates": "1;1;-tanh(t)", "t_max": 1.0, "steps": 4})
    assert res.status_code == 200
    samples = res.json()["samples"]
    assert len(samples) == 5
    assert samples[-1]["eigenvalues"][2] == pytest.approx(math.exp(-2), abs=1e-9)


@pytest.mark.parametrize(
    "rates, code",
    [("-1000;-1000;0", "eigenvalue_overflow"), ("log(t-5);0;0", "quadrature_failure")],
)
def test_trajectory_domain_errors(client, rates, code):
    res = client.post("/dynamics/trajectory", json={"rates": rates, "t_max": 2.0, "steps": 2})
    assert res.status_code == 422
    assert res.json()["code"] == code


def test_classify_extreme_eigenvalues(client):
    res = client.post("/channels/classify", json={"eigenvalues": [1e308, 1e308, 1e308]})
    assert res.status_code == 200
    assert res.json()["cptp"] is False


def test_rates(client):
    res = client.post("/dynamics/rates", json={"eigenvalues": [0.6, 0.6, 0.36]})
    assert res.status_code == 200
    data = res.json()
    assert data["integrated_rates"][2] == pytest.approx(0.0, abs=1e-12)
    assert data["nonnegative"] is True


def test_rates_not_obtainable(client):
    res = client.post("/dynamics/rates", json={"eigenvalues": [0.6, -0.6, 0.36]})
    assert res.status_code == 422
    assert res.json()["code"] == "not_tlg_obtainable"
