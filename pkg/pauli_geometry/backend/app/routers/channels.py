from fastapi import APIRouter

from app.models.dto import ChannelIn, ChoiOut, EigenvaluesIn
from app.models.types import ClassificationReport, PauliEigenvalues, PauliProbabilities
from app.services import channels

router = APIRouter()


@router.post("/classify", response_model=ClassificationReport)
def classify(body: ChannelIn):
    if body.eigenvalues is not None:
        e = PauliEigenvalues.of(body.eigenvalues)
    else:
        e = channels.eigenvalues_from_probabilities(PauliProbabilities.of(body.probabilities))
    return channels.classify(e)


@router.post("/choi", response_model=ChoiOut)
def choi(body: EigenvaluesIn):
    e = PauliEigenvalues.of(body.eigenvalues)
    state = channels.choi_state(e)
    return ChoiOut(
        real=state.matrix.real.tolist(),
        imag=state.matrix.imag.tolist(),
        spectrum=state.spectrum().tolist(),
        probabilities=channels.probabilities_from_eigenvalues(e).as_tuple(),
    )
