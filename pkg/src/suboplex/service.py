"""HTTP front end: one POST route per verb, same request/response models as the CLI."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .api import HANDLERS, ClassQuery, FarkasQuery, ResolveQuery, Response, SeparateQuery, VerifyQuery, error_response
from .errors import CrossCheckError, SizeLimitError, SuboplexError

app = FastAPI(title="suboplex", version=__version__)


def status_for(exc: SuboplexError) -> int:
    if isinstance(exc, CrossCheckError):
        return 500
    if isinstance(exc, SizeLimitError):
        return 413
    return 400


@app.exception_handler(SuboplexError)
async def _suboplex_error(_request: Request, exc: SuboplexError) -> JSONResponse:
    return JSONResponse(status_code=status_for(exc), content=error_response(exc).model_dump())


@app.get("/health")
def health() -> dict[str, str]:
    return {"status": "ok", "version": __version__}


@app.post("/analyze", response_model=Response)
def analyze(q: ClassQuery) -> Response:
    return HANDLERS["analyze"][1](q)


@app.post("/betti", response_model=Response)
def betti(q: ClassQuery) -> Response:
    return HANDLERS["betti"][1](q)


@app.post("/dims", response_model=Response)
def dims(q: ClassQuery) -> Response:
    return HANDLERS["dims"][1](q)


@app.post("/ideal", response_model=Response)
def ideal(q: ClassQuery) -> Response:
    return HANDLERS["ideal"][1](q)


@app.post("/cm", response_model=Response)
def cm(q: ClassQuery) -> Response:
    return HANDLERS["cm"][1](q)


@app.post("/separate", response_model=Response)
def separate(q: SeparateQuery) -> Response:
    return HANDLERS["separate"][1](q)


@app.post("/farkas", response_model=Response)
def farkas(q: FarkasQuery) -> Response:
    return HANDLERS["farkas"][1](q)


@app.post("/resolve", response_model=Response)
def resolve(q: ResolveQuery) -> Response:
    return HANDLERS["resolve"][1](q)


@app.post("/verify-paper", response_model=Response)
def verify_paper(q: VerifyQuery) -> Response:
    return HANDLERS["verify-paper"][1](q)


def run(host: str = "127.0.0.1", port: int = 8000) -> None:  # pragma: no cover
    import uvicorn

    uvicorn.run(app, host=host, port=port)
