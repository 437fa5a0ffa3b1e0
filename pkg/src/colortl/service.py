"""HTTP service exposing the exact computations as JSON endpoints.

Every endpoint takes and returns the same JSON documents the library uses:
realizations are Cartan-matrix documents ({"alphabet", "cartan", "ring"}),
words are lists of colors.  Malformed input maps to 400; a failed internal
consistency check maps to 500.  Non-existence of a projector is a result,
not an error.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .diagrams import check_word, enumerate_colored
from .hecke import he_to_json, kl_basis, mult_kl_by_bs
from .jones_wenzl import jw_descriptive, jw_recursive, perp_space_oracle
from .soergel_gate import (
    RealizationSpec,
    categorified_dyer_check,
    decompose_word,
    failing_primes,
    soergel_verdict,
)
from .tl_category import InvariantViolation

_METHODS = {
    "recursive": jw_recursive,
    "descriptive": jw_descriptive,
}


class RealizationRequest(BaseModel):
    word: list[str]
    realization: dict


class JWRequest(RealizationRequest):
    method: str = "recursive"


class CountRequest(BaseModel):
    bottom: list[str]
    top: list[str]


class WordRequest(BaseModel):
    word: list[str]


class MultRequest(BaseModel):
    left: list[str]
    by: str


class FailingPrimesRequest(BaseModel):
    word: list[str]
    max_prime: int = Field(default=13, ge=2)


class CheckRequest(RealizationRequest):
    letter: str


def create_app() -> FastAPI:
    app = FastAPI(title="colortl", version="0.1.0")

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(InvariantViolation)
    async def _invariant(request: Request, exc: InvariantViolation):
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    @app.post("/jw")
    async def jw(req: JWRequest):
        realization = RealizationSpec.from_json(req.realization)
        word = tuple(req.word)
        if req.method == "oracle":
            _, result = perp_space_oracle(word, realization.cartan)
        elif req.method in _METHODS:
            result = _METHODS[req.method](word, realization.cartan)
        else:
            raise ValueError(f"unknown method {req.method!r}")
        return result.to_json()

    @app.post("/count")
    async def count(req: CountRequest):
        bottom = check_word(req.bottom)
        top = check_word(req.top)
        return {
            "bottom": list(bottom),
            "top": list(top),
            "count": len(enumerate_colored(bottom, top)),
        }

    @app.post("/hecke/kl")
    async def hecke_kl(req: WordRequest):
        return he_to_json(kl_basis(tuple(req.word)))

    @app.post("/hecke/mult")
    async def hecke_mult(req: MultRequest):
        return he_to_json(mult_kl_by_bs(tuple(req.left), req.by))

    @app.post("/verdict")
    async def verdict(req: RealizationRequest):
        realization = RealizationSpec.from_json(req.realization)
        return soergel_verdict(tuple(req.word), realization).to_json()

    @app.post("/failing-primes")
    async def failing(req: FailingPrimesRequest):
        primes = failing_primes(tuple(req.word), req.max_prime)
        return {"word": req.word, "max_prime": req.max_prime, "primes": sorted(primes)}

    @app.post("/decompose")
    async def decompose(req: RealizationRequest):
        realization = RealizationSpec.from_json(req.realization)
        return decompose_word(tuple(req.word), realization).to_json()

    @app.post("/check")
    async def check(req: CheckRequest):
        realization = RealizationSpec.from_json(req.realization)
        return categorified_dyer_check(tuple(req.word), req.letter, realization)

    return app


app = create_app()
