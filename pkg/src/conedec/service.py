"""HTTP surface over the handlers.

Run with `uvicorn conedec.service:app` (or `conedec serve`). Package
errors surface as 422 responses carrying the error kind and message.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import handlers
from .errors import ConedecError
from .schemas import (CrossRequest, CrossResponse, DecomposeRequest,
                      DecomposeResponse, ReciprocityRequest, ReportOut,
                      SnfRequest, SnfResponse, UnityEvalRequest,
                      UnityEvalResponse, VerifyRequest)

app = FastAPI(title="conedec", version="0.1.0",
              description="Signed simplicial cone decompositions of "
                          "Diophantine solution sets, with exact "
                          "generating functions and verification.")


@app.exception_handler(ConedecError)
async def conedec_error(request: Request, exc: ConedecError):
    return JSONResponse(status_code=422,
                        content={"kind": type(exc).__name__, "detail": str(exc)})


@app.exception_handler(KeyError)
async def key_error(request: Request, exc: KeyError):
    return JSONResponse(status_code=422,
                        content={"kind": "KeyError", "detail": str(exc)})


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/decompose", response_model=DecomposeResponse)
def decompose_endpoint(req: DecomposeRequest):
    return handlers.handle_decompose(req)


@app.post("/verify", response_model=ReportOut)
def verify_endpoint(req: VerifyRequest):
    return handlers.handle_verify(req)


@app.post("/cross", response_model=CrossResponse)
def cross_endpoint(req: CrossRequest):
    return handlers.handle_cross(req)


@app.post("/snf", response_model=SnfResponse)
def snf_endpoint(req: SnfRequest):
    return handlers.handle_snf(req)


@app.post("/reciprocity", response_model=ReportOut)
def reciprocity_endpoint(req: ReciprocityRequest):
    return handlers.handle_reciprocity(req)


@app.post("/unity-eval", response_model=UnityEvalResponse)
def unity_eval_endpoint(req: UnityEvalRequest):
    return handlers.handle_unity_eval(req)
