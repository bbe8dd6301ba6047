"""Stateless JSON-over-HTTP facade over the library.

The DB snapshot is loaded once at startup and shared read-only by every
handler; requests are pure request -> response functions and the service
adds no arithmetic of its own, so responses carry exactly the numbers a
direct library call returns. Every non-2xx response body is a single
error object {"code", "message", "detail"}.
"""

from __future__ import annotations

import math
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import __version__
from .fiberclass import (
    CriticalLengthInput,
    EmptyClassError,
    classify,
    critical_length,
    select_fiber,
)
from .fuzzysim import RequirementError, rank_by_similarity, requirement_from_dict
from .laminate import (
    LaminateSpecError,
    analyze,
    laminate_spec_from_dict,
    report_to_dict,
    sweep_orientations,
)
from .matdb import MaterialDb, record_to_dict


class ApiFault(Exception):
    """Carries one error object to the HTTP layer."""

    def __init__(self, status: int, code: str, message: str,
                 detail: Any = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail


def _error_response(status: int, code: str, message: str,
                    detail: Any = None) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"code": code, "message": message,
                                 "detail": detail})


def _require_object(payload: Any, what: str) -> dict:
    if not isinstance(payload, dict):
        raise ApiFault(422, "bad_request", f"{what} must be a JSON object")
    return payload


def _parse_requirement(payload: dict, schema: str):
    try:
        req = requirement_from_dict(payload)
    except RequirementError as exc:
        raise ApiFault(422, "invalid_requirement", str(exc),
                       detail=exc.slot) from exc
    if req.schema != schema:
        raise ApiFault(422, "invalid_requirement",
                       f"expected a {schema}-schema requirement, got {req.schema!r}",
                       detail="schema")
    return req


def _parse_count(payload: dict, key: str) -> int | None:
    value = payload.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ApiFault(422, "bad_request",
                       f"{key!r} must be a non-negative integer", detail=key)
    return value


def _parse_positive_number(payload: dict, key: str) -> float:
    value = payload.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ApiFault(422, "invalid_input",
                       f"{key!r} must be a number", detail=key)
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise ApiFault(422, "invalid_input",
                       f"{key!r} must be finite and > 0", detail=key)
    return value


def create_app(db: MaterialDb) -> FastAPI:
    app = FastAPI(title="frpkit service", version=__version__,
                  docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiFault)
    async def _fault_handler(_request: Request, exc: ApiFault):
        return _error_response(exc.status, exc.code, exc.message, exc.detail)

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(_request: Request, exc: RequestValidationError):
        return _error_response(422, "bad_request", "malformed request body",
                               detail=str(exc.errors()[:1]))

    @app.exception_handler(StarletteHTTPException)
    async def _http_handler(_request: Request, exc: StarletteHTTPException):
        return _error_response(exc.status_code, "http_error", str(exc.detail))

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok",
                "db_counts": {"polymers": len(db.polymers),
                              "fibers": len(db.fibers)},
                "version": __version__}

    @app.get("/api/polymers")
    async def list_polymers():
        return [record_to_dict(r) for r in db.polymers]

    @app.get("/api/fibers")
    async def list_fibers():
        return [record_to_dict(r) for r in db.fibers]

    @app.post("/api/select/matrix")
    async def select_matrix(payload: dict):
        payload = _require_object(payload, "request body")
        req = _parse_requirement(
            _require_object(payload.get("requirements"), "'requirements'"),
            "polymer")
        top = _parse_count(payload, "top")
        normalize = bool(payload.get("normalize", False))
        if not db.polymers:
            raise ApiFault(500, "empty_db", "no polymer records loaded")
        results = rank_by_similarity(req, db.polymers, normalize=normalize)
        if top is not None:
            results = results[:top]
        return {"results": [{"rank": r.rank, "name": r.record_name,
                             "strength": r.strength} for r in results]}

    @app.post("/api/fibers/classify")
    async def classify_fiber(payload: dict):
        payload = _require_object(payload, "request body")
        sigma_f = _parse_positive_number(payload, "sigma_f")
        d = _parse_positive_number(payload, "d")
        length = _parse_positive_number(payload, "l")
        tau_c = _parse_positive_number(payload, "tau_c")
        l_c = critical_length(CriticalLengthInput(sigma_f=sigma_f, d=d,
                                                  tau_c=tau_c))
        return {"l_c": l_c, "class": classify(length, l_c).value}

    @app.post("/api/select/fiber")
    async def select_fiber_endpoint(payload: dict):
        payload = _require_object(payload, "request body")
        req = _parse_requirement(
            _require_object(payload.get("requirements"), "'requirements'"),
            "fiber")
        tau_c_override = payload.get("tau_c_override")
        if tau_c_override is not None:
            if isinstance(tau_c_override, bool) or \
                    not isinstance(tau_c_override, (int, float)):
                raise ApiFault(422, "invalid_input",
                               "'tau_c_override' must be a number",
                               detail="tau_c_override")
            tau_c_override = float(tau_c_override)
        matrix_name = payload.get("matrix")
        matrix = None
        if matrix_name is not None:
            try:
                matrix = db.polymer(matrix_name)
            except KeyError as exc:
                raise ApiFault(422, "invalid_requirement", exc.args[0],
                               detail="matrix") from exc
        if matrix is None and tau_c_override is None:
            raise ApiFault(422, "invalid_requirement",
                           "need 'matrix' or 'tau_c_override' for the bond strength",
                           detail="matrix")
        if not db.fibers:
            raise ApiFault(500, "empty_db", "no fiber records loaded")
        try:
            fiber_class, results = select_fiber(
                req, db.fibers, matrix, tau_c_override=tau_c_override,
                normalize=bool(payload.get("normalize", False)))
        except EmptyClassError as exc:
            raise ApiFault(404, "empty_class", str(exc),
                           detail=exc.fiber_class.value) from exc
        except ValueError as exc:
            raise ApiFault(422, "invalid_input", str(exc)) from exc
        return {"class": fiber_class.value,
                "results": [{"rank": r.rank, "name": r.record_name,
                             "strength": r.strength} for r in results]}

    @app.post("/api/laminate/analyze")
    async def analyze_endpoint(payload: dict):
        payload = _require_object(payload, "request body")
        try:
            spec = laminate_spec_from_dict(payload)
        except LaminateSpecError as exc:
            raise ApiFault(422, "bad_spec", str(exc)) from exc
        return report_to_dict(analyze(spec))

    @app.post("/api/laminate/sweep")
    async def sweep_endpoint(payload: dict):
        payload = _require_object(payload, "request body")
        thetas = payload.get("thetas")
        if not isinstance(thetas, list):
            raise ApiFault(422, "bad_spec", "'thetas' must be an array",
                           detail="thetas")
        for t in thetas:
            if isinstance(t, bool) or not isinstance(t, (int, float)) or \
                    not (math.isfinite(float(t)) and 0.0 <= float(t) <= 90.0):
                raise ApiFault(422, "bad_spec",
                               f"theta {t!r} must be a number in [0, 90]",
                               detail="thetas")
        spec_payload = payload.get("spec", payload)
        try:
            spec = laminate_spec_from_dict(_require_object(spec_payload, "'spec'"))
        except LaminateSpecError as exc:
            raise ApiFault(422, "bad_spec", str(exc)) from exc
        points = sweep_orientations(spec, [float(t) for t in thetas])
        return {"rows": [{"theta_deg": p.theta_deg, "mean_clme": p.mean_clme,
                          "mean_ctme": p.mean_ctme} for p in points]}

    return app
