"""HTTP facade over the decision engine.

The service accepts the same JSON documents as the curve-file format and
returns the engine's own deterministic payloads.  It holds no state: every
request is certified from scratch, so instances can be scaled or restarted
freely.

Routes:

    POST /certify      curve file body -> certificate
    POST /local        curve file body + "prime" -> local report
    POST /sstest       curve file body -> reduction at 3 + twist search
    GET  /group-audit  -> audit constants
    GET  /healthz      -> {"status": "ok"}
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .certify import certify, local_modularity_analysis
from .curvefile import CurveFileError, parse_curve_payload
from .grouptheory import audit_borel
from .sstest import semistabilization_report


class CurvePayload(BaseModel):
    """Request body: exactly the curve-file schema plus an optional
    Frobenius search bound."""

    model_config = ConfigDict(extra="forbid")

    field: dict
    a: Optional[list] = None
    assume: Optional[list] = None
    local_data: Optional[list] = None
    l_bound: Optional[int] = Field(default=None, ge=3)

    def curve_document(self) -> dict:
        doc: dict = {"field": self.field}
        if self.a is not None:
            doc["a"] = self.a
        if self.assume is not None:
            doc["assume"] = self.assume
        if self.local_data is not None:
            doc["local_data"] = self.local_data
        return doc


class LocalPayload(CurvePayload):
    prime: int


def create_app() -> FastAPI:
    app = FastAPI(title="modcert", version=__version__)

    @app.exception_handler(CurveFileError)
    async def _curve_file_error(_request, exc: CurveFileError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(_request, exc: ValueError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok", "version": __version__}

    @app.get("/group-audit")
    async def group_audit():
        return audit_borel().as_dict()

    @app.post("/certify")
    async def certify_route(payload: CurvePayload):
        parsed = parse_curve_payload(payload.curve_document())
        cert = certify(parsed.source, assume=parsed.assume, l_bound=payload.l_bound)
        return cert.to_payload()

    @app.post("/local")
    async def local_route(payload: LocalPayload):
        parsed = parse_curve_payload(payload.curve_document())
        report = local_modularity_analysis(
            parsed.source, payload.prime, assume=parsed.assume, l_bound=payload.l_bound
        )
        return report.to_payload()

    @app.post("/sstest")
    async def sstest_route(payload: CurvePayload):
        parsed = parse_curve_payload(payload.curve_document())
        return semistabilization_report(parsed.source).to_payload()

    return app


app = create_app()
