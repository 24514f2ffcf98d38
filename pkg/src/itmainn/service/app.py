"""HTTP service: live classification, case intake, lookups, dashboard.

The model bundle is loaded once and shared read-only across requests; case
writes serialize in the store. Authority endpoints (case listing, dashboard)
require the configured bearer token.
"""
from __future__ import annotations

import json
import secrets
from pathlib import Path
from typing import List, Optional

import torch
from fastapi import Depends, FastAPI, File, Form, Header, HTTPException, Query, UploadFile
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..augment.preprocess import DecodeError
from ..models.bundle import CHECKSUM_NAME, load_bundle
from ..models.heads import BINARY
from ..models.inference import image_to_tensor
from .config import ServiceConfig
from .geo import EmptyRegistry, HealthCenter, load_centers_csv, nearest_centers
from .schemas import CaseSubmission, ClassifyResponse
from .store import CaseStore, StorageFailure


def _read_model_version(bundle_path: Optional[Path]) -> str:
    if bundle_path is None:
        return "unversioned"
    checksum_file = Path(bundle_path) / CHECKSUM_NAME
    if checksum_file.exists():
        return checksum_file.read_text().split()[0]
    return "unversioned"


def create_app(
    config: ServiceConfig,
    *,
    model=None,
    store: Optional[CaseStore] = None,
    centers: Optional[List[HealthCenter]] = None,
    model_version: Optional[str] = None,
) -> FastAPI:
    """Build the application; dependencies may be injected for tests."""
    if model is None and config.bundle_path is not None:
        model = load_bundle(config.bundle_path)
    if store is None:
        store = CaseStore(config.store_path)
    if centers is None:
        centers = load_centers_csv(config.centers_csv) if config.centers_csv else []
    version = model_version or _read_model_version(config.bundle_path)

    app = FastAPI(title="itmainn case service")
    app.state.model = model
    app.state.store = store
    app.state.centers = centers
    app.state.model_version = version
    app.state.config = config

    def require_token(authorization: Optional[str] = Header(None)):
        token = config.api_token
        supplied = ""
        if authorization and authorization.startswith("Bearer "):
            supplied = authorization[len("Bearer "):]
        if not token or not secrets.compare_digest(supplied, token):
            raise HTTPException(
                status_code=401,
                detail="valid bearer token required",
                headers={"WWW-Authenticate": "Bearer"},
            )

    @app.exception_handler(StorageFailure)
    def _storage_failure(request, exc):
        return JSONResponse(status_code=503, content={"detail": str(exc)})

    def healthz():
        if app.state.model is None or not store.ping():
            raise HTTPException(status_code=503, detail="model or store unavailable")
        return {"status": "ok", "model_version": version}

    app.get("/healthz")(healthz)
    app.get("/api/v1/healthz")(healthz)

    @app.get("/api/v1/config")
    def service_config():
        """Client-facing configuration (symptom catalog, classes, guidance)."""
        m = app.state.model
        return {
            "symptom_catalog": list(config.symptom_catalog),
            "positive_class": config.positive_class,
            "class_names": list(m.class_names) if m is not None else [],
            "task": m.head_spec.task if m is not None else None,
            "threshold": config.threshold,
            "guidance": config.guidance,
            "poll_interval_s": config.poll_interval_s,
        }

    @app.post("/api/v1/classify", response_model=ClassifyResponse)
    def classify(image: UploadFile = File(...), symptoms: Optional[str] = Form(None)):
        if app.state.model is None:
            raise HTTPException(status_code=503, detail="no model bundle loaded")
        data = image.file.read(config.max_image_bytes + 1)
        if len(data) > config.max_image_bytes:
            raise HTTPException(status_code=413, detail="image exceeds size limit")
        if symptoms is not None:
            try:
                parsed = json.loads(symptoms)
                assert isinstance(parsed, list)
            except (ValueError, AssertionError):
                raise HTTPException(status_code=422, detail="symptoms must be a JSON array")
        m = app.state.model
        try:
            tensor = image_to_tensor(data, m)
        except DecodeError:
            raise HTTPException(status_code=415, detail="unsupported or undecodable image")
        with torch.no_grad():
            scores = m.scores(tensor.unsqueeze(0))[0].tolist()
        # the response promises a distribution; renormalize away float32 drift
        total = sum(scores)
        scores = [s / total for s in scores]
        if m.head_spec.task == BINARY:
            # boundary rule: a score exactly at threshold counts positive
            index = 1 if scores[1] >= config.threshold else 0
        else:
            index = max(range(len(scores)), key=scores.__getitem__)
        return {
            "prediction": m.class_names[index],
            "confidence": scores[index],
            "per_class": {name: s for name, s in zip(m.class_names, scores)},
            "model_version": version,
        }

    @app.post("/api/v1/cases", status_code=201)
    def submit_case(body: CaseSubmission):
        m = app.state.model
        if m is not None and body.prediction not in m.class_names:
            raise HTTPException(
                status_code=422,
                detail=f"prediction must be one of {list(m.class_names)}",
            )
        unknown = [s for s in body.symptoms if s not in config.symptom_catalog]
        if unknown:
            raise HTTPException(
                status_code=422,
                detail=f"unknown symptoms {unknown}; catalog: {list(config.symptom_catalog)}",
            )
        record = store.submit(
            prediction=body.prediction,
            confidence=body.confidence,
            model_version=body.model_version or version,
            image_ref=body.image_ref,
            symptoms=body.symptoms,
            age=body.age,
            gender=body.gender,
            location=(body.location.lat, body.location.lon) if body.location else None,
            dashboard_opt_out=body.dashboard_opt_out,
        )
        return record.to_dict()

    @app.get("/api/v1/cases", dependencies=[Depends(require_token)])
    def list_cases(
        since: Optional[str] = Query(None, alias="from"),
        until: Optional[str] = Query(None, alias="to"),
        infected: Optional[bool] = None,
        limit: int = Query(50, ge=1, le=500),
        offset: int = Query(0, ge=0),
    ):
        records, total = store.list_cases(
            since=since,
            until=until,
            infected=infected,
            positive_class=config.positive_class,
            limit=limit,
            offset=offset,
        )
        return {
            "cases": [r.to_dict() for r in records],
            "total": total,
            "limit": limit,
            "offset": offset,
        }

    @app.get("/api/v1/health-centers")
    def health_centers(
        lat: float = Query(..., ge=-90, le=90),
        lon: float = Query(..., ge=-180, le=180),
        limit: int = Query(5, ge=1, le=100),
    ):
        try:
            ranked = nearest_centers(app.state.centers, (lat, lon), limit)
        except EmptyRegistry:
            raise HTTPException(status_code=503, detail="no health-center registry loaded")
        return [
            {"center": center.to_dict(), "distance_km": distance}
            for center, distance in ranked
        ]

    @app.get("/api/v1/dashboard/summary", dependencies=[Depends(require_token)])
    def dashboard_summary(
        since: Optional[str] = Query(None, alias="from"),
        until: Optional[str] = Query(None, alias="to"),
    ):
        snapshot = store.dashboard(
            positive_class=config.positive_class,
            symptom_catalog=config.symptom_catalog,
            since=since,
            until=until,
        )
        return snapshot.to_dict()

    if config.frontend_dist and Path(config.frontend_dist).is_dir():
        app.mount("/app", StaticFiles(directory=str(config.frontend_dist), html=True), name="app")

    return app


def serve(config: ServiceConfig) -> None:
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port)
