from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List

from dotenv import load_dotenv
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .checks import check_metadata
from .commands import build_group, certify_group, check_group, decompose_group, inspect_group
from .core import GwpGroup
from .errors import (
    BudgetExhausted,
    DeskGuardExceeded,
    DomainMismatch,
    GwpError,
    HypothesisViolation,
    PosetError,
    SpecParseError,
)
from .instance import parse_instance
from .reports import CertReport, DecompositionReport, InspectReport, InstanceChecks, dump_report
from .settings import DeskSettings, SettingsError, load_settings

load_dotenv(Path(__file__).resolve().parent.parent / ".env")

app = FastAPI(title="Generalised Wreath Product Desk", version="0.1.0")


class InstanceRequest(BaseModel):
    spec: str = Field(..., description="Instance text in the .gwp format")
    seed: int | None = Field(default=None, ge=0)
    budget: int | None = Field(default=None, gt=0)
    max_delta: int | None = Field(default=None, gt=0)
    max_enum: int | None = Field(default=None, gt=0)


class CheckRequest(InstanceRequest):
    scope: List[str] = Field(default_factory=list)


def _http_error(exc: Exception) -> HTTPException:
    if isinstance(exc, (SpecParseError, PosetError, DomainMismatch)):
        return HTTPException(status_code=400, detail=str(exc))
    if isinstance(exc, (HypothesisViolation, SettingsError)):
        return HTTPException(status_code=422, detail=str(exc))
    if isinstance(exc, (DeskGuardExceeded, BudgetExhausted)):
        return HTTPException(status_code=503, detail=str(exc))
    return HTTPException(status_code=400, detail=str(exc))


def _prepare(payload: InstanceRequest) -> tuple[GwpGroup, DeskSettings]:
    settings = load_settings(
        overrides={
            "seed": payload.seed,
            "max_delta": payload.max_delta,
            "max_enum": payload.max_enum,
            "lift_budget": payload.budget,
            "pair_budget": payload.budget,
            "search_budget": payload.budget,
        }
    )
    return build_group(parse_instance(payload.spec), settings), settings


@app.get("/health")
async def health() -> Dict[str, str]:
    return {"status": "ok"}


@app.get("/checks")
async def checks() -> List[Dict[str, Any]]:
    return check_metadata()


@app.post("/inspect")
def inspect(payload: InstanceRequest) -> Dict[str, Any]:
    try:
        group, _ = _prepare(payload)
        report: InspectReport = inspect_group(group)
    except GwpError as exc:
        raise _http_error(exc) from exc
    return dump_report(report)


@app.post("/decompose")
def decompose(payload: InstanceRequest) -> Dict[str, Any]:
    try:
        group, settings = _prepare(payload)
        report: DecompositionReport = decompose_group(group, settings)
    except GwpError as exc:
        raise _http_error(exc) from exc
    return dump_report(report)


@app.post("/certify")
def certify(payload: InstanceRequest) -> Dict[str, Any]:
    try:
        group, settings = _prepare(payload)
        report: CertReport = certify_group(group, settings)
    except GwpError as exc:
        raise _http_error(exc) from exc
    return dump_report(report)


@app.post("/selftest")
def selftest(payload: CheckRequest) -> Dict[str, Any]:
    try:
        group, settings = _prepare(payload)
        report: InstanceChecks = check_group(group, settings, payload.scope)
    except GwpError as exc:
        raise _http_error(exc) from exc
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return dump_report(report)
