"""Request/response bodies for the HTTP API."""
from __future__ import annotations

from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from .store import GENDERS


class Location(BaseModel):
    lat: float = Field(ge=-90, le=90)
    lon: float = Field(ge=-180, le=180)


class CaseSubmission(BaseModel):
    prediction: str
    confidence: float = Field(ge=0.0, le=1.0)
    model_version: str = ""
    image_ref: Optional[str] = None
    symptoms: List[str] = Field(default_factory=list)
    age: Optional[int] = Field(default=None, ge=0, le=130)
    gender: Optional[str] = None
    location: Optional[Location] = None
    dashboard_opt_out: bool = False

    @field_validator("gender")
    @classmethod
    def _known_gender(cls, value):
        if value is not None and value not in GENDERS:
            raise ValueError(f"gender must be one of {GENDERS}")
        return value


class ClassifyResponse(BaseModel):
    prediction: str
    confidence: float
    per_class: dict
    model_version: str
