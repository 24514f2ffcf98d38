"""Embedded transactional case store and dashboard aggregation.

Records live in a single sqlite database; symptoms are kept in a side table
so prevalence aggregates are plain GROUP BY queries. All access goes through
one connection guarded by a lock, which serializes writes (the concurrency
contract) while keeping reads consistent.
"""
from __future__ import annotations

import json
import sqlite3
import threading
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

SYMPTOM_CATALOG = (
    "fever",
    "rash",
    "headache",
    "swollen_lymph_nodes",
    "muscle_aches",
    "chills",
    "fatigue",
)

# (label, low, high); high None = open-ended
AGE_BUCKETS = (
    ("0-12", 0, 12),
    ("13-17", 13, 17),
    ("18-39", 18, 39),
    ("40-64", 40, 64),
    ("65+", 65, None),
)

GENDERS = ("male", "female", "other")


class StorageFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class CaseRecord:
    case_id: str
    submitted_at: str
    prediction: str
    confidence: float
    model_version: str = ""
    image_ref: Optional[str] = None
    symptoms: tuple = ()
    age: Optional[int] = None
    gender: Optional[str] = None
    location: Optional[tuple] = None
    dashboard_opt_out: bool = False

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "submitted_at": self.submitted_at,
            "prediction": self.prediction,
            "confidence": self.confidence,
            "model_version": self.model_version,
            "image_ref": self.image_ref,
            "symptoms": list(self.symptoms),
            "age": self.age,
            "gender": self.gender,
            "location": list(self.location) if self.location else None,
            "dashboard_opt_out": self.dashboard_opt_out,
        }


@dataclass(frozen=True)
class DashboardSnapshot:
    total_cases: int
    infected_count: int
    infection_rate: float
    gender_breakdown: dict
    age_histogram: dict
    symptom_prevalence: dict
    geo_points: list
    generated_at: str

    def to_dict(self) -> dict:
        return {
            "total_cases": self.total_cases,
            "infected_count": self.infected_count,
            "infection_rate": self.infection_rate,
            "gender_breakdown": dict(self.gender_breakdown),
            "age_histogram": dict(self.age_histogram),
            "symptom_prevalence": dict(self.symptom_prevalence),
            "geo_points": [list(p) for p in self.geo_points],
            "generated_at": self.generated_at,
        }


_SCHEMA = """
CREATE TABLE IF NOT EXISTS cases (
    case_id TEXT PRIMARY KEY,
    submitted_at TEXT NOT NULL,
    prediction TEXT NOT NULL,
    confidence REAL NOT NULL,
    model_version TEXT NOT NULL DEFAULT '',
    image_ref TEXT,
    symptoms TEXT NOT NULL DEFAULT '[]',
    age INTEGER,
    gender TEXT,
    lat REAL,
    lon REAL,
    dashboard_opt_out INTEGER NOT NULL DEFAULT 0
);
CREATE TABLE IF NOT EXISTS case_symptoms (
    case_id TEXT NOT NULL,
    symptom TEXT NOT NULL,
    PRIMARY KEY (case_id, symptom)
);
CREATE INDEX IF NOT EXISTS idx_cases_submitted ON cases (submitted_at);
"""


def _utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


class CaseStore:
    def __init__(self, path):
        self.path = str(path)
        self._lock = threading.Lock()
        try:
            self._conn = sqlite3.connect(self.path, check_same_thread=False)
            self._conn.executescript(_SCHEMA)
            self._conn.commit()
        except sqlite3.Error as exc:
            raise StorageFailure(f"could not open case store at {path}: {exc}") from exc

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    def ping(self) -> bool:
        try:
            with self._lock:
                self._conn.execute("SELECT 1").fetchone()
            return True
        except sqlite3.Error:
            return False

    def submit(
        self,
        *,
        prediction: str,
        confidence: float,
        model_version: str = "",
        image_ref: Optional[str] = None,
        symptoms: Sequence[str] = (),
        age: Optional[int] = None,
        gender: Optional[str] = None,
        location: Optional[tuple] = None,
        dashboard_opt_out: bool = False,
    ) -> CaseRecord:
        """Persist a new case with a server-generated id and timestamp."""
        record = CaseRecord(
            case_id=uuid.uuid4().hex,
            submitted_at=_utc_now_iso(),
            prediction=prediction,
            confidence=float(confidence),
            model_version=model_version,
            image_ref=image_ref,
            symptoms=tuple(dict.fromkeys(symptoms)),
            age=age,
            gender=gender,
            location=tuple(location) if location else None,
            dashboard_opt_out=bool(dashboard_opt_out),
        )
        lat, lon = (record.location if record.location else (None, None))
        try:
            with self._lock:
                self._conn.execute(
                    "INSERT INTO cases (case_id, submitted_at, prediction, confidence,"
                    " model_version, image_ref, symptoms, age, gender, lat, lon,"
                    " dashboard_opt_out) VALUES (?,?,?,?,?,?,?,?,?,?,?,?)",
                    (
                        record.case_id,
                        record.submitted_at,
                        record.prediction,
                        record.confidence,
                        record.model_version,
                        record.image_ref,
                        json.dumps(list(record.symptoms)),
                        record.age,
                        record.gender,
                        lat,
                        lon,
                        int(record.dashboard_opt_out),
                    ),
                )
                self._conn.executemany(
                    "INSERT OR IGNORE INTO case_symptoms (case_id, symptom) VALUES (?,?)",
                    [(record.case_id, s) for s in record.symptoms],
                )
                self._conn.commit()
        except sqlite3.Error as exc:
            raise StorageFailure(f"case insert failed: {exc}") from exc
        return record

    @staticmethod
    def _row_to_record(row) -> CaseRecord:
        location = (row[9], row[10]) if row[9] is not None and row[10] is not None else None
        return CaseRecord(
            case_id=row[0],
            submitted_at=row[1],
            prediction=row[2],
            confidence=row[3],
            model_version=row[4],
            image_ref=row[5],
            symptoms=tuple(json.loads(row[6])),
            age=row[7],
            gender=row[8],
            location=location,
            dashboard_opt_out=bool(row[11]),
        )

    _COLUMNS = (
        "case_id, submitted_at, prediction, confidence, model_version, image_ref,"
        " symptoms, age, gender, lat, lon, dashboard_opt_out"
    )

    @staticmethod
    def _range_clause(since, until, extra="1=1"):
        clause, params = [extra], []
        if since is not None:
            clause.append("submitted_at >= ?")
            params.append(since)
        if until is not None:
            clause.append("submitted_at <= ?")
            params.append(until)
        return " AND ".join(clause), params

    def get(self, case_id: str) -> Optional[CaseRecord]:
        with self._lock:
            row = self._conn.execute(
                f"SELECT {self._COLUMNS} FROM cases WHERE case_id = ?", (case_id,)
            ).fetchone()
        return self._row_to_record(row) if row else None

    def all_cases(self) -> List[CaseRecord]:
        """Every record, including opted-out ones (full-scan/export use)."""
        with self._lock:
            rows = self._conn.execute(
                f"SELECT {self._COLUMNS} FROM cases ORDER BY submitted_at, case_id"
            ).fetchall()
        return [self._row_to_record(r) for r in rows]

    def count(self) -> int:
        with self._lock:
            return self._conn.execute("SELECT COUNT(*) FROM cases").fetchone()[0]

    def list_cases(
        self,
        *,
        since: Optional[str] = None,
        until: Optional[str] = None,
        infected: Optional[bool] = None,
        positive_class: str = "Monkeypox",
        limit: int = 50,
        offset: int = 0,
    ) -> Tuple[List[CaseRecord], int]:
        """Paginated listing for the authority view; opted-out cases excluded."""
        clause, params = self._range_clause(since, until, "dashboard_opt_out = 0")
        if infected is True:
            clause += " AND prediction = ?"
            params.append(positive_class)
        elif infected is False:
            clause += " AND prediction != ?"
            params.append(positive_class)
        try:
            with self._lock:
                total = self._conn.execute(
                    f"SELECT COUNT(*) FROM cases WHERE {clause}", params
                ).fetchone()[0]
                rows = self._conn.execute(
                    f"SELECT {self._COLUMNS} FROM cases WHERE {clause}"
                    " ORDER BY submitted_at DESC, case_id LIMIT ? OFFSET ?",
                    params + [limit, offset],
                ).fetchall()
        except sqlite3.Error as exc:
            raise StorageFailure(f"case query failed: {exc}") from exc
        return [self._row_to_record(r) for r in rows], total

    def dashboard(
        self,
        *,
        positive_class: str = "Monkeypox",
        symptom_catalog: Sequence[str] = SYMPTOM_CATALOG,
        age_buckets: Sequence[tuple] = AGE_BUCKETS,
        since: Optional[str] = None,
        until: Optional[str] = None,
    ) -> DashboardSnapshot:
        """Aggregate the (non-opted-out) cases in range via SQL.

        Demographic panels (gender, age, symptoms) describe the infected
        population; ratios are taken over the infected count.
        """
        clause, params = self._range_clause(since, until, "dashboard_opt_out = 0")
        infected_clause = clause + " AND prediction = ?"
        infected_params = params + [positive_class]
        try:
            with self._lock:
                total = self._conn.execute(
                    f"SELECT COUNT(*) FROM cases WHERE {clause}", params
                ).fetchone()[0]
                infected = self._conn.execute(
                    f"SELECT COUNT(*) FROM cases WHERE {infected_clause}", infected_params
                ).fetchone()[0]
                gender_rows = self._conn.execute(
                    f"SELECT gender, COUNT(*) FROM cases WHERE {infected_clause}"
                    " AND gender IS NOT NULL GROUP BY gender",
                    infected_params,
                ).fetchall()
                age_histogram = {}
                for label, low, high in age_buckets:
                    if high is None:
                        sql = f"SELECT COUNT(*) FROM cases WHERE {infected_clause} AND age >= ?"
                        bucket_params = infected_params + [low]
                    else:
                        sql = (
                            f"SELECT COUNT(*) FROM cases WHERE {infected_clause}"
                            " AND age BETWEEN ? AND ?"
                        )
                        bucket_params = infected_params + [low, high]
                    age_histogram[label] = self._conn.execute(sql, bucket_params).fetchone()[0]
                # unqualified column names in the clause resolve against
                # `cases`; the side table only has case_id/symptom
                symptom_rows = self._conn.execute(
                    "SELECT s.symptom, COUNT(*) FROM case_symptoms s JOIN cases"
                    f" ON cases.case_id = s.case_id WHERE {infected_clause}"
                    " GROUP BY s.symptom",
                    infected_params,
                ).fetchall()
                geo_rows = self._conn.execute(
                    f"SELECT lat, lon, prediction = ? FROM cases WHERE {clause}"
                    " AND lat IS NOT NULL AND lon IS NOT NULL"
                    " ORDER BY submitted_at, case_id",
                    [positive_class] + params,
                ).fetchall()
        except sqlite3.Error as exc:
            raise StorageFailure(f"dashboard query failed: {exc}") from exc

        gender_counts = dict(gender_rows)
        symptom_counts = dict(symptom_rows)
        denominator = infected if infected else 1
        return DashboardSnapshot(
            total_cases=total,
            infected_count=infected,
            infection_rate=(infected / total) if total else 0.0,
            gender_breakdown={g: n / denominator for g, n in sorted(gender_counts.items())},
            age_histogram=age_histogram,
            symptom_prevalence={
                s: symptom_counts.get(s, 0) / denominator for s in symptom_catalog
            },
            geo_points=[(lat, lon, bool(flag)) for lat, lon, flag in geo_rows],
            generated_at=_utc_now_iso(),
        )
