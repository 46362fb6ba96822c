"""State covariates, regional dummies, and the analysis table.

Fourteen state-level predictors are joined onto each scored document by
its state code. Family-household percentage and population density enter
the model as natural logs; Census region enters as three dummies with
South as the omitted baseline.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .corpus import Document, STATE_CODES, SchemaError

__all__ = [
    "REGIONS",
    "REGION_OF_STATE",
    "StateCovariates",
    "AnalysisRow",
    "ANALYSIS_COLUMNS",
    "load_covariates",
    "region_dummies",
    "join",
    "descriptive_stats",
    "write_analysis_csv",
    "read_analysis_csv",
    "write_descriptives_csv",
]

REGIONS = ("Northeast", "Midwest", "South", "West")

REGION_OF_STATE = {
    # Northeast
    "CT": "Northeast", "ME": "Northeast", "MA": "Northeast", "NH": "Northeast",
    "RI": "Northeast", "VT": "Northeast", "NJ": "Northeast", "NY": "Northeast",
    "PA": "Northeast",
    # Midwest
    "IL": "Midwest", "IN": "Midwest", "MI": "Midwest", "OH": "Midwest",
    "WI": "Midwest", "IA": "Midwest", "KS": "Midwest", "MN": "Midwest",
    "MO": "Midwest", "NE": "Midwest", "ND": "Midwest", "SD": "Midwest",
    # South
    "DE": "South", "FL": "South", "GA": "South", "MD": "South", "NC": "South",
    "SC": "South", "VA": "South", "DC": "South", "WV": "South", "AL": "South",
    "KY": "South", "MS": "South", "TN": "South", "AR": "South", "LA": "South",
    "OK": "South", "TX": "South",
    # West
    "AZ": "West", "CO": "West", "ID": "West", "MT": "West", "NV": "West",
    "NM": "West", "UT": "West", "WY": "West", "AK": "West", "CA": "West",
    "HI": "West", "OR": "West", "WA": "West",
}

_PERCENT_FIELDS = ("FHH_pct", "EDU2", "EDU3", "AGE2", "WP", "OCH", "PWHI", "LF", "PR")


@dataclass(frozen=True)
class StateCovariates:
    state: str
    FHH_pct: float   # family households, percent
    AFS: float       # average family size, persons
    EDU2: float      # high school graduate / some college, percent
    EDU3: float      # associate degree, percent
    AGE2: float      # age under 18, percent
    WP: float        # white persons, percent
    OCH: float       # owner-occupied housing, percent
    PWHI: float      # under 65 without health insurance, percent
    LF: float        # age 16+ in labor force, percent
    POPDEN: float    # persons per square mile
    CASES: float     # cases per 1M people
    PR: float        # poverty rate, percent
    MHHI: float      # median household income, dollars
    GR: float        # median gross rent, dollars
    region: str

    def __post_init__(self):
        if self.state not in STATE_CODES:
            raise ValueError(f"unknown state code {self.state!r}")
        if self.region not in REGIONS:
            raise ValueError(f"unknown region {self.region!r}")
        for name in _PERCENT_FIELDS:
            v = getattr(self, name)
            if not 0.0 <= v <= 100.0:
                raise ValueError(f"{self.state}: {name}={v} outside [0, 100]")
        if not self.AFS > 0:
            raise ValueError(f"{self.state}: AFS must be positive, got {self.AFS}")
        if not self.POPDEN > 0:
            raise ValueError(f"{self.state}: POPDEN must be positive, got {self.POPDEN}")
        for name in ("CASES", "MHHI", "GR"):
            if getattr(self, name) < 0:
                raise ValueError(f"{self.state}: {name} must be nonnegative")


# Column order mirrors the fitted model's regressor order.
ANALYSIS_COLUMNS = (
    "sentiment", "TW", "NE", "MW", "WEST", "L_FHH", "AFS", "EDU2", "EDU3",
    "AGE2", "WP", "OCH", "PWHI", "LF", "L_POPDEN", "CASES", "PR", "MHHI", "GR",
)


@dataclass(frozen=True)
class AnalysisRow:
    sentiment: int
    TW: float
    NE: int
    MW: int
    WEST: int
    L_FHH: float
    AFS: float
    EDU2: float
    EDU3: float
    AGE2: float
    WP: float
    OCH: float
    PWHI: float
    LF: float
    L_POPDEN: float
    CASES: float
    PR: float
    MHHI: float
    GR: float

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, name) for name in ANALYSIS_COLUMNS)


_COVARIATE_COLUMNS = (
    "state", "FHH_pct", "AFS", "EDU2", "EDU3", "AGE2", "WP", "OCH", "PWHI",
    "LF", "POPDEN", "CASES", "PR", "MHHI", "GR", "region",
)


def load_covariates(path: str | Path) -> dict[str, StateCovariates]:
    """Read the state covariate CSV into a map keyed by state code."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    covars: dict[str, StateCovariates] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file, header row required")
        missing = set(_COVARIATE_COLUMNS) - set(reader.fieldnames)
        if missing:
            raise SchemaError(f"{path}: missing required column(s) {sorted(missing)}")
        for lineno, row in enumerate(reader, start=2):
            state = row["state"]
            if state in covars:
                raise SchemaError(f"{path}:{lineno}: duplicate state {state!r}")
            try:
                covars[state] = StateCovariates(
                    state=state,
                    FHH_pct=float(row["FHH_pct"]), AFS=float(row["AFS"]),
                    EDU2=float(row["EDU2"]), EDU3=float(row["EDU3"]),
                    AGE2=float(row["AGE2"]), WP=float(row["WP"]),
                    OCH=float(row["OCH"]), PWHI=float(row["PWHI"]),
                    LF=float(row["LF"]), POPDEN=float(row["POPDEN"]),
                    CASES=float(row["CASES"]), PR=float(row["PR"]),
                    MHHI=float(row["MHHI"]), GR=float(row["GR"]),
                    region=row["region"],
                )
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: {exc}") from exc
    return covars


def region_dummies(region: str) -> tuple[int, int, int]:
    """One-hot (NE, MW, WEST); South is the omitted baseline."""
    if region not in REGIONS:
        raise ValueError(f"unknown region {region!r}")
    return (int(region == "Northeast"), int(region == "Midwest"), int(region == "West"))


def join(
    scored: list[tuple[Document, int]],
    covars: dict[str, StateCovariates],
) -> list[AnalysisRow]:
    """Attach state covariates to each (document, binary sentiment) pair.

    Any document whose state has no covariate row is a hard error; the
    message lists every missing state so the gap is auditable.
    """
    missing = sorted({doc.state for doc, _ in scored if doc.state not in covars})
    if missing:
        raise SchemaError(f"no covariate row for state(s): {missing}")
    rows = []
    for doc, y in scored:
        c = covars[doc.state]
        ne, mw, west = region_dummies(c.region)
        rows.append(AnalysisRow(
            sentiment=int(y), TW=float(doc.text_width), NE=ne, MW=mw, WEST=west,
            L_FHH=math.log(c.FHH_pct), AFS=c.AFS, EDU2=c.EDU2, EDU3=c.EDU3,
            AGE2=c.AGE2, WP=c.WP, OCH=c.OCH, PWHI=c.PWHI, LF=c.LF,
            L_POPDEN=math.log(c.POPDEN), CASES=c.CASES, PR=c.PR,
            MHHI=c.MHHI, GR=c.GR,
        ))
    return rows


def descriptive_stats(rows: list[AnalysisRow]) -> dict[str, dict[str, float]]:
    """Per-variable mean, sample sd (n-1), min, max over the analysis table."""
    if len(rows) < 2:
        raise ValueError("descriptive statistics need at least 2 rows")
    data = np.array([r.as_tuple() for r in rows], dtype=float)
    stats = {}
    for j, name in enumerate(ANALYSIS_COLUMNS):
        col = data[:, j]
        stats[name] = {
            "mean": float(col.mean()),
            "sd": float(col.std(ddof=1)),
            "min": float(col.min()),
            "max": float(col.max()),
        }
    return stats


def write_analysis_csv(path: str | Path, rows: list[AnalysisRow]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(ANALYSIS_COLUMNS)
        for r in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in r.as_tuple()])


def read_analysis_csv(path: str | Path) -> list[AnalysisRow]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file, header row required")
        missing = set(ANALYSIS_COLUMNS) - set(reader.fieldnames)
        if missing:
            raise SchemaError(f"{path}: missing required column(s) {sorted(missing)}")
        field_types = {f.name: f.type for f in fields(AnalysisRow)}
        for row in reader:
            kwargs = {}
            for name in ANALYSIS_COLUMNS:
                kwargs[name] = int(row[name]) if field_types[name] == "int" else float(row[name])
            rows.append(AnalysisRow(**kwargs))
    return rows


def write_descriptives_csv(path: str | Path, stats: dict[str, dict[str, float]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["variable", "mean", "sd", "min", "max"])
        for name, s in stats.items():
            w.writerow([name, f"{s['mean']:.12g}", f"{s['sd']:.12g}",
                        f"{s['min']:.12g}", f"{s['max']:.12g}"])
