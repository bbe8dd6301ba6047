"""Typed storage and ingestion of matrix/fiber material property records.

Polymer records carry 17 property slots in a fixed order; fiber records
carry 5. The slot tables below are the single source of truth for that
order, for which slots are numeric vs linguistic, and for the external
column/key names used by CSV, the canonical DB file, and requirement
payloads. Units follow the source data convention (MPa, GPa, %, g/cm3,
degC, mm) and are annotations only; nothing is converted at ingest.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import TextIO, Union


class LinguisticTerm(Enum):
    """Qualitative property grade on a six-step ordinal scale."""

    NIL = "NIL"
    POOR = "Poor"
    FAIR = "Fair"
    GOOD = "Good"
    VERY_GOOD = "VeryGood"
    EXCELLENT = "Excellent"


# Accepted spellings, keyed by the lowercase token with spaces/hyphens/
# underscores stripped. "High" grades map onto the upper end of the same
# ordinal scale so that e.g. "Very High" and "Excellent" score alike.
_TERM_ALIASES = {
    "nil": LinguisticTerm.NIL,
    "none": LinguisticTerm.NIL,
    "poor": LinguisticTerm.POOR,
    "verylow": LinguisticTerm.POOR,
    "fair": LinguisticTerm.FAIR,
    "low": LinguisticTerm.FAIR,
    "good": LinguisticTerm.GOOD,
    "medium": LinguisticTerm.GOOD,
    "verygood": LinguisticTerm.VERY_GOOD,
    "high": LinguisticTerm.VERY_GOOD,
    "excellent": LinguisticTerm.EXCELLENT,
    "veryhigh": LinguisticTerm.EXCELLENT,
}


class UnknownTermError(ValueError):
    """Raised for tokens that match no linguistic grade or alias."""


def parse_term(token: str) -> LinguisticTerm:
    """Parse a linguistic token, case-insensitively and ignoring spacing.

    Unknown tokens raise UnknownTermError; they are never coerced.
    """
    key = "".join(token.split()).replace("-", "").replace("_", "").lower()
    try:
        return _TERM_ALIASES[key]
    except KeyError:
        valid = ", ".join(sorted({t.value for t in LinguisticTerm}))
        raise UnknownTermError(
            f"unknown linguistic token {token!r} (expected one of: {valid})"
        ) from None


NUMERIC = "numeric"
LINGUISTIC = "linguistic"


@dataclass(frozen=True)
class PropertySlot:
    """One property position in a record schema."""

    name: str        # external column / JSON key
    attr: str        # record attribute
    kind: str        # NUMERIC or LINGUISTIC
    unit: str | None = None


# Fixed slot order; feature vectors, CSV columns, and the DB file all
# depend on it, so it must only ever be consumed through these constants.
POLYMER_SLOTS: tuple[PropertySlot, ...] = (
    PropertySlot("tensile_strength_mpa", "tensile_strength", NUMERIC, "MPa"),
    PropertySlot("yield_strength_mpa", "yield_strength", NUMERIC, "MPa"),
    PropertySlot("elongation_pct", "elongation", NUMERIC, "%"),
    PropertySlot("shear_strength_mpa", "shear_strength", NUMERIC, "MPa"),
    PropertySlot("impact_strength", "impact_strength", LINGUISTIC),
    PropertySlot("modulus_gpa", "modulus_of_elasticity", NUMERIC, "GPa"),
    PropertySlot("creep_strength", "creep_strength", LINGUISTIC),
    PropertySlot("fatigue_strength", "fatigue_strength", LINGUISTIC),
    PropertySlot("density_g_cm3", "density", NUMERIC, "g/cm3"),
    PropertySlot("melting_point_c", "melting_point", NUMERIC, "degC"),
    PropertySlot("conductivity_heat", "conductivity_heat", LINGUISTIC),
    PropertySlot("conductivity_electricity", "conductivity_electricity", LINGUISTIC),
    PropertySlot("thermal_expansion", "thermal_expansion", LINGUISTIC),
    PropertySlot("water_absorption", "water_absorption", LINGUISTIC),
    PropertySlot("electrical_insulation", "electrical_insulation", LINGUISTIC),
    PropertySlot("chemical_resistance", "chemical_resistance", LINGUISTIC),
    PropertySlot("sheet_material", "sheet_material", LINGUISTIC),
)

FIBER_SLOTS: tuple[PropertySlot, ...] = (
    PropertySlot("diameter_mm", "diameter", NUMERIC, "mm"),
    PropertySlot("volume_fraction", "volume_fraction", NUMERIC),
    PropertySlot("length_mm", "length", NUMERIC, "mm"),
    PropertySlot("tensile_strength_mpa", "tensile_strength", NUMERIC, "MPa"),
    PropertySlot("modulus_gpa", "modulus_of_elasticity", NUMERIC, "GPa"),
)

SCHEMAS: dict[str, tuple[PropertySlot, ...]] = {
    "polymer": POLYMER_SLOTS,
    "fiber": FIBER_SLOTS,
}

DB_SCHEMA_VERSION = 1


def _check_numeric(value: float, slot: PropertySlot) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{slot.name} must be finite, got {value!r}")
    if value < 0:
        raise ValueError(f"{slot.name} must be non-negative, got {value!r}")


@dataclass(frozen=True)
class PolymerRecord:
    """One matrix material, 17 property slots in the fixed schema order.

    shear_strength doubles as the matrix shear yield strength consumed by
    the critical-length formula.
    """

    name: str
    tensile_strength: float
    yield_strength: float
    elongation: float
    shear_strength: float
    impact_strength: LinguisticTerm
    modulus_of_elasticity: float
    creep_strength: LinguisticTerm
    fatigue_strength: LinguisticTerm
    density: float
    melting_point: float
    conductivity_heat: LinguisticTerm
    conductivity_electricity: LinguisticTerm
    thermal_expansion: LinguisticTerm
    water_absorption: LinguisticTerm
    electrical_insulation: LinguisticTerm
    chemical_resistance: LinguisticTerm
    sheet_material: LinguisticTerm

    def __post_init__(self):
        if not self.name:
            raise ValueError("record name must be non-empty")
        for slot in POLYMER_SLOTS:
            value = getattr(self, slot.attr)
            if slot.kind == NUMERIC:
                _check_numeric(float(value), slot)
            elif not isinstance(value, LinguisticTerm):
                raise ValueError(f"{slot.name} must be a LinguisticTerm")


@dataclass(frozen=True)
class FiberRecord:
    """One reinforcement fiber, 5 property slots."""

    name: str
    diameter: float
    volume_fraction: float
    length: float
    tensile_strength: float
    modulus_of_elasticity: float

    def __post_init__(self):
        if not self.name:
            raise ValueError("record name must be non-empty")
        for slot in FIBER_SLOTS:
            _check_numeric(float(getattr(self, slot.attr)), slot)
        if self.diameter <= 0:
            raise ValueError("diameter_mm must be > 0")
        if self.length <= 0:
            raise ValueError("length_mm must be > 0")
        if self.tensile_strength <= 0:
            raise ValueError("tensile_strength_mpa must be > 0")
        if self.modulus_of_elasticity <= 0:
            raise ValueError("modulus_gpa must be > 0")
        if not 0 < self.volume_fraction <= 1:
            raise ValueError(
                f"volume_fraction must be in (0, 1], got {self.volume_fraction!r}")


@dataclass(frozen=True)
class SourceEntry:
    path: str
    rows: int


@dataclass(frozen=True)
class MaterialDb:
    """Immutable snapshot of both record collections.

    Safe to share across threads/handlers; mutate only by building a new
    value through ingest.
    """

    polymers: tuple[PolymerRecord, ...] = ()
    fibers: tuple[FiberRecord, ...] = ()
    source_manifest: tuple[SourceEntry, ...] = ()

    def __post_init__(self):
        for label, records in (("polymer", self.polymers), ("fiber", self.fibers)):
            seen = set()
            for rec in records:
                if rec.name in seen:
                    raise ValueError(f"duplicate {label} name {rec.name!r}")
                seen.add(rec.name)

    def polymer(self, name: str) -> PolymerRecord:
        for rec in self.polymers:
            if rec.name == name:
                return rec
        raise KeyError(f"no polymer named {name!r}")

    def fiber(self, name: str) -> FiberRecord:
        for rec in self.fibers:
            if rec.name == name:
                return rec
        raise KeyError(f"no fiber named {name!r}")


class IngestError(ValueError):
    """One or more source rows were rejected.

    Every reject is reported with its row number and column; nothing is
    dropped silently.
    """

    def __init__(self, rejects: list[tuple[int, str, str]]):
        self.rejects = rejects
        lines = [f"row {row}, column {col}: {msg}" for row, col, msg in rejects]
        super().__init__(
            f"{len(rejects)} row(s) rejected:\n  " + "\n  ".join(lines))


class SchemaError(ValueError):
    """A DB document or tabular header does not match the expected schema."""


_RecordCls = Union[type[PolymerRecord], type[FiberRecord]]


def _build_record(cls: _RecordCls, slots: tuple[PropertySlot, ...],
                  raw: dict, row_no: int,
                  rejects: list[tuple[int, str, str]]):
    """Validate one raw row (str or JSON values) into a record, or record
    the first per-column problem into ``rejects`` and return None."""
    kwargs = {}
    name = raw.get("name")
    if not isinstance(name, str) or not name.strip():
        rejects.append((row_no, "name", "missing or empty name"))
        return None
    kwargs["name"] = name.strip()
    ok = True
    for slot in slots:
        raw_value = raw.get(slot.name)
        if raw_value is None or (isinstance(raw_value, str) and not raw_value.strip()):
            rejects.append((row_no, slot.name, "missing value"))
            ok = False
            continue
        if slot.kind == NUMERIC:
            try:
                value = float(raw_value)
                _check_numeric(value, slot)
            except (TypeError, ValueError) as exc:
                rejects.append((row_no, slot.name, str(exc)))
                ok = False
                continue
            kwargs[slot.attr] = value
        else:
            if not isinstance(raw_value, str):
                rejects.append((row_no, slot.name,
                                f"expected a linguistic token, got {raw_value!r}"))
                ok = False
                continue
            try:
                kwargs[slot.attr] = parse_term(raw_value)
            except UnknownTermError as exc:
                rejects.append((row_no, slot.name, str(exc)))
                ok = False
                continue
    if not ok:
        return None
    try:
        return cls(**kwargs)
    except ValueError as exc:
        rejects.append((row_no, "record", str(exc)))
        return None


def _ingest(source: TextIO, fmt: str, cls: _RecordCls,
            slots: tuple[PropertySlot, ...]) -> list:
    import csv

    expected = ["name"] + [s.name for s in slots]
    rows: list[dict]
    if fmt == "csv":
        reader = csv.DictReader(source)
        if reader.fieldnames is None:
            raise SchemaError("empty source: missing header row")
        if list(reader.fieldnames) != expected:
            raise SchemaError(
                f"bad CSV header: expected {expected}, got {list(reader.fieldnames)}")
        rows = list(reader)
    elif fmt == "json":
        try:
            payload = json.load(source)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON source: {exc}") from exc
        if not isinstance(payload, list):
            raise SchemaError("JSON source must be an array of record objects")
        rows = payload
    else:
        raise ValueError(f"unsupported format {fmt!r} (expected 'csv' or 'json')")

    rejects: list[tuple[int, str, str]] = []
    records = []
    names: dict[str, int] = {}
    for row_no, raw in enumerate(rows, start=1):
        if not isinstance(raw, dict):
            rejects.append((row_no, "record", "row is not an object"))
            continue
        rec = _build_record(cls, slots, raw, row_no, rejects)
        if rec is None:
            continue
        if rec.name in names:
            rejects.append((row_no, "name",
                            f"duplicate name {rec.name!r} (first seen at row {names[rec.name]})"))
            continue
        names[rec.name] = row_no
        records.append(rec)
    if rejects:
        raise IngestError(rejects)
    return records


def ingest_polymers(source: TextIO, fmt: str = "csv") -> list[PolymerRecord]:
    """Parse matrix records from a CSV (with header) or JSON array stream.

    Row order is preserved. Any malformed row raises IngestError naming
    the row number and column of every problem found.
    """
    return _ingest(source, fmt, PolymerRecord, POLYMER_SLOTS)


def ingest_fibers(source: TextIO, fmt: str = "csv") -> list[FiberRecord]:
    """Parse fiber records; same contract as ingest_polymers."""
    return _ingest(source, fmt, FiberRecord, FIBER_SLOTS)


def record_to_dict(rec: PolymerRecord | FiberRecord) -> dict:
    """Serialize a record with schema-ordered external keys."""
    slots = POLYMER_SLOTS if isinstance(rec, PolymerRecord) else FIBER_SLOTS
    out: dict = {"name": rec.name}
    for slot in slots:
        value = getattr(rec, slot.attr)
        out[slot.name] = value.value if isinstance(value, LinguisticTerm) else value
    return out


def save_db(db: MaterialDb, path: str | Path) -> None:
    """Write the canonical single-document JSON DB file."""
    doc = {
        "schema_version": DB_SCHEMA_VERSION,
        "polymers": [record_to_dict(r) for r in db.polymers],
        "fibers": [record_to_dict(r) for r in db.fibers],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_db(path: str | Path) -> MaterialDb:
    """Load a DB file written by save_db; exact inverse on every record.

    A truncated or malformed document raises SchemaError and never yields
    a partial DB.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not a valid DB document: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: DB document must be a JSON object")
    version = doc.get("schema_version")
    if version != DB_SCHEMA_VERSION:
        raise SchemaError(
            f"{path}: schema_version {version!r} unsupported (expected {DB_SCHEMA_VERSION})")
    for key in ("polymers", "fibers"):
        if not isinstance(doc.get(key), list):
            raise SchemaError(f"{path}: missing or invalid {key!r} list")
    try:
        polymers = _ingest(io.StringIO(json.dumps(doc["polymers"])), "json",
                           PolymerRecord, POLYMER_SLOTS)
        fibers = _ingest(io.StringIO(json.dumps(doc["fibers"])), "json",
                         FiberRecord, FIBER_SLOTS)
    except IngestError as exc:
        raise SchemaError(f"{path}: invalid records: {exc}") from exc
    return MaterialDb(
        polymers=tuple(polymers),
        fibers=tuple(fibers),
        source_manifest=(SourceEntry(str(path), len(polymers) + len(fibers)),),
    )
