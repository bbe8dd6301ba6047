"""Crisp mapping, feature vectors, and cosine-amplitude retrieval.

A record (or a designer requirement) becomes a non-negative feature
vector in the fixed schema order: numeric slots verbatim, linguistic
slots through the ordinal crisp scale. Relation strength between two
vectors is the cosine-amplitude value

    r = |sum(y_k * x_k)| / sqrt(sum(y_k^2) * sum(x_k^2))

which lies in [0, 1] for non-negative vectors; retrieval ranks a whole
collection by r and picks the maximum.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from .matdb import (
    NUMERIC,
    SCHEMAS,
    FiberRecord,
    LinguisticTerm,
    PolymerRecord,
    parse_term,
)

# Crisp anchors of the six-step ordinal scale.
CRISP_SCORES: dict[LinguisticTerm, float] = {
    LinguisticTerm.NIL: 0.0,
    LinguisticTerm.POOR: 1.0,
    LinguisticTerm.FAIR: 2.0,
    LinguisticTerm.GOOD: 3.0,
    LinguisticTerm.VERY_GOOD: 4.0,
    LinguisticTerm.EXCELLENT: 5.0,
}


def linguistic_to_crisp(term: LinguisticTerm) -> float:
    """Map a linguistic grade to its crisp score (NIL=0 ... Excellent=5)."""
    return CRISP_SCORES[term]


class SimilarityError(ValueError):
    """Similarity is undefined for the given inputs (e.g. a zero vector)."""


@dataclass(frozen=True)
class FeatureVector:
    """Ordered non-negative values bound to a schema id.

    For the known schemas ("polymer", "fiber") the length is pinned to the
    slot count; other ids are allowed for ad-hoc vectors and skip the
    length check.
    """

    values: tuple[float, ...]
    schema_id: str

    def __post_init__(self):
        if self.schema_id in SCHEMAS and len(self.values) != len(SCHEMAS[self.schema_id]):
            raise ValueError(
                f"{self.schema_id} vector must have {len(SCHEMAS[self.schema_id])} "
                f"entries, got {len(self.values)}")
        for v in self.values:
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"feature values must be finite and >= 0, got {v!r}")


@dataclass(frozen=True)
class RequirementVector:
    """A designer's target property list in one of the record schemas.

    values holds floats for numeric slots and LinguisticTerm for
    linguistic slots, in the schema slot order.
    """

    schema: str
    values: tuple[float | LinguisticTerm, ...]

    def __post_init__(self):
        if self.schema not in SCHEMAS:
            raise ValueError(f"unknown schema {self.schema!r}")
        if len(self.values) != len(SCHEMAS[self.schema]):
            raise ValueError(
                f"{self.schema} requirement needs {len(SCHEMAS[self.schema])} values")

    def slot_value(self, slot_name: str) -> float | LinguisticTerm:
        for slot, value in zip(SCHEMAS[self.schema], self.values):
            if slot.name == slot_name:
                return value
        raise KeyError(f"no slot named {slot_name!r} in schema {self.schema!r}")


class RequirementError(ValueError):
    """A requirement payload is malformed; .slot names the offender."""

    def __init__(self, message: str, slot: str | None = None):
        super().__init__(message)
        self.slot = slot


def requirement_from_dict(payload: dict) -> RequirementVector:
    """Parse the requirement JSON shape:

        {"schema": "polymer"|"fiber", "values": {"<slot>": number|"<term>"}}

    Every slot of the schema must be present; unknown slots, missing
    slots, and wrongly-typed values are rejected with the slot named.
    """
    if not isinstance(payload, dict):
        raise RequirementError("requirement must be a JSON object")
    schema = payload.get("schema")
    if schema not in SCHEMAS:
        raise RequirementError(
            f"schema must be one of {sorted(SCHEMAS)}, got {schema!r}", slot="schema")
    values = payload.get("values")
    if not isinstance(values, dict):
        raise RequirementError("'values' must be an object", slot="values")
    slots = SCHEMAS[schema]
    known = {s.name for s in slots}
    for key in values:
        if key not in known:
            raise RequirementError(f"unknown slot {key!r}", slot=key)
    parsed: list[float | LinguisticTerm] = []
    for slot in slots:
        if slot.name not in values:
            raise RequirementError(f"missing slot {slot.name!r}", slot=slot.name)
        raw = values[slot.name]
        if slot.kind == NUMERIC:
            if isinstance(raw, bool) or not isinstance(raw, (int, float)):
                raise RequirementError(
                    f"slot {slot.name!r} expects a number, got {raw!r}", slot=slot.name)
            value = float(raw)
            if not math.isfinite(value) or value < 0:
                raise RequirementError(
                    f"slot {slot.name!r} must be finite and >= 0", slot=slot.name)
            parsed.append(value)
        else:
            if not isinstance(raw, str):
                raise RequirementError(
                    f"slot {slot.name!r} expects a linguistic token, got {raw!r}",
                    slot=slot.name)
            try:
                parsed.append(parse_term(raw))
            except ValueError as exc:
                raise RequirementError(
                    f"slot {slot.name!r}: {exc}", slot=slot.name) from exc
    return RequirementVector(schema=schema, values=tuple(parsed))


def requirement_from_json(source: TextIO | str) -> RequirementVector:
    text = source if isinstance(source, str) else source.read()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RequirementError(f"invalid requirement JSON: {exc}") from exc
    return requirement_from_dict(payload)


def to_feature_vector(
    item: PolymerRecord | FiberRecord | RequirementVector,
) -> FeatureVector:
    """Build the schema-ordered feature vector for a record or requirement."""
    if isinstance(item, RequirementVector):
        schema_id, raw = item.schema, item.values
    elif isinstance(item, PolymerRecord):
        schema_id = "polymer"
        raw = tuple(getattr(item, s.attr) for s in SCHEMAS["polymer"])
    elif isinstance(item, FiberRecord):
        schema_id = "fiber"
        raw = tuple(getattr(item, s.attr) for s in SCHEMAS["fiber"])
    else:
        raise TypeError(f"cannot vectorize {type(item).__name__}")
    values = tuple(
        linguistic_to_crisp(v) if isinstance(v, LinguisticTerm) else float(v)
        for v in raw)
    return FeatureVector(values=values, schema_id=schema_id)


def cosine_amplitude(y: FeatureVector, x: FeatureVector) -> float:
    """Relation strength r in [0, 1] between two same-schema vectors.

    Undefined (SimilarityError) if either vector is all zeros.
    """
    if y.schema_id != x.schema_id:
        raise SimilarityError(
            f"schema mismatch: {y.schema_id!r} vs {x.schema_id!r}")
    if len(y.values) != len(x.values):
        raise SimilarityError("vectors differ in length")
    ya = np.asarray(y.values, dtype=float)
    xa = np.asarray(x.values, dtype=float)
    y2 = float(np.dot(ya, ya))
    x2 = float(np.dot(xa, xa))
    if y2 == 0.0 or x2 == 0.0:
        raise SimilarityError("similarity undefined for a zero vector")
    r = abs(float(np.dot(ya, xa))) / math.sqrt(y2 * x2)
    # guard against 1-ulp overshoot of the Cauchy-Schwarz bound
    return min(1.0, r)


@dataclass(frozen=True)
class SimilarityResult:
    record_name: str
    strength: float
    rank: int


def _minmax_normalized(vectors: list[FeatureVector]) -> list[FeatureVector]:
    """Rescale each dimension to [0, 1] over the given vectors.

    Constant dimensions are zeroed out (they carry no contrast).
    """
    arr = np.asarray([v.values for v in vectors], dtype=float)
    lo = arr.min(axis=0)
    hi = arr.max(axis=0)
    span = hi - lo
    scaled = np.where(span > 0, (arr - lo) / np.where(span > 0, span, 1.0), 0.0)
    return [FeatureVector(values=tuple(row), schema_id=v.schema_id)
            for row, v in zip(scaled, vectors)]


def rank_by_similarity(
    y: RequirementVector,
    records: Sequence[PolymerRecord | FiberRecord],
    normalize: bool = False,
) -> list[SimilarityResult]:
    """Score every record against the requirement and rank by strength.

    Sorted by strength descending, ties broken by ascending record name.
    With normalize=True each dimension is min-max scaled over the query
    plus all records first (practical mode for wildly mixed magnitudes;
    off by default). In that mode a vector that collapses to zero scores
    0 instead of raising.
    """
    if not records:
        raise ValueError("cannot rank an empty record collection")
    query = to_feature_vector(y)
    vectors = [to_feature_vector(r) for r in records]
    if normalize:
        scaled = _minmax_normalized([query] + vectors)
        query, vectors = scaled[0], scaled[1:]
        strengths = []
        for v in vectors:
            try:
                strengths.append(cosine_amplitude(query, v))
            except SimilarityError:
                strengths.append(0.0)
    else:
        strengths = [cosine_amplitude(query, v) for v in vectors]
    order = sorted(zip(strengths, (r.name for r in records)),
                   key=lambda t: (-t[0], t[1]))
    return [SimilarityResult(record_name=name, strength=strength, rank=i)
            for i, (strength, name) in enumerate(order, start=1)]


def select_best(
    y: RequirementVector,
    records: Sequence[PolymerRecord | FiberRecord],
    normalize: bool = False,
) -> tuple[PolymerRecord | FiberRecord, float]:
    """Return the record with the maximum relation strength."""
    best = rank_by_similarity(y, records, normalize=normalize)[0]
    winner = next(r for r in records if r.name == best.record_name)
    return winner, best.strength
