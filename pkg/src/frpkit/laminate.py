"""Rule-of-mixtures stiffness engine for N-plane laminates.

Two families of formulas live here. The single-ply forms work on volume
fractions:

    E_long = E_m * (1 - v_f) + E_f * v_f
    E_tr   = E_f * E_m / (v_m * E_f + v_f * E_m),  v_m = 1 - v_f

with orientation factors cos(theta) (longitudinal) and 1 - sin(theta)
(transverse). The plane-level forms used by the report tables weight by
phase *volumes* instead of fractions, so their values carry a mixed
GPa * cm3 scale; divide by the plane volume to read them as GPa:

    clme(i, theta) = cos(theta) * (E_m * (V_c - Vf_i) + E_f * Vf_i)
    ctme(i, theta) = (1 - sin(theta)) * E_f * E_m / (Vm_i * E_f + E_m * Vf_i)

Per-plane accounting: fiber phase volume Vf_i = V_c * vf_i, single-fiber
volume vsf_i = l * d * vf_i, fiber count fn_i = Vf_i / vsf_i (kept
fractional). Angles are degrees in [0, 90], converted at full double
precision.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO


class LaminateSpecError(ValueError):
    """A laminate spec document or value is invalid."""


def _require_positive(value: float, name: str) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise LaminateSpecError(f"{name} must be > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class PlaneSpec:
    """One plane: fiber volume fraction and fiber orientation (degrees)."""

    vf: float
    theta_deg: float

    def __post_init__(self):
        if not (math.isfinite(self.vf) and 0.0 <= self.vf <= 1.0):
            raise LaminateSpecError(f"vf must be in [0, 1], got {self.vf!r}")
        if not (math.isfinite(self.theta_deg) and 0.0 <= self.theta_deg <= 90.0):
            raise LaminateSpecError(
                f"theta_deg must be in [0, 90], got {self.theta_deg!r}")


@dataclass(frozen=True)
class FiberPhase:
    length: float       # same length unit as diameter
    diameter: float
    modulus_gpa: float

    def __post_init__(self):
        _require_positive(self.length, "fiber.length")
        _require_positive(self.diameter, "fiber.diameter")
        _require_positive(self.modulus_gpa, "fiber.modulus_gpa")


@dataclass(frozen=True)
class MatrixPhase:
    modulus_gpa: float

    def __post_init__(self):
        _require_positive(self.modulus_gpa, "matrix.modulus_gpa")


@dataclass(frozen=True)
class LaminateSpec:
    """Composite geometry: equal-volume planes, one fiber/matrix pair."""

    plane_volume_cm3: float
    planes: tuple[PlaneSpec, ...]
    fiber: FiberPhase
    matrix: MatrixPhase

    def __post_init__(self):
        _require_positive(self.plane_volume_cm3, "plane_volume_cm3")
        if not self.planes:
            raise LaminateSpecError("a laminate needs at least one plane")

    @property
    def n_planes(self) -> int:
        return len(self.planes)

    @property
    def total_volume_cm3(self) -> float:
        return self.n_planes * self.plane_volume_cm3


def laminate_spec_from_dict(payload: dict) -> LaminateSpec:
    """Parse the laminate JSON shape; errors name the offending field."""
    if not isinstance(payload, dict):
        raise LaminateSpecError("laminate spec must be a JSON object")
    try:
        fiber_raw = payload["fiber"]
        matrix_raw = payload["matrix"]
        planes_raw = payload["planes"]
        plane_volume = payload["plane_volume_cm3"]
    except KeyError as exc:
        raise LaminateSpecError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(planes_raw, list) or not planes_raw:
        raise LaminateSpecError("'planes' must be a non-empty array")
    try:
        fiber = FiberPhase(
            length=float(fiber_raw["length"]),
            diameter=float(fiber_raw["diameter"]),
            modulus_gpa=float(fiber_raw["modulus_gpa"]),
        )
        matrix = MatrixPhase(modulus_gpa=float(matrix_raw["modulus_gpa"]))
        planes = tuple(
            PlaneSpec(vf=float(p["vf"]), theta_deg=float(p.get("theta_deg", 0.0)))
            for p in planes_raw)
    except (KeyError, TypeError) as exc:
        raise LaminateSpecError(f"malformed laminate spec: {exc!r}") from exc
    return LaminateSpec(plane_volume_cm3=float(plane_volume), planes=planes,
                        fiber=fiber, matrix=matrix)


def laminate_spec_from_json(source: TextIO | str | Path) -> LaminateSpec:
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LaminateSpecError(f"invalid laminate JSON: {exc}") from exc
    return laminate_spec_from_dict(payload)


def laminate_spec_to_dict(spec: LaminateSpec) -> dict:
    return {
        "plane_volume_cm3": spec.plane_volume_cm3,
        "fiber": {"length": spec.fiber.length, "diameter": spec.fiber.diameter,
                  "modulus_gpa": spec.fiber.modulus_gpa},
        "matrix": {"modulus_gpa": spec.matrix.modulus_gpa},
        "planes": [{"vf": p.vf, "theta_deg": p.theta_deg} for p in spec.planes],
    }


# ---------------------------------------------------------------------------
# single-ply mixture forms (fraction-weighted, GPa in, GPa out)
# ---------------------------------------------------------------------------

def _check_fraction(v_f: float) -> float:
    if not (math.isfinite(v_f) and 0.0 <= v_f <= 1.0):
        raise ValueError(f"volume fraction must be in [0, 1], got {v_f!r}")
    return float(v_f)


def _check_angle(theta_deg: float) -> float:
    if not (math.isfinite(theta_deg) and 0.0 <= theta_deg <= 90.0):
        raise ValueError(f"theta_deg must be in [0, 90], got {theta_deg!r}")
    return float(theta_deg)


def longitudinal_modulus(e_m: float, e_f: float, v_f: float) -> float:
    """Volume-fraction-weighted arithmetic mean of the two moduli."""
    v_f = _check_fraction(v_f)
    return e_m * (1.0 - v_f) + e_f * v_f


def transverse_modulus(e_m: float, e_f: float, v_f: float) -> float:
    """Harmonic (inverse) mixture of the two moduli."""
    v_f = _check_fraction(v_f)
    den = (1.0 - v_f) * e_f + v_f * e_m
    if den == 0.0:
        raise ValueError("transverse modulus denominator is zero")
    return e_f * e_m / den


def oriented_longitudinal(e_m: float, e_f: float, v_f: float,
                          theta_deg: float) -> float:
    """Longitudinal mixture scaled by cos(theta)."""
    theta_deg = _check_angle(theta_deg)
    return math.cos(math.radians(theta_deg)) * longitudinal_modulus(e_m, e_f, v_f)


def oriented_transverse(e_m: float, e_f: float, v_f: float,
                        theta_deg: float) -> float:
    """Transverse mixture scaled by (1 - sin(theta))."""
    theta_deg = _check_angle(theta_deg)
    return (1.0 - math.sin(math.radians(theta_deg))) * transverse_modulus(e_m, e_f, v_f)


# ---------------------------------------------------------------------------
# plane-level accounting and moduli (volume-weighted, GPa * cm3 scale)
# ---------------------------------------------------------------------------

def plane_accounting(spec: LaminateSpec, i: int) -> tuple[float, float, float, float]:
    """Per-plane (vsf, fn, fiber phase volume, matrix phase volume).

    A vf of 0 short-circuits to zero fibers rather than dividing by zero.
    """
    plane = spec.planes[i]
    vc = spec.plane_volume_cm3
    vf_phase = vc * plane.vf
    vm_phase = vc - vf_phase
    vsf = spec.fiber.length * spec.fiber.diameter * plane.vf
    fn = vf_phase / vsf if vsf > 0 else 0.0
    return vsf, fn, vf_phase, vm_phase


def plane_clme(spec: LaminateSpec, i: int, theta_deg: float) -> float:
    """Volume-weighted longitudinal stiffness of plane i at theta degrees."""
    theta_deg = _check_angle(theta_deg)
    _, _, vf_phase, _ = plane_accounting(spec, i)
    vc = spec.plane_volume_cm3
    base = spec.matrix.modulus_gpa * (vc - vf_phase) + spec.fiber.modulus_gpa * vf_phase
    return math.cos(math.radians(theta_deg)) * base


def plane_ctme(spec: LaminateSpec, i: int, theta_deg: float) -> float:
    """Volume-weighted transverse stiffness of plane i at theta degrees."""
    theta_deg = _check_angle(theta_deg)
    _, _, vf_phase, vm_phase = plane_accounting(spec, i)
    e_f = spec.fiber.modulus_gpa
    e_m = spec.matrix.modulus_gpa
    den = vm_phase * e_f + e_m * vf_phase
    if den == 0.0:
        raise ValueError("transverse denominator is zero")
    return (1.0 - math.sin(math.radians(theta_deg))) * (e_f * e_m) / den


def mean_clme_fixed_theta(spec: LaminateSpec, theta_deg: float) -> float:
    """Mean of plane_clme over all planes with one shared orientation."""
    total = sum(plane_clme(spec, i, theta_deg) for i in range(spec.n_planes))
    return total / spec.n_planes


def mean_ctme_fixed_theta(spec: LaminateSpec, theta_deg: float) -> float:
    """Mean of plane_ctme over all planes with one shared orientation."""
    total = sum(plane_ctme(spec, i, theta_deg) for i in range(spec.n_planes))
    return total / spec.n_planes


def mean_clme_per_plane_theta(spec: LaminateSpec) -> float:
    """Mean of plane_clme with each plane at its own orientation."""
    total = sum(plane_clme(spec, i, spec.planes[i].theta_deg)
                for i in range(spec.n_planes))
    return total / spec.n_planes


def mean_ctme_per_plane_theta(spec: LaminateSpec) -> float:
    """Mean of plane_ctme with each plane at its own orientation."""
    total = sum(plane_ctme(spec, i, spec.planes[i].theta_deg)
                for i in range(spec.n_planes))
    return total / spec.n_planes


# ---------------------------------------------------------------------------
# full report and sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlaneResult:
    """One report row: the plane's spec, accounting, and both moduli."""

    plane: int        # 1-based row index
    theta_deg: float
    vf: float
    vsf: float
    fiber_count: float
    vf_phase: float
    vm_phase: float
    clme: float
    ctme: float

    @property
    def clme_gpa(self) -> float:
        """Volume-scale clme divided out to a fraction-weighted GPa value."""
        return self.clme / (self.vf_phase + self.vm_phase)


@dataclass(frozen=True)
class ColumnTotals:
    vf: float
    vsf: float
    fiber_count: float
    vf_phase: float
    vm_phase: float
    clme: float
    ctme: float


@dataclass(frozen=True)
class StiffnessReport:
    rows: tuple[PlaneResult, ...]
    sums: ColumnTotals
    means: ColumnTotals

    @property
    def mean_clme(self) -> float:
        return self.means.clme

    @property
    def mean_ctme(self) -> float:
        return self.means.ctme


_REPORT_COLUMNS = ("vf", "vsf", "fiber_count", "vf_phase", "vm_phase",
                   "clme", "ctme")


def analyze(spec: LaminateSpec) -> StiffnessReport:
    """Full per-plane report with column sums and means.

    Each row is evaluated at its own plane orientation, so the report
    means equal the per-plane-theta mean forms.
    """
    rows = []
    for i, plane in enumerate(spec.planes):
        vsf, fn, vf_phase, vm_phase = plane_accounting(spec, i)
        rows.append(PlaneResult(
            plane=i + 1,
            theta_deg=plane.theta_deg,
            vf=plane.vf,
            vsf=vsf,
            fiber_count=fn,
            vf_phase=vf_phase,
            vm_phase=vm_phase,
            clme=plane_clme(spec, i, plane.theta_deg),
            ctme=plane_ctme(spec, i, plane.theta_deg),
        ))
    n = len(rows)
    sums = ColumnTotals(**{c: sum(getattr(r, c) for r in rows)
                           for c in _REPORT_COLUMNS})
    means = ColumnTotals(**{c: getattr(sums, c) / n for c in _REPORT_COLUMNS})
    return StiffnessReport(rows=tuple(rows), sums=sums, means=means)


@dataclass(frozen=True)
class SweepPoint:
    theta_deg: float
    mean_clme: float
    mean_ctme: float


def sweep_orientations(spec: LaminateSpec,
                       thetas: Sequence[float]) -> list[SweepPoint]:
    """Evaluate the fixed-theta means at each requested orientation."""
    return [SweepPoint(theta_deg=float(t),
                       mean_clme=mean_clme_fixed_theta(spec, t),
                       mean_ctme=mean_ctme_fixed_theta(spec, t))
            for t in thetas]


def report_to_csv(report: StiffnessReport) -> str:
    """Report CSV with one row per plane plus trailing SUM and MEAN rows."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["plane", "theta_deg", "vf", "vsf", "fiber_count",
                     "vf_phase", "vm_phase", "clme", "ctme"])
    for r in report.rows:
        writer.writerow([r.plane, repr(r.theta_deg)]
                        + [repr(getattr(r, c)) for c in _REPORT_COLUMNS])
    writer.writerow(["SUM", ""] + [repr(getattr(report.sums, c))
                                   for c in _REPORT_COLUMNS])
    writer.writerow(["MEAN", ""] + [repr(getattr(report.means, c))
                                    for c in _REPORT_COLUMNS])
    return buf.getvalue()


def sweep_to_csv(points: Sequence[SweepPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theta_deg", "mean_clme", "mean_ctme"])
    for p in points:
        writer.writerow([repr(p.theta_deg), repr(p.mean_clme), repr(p.mean_ctme)])
    return buf.getvalue()


def report_to_dict(report: StiffnessReport) -> dict:
    """JSON-friendly report shape used by the service and the CLI."""
    def row(r: PlaneResult) -> dict:
        return {"plane": r.plane, "theta_deg": r.theta_deg, "vf": r.vf,
                "vsf": r.vsf, "fiber_count": r.fiber_count,
                "vf_phase": r.vf_phase, "vm_phase": r.vm_phase,
                "clme": r.clme, "ctme": r.ctme}

    def totals(t: ColumnTotals) -> dict:
        return {c: getattr(t, c) for c in _REPORT_COLUMNS}

    return {"rows": [row(r) for r in report.rows],
            "sums": totals(report.sums),
            "means": totals(report.means),
            "mean_clme": report.mean_clme,
            "mean_ctme": report.mean_ctme}
