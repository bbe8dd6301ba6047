"""Critical fiber length, length-class rules, and in-class fiber selection.

The critical length for load transfer is

    l_c = sigma_f * d / (2 * tau_c)   [mm, with both strengths in MPa]

and a fiber of length l is classified against its own l_c:

    Short   if l <= l_c
    Medium  if l_c < l <= 15 * l_c
    Long    if l > 15 * l_c

Comparisons are exact; the three rules partition every positive (l, l_c)
pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .fuzzysim import RequirementVector, SimilarityResult, rank_by_similarity
from .matdb import FiberRecord, PolymerRecord

# Upper bound of the Medium band, in multiples of the critical length.
MEDIUM_SPAN = 15.0


class FiberClass(Enum):
    SHORT = "Short"
    MEDIUM = "Medium"
    LONG = "Long"


@dataclass(frozen=True)
class CriticalLengthInput:
    """Inputs for the critical-length formula; all strictly positive.

    tau_c is the fiber-matrix bond strength, normally sourced from the
    selected matrix record's shear strength.
    """

    sigma_f: float  # fiber tensile strength, MPa
    d: float        # fiber diameter, mm
    tau_c: float    # matrix shear yield strength, MPa

    def __post_init__(self):
        if not (math.isfinite(self.sigma_f) and self.sigma_f > 0):
            raise ValueError(f"sigma_f must be > 0, got {self.sigma_f!r}")
        if not (math.isfinite(self.d) and self.d > 0):
            raise ValueError(f"d must be > 0, got {self.d!r}")
        if not (math.isfinite(self.tau_c) and self.tau_c > 0):
            raise ValueError(
                f"invalid matrix bond strength: tau_c must be > 0, got {self.tau_c!r}")


def critical_length(inp: CriticalLengthInput) -> float:
    """Critical fiber length in mm."""
    return inp.sigma_f * inp.d / (2.0 * inp.tau_c)


def classify(length: float, l_c: float) -> FiberClass:
    """Classify a fiber length against a critical length."""
    if not (math.isfinite(length) and length > 0):
        raise ValueError(f"fiber length must be > 0, got {length!r}")
    if not (math.isfinite(l_c) and l_c > 0):
        raise ValueError(f"critical length must be > 0, got {l_c!r}")
    if length <= l_c:
        return FiberClass.SHORT
    if length <= MEDIUM_SPAN * l_c:
        return FiberClass.MEDIUM
    return FiberClass.LONG


class EmptyClassError(LookupError):
    """No candidate fiber falls in the predicted length class."""

    def __init__(self, fiber_class: FiberClass):
        self.fiber_class = fiber_class
        super().__init__(f"no fiber in the predicted {fiber_class.value} class")


def select_fiber(
    requirements: RequirementVector,
    fibers: Sequence[FiberRecord],
    matrix: PolymerRecord | None,
    tau_c_override: float | None = None,
    normalize: bool = False,
) -> tuple[FiberClass, list[SimilarityResult]]:
    """Pick compatible fibers for a requirement under its length class.

    The requirement's own (tensile strength, diameter, length) predict the
    target class; each candidate fiber is classified by its own critical
    length against the same tau_c, the candidates outside the predicted
    class are dropped, and the survivors are ranked by cosine-amplitude
    similarity.

    tau_c comes from the matrix record's shear strength unless overridden;
    with an override the matrix may be omitted.
    """
    if requirements.schema != "fiber":
        raise ValueError("fiber selection needs a fiber-schema requirement")
    if not fibers:
        raise ValueError("cannot select from an empty fiber collection")
    if tau_c_override is not None:
        tau_c = tau_c_override
    elif matrix is not None:
        tau_c = matrix.shear_strength
    else:
        raise ValueError("fiber selection needs a matrix record or a tau_c override")

    req_lc = critical_length(CriticalLengthInput(
        sigma_f=float(requirements.slot_value("tensile_strength_mpa")),
        d=float(requirements.slot_value("diameter_mm")),
        tau_c=tau_c,
    ))
    target = classify(float(requirements.slot_value("length_mm")), req_lc)

    in_class = []
    for fiber in fibers:
        lc = critical_length(CriticalLengthInput(
            sigma_f=fiber.tensile_strength, d=fiber.diameter, tau_c=tau_c))
        if classify(fiber.length, lc) is target:
            in_class.append(fiber)
    if not in_class:
        raise EmptyClassError(target)
    return target, rank_by_similarity(requirements, in_class, normalize=normalize)
