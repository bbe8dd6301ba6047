import math

import numpy as np
import pytest

from conftest import FORCED_TAU_C
from frpkit.fiberclass import (
    MEDIUM_SPAN,
    CriticalLengthInput,
    EmptyClassError,
    FiberClass,
    classify,
    critical_length,
    select_fiber,
)
from frpkit.fuzzysim import RequirementVector
from frpkit.matdb import FiberRecord

# frozen by tools/seed_oracle.py
SGLASS_PEI_LC = 26.080357142857142


def test_unit_cancellation_case():
    assert critical_length(CriticalLengthInput(sigma_f=2, d=1, tau_c=1)) == 1.0


def test_sglass_with_matrix_shear_strength(seed_polymers, seed_fibers):
    pei = seed_polymers[0]
    sglass = seed_fibers[0]
    l_c = critical_length(CriticalLengthInput(
        sigma_f=sglass.tensile_strength, d=sglass.diameter,
        tau_c=pei.shear_strength))
    assert l_c == pytest.approx(SGLASS_PEI_LC, abs=1e-12)
    assert l_c == pytest.approx(26.080357, abs=1e-5)
    # computed this way the 25 mm fiber comes out Short, not Long
    assert classify(sglass.length, l_c) is FiberClass.SHORT


def test_doubling_bond_strength_halves_critical_length():
    base = critical_length(CriticalLengthInput(sigma_f=3450, d=0.635, tau_c=42))
    halved = critical_length(CriticalLengthInput(sigma_f=3450, d=0.635, tau_c=84))
    assert halved == pytest.approx(base / 2, rel=1e-15)


def test_zero_bond_strength_is_invalid():
    with pytest.raises(ValueError, match="invalid matrix bond strength"):
        CriticalLengthInput(sigma_f=1, d=1, tau_c=0)


def test_critical_length_is_linear_in_each_argument():
    rng = np.random.default_rng(42)
    for _ in range(3):
        sigma, d, tau = rng.uniform(0.5, 5000.0, 3)
        base = critical_length(CriticalLengthInput(sigma_f=sigma, d=d, tau_c=tau))
        assert base == pytest.approx(sigma * d / (2 * tau), rel=1e-15)
        assert critical_length(CriticalLengthInput(sigma_f=3 * sigma, d=d, tau_c=tau)) \
            == pytest.approx(3 * base, rel=1e-12)
        assert critical_length(CriticalLengthInput(sigma_f=sigma, d=5 * d, tau_c=tau)) \
            == pytest.approx(5 * base, rel=1e-12)
        assert critical_length(CriticalLengthInput(sigma_f=sigma, d=d, tau_c=2 * tau)) \
            == pytest.approx(base / 2, rel=1e-12)


def test_class_boundaries():
    assert classify(1.0, 1.0) is FiberClass.SHORT          # l == l_c
    assert classify(15.0, 1.0) is FiberClass.MEDIUM        # l == 15 l_c
    eps_up = math.nextafter(15.0, math.inf)
    assert classify(eps_up, 1.0) is FiberClass.LONG


def test_known_classifications():
    assert classify(25.0, 0.25) is FiberClass.LONG
    assert classify(25.0, 26.08) is FiberClass.SHORT


def test_classify_rejects_non_positive_inputs():
    with pytest.raises(ValueError):
        classify(0.0, 1.0)
    with pytest.raises(ValueError):
        classify(1.0, 0.0)
    with pytest.raises(ValueError):
        classify(-3.0, 1.0)


def test_partition_monotonicity_homogeneity_over_random_pairs():
    rng = np.random.default_rng(777)
    order = {FiberClass.SHORT: 0, FiberClass.MEDIUM: 1, FiberClass.LONG: 2}
    for _ in range(10_000):
        length = float(rng.uniform(1e-3, 1e3))
        l_c = float(rng.uniform(1e-3, 1e3))
        cls = classify(length, l_c)
        # partition: the three predicates are exclusive and exhaustive
        hits = [length <= l_c,
                l_c < length <= MEDIUM_SPAN * l_c,
                length > MEDIUM_SPAN * l_c]
        assert hits.count(True) == 1
        assert [FiberClass.SHORT, FiberClass.MEDIUM, FiberClass.LONG][
            hits.index(True)] is cls
        # monotonicity: growing l_c never moves Short-ward -> Long-ward
        bigger = classify(length, l_c * 1.5)
        assert order[bigger] <= order[cls]
        # homogeneity: common scaling leaves the class alone
        k = float(rng.uniform(0.25, 4.0))
        assert classify(k * length, k * l_c) is cls or (
            # tolerate a 1-ulp flip when k*length lands exactly on a boundary
            abs(k * length - k * l_c) < 1e-9 * max(k * length, k * l_c)
            or abs(k * length - MEDIUM_SPAN * k * l_c)
            < 1e-9 * max(k * length, MEDIUM_SPAN * k * l_c))


def test_select_fiber_forced_long_returns_sglass(seed_polymers, seed_fibers,
                                                 fiber_requirement):
    pei = seed_polymers[0]
    cls, ranked = select_fiber(fiber_requirement, seed_fibers, pei,
                               tau_c_override=FORCED_TAU_C)
    assert cls is FiberClass.LONG
    assert ranked[0].record_name == "S-Glass"
    assert len(ranked) == len(seed_fibers)  # forced tau_c makes them all Long


def test_select_fiber_computed_path_uses_matrix_shear(seed_polymers, seed_fibers,
                                                      fiber_requirement):
    pei = seed_polymers[0]
    cls, ranked = select_fiber(fiber_requirement, seed_fibers, pei)
    # with the matrix's own shear strength the requirement is Short
    assert cls is FiberClass.SHORT
    assert ranked[0].record_name == "S-Glass"


def test_select_fiber_single_candidate_class(fiber_requirement):
    # one Long fiber among Shorts under tau_c=100:
    fibers = [
        FiberRecord("OnlyLong", 0.1, 0.3, 50.0, 1000, 70),   # l_c=0.5, 50 > 7.5
        FiberRecord("Shorty", 0.5, 0.3, 1.0, 1000, 70),      # l_c=2.5, 1 <= 2.5
    ]
    req = RequirementVector(schema="fiber", values=(0.1, 0.3, 50.0, 1000, 70))
    cls, ranked = select_fiber(req, fibers, None, tau_c_override=100.0)
    assert cls is FiberClass.LONG
    assert [r.record_name for r in ranked] == ["OnlyLong"]


def test_select_fiber_empty_class_error_names_class(fiber_requirement):
    # under the forced tau_c this fiber's l_c is ~0.057, so a 0.5 mm length
    # stays Medium while the requirement predicts Long
    fibers = [FiberRecord("Shorty", 0.5, 0.3, 0.5, 1000, 70)]
    with pytest.raises(EmptyClassError, match="Long") as err:
        select_fiber(fiber_requirement, fibers, None,
                     tau_c_override=FORCED_TAU_C)
    assert err.value.fiber_class is FiberClass.LONG


def test_select_fiber_needs_some_bond_strength(seed_fibers, fiber_requirement):
    with pytest.raises(ValueError, match="matrix record or a tau_c override"):
        select_fiber(fiber_requirement, seed_fibers, None)


def test_select_fiber_rejects_polymer_requirement(seed_polymers, seed_fibers,
                                                  polymer_requirement):
    with pytest.raises(ValueError, match="fiber-schema"):
        select_fiber(polymer_requirement, seed_fibers, seed_polymers[0])
