import math

import numpy as np
import pytest

from frpkit.fuzzysim import (
    FeatureVector,
    RequirementError,
    RequirementVector,
    SimilarityError,
    cosine_amplitude,
    linguistic_to_crisp,
    rank_by_similarity,
    requirement_from_dict,
    select_best,
    to_feature_vector,
)
from frpkit.matdb import FiberRecord, LinguisticTerm

# frozen by tools/seed_oracle.py
PEI_STRENGTH = 0.9999946699088472


def vec(*values, schema="raw"):
    return FeatureVector(values=tuple(float(v) for v in values), schema_id=schema)


def brute_force_rank(query_values, records):
    """Independent re-implementation: score, then sort by (-r, name).

    Applies the same documented [0, 1] clamp as the engine so exact
    collinearity scores exactly 1.0 on both sides.
    """
    scored = []
    for name, values in records:
        num = abs(sum(a * b for a, b in zip(query_values, values)))
        den = math.sqrt(sum(a * a for a in query_values)
                        * sum(b * b for b in values))
        scored.append((min(1.0, num / den), name))
    scored.sort(key=lambda t: (-t[0], t[1]))
    return scored


def test_crisp_anchor_values():
    assert linguistic_to_crisp(LinguisticTerm.NIL) == 0.0
    assert linguistic_to_crisp(LinguisticTerm.POOR) == 1.0
    assert linguistic_to_crisp(LinguisticTerm.FAIR) == 2.0
    assert linguistic_to_crisp(LinguisticTerm.GOOD) == 3.0
    assert linguistic_to_crisp(LinguisticTerm.VERY_GOOD) == 4.0
    assert linguistic_to_crisp(LinguisticTerm.EXCELLENT) == 5.0


def test_selected_matrix_record_vectorizes_to_known_17_vector(seed_polymers):
    fv = to_feature_vector(seed_polymers[0])
    assert fv.schema_id == "polymer"
    assert fv.values == (55, 23, 10, 42, 2, 98.99, 1, 1, 0.08, 750,
                         1, 0, 5, 1, 3, 3, 3)


def test_fiber_record_vectorizes_in_slot_order(seed_fibers):
    fv = to_feature_vector(seed_fibers[0])
    assert fv.values == (0.635, 0.333, 25.0, 3450, 68.69)


def test_requirement_vectorizes_with_crisp_slots(polymer_requirement):
    fv = to_feature_vector(polymer_requirement)
    assert fv.values == (57, 23, 9.5, 43, 2, 100, 1, 1, 0.08, 750,
                         1, 0, 5, 1, 3, 3, 3)


def test_all_zero_requirement_gives_zero_vector():
    payload = {"schema": "fiber", "values": {
        "diameter_mm": 0, "volume_fraction": 0, "length_mm": 0,
        "tensile_strength_mpa": 0, "modulus_gpa": 0}}
    # record invariants forbid zero fibers, but a requirement may ask for it
    req = requirement_from_dict(payload)
    assert to_feature_vector(req).values == (0, 0, 0, 0, 0)


def test_requirement_rejects_missing_slot():
    payload = {"schema": "fiber", "values": {"diameter_mm": 1}}
    with pytest.raises(RequirementError) as err:
        requirement_from_dict(payload)
    assert err.value.slot == "volume_fraction"


def test_requirement_rejects_unknown_slot():
    payload = {"schema": "fiber", "values": {
        "diameter_mm": 1, "volume_fraction": 0.5, "length_mm": 1,
        "tensile_strength_mpa": 1, "modulus_gpa": 1, "sparkle": 9}}
    with pytest.raises(RequirementError) as err:
        requirement_from_dict(payload)
    assert err.value.slot == "sparkle"


def test_requirement_rejects_wrongly_typed_slot():
    payload = {"schema": "polymer", "values": {}}
    with pytest.raises(RequirementError):
        requirement_from_dict(payload)


def test_cosine_identical_vectors_is_unity():
    assert cosine_amplitude(vec(3, 1, 2), vec(3, 1, 2)) == 1.0


def test_cosine_orthogonal_vectors_is_zero():
    assert cosine_amplitude(vec(1, 0), vec(0, 1)) == 0.0


def test_cosine_hand_computed_value():
    assert cosine_amplitude(vec(3, 4), vec(4, 3)) == pytest.approx(0.96, abs=1e-12)


def test_cosine_collinear_scaling_is_unity():
    assert cosine_amplitude(vec(1, 2, 2), vec(2, 4, 4)) == pytest.approx(1.0, abs=1e-12)


def test_cosine_zero_vector_is_undefined():
    with pytest.raises(SimilarityError):
        cosine_amplitude(vec(0, 0), vec(1, 1))
    with pytest.raises(SimilarityError):
        cosine_amplitude(vec(1, 1), vec(0, 0))


def test_cosine_schema_mismatch_rejected():
    with pytest.raises(SimilarityError):
        cosine_amplitude(vec(1, 2, schema="a"), vec(1, 2, schema="b"))


def test_feature_vector_rejects_negative_or_nonfinite():
    with pytest.raises(ValueError):
        FeatureVector(values=(1.0, -0.5), schema_id="raw")
    with pytest.raises(ValueError):
        FeatureVector(values=(float("nan"),), schema_id="raw")
    with pytest.raises(ValueError):
        FeatureVector(values=(1.0,) * 16, schema_id="polymer")


def test_cosine_properties_over_random_pairs():
    rng = np.random.default_rng(20240613)
    for _ in range(10_000):
        m = rng.integers(2, 8)
        y = rng.uniform(0.0, 100.0, m)
        x = rng.uniform(0.0, 100.0, m)
        if not y.any() or not x.any():
            continue
        fy, fx = vec(*y), vec(*x)
        r = cosine_amplitude(fy, fx)
        assert 0.0 <= r <= 1.0
        assert cosine_amplitude(fx, fy) == pytest.approx(r, abs=1e-12)
        assert cosine_amplitude(fy, fy) == pytest.approx(1.0, abs=1e-12)


def test_ranking_invariant_under_query_scaling(seed_polymers, polymer_requirement):
    base = rank_by_similarity(polymer_requirement, seed_polymers)
    for alpha in (0.001, 0.37, 41.0):
        # scale every slot, crisp ones included, by building a raw vector
        crisp = to_feature_vector(polymer_requirement).values
        scaled = RequirementVector(
            schema="polymer",
            values=tuple(c * alpha for c in crisp))
        ranked = rank_by_similarity(scaled, seed_polymers)
        assert [r.record_name for r in ranked] == [r.record_name for r in base]
        for a, b in zip(ranked, base):
            assert a.strength == pytest.approx(b.strength, abs=1e-12)


def test_rank_matches_brute_force_oracle_on_small_dbs():
    rng = np.random.default_rng(987654321)
    for n_records in range(1, 11):
        for dims in range(1, 6):
            records = []
            for i in range(n_records):
                values = tuple(rng.uniform(0.1, 50.0, dims))
                records.append((f"rec{i:02d}", values))
            query = tuple(rng.uniform(0.1, 50.0, dims))
            expected = brute_force_rank(query, records)

            fibers = {name: vec(*values) for name, values in records}
            fq = vec(*query)
            got = sorted(((cosine_amplitude(fq, fv), name)
                          for name, fv in fibers.items()),
                         key=lambda t: (-t[0], t[1]))
            for (er, en), (gr, gn) in zip(expected, got):
                assert en == gn
                assert gr == pytest.approx(er, abs=1e-12)


def test_rank_by_similarity_full_pipeline_matches_oracle(seed_fibers, fiber_requirement):
    records = [(f.name, to_feature_vector(f).values) for f in seed_fibers]
    query = to_feature_vector(fiber_requirement).values
    expected = brute_force_rank(query, records)
    got = rank_by_similarity(fiber_requirement, seed_fibers)
    assert [g.record_name for g in got] == [n for _, n in expected]
    for g, (er, _) in zip(got, expected):
        assert g.strength == pytest.approx(er, abs=1e-12)
    assert [g.rank for g in got] == list(range(1, len(seed_fibers) + 1))


def test_seed_db_query_selects_polyetherimide(seed_polymers, polymer_requirement):
    ranked = rank_by_similarity(polymer_requirement, seed_polymers)
    assert ranked[0].record_name == "Polyetherimide"
    assert ranked[0].strength == PEI_STRENGTH
    winner, strength = select_best(polymer_requirement, seed_polymers)
    assert winner.name == "Polyetherimide"
    assert strength == PEI_STRENGTH


def test_self_match_ranks_first(seed_fibers):
    target = seed_fibers[2]
    req = RequirementVector(
        schema="fiber", values=to_feature_vector(target).values)
    ranked = rank_by_similarity(req, seed_fibers)
    assert ranked[0].record_name == target.name
    assert ranked[0].strength == pytest.approx(1.0, abs=1e-12)


def test_ties_break_by_ascending_name():
    twin_a = FiberRecord("Aard", 0.5, 0.3, 10, 1000, 70)
    twin_b = FiberRecord("Zebra", 0.5, 0.3, 10, 1000, 70)
    req = RequirementVector(schema="fiber", values=(0.5, 0.3, 10, 1000, 70))
    ranked = rank_by_similarity(req, [twin_b, twin_a])
    assert [r.record_name for r in ranked] == ["Aard", "Zebra"]
    assert ranked[0].strength == ranked[1].strength


def test_empty_collection_is_an_error(polymer_requirement):
    with pytest.raises(ValueError, match="empty"):
        rank_by_similarity(polymer_requirement, [])


def test_singleton_db_always_wins(seed_fibers, fiber_requirement):
    winner, _ = select_best(fiber_requirement, seed_fibers[3:4])
    assert winner.name == seed_fibers[3].name


def test_normalized_mode_still_ranks(seed_polymers, polymer_requirement):
    ranked = rank_by_similarity(polymer_requirement, seed_polymers,
                                normalize=True)
    assert len(ranked) == len(seed_polymers)
    assert [r.rank for r in ranked] == list(range(1, len(seed_polymers) + 1))
    assert all(0.0 <= r.strength <= 1.0 for r in ranked)
