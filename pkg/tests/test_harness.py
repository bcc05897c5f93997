import numpy as np
import pytest

from drazin_tensor.harness import (
    LATTICE,
    PROFILES,
    DescriptorProfile,
    expected_classification,
    gen_descriptor,
    gen_matrix_with_poles,
    run_suite,
    run_trial,
    summarize,
    trial_seeds,
)
from drazin_tensor.spectral import Tag, classify_matrix, same_classification, validate


def test_generated_matrix_recovers_its_spec():
    spec = [(0, 3, 1), (0.5j, 2, 2), (-1, 1, 1)]
    a = gen_matrix_with_poles(spec, cond_cap=1e3, seed=4)
    assert a.shape == (8, 8)
    c = classify_matrix(a)
    assert same_classification(c, expected_classification(spec), c.tol)


def test_similarity_respects_cond_cap():
    from drazin_tensor.harness import random_similarity

    p = random_similarity(12, 1e3, np.random.default_rng(0))
    assert np.linalg.cond(p) <= 1e3 * (1 + 1e-10)


@pytest.mark.parametrize(
    "spec, cond",
    [([(0, 2, 1)], 0.5), ([(1, 65, 1)], 10.0), ([(1, 0, 1)], 10.0), ([], 10.0)],
)
def test_generator_errors(spec, cond):
    with pytest.raises(ValueError):
        gen_matrix_with_poles(spec, cond, 0)


def test_profiles():
    for seed in range(50):
        assert not gen_descriptor("all-pole", seed).sigma_dr()
        assert gen_descriptor("nilpotent", seed).nilpotent()
        assert gen_descriptor("quasinilpotent", seed).quasinilpotent_not_nilpotent()
        assert gen_descriptor("invertible", seed).invertible()
        assert gen_descriptor("zero-acc", seed).tag_of(0) is Tag.ACC
        for name in PROFILES:
            c = gen_descriptor(name, seed)
            assert validate(c) == []
            assert all(p.value == 0 or p.value in LATTICE for p in c.points)


def test_custom_profile_without_acc():
    prof = DescriptorProfile(allow_acc=False, zero_modes=("pole",))
    for seed in range(30):
        c = gen_descriptor(prof, seed)
        assert not c.acc_set() and c.tag_of(0) is Tag.POLE


def test_seeds_are_deterministic_and_distinct():
    assert trial_seeds(3, 5) == trial_seeds(3, 5)
    assert len(set(trial_seeds(3, 100))) == 100
    assert trial_seeds(3, 5) != trial_seeds(4, 5)


@pytest.mark.parametrize("suite", ["drazin", "matrix-tensor", "elementary", "symbolic"])
def test_suite_replay_and_determinism(suite):
    reports = run_suite(suite, 6, seed=9)
    assert all(r.passed for r in reports), [r.failures for r in reports]
    again = run_trial(suite, reports[3].trial_id, reports[3].seed)
    assert again.to_json() == reports[3].to_json()
    assert summarize(reports)["failed"] == 0


def test_parallel_matches_serial():
    serial = run_suite("matrix-tensor", 8, seed=2)
    parallel = run_suite("matrix-tensor", 8, seed=2, workers=2)
    assert [r.to_json() for r in serial] == [r.to_json() for r in parallel]
