import numpy as np
import pytest

from conftest import direct_sum, jordan
from drazin_tensor.harness import gen_matrix_with_poles, random_similarity
from drazin_tensor.spectral import (
    DescriptorError,
    SpectralClassification,
    SpectralPoint,
    Tag,
    classification,
    classify_matrix,
    from_json,
    is_descriptor_json,
    require_valid,
    same_classification,
    sigma_dr,
    to_json,
    validate,
    warnings,
)


def test_sets_and_predicates():
    c = classification((0, "pole", 2), (1, "acc"), (2j, "iso_non_pole"), (-1, "pole", 1))
    assert c.spectrum() == {0, 1, 2j, -1}
    assert c.acc_set() == {1}
    assert c.pi_set() == {0, -1}
    assert c.i_set() == {2j}
    assert sigma_dr(c) == {1, 2j}
    assert c.order_of(0) == 2
    assert not c.invertible()
    assert not c.nilpotent()


def test_degenerate_profiles():
    nil = classification((0, "pole", 3))
    qn = classification((0, "iso_non_pole"))
    acc0 = classification((0, "acc"))
    assert nil.nilpotent() and nil.spectrum_is_zero() and not nil.sigma_dr()
    assert qn.quasinilpotent_not_nilpotent() and qn.sigma_dr() == {0}
    # an accumulation point at 0 carries unlisted nearby points
    assert not acc0.spectrum_is_zero()
    assert classification((1, "pole")).invertible()


@pytest.mark.parametrize(
    "points, invariant",
    [
        ((), "nonempty spectrum"),
        (((1, "pole"), (1, "acc")), "disjointness"),
        (((1, "acc", 2),), "order only on poles"),
        (((1, "pole", 0),), "positive order"),
        (((complex("inf"), "pole"),), "finite values"),
    ],
)
def test_validate_reports_each_invariant(points, invariant):
    c = classification(*points)
    assert invariant in [v.invariant for v in validate(c)]
    with pytest.raises(DescriptorError) as exc:
        require_valid(c)
    assert invariant in [v.invariant for v in exc.value.violations]


def test_nonzero_acc_is_a_warning_not_a_violation():
    c = classification((1, "acc"), (0, "pole"))
    assert validate(c) == []
    assert [w.invariant for w in warnings(c)] == ["acc within {0}"]
    assert warnings(classification((0, "acc"))) == []


def test_json_round_trip():
    c = classification((0.5 - 1j, "pole", 2), (0, "acc"), (-1, "iso_non_pole"))
    obj = to_json(c)
    assert is_descriptor_json(obj)
    assert obj["points"][0] == {"value": [-1.0, 0.0], "tag": "iso_non_pole", "order": None}
    assert same_classification(from_json(obj), c)


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {"points": 3},
        {"points": [{"value": [0, 0]}]},
        {"points": [{"value": [0, 0], "tag": "bogus"}]},
        {"points": [{"value": [0], "tag": "pole"}]},
        {"points": [{"value": [0, 0], "tag": "pole", "order": 1.5}]},
    ],
)
def test_from_json_rejects_malformed(obj):
    with pytest.raises(DescriptorError):
        from_json(obj)


def test_classify_matrix_jordan_sum():
    a = direct_sum(jordan(0, 2), jordan(3, 1), jordan(3, 3), jordan(-1j, 1))
    c = classify_matrix(a)
    assert [(p.value, p.tag, p.order) for p in c.points] == [
        (-1j, Tag.POLE, 1),
        (0, Tag.POLE, 2),
        (3, Tag.POLE, 3),
    ]
    assert not c.sigma_dr()


def test_classify_matrix_similarity_invariant(rng):
    j = direct_sum(jordan(0.5, 2), jordan(0, 3), jordan(1j, 1))
    p = random_similarity(6, 300.0, rng)
    c = classify_matrix(p @ j @ np.linalg.inv(p))
    assert same_classification(c, classify_matrix(j), c.tol)


@pytest.mark.parametrize("seed", range(10))
def test_adjoint_invariance(seed):
    a = gen_matrix_with_poles([(0, 3, 1), (1 + 1j, 2, 1), (-0.5, 1, 2)], 1e3, seed)
    ca = classify_matrix(a)
    assert same_classification(ca, classify_matrix(a.T), ca.tol)
    # conjugate transpose conjugates the values
    ch = classify_matrix(a.conj().T)
    conj = SpectralClassification(
        tuple(SpectralPoint(p.value.conjugate(), p.tag, p.order) for p in ca.points), ca.tol
    )
    assert same_classification(ch, conj, ca.tol)
