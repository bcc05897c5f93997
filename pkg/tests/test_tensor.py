import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drazin_tensor.harness import PROFILES, brute_force_nonzero, check_symbolic_pair, gen_descriptor, zero_oracle
from drazin_tensor.spectral import DescriptorError, Tag, classification
from drazin_tensor.tensor import (
    ZERO_CASES,
    ZeroKind,
    ZeroPosition,
    L_set,
    classify_zero,
    drazin_spectrum_tensor,
    equality_predicates,
    lookup_zero_case,
    product_set,
    report_dumps,
    tensor_classify,
    zero_kind,
)

NIL = classification((0, "pole", 2))
QN = classification((0, "iso_non_pole"))

# One representative descriptor per zero kind.
KIND_EXAMPLES = {
    ZeroKind.INV: classification((1, "pole", 1), (2j, "iso_non_pole")),
    ZeroKind.NIL: NIL,
    ZeroKind.POLE: classification((0, "pole", 1), (1, "iso_non_pole")),
    ZeroKind.QN: QN,
    ZeroKind.ISO: classification((0, "iso_non_pole"), (-1, "pole", 2)),
    ZeroKind.ACC: classification((0, "acc"), (0.5, "pole", 1)),
}


def test_product_set():
    assert product_set({1, 2}, {0, 1j}) == {0, 1j, 2j}


def test_L_set_excludes_zero_and_pole_pole():
    a = classification((0, "iso_non_pole"), (1, "iso_non_pole"), (2, "pole"))
    b = classification((1j, "pole"), (3, "pole"))
    assert L_set(a, b) == {1j, 3}


def test_nonzero_point_with_mixed_factorizations_is_non_pole():
    # 1 = 1*1 (pole*pole) = 2*0.5 (iso_np*pole)
    a = classification((1, "pole"), (2, "iso_non_pole"))
    b = classification((1, "pole"), (0.5, "pole"))
    r = tensor_classify(a, b)
    assert r.result.tag_of(1) is Tag.ISO_NON_POLE
    assert r.result.tag_of(0.5) is Tag.POLE
    assert r.result.tag_of(2) is Tag.ISO_NON_POLE


@pytest.mark.parametrize("ka, kb", list(itertools.product(ZeroKind, ZeroKind)))
def test_zero_table_total_and_matches_oracle(ka, kb):
    a, b = KIND_EXAMPLES[ka], KIND_EXAMPLES[kb]
    assert zero_kind(a) is ka and zero_kind(b) is kb
    case = lookup_zero_case(ka, kb)
    assert case.case_id
    assert classify_zero(a, b).status is zero_oracle(a, b)


def test_zero_table_rows_are_disjoint():
    for ka, kb in itertools.product(ZeroKind, ZeroKind):
        assert sum(case.matches(ka, kb) for case in ZERO_CASES) == 1
    assert {lookup_zero_case(ka, kb).case_id for ka, kb in itertools.product(ZeroKind, ZeroKind)} == {
        c.case_id for c in ZERO_CASES
    }


@pytest.mark.parametrize(
    "ka, kb, status, case_id",
    [
        (ZeroKind.INV, ZeroKind.INV, ZeroPosition.NOT_IN_SPECTRUM, "invertible"),
        (ZeroKind.NIL, ZeroKind.ACC, ZeroPosition.POLE, "thm-zero(i)"),
        (ZeroKind.ACC, ZeroKind.NIL, ZeroPosition.POLE, "thm-zero(i)-sym"),
        (ZeroKind.ACC, ZeroKind.QN, ZeroPosition.ISO_NON_POLE, "thm-zero(ii)"),
        (ZeroKind.POLE, ZeroKind.INV, ZeroPosition.POLE, "thm-zero(iii)"),
        (ZeroKind.POLE, ZeroKind.ISO, ZeroPosition.ISO_NON_POLE, "thm-zero(iv)"),
        (ZeroKind.QN, ZeroKind.INV, ZeroPosition.ISO_NON_POLE, "thm-zero(v)"),
        (ZeroKind.ISO, ZeroKind.QN, ZeroPosition.ISO_NON_POLE, "thm-zero(vi)"),
        (ZeroKind.ACC, ZeroKind.POLE, ZeroPosition.ACC, "thm-zero(vii)"),
        (ZeroKind.INV, ZeroKind.ACC, ZeroPosition.ACC, "thm-zero(vii)-sym"),
    ],
)
def test_zero_cases_frozen(ka, kb, status, case_id):
    z = classify_zero(KIND_EXAMPLES[ka], KIND_EXAMPLES[kb])
    assert (z.status, z.justification) == (status, case_id)


def test_all_pole_pair_has_empty_drazin_spectrum():
    a = classification((0, "pole", 2), (1, "pole", 1))
    r = tensor_classify(a, a)
    assert r.D == frozenset() == r.drazin.sigma_dr
    assert r.equality_holds
    assert all(p.tag is Tag.POLE and p.order is None for p in r.result.points)


def test_nilpotent_times_nonempty_drazin_spectrum():
    b = classification((0, "acc"), (1, "pole", 1))
    r = tensor_classify(NIL, b)
    assert r.drazin.sigma_dr == frozenset()
    assert r.D == {0}
    assert not r.equality_holds
    assert r.result.nilpotent()


def test_isolated_non_pole_at_zero_in_both():
    a = classification((0, "iso_non_pole"), (1, "pole"))
    b = classification((0, "iso_non_pole"), (2j, "pole"))
    r = tensor_classify(a, b)
    assert r.result.tag_of(0) is Tag.ISO_NON_POLE
    assert 0 in r.drazin.sigma_dr


def test_strict_inclusion_example():
    # 0 a pole of a, Drazin invertible at 0 for b, sigma_DR(b) nonempty
    a = classification((0, "pole", 1), (1, "iso_non_pole"))
    b = classification((1, "iso_non_pole"))
    r = tensor_classify(a, b)
    assert r.D == {0, 1}
    assert r.drazin.sigma_dr == {1}
    p = equality_predicates(a, b)
    assert p.regime == "both-nonempty"
    assert not p.zero_condition and not p.d_equals_sigma_dr and not p.invertible_or_not_drazin


def test_one_sided_regime():
    a = classification((0, "pole", 1), (2, "pole", 1))
    b_yes = classification((0, "iso_non_pole"), (1, "pole"))
    b_no = classification((1, "iso_non_pole"))
    assert drazin_spectrum_tensor(a, b_yes).equal
    assert equality_predicates(a, b_yes).regime == "one-sided-a"
    d = drazin_spectrum_tensor(a, b_no)
    assert not d.equal and d.d_set == {0, 2} and d.sigma_dr == {2}


def test_nonzero_acc_collision_warns_and_tags_acc():
    a = classification((1, "acc"), (2, "pole"))
    b = classification((1, "pole"), (0.5, "pole"))
    r = tensor_classify(a, b)
    assert r.result.tag_of(1) is Tag.ACC
    assert any("tagged acc" in w for w in r.warnings)


def test_invalid_input_raises():
    with pytest.raises(DescriptorError):
        tensor_classify(classification((1, "pole"), (1, "acc")), NIL)


def test_report_json_is_deterministic():
    a = classification((0, "acc"), (1j, "pole"), (-0.5, "iso_non_pole"))
    b = classification((0.5, "pole"), (0, "iso_non_pole"))
    s1 = report_dumps(tensor_classify(a, b))
    s2 = report_dumps(tensor_classify(classification(*reversed([(p.value, p.tag) for p in a.points])), b))
    assert s1 == s2
    assert '"case": "thm-zero(vii)"' in s1


descriptors = st.builds(
    gen_descriptor, st.sampled_from(sorted(PROFILES)), st.integers(0, 2**32 - 1)
)


@settings(max_examples=500)
@given(descriptors, descriptors)
def test_symbolic_invariants(a, b):
    assert check_symbolic_pair(a, b) == []


@settings(max_examples=300)
@given(descriptors, descriptors)
def test_symmetry_under_swap(a, b):
    r, s = tensor_classify(a, b), tensor_classify(b, a)
    assert r.result == s.result
    assert r.D == s.D and r.drazin.sigma_dr == s.drazin.sigma_dr


@settings(max_examples=300)
@given(descriptors, descriptors)
def test_nonzero_points_match_enumeration(a, b):
    r = tensor_classify(a, b)
    assert {p.value: p.tag for p in r.result.points if p.value != 0} == brute_force_nonzero(a, b)
