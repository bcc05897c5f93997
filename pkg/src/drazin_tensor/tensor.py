"""Isolated points and Drazin spectrum of an elementary tensor ``a (x) b``.

Everything here is set algebra on :class:`SpectralClassification` values.
Nonzero points follow from product sets; the status of 0 comes from a fixed
case table (:data:`ZERO_CASES`) keyed by how 0 sits in each factor. The
Drazin spectrum is produced twice, once by reading off the assembled
classification and once from ``D = sigma(a) sigma_DR(b) U sigma_DR(a) sigma(b)``
plus the equality criteria, and the two must agree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .linalg import dumps
from .spectral import (
    SpectralClassification,
    SpectralPoint,
    Tag,
    points_to_json,
    require_valid,
    to_json,
    warnings,
)

ZERO = 0j


class TwoPathMismatch(AssertionError):
    """The two routes to ``sigma_DR(a (x) b)`` disagree: an implementation bug."""


class UncoveredZeroCase(AssertionError):
    """No (or more than one) row of the zero-point case table matched."""


# -- numeric-aware set helpers -------------------------------------------------


def _canon(values: Iterable[complex], tol: float) -> frozenset[complex]:
    """Deduplicate; with ``tol > 0`` values near 0 become 0 and near-equal values merge."""
    if tol == 0:
        return frozenset(complex(v) for v in values)
    vals = sorted(
        {0j if abs(v) <= tol else complex(v) for v in values}, key=lambda z: (z.real, z.imag)
    )
    kept: list[complex] = []
    for v in vals:
        if not any(abs(v - k) <= tol for k in kept):
            kept.append(v)
    return frozenset(kept)


def _contains(values: Iterable[complex], z: complex, tol: float) -> bool:
    if tol == 0:
        return z in values
    return any(abs(z - v) <= tol for v in values)


def _minus(p: Iterable[complex], q: Iterable[complex], tol: float) -> frozenset[complex]:
    q = frozenset(q)
    return frozenset(v for v in p if not _contains(q, v, tol))


def _nonzero(p: Iterable[complex]) -> frozenset[complex]:
    return frozenset(v for v in p if v != 0)


def same_set(p: Iterable[complex], q: Iterable[complex], tol: float = 0.0) -> bool:
    p, q = frozenset(p), frozenset(q)
    if tol == 0:
        return p == q
    return not _minus(p, q, tol) and not _minus(q, p, tol)


def product_set(p: Iterable[complex], q: Iterable[complex], tol: float = 0.0) -> frozenset[complex]:
    """``{x*y : x in p, y in q}``; values within ``tol`` collapse (0 wins)."""
    q = list(q)
    return _canon((x * y for x in p for y in q), tol)


def pair_tol(a: SpectralClassification, b: SpectralClassification) -> float:
    """Matching tolerance for products of values of ``a`` and ``b``."""
    t = max(a.tol, b.tol)
    if t == 0:
        return 0.0
    ra = max((abs(v) for v in a.spectrum()), default=0.0)
    rb = max((abs(v) for v in b.spectrum()), default=0.0)
    return t * (1.0 + ra + rb)


# -- nonzero isolated points -------------------------------------------------------


def L_set(a: SpectralClassification, b: SpectralClassification) -> frozenset[complex]:
    """Nonzero products involving at least one isolated non-pole factor."""
    tol = pair_tol(a, b)
    ia, ib = _nonzero(a.i_set()), _nonzero(b.i_set())
    pa, pb = _nonzero(a.pi_set()), _nonzero(b.pi_set())
    return _canon(
        product_set(ia, ib, tol) | product_set(ia, pb, tol) | product_set(pa, ib, tol), tol
    )


def iso_classify_nonzero(
    a: SpectralClassification, b: SpectralClassification
) -> tuple[frozenset[complex], frozenset[complex]]:
    """``(I(a(x)b) \\ {0}, Pi(a(x)b) \\ {0})``.

    A nonzero product is a non-pole as soon as one of its factorizations
    uses an isolated non-pole; it is a pole only when every factorization is
    pole times pole.
    """
    require_valid(a, "a")
    require_valid(b, "b")
    tol = pair_tol(a, b)
    lset = L_set(a, b)
    pp = product_set(_nonzero(a.pi_set()), _nonzero(b.pi_set()), tol)
    return lset, _minus(pp, lset, tol)


# -- the point 0 ---------------------------------------------------------------------


class ZeroPosition(str, enum.Enum):
    NOT_IN_SPECTRUM = "not_in_spectrum"
    POLE = "pole"
    ISO_NON_POLE = "iso_non_pole"
    ACC = "acc"


class ZeroKind(str, enum.Enum):
    """How 0 sits relative to one factor, refined by the flags the table needs."""

    INV = "inv"  # 0 not in the spectrum
    NIL = "nil"  # nilpotent: sigma = Pi = {0}
    POLE = "pole"  # 0 a pole, element not nilpotent
    QN = "qn"  # quasinilpotent, not nilpotent: sigma = I = {0}
    ISO = "iso"  # 0 an isolated non-pole, sigma != {0}
    ACC = "acc"  # 0 an accumulation point


def zero_kind(c: SpectralClassification) -> ZeroKind:
    tag = c.tag_of(ZERO)
    if tag is None:
        return ZeroKind.INV
    if tag is Tag.ACC:
        return ZeroKind.ACC
    if tag is Tag.POLE:
        return ZeroKind.NIL if c.nilpotent() else ZeroKind.POLE
    return ZeroKind.QN if c.quasinilpotent_not_nilpotent() else ZeroKind.ISO


@dataclass(frozen=True)
class ZeroCase:
    case_id: str
    a_kinds: frozenset[ZeroKind]
    b_kinds: frozenset[ZeroKind]
    status: ZeroPosition

    def matches(self, ka: ZeroKind, kb: ZeroKind) -> bool:
        return ka in self.a_kinds and kb in self.b_kinds


@dataclass(frozen=True)
class ZeroStatus:
    status: ZeroPosition
    justification: str


def _k(*kinds: ZeroKind) -> frozenset[ZeroKind]:
    return frozenset(kinds)


_ALL = _k(*ZeroKind)
_ISO = _k(ZeroKind.QN, ZeroKind.ISO)
K = ZeroKind
P = ZeroPosition

# Rows are mutually exclusive and jointly cover all 36 (kind_a, kind_b) pairs.
# "-sym" rows are the factor-swapped statements.
ZERO_CASES: tuple[ZeroCase, ...] = (
    ZeroCase("invertible", _k(K.INV), _k(K.INV), P.NOT_IN_SPECTRUM),
    ZeroCase("thm-zero(i)", _k(K.NIL), _ALL, P.POLE),
    ZeroCase("thm-zero(i)-sym", _ALL - {K.NIL}, _k(K.NIL), P.POLE),
    ZeroCase("thm-zero(ii)", _k(K.ACC), _k(K.QN), P.ISO_NON_POLE),
    ZeroCase("thm-zero(ii)-sym", _k(K.QN), _k(K.ACC), P.ISO_NON_POLE),
    ZeroCase("thm-zero(iii)", _k(K.POLE), _k(K.INV), P.POLE),
    ZeroCase("thm-zero(iii)-sym", _k(K.INV), _k(K.POLE), P.POLE),
    ZeroCase("thm-zero(iii)-both", _k(K.POLE), _k(K.POLE), P.POLE),
    ZeroCase("thm-zero(iv)", _k(K.POLE), _ISO, P.ISO_NON_POLE),
    ZeroCase("thm-zero(iv)-sym", _ISO, _k(K.POLE), P.ISO_NON_POLE),
    ZeroCase("thm-zero(v)", _ISO, _k(K.INV), P.ISO_NON_POLE),
    ZeroCase("thm-zero(v)-sym", _k(K.INV), _ISO, P.ISO_NON_POLE),
    ZeroCase("thm-zero(vi)", _ISO, _ISO, P.ISO_NON_POLE),
    ZeroCase("thm-zero(vii)", _k(K.ACC), _k(K.INV, K.POLE, K.ISO, K.ACC), P.ACC),
    ZeroCase("thm-zero(vii)-sym", _k(K.INV, K.POLE, K.ISO), _k(K.ACC), P.ACC),
)

del K, P


def lookup_zero_case(ka: ZeroKind, kb: ZeroKind) -> ZeroCase:
    hits = [case for case in ZERO_CASES if case.matches(ka, kb)]
    if len(hits) != 1:
        raise UncoveredZeroCase(f"{len(hits)} zero-table rows match ({ka.value}, {kb.value})")
    return hits[0]


def classify_zero(a: SpectralClassification, b: SpectralClassification) -> ZeroStatus:
    require_valid(a, "a")
    require_valid(b, "b")
    case = lookup_zero_case(zero_kind(a), zero_kind(b))
    return ZeroStatus(case.status, case.case_id)


# -- assembly ------------------------------------------------------------------------


@dataclass(frozen=True)
class EqualityPredicates:
    """The equality criteria for ``sigma_DR(a(x)b) == D``, each evaluated on its own.

    ``regime`` says which criterion applies: ``both-poles`` (both Drazin
    spectra empty), ``nilpotent-a``/``nilpotent-b``, ``one-sided-a`` (only
    ``sigma_DR(a)`` empty), ``one-sided-b``, or ``both-nonempty``.
    """

    regime: str
    both_invertible: bool
    one_sided_a: bool  # 0 not in Pi(a) or 0 not in rho_DR(b)
    one_sided_b: bool  # 0 not in rho_DR(a) or 0 not in Pi(b)
    zero_condition: bool  # 0 not in Pi(a)&rho_DR(b) | rho_DR(a)&Pi(b)
    d_equals_sigma_dr: bool
    invertible_or_not_drazin: bool
    invertible_or_zero_condition: bool

    def predicted_equal(self) -> bool:
        """What the criterion for ``regime`` says about ``sigma_DR(a(x)b) == D``."""
        return {
            "both-poles": True,
            "nilpotent-a": False,
            "nilpotent-b": False,
            "one-sided-a": self.one_sided_a,
            "one-sided-b": self.one_sided_b,
            "both-nonempty": self.invertible_or_zero_condition,
        }[self.regime]


@dataclass(frozen=True)
class DrazinSpectrum:
    via_classification: frozenset[complex]
    via_formula: frozenset[complex]
    d_set: frozenset[complex]
    regime: str
    tol: float = 0.0

    @property
    def sigma_dr(self) -> frozenset[complex]:
        return self.via_classification

    @property
    def agree(self) -> bool:
        return same_set(self.via_classification, self.via_formula, self.tol)

    @property
    def equal(self) -> bool:
        return same_set(self.via_classification, self.d_set, self.tol)


@dataclass(frozen=True)
class TensorReport:
    a: SpectralClassification
    b: SpectralClassification
    result: SpectralClassification
    L: frozenset[complex]
    A: frozenset[complex]
    B: frozenset[complex]
    D: frozenset[complex]
    zero: ZeroStatus
    drazin: DrazinSpectrum
    predicates: EqualityPredicates
    warnings: tuple[str, ...] = field(default=())

    @property
    def equality_holds(self) -> bool:
        return self.drazin.equal


def _regime(a: SpectralClassification, b: SpectralClassification) -> str:
    ea, eb = not a.sigma_dr(), not b.sigma_dr()
    if ea and eb:
        return "both-poles"
    if ea:
        return "nilpotent-a" if a.nilpotent() else "one-sided-a"
    if eb:
        return "nilpotent-b" if b.nilpotent() else "one-sided-b"
    return "both-nonempty"


def _defining_sets(a: SpectralClassification, b: SpectralClassification, tol: float):
    sa, sb = a.spectrum(), b.spectrum()
    acc_ab = product_set(sa, b.acc_set(), tol) | product_set(a.acc_set(), sb, tol)
    iso_np = (
        product_set(a.i_set(), b.i_set(), tol)
        | product_set(a.i_set(), b.pi_set(), tol)
        | product_set(a.pi_set(), b.i_set(), tol)
    )
    d = product_set(sa, b.sigma_dr(), tol) | product_set(a.sigma_dr(), sb, tol)
    return _canon(acc_ab, tol), _canon(iso_np, tol), _canon(d, tol)


def _assemble(a, b, tol, zero):
    a_set, _, _ = _defining_sets(a, b, tol)
    i_nz, pi_nz = iso_classify_nonzero(a, b)
    acc_nz = _nonzero(a_set)
    # a nonzero value that is also a limit of products is non-isolated
    i_nz_kept = _minus(i_nz, acc_nz, tol)
    pi_nz_kept = _minus(pi_nz, acc_nz, tol)
    points = [SpectralPoint(v, Tag.ACC) for v in acc_nz]
    points += [SpectralPoint(v, Tag.ISO_NON_POLE) for v in i_nz_kept]
    points += [SpectralPoint(v, Tag.POLE) for v in pi_nz_kept]
    if zero.status is not ZeroPosition.NOT_IN_SPECTRUM:
        points.append(SpectralPoint(ZERO, Tag(zero.status.value)))
    collided = (i_nz != i_nz_kept) or (pi_nz != pi_nz_kept)
    return SpectralClassification(tuple(points), tol), collided


def _formula_path(a, b, d_set, regime) -> frozenset[complex]:
    """``D \\ {0}``, plus 0 exactly when the applicable equality criterion holds."""
    pi0_a, pi0_b = a.tag_of(ZERO) is Tag.POLE, b.tag_of(ZERO) is Tag.POLE
    rdr0_a, rdr0_b = ZERO not in a.sigma_dr(), ZERO not in b.sigma_dr()
    if regime in ("both-poles", "nilpotent-a", "nilpotent-b"):
        zero_in = False
    elif regime == "one-sided-a":
        zero_in = not pi0_a or not rdr0_b
    elif regime == "one-sided-b":
        zero_in = not rdr0_a or not pi0_b
    else:
        both_inv = a.invertible() and b.invertible()
        zero_in = both_inv or not ((pi0_a and rdr0_b) or (rdr0_a and pi0_b))
    out = _nonzero(d_set)
    if zero_in and ZERO in d_set:
        out = out | {ZERO}
    return out


def _predicates(a, b, d_set, sigma_dr_ab, zero, regime, tol) -> EqualityPredicates:
    pi0_a, pi0_b = a.tag_of(ZERO) is Tag.POLE, b.tag_of(ZERO) is Tag.POLE
    rdr0_a, rdr0_b = ZERO not in a.sigma_dr(), ZERO not in b.sigma_dr()
    both_inv = a.invertible() and b.invertible()
    zero_condition = not ((pi0_a and rdr0_b) or (rdr0_a and pi0_b))
    not_drazin = zero.status in (ZeroPosition.ACC, ZeroPosition.ISO_NON_POLE)
    return EqualityPredicates(
        regime=regime,
        both_invertible=both_inv,
        one_sided_a=(not pi0_a) or (not rdr0_b),
        one_sided_b=(not rdr0_a) or (not pi0_b),
        zero_condition=zero_condition,
        d_equals_sigma_dr=same_set(d_set, sigma_dr_ab, tol),
        invertible_or_not_drazin=both_inv or not_drazin,
        invertible_or_zero_condition=both_inv or zero_condition,
    )


def tensor_classify(a: SpectralClassification, b: SpectralClassification) -> TensorReport:
    """Classification of ``a (x) b`` with the defining sets and equality checks.

    Pole orders of the product are left unset. Raises
    :class:`~drazin_tensor.spectral.DescriptorError` on invalid input and
    :class:`TwoPathMismatch` if the two Drazin-spectrum routes disagree.
    """
    require_valid(a, "a")
    require_valid(b, "b")
    tol = pair_tol(a, b)
    zero = classify_zero(a, b)
    a_set, b_set, d_set = _defining_sets(a, b, tol)
    result, collided = _assemble(a, b, tol, zero)
    regime = _regime(a, b)
    via_cls = result.sigma_dr()
    via_formula = _formula_path(a, b, d_set, regime)
    if not same_set(via_cls, via_formula, tol):
        raise TwoPathMismatch(
            f"sigma_DR via classification {sorted(via_cls, key=_key)} != "
            f"via formula {sorted(via_formula, key=_key)}"
        )
    drazin = DrazinSpectrum(via_cls, via_formula, d_set, regime, tol)
    notes = [f"a: {w.detail}" for w in warnings(a)] + [f"b: {w.detail}" for w in warnings(b)]
    if collided:
        notes.append("nonzero isolated products coincide with accumulation products; tagged acc")
    return TensorReport(
        a=a,
        b=b,
        result=result,
        L=L_set(a, b),
        A=a_set,
        B=b_set,
        D=d_set,
        zero=zero,
        drazin=drazin,
        predicates=_predicates(a, b, d_set, via_cls, zero, regime, tol),
        warnings=tuple(notes),
    )


def drazin_spectrum_tensor(a: SpectralClassification, b: SpectralClassification) -> DrazinSpectrum:
    return tensor_classify(a, b).drazin


def equality_predicates(a: SpectralClassification, b: SpectralClassification) -> EqualityPredicates:
    return tensor_classify(a, b).predicates


def _key(z: complex) -> tuple[float, float]:
    return (z.real, z.imag)


# -- JSON ----------------------------------------------------------------------------


def report_to_json(report: TensorReport, labels: tuple[str, str] = ("a", "b")) -> dict:
    la, lb = labels
    p = report.predicates
    return {
        "inputs": {la: to_json(report.a), lb: to_json(report.b)},
        "result": to_json(report.result),
        "sets": {
            "L": points_to_json(report.L),
            "A": points_to_json(report.A),
            "B": points_to_json(report.B),
            "D": points_to_json(report.D),
        },
        "zero": {"status": report.zero.status.value, "case": report.zero.justification},
        "drazin_spectrum": {
            "via_classification": points_to_json(report.drazin.via_classification),
            "via_formula": points_to_json(report.drazin.via_formula),
            "paths_agree": report.drazin.agree,
            "regime": report.drazin.regime,
        },
        "equality_holds": report.equality_holds,
        "predicates": {
            "both_invertible": p.both_invertible,
            f"zero_not_in_Pi_{la}_or_not_in_rhoDR_{lb}": p.one_sided_a,
            f"zero_not_in_rhoDR_{la}_or_not_in_Pi_{lb}": p.one_sided_b,
            "zero_condition": p.zero_condition,
            "D_equals_sigma_DR": p.d_equals_sigma_dr,
            "invertible_or_not_drazin_invertible": p.invertible_or_not_drazin,
            "invertible_or_zero_condition": p.invertible_or_zero_condition,
        },
        "warnings": list(report.warnings),
    }


def report_dumps(report: TensorReport, labels: tuple[str, str] = ("a", "b")) -> str:
    return dumps(report_to_json(report, labels))
