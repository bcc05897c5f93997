"""Generators and two-path comparison drivers.

Every trial draws from its own seed (spawned from the suite seed), so a
failing trial can be replayed alone with ``run_trial(kind, seed, config)``
and the merged output does not depend on execution order.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Sequence

import numpy as np
import scipy.linalg

from .drazin import axiom_residuals, drazin_inverse, index_of
from .elementary import build, spectrum_check, vec_identity_residual
from .linalg import DEFAULT_TOL, Tolerance, complex_to_json, kron, matrix_to_json
from .spectral import (
    SpectralClassification,
    SpectralPoint,
    Tag,
    classify_matrix,
    same_classification,
    to_json,
    validate,
)
from .tensor import (
    TwoPathMismatch,
    ZeroPosition,
    product_set,
    same_set,
    tensor_classify,
)

# Gaussian-integer grid scaled by 1/2: products are multiples of 1/4, so
# distinct products stay >= 1/4 apart and equal products are exact in binary.
LATTICE: tuple[complex, ...] = tuple(
    complex(x, y) / 2 for x in range(-2, 3) for y in range(-2, 3) if (x, y) != (0, 0)
)

MAX_GENERATED_DIM = 64


# -- matrix generators ------------------------------------------------------------------


def jordan_block(lam: complex, k: int) -> np.ndarray:
    return lam * np.eye(k, dtype=np.complex128) + np.diag(np.ones(k - 1, dtype=np.complex128), 1)


def random_similarity(n: int, cond_cap: float, rng: np.random.Generator) -> np.ndarray:
    """``Q1 diag(s) Q2`` with unitary ``Q`` and log-uniform ``s`` in ``[1, cond_cap]``."""
    if not cond_cap >= 1.0:
        raise ValueError(f"cond_cap must be >= 1, got {cond_cap}")

    def unitary() -> np.ndarray:
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        q, r = np.linalg.qr(z)
        return q * (np.diag(r) / np.abs(np.diag(r)))

    s = np.exp(rng.uniform(0.0, np.log(cond_cap), n))
    return unitary() @ np.diag(s) @ unitary()


def gen_matrix_with_poles(
    spec: Sequence[tuple[complex, int, int]], cond_cap: float = 1e3, seed: int = 0
) -> np.ndarray:
    """Random similarity transform of a direct sum of Jordan blocks.

    ``spec`` lists ``(eigenvalue, block size, number of blocks)``. The
    similarity has 2-norm condition number at most ``cond_cap``.
    """
    blocks = []
    for lam, order, mult in spec:
        if order < 1 or mult < 0:
            raise ValueError(f"bad block spec {(lam, order, mult)}")
        blocks += [jordan_block(complex(lam), int(order))] * int(mult)
    if not blocks:
        raise ValueError("empty block spec")
    j = scipy.linalg.block_diag(*blocks)
    n = j.shape[0]
    if n > MAX_GENERATED_DIM:
        raise ValueError(f"total dimension {n} exceeds {MAX_GENERATED_DIM}")
    rng = np.random.default_rng(seed)
    p = random_similarity(n, cond_cap, rng)
    return p @ j @ np.linalg.inv(p)


def expected_classification(spec: Sequence[tuple[complex, int, int]]) -> SpectralClassification:
    """Ground truth for :func:`gen_matrix_with_poles`: order = largest block."""
    orders: dict[complex, int] = {}
    for lam, order, mult in spec:
        if mult > 0:
            orders[complex(lam)] = max(orders.get(complex(lam), 0), int(order))
    return SpectralClassification(tuple(SpectralPoint(v, Tag.POLE, k) for v, k in orders.items()))


def random_pole_spec(
    rng: np.random.Generator, max_dim: int, max_order: int = 3, zero_prob: float = 0.35
) -> list[tuple[complex, int, int]]:
    n = int(rng.integers(1, max_dim + 1))
    spec: list[tuple[complex, int, int]] = []
    used = 0
    while used < n:
        lam = 0j if rng.random() < zero_prob else LATTICE[int(rng.integers(len(LATTICE)))]
        order = int(rng.integers(1, min(max_order, n - used) + 1))
        spec.append((lam, order, 1))
        used += order
    return spec


# -- descriptor generator -------------------------------------------------------------------

ZERO_MODES = ("invertible", "pole", "iso", "acc", "nilpotent", "quasinilpotent")


@dataclass(frozen=True)
class DescriptorProfile:
    allow_acc: bool = True
    allow_iso_np: bool = True
    zero_modes: tuple[str, ...] = ZERO_MODES
    nonzero_acc: bool = True
    max_points: int = 4


PROFILES: dict[str, DescriptorProfile] = {
    "all-pole": DescriptorProfile(False, False, ("invertible", "pole")),
    "invertible": DescriptorProfile(zero_modes=("invertible",)),
    "nilpotent": DescriptorProfile(zero_modes=("nilpotent",)),
    "quasinilpotent": DescriptorProfile(zero_modes=("quasinilpotent",)),
    "zero-pole": DescriptorProfile(zero_modes=("pole",)),
    "zero-iso": DescriptorProfile(zero_modes=("iso",)),
    "zero-acc": DescriptorProfile(zero_modes=("acc",), nonzero_acc=False),
    "acc-at-zero-only": DescriptorProfile(nonzero_acc=False),
    "mixed": DescriptorProfile(),
}


def gen_descriptor(profile: DescriptorProfile | str, seed: int | np.random.Generator) -> SpectralClassification:
    """Random valid descriptor with nonzero values drawn from :data:`LATTICE`."""
    if isinstance(profile, str):
        profile = PROFILES[profile]
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    mode = profile.zero_modes[int(rng.integers(len(profile.zero_modes)))]
    if mode == "nilpotent":
        return SpectralClassification((SpectralPoint(0j, Tag.POLE, int(rng.integers(1, 4))),))
    if mode == "quasinilpotent":
        return SpectralClassification((SpectralPoint(0j, Tag.ISO_NON_POLE),))
    tags = [Tag.POLE]
    if profile.allow_iso_np:
        tags.append(Tag.ISO_NON_POLE)
    if profile.allow_acc and profile.nonzero_acc:
        tags.append(Tag.ACC)
    k = int(rng.integers(1, profile.max_points + 1))
    values = rng.choice(len(LATTICE), size=k, replace=False)
    points = []
    for idx in sorted(values.tolist()):
        tag = tags[int(rng.integers(len(tags)))]
        order = int(rng.integers(1, 4)) if tag is Tag.POLE else None
        points.append(SpectralPoint(LATTICE[idx], tag, order))
    if mode == "pole":
        points.append(SpectralPoint(0j, Tag.POLE, int(rng.integers(1, 4))))
    elif mode == "iso":
        points.append(SpectralPoint(0j, Tag.ISO_NON_POLE))
    elif mode == "acc":
        points.append(SpectralPoint(0j, Tag.ACC))
    return SpectralClassification(tuple(points))


# -- independent oracles -----------------------------------------------------------------


def brute_force_nonzero(a: SpectralClassification, b: SpectralClassification) -> dict[complex, Tag]:
    """Tag every nonzero product by enumerating all its factorizations.

    A value is an accumulation point if some factor is one, otherwise a
    non-pole if some factorization involves a non-pole, otherwise a pole.
    Exact (symbolic) descriptors only.
    """
    rank = {Tag.POLE: 0, Tag.ISO_NON_POLE: 1, Tag.ACC: 2}
    out: dict[complex, Tag] = {}
    for p in a.points:
        for q in b.points:
            lam = p.value * q.value
            if lam == 0:
                continue
            worst = max(p.tag, q.tag, key=rank.__getitem__)
            if lam not in out or rank[worst] > rank[out[lam]]:
                out[lam] = worst
    return out


def zero_oracle(a: SpectralClassification, b: SpectralClassification) -> ZeroPosition:
    """Status of 0 in ``a (x) b`` from first principles, without the case table.

    0 is in the spectrum iff it is in either factor's spectrum. It is a
    limit of products iff one factor accumulates at 0 while the other has a
    nonzero spectral point. Otherwise it is isolated, and a pole exactly when
    ``a (x) b`` is Drazin invertible: one factor nilpotent, or both factors
    Drazin invertible.
    """
    za, zb = a.tag_of(0j), b.tag_of(0j)
    if za is None and zb is None:
        return ZeroPosition.NOT_IN_SPECTRUM
    has_nonzero_a = not (a.nilpotent() or a.quasinilpotent_not_nilpotent())
    has_nonzero_b = not (b.nilpotent() or b.quasinilpotent_not_nilpotent())
    if (za is Tag.ACC and has_nonzero_b) or (zb is Tag.ACC and has_nonzero_a):
        return ZeroPosition.ACC
    if a.nilpotent() or b.nilpotent():
        return ZeroPosition.POLE
    drazin_a = za in (None, Tag.POLE)
    drazin_b = zb in (None, Tag.POLE)
    return ZeroPosition.POLE if drazin_a and drazin_b else ZeroPosition.ISO_NON_POLE


# -- reports ---------------------------------------------------------------------------------


@dataclass
class VerificationReport:
    trial_id: int
    kind: str
    seed: int
    passed: bool
    predicted: dict[str, Any] = field(default_factory=dict)
    observed: dict[str, Any] = field(default_factory=dict)
    residuals: dict[str, float] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    replay: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SuiteConfig:
    dims: tuple[int, int] = (6, 6)
    cond_cap: float = 1e3
    tol: Tolerance = DEFAULT_TOL
    max_order: int = 3


def trial_seeds(seed: int, trials: int) -> list[int]:
    children = np.random.SeedSequence(seed).spawn(trials)
    return [int(c.generate_state(1, dtype=np.uint64)[0] >> 1) for c in children]


def _pts(values) -> list[list[float]]:
    return [complex_to_json(z) for z in sorted(values, key=lambda z: (z.real, z.imag))]


def _finish(report: VerificationReport) -> VerificationReport:
    report.passed = not report.failures
    return report


# -- trials -------------------------------------------------------------------------------


def drazin_trial(trial_id: int, seed: int, config: SuiteConfig) -> VerificationReport:
    rng = np.random.default_rng(seed)
    max_dim = config.dims[0]
    index = int(rng.integers(0, 5))
    spec = [(0j, index, 1)] if index else []
    rest = max(1, max_dim - index)
    other = random_pole_spec(rng, rest, config.max_order, zero_prob=0.0)
    spec += other
    a = gen_matrix_with_poles(spec, config.cond_cap, int(rng.integers(2**31)))
    rep = VerificationReport(trial_id, "drazin_axioms", seed, False)
    rep.replay = {"matrix": matrix_to_json(a), "spec": _spec_json(spec)}
    rep.predicted = {"index": index}
    try:
        dec = drazin_inverse(a, config.tol)
    except Exception as exc:  # reported, not raised
        rep.failures.append(f"drazin_inverse raised {type(exc).__name__}: {exc}")
        return _finish(rep)
    rep.observed = {"index": dec.index, "basis_cond": dec.basis_cond}
    rep.residuals = axiom_residuals(a, dec.drazin_inverse, dec.index, config.tol)
    if dec.index != index:
        rep.failures.append(f"index {dec.index} != prescribed {index}")
    for name, value in rep.residuals.items():
        if not value <= config.tol.residual_rel:
            rep.failures.append(f"{name} residual {value:.3e} > {config.tol.residual_rel:.1e}")
    return _finish(rep)


def _spec_json(spec) -> list:
    return [[complex_to_json(complex(lam)), order, mult] for lam, order, mult in spec]


def matrix_tensor_trial(trial_id: int, seed: int, config: SuiteConfig) -> VerificationReport:
    rng = np.random.default_rng(seed)
    na, nb = config.dims
    spec_a = random_pole_spec(rng, na, config.max_order)
    spec_b = random_pole_spec(rng, nb, config.max_order)
    a = gen_matrix_with_poles(spec_a, config.cond_cap, int(rng.integers(2**31)))
    b = gen_matrix_with_poles(spec_b, config.cond_cap, int(rng.integers(2**31)))
    rep = VerificationReport(trial_id, "matrix_tensor", seed, False)
    rep.replay = {
        "A": matrix_to_json(a),
        "B": matrix_to_json(b),
        "spec_A": _spec_json(spec_a),
        "spec_B": _spec_json(spec_b),
    }
    try:
        ca, cb = classify_matrix(a, config.tol), classify_matrix(b, config.tol)
        k = kron(a, b)
        observed = classify_matrix(k, config.tol)
        pred = tensor_classify(ca, cb)
    except Exception as exc:
        rep.failures.append(f"{type(exc).__name__}: {exc}")
        return _finish(rep)
    tol = config.tol.cluster_radius(k)
    for label, got, truth in (("A", ca, spec_a), ("B", cb, spec_b)):
        if not same_classification(got, expected_classification(truth), tol):
            rep.failures.append(f"classify_matrix({label}) does not recover its generator spec")
    res = pred.result
    obs_zero = ZeroPosition.POLE if observed.tag_of(0j) is Tag.POLE else ZeroPosition.NOT_IN_SPECTRUM
    rep.predicted = {
        "pi": _pts(res.pi_set()),
        "zero": pred.zero.status.value,
        "zero_case": pred.zero.justification,
        "sigma_dr": _pts(pred.drazin.sigma_dr),
    }
    rep.observed = {
        "pi": _pts(observed.pi_set()),
        "zero": obs_zero.value,
        "orders": [[complex_to_json(p.value), p.order] for p in observed.points],
        "sigma_dr": _pts(observed.sigma_dr()),
    }
    nz_pred = {v for v in res.pi_set() if v != 0}
    nz_obs = {v for v in observed.pi_set() if v != 0}
    if not same_set(nz_pred, nz_obs, tol):
        rep.failures.append("nonzero pole sets differ")
    if pred.zero.status is not obs_zero:
        rep.failures.append(f"zero status {pred.zero.status.value} != observed {obs_zero.value}")
    if not same_classification(res, observed, tol, orders=False):
        rep.failures.append("classifications differ")
    if res.sigma_dr() or observed.sigma_dr():
        rep.failures.append("matrix Drazin spectrum should be empty")
    return _finish(rep)


def _elementary_factor(rng: np.random.Generator, n: int, cond_cap: float) -> tuple[np.ndarray, str]:
    if rng.random() < 0.5:
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        return z, "gaussian"
    spec = random_pole_spec(rng, n, 3)
    return gen_matrix_with_poles(spec, cond_cap, int(rng.integers(2**31))), "poles"


def elementary_trial(trial_id: int, seed: int, config: SuiteConfig) -> VerificationReport:
    rng = np.random.default_rng(seed)
    n, m = (int(rng.integers(1, d + 1)) for d in config.dims)
    s, kind_s = _elementary_factor(rng, n, config.cond_cap)
    t, kind_t = _elementary_factor(rng, m, config.cond_cap)
    shape = (s.shape[0], t.shape[0])
    probe = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    rep = VerificationReport(trial_id, "matrix_elementary", seed, False)
    rep.replay = {"S": matrix_to_json(s), "T": matrix_to_json(t), "factors": [kind_s, kind_t]}
    vec_res = vec_identity_residual(s, t, probe)
    rep.residuals = {"vec_identity": vec_res}
    if not vec_res <= VEC_IDENTITY_TOL:
        rep.failures.append(f"vec identity residual {vec_res:.3e} > {VEC_IDENTITY_TOL:.0e}")
    try:
        e = build(s, t, config.tol)
        check = spectrum_check(e, config.tol)
    except Exception as exc:
        rep.failures.append(f"{type(exc).__name__}: {exc}")
        return _finish(rep)
    rep.residuals["sigma_law_deviation"] = check.max_deviation
    rep.observed = {"sigma_M": _pts(check.operator_eigenvalues)}
    rep.predicted = {"sigma_S_sigma_T": _pts(check.product_eigenvalues)}
    if not check.matches:
        rep.failures.append(
            f"spectrum multisets differ by {check.max_deviation:.3e} > {check.tolerance:.3e}"
        )
    invertible = check.operator_eigenvalues.size and all(
        abs(z) > config.tol.cluster_radius(e.matrix_form) for z in check.product_eigenvalues
    )
    idx = index_of(e.matrix_form, config.tol)
    rep.observed["index"] = idx
    if (idx == 0) != bool(invertible):
        rep.failures.append(f"index {idx} inconsistent with invertibility {bool(invertible)}")
    return _finish(rep)


VEC_IDENTITY_TOL = 1e-10


def symbolic_trial(trial_id: int, seed: int, config: SuiteConfig) -> VerificationReport:
    rng = np.random.default_rng(seed)
    names = list(PROFILES)
    pa, pb = names[int(rng.integers(len(names)))], names[int(rng.integers(len(names)))]
    a, b = gen_descriptor(pa, rng), gen_descriptor(pb, rng)
    rep = VerificationReport(trial_id, "symbolic_consistency", seed, False)
    rep.replay = {"a": to_json(a), "b": to_json(b), "profiles": [pa, pb]}
    rep.failures = check_symbolic_pair(a, b)
    if not rep.failures:
        r = tensor_classify(a, b)
        rep.predicted = {"sigma_dr": _pts(r.drazin.via_formula), "D": _pts(r.D)}
        rep.observed = {"sigma_dr": _pts(r.drazin.via_classification), "zero": r.zero.justification}
    return _finish(rep)


def check_symbolic_pair(a: SpectralClassification, b: SpectralClassification) -> list[str]:
    """All symbolic invariants for one descriptor pair; returns failure messages."""
    fails: list[str] = []
    try:
        r = tensor_classify(a, b)
    except TwoPathMismatch as exc:
        return [f"two-path mismatch: {exc}"]
    res, d = r.result, r.D
    sdr = r.drazin.sigma_dr
    if r.drazin.via_classification != r.drazin.via_formula:
        fails.append("drazin spectrum paths differ")
    if validate(res):
        fails.append(f"result invalid: {[v.invariant for v in validate(res)]}")
    if not sdr <= d:
        fails.append("sigma_DR(a(x)b) not contained in D")
    if not (d - sdr) <= {0j}:
        fails.append("D minus sigma_DR(a(x)b) is not within {0}")
    if not a.sigma_dr() and not b.sigma_dr() and (d or sdr):
        fails.append("both-poles case must give D = {} = sigma_DR")
    if sdr != d:
        if d != sdr | {0j} or r.zero.status is not ZeroPosition.POLE:
            fails.append("strict inclusion without D = sigma_DR U {0} and 0 a pole")
    p = r.predicates
    if p.d_equals_sigma_dr != p.predicted_equal():
        fails.append(f"regime {p.regime}: equality criterion disagrees with D == sigma_DR")
    if p.regime == "both-nonempty":
        if not (p.d_equals_sigma_dr == p.invertible_or_not_drazin == p.invertible_or_zero_condition):
            fails.append("the three equality conditions disagree")
    if p.regime in ("nilpotent-a", "nilpotent-b") and (sdr or d != {0j}):
        fails.append("nilpotent factor: expected sigma_DR = {} and D = {0}")
    zo = zero_oracle(a, b)
    if r.zero.status is not zo:
        fails.append(f"zero status {r.zero.status.value} ({r.zero.justification}) != oracle {zo.value}")
    brute = brute_force_nonzero(a, b)
    got = {pt.value: pt.tag for pt in res.points if pt.value != 0}
    if got != brute:
        fails.append("nonzero points differ from factor-pair enumeration")
    if not set(got) == set(product_set(a.spectrum(), b.spectrum())) - {0j}:
        fails.append("nonzero spectrum differs from sigma(a) sigma(b)")
    return fails


TRIALS: dict[str, Callable[[int, int, SuiteConfig], VerificationReport]] = {
    "drazin": drazin_trial,
    "matrix-tensor": matrix_tensor_trial,
    "elementary": elementary_trial,
    "symbolic": symbolic_trial,
}

DEFAULT_CONFIGS: dict[str, SuiteConfig] = {
    "drazin": SuiteConfig(dims=(20, 20), cond_cap=1e3),
    "matrix-tensor": SuiteConfig(dims=(6, 6), cond_cap=30.0),
    "elementary": SuiteConfig(dims=(5, 5), cond_cap=30.0),
    "symbolic": SuiteConfig(),
}


def run_trial(suite: str, trial_id: int, seed: int, config: SuiteConfig | None = None) -> VerificationReport:
    return TRIALS[suite](trial_id, seed, config or DEFAULT_CONFIGS[suite])


def _run_one(args) -> VerificationReport:
    return run_trial(*args)


def run_suite(
    suite: str,
    trials: int,
    seed: int = 0,
    config: SuiteConfig | None = None,
    workers: int = 1,
) -> list[VerificationReport]:
    config = config or DEFAULT_CONFIGS[suite]
    jobs = [(suite, i, s, config) for i, s in enumerate(trial_seeds(seed, trials))]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_run_one, jobs, chunksize=16))
    else:
        reports = [_run_one(job) for job in jobs]
    return sorted(reports, key=lambda r: r.trial_id)


def run_drazin_suite(trials: int, dims: int = 20, tol: Tolerance = DEFAULT_TOL, seed: int = 0):
    if dims > 32:
        raise ValueError("drazin suite dimension must be <= 32")
    return run_suite("drazin", trials, seed, SuiteConfig(dims=(dims, dims), cond_cap=1e3, tol=tol))


def run_matrix_tensor_suite(
    trials: int, dims: tuple[int, int] = (6, 6), tol: Tolerance = DEFAULT_TOL, seed: int = 0
):
    if dims[0] * dims[1] > MAX_GENERATED_DIM:
        raise ValueError("dims product must be <= 64")
    return run_suite("matrix-tensor", trials, seed, SuiteConfig(dims=dims, cond_cap=30.0, tol=tol))


def run_elementary_suite(
    trials: int, dims: tuple[int, int] = (5, 5), tol: Tolerance = DEFAULT_TOL, seed: int = 0
):
    return run_suite("elementary", trials, seed, SuiteConfig(dims=dims, cond_cap=30.0, tol=tol))


def run_symbolic_suite(trials: int, seed: int = 0):
    return run_suite("symbolic", trials, seed)


def summarize(reports: Sequence[VerificationReport], elapsed: float | None = None) -> dict:
    kinds = sorted({r.kind for r in reports})
    out = {
        "trials": len(reports),
        "passed": sum(r.passed for r in reports),
        "failed": sum(not r.passed for r in reports),
        "kinds": kinds,
    }
    if elapsed is not None:
        out["elapsed_s"] = round(elapsed, 3)
    return out


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


__all__ = [
    "LATTICE",
    "PROFILES",
    "DescriptorProfile",
    "SuiteConfig",
    "VerificationReport",
    "brute_force_nonzero",
    "check_symbolic_pair",
    "expected_classification",
    "gen_descriptor",
    "gen_matrix_with_poles",
    "jordan_block",
    "run_drazin_suite",
    "run_elementary_suite",
    "run_matrix_tensor_suite",
    "run_suite",
    "run_symbolic_suite",
    "run_trial",
    "summarize",
    "zero_oracle",
]
