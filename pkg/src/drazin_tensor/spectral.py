"""Spectral descriptors: accumulation points, poles and isolated non-poles.

A :class:`SpectralClassification` is a finite descriptor of an element of a
unital Banach algebra. Points tagged ``ACC`` stand for non-isolated spectral
points; the points approaching them are not listed. Descriptors built from
matrices carry a positive ``tol`` (the eigenvalue clustering radius) and
are always all-pole; hand-written ones use ``tol = 0`` and exact values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any, Iterable

from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    cluster_spectrum,
    complex_from_json,
    complex_to_json,
)


class Tag(str, enum.Enum):
    ACC = "acc"
    POLE = "pole"
    ISO_NON_POLE = "iso_non_pole"


class DescriptorError(ValueError):
    """Malformed descriptor JSON, or a descriptor that fails validation."""

    def __init__(self, message: str, violations: list[Violation] | None = None):
        super().__init__(message)
        self.violations = violations or []


@dataclass(frozen=True)
class SpectralPoint:
    value: complex
    tag: Tag
    order: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "tag", Tag(self.tag))


@dataclass(frozen=True)
class Violation:
    invariant: str
    detail: str


@dataclass(frozen=True)
class SpectralClassification:
    points: tuple[SpectralPoint, ...]
    tol: float = 0.0

    def __post_init__(self) -> None:
        pts = tuple(sorted(self.points, key=lambda p: (p.value.real, p.value.imag, p.tag.value)))
        object.__setattr__(self, "points", pts)

    def _values(self, *tags: Tag) -> frozenset[complex]:
        return frozenset(p.value for p in self.points if p.tag in tags)

    def spectrum(self) -> frozenset[complex]:
        return frozenset(p.value for p in self.points)

    def acc_set(self) -> frozenset[complex]:
        return self._values(Tag.ACC)

    def pi_set(self) -> frozenset[complex]:
        return self._values(Tag.POLE)

    def i_set(self) -> frozenset[complex]:
        return self._values(Tag.ISO_NON_POLE)

    def iso_set(self) -> frozenset[complex]:
        return self._values(Tag.POLE, Tag.ISO_NON_POLE)

    def sigma_dr(self) -> frozenset[complex]:
        return self._values(Tag.ACC, Tag.ISO_NON_POLE)

    def tag_of(self, value: complex) -> Tag | None:
        for p in self.points:
            if _close(p.value, value, self.tol):
                return p.tag
        return None

    def order_of(self, value: complex) -> int | None:
        for p in self.points:
            if _close(p.value, value, self.tol):
                return p.order
        return None

    def invertible(self) -> bool:
        return self.tag_of(0j) is None

    def nilpotent(self) -> bool:
        return len(self.points) == 1 and self.points[0].value == 0 and self.points[0].tag is Tag.POLE

    def quasinilpotent_not_nilpotent(self) -> bool:
        return (
            len(self.points) == 1
            and self.points[0].value == 0
            and self.points[0].tag is Tag.ISO_NON_POLE
        )

    def spectrum_is_zero(self) -> bool:
        """``sigma = {0}``; an ``ACC`` point at 0 implies unlisted nearby points."""
        return self.nilpotent() or self.quasinilpotent_not_nilpotent()


def _close(x: complex, y: complex, tol: float) -> bool:
    return x == y if tol == 0 else abs(x - y) <= tol


def spectrum(c: SpectralClassification) -> frozenset[complex]:
    return c.spectrum()


def acc_set(c: SpectralClassification) -> frozenset[complex]:
    return c.acc_set()


def pi_set(c: SpectralClassification) -> frozenset[complex]:
    return c.pi_set()


def i_set(c: SpectralClassification) -> frozenset[complex]:
    return c.i_set()


def sigma_dr(c: SpectralClassification) -> frozenset[complex]:
    return c.sigma_dr()


def classification(*items: Any, tol: float = 0.0) -> SpectralClassification:
    """Shorthand constructor: ``classification((0, "pole", 2), (1, "acc"))``."""
    points = []
    for item in items:
        if isinstance(item, SpectralPoint):
            points.append(item)
            continue
        value, tag, *rest = item
        points.append(SpectralPoint(complex(value), Tag(tag), rest[0] if rest else None))
    return SpectralClassification(tuple(points), tol)


def validate(c: SpectralClassification) -> list[Violation]:
    """Invariant violations of ``c``; an empty list means valid."""
    out: list[Violation] = []
    if not c.points:
        out.append(Violation("nonempty spectrum", "descriptor lists no spectral points"))
    for p in c.points:
        if not (math.isfinite(p.value.real) and math.isfinite(p.value.imag)):
            out.append(Violation("finite values", f"value {p.value} is not finite"))
        if p.order is not None:
            if p.tag is not Tag.POLE:
                out.append(Violation("order only on poles", f"{p.tag.value} point {p.value} has an order"))
            if isinstance(p.order, bool) or not isinstance(p.order, int) or p.order < 1:
                out.append(Violation("positive order", f"point {p.value} has order {p.order!r}"))
    pts = c.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if _close(pts[i].value, pts[j].value, c.tol):
                out.append(
                    Violation(
                        "disjointness",
                        f"value {pts[i].value} appears as {pts[i].tag.value} and {pts[j].tag.value}",
                    )
                )
    return out


def warnings(c: SpectralClassification) -> list[Violation]:
    """Non-fatal findings: accumulation points away from zero."""
    nonzero = sorted((v for v in c.acc_set() if v != 0), key=lambda z: (z.real, z.imag))
    if nonzero:
        return [
            Violation(
                "acc within {0}",
                f"accumulation points {nonzero} away from 0; a finite descriptor "
                "cannot list the points approaching them",
            )
        ]
    return []


def require_valid(c: SpectralClassification, label: str = "descriptor") -> None:
    problems = validate(c)
    if problems:
        names = ", ".join(v.invariant for v in problems)
        raise DescriptorError(f"{label} is invalid: {names}", problems)


def classify_matrix(a, tol: Tolerance = DEFAULT_TOL) -> SpectralClassification:
    """Every eigenvalue of a matrix is a pole whose order is the index of ``A - lam I``."""
    a = as_matrix(a, square=True)
    clusters = cluster_spectrum(a, tol)
    points = tuple(SpectralPoint(c.value, Tag.POLE, c.ascent) for c in clusters)
    return SpectralClassification(points, tol.cluster_radius(a))


def same_classification(
    x: SpectralClassification,
    y: SpectralClassification,
    tol: float | None = None,
    *,
    orders: bool = True,
) -> bool:
    """Values matched within ``tol`` (default: the larger descriptor tolerance)."""
    tol = max(x.tol, y.tol) if tol is None else tol
    if len(x.points) != len(y.points):
        return False
    unused = list(y.points)
    for p in x.points:
        match = next(
            (q for q in unused if q.tag is p.tag and _close(p.value, q.value, tol)), None
        )
        if match is None or (orders and match.order != p.order):
            return False
        unused.remove(match)
    return True


# -- JSON ---------------------------------------------------------------------


def to_json(c: SpectralClassification) -> dict:
    return {
        "points": [
            {"value": complex_to_json(p.value), "tag": p.tag.value, "order": p.order}
            for p in c.points
        ]
    }


def from_json(obj: Any, tol: float = 0.0) -> SpectralClassification:
    if not isinstance(obj, dict) or not isinstance(obj.get("points"), list):
        raise DescriptorError("descriptor JSON needs a 'points' list")
    points = []
    for item in obj["points"]:
        if not isinstance(item, dict) or "value" not in item or "tag" not in item:
            raise DescriptorError(f"point must have 'value' and 'tag': {item!r}")
        try:
            value = complex_from_json(item["value"])
            tag = Tag(item["tag"])
        except ValueError as exc:
            raise DescriptorError(str(exc)) from None
        order = item.get("order")
        if order is not None and (isinstance(order, bool) or not isinstance(order, int)):
            raise DescriptorError(f"order must be an integer or null: {order!r}")
        points.append(SpectralPoint(value, tag, order))
    return SpectralClassification(tuple(points), tol)


def is_descriptor_json(obj: Any) -> bool:
    return isinstance(obj, dict) and "points" in obj


def points_to_json(values: Iterable[complex]) -> list[list[float]]:
    return [complex_to_json(z) for z in sorted(values, key=lambda z: (z.real, z.imag))]
