"""Discrete slope of a scalar field: the steepest local descent rate.

For a field f and a point x with adjacent points y, the slope is

    max over y of (f(x) - f(y))+ / d(x, y),

where (.)+  is max(., 0). An isolated point has slope 0. Quotients above
a configurable overflow cap are collapsed to an explicit infinite
marker, which keeps "genuinely unbounded across refinement" distinct
from "merely large" in downstream reports.

All operations here are pure functions over immutable inputs; per-point
evaluations are independent of each other and of evaluation order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyDeltaList,
    FieldSpaceMismatch,
    NonFiniteFieldValue,
    NonPositiveScale,
)
from .space import MetricSpaceGraph, PointId, metric_distances

OVERFLOW_CAP = 1e12


@dataclass(eq=False)
class ScalarField:
    """A finite real value per point, bound to the space it lives on."""

    space: MetricSpaceGraph
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.shape != (self.space.n,):
            raise FieldSpaceMismatch(
                f"field has {vals.shape} values, space has {self.space.n} points")
        if not np.all(np.isfinite(vals)):
            bad = int(np.flatnonzero(~np.isfinite(vals))[0])
            raise NonFiniteFieldValue(f"non-finite value at point {bad}")
        vals.setflags(write=False)
        self.values = vals

    def __getitem__(self, x: PointId) -> float:
        return float(self.values[x])

    def __len__(self) -> int:
        return self.space.n


@dataclass(frozen=True)
class SlopeValue:
    """Extended nonnegative slope: a finite value or an overflow marker."""

    value: float
    infinite: bool = False

    def as_float(self) -> float:
        """The slope as a float, with math.inf for the overflow marker."""
        return math.inf if self.infinite else self.value

    @property
    def is_finite(self) -> bool:
        return not self.infinite


INFINITE_SLOPE = SlopeValue(math.inf, True)


@dataclass(eq=False)
class SlopeField:
    """Per-point slope values plus an explicit infinity mask.

    `values` holds math.inf wherever `infinite` is set. `provenance`
    records how the field was produced ("exact-graph" for adjacent-pair
    quotients, "delta-estimate(...)" for ball sweeps) and `cap` the
    overflow threshold in force.
    """

    space: MetricSpaceGraph
    values: np.ndarray
    infinite: np.ndarray
    provenance: str = "exact-graph"
    cap: float = OVERFLOW_CAP

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        mask = np.array(self.infinite, dtype=bool)
        if vals.shape != (self.space.n,) or mask.shape != (self.space.n,):
            raise FieldSpaceMismatch("slope field length differs from point count")
        vals[mask] = math.inf
        finite_part = vals[~mask]
        if finite_part.size and (not np.all(np.isfinite(finite_part))
                                 or np.any(finite_part < 0.0)):
            raise ValueError("finite slope entries must be >= 0")
        vals.setflags(write=False)
        mask.setflags(write=False)
        self.values = vals
        self.infinite = mask

    def __getitem__(self, x: PointId) -> SlopeValue:
        if self.infinite[x]:
            return INFINITE_SLOPE
        return SlopeValue(float(self.values[x]))

    def __len__(self) -> int:
        return self.space.n

    def any_infinite(self) -> bool:
        return bool(self.infinite.any())


@dataclass(frozen=True)
class DeltaProfileEntry:
    """One radius of a shrinking-ball slope sweep."""

    delta: float
    slope: SlopeValue
    empty_ball: bool


def require_bound(space: MetricSpaceGraph, fld) -> None:
    """Raise unless `fld` is bound to exactly this space."""
    if fld.space is not space:
        raise FieldSpaceMismatch("field is bound to a different space")


def local_slope(space: MetricSpaceGraph, f: ScalarField, x: PointId,
                cap: float = OVERFLOW_CAP) -> SlopeValue:
    """Slope of f at x over adjacent points; exactly 0 if x is isolated.

    Quotients strictly above `cap` return the infinite marker.
    """
    require_bound(space, f)
    space.check_point(x)
    fx = f.values[x]
    best = 0.0
    for y, d in space.adjacency(x):
        drop = fx - f.values[y]
        if drop > 0.0:
            q = drop / d
            if q > best:
                best = q
    if best > cap:
        return INFINITE_SLOPE
    return SlopeValue(best)


def slope_field(space: MetricSpaceGraph, f: ScalarField,
                cap: float = OVERFLOW_CAP) -> SlopeField:
    """`local_slope` at every point.

    Per-point computations are independent, so the result does not
    depend on evaluation order or on any parallel schedule.
    """
    require_bound(space, f)
    vals = np.zeros(space.n)
    mask = np.zeros(space.n, dtype=bool)
    for x in range(space.n):
        sv = local_slope(space, f, x, cap=cap)
        if sv.infinite:
            mask[x] = True
            vals[x] = math.inf
        else:
            vals[x] = sv.value
    return SlopeField(space=space, values=vals, infinite=mask,
                      provenance="exact-graph", cap=cap)


def scale_field(f: ScalarField, scale: float) -> ScalarField:
    """Multiply a field by a positive constant.

    Slopes are positively homogeneous, so the slope field of the result
    is the original slope field scaled by the same constant.
    """
    scale = float(scale)
    if not scale > 0.0:
        raise NonPositiveScale(f"scale must be positive, got {scale}")
    return ScalarField(f.space, f.values * scale)


def delta_slope_profile(space: MetricSpaceGraph, f: ScalarField, x: PointId,
                        deltas, cap: float = OVERFLOW_CAP) -> list[DeltaProfileEntry]:
    """Sup of the descent quotient over balls of shrinking radius.

    For each delta the entry holds the sup of (f(x)-f(y))+ / d(x, y)
    over 0 < d(x, y) <= delta. Radii must be strictly decreasing. An
    empty ball reports slope 0 with its `empty_ball` flag set. Requires
    coordinates or shortest-path-closure mode.
    """
    require_bound(space, f)
    space.check_point(x)
    deltas = [float(d) for d in deltas]
    if not deltas:
        raise EmptyDeltaList("need at least one radius")
    for a, b in zip(deltas, deltas[1:]):
        if not b < a:
            raise ValueError("radii must be strictly decreasing")
    if not deltas[-1] > 0.0:
        raise ValueError("radii must be positive")
    dist = metric_distances(space, x)
    fx = f.values[x]
    with np.errstate(divide="ignore", invalid="ignore"):
        quotients = np.where(dist > 0.0,
                             np.maximum(fx - f.values, 0.0) / dist, 0.0)
    entries = []
    for delta in deltas:
        inside = (dist > 0.0) & (dist <= delta)
        if not inside.any():
            entries.append(DeltaProfileEntry(delta, SlopeValue(0.0), True))
            continue
        best = float(np.max(quotients[inside]))
        sv = INFINITE_SLOPE if best > cap else SlopeValue(best)
        entries.append(DeltaProfileEntry(delta, sv, False))
    return entries
