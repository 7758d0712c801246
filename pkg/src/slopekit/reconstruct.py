"""Rebuild a field from its slope field plus values on the critical set.

The solver runs a label-setting sweep in increasing value order, the
same causal structure as single-source shortest paths with a per-point
speed: prescribed points seed the frontier, and each remaining point x
is finalized at

    v(x) = min over finalized neighbors y of  v(y) + s(x) * d(x, y).

The sweep alone is a heuristic; what makes the solver honest is the
unconditional verification pass afterwards, which recomputes the slope
field of the output and rejects the result (with witnesses) wherever it
deviates from the input slopes beyond tolerance. When the data really
came from a field, uniqueness of the answer is exactly the
determination property: equal slopes plus equal critical values leave
no freedom beyond what the prescription already fixes.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DisconnectedSpace,
    InfiniteSlopeData,
    InvalidPoint,
    NonFiniteFieldValue,
    UncoveredCriticalPoint,
)
from .slope import ScalarField, SlopeField, require_bound, slope_field
from .space import MetricSpaceGraph, is_connected


@dataclass(frozen=True)
class SlopeData:
    """Input to reconstruction: a finite slope field and the prescribed
    values on the designated critical set (every point with slope <= tol
    must appear in `crit_values`; extra prescriptions are allowed)."""

    slopes: SlopeField
    crit_values: dict


@dataclass(frozen=True)
class SlopeMismatch:
    point: int
    expected: float
    recomputed: float


@dataclass(frozen=True)
class Inadmissible:
    """Verification failure: no field consistent with the data exists
    (witnessed pointwise by the recomputed slope field)."""

    witnesses: tuple[SlopeMismatch, ...]


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    witnesses: tuple[SlopeMismatch, ...]
    field: ScalarField | None


def _validate(space: MetricSpaceGraph, data: SlopeData, tol: float):
    require_bound(space, data.slopes)
    if data.slopes.any_infinite():
        bad = int(np.flatnonzero(data.slopes.infinite)[0])
        raise InfiniteSlopeData(f"infinite slope at point {bad}")
    prescribed = {}
    for p, v in data.crit_values.items():
        p = int(p)
        space.check_point(p)
        v = float(v)
        if not math.isfinite(v):
            raise NonFiniteFieldValue(f"prescribed value at {p} is not finite")
        prescribed[p] = v
    if not is_connected(space):
        raise DisconnectedSpace("reconstruction requires a connected space")
    uncovered = [x for x in range(space.n)
                 if data.slopes.values[x] <= tol and x not in prescribed]
    if uncovered:
        raise UncoveredCriticalPoint(
            f"points {uncovered[:8]} have slope <= {tol} but no prescribed value")
    return prescribed


def reconstruct(space: MetricSpaceGraph, data: SlopeData, tol: float = 1e-9):
    """Label-setting sweep plus unconditional verification.

    Returns the reconstructed ScalarField, or an Inadmissible result
    whose witnesses list every point where the recomputed slope deviates
    from the input by more than tol. Prescribed values are never
    overridden; ties in the finalization order break toward the
    smallest point id. The sequence of finalized values is
    nondecreasing by construction (asserted during the sweep).
    """
    tol = float(tol)
    prescribed = _validate(space, data, tol)
    speeds = data.slopes.values
    v = np.full(space.n, math.inf)
    done = np.zeros(space.n, dtype=bool)
    heap: list[tuple[float, int]] = []
    for p in sorted(prescribed):
        v[p] = prescribed[p]
        heapq.heappush(heap, (v[p], p))
    last = -math.inf
    while heap:
        val, x = heapq.heappop(heap)
        if done[x] or val > v[x]:
            continue
        assert val >= last, "finalization order must be nondecreasing"
        last = val
        done[x] = True
        for y, d in space.adjacency(x):
            if done[y] or y in prescribed:
                continue
            cand = val + speeds[y] * d
            if cand < v[y]:
                v[y] = cand
                heapq.heappush(heap, (cand, y))
    assert bool(done.all()), "connected space must be fully swept"

    result = ScalarField(space, v)
    recomputed = slope_field(space, result, cap=data.slopes.cap)
    witnesses = []
    for x in range(space.n):
        got = recomputed.values[x]  # may be inf
        want = float(speeds[x])
        if not abs(got - want) <= tol:
            witnesses.append(SlopeMismatch(point=x, expected=want,
                                           recomputed=float(got)))
    if witnesses:
        return Inadmissible(witnesses=tuple(witnesses))
    return result


def admissible(space: MetricSpaceGraph, data: SlopeData,
               tol: float = 1e-9) -> AdmissibilityReport:
    """Decide whether any field is consistent with the slope data.

    Runs `reconstruct`; a pass implies the reconstructed field is the
    unique consistent one (given the prescribed critical values).
    """
    outcome = reconstruct(space, data, tol=tol)
    if isinstance(outcome, Inadmissible):
        return AdmissibilityReport(admissible=False,
                                   witnesses=outcome.witnesses, field=None)
    return AdmissibilityReport(admissible=True, witnesses=(), field=outcome)
