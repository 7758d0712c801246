"""Critical sets, sublevel sets, and the comparison floor.

A point is critical when its slope is (tolerance-)zero; on a finite
space every field has at least one critical point because a global
minimizer has slope exactly 0. The comparison floor at x is the least
value of f - g over critical points inside the sublevel set of x; it is
the strict lower bound that descent arguments certify for (f - g)(x).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NegativeTolerance
from .slope import ScalarField, SlopeField, require_bound
from .space import MetricSpaceGraph, PointId


@dataclass(frozen=True)
class CriticalSet:
    """Points whose slope is <= tol (infinite slopes never qualify)."""

    members: frozenset[int]
    tol: float

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class SublevelSet:
    """Points with f(x) <= threshold."""

    threshold: float
    members: frozenset[int]

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)


class NoCriticalBelow:
    """Marker result: the sublevel set of x contains no critical point.

    Returned instead of +inf so reports can state the case explicitly.
    Only reachable when the supplied critical set was not derived from
    the field being compared (a derived set always contains a global
    minimizer, which lies in every sublevel set).
    """

    __slots__ = ()

    def __repr__(self) -> str:  # pragma: no cover
        return "NoCriticalBelow"


NO_CRITICAL_BELOW = NoCriticalBelow()


def critical_set(slopes: SlopeField, tol: float = 0.0) -> CriticalSet:
    """Points of a slope field with slope <= tol.

    The default tol 0 is the right choice for exact graph slopes, where
    minimizers hit zero exactly; sampled continuous data needs a
    positive tol because slopes at near-critical samples are O(h)
    (see `grid_critical_tol`).
    """
    tol = float(tol)
    if tol < 0.0:
        raise NegativeTolerance(f"tol must be >= 0, got {tol}")
    members = frozenset(
        x for x in range(len(slopes))
        if not slopes.infinite[x] and slopes.values[x] <= tol)
    return CriticalSet(members=members, tol=tol)


def sublevel_set(f: ScalarField, alpha: float) -> SublevelSet:
    """Points with f(x) <= alpha, by exact comparison."""
    alpha = float(alpha)
    members = frozenset(int(x) for x in (f.values <= alpha).nonzero()[0])
    return SublevelSet(threshold=alpha, members=members)


def comparison_floor(space: MetricSpaceGraph, f: ScalarField, g: ScalarField,
                     x: PointId, crit: CriticalSet):
    """min of (f - g)(z) over critical z with f(z) <= f(x).

    Returns NO_CRITICAL_BELOW when no critical point lies in the
    sublevel set of x. The supplied critical set must come from f's
    slope field for the floor to have its comparison meaning.
    """
    require_bound(space, f)
    require_bound(space, g)
    space.check_point(x)
    fx = f.values[x]
    best = None
    for z in sorted(crit.members):
        if f.values[z] <= fx:
            val = float(f.values[z] - g.values[z])
            if best is None or val < best:
                best = val
    if best is None:
        return NO_CRITICAL_BELOW
    return best


def grid_critical_tol(h: float, lipschitz: float = 1.0) -> float:
    """Suggested critical tolerance for data sampled at spacing h.

    Discrete slopes at samples adjacent to a true critical point are
    O(h), so the zero test needs an O(h) cutoff; `lipschitz` is the
    caller's estimate of the relevant local variation scale.
    """
    return 2.0 * float(h) * float(lipschitz)
