"""Descent steps and descent paths under strict slope dominance.

When f has strictly larger slope than g at a non-critical point x, some
adjacent point z satisfies both strict inequalities

    f(x) > f(z)    and    (f - g)(x) > (f - g)(z),

namely any point realizing the steepest descent quotient of f at x.
Iterating such steps must reach a critical point of f within n steps on
an n-point space, because f strictly decreases along the way and no
point can repeat. This module makes the step and the path executable,
with a deterministic selection rule, and provides a checker for the
strict comparison inequality (f - g)(x) > comparison_floor(x) that the
paths certify.
"""
from __future__ import annotations

from dataclasses import dataclass

from .critical import CriticalSet, NoCriticalBelow, comparison_floor
from .errors import PointIsCritical, SlopeDominanceViolated, StepLimitExceeded
from .slope import OVERFLOW_CAP, ScalarField, local_slope, require_bound
from .space import MetricSpaceGraph, PointId


@dataclass(frozen=True)
class NoStep:
    """Diagnostic result: no adjacent point satisfied both inequalities.

    Impossible when the dominance precondition holds exactly; seeing it
    means dominance held only within floating-point tolerance.
    """

    point: int
    slope_f: float
    slope_g: float
    reason: str


@dataclass(frozen=True)
class DescentPath:
    """A strictly decreasing walk ending (normally) at a critical point.

    Both `f_values` and `diff_values` (the values of f - g) decrease
    strictly along `points`, which therefore never repeat.
    """

    points: tuple[int, ...]
    f_values: tuple[float, ...]
    diff_values: tuple[float, ...]
    terminal_critical: bool

    @property
    def steps(self) -> int:
        return len(self.points) - 1

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class StrictComparisonReport:
    """Outcome of checking (f - g)(x) > floor(x) at every non-critical x.

    When the dominance precondition fails, `dominance_ok` is False, the
    witness records the offending point, and the comparison itself is
    not asserted (`comparison_holds` is None).
    """

    dominance_ok: bool
    dominance_witness: int | None
    checked: int
    comparison_holds: bool | None
    violation_point: int | None
    violation_floor: float | None


def descent_step(space: MetricSpaceGraph, f: ScalarField, g: ScalarField,
                 x: PointId, crit: CriticalSet,
                 cap: float = OVERFLOW_CAP):
    """One descent step from a non-critical point x.

    Requires strictly larger slope of f than of g at x (checked here).
    Among adjacent points satisfying both strict inequalities, returns
    the one maximizing the descent quotient (f(x) - f(z)) / d(x, z),
    ties broken by smallest point id. Returns a NoStep diagnostic if no
    adjacent point qualifies, which can only happen when the dominance
    precondition held just within tolerance.
    """
    require_bound(space, f)
    require_bound(space, g)
    space.check_point(x)
    if x in crit:
        raise PointIsCritical(f"point {x} is critical (tol={crit.tol})")
    sf = local_slope(space, f, x, cap=cap)
    sg = local_slope(space, g, x, cap=cap)
    if not sf.as_float() > sg.as_float():
        raise SlopeDominanceViolated(
            f"at point {x}: slope_f={sf.as_float()} <= slope_g={sg.as_float()}")
    fx = f.values[x]
    diff_x = f.values[x] - g.values[x]
    best: int | None = None
    best_q = -1.0
    for z, d in space.adjacency(x):
        if fx > f.values[z] and diff_x > f.values[z] - g.values[z]:
            q = (fx - f.values[z]) / d
            if q > best_q or (q == best_q and best is not None and z < best):
                best = z
                best_q = q
    if best is None:
        return NoStep(point=x, slope_f=sf.as_float(), slope_g=sg.as_float(),
                      reason="no adjacent point satisfies both strict decreases")
    return best


def descent_path(space: MetricSpaceGraph, f: ScalarField, g: ScalarField,
                 x0: PointId, crit: CriticalSet,
                 max_steps: int | None = None,
                 cap: float = OVERFLOW_CAP) -> DescentPath:
    """Iterate descent steps from x0 until a critical point is reached.

    `max_steps` defaults to the point count, which always suffices when
    the dominance precondition holds: strict decrease of f forbids
    revisits, so a path visits at most n distinct points. Exceeding the
    budget therefore raises StepLimitExceeded as a tolerance alarm.
    """
    require_bound(space, f)
    require_bound(space, g)
    space.check_point(x0)
    if max_steps is None:
        max_steps = space.n
    points = [int(x0)]
    f_vals = [float(f.values[x0])]
    diff_vals = [float(f.values[x0] - g.values[x0])]
    current = int(x0)
    while current not in crit:
        if len(points) - 1 >= max_steps:
            raise StepLimitExceeded(
                f"no critical point within {max_steps} steps from {x0}")
        nxt = descent_step(space, f, g, current, crit, cap=cap)
        if isinstance(nxt, NoStep):
            raise SlopeDominanceViolated(
                f"descent stalled at point {nxt.point}: {nxt.reason} "
                f"(slope_f={nxt.slope_f}, slope_g={nxt.slope_g})")
        current = nxt
        points.append(current)
        f_vals.append(float(f.values[current]))
        diff_vals.append(float(f.values[current] - g.values[current]))
    return DescentPath(points=tuple(points), f_values=tuple(f_vals),
                       diff_values=tuple(diff_vals), terminal_critical=True)


def verify_strict_comparison(space: MetricSpaceGraph, f: ScalarField,
                             g: ScalarField, crit: CriticalSet,
                             cap: float = OVERFLOW_CAP) -> StrictComparisonReport:
    """Check (f - g)(x) > comparison_floor(x) at every non-critical x.

    First verifies the dominance precondition (slope of f strictly above
    slope of g off the critical set); if it fails anywhere the report
    flags the first offending point and skips the comparison. Violations
    of the comparison itself are reported as data, not raised.
    """
    require_bound(space, f)
    require_bound(space, g)
    non_critical = [x for x in range(space.n) if x not in crit]
    for x in non_critical:
        sf = local_slope(space, f, x, cap=cap)
        sg = local_slope(space, g, x, cap=cap)
        if not sf.as_float() > sg.as_float():
            return StrictComparisonReport(
                dominance_ok=False, dominance_witness=x,
                checked=0, comparison_holds=None,
                violation_point=None, violation_floor=None)
    checked = 0
    for x in non_critical:
        floor = comparison_floor(space, f, g, x, crit)
        checked += 1
        if isinstance(floor, NoCriticalBelow):
            return StrictComparisonReport(
                dominance_ok=True, dominance_witness=None, checked=checked,
                comparison_holds=False, violation_point=x, violation_floor=None)
        if not f.values[x] - g.values[x] > floor:
            return StrictComparisonReport(
                dominance_ok=True, dominance_witness=None, checked=checked,
                comparison_holds=False, violation_point=x,
                violation_floor=floor)
    return StrictComparisonReport(
        dominance_ok=True, dominance_witness=None, checked=checked,
        comparison_holds=True, violation_point=None, violation_floor=None)
