"""Seeded random instances and the property suites built on them.

Generated fields take dyadic rational values (multiples of 1/1024) and
edge lengths are powers of two, so descent quotients, slope fields, and
reconstruction arithmetic are exact in binary floating point. The
suites can therefore assert strict inequalities and exact recoveries
directly, without tolerance fudging: any failure is a real defect, not
rounding noise.

Each suite re-derives its claims from raw field values (brute-force
neighbor scans, direct inequality checks) instead of trusting the
bookkeeping of the operation under test.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .critical import comparison_floor, critical_set
from .descent import NoStep, descent_path, descent_step
from .determination import VERDICT_EQUAL, determine
from .reconstruct import Inadmissible, SlopeData, reconstruct
from .slope import ScalarField, SlopeField, scale_field, slope_field
from .space import MetricSpaceGraph, build_graph

EDGE_LENGTHS = (0.25, 0.5, 1.0, 2.0)
VALUE_DENOM = 1024


def random_connected_graph(rng: random.Random, n_max: int = 50,
                           n_min: int = 2) -> MetricSpaceGraph:
    """Random connected graph: a random spanning tree plus extra edges,
    with edge lengths drawn from a power-of-two palette."""
    n = rng.randint(n_min, n_max)
    present = set()
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        present.add((u, v))
        edges.append((u, v, rng.choice(EDGE_LENGTHS)))
    extra = rng.randint(0, n)
    for _ in range(extra):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in present:
            continue
        present.add(key)
        edges.append((key[0], key[1], rng.choice(EDGE_LENGTHS)))
    return build_graph(edges, n=n)


def random_dyadic_field(rng: random.Random, space: MetricSpaceGraph,
                        lo: int = -2048, hi: int = 2048) -> ScalarField:
    vals = [rng.randint(lo, hi) / VALUE_DENOM for _ in range(space.n)]
    return ScalarField(space, np.array(vals))


def random_dyadic_constant(rng: random.Random, lo: int = -5120,
                           hi: int = 5120) -> float:
    return rng.randint(lo, hi) / VALUE_DENOM


@dataclass(frozen=True)
class SuiteResult:
    name: str
    trials: int
    checks: int
    failures: int
    first_failure: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


def lemma_existence_suite(trials: int = 1000, seed: int = 0,
                          n_max: int = 50) -> SuiteResult:
    """At every non-critical point of f, with g = c*f for 0 < c < 0.9,
    a descent step exists and satisfies both strict inequalities."""
    rng = random.Random(seed)
    checks = failures = 0
    first = None
    for _ in range(trials):
        space = random_connected_graph(rng, n_max=n_max)
        f = random_dyadic_field(rng, space)
        c = rng.uniform(0.0, 0.9) or 0.5
        g = ScalarField(space, c * f.values)
        crit = critical_set(slope_field(space, f), tol=0.0)
        for x in range(space.n):
            if x in crit:
                continue
            checks += 1
            z = descent_step(space, f, g, x, crit)
            ok = (not isinstance(z, NoStep)
                  and f.values[x] > f.values[z]
                  and (f.values[x] - g.values[x]) > (f.values[z] - g.values[z]))
            if not ok:
                failures += 1
                if first is None:
                    first = f"no valid step at point {x} (n={space.n})"
    return SuiteResult("lemma", trials, checks, failures, first)


def descent_comparison_suite(trials: int = 1000, seed: int = 0,
                             n_max: int = 50) -> SuiteResult:
    """Every descent path terminates at a critical point within n steps,
    decreases strictly in both f and f - g, never revisits a point, and
    the strict comparison (f - g)(x) > floor(x) holds off the critical
    set."""
    rng = random.Random(seed)
    checks = failures = 0
    first = None
    for _ in range(trials):
        space = random_connected_graph(rng, n_max=n_max)
        f = random_dyadic_field(rng, space)
        c = rng.uniform(0.0, 0.9) or 0.5
        g = ScalarField(space, c * f.values)
        crit = critical_set(slope_field(space, f), tol=0.0)
        for x in range(space.n):
            if x in crit:
                continue
            checks += 1
            path = descent_path(space, f, g, x, crit)
            ok = (path.terminal_critical
                  and path.points[-1] in crit
                  and path.steps <= space.n
                  and len(set(path.points)) == len(path.points)
                  and all(a > b for a, b in zip(path.f_values,
                                                path.f_values[1:]))
                  and all(a > b for a, b in zip(path.diff_values,
                                                path.diff_values[1:])))
            floor = comparison_floor(space, f, g, x, crit)
            ok = ok and isinstance(floor, float) \
                and f.values[x] - g.values[x] > floor
            if not ok:
                failures += 1
                if first is None:
                    first = f"path or floor failure from point {x} (n={space.n})"
    return SuiteResult("descent", trials, checks, failures, first)


def determination_roundtrip_suite(trials: int = 1000, seed: int = 0,
                                  n_max: int = 50) -> SuiteResult:
    """determine(f, f + c) recovers the verdict and the constant.

    The recovered constant and the reported residual must sit within
    1e-12 of the truth, and the residual is re-checked directly from
    the raw values."""
    rng = random.Random(seed)
    checks = failures = 0
    first = None
    for _ in range(trials):
        space = random_connected_graph(rng, n_max=n_max)
        f = random_dyadic_field(rng, space)
        c = random_dyadic_constant(rng)
        g = ScalarField(space, f.values + c)
        checks += 1
        report = determine(space, f, g)
        got = report.verdict.constant
        ok = (report.verdict.kind == VERDICT_EQUAL
              and got is not None
              and abs(got - c) <= 1e-12
              and report.residual is not None
              and report.residual <= 1e-12
              and float(np.max(np.abs(g.values - f.values - got))) <= 1e-12)
        if not ok:
            failures += 1
            if first is None:
                first = (f"verdict={report.verdict.kind} c={c} got={got} "
                         f"residual={report.residual}")
    return SuiteResult("determine", trials, checks, failures, first)


def reconstruction_roundtrip_suite(trials: int = 1000, seed: int = 0,
                                   n_max: int = 50) -> SuiteResult:
    """Slope field plus critical values reproduce the field, and a
    perturbed slope entry at a prescribed point is rejected.

    The perturbation targets the global minimizer: its value is pinned
    by the prescription, so the inflated slope can never be realized by
    the verified output."""
    rng = random.Random(seed)
    checks = failures = 0
    first = None
    for _ in range(trials):
        space = random_connected_graph(rng, n_max=n_max)
        f = random_dyadic_field(rng, space)
        slopes = slope_field(space, f)
        crit = critical_set(slopes, tol=0.0)
        data = SlopeData(slopes, {p: f[p] for p in crit.sorted_members()})
        checks += 1
        out = reconstruct(space, data, tol=1e-9)
        ok = (isinstance(out, ScalarField)
              and float(np.max(np.abs(out.values - f.values))) <= 1e-9)
        p0 = int(np.argmin(f.values))
        bumped = slopes.values.copy()
        bumped[p0] = bumped[p0] + 1.0
        data2 = SlopeData(
            SlopeField(space, bumped, slopes.infinite.copy(),
                       provenance=slopes.provenance, cap=slopes.cap),
            dict(data.crit_values))
        out2 = reconstruct(space, data2, tol=1e-9)
        ok = ok and isinstance(out2, Inadmissible) \
            and any(w.point == p0 for w in out2.witnesses)
        if not ok:
            failures += 1
            if first is None:
                first = f"round trip or perturbation failure (n={space.n})"
    return SuiteResult("reconstruct", trials, checks, failures, first)


def homogeneity_suite(trials: int = 100, seed: int = 0,
                      epsilons=(1.0, 0.1, 0.01),
                      n_max: int = 50) -> SuiteResult:
    """Slope of (1 + eps) f equals (1 + eps) times the slope of f,
    pointwise within 1e-12 relative; zero slopes map to exact zeros."""
    rng = random.Random(seed)
    checks = failures = 0
    first = None
    for _ in range(trials):
        space = random_connected_graph(rng, n_max=n_max)
        f = random_dyadic_field(rng, space)
        base = slope_field(space, f)
        for eps in epsilons:
            lam = 1.0 + eps
            scaled = slope_field(space, scale_field(f, lam))
            checks += 1
            ok = True
            for x in range(space.n):
                expected = lam * base.values[x]
                if expected == 0.0:
                    if scaled.values[x] != 0.0:
                        ok = False
                        break
                elif abs(scaled.values[x] - expected) > 1e-12 * expected:
                    ok = False
                    break
            if not ok:
                failures += 1
                if first is None:
                    first = f"homogeneity gap at eps={eps} (n={space.n})"
    return SuiteResult("homogeneity", trials, checks, failures, first)


SUITES = {
    "lemma": lemma_existence_suite,
    "descent": descent_comparison_suite,
    "determine": determination_roundtrip_suite,
    "reconstruct": reconstruction_roundtrip_suite,
    "homogeneity": homogeneity_suite,
}
