import random

import numpy as np
import pytest

from conftest import path_field, unit_path
from slopekit import (
    NoStep,
    ScalarField,
    critical_set,
    descent_path,
    descent_step,
    slope_field,
    verify_strict_comparison,
)
from slopekit.errors import (
    PointIsCritical,
    SlopeDominanceViolated,
    StepLimitExceeded,
)
from slopekit.testing import random_connected_graph, random_dyadic_field


def make_crit(space, f):
    return critical_set(slope_field(space, f), tol=0.0)


def test_descent_step_hand_example():
    space = unit_path(3)
    f = path_field(space, [2.0, 1.0, 0.0])
    g = path_field(space, [1.0, 0.6, 0.5])
    crit = make_crit(space, f)
    z = descent_step(space, f, g, 0, crit)
    assert z == 1
    assert f[0] > f[1]
    assert (f[0] - g[0]) > (f[1] - g[1])


def test_descent_step_from_critical_point_rejected():
    space = unit_path(3)
    f = path_field(space, [2.0, 1.0, 0.0])
    g = path_field(space, [1.0, 0.5, 0.0])
    crit = make_crit(space, f)
    with pytest.raises(PointIsCritical):
        descent_step(space, f, g, 2, crit)


def test_descent_step_requires_dominance():
    space = unit_path(3)
    f = path_field(space, [2.0, 1.0, 0.0])
    g = path_field(space, [4.0, 2.0, 0.0])  # slope_g = 2 slope_f
    crit = make_crit(space, f)
    with pytest.raises(SlopeDominanceViolated):
        descent_step(space, f, g, 0, crit)


def test_descent_step_exists_for_contracted_fields():
    # g = c f with 0 < c < 1: dominance holds at every non-critical point
    # and a brute-force scan confirms the returned step and its rule
    rng = random.Random(31)
    for _ in range(200):
        space = random_connected_graph(rng, n_max=25)
        f = random_dyadic_field(rng, space)
        c = rng.uniform(0.05, 0.95)
        g = ScalarField(space, c * f.values)
        crit = make_crit(space, f)
        for x in range(space.n):
            if x in crit:
                continue
            z = descent_step(space, f, g, x, crit)
            assert not isinstance(z, NoStep)
            assert f.values[x] > f.values[z]
            assert (f.values[x] - g.values[x]) > (f.values[z] - g.values[z])
            # selection rule: steepest quotient, ties to the smallest id
            best = None
            best_q = -1.0
            for y, d in space.adjacency(x):
                if f.values[x] > f.values[y] and \
                        (f.values[x] - g.values[x]) > (f.values[y] - g.values[y]):
                    q = (f.values[x] - f.values[y]) / d
                    if q > best_q or (q == best_q and y < best):
                        best, best_q = y, q
            assert z == best


def test_descent_path_single_point_when_start_critical():
    space = unit_path(3)
    f = path_field(space, [2.0, 1.0, 0.0])
    g = path_field(space, [1.0, 0.5, 0.0])
    crit = make_crit(space, f)
    path = descent_path(space, f, g, 2, crit)
    assert path.points == (2,)
    assert path.steps == 0
    assert path.terminal_critical


def test_descent_path_four_point_chain():
    space = unit_path(4)
    f = path_field(space, [3.0, 2.0, 1.0, 0.0])
    g = path_field(space, [0.0, 0.0, 0.0, 0.0])
    crit = make_crit(space, f)
    path = descent_path(space, f, g, 0, crit)
    assert path.points == (0, 1, 2, 3)
    assert len(path) == 4
    assert path.terminal_critical
    assert path.f_values == (3.0, 2.0, 1.0, 0.0)


def test_descent_path_step_limit():
    space = unit_path(4)
    f = path_field(space, [3.0, 2.0, 1.0, 0.0])
    g = path_field(space, [0.0] * 4)
    crit = make_crit(space, f)
    with pytest.raises(StepLimitExceeded):
        descent_path(space, f, g, 0, crit, max_steps=1)


def test_descent_path_properties_random():
    rng = random.Random(37)
    for _ in range(100):
        space = random_connected_graph(rng, n_max=30)
        f = random_dyadic_field(rng, space)
        g = ScalarField(space, 0.5 * f.values)
        crit = make_crit(space, f)
        for x in range(space.n):
            if x in crit:
                continue
            path = descent_path(space, f, g, x, crit)
            assert path.terminal_critical
            assert path.points[-1] in crit
            assert len(path) <= space.n
            assert len(set(path.points)) == len(path.points)
            assert all(a > b for a, b in zip(path.f_values, path.f_values[1:]))
            assert all(a > b
                       for a, b in zip(path.diff_values, path.diff_values[1:]))


def test_verify_strict_comparison_flags_missing_dominance():
    space = unit_path(3)
    f = path_field(space, [2.0, 1.0, 0.0])
    g = ScalarField(space, f.values - 1.0)  # identical slopes
    crit = make_crit(space, f)
    report = verify_strict_comparison(space, f, g, crit)
    assert not report.dominance_ok
    assert report.dominance_witness is not None
    assert report.comparison_holds is None


def test_verify_strict_comparison_contraction_family():
    rng = random.Random(41)
    for _ in range(50):
        space = random_connected_graph(rng, n_max=25)
        f = random_dyadic_field(rng, space)
        g = ScalarField(space, 0.9 * f.values)
        crit = make_crit(space, f)
        report = verify_strict_comparison(space, f, g, crit)
        assert report.dominance_ok
        assert report.comparison_holds
        assert report.violation_point is None


def test_verify_strict_comparison_hand_example():
    space = unit_path(3)
    f = path_field(space, [2.0, 1.0, 0.0])
    g = path_field(space, [1.0, 0.6, 0.5])
    crit = make_crit(space, f)
    report = verify_strict_comparison(space, f, g, crit)
    assert report.dominance_ok
    assert report.comparison_holds
    assert report.checked == 2  # points 0 and 1
