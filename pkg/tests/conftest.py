"""Shared fixtures and builders for the test suite."""
import numpy as np

from slopekit import MetricSpaceGraph, ScalarField, build_graph


def unit_path(n: int) -> MetricSpaceGraph:
    """Path graph 0-1-...-(n-1) with unit edge lengths."""
    return build_graph([(i, i + 1, 1.0) for i in range(n - 1)])


def path_field(space: MetricSpaceGraph, values) -> ScalarField:
    return ScalarField(space, np.array(values, dtype=float))
