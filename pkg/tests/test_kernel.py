import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nlflow import (Boundary, ConfigurationError, Field, KernelShape, KernelSpec, UsageError,
                    convolve, discretize, make_grid)

TRAFFIC_SHAPES = [KernelShape.AHEAD_CONSTANT, KernelShape.AHEAD_LINEAR,
                  KernelShape.BEHIND_CONSTANT, KernelShape.BEHIND_LINEAR]


def test_ahead_constant_hand_trapezoid():
    k = discretize(KernelSpec(KernelShape.AHEAD_CONSTANT, 1.0), 0.5)
    np.testing.assert_array_equal(k.offsets, [0, 1, 2])
    np.testing.assert_allclose(k.weights, [0.25, 0.5, 0.25], atol=1e-15)


def test_ahead_linear_hand_trapezoid():
    k = discretize(KernelSpec(KernelShape.AHEAD_LINEAR, 1.0), 0.5)
    np.testing.assert_allclose(k.weights, [0.5, 0.5, 0.0], atol=1e-15)


def test_behind_kernels_mirror_ahead():
    for ahead, behind in [(KernelShape.AHEAD_CONSTANT, KernelShape.BEHIND_CONSTANT),
                          (KernelShape.AHEAD_LINEAR, KernelShape.BEHIND_LINEAR)]:
        ka = discretize(KernelSpec(ahead, 0.5), 0.1)
        kb = discretize(KernelSpec(behind, 0.5), 0.1)
        np.testing.assert_array_equal(kb.offsets, -ka.offsets[::-1])
        np.testing.assert_array_equal(kb.weights, ka.weights[::-1])


@given(shape=st.sampled_from(TRAFFIC_SHAPES), m=st.integers(1, 400), cells=st.integers(1, 50))
def test_traffic_weights_normalized_and_nonnegative(shape, m, cells):
    dx = 1.0 / cells
    k = discretize(KernelSpec(shape, m * dx), dx)
    assert abs(math.fsum(k.weights) - 1.0) <= 1e-12
    assert (k.weights >= 0).all()


@pytest.mark.parametrize("dx", [0.5, 0.1, 0.01, 1 / 200])
def test_whitham_kernel_truncation(dx):
    k = discretize(KernelSpec(KernelShape.WHITHAM_EXPONENTIAL), dx)
    assert abs(math.fsum(k.weights) - 1.0) <= 1e-12
    assert (k.weights >= 0).all()
    np.testing.assert_array_equal(k.weights, k.weights[::-1])
    edge = math.pi / 4 * math.exp(-math.pi * k.j_hi * dx / 2)
    assert edge < 1e-12


def test_suspension_kernel_samples_formula():
    a, dx = 0.5, 0.1
    k = discretize(KernelSpec(KernelShape.SUSPENSION_BUMP, a), dx)
    assert (k.j_lo, k.j_hi) == (-10, 10)
    r = k.offsets * dx
    with np.errstate(divide="ignore"):
        expected = np.where(np.abs(r / a) < 2, 2 / (3 * ((r / a) ** 2 / 4 - 1)) / a * dx, 0.0)
    np.testing.assert_allclose(k.weights[1:-1], expected[1:-1], rtol=1e-13)
    assert k.weights[0] == k.weights[-1] == 0.0
    assert (k.weights <= 0).all()


@pytest.mark.parametrize("reach,dx", [(1.0, 0.3), (0.5, 0.2), (1.0, 0.07)])
def test_incommensurate_reach(reach, dx):
    with pytest.raises(ConfigurationError, match="multiple of dx"):
        discretize(KernelSpec(KernelShape.AHEAD_CONSTANT, reach), dx)


def test_nonpositive_reach():
    with pytest.raises(ConfigurationError):
        KernelSpec(KernelShape.AHEAD_CONSTANT, 0.0)


def test_dx_mismatch():
    f = Field(make_grid(0, 1, 0.1), np.zeros(11))
    with pytest.raises(UsageError):
        convolve(f, discretize(KernelSpec(KernelShape.AHEAD_CONSTANT, 0.5), 0.05))


@pytest.mark.parametrize("boundary", list(Boundary))
@pytest.mark.parametrize("shape", TRAFFIC_SHAPES + [KernelShape.WHITHAM_EXPONENTIAL])
def test_constant_is_preserved(boundary, shape):
    g = make_grid(-3, 3, 0.05, boundary)
    c = 0.37
    out = convolve(Field(g, np.full(g.n, c)), discretize(KernelSpec(shape, 1.0), g.dx))
    np.testing.assert_allclose(out.values, c, atol=1e-12, rtol=0)


def _interior(g, reach):
    m = round(reach / g.dx)
    return slice(m, g.n - m)


@pytest.mark.parametrize("shape,shift", [(KernelShape.AHEAD_CONSTANT, 0.5),
                                         (KernelShape.BEHIND_CONSTANT, -0.5)])
def test_linear_data_constant_kernel_exact(shape, shift):
    g, gamma = make_grid(-4, 4, 0.05), 1.0
    out = convolve(Field(g, g.x), discretize(KernelSpec(shape, gamma), g.dx))
    s = _interior(g, gamma)
    np.testing.assert_allclose(out.values[s], g.x[s] + shift * gamma, atol=1e-12, rtol=0)


@pytest.mark.parametrize("shape,shift", [(KernelShape.AHEAD_LINEAR, 1 / 3),
                                         (KernelShape.BEHIND_LINEAR, -1 / 3)])
@pytest.mark.parametrize("dx", [0.1, 0.05, 0.025])
def test_linear_data_linear_kernel(shape, shift, dx):
    g, gamma = make_grid(-4, 4, dx), 1.0
    out = convolve(Field(g, g.x), discretize(KernelSpec(shape, gamma), g.dx))
    s = _interior(g, gamma)
    assert np.max(np.abs(out.values[s] - (g.x[s] + shift * gamma))) <= 2 * dx**2


def test_quadratic_data_second_order():
    gamma, errs = 1.0, []
    for dx in [0.1, 0.05, 0.025, 0.0125]:
        g = make_grid(-4, 4, dx)
        out = convolve(Field(g, g.x**2), discretize(KernelSpec(KernelShape.AHEAD_CONSTANT, gamma), dx))
        s = _interior(g, gamma)
        x = g.x[s]
        errs.append(np.max(np.abs(out.values[s] - (x**2 + gamma * x + gamma**2 / 3))))
    for coarse, fine, dx in zip(errs, errs[1:], [0.1, 0.05, 0.025]):
        assert coarse <= dx**2
        assert coarse / fine >= 3.5


unit_fields = st.lists(st.floats(0, 1), min_size=31, max_size=31)


@settings(max_examples=50)
@given(u=unit_fields, v=unit_fields, shape=st.sampled_from(TRAFFIC_SHAPES), m=st.integers(1, 8))
def test_monotone_and_bounded(u, v, shape, m):
    g = make_grid(0, 3, 0.1)
    k = discretize(KernelSpec(shape, m * 0.1), 0.1)
    lo, hi = np.minimum(u, v), np.maximum(u, v)
    cl, ch = convolve(Field(g, lo), k).values, convolve(Field(g, hi), k).values
    assert (cl <= ch + 1e-15).all()
    assert (ch >= 0).all() and (ch <= 1 + 1e-12).all()


@settings(max_examples=50)
@given(u=st.lists(st.floats(0, 1), min_size=30, max_size=30), shift=st.integers(0, 29),
       shape=st.sampled_from(TRAFFIC_SHAPES), m=st.integers(1, 8))
def test_periodic_translation_equivariance(u, shift, shape, m):
    g = make_grid(0, 3, 0.1, Boundary.PERIODIC)  # 31 nodes, period 30
    k = discretize(KernelSpec(shape, m * 0.1), 0.1)
    base = np.array(u + [u[0]])
    rolled = np.roll(base[:-1], shift)
    a = convolve(Field(g, np.append(rolled, rolled[0])), k).values[:-1]
    b = np.roll(convolve(Field(g, base), k).values[:-1], shift)
    np.testing.assert_allclose(a, b, atol=1e-14, rtol=0)
