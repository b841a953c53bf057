import math
import warnings

import pytest
from hypothesis import given, strategies as st

from nlflow import (ConfigurationError, FluxModel, ParameterError, ScenarioSpec, SimConfig,
                    ThresholdKind, Verdict, assess, derivative_extremes, make_grid,
                    threshold_const_a, threshold_const_ab, threshold_lin_ab)
from nlflow.scenario import Constant

# frozen from tests/oracles/high_precision.py (mpmath, 40 digits)
CONST_AB = [((1, 0.5, -1), 3.6213203435596425732), ((1, 1, 0), 2.4142135623730950488),
            ((3, 1.5, -2.0489), 1.2944258933342996216)]
LIN_AB = [((1, 1), 4.5), ((1, 0.5), 6.8078865529319541428), ((3, 1.5), 2.2692955176439847143)]
CONST_A = [((1, -1), 1.2071067811865475244), ((1, -5), 1.5), ((2, 0), 0.6035533905932737622)]
STEEP_SUP = 2.0487905447762703869
TWO_PLATEAUS_SUP, TWO_PLATEAUS_INF = 0.32354789968793833697, -0.47302497400889231338
GAUSS_SUP = 0.30021735973624737877

pairs = st.tuples(st.floats(0.05, 20), st.floats(0.05, 1)).map(lambda p: (p[0], p[0] * p[1]))


@pytest.mark.parametrize("args,expected", CONST_AB)
def test_const_ab_values(args, expected):
    assert threshold_const_ab(*args) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("args,expected", LIN_AB)
def test_lin_ab_values(args, expected):
    assert threshold_lin_ab(*args) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("args,expected", CONST_A)
def test_const_a_values(args, expected):
    assert threshold_const_a(*args) == pytest.approx(expected, abs=1e-12)


def test_closed_forms():
    assert threshold_const_ab(1, 0.5, -1) == pytest.approx(1.5 + 1.5 * math.sqrt(2), abs=1e-12)
    assert threshold_const_ab(1, 1, 0) == pytest.approx(1 + math.sqrt(2), abs=1e-12)


@pytest.mark.parametrize("call", [lambda: threshold_const_ab(0.5, 1, 0), lambda: threshold_lin_ab(1, 0),
                                  lambda: threshold_const_a(-1, 0), lambda: threshold_const_ab(1, 1, math.nan)])
def test_parameter_errors(call):
    with pytest.raises(ParameterError):
        call()


@given(inf_d0=st.floats(-100, 0))
def test_behind_term_raises_threshold(inf_d0):
    assert threshold_const_ab(1, 0.5, inf_d0) > threshold_const_a(1, inf_d0)


@given(p=pairs, a=st.floats(-50, 5), b=st.floats(-50, 5))
def test_const_ab_monotone_and_saturating(p, a, b):
    lo, hi = sorted((a, b))
    assert threshold_const_ab(*p, lo) >= threshold_const_ab(*p, hi)
    knee = -(p[0] + p[1]) / (p[0] * p[1])
    if lo >= knee:
        assert threshold_const_ab(*p, lo) == threshold_const_ab(*p, hi)


@given(p=pairs, frac=st.floats(0, 1))
def test_linear_threshold_exceeds_constant_when_inf_mild(p, frac):
    knee = -(p[0] + p[1]) / (p[0] * p[1])
    assert threshold_lin_ab(*p) > threshold_const_ab(*p, knee * frac)


@given(p=pairs, k=st.floats(0.1, 10))
def test_linear_threshold_scales_inversely(p, k):
    assert threshold_lin_ab(k * p[0], k * p[1]) == pytest.approx(threshold_lin_ab(*p) / k, rel=1e-12)


GRID = make_grid(-15, 10, 0.01)


def test_extremes_constant():
    ext = derivative_extremes(ScenarioSpec.profile([Constant(0.4)]), GRID)
    assert (ext.sup_d0, ext.inf_d0) == (0.0, 0.0)


def test_extremes_single_gaussian():
    from nlflow import Gaussian
    ext = derivative_extremes(ScenarioSpec.profile([Gaussian(0.35, -1.0)]), GRID)
    assert ext.sup_d0 == pytest.approx(GAUSS_SUP, abs=1e-9)
    assert ext.inf_d0 == pytest.approx(-GAUSS_SUP, abs=1e-9)
    assert ext.method == "closed_form"


def test_extremes_steep_plateau():
    g = make_grid(-15, 12, 0.01)
    for closed in (True, False):
        ext = derivative_extremes(ScenarioSpec.preset("steep_plateau"), g, closed_form=closed)
        assert ext.sup_d0 == pytest.approx(STEEP_SUP, abs=1e-3)
        assert ext.inf_d0 == pytest.approx(-STEEP_SUP, abs=1e-3)
    assert ext.method == "finite_difference"


def test_extremes_two_plateaus():
    ext = derivative_extremes(ScenarioSpec.preset("two_plateaus"), GRID)
    assert ext.sup_d0 == pytest.approx(TWO_PLATEAUS_SUP, abs=1e-9)
    assert ext.inf_d0 == pytest.approx(TWO_PLATEAUS_INF, abs=1e-9)


@pytest.mark.parametrize("name", ["two_plateaus", "three_plateaus", "steep_plateau"])
@pytest.mark.parametrize("closed", [True, False])
def test_extremes_converge_under_refinement(name, closed):
    s = ScenarioSpec.preset(name)
    a = derivative_extremes(s, GRID, 10, closed)
    b = derivative_extremes(s, GRID, 20, closed)
    assert abs(a.sup_d0 - b.sup_d0) <= 1e-3 and abs(a.inf_d0 - b.inf_d0) <= 1e-3
    assert a.inf_d0 <= 0 <= a.sup_d0


def test_refine_floor():
    with pytest.raises(ParameterError):
        derivative_extremes(ScenarioSpec.preset("two_plateaus"), GRID, 3)


def _config(scenario, model, grid=GRID):
    return SimConfig(grid, model, scenario, t_end=1.0)


def test_assess_steep_plateau_blows_up():
    rep = assess(_config(ScenarioSpec.preset("steep_plateau"), FluxModel.look_ab(3.0, 1.5),
                         make_grid(-15, 12, 0.01)), "const_ab")
    assert rep.sup_d0 == pytest.approx(STEEP_SUP, abs=1e-6)
    assert rep.rhs == pytest.approx(1.2944172820986674622, abs=1e-6)
    assert rep.verdict is Verdict.BLOWUP_GUARANTEED and rep.hypotheses_met


def test_assess_two_plateaus_inconclusive():
    rep = assess(_config(ScenarioSpec.preset("two_plateaus"), FluxModel.look_ab(1.0, 0.5)), "const_ab")
    assert rep.sup_d0 == pytest.approx(TWO_PLATEAUS_SUP, abs=1e-6)
    assert rep.rhs == pytest.approx(3.6213203435596425732, abs=1e-12)
    assert rep.verdict is Verdict.INCONCLUSIVE


@pytest.mark.parametrize("kind,model", [("const_ab", FluxModel.look_ab(1.0, 0.5)),
                                        ("lin_ab", FluxModel.look_ab(1.0, 0.5, linear=True)),
                                        ("const_a", FluxModel.look_a(1.0))])
def test_assess_constant_data_inconclusive(kind, model):
    rep = assess(_config(ScenarioSpec.profile([Constant(0.3)]), model), kind)
    assert rep.sup_d0 == 0 and rep.rhs > 0
    assert rep.verdict is Verdict.INCONCLUSIVE
    assert rep.model_kind is ThresholdKind(kind)


@pytest.mark.parametrize("kind,model", [("const_ab", FluxModel.look_ab(1.0, 0.5, linear=True)),
                                        ("lin_ab", FluxModel.look_ab(1.0, 0.5)),
                                        ("const_a", FluxModel.look_ab(1.0, 0.5)),
                                        ("const_ab", FluxModel.lwr())])
def test_assess_rejects_mismatched_model(kind, model):
    with pytest.raises(ConfigurationError):
        assess(_config(ScenarioSpec.preset("two_plateaus"), model), kind)


def test_assess_flags_discontinuous_data():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = assess(_config(ScenarioSpec.preset("red_light"), FluxModel.look_ab(1.0, 0.5)), "const_ab")
    assert not rep.hypotheses_met
    assert rep.method == "finite_difference"
    assert any("hypotheses not met" in str(w.message) for w in caught)
    assert "hypotheses_met=false" in rep.as_lines()
