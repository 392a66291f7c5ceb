import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from asemi import (CampaignConfig, TheoremId, a_adjoint, a_inner, a_norm_vec, attainment_gap, commuting_partner,
                   evaluate_bound, make_context, minimize_over_alpha, random_a_unitary, random_ba_operator,
                   random_positive, run_campaign, sharp_partner)
from asemi.errors import AlphaOutOfRange, PreconditionUnmet
from asemi.inequalities import (ALL_THEOREMS, Evaluator, Part, buzano_sides, evaluate_trial, golden_section,
                                trial_operators)
from asemi.seminorms import a_numerical_radius
from conftest import random_complex

SQUARE_EXAMPLE = (6 * math.sqrt(2) + 20) / 13
SQUARE_BASELINE = (3 + math.sqrt(2)) / 2


def test_cartesian_upper_example(pair):
    ctx, T = pair
    rep = evaluate_bound("CARTESIAN_UPPER", ctx, T, alpha=7 / 8)
    assert rep.rhs == pytest.approx(23 / 8, abs=1e-12)
    assert rep.extras["baseline"] == pytest.approx(3.0, abs=1e-12)
    assert rep.verdict == "pass" and rep.slack > 0


def test_square_example(pair):
    ctx, T = pair
    rep = evaluate_bound(TheoremId.WA2_HALF, ctx, T, alpha=12 / 13)
    assert rep.rhs == pytest.approx(SQUARE_EXAMPLE, abs=1e-10)
    assert rep.extras["baseline"] == pytest.approx(SQUARE_BASELINE, abs=1e-10)
    assert rep.passed


def test_square_of_example_operator(pair):
    ctx, T = pair
    assert a_numerical_radius(ctx, T @ T).value == pytest.approx(math.sqrt(2), abs=1e-12)


@pytest.mark.parametrize("theorem", ["WA_MIN_ALPHA_CARTESIAN", "WA_MIN_ALPHA_FINAL"])
def test_min_over_alpha_two_thirds(pair, theorem):
    ctx, T = pair
    a_star, value = minimize_over_alpha(theorem, ctx, T)
    assert a_star == pytest.approx(2 / 3, abs=1e-6)
    assert value == pytest.approx(8 / 3, abs=1e-9)
    # 1-d grid oracle on the closed-form diagonal norms
    grid = np.linspace(0, 1, 300001)
    if theorem == "WA_MIN_ALPHA_CARTESIAN":
        g = np.maximum.reduce([4 - 2 * grid, 2 + grid, grid])
    else:
        g = np.maximum.reduce([4 * grid, 4 - 2 * grid, 2 - 2 * grid])
    assert value <= g.min() + 1e-9


def test_min_over_alpha_square(pair):
    ctx, T = pair
    a_star, value = minimize_over_alpha("WA_MIN_ALPHA_SQUARE", ctx, T)
    w = math.sqrt(6) / 2
    grid = np.linspace(0, 1, 200001)
    # diag(4,6,2) sum, gram diag(4,2,0)
    g = grid / 2 * math.sqrt(2) + np.maximum.reduce([4 - 3 * grid, 2 - grid / 2, grid / 2])
    assert value == pytest.approx(g.min(), abs=1e-8)
    assert w * w <= value < SQUARE_BASELINE - 1e-6


@pytest.mark.parametrize("theorem", ["WA_MIN_ALPHA_CARTESIAN", "WA_MIN_ALPHA_SQUARE", "WA_MIN_ALPHA_FINAL"])
def test_min_over_alpha_identity(theorem):
    ctx = make_context(np.eye(3))
    a_star, value = minimize_over_alpha(theorem, ctx, np.eye(3))
    assert 0 <= a_star <= 1
    expected = 1.0 if theorem != "WA_MIN_ALPHA_SQUARE" else 1.0  # w(I^2)/2 + 1/2 at alpha = 1 also equals 1
    assert value == pytest.approx(expected, abs=1e-12)


def test_min_over_alpha_rejects_other_theorems(pair):
    with pytest.raises(ValueError):
        minimize_over_alpha("EQUIV_W", *pair)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2), st.integers(0, 2**32 - 1))
def test_min_over_alpha_properties(n, deficit, seed):
    ctx = make_context(random_positive(n, min(deficit, n - 1), seed))
    T = random_ba_operator(ctx, seed + 1)
    ev = Evaluator(ctx, T)
    w2 = ev.t.w ** 2
    for th in (TheoremId.WA_MIN_ALPHA_CARTESIAN, TheoremId.WA_MIN_ALPHA_SQUARE, TheoremId.WA_MIN_ALPHA_FINAL):
        a_star, value = ev.minimize_over_alpha(th)
        g = ev.rhs_function(th)
        assert 0 <= a_star <= 1
        assert value <= g(np.linspace(0, 1, 11)).min() + 1e-8
        assert value >= w2 - 1e-7 * (1 + w2)
        rep = evaluate_bound(th, ctx, T, evaluator=ev)
        assert rep.passed, rep


def test_golden_section_quadratic():
    # a smooth minimum is only resolvable to ~sqrt(eps) in x
    x, fx = golden_section(lambda t: (t - 0.3) ** 2 + 1, 0.0, 1.0)
    assert x == pytest.approx(0.3, abs=1e-7) and fx == pytest.approx(1.0, abs=1e-15)
    x, fx = golden_section(lambda t: abs(t - 0.3), 0.0, 1.0)
    assert x == pytest.approx(0.3, abs=1e-10)


def test_buzano_equality_configuration():
    ctx = make_context(random_positive(3, 1, 4))
    e = ctx.lift(np.array([1.0, 0.0]))
    lhs, rhs = buzano_sides(ctx, e, e, e)
    assert lhs == pytest.approx(1.0) and rhs == pytest.approx(1.0)


def test_buzano_random_triples():
    rng = np.random.default_rng(0)
    for i in range(100):
        ctx = make_context(random_positive(4, i % 2, i))
        a, b, e = random_complex(rng, (3, 4))
        e = e / a_norm_vec(ctx, e)
        lhs, rhs = buzano_sides(ctx, a, b, e)
        assert lhs <= rhs + 1e-10


def test_buzano_report(pair):
    ctx, T = pair
    rep = evaluate_bound("BUZANO", ctx, T, alpha=0.3)
    assert rep.alpha is None and rep.passed


def test_equiv_w_endpoint_is_tight(pair):
    ctx, T = pair
    rep = evaluate_bound("EQUIV_W", ctx, T, alpha=1.0)
    assert rep.slack == pytest.approx(0.0, abs=1e-15)
    assert rep.lhs == pytest.approx(math.sqrt(6) / 2, abs=1e-12)


def test_lower_max4_branches_individually():
    ctx = make_context(random_positive(4, 1, 3))
    T = random_ba_operator(ctx, 5, null_coupling=True)
    for a in (0.0, 0.3, 0.8, 1.0):
        rep = evaluate_bound("LOWER_MAX4", ctx, T, alpha=a)
        assert len(rep.parts) == 4
        for p in rep.parts:
            assert p.lhs <= p.rhs + 1e-7 * (1 + p.rhs)


def test_alpha_required(pair):
    with pytest.raises(AlphaOutOfRange):
        evaluate_bound("FINAL_UPPER", *pair)


def test_product_preconditions(pair):
    ctx, T = pair
    S = random_ba_operator(ctx, 1)
    with pytest.raises(PreconditionUnmet):
        evaluate_bound("PROD_MIN3", ctx, T, None, 0.5)
    with pytest.raises(AlphaOutOfRange):
        evaluate_bound("PROD_MIN3", ctx, T, S, 1.0)
    with pytest.raises(PreconditionUnmet):
        evaluate_bound("PROD_COMMUTE", ctx, T, S, 0.5)
    with pytest.raises(PreconditionUnmet):
        evaluate_bound("PROD_SHARP", ctx, T, S, 0.5)
    assert evaluate_bound("PROD_MIN3", ctx, T, S, 0.5).passed


@pytest.mark.parametrize("seed", range(5))
def test_partners_satisfy_hypotheses(seed):
    ctx = make_context(random_positive(4, seed % 2, seed))
    T = random_ba_operator(ctx, seed + 10, null_coupling=bool(seed % 2))
    C = commuting_partner(ctx, T, seed)
    assert np.linalg.norm(T.T @ C.T - C.T @ T.T, 2) <= 1e-9 * (1 + np.linalg.norm(T.T, 2) ** 3)
    S = sharp_partner(ctx, T, seed)
    lhs = a_adjoint(ctx, T.T @ S.T).adjoint
    assert np.linalg.norm(lhs - T.adjoint @ S.T, 2) <= 1e-9 * (1 + np.linalg.norm(T.T, 2))
    assert np.linalg.norm(S.T, 2) > 1e-3  # non-trivial
    for a in (0.0, 0.5, 0.9):
        assert evaluate_bound("PROD_COMMUTE", ctx, T, C, a).passed
        assert evaluate_bound("PROD_SHARP", ctx, T, S, a).passed


def test_attainment_gap_examples(pair):
    ident = make_context(np.eye(2))
    assert attainment_gap(ident, np.diag([2.0, 1.0]), 0.5) == pytest.approx(0.0, abs=1e-9)
    assert attainment_gap(ident, np.eye(2), 0.3) == pytest.approx(0.0, abs=1e-12)
    ctx, T = pair
    gaps = [attainment_gap(ctx, T, 0.5, seed=s) for s in range(3)]
    assert min(gaps) >= -1e-7
    assert max(gaps) - min(gaps) <= 1e-6
    with pytest.raises(AlphaOutOfRange):
        attainment_gap(ctx, T, 0.0)
    with pytest.raises(AlphaOutOfRange):
        attainment_gap(ctx, T, 1.0)


def test_attainment_shared_witness_diagnostic():
    ident = make_context(np.eye(2))
    rep = evaluate_bound("ATTAINMENT_GAP", ident, np.diag([2.0, 1.0]), alpha=0.5)
    assert rep.extras["shared_witness"] is True


def test_unitary_invariance_reports(pair):
    ctx, T = pair
    U = random_a_unitary(ctx, 3)
    rep = evaluate_bound("UNITARY_INVARIANCE", ctx, T, U, 0.4)
    assert rep.passed and abs(rep.slack) <= 1e-6
    assert len(evaluate_bound("UNITARY_INVARIANCE", ctx, T).parts) == 6
    with pytest.raises(PreconditionUnmet):
        evaluate_bound("UNITARY_INVARIANCE", ctx, T, 2 * np.eye(3), 0.4)


def test_verdict_rerun_and_classification(pair, monkeypatch):
    ctx, T = pair
    calls = []

    def failing(self, theorem, alpha, S=None):
        calls.append(self.effort.grid)
        return [Part("forced", 2.0, 1.0)], {}

    monkeypatch.setattr(Evaluator, "parts", failing)
    rep = evaluate_bound("EQUIV_W", ctx, T, alpha=0.5)
    assert rep.verdict == "violation" and len(calls) == 2 and calls[1] == 8 * calls[0]
    assert rep.effort["pass"] == "8x"
    rep = evaluate_bound("EQUIV_W", ctx, T, alpha=0.5, rerun=False)
    assert rep.verdict == "inconclusive"


def test_verdict_tolerance_edge(pair, monkeypatch):
    ctx, T = pair
    monkeypatch.setattr(Evaluator, "parts", lambda self, th, a, S=None: ([Part("edge", 1.0 + 1e-8, 1.0)], {}))
    assert evaluate_bound("EQUIV_W", ctx, T, alpha=0.5).verdict == "pass"


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 4), st.integers(0, 1), st.integers(0, 2**32 - 1), st.sampled_from([0.0, 0.35, 0.875, 1.0]))
def test_every_theorem_holds_on_random_input(n, deficit, seed, alpha):
    cfg = CampaignConfig(trials=1, dim=n + deficit, rank_deficit=deficit, seed=seed)
    ctx, T, partners, opt_seed = trial_operators(cfg, 0)
    recs = evaluate_trial(ctx, T, partners, ALL_THEOREMS, [alpha], seed=opt_seed)
    bad = [r for r in recs if r["verdict"] != "pass"]
    assert not bad


def test_campaign_small_example():
    cfg = CampaignConfig(trials=10, dim=2, rank_deficit=0, seed=1, alphas=(0, 0.25, 0.5, 0.75, 1))
    rep = run_campaign(cfg)
    assert rep.ok and not rep.errors
    assert set(rep.counts) == {str(t) for t in ALL_THEOREMS}
    assert all(c["pass"] > 0 for c in rep.counts.values())


def test_campaign_deterministic():
    cfg = CampaignConfig(trials=3, dim=3, rank_deficit=1, seed=5)
    assert run_campaign(cfg).to_json() == run_campaign(cfg).to_json()


def test_campaign_zero_trials():
    rep = run_campaign(CampaignConfig(trials=0, dim=2))
    assert rep.ok and rep.trials_run == 0


def test_zero_operators_pass():
    ctx = make_context(random_positive(3, 0, 1))
    Z = np.zeros((3, 3))
    partners = {TheoremId.PROD_MIN3: Z, TheoremId.PROD_COMMUTE: Z, TheoremId.PROD_SHARP: Z}
    recs = evaluate_trial(ctx, Z, partners, ALL_THEOREMS, [0.0, 0.5, 1.0])
    assert all(r["verdict"] == "pass" for r in recs)
    assert all(r["slack"] == pytest.approx(r["rhs"]) for r in recs)
    assert all(r["rhs"] >= 0 for r in recs)


def test_config_validation():
    with pytest.raises(ValueError):
        CampaignConfig(trials=1, dim=2, rank_deficit=2)
    with pytest.raises(ValueError):
        CampaignConfig(trials=-1, dim=2)
    with pytest.raises(AlphaOutOfRange):
        CampaignConfig(trials=1, dim=2, alphas=(1.5,))
    with pytest.raises(ValueError):
        CampaignConfig(trials=1, dim=2, theorems=("NOPE",))
