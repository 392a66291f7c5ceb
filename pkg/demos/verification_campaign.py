"""
Randomised checking of the inequalities
=======================================

Each trial draws a weight, an operator and suitable partners (a polynomial
in T for the commuting case, a solution of the sharp-product equation for
the other). Every inequality is evaluated across a grid of alpha values.
"""

from asemi import CampaignConfig, run_campaign

for dim, deficit in [(2, 0), (3, 1), (4, 1)]:
    report = run_campaign(CampaignConfig(trials=5, dim=dim, rank_deficit=deficit, seed=11))
    print(report.summary())
    print()

# the smallest slack seen for one theorem, from a single report
from asemi.inequalities import evaluate_trial, trial_operators

cfg = CampaignConfig(trials=1, dim=3, rank_deficit=0, seed=2)
ctx, T, partners, seed = trial_operators(cfg, 0)
records = evaluate_trial(ctx, T, partners, ["FINAL_UPPER"], cfg.alphas, seed=seed)
tight = min(records, key=lambda r: r["slack"])
print("tightest FINAL_UPPER:", tight)
