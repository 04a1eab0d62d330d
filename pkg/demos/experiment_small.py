"""A miniature satisfaction-rate grid (the full defaults take minutes;
this runs in seconds and prints the same layout).

Uniform random selections on clustered planar data fail proportionality
often; the default-coalition audit is consistently the more permissive
of the two, in every cell, by construction.
"""

from propaudit import ExperimentConfig, run_experiment

cfg = ExperimentConfig(n_values=(20, 50), g_values=(4, 5, 6),
                       instances_per_cell=10, selections_per_instance=200,
                       master_seed=20260809)
report = run_experiment(cfg)

print(f"{'n':>4} {'g':>3} {'mpjr+':>8} {'dc-mpjr+':>9}")
for n in cfg.n_values:
    for g in cfg.g_values:
        mp = report.rate(n, g, "mpjr+")
        dc = report.rate(n, g, "dc-mpjr+")
        bar = "#" * round(40 * dc)
        print(f"{n:>4} {g:>3} {mp:>8.1%} {dc:>9.1%}  {bar}")

print()
print("tab-separated bar data (one block per g):")
print(report.plot_data())
