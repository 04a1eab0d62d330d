"""Trace the expanding-approvals rule on a small planar instance.

Each agent starts with one unit of budget (stored k-scaled, so integer
arithmetic is exact throughout).  As the radius grows, the first ball
holding a quota's worth of weight opens a center and its agents pay for
it.  The resulting selection provably passes the anchored audit.
"""

import numpy as np

from propaudit import Instance, run_sear, verify_dc_mpjr_plus, verify_mpjr_plus_smallk
from propaudit.gen import substream

rng = substream(2, "sear-demo")
n, m, k = 12, 6, 3
agents = np.vstack([rng.random((4, 2)) * 0.2,
                    rng.random((4, 2)) * 0.2 + [0.8, 0.0],
                    rng.random((4, 2)) * 0.2 + [0.4, 0.8]])
candidates = rng.random((m, 2))
inst = Instance.euclidean(agents, candidates, k)

result = run_sear(inst)
print(f"selected centers: {result.selection}")
for step in result.trace:
    paying = ", ".join(f"agent {a} pays {t}/{k}" for a, t in step.charges)
    print(f"  opened candidate {step.candidate} at radius {step.radius:.4f}: {paying}")

print()
print("audits of the returned selection:")
print("  anchored (mPJR+)        :", verify_mpjr_plus_smallk(inst, result.selection).status)
print("  default coalitions (DC) :", verify_dc_mpjr_plus(inst, result.selection).status)
