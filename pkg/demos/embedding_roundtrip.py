"""Turn an approval election into a metric instance and watch verdicts
transfer.

Approved pairs land at distance 1, disapproved at 2, and same-side
distances are filled with two-hop minima, so any radius in [1, 2)
reproduces the ballots.  A committee violates PJR exactly when the
embedded selection violates metric PJR.
"""

import json

from propaudit import (ApprovalInstance, embed_approval, oracle_mpjr,
                       validate_metric, verify_pjr_bruteforce)

profile = {
    "voters": 6,
    "candidates": 4,
    "approvals": [[0, 1], [0, 1], [0, 1], [0, 1], [2], [3]],
    "k": 3,
}
inst = ApprovalInstance.from_dict(profile)
committee = (1, 2, 3)

print("approval profile:", json.dumps(profile))
print("committee:", committee)
print("PJR verdict:", verify_pjr_bruteforce(inst, committee).status)

embedded = embed_approval(inst)
print()
print("voter-to-candidate block of the embedded metric:")
for row in embedded.dists():
    print("   ", [int(v) for v in row])
print("metric axioms hold:", validate_metric(embedded, check_triangle=True).ok)

metric_verdict = oracle_mpjr(embedded, committee)
print("metric PJR verdict on the embedding:", metric_verdict.status)
if metric_verdict.witness:
    w = metric_verdict.witness
    print(f"  witness: radius {w.radius}, level {w.level}, coalition {sorted(w.coalition)}")
