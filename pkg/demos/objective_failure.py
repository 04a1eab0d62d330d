"""Reproduce the one-dimensional construction where the k-median optimum
starves a compact majority group.

Twenty agents sit around candidate a0, ten more split across two distant
sites b1 and b2.  Exhaustive k-median hands the compact group a single
center (cheapest in aggregate), which the proportionality audits reject;
swapping to {a1, a2, b1} satisfies both audits at a higher cost.
"""

from itertools import combinations

from propaudit import (fixture_objective_failure, kmedian_cost,
                       kmedian_exhaustive, kmeans_lloyd_snapped,
                       verify_dc_mpjr_plus, verify_mpjr_plus_smallk)

inst = fixture_objective_failure()
names = ["a0", "a1", "a2", "b1", "b2"]

print("k-median cost of every 3-subset:")
for subset in combinations(range(5), 3):
    label = "{" + ", ".join(names[c] for c in subset) + "}"
    print(f"  {label:<16} cost {kmedian_cost(inst, subset):8.1f}")

opt = kmedian_exhaustive(inst)
print()
print("exhaustive optimum:", "{" + ", ".join(names[c] for c in opt) + "}")
dc = verify_dc_mpjr_plus(inst, opt)
print("  default-coalition audit:", dc.status,
      f"(witness: center {names[dc.witness.center]}, level {dc.witness.level})")
print("  anchored audit:", verify_mpjr_plus_smallk(inst, opt).status)

good = (1, 2, 3)
print()
print("proportional alternative {a1, a2, b1}:",
      f"cost {kmedian_cost(inst, good):.1f}")
print("  default-coalition audit:", verify_dc_mpjr_plus(inst, good).status)
print("  anchored audit:", verify_mpjr_plus_smallk(inst, good).status)

km = kmeans_lloyd_snapped(inst, seed=6)
print()
print("snapped Lloyd (seed 6):", "{" + ", ".join(names[c] for c in km) + "}",
      "->", verify_dc_mpjr_plus(inst, km).status)
