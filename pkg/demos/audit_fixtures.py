"""Walk through the two six-agent fixtures on which the default-coalition
audit and metric PJR give opposite answers.

Both instances have six agents, k = 3, and 1-or-2 valued distances.  In
the first, every agent is close to both unselected candidates, so every
default coalition is the full agent set and is well covered, while a
hand-picked coalition of four agents still lacks representation.  In
the second, the tight radius-1 ball around the unselected candidate z is
exactly the starved group.
"""

from propaudit import (fixture_incomparability, oracle_mpjr,
                       verify_dc_mpjr_plus, verify_mpjr_plus_smallk)

for which in (1, 2):
    inst, selection = fixture_incomparability(which)
    names = inst.candidate_names
    print(f"=== fixture {which}: candidates {names}, "
          f"selection {[names[c] for c in selection]} ===")

    dc = verify_dc_mpjr_plus(inst, selection)
    mpjr = oracle_mpjr(inst, selection)
    anchored = verify_mpjr_plus_smallk(inst, selection)

    print(f"  default-coalition audit : {dc.status}")
    if dc.witness:
        w = dc.witness
        print(f"      witness: center {names[w.center]}, level {w.level}, "
              f"radius {w.radius}, coalition {sorted(w.coalition)}")
    print(f"  metric PJR (oracle)     : {mpjr.status}")
    if mpjr.witness:
        w = mpjr.witness
        print(f"      witness: radius {w.radius}, level {w.level}, "
              f"coalition {sorted(w.coalition)}")
    print(f"  anchored audit (mPJR+)  : {anchored.status}")
    print()

print("Neither notion implies the other: fixture 1 separates them one way,")
print("fixture 2 the other.")
