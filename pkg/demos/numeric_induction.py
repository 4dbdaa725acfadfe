"""Numeric Rauzy induction on a three-interval exchange and on its flipped pair.

    python3 demos/numeric_induction.py
"""

import math

from selfinduced import Ciet, PermutationPair, detect_self_induction, simulate

eta = 2 + math.sqrt(3)
lengths = {"a": 2 * eta - 1, "b": eta, "c": 2 * eta}


def show(c, steps):
    print(f"start  {c.pair}  {[round(v, 6) for v in c.lengths]}")
    for i, st in enumerate(simulate(c, steps).steps, 1):
        print(f"{i:5}  {st.ciet.pair}  {[round(v, 6) for v in st.ciet.lengths]}  type {st.kind}  {st.twist}")


c = Ciet.build(PermutationPair.parse("abc/cab"), lengths)
show(c, 5)
found = detect_self_induction(c)
print(f"self-induced after {found.steps} steps, lengths scaled by 1/{found.dilation:.6f} (eta = {eta:.6f})\n")

flipped = Ciet.build(c.pair.mirror(), lengths)
show(flipped, 10)
print("flipped pair returns to itself:", detect_self_induction(flipped, 50) is not None)
later = simulate(flipped, 5).steps[-1].ciet
found = detect_self_induction(later, 50)
print(f"but from step 5 on the trajectory has period {found.steps}")
