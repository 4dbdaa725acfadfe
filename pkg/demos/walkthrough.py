"""Follow the decision procedure on the four-letter example, one stage at a time.

    python3 demos/walkthrough.py
"""

from selfinduced import Endomorphism, decide, detect_singularities
from selfinduced.decision import DecisionState, base_automorphism, induction_step
from selfinduced.graphs import build_graphs, derive_pair

psi = Endomorphism.from_strings({"a": "bdacda", "b": "bdbda", "c": "ccda", "d": "cda"})

detection = detect_singularities(psi)
print(f"singularities at power k = {detection.k}")
for s in detection.singularities:
    labels = [" | ".join(sorted(src)) for src in s.sources]
    print(f"  {s.ident} {s.kind:8} w = {str(s.w) or 'ε'}")
    for label in labels:
        print(f"      {label}")

forward, backward = build_graphs(detection.singularities, psi.alphabet)
print("\nforward graph: ", [(e.x, e.y, e.label) for e in forward.edges])
print("backward graph:", [(e.x, e.y, e.label) for e in backward.edges])
pair = derive_pair(forward, backward)
print("pair:", pair)

cand, orientation, _ = base_automorphism(psi, detection.k, detection.singularities, pair)
print(f"\nbase automorphism ({orientation}, conjugator {cand.conjugator}):")
for x, img in cand.automorphism.as_strings().items():
    print(f"  {x} -> {img}")

state = DecisionState(0, cand.automorphism, pair, detection.singularities, [], [pair])
print("\nstage  pair        twist   remainder")
done = False
while not done:
    before = state.pair
    out = induction_step(state)
    state, done = out.state, out.done
    print(f"{state.stage - 1:5}  {before}  {state.twists[-1]!s:6}  {state.remainder}")

report = decide(psi)
print("\nverdict:", report.verdict)
print("lengths:", {x: round(v, 6) for x, v in report.lengths.items()})
print("dilation:", round(report.eta, 6))
print("numeric check:", report.diagnostics["verification"])
