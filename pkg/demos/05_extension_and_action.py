"""Order-k extensions, the slot map into G^k, and concrete five-generator
actions on p^4 points.

The extension adjoins a letter t with t^k = 1 that conjugates the <b> side
of each copy of G onto the <a> side of the next, arranged in a cycle.  The
slot map mubar shows why a group retraction onto <a> x <b> makes the cyclic
arrangement consistent; the action tables then realize generators
a, b, c, d, t as honest permutations and test their relations.
"""

from soficperm import groups as gr
from soficperm import higman as hg

print("== the presentation ==")
pres = hg.hig_presentation(4, "zwrz")
print(f"k = {pres.k}, base family = {pres.family}")
print("copies (a_i, b_i), b_i shared with a_i+1 around the cycle:")
for i, pair in enumerate(pres.copy_generators()):
    print(f"  copy {i}: {pair}")
print("extension relators:", [str(w) for w in pres.extension_relators])

print()
print("== the slot map ==")
g = gr.eval_word(gr.genword([("a", 2), ("b", -1)]), "heis")
print(f"g = {g} placed in slot 1 of 4:")
for s, entry in enumerate(hg.mubar(g, 1, 4)):
    print(f"  slot {s}: {entry}")
print("consistency across the seam: mubar(b, 2, 4) == mubar(a, 3, 4):",
      hg.mubar(gr.generator("heis", "b"), 2, 4)
      == hg.mubar(gr.generator("heis", "a"), 3, 4))

print()
print("== action tables on p^4 points ==")
p = 3
f_table, lam_table = hg.random_tables(p, seed=0)
print(f"p = {p}, f = {list(f_table)}, lambda = {list(lam_table)}")
act = hg.make_action(p, f_table, lam_table)
report = hg.verify_action(act, window=3)
print(f"t has order 4: {report.t_order_ok}")
print(f"t cycles the generators as {report.t_cycle}")
for check in report.checks[:6]:
    print(f"  {check.name}: {'ok' if check.ok else check.witness}")
print(f"  ... {len(report.checks)} checks, passed={report.passed}")

print()
print("== probing for collapses ==")
print("degenerate tables (all-ones) at p=3 satisfy extra identities:")
act_deg = hg.make_action(3, [1, 1, 1], [1, 1, 1])
for g in hg.injectivity_probe(act_deg, 3):
    print(f"  {g} acts trivially")
print("generic tables show none up to depth 3:",
      hg.injectivity_probe(act, 3))
