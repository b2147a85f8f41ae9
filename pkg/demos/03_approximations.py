"""Building finite approximations of the group families and checking, with
exact arithmetic, how good they are.

An (S, delta, n)-approximation sends group elements to permutations of n
points such that (1) multiplication is respected up to Hamming distance
delta on S, and (2) nontrivial elements of S stay far from the identity.
The maps built here satisfy (1) with defect exactly zero; all the tension
is in (2), and that is where finite orbits bite.
"""

from fractions import Fraction

from soficperm import approx as ap
from soficperm import groups as gr
from soficperm import perm as pm

print("== z2 on 10 points: a -> x+2, b -> x+3 ==")
spec = ap.make_approx("z2", 10, p=2, q=3)
ball2 = gr.ball("z2", 2)
report = ap.verify(spec, ball2, "1/10")
print(f"ball(2): passed={report.passed}  hom_defect={report.worst_hom_defect}"
      f"  id_closeness={report.worst_id_closeness}")

# widen the window and the finite orbit is found out: some nontrivial
# word lands exactly on the identity permutation
report5 = ap.verify(spec, gr.ball("z2", 5), "1/10")
print(f"ball(5): passed={report5.passed}  witness={report5.id_witness}"
      f"  d(psi(witness), id)={report5.worst_id_closeness}")

print()
print("== the same group on 11 points has no shallow collisions ==")
spec11 = ap.make_approx("z2", 11, p=2, q=3)
for r in (2, 3, 4):
    rep = ap.verify(spec11, gr.ball("z2", r), "1/10")
    print(f"  ball({r}): passed={rep.passed}")

print()
print("== amplification: reuse a small approximation on more points ==")
base = ap.make_approx("z2", 11, p=2, q=3)
for n in (25, 38, 100):
    amp = ap.amplify_spec(base, n)
    q = n // base.npoints
    delta = Fraction(1, 10) + Fraction(1, q + 1)
    rep = ap.verify(amp, ball2, delta)
    print(f"  n={n:>3}: blocks={q}  verify at delta={delta}: "
          f"passed={rep.passed}  id_closeness={rep.worst_id_closeness}")

print()
print("== Heisenberg: the center survives, until its order runs out ==")
h = ap.make_approx("heis", 7)
comm = gr.genword([("a", 1), ("b", 1), ("a", -1), ("b", -1)])
c = gr.eval_word(comm, "heis")  # the central generator, as a commutator
ident = pm.Perm.identity(h.npoints)
print(f"  on {h.npoints} points, d(psi(c), id) ="
      f" {pm.hamming(ap.eval(h, c), ident)}")
c7 = gr.elem_power(c, 7)
print(f"  but d(psi(c^7), id) = {pm.hamming(ap.eval(h, c7), ident)}"
      "  (the finite orbit closes up)")

print()
print("== fixed points of Heisenberg images ==")
for (n, lam, mu, nu) in [(9, 2, 1, 1), (9, 0, 3, 0), (12, 1, 0, 0)]:
    rep = ap.heis_fixed_bound(n, lam, mu, nu)
    verdict = rep.bound_ok if rep.bound_ok is not None else "reported only"
    print(f"  n={n} (lam,mu,nu)=({lam},{mu},{nu}): fixed={rep.count}"
          f"  bound={rep.bound}  ok={verdict}")

print()
print("== the polynomial certificate behind multiplicative maps ==")
# f(x) = l*x conjugates +1 to *m exactly when l^k = 1; the certificate
# asks for low polynomials with no roots hitting 0 mod n
res = ap.check_poly_condition(11, 2, 2)
print(f"  n=11, m=2, C=2: ok={res.ok}")
res = ap.check_poly_condition(9, 2, 4)
print(f"  n=9,  m=2, C=4: ok={res.ok}  witness={res.witness}"
      f"  value={res.witness_value}")
