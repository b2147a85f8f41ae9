"""Finding permutations of bounded order that intertwine two others.

Given alpha, beta in Sym(n) and an order bound k, the searches look for f
with f^k = id maximizing |{x : f(alpha(x)) = beta(f(x))}|.  A perfect f
conjugates alpha to beta; how close you can get, and at what n, is the
quantitative question the rest of the package feeds.
"""

from soficperm import approx as ap
from soficperm import conjsearch as cs
from soficperm import groups as gr
from soficperm import perm as pm

# ----------------------------------------------------------------------
# exact constructions, and the arithmetic obstruction that limits them
# ----------------------------------------------------------------------
print("multiplicative conjugators f(x) = l*x for (+p -> +q), order k:")
for (n, p, q, k) in [(13, 1, 5, 4), (7, 1, 2, 2), (10, 1, 2, 4)]:
    f = cs.exact_multiplicative(n, p, q, k)
    if f is None:
        print(f"  n={n:>2} p={p} q={q} k={k}:  none exists"
              f"  (q^k - p^k = {q**k - p**k}, not divisible by {n})")
    else:
        prob = cs.translation_problem(n, p, q, k)
        print(f"  n={n:>2} p={p} q={q} k={k}:  f = {f.images.tolist()}"
              f"  agreement {cs.agreement(f, prob)}/{n}")

print()
print("exhaustive check at n=5, k=2 (all f with f^2 = id):")
for q in range(5):
    prob = cs.translation_problem(5, 1, q, 2)
    rep = cs.brute_force(prob)
    mark = "perfect" if rep.agreement_count == 5 else ""
    print(f"  (+1 -> +{q}): best agreement {rep.agreement_count}/5"
          f"  {mark}")

# ----------------------------------------------------------------------
# seeded hill climbing at sizes where brute force is hopeless
# ----------------------------------------------------------------------
print()
n = 80
prob = cs.multiplication_problem(n, 3, 4)  # alpha = +1, beta = *3, k = 4
rep = cs.local_search(prob, seed=0)
baseline = max(
    cs.agreement(pm.sample_order_k(n, 4, s), prob) for s in range(1000)
)
print(f"local search on (+1 -> *3) mod {n}, k=4, seed 0:")
print(f"  found order-{rep.order_of_f} f with agreement"
      f" {rep.agreement_count}/{n} after {rep.iterations} steps")
print(f"  best of 1000 uniform order-4 samples: {baseline}/{n}")

# ----------------------------------------------------------------------
# aligning two approximations of the same group
# ----------------------------------------------------------------------
print()
spec1 = ap.make_approx("z2", 9, p=1, q=2)
sigma = pm.Perm([3, 1, 4, 0, 8, 2, 7, 6, 5])
spec2 = ap.conjugate_spec(spec1, sigma)  # same map, relabelled points
align = cs.align(spec1, spec2, gr.ball("z2", 2))
print("aligning a relabelled copy of a z2 approximation:")
print(f"  recovered tau = {align.tau.images.tolist()}")
print(f"  relabelling   = {sigma.images.tolist()}")
print(f"  max distance after alignment: {align.max_distance}")
