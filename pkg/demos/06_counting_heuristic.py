"""Back-of-envelope counting: can order-k permutations with prescribed
almost-conjugation behavior exist at all for large n?

P = (number of f with f^k = id) / n!  shrinks superexponentially, while
K = n!^(2 eps + eps') counts the tolerance window an approximate
intertwiner is allowed.  The product P*K is modeled by
n log n * (2 eps + eps' - 1/k); a negative coefficient says tolerance
does not rescue the count.
"""

from fractions import Fraction

from soficperm import heuristic as hs

eps = Fraction(1, 100)
rep = hs.heuristic_report(100, 4, eps, eps)

digits = str(rep.count)
print("n=100, k=4, eps = eps' = 1/100:")
print(f"  #(order dividing 4) = {digits[:12]}... ({len(digits)} digits)")
print(f"  log P   = {float(rep.log_P):.6f}")
print(f"  log K   = {float(rep.log_K):.6f}")
print(f"  log P*K = {float(rep.log_PK):.6f}  (< 0: sparse)")
print(f"  model coefficient 2e + e' - 1/k = {rep.pk_model_coeff}"
      f" = {float(rep.pk_model_coeff)}")
print(f"  modeled log P*K = {float(rep.log_PK_model):.6f}")

print()
print("the count ratio log #/log n! drifts toward 1 - 1/k = 0.75:")
for n in (25, 50, 100, 200, 400, 800):
    r = hs.heuristic_report(n, 4, eps, eps)
    print(f"  n={n:>4}: ratio = {float(r.asymptotic_ratio):.6f}")

print()
print("generous tolerance flips the sign:")
for e in (Fraction(1, 100), Fraction(1, 20), Fraction(1, 10), Fraction(1, 5)):
    r = hs.heuristic_report(100, 4, e, e)
    sign = "negative" if r.pk_model_coeff < 0 else "positive"
    print(f"  eps = {str(e):>5}: coefficient {str(r.pk_model_coeff):>7}"
          f"  ({sign})")
