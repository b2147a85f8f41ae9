"""Tour of the permutation layer: composition, cycles, and the normalized
Hamming metric that everything else in the package is measured in.

Run with:  python3 demos/01_permutations_and_metric.py
"""

from random import Random

from soficperm import (
    Perm, compose, inverse, power, hamming, cycle_decomposition, order_of,
    count_order_dividing, sample_order_k,
)

rng = Random(0)


def shuffle(n):
    images = list(range(n))
    rng.shuffle(images)
    return Perm(images)


print("== basic arithmetic ==")
rho = Perm.from_cycles(5, [(0, 1, 2)])
sigma = Perm.from_cycles(5, [(1, 3), (2, 4)])
print("rho           =", rho.images.tolist())
print("sigma         =", sigma.images.tolist())
print("rho o sigma   =", compose(rho, sigma).images.tolist())
print("rho^-1        =", inverse(rho).images.tolist())
print("rho^3 (= id)  =", power(rho, 3).images.tolist())
print("cycles(sigma) =", cycle_decomposition(sigma).cycles,
      " order =", order_of(sigma))

print()
print("== normalized Hamming distance ==")
n = 50
a, b, t = shuffle(n), shuffle(n), shuffle(n)
print(f"d(a, b) = {hamming(a, b)}  (exact fraction of moved points)")
print("bi-invariance: d(ta, tb) =", hamming(compose(t, a), compose(t, b)))
conj = compose(inverse(t), compose(a, t))
print("conjugation-invariance: d(a^t, id) =", hamming(conj, Perm.identity(n)),
      "= d(a, id) =", hamming(a, Perm.identity(n)))

# distances to the identity control products: a handy telescoping bound
prod = compose(a, b)
lhs = hamming(Perm.identity(n), prod)
rhs = hamming(Perm.identity(n), a) + hamming(Perm.identity(n), b)
print(f"d(id, ab) = {lhs} <= d(id,a) + d(id,b) = {rhs}")

print()
print("== how many permutations have f^k = id? ==")
print("n\\k |", "  ".join(f"{k:>6}" for k in (2, 3, 4, 6)))
for m in range(1, 9):
    row = [count_order_dividing(m, k) for k in (2, 3, 4, 6)]
    print(f"{m:>3} |", "  ".join(f"{c:>6}" for c in row))

print()
print("uniform samples with f^4 = id in Sym(10), three seeds:")
for seed in range(3):
    f = sample_order_k(10, 4, seed)
    print(f"  seed {seed}: {f.images.tolist()}"
          f"  cycles={cycle_decomposition(f).cycles}")
