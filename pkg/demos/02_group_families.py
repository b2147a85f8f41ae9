"""The five group families and their exact element arithmetic.

Each family stores elements in a normal form, so equality is literal
equality of the stored data and no rewriting system is needed:

  z2     pairs (i, j)                          a^i b^j
  heis   triples (x, y, z)                     a^x b^y c^z, c central
  bs     (num, den_exp, pow) for BS(1,m)       a-part m-adic, b-part a shift
  zwrz   finitely-supported lamp dict + shift  lamplighter over the integers
  metab  freely reduced word                   free metabelian, kept as words
"""

from soficperm import groups as gr

print("-- z2: the free abelian rank-2 group --")
g = gr.eval_word(gr.genword([("a", 2), ("b", 1), ("a", -1)]), "z2")
print("a^2 b a^-1 normalizes to", g)

print()
print("-- heis: commutators land in the center --")
a = gr.generator("heis", "a")
b = gr.generator("heis", "b")
comm = gr.mul(gr.mul(a, b), gr.mul(gr.inverse(a), gr.inverse(b)))
print("[a, b] =", comm, "  (the central generator)")
print("[a, b] commutes with a:",
      gr.mul(comm, a) == gr.mul(a, comm))

print()
print("-- bs: b conjugates a to a^m --")
m = 2
x = gr.generator("bs", "a", m=m)
t = gr.generator("bs", "b", m=m)
conj = gr.mul(gr.inverse(t), gr.mul(x, t))
print(f"m = {m}:  b^-1 a b =", conj, "= a^m:", conj == gr.elem_power(x, m))

print()
print("-- zwrz: lamps on an integer street --")
lamp = gr.generator("zwrz", "a")
shift = gr.generator("zwrz", "b")
w = gr.mul(shift, gr.mul(lamp, gr.mul(shift, lamp)))
print("b a b a =", w)
shift5 = gr.elem_power(shift, 5)
lamp5 = gr.mul(shift5, gr.mul(lamp, gr.inverse(shift5)))  # lit at position 5
print("lamp at 0 commutes with lamp at 5:",
      gr.mul(lamp, lamp5) == gr.mul(lamp5, lamp))
print("but not with the shift:",
      gr.mul(lamp, shift) != gr.mul(shift, lamp))

print()
print("-- metab: reduced words, trivial only when empty --")
w = gr.eval_word(gr.genword([("a", 1), ("b", 1), ("b", -1), ("a", 2)]), "metab")
print("a b b^-1 a^2 reduces to", w)

print()
print("-- balls around the identity --")
for family in gr.FAMILIES:
    mm = 2 if family == "bs" else None
    sizes = [len(list(gr.ball(family, r, m=mm))) for r in (1, 2, 3)]
    print(f"{family:>6}: |ball(1..3)| = {sizes}")

print()
print("-- abelianization (exponent sums) --")
w = gr.genword([("a", 3), ("b", -1), ("a", -1), ("b", 2)])
for family in ("z2", "heis", "zwrz", "metab"):
    g = gr.eval_word(w, family)
    print(f"{family:>6}: {gr.abelianization(g)}")
