"""Intertwining searches: exact construction, brute force, hill climbing."""

import math
import random
from fractions import Fraction
from itertools import permutations as iterperms

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soficperm import approx as ap
from soficperm import conjsearch as cj
from soficperm import groups as gr
from soficperm import perm as pm
from soficperm.perm import Perm

import oracles as orc


class TestProblems:
    def test_translation_problem(self):
        prob = cj.translation_problem(7, 2, 3, 4)
        assert prob.alpha.tolist() == [(x + 2) % 7 for x in range(7)]
        assert prob.beta.tolist() == [(x + 3) % 7 for x in range(7)]
        assert prob.k == 4

    def test_multiplication_problem_requires_unit(self):
        with pytest.raises(ValueError):
            cj.multiplication_problem(10, 5, 4)

    def test_problem_from_spec(self):
        spec = ap.make_approx("z2", 13, p=1, q=5)
        prob = cj.problem_from_spec(spec, 4)
        assert prob.alpha == spec.psi_a
        assert prob.beta == spec.psi_b

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError):
            cj.ConjProblem(5, 2, Perm.identity(5), Perm.identity(4))


@given(st.integers(2, 9).flatmap(
    lambda n: st.tuples(
        st.permutations(list(range(n))).map(Perm),
        st.permutations(list(range(n))).map(Perm),
        st.permutations(list(range(n))).map(Perm),
    )))
def test_agreement_matches_direct_count(fab):
    f, alpha, beta = fab
    prob = cj.ConjProblem(f.n, 4, alpha, beta)
    direct = sum(1 for x in range(f.n) if f(alpha(x)) == beta(f(x)))
    assert cj.agreement(f, prob) == direct


class TestExactMultiplicative:
    def test_frozen_case(self):
        f = cj.exact_multiplicative(13, 1, 5, 4)
        assert f.tolist() == [(5 * x) % 13 for x in range(13)]
        assert pm.order_of(f) == 4
        prob = cj.translation_problem(13, 1, 5, 4)
        assert cj.agreement(f, prob) == 13

    def test_none_when_order_too_large(self):
        # 2^2 = 4 != 1 mod 7, but 2^3 = 1
        assert cj.exact_multiplicative(7, 1, 2, 2) is None
        assert cj.exact_multiplicative(7, 1, 2, 3) is not None

    def test_none_when_multiplier_not_unit(self):
        assert cj.exact_multiplicative(10, 1, 2, 4) is None

    def test_noninvertible_p_rejected(self):
        with pytest.raises(ValueError):
            cj.exact_multiplicative(10, 2, 3, 4)

    def test_exact_search_wrapper(self):
        prob = cj.translation_problem(13, 1, 5, 4)
        rep = cj.exact_search(prob)
        assert rep.algorithm == "exact"
        assert rep.agreement_fraction == 1

        miss = cj.translation_problem(7, 1, 2, 2)
        assert cj.exact_search(miss) is None

    def test_exact_search_needs_translations(self):
        prob = cj.multiplication_problem(7, 3, 4)
        with pytest.raises(ValueError):
            cj.exact_search(prob)


class TestBruteForce:
    @pytest.mark.parametrize("n,p,q,k", [
        (5, 1, 2, 4), (5, 1, 2, 2), (6, 1, 5, 2), (4, 1, 3, 4), (7, 2, 3, 4),
    ])
    def test_matches_reference(self, n, p, q, k):
        prob = cj.translation_problem(n, p, q, k)
        rep = cj.brute_force(prob)
        want = orc.brute_best_agreement(
            n, k, orc.translation_tuple(n, p), orc.translation_tuple(n, q))
        assert rep.agreement_count == want
        assert pm.order_divides(rep.f, k)

    def test_frozen_small_values(self):
        prob = cj.translation_problem(5, 1, 2, 4)
        assert cj.brute_force(prob).agreement_count == 5  # 5 | 2^4 - 1
        prob = cj.translation_problem(5, 1, 2, 2)
        assert cj.brute_force(prob).agreement_count == 2

    def test_tie_break_is_lexicographic(self):
        prob = cj.translation_problem(5, 1, 2, 2)
        rep = cj.brute_force(prob)
        best = rep.agreement_count
        for tup in iterperms(range(5)):  # lexicographic enumeration
            if not orc.order_divides_k(tup, 2):
                continue
            score = sum(1 for x in range(5) if tup[prob.alpha(x)] == prob.beta(tup[x]))
            if score == best:
                assert rep.f.tolist() == list(tup)
                break

    def test_cap(self):
        with pytest.raises(ValueError):
            cj.brute_force(cj.translation_problem(10, 1, 2, 4))


class TestLocalSearch:
    def test_deterministic_and_order_preserving(self):
        prob = cj.multiplication_problem(40, 3, 4)
        rep1 = cj.local_search(prob, seed=5)
        rep2 = cj.local_search(prob, seed=5)
        assert rep1.f == rep2.f
        assert rep1.agreement_count == rep2.agreement_count
        assert pm.order_divides(rep1.f, 4)

    def test_different_seeds_may_differ_but_stay_valid(self):
        prob = cj.multiplication_problem(30, 7, 4)
        for seed in range(3):
            rep = cj.local_search(prob, seed=seed, restarts=4)
            assert pm.order_divides(rep.f, 4)
            assert 0 <= rep.agreement_count <= 30

    def test_perfect_solution_found_when_planted(self):
        # translation pair with an exact multiplicative answer
        prob = cj.translation_problem(13, 1, 5, 4)
        rep = cj.local_search(prob, seed=0, restarts=2)
        assert rep.agreement_count == 13

    def test_beats_uniform_baseline_at_moderate_size(self):
        prob = cj.multiplication_problem(61, 3, 4)
        rep = cj.local_search(prob, seed=0, restarts=4)
        base = max(cj.agreement(pm.sample_order_k(61, 4, s), prob)
                   for s in range(100))
        assert rep.agreement_count > base

    def test_report_fields(self):
        prob = cj.multiplication_problem(20, 3, 4)
        rep = cj.local_search(prob, seed=1, iters=500, restarts=2)
        assert rep.algorithm == "local"
        assert rep.seed == 1
        assert rep.iterations == 2 * 500
        assert rep.agreement_fraction == Fraction(rep.agreement_count, 20)


class TestPsiFEval:
    def test_t_powers_use_f(self):
        spec = ap.make_approx("z2", 13, p=1, q=5)
        f = cj.exact_multiplicative(13, 1, 5, 4)
        w = gr.genword([("t", 2)])
        assert cj.psi_f_eval(spec, f, w) == pm.power(f, 2)

    def test_conjugation_relation_exact_here(self):
        spec = ap.make_approx("z2", 13, p=1, q=5)
        f = cj.exact_multiplicative(13, 1, 5, 4)
        w = gr.genword([("t", -1), ("b", 1), ("t", 1)])
        assert cj.psi_f_eval(spec, f, w) == spec.psi_a

    def test_degree_mismatch(self):
        spec = ap.make_approx("z2", 13, p=1, q=5)
        with pytest.raises(ValueError):
            cj.psi_f_eval(spec, Perm.identity(5), gr.genword([("a", 1)]))


class TestHigmanDefect:
    def test_exact_conjugator_has_zero_defect(self):
        spec = ap.make_approx("z2", 13, p=1, q=5)
        f = cj.exact_multiplicative(13, 1, 5, 4)
        pairs = [(gr.genword([("b", 1)]), gr.genword([("a", 1)]))]
        assert cj.higman_defect(spec, f, pairs) == 0

    def test_empty_pairs_rejected(self):
        spec = ap.make_approx("z2", 13, p=1, q=5)
        with pytest.raises(ValueError):
            cj.higman_defect(spec, Perm.identity(13), [])

    def test_identity_f_has_positive_defect(self):
        spec = ap.make_approx("z2", 13, p=1, q=5)
        pairs = [(gr.genword([("b", 1)]), gr.genword([("a", 1)]))]
        d = cj.higman_defect(spec, Perm.identity(13), pairs)
        assert d == 1  # x+5 vs x+1 disagree everywhere

    def test_accepts_elements_too(self):
        spec = ap.make_approx("z2", 13, p=1, q=5)
        f = cj.exact_multiplicative(13, 1, 5, 4)
        pairs = [(gr.Z2Elem(0, 1), gr.Z2Elem(1, 0))]
        assert cj.higman_defect(spec, f, pairs) == 0


class TestAlign:
    def test_recovers_planted_conjugation(self):
        spec1 = ap.make_approx("z2", 9, p=1, q=2)
        sigma = pm.random_perm(9, random.Random(42))
        spec2 = ap.conjugate_spec(spec1, sigma)
        rep = cj.align(spec1, spec2, gr.ball("z2", 2), seed=0)
        assert rep.max_distance == 0
        assert rep.tau == sigma

    def test_self_alignment_is_zero_at_identity(self):
        spec = ap.make_approx("z2", 12, p=1, q=5)
        rep = cj.align(spec, spec, gr.ball("z2", 2), seed=0)
        assert rep.max_distance == 0
        assert rep.tau.is_identity()

    def test_reported_distances_are_exact(self):
        spec1 = ap.make_approx("z2", 9, p=1, q=2)
        spec2 = ap.make_approx("z2", 9, p=2, q=1)
        S = list(gr.ball("z2", 1))
        rep = cj.align(spec1, spec2, S, seed=0, restarts=2)
        tau = rep.tau
        for g, dist in rep.per_element:
            lhs = pm.compose(pm.compose(pm.inverse(tau), ap.eval(spec1, g)), tau)
            assert pm.hamming(lhs, ap.eval(spec2, g)) == dist
        assert rep.max_distance == max(d for _, d in rep.per_element)

    def test_family_mismatch_rejected(self):
        spec1 = ap.make_approx("z2", 9, p=1, q=2)
        spec2 = ap.make_approx("metab", 9, p=2, q=5)
        with pytest.raises(ValueError):
            cj.align(spec1, spec2, gr.ball("z2", 1), seed=0)


class TestSignFlip:
    def test_formula(self):
        f = Perm([2, 0, 1, 4, 3])
        g = cj.sign_flip_perm(f)
        n = 5
        for x in range(n):
            assert g(x) == (-f((-x) % n)) % n

    def test_involution(self):
        f = Perm([2, 0, 1, 4, 3])
        assert cj.sign_flip_perm(cj.sign_flip_perm(f)) == f

    def test_transport_preserves_agreement_and_inverts_multiplier(self):
        prob = cj.multiplication_problem(11, 3, 4)
        f = pm.sample_order_k(11, 4, seed=2)
        prob2, f2 = cj.transport_sign_flip(prob, f)
        inv3 = pow(3, -1, 11)
        assert prob2.beta.tolist() == [(inv3 * x) % 11 for x in range(11)]
        assert cj.agreement(f, prob) == cj.agreement(f2, prob2)

    def test_transport_requires_multiplicative_beta(self):
        prob = cj.translation_problem(11, 1, 2, 4)
        with pytest.raises(ValueError):
            cj.transport_sign_flip(prob, Perm.identity(11))
