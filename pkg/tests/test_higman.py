"""Slot maps into G^k and the five-generator action on p^4 points."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soficperm import groups as gr
from soficperm import higman as hg
from soficperm import perm as pm

import oracles as orc


class TestPresentation:
    def test_copies_and_relators(self):
        pres = hg.hig_presentation(4, "zwrz")
        assert pres.k == 4
        copies = pres.copy_generators()
        assert len(copies) == 4
        # b_i is shared with a_{i+1}, wrapping around
        assert copies[3][1] == copies[0][0]
        assert gr.genword([("t", 4)]) in pres.extension_relators
        assert gr.genword(
            [("t", -1), ("b", 1), ("t", 1), ("a", -1)]
        ) in pres.extension_relators

    def test_k_bound(self):
        with pytest.raises(ValueError):
            hg.hig_presentation(0, "z2")


MUBAR_CASES = [
    ("z2", None), ("heis", None), ("zwrz", None), ("metab", None),
]


class TestMubar:
    @pytest.mark.parametrize("family,m", MUBAR_CASES)
    def test_slot_placement(self, family, m):
        g = gr.eval_word(gr.genword([("a", 2), ("b", -1)]), family, m=m)
        k = 5
        slots = hg.mubar(g, 1, k)
        assert len(slots) == k
        assert slots[1] == g
        assert slots[0] == gr.generator(family, "b", 2, m=m)   # a-exponent sum
        assert slots[2] == gr.generator(family, "a", -1, m=m)  # b-exponent sum
        e = gr.identity(family, m=m)
        assert slots[3] == e and slots[4] == e

    @pytest.mark.parametrize("family,m", MUBAR_CASES)
    @given(j=st.integers(-4, 4), l=st.integers(0, 7))
    @settings(max_examples=40)
    def test_amalgam_consistency(self, family, m, j, l):
        k = 4
        b_j = gr.generator(family, "b", j, m=m)
        a_j = gr.generator(family, "a", j, m=m)
        assert hg.mubar(b_j, l, k) == hg.mubar(a_j, l + 1, k)

    def test_slot_index_wraps(self):
        g = gr.Z2Elem(1, 0)
        slots = hg.mubar(g, 0, 3)
        assert slots[0] == g
        assert slots[2] == gr.Z2Elem(0, 1)  # l - 1 mod 3
        assert slots[1] == gr.identity("z2")  # b-sum is 0

    def test_k_must_be_at_least_three(self):
        with pytest.raises(ValueError):
            hg.mubar(gr.Z2Elem(1, 0), 0, 2)

    def test_bs_rejected(self):
        with pytest.raises(ValueError):
            hg.mubar(gr.generator("bs", "a", m=2), 0, 4)

    def test_injective_on_ball_slotwise(self):
        for family, m in MUBAR_CASES:
            elems = list(gr.ball(family, 2, m=m))
            images = [hg.mubar(g, 1, 4) for g in elems]
            assert len(set(images)) == len(elems)
            # distinct elements differ in the distinguished slot already
            assert len({im[1] for im in images}) == len(elems)


class TestMakeAction:
    def test_t_rotates_coordinates(self):
        act = hg.make_action(3, [1, 1, 1], [1, 1, 1])
        t = act.perms["t"]
        # (x,y,z,w) -> (y,z,w,x), encoded base p
        for x, y, z, w in [(0, 1, 2, 0), (2, 2, 1, 0)]:
            src = ((x * 3 + y) * 3 + z) * 3 + w
            dst = ((y * 3 + z) * 3 + w) * 3 + x
            assert t(src) == dst

    def test_a_formula(self):
        f = [1, 2, 1]
        lam = [2, 1, 2]
        act = hg.make_action(3, f, lam)
        a = act.perms["a"]
        for x, y, z, w in [(1, 0, 2, 1), (2, 1, 0, 0)]:
            src = ((x * 3 + y) * 3 + z) * 3 + w
            dst = (((x * lam[z]) % 3 * 3 + y) * 3 + z) * 3 + (w + f[z]) % 3
            assert a(src) == dst

    def test_rejects_bad_tables(self):
        with pytest.raises(ValueError):
            hg.make_action(3, [1, 1], [1, 1, 1])      # wrong length
        with pytest.raises(ValueError):
            hg.make_action(3, [0, 1, 1], [1, 1, 1])   # zero value
        with pytest.raises(ValueError):
            hg.make_action(4, [1] * 4, [1] * 4)       # composite p

    def test_perms_are_bijections(self):
        f, lam = hg.random_tables(5, seed=1)
        act = hg.make_action(5, f, lam)
        assert set(act.perms) == {"t", "a", "b", "c", "d"}
        for g in act.perms.values():
            assert g.n == 5 ** 4


class TestVerifyAction:
    @pytest.mark.parametrize("p", [3, 5])
    def test_random_tables_pass(self, p):
        f, lam = hg.random_tables(p, seed=0)
        act = hg.make_action(p, f, lam)
        rep = hg.verify_action(act, window=2)
        assert rep.passed
        assert rep.t_order_ok
        assert rep.t_cycle == ("a", "d", "c", "b")
        assert all(c.witness is None for c in rep.checks)

    def test_commutators_match_reference(self):
        p = 3
        f, lam = hg.random_tables(p, seed=3)
        act = hg.make_action(p, f, lam)
        base, lamp = act.perms["a"], act.perms["d"]
        for i, j in [(-2, 1), (0, 2), (-1, -1)]:
            si = pm.compose(pm.compose(pm.power(base, -i), lamp), pm.power(base, i))
            sj = pm.compose(pm.compose(pm.power(base, -j), lamp), pm.power(base, j))
            ours = pm.compose(si, sj) == pm.compose(sj, si)
            assert ours == orc.wreath_conjugates_commute(p, list(f), list(lam), i, j)
            assert ours

    def test_window_validation(self):
        f, lam = hg.random_tables(3, seed=0)
        act = hg.make_action(3, f, lam)
        with pytest.raises(ValueError):
            hg.verify_action(act, window=0)


class TestInjectivityProbe:
    def test_degenerate_tables_collapse(self):
        # lambda identically 1 makes both the base and the lamp have order p
        act = hg.make_action(3, [1, 1, 1], [1, 1, 1])
        hits = hg.injectivity_probe(act, 3)
        assert hits
        assert gr._wreath_make({0: 3}, 0) in hits   # lamp^3
        assert gr._wreath_make({}, 3) in hits       # base^3

    def test_generic_tables_probe_empty(self):
        f, lam = hg.random_tables(3, seed=0)
        act = hg.make_action(3, f, lam)
        assert hg.injectivity_probe(act, 3) == []

    def test_depth_zero_and_cap(self):
        act = hg.make_action(3, [1, 1, 1], [1, 1, 1])
        assert hg.injectivity_probe(act, 0) == []
        with pytest.raises(ValueError):
            hg.injectivity_probe(act, 7)


def test_random_tables_deterministic():
    assert hg.random_tables(7, seed=9) == hg.random_tables(7, seed=9)
    f, lam = hg.random_tables(7, seed=9)
    assert len(f) == len(lam) == 7
    assert all(1 <= v <= 6 for v in f + lam)
