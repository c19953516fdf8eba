from fractions import Fraction

import pytest

from branchinv.berger import (
    INCONCLUSIVE,
    REGULAR,
    RULE_ORDER,
    RULES,
    TORSION,
    main_bound,
    refined_bound,
    verdict,
)
from branchinv.branch import BranchSpec, analyze
from branchinv.differentials import compute
from branchinv.errors import DomainError


class TestMainBound:
    def test_known_values(self):
        assert main_bound(7, 1) == 4
        assert main_bound(2, 1) == Fraction(3, 2)
        # C(5,2) * 2/3 by direct binomial arithmetic
        assert main_bound(3, 2) == Fraction(20, 3)

    def test_order_one_closed_form(self):
        for n in range(2, 12):
            assert main_bound(n, 1) == Fraction(n + 1, 2)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            main_bound(1, 1)
        with pytest.raises(DomainError):
            main_bound(3, 0)


class TestRefinedBound:
    def test_known_values(self):
        assert refined_bound(5, 1, 0) == 3
        assert refined_bound(2, 1, 0) == Fraction(3, 2)
        # C(5,1)*(4+6-1)/6 + 1 + 3/4
        assert refined_bound(4, 2, 3) == Fraction(37, 4)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            refined_bound(1, 1, 0)
        with pytest.raises(DomainError):
            refined_bound(3, 1, -1)


class TestVerdict:
    def test_deep_branch_cites_binomial_bound(self, diff_embdim7):
        vd = verdict(diff_embdim7)
        assert vd.status == TORSION
        assert vd.rule == "R3"
        assert vd.bounds["main_bound"] == 4
        assert vd.bounds["h"] == 3

    def test_regular_branch(self, line):
        vd = verdict(compute(line))
        assert vd.status == REGULAR
        assert vd.rule is None
        assert vd.bounds["main_bound"] is None
        assert vd.bounds["s"] is None

    def test_cusp(self, diff_cusp):
        vd = verdict(diff_cusp)
        assert vd.status == TORSION
        assert vd.bounds["h"] == 1
        # the binomial bound fires first: 1 < 3/2
        assert vd.rule == "R3"

    def test_four_generator_branch_is_inconclusive(self, diff_four_gens):
        vd = verdict(diff_four_gens)
        assert vd.status == INCONCLUSIVE
        assert vd.rule is None
        # every bound still reported
        assert vd.bounds["main_bound"] == Fraction(5, 2)
        assert vd.bounds["h"] == 15

    def test_bounds_record_is_complete(self, corpus):
        keys = {"h", "main_bound", "refined_bound", "n", "s", "delta", "lambda_D",
                "v_Dinv", "c", "mu_Jmin", "mu_msJ", "gorenstein", "maximal_torsion",
                "in_ms"}
        for d in corpus[:10]:
            vd = verdict(d)
            assert set(vd.bounds) == keys

    def test_status_regular_iff_n_one(self, corpus):
        for d in corpus:
            vd = verdict(d)
            assert (vd.status == REGULAR) == (d.ring.embdim_n == 1)
            assert (vd.rule is not None) == (vd.status == TORSION)

    def test_never_claims_torsion_free(self, corpus):
        for d in corpus:
            assert verdict(d).status in (REGULAR, TORSION, INCONCLUSIVE)

    def test_rule_metadata_complete(self):
        assert set(RULE_ORDER) == set(RULES)
        for rule, (desc, src) in RULES.items():
            assert desc and src

    def test_maximal_torsion_rule_fires_when_bound_does_not(self):
        # delta = lambda_D with h too large for the binomial bound:
        # R3 misses, R2 catches.  <3,7>: D = t^2 * Rbar-ish copy
        ring = analyze(BranchSpec.from_strings(["t^3", "t^7"]))
        d = compute(ring)
        vd = verdict(d)
        if d.maximal_torsion and not (vd.bounds["main_bound"] and d.h_omega < vd.bounds["main_bound"]):
            assert vd.rule == "R2"

    def test_verdict_deterministic(self, diff_plane49):
        assert verdict(diff_plane49) == verdict(diff_plane49)
