import numpy as np
import pytest

from propaudit import (InfeasibleLevel, Instance, SizeError, dc_violations,
                       default_coalition, oracle_dc, oracle_mpjr,
                       oracle_mpjr_plus, verify_dc_mpjr_plus,
                       verify_fixed_ell_dc, verify_mpjr_plus_smallk)
from propaudit.gen import fixture_incomparability, sample_selection

from conftest import random_case, random_explicit


class TestDefaultCoalition:
    def test_instance2_around_z(self):
        inst, _ = fixture_incomparability(2)
        dc = default_coalition(inst, 0, 2)
        assert dc.radius == 1.0
        assert dc.members == {0, 1, 2, 3}

    def test_equidistant_agents(self):
        d = np.zeros((4, 4))
        d[:3, 3] = d[3, :3] = 2.0
        d[:3, :3] = 4.0 - 4.0 * np.eye(3)
        inst = Instance.explicit(d, 3, 1)
        dc = default_coalition(inst, 0, 1)
        assert dc.radius == 2.0 and dc.members == {0, 1, 2}

    def test_matches_sorted_prefix_scan(self, rng):
        for _ in range(60):
            inst = random_explicit(rng, int(rng.integers(1, 9)),
                                   int(rng.integers(1, 6)),
                                   1)
            k = int(rng.integers(1, inst.m + 1))
            inst = Instance.explicit(inst._matrix, inst.n, k)
            c = int(rng.integers(0, inst.m))
            for ell in range(1, inst.k + 1):
                got = default_coalition(inst, c, ell)
                dists = sorted(inst.dists()[:, c])
                r = next(dists[j] for j in range(inst.n)
                         if (j + 1) * inst.k >= ell * inst.n)
                assert got.radius == r
                assert got.members == {i for i in range(inst.n)
                                       if inst.dists()[i, c] <= r}

    def test_bad_level(self):
        inst, _ = fixture_incomparability(2)
        with pytest.raises(InfeasibleLevel):
            default_coalition(inst, 0, 4)
        with pytest.raises(InfeasibleLevel):
            default_coalition(inst, 0, 0)


class TestFixtureVerdicts:
    def test_instance1(self):
        inst, X = fixture_incomparability(1)
        assert verify_dc_mpjr_plus(inst, X).satisfied
        assert not oracle_mpjr(inst, X).satisfied
        assert not verify_mpjr_plus_smallk(inst, X).satisfied

    def test_instance2(self):
        inst, X = fixture_incomparability(2)
        v = verify_dc_mpjr_plus(inst, X)
        assert not v.satisfied
        assert (v.witness.center, v.witness.level, v.witness.radius) == (0, 2, 1.0)
        assert oracle_mpjr(inst, X).satisfied
        assert not verify_mpjr_plus_smallk(inst, X).satisfied

    def test_full_selection_trivially_satisfied(self, rng):
        d = np.abs(rng.random((7, 7)))
        d = (d + d.T) / 2
        np.fill_diagonal(d, 0)
        inst = Instance.explicit(d, 3, 4)
        X = (0, 1, 2, 3)
        assert verify_dc_mpjr_plus(inst, X).satisfied
        assert verify_mpjr_plus_smallk(inst, X).satisfied
        assert verify_fixed_ell_dc(inst, X, inst.k).satisfied


class TestFixedEllDc:
    def test_instance2_levels(self):
        inst, X = fixture_incomparability(2)
        assert not verify_fixed_ell_dc(inst, X, 2).satisfied
        assert verify_fixed_ell_dc(inst, X, 1).satisfied    # B(z,1) covers x1
        with pytest.raises(InfeasibleLevel):
            verify_fixed_ell_dc(inst, X, 0)

    def test_matches_full_dc_scan(self, rng):
        # violated at some level iff the all-levels verifier rejects
        for _ in range(150):
            inst, X = random_case(rng)
            per_level = [not verify_fixed_ell_dc(inst, X, ell).satisfied
                         for ell in range(1, inst.k + 1)]
            assert any(per_level) == (not verify_dc_mpjr_plus(inst, X).satisfied)


class TestOracleEquivalence:
    def test_dc_matches_oracle(self, rng):
        for _ in range(400):
            inst, X = random_case(rng)
            assert verify_dc_mpjr_plus(inst, X).satisfied == \
                oracle_dc(inst, X).satisfied

    def test_smallk_matches_oracle(self, rng):
        for _ in range(400):
            inst, X = random_case(rng)
            assert verify_mpjr_plus_smallk(inst, X).satisfied == \
                oracle_mpjr_plus(inst, X).satisfied

    def test_dc_anchor_sets_match_oracle(self, rng):
        # all-witness mode agrees with the per-(anchor, level) oracle on
        # which anchors witness violations
        for _ in range(80):
            inst, X = random_case(rng)
            wits = dc_violations(inst, X)
            anchors = {w.center for w in wits}
            expect = set()
            for c in range(inst.m):
                if c in set(X):
                    continue
                for ell in range(1, inst.k + 1):
                    d = default_coalition(inst, c, ell)
                    members = sorted(d.members)
                    reach = inst.dists()[np.ix_(members, list(X))].min(axis=0)
                    if int((reach <= d.radius).sum()) < ell:
                        expect.add(c)
                        break
            assert anchors == expect


class TestGammaBehaviour:
    def test_monotone_in_gamma(self, rng):
        for _ in range(200):
            inst, X = random_case(rng)
            for gamma in (1.0, 1.5, 2.0):
                if verify_dc_mpjr_plus(inst, X, gamma).satisfied:
                    assert verify_dc_mpjr_plus(inst, X, gamma + 0.5).satisfied
                if verify_mpjr_plus_smallk(inst, X, gamma).satisfied:
                    assert verify_mpjr_plus_smallk(inst, X, gamma + 0.5).satisfied

    def test_gamma_matches_oracle(self, rng):
        for _ in range(200):
            inst, X = random_case(rng)
            for gamma in (1.5, 2.0):
                assert verify_dc_mpjr_plus(inst, X, gamma).satisfied == \
                    oracle_dc(inst, X, gamma).satisfied
                assert verify_mpjr_plus_smallk(inst, X, gamma).satisfied == \
                    oracle_mpjr_plus(inst, X, gamma).satisfied

    def test_dc_relaxation_bounds_strict_audit(self, rng):
        for _ in range(200):
            inst, X = random_case(rng)
            for gamma in (1.0, 1.5, 2.0):
                if verify_dc_mpjr_plus(inst, X, gamma).satisfied:
                    assert verify_mpjr_plus_smallk(inst, X, gamma + 2.0).satisfied


class TestImplications:
    def test_chain(self, rng):
        for _ in range(300):
            inst, X = random_case(rng)
            if verify_mpjr_plus_smallk(inst, X).satisfied:
                assert verify_dc_mpjr_plus(inst, X).satisfied
                assert oracle_mpjr(inst, X).satisfied


class TestCapsAndWitnesses:
    def test_smallk_cap(self, rng):
        inst = Instance.euclidean(rng.random((4, 2)), rng.random((30, 2)), 26)
        with pytest.raises(SizeError):
            verify_mpjr_plus_smallk(inst, tuple(range(26)), max_k=24)

    def test_witness_invariants(self, rng):
        for _ in range(150):
            inst, X = random_case(rng)
            for fn in (verify_dc_mpjr_plus, verify_mpjr_plus_smallk):
                v = fn(inst, X)
                if v.witness is None:
                    continue
                w = v.witness
                assert w.center not in set(X)
                assert 1 <= w.level <= inst.k
                assert len(w.coalition) * inst.k >= w.level * inst.n
                assert w.covered is not None and len(w.covered) < w.level

    def test_deterministic_witness(self, rng):
        for _ in range(60):
            inst, X = random_case(rng)
            a = verify_dc_mpjr_plus(inst, X)
            b = verify_dc_mpjr_plus(inst, X)
            if a.witness is not None:
                assert a.witness == b.witness
