import json
from collections import Counter

import numpy as np
import pytest

from propaudit import (ConfigError, GaussianConfig, Instance,
                       fixture_incomparability, fixture_objective_failure,
                       gen_gaussian_instance, sample_selection,
                       validate_metric)
from propaudit.gen import box_muller, substream


class TestGaussianModel:
    def test_shape_and_balanced_clusters(self):
        cfg = GaussianConfig(n=20, g=4, sigma=0.0, seed=5, k=5)
        inst = gen_gaussian_instance(cfg)
        assert inst.n == 20 and inst.m == 20 and inst.k == 5
        # sigma = 0 puts agents exactly on their latent centers
        pts = [tuple(p) for p in inst.to_dict()["agents"]]
        sizes = sorted(Counter(pts).values())
        assert sizes == [5, 5, 5, 5]

    def test_cluster_sizes_differ_by_at_most_one(self):
        cfg = GaussianConfig(n=23, g=4, sigma=0.0, seed=5, k=5)
        pts = [tuple(p) for p in gen_gaussian_instance(cfg).to_dict()["agents"]]
        sizes = sorted(Counter(pts).values())
        assert max(sizes) - min(sizes) <= 1 and sum(sizes) == 23

    def test_byte_identical_per_seed(self):
        cfg = GaussianConfig(n=20, g=4, sigma=0.04, seed=77, k=5)
        a = json.dumps(gen_gaussian_instance(cfg).to_dict())
        b = json.dumps(gen_gaussian_instance(cfg).to_dict())
        assert a == b
        other = GaussianConfig(n=20, g=4, sigma=0.04, seed=78, k=5)
        assert a != json.dumps(gen_gaussian_instance(other).to_dict())

    def test_all_coordinates_finite(self):
        cfg = GaussianConfig(n=100, g=6, sigma=0.04, seed=1, k=5)
        inst = gen_gaussian_instance(cfg)
        assert np.isfinite(inst.dists()).all()

    def test_config_validation(self):
        with pytest.raises(ConfigError):
            GaussianConfig(n=3, g=4, sigma=0.04, seed=1, k=1)
        with pytest.raises(ConfigError):
            GaussianConfig(n=5, g=2, sigma=-0.1, seed=1, k=1)

    def test_box_muller_moments(self):
        z = box_muller(substream(9, "bm"), 200_000)
        assert abs(z.mean()) < 0.01
        assert abs(z.std() - 1.0) < 0.01


class TestFixtures:
    def test_instance1_distance_table(self):
        inst, X = fixture_incomparability(1)
        assert X == (2, 3, 4)
        close = [{0, 1, 2}] * 4 + [{0, 1, 3}, {0, 1, 4}]
        D = inst.dists()
        for i in range(6):
            for c in range(5):
                assert D[i, c] == (1.0 if c in close[i] else 2.0)

    def test_instance2_distance_table(self):
        inst, X = fixture_incomparability(2)
        assert X == (1, 2, 3)
        close = [{0, 1}] * 3 + [{0}, {2}, {3}]
        D = inst.dists()
        for i in range(6):
            for c in range(4):
                assert D[i, c] == (1.0 if c in close[i] else 2.0)

    def test_fixtures_are_metrics(self):
        for which in (1, 2):
            inst, _ = fixture_incomparability(which)
            assert validate_metric(inst, check_triangle=True).ok

    def test_objective_failure_scale_ordering(self):
        inst = fixture_objective_failure()
        assert inst.n == 30 and inst.m == 5 and inst.k == 3
        cands = np.asarray(inst.to_dict()["candidates"]).ravel()
        agents = np.asarray(inst.to_dict()["agents"]).ravel()
        compact = agents[agents < 100]
        b_region = agents[agents >= 100]
        assert len(compact) == 20 and len(b_region) == 10
        separation = b_region.min() - compact.max()
        spread = b_region.max() - b_region.min()
        diameter = max(compact.max() - compact.min(),
                       cands[cands < 100].max() - cands[cands < 100].min())
        assert separation >= 10 * spread >= 100 * diameter


class TestSelectionSampling:
    def test_full_set_when_k_equals_m(self):
        assert sample_selection(4, 4, 123) == (0, 1, 2, 3)

    def test_seed_determinism(self):
        assert sample_selection(10, 3, 5) == sample_selection(10, 3, 5)
        assert sample_selection(10, 3, 5) != sample_selection(10, 3, 6)

    def test_uniformity_chi_square(self):
        gen = substream(2024, "uniformity")
        counts = Counter(sample_selection(6, 3, gen) for _ in range(100_000))
        assert len(counts) == 20
        for subset, c in counts.items():
            assert abs(c / 100_000 - 0.05) <= 0.005, subset

    def test_k_larger_than_m_rejected(self):
        with pytest.raises(ConfigError):
            sample_selection(3, 4, 0)
