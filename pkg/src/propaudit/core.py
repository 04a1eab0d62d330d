"""Clustering instances, metric backends, and the shared quota arithmetic.

An instance bundles a multiset of agents, a set of candidate centers, a
metric (either Euclidean coordinates or an explicit distance matrix), and
the target number of centers k.  Points are addressed by global index:
agents occupy 0..n-1, candidates n..n+m-1 (matching the row order of an
explicit matrix).

All quota tests are integer cross-multiplications: a count of agents
justifies representation level ell exactly when count * k >= ell * n.
No floating quotient n/k is ever formed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.spatial.distance import cdist

EUCLIDEAN = "euclidean"
EXPLICIT = "explicit"


class InputError(ValueError):
    """Malformed instance data, point ids, or selections."""


class SizeError(RuntimeError):
    """An exhaustive routine was asked to exceed its configured cap."""


class InfeasibleLevel(ValueError):
    """A representation level outside [1, k] was requested."""


class UnsupportedBackend(RuntimeError):
    """Operation requires a metric backend the instance does not have."""


class ConfigError(ValueError):
    """Invalid generator or experiment configuration."""


class Instance:
    """A centroid-clustering instance (agents, candidate centers, metric, k).

    Immutable after construction; every operation on it is pure, so
    instances are safe to share across threads and processes.
    """

    def __init__(self, metric: str, k: int, *, agent_points=None,
                 candidate_points=None, matrix=None, n_agents: int | None = None,
                 agent_names=None, candidate_names=None):
        if metric == EUCLIDEAN:
            ap = np.asarray(agent_points, dtype=np.float64)
            cp = np.asarray(candidate_points, dtype=np.float64)
            if ap.ndim != 2 or cp.ndim != 2 or ap.shape[1] != cp.shape[1]:
                raise InputError("euclidean points must be 2-D arrays of equal dimension")
            if not (np.isfinite(ap).all() and np.isfinite(cp).all()):
                raise InputError("coordinates must be finite")
            self._agent_points = ap
            self._candidate_points = cp
            self._matrix = None
            self.n = ap.shape[0]
            self.m = cp.shape[0]
            self.dim = ap.shape[1]
        elif metric == EXPLICIT:
            d = np.asarray(matrix, dtype=np.float64)
            if n_agents is None:
                raise InputError("explicit backend requires n_agents")
            if d.ndim != 2 or d.shape[0] != d.shape[1]:
                raise InputError("explicit matrix must be square")
            if not np.isfinite(d).all():
                raise InputError("distances must be finite")
            if d.shape[0] < n_agents + 1:
                raise InputError("matrix smaller than agents + at least one candidate")
            self._agent_points = None
            self._candidate_points = None
            self._matrix = d
            self.n = int(n_agents)
            self.m = d.shape[0] - self.n
            self.dim = None
        else:
            raise InputError(f"unknown metric backend {metric!r}")

        if self.n < 1:
            raise InputError("need at least one agent")
        if not (1 <= k <= self.m):
            raise InputError(f"k={k} out of range [1, {self.m}]")
        self.metric = metric
        self.k = int(k)
        self.agent_names = list(agent_names) if agent_names is not None else None
        self.candidate_names = list(candidate_names) if candidate_names is not None else None
        self._ac = None  # cached n x m agent-candidate distance matrix

    @classmethod
    def euclidean(cls, agents, candidates, k: int) -> "Instance":
        return cls(EUCLIDEAN, k, agent_points=agents, candidate_points=candidates)

    @classmethod
    def explicit(cls, matrix, n_agents: int, k: int, agent_names=None,
                 candidate_names=None) -> "Instance":
        return cls(EXPLICIT, k, matrix=matrix, n_agents=n_agents,
                   agent_names=agent_names, candidate_names=candidate_names)

    @property
    def quota(self) -> "QuotaCmp":
        return QuotaCmp(self.n, self.k)

    def dists(self) -> np.ndarray:
        """The n x m agent-candidate distance matrix (computed once, cached)."""
        if self._ac is None:
            if self.metric == EUCLIDEAN:
                self._ac = cdist(self._agent_points, self._candidate_points)
            else:
                self._ac = self._matrix[: self.n, self.n:]
        return self._ac

    def distance(self, a: int, b: int) -> float:
        """Distance between two global point ids (agents first, then candidates).

        Explicit lookups are O(1); Euclidean evaluations cost O(dim),
        which the complexity statements elsewhere treat as constant.
        """
        total = self.n + self.m
        if not (0 <= a < total and 0 <= b < total):
            raise InputError(f"point id out of range: {(a, b)}")
        if self.metric == EXPLICIT:
            return float(self._matrix[a, b])
        pa = self._agent_points[a] if a < self.n else self._candidate_points[a - self.n]
        pb = self._agent_points[b] if b < self.n else self._candidate_points[b - self.n]
        return float(np.linalg.norm(pa - pb))

    def to_explicit(self) -> "Instance":
        """Materialize the full metric as an explicit-matrix instance.

        Verifier verdicts and witnesses are identical on the result.
        """
        if self.metric == EXPLICIT:
            return self
        pts = np.vstack([self._agent_points, self._candidate_points])
        return Instance.explicit(cdist(pts, pts), self.n, self.k)

    def to_dict(self) -> dict:
        if self.metric == EUCLIDEAN:
            return {
                "metric": EUCLIDEAN,
                "dim": self.dim,
                "agents": self._agent_points.tolist(),
                "candidates": self._candidate_points.tolist(),
                "k": self.k,
            }
        agents = self.agent_names or [f"a{i}" for i in range(self.n)]
        candidates = self.candidate_names or [f"c{j}" for j in range(self.m)]
        return {
            "metric": EXPLICIT,
            "agents": list(agents),
            "candidates": list(candidates),
            "matrix": self._matrix.tolist(),
            "k": self.k,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        try:
            metric = data["metric"]
            k = int(data["k"])
            if metric == EUCLIDEAN:
                return cls.euclidean(data["agents"], data["candidates"], k)
            if metric == EXPLICIT:
                agents = data["agents"]
                return cls.explicit(data["matrix"], len(agents), k,
                                    agent_names=agents,
                                    candidate_names=data["candidates"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad instance JSON: {exc}") from exc
        raise InputError(f"unknown metric backend {metric!r}")


def load_instance(path) -> Instance:
    with open(path) as fh:
        return Instance.from_dict(json.load(fh))


def dump_instance(instance: Instance, path) -> None:
    with open(path, "w") as fh:
        json.dump(instance.to_dict(), fh)
        fh.write("\n")


def check_selection(instance: Instance, centers: Iterable[int]) -> tuple:
    """Normalize a center selection to a sorted tuple, enforcing |X| = k."""
    raw = [int(c) for c in centers]
    xs = sorted(set(raw))
    if len(xs) != len(raw):
        raise InputError("selection contains duplicate centers")
    if len(xs) != instance.k:
        raise InputError(f"selection has {len(xs)} centers, expected k={instance.k}")
    if xs and (xs[0] < 0 or xs[-1] >= instance.m):
        raise InputError("selection index out of candidate range")
    return tuple(xs)


@dataclass(frozen=True)
class QuotaCmp:
    """Exact quota comparisons for q = n/k, done as integer cross-products."""

    n: int
    k: int

    def at_least(self, count: int, level: int) -> bool:
        """count agents justify `level` centers: count * k >= level * n."""
        return count * self.k >= level * self.n

    def level_of(self, count: int) -> int:
        """Largest level justified by `count` agents, i.e. floor(count/q)."""
        return (count * self.k) // self.n

    def min_count(self, level: int) -> int:
        """Smallest agent count with count * k >= level * n."""
        return -((-level * self.n) // self.k)


def quota_at_least(count: int, level: int, quota: QuotaCmp) -> bool:
    if count < 0 or level < 1:
        raise InputError("count must be >= 0 and level >= 1")
    return quota.at_least(count, level)


def group_approval_set(instance: Instance, agents: Iterable[int], r: float) -> frozenset:
    """Candidates within distance r of at least one of the given agents.

    Closed-ball semantics: a candidate at distance exactly r is included.
    """
    idx = list(agents)
    if not idx:
        raise InputError("group approval set of an empty agent set")
    sub = instance.dists()[idx, :]
    return frozenset(np.nonzero((sub <= r).any(axis=0))[0].tolist())


@dataclass(frozen=True)
class MetricCheck:
    """Outcome of validate_metric: ok, or the first named violation found."""

    ok: bool
    violation: Optional[str] = None   # asymmetry | negative | nonzero-diagonal | triangle
    points: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def validate_metric(instance: Instance, check_triangle: bool = False) -> MetricCheck:
    """Check an explicit matrix for metric axioms.

    The triangle scan is O((n+m)^3) and therefore opt-in; verifiers never
    require it and operate on any symmetric nonnegative matrix.
    """
    if instance.metric != EXPLICIT:
        raise UnsupportedBackend("validate_metric applies to explicit matrices")
    d = instance._matrix
    neg = np.argwhere(d < 0)
    if neg.size:
        return MetricCheck(False, "negative", tuple(int(v) for v in neg[0]))
    diag = np.nonzero(np.diagonal(d) != 0)[0]
    if diag.size:
        return MetricCheck(False, "nonzero-diagonal", (int(diag[0]),))
    asym = np.argwhere(d != d.T)
    if asym.size:
        return MetricCheck(False, "asymmetry", tuple(int(v) for v in asym[0]))
    if check_triangle:
        for b in range(d.shape[0]):
            # all pairs (a, c) routed through b at once
            slack = d[:, b][:, None] + d[b, :][None, :] - d
            bad = np.argwhere(slack < 0)
            if bad.size:
                a, c = (int(v) for v in bad[0])
                return MetricCheck(False, "triangle", (a, b, c))
    return MetricCheck(True)


@dataclass(frozen=True)
class Witness:
    """A violation certificate.

    For metric axioms: an unselected anchor center, the representation
    level, the radius at which the shortfall occurs, and (when the
    verifier derives one) the coalition of agents plus the selected
    centers that were within reach.  Approval-side witnesses carry no
    radius.
    """

    center: Optional[int]
    level: int
    radius: Optional[float] = None
    coalition: Optional[frozenset] = None
    covered: Optional[frozenset] = None

    def to_dict(self) -> dict:
        return {
            "center": self.center,
            "level": self.level,
            "radius": self.radius,
            "coalition": sorted(self.coalition) if self.coalition is not None else None,
            "covered": sorted(self.covered) if self.covered is not None else None,
        }


@dataclass(frozen=True)
class Verdict:
    axiom: str
    gamma: float
    satisfied: bool
    witness: Optional[Witness] = None
    elapsed_ms: float = 0.0

    @property
    def status(self) -> str:
        return "SATISFIED" if self.satisfied else "VIOLATED"

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "gamma": self.gamma,
            "satisfied": self.satisfied,
            "witness": self.witness.to_dict() if self.witness else None,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())
