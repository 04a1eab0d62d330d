"""Brute-force reference implementations of the metric axioms.

These transcribe the definitions directly (subset enumeration, explicit
ball computations) and deliberately share no sweep machinery with the
production verifiers, so that agreement between the two is meaningful
evidence of correctness.  All are desk-scale only, guarded by caps.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .approval import ApprovalInstance, verify_pjr_bruteforce
from .core import Instance, SizeError, Verdict, Witness, check_selection


def _subset_bits(n: int) -> np.ndarray:
    """Boolean membership table for all 2^n subsets of range(n)."""
    idx = np.arange(1 << n, dtype=np.uint32)
    return (idx[:, None] >> np.arange(n)[None, :] & 1).astype(bool)


def oracle_mpjr(instance: Instance, selection, max_agents: int = 16) -> Verdict:
    """Metric PJR by radius enumeration.

    Only radii among the agent-candidate distances matter: the ball
    structure is constant between consecutive values.  At each radius the
    induced approval election is checked exhaustively.
    """
    t0 = time.perf_counter()
    X = check_selection(instance, selection)
    if instance.n > max_agents:
        raise SizeError(f"n={instance.n} exceeds exhaustive cap {max_agents}")
    D = instance.dists()
    for r in np.unique(D):
        appr = ApprovalInstance.from_approvals(
            [np.flatnonzero(D[i] <= r).tolist() for i in range(instance.n)],
            instance.m, instance.k)
        inner = verify_pjr_bruteforce(appr, X, max_voters=max_agents)
        if not inner.satisfied:
            wit = Witness(center=None, level=inner.witness.level, radius=float(r),
                          coalition=inner.witness.coalition,
                          covered=inner.witness.covered)
            return Verdict("mpjr", 1.0, False, wit,
                           (time.perf_counter() - t0) * 1000.0)
    return Verdict("mpjr", 1.0, True, None, (time.perf_counter() - t0) * 1000.0)


def _anchored_violations(D, X, c, n, k, gamma, bits):
    """Violation table over all coalitions for one anchor candidate."""
    dc = D[:, c]
    rmax = np.where(bits, dc[None, :], -np.inf).max(axis=1)
    cov = np.zeros(len(bits), dtype=np.int64)
    for x in X:
        mind = np.where(bits, D[:, x][None, :], np.inf).min(axis=1)
        cov += mind <= gamma * rmax
    return rmax, cov


def oracle_mpjr_plus(instance: Instance, selection, gamma: float = 1.0,
                     max_agents: int = 16) -> Verdict:
    """Anchored proportional representation, straight from the definition.

    Every unselected center c and every nonempty coalition S is examined;
    the coalition's radius is its farthest member from c, and coverage is
    counted inside gamma times that radius.
    """
    t0 = time.perf_counter()
    X = check_selection(instance, selection)
    n, k = instance.n, instance.k
    if n > max_agents:
        raise SizeError(f"n={n} exceeds exhaustive cap {max_agents}")
    D = instance.dists()
    bits = _subset_bits(n)
    sizes = bits.sum(axis=1).astype(np.int64)
    justified = np.minimum((sizes * k) // n, k)
    xset = set(X)
    for c in range(instance.m):
        if c in xset:
            continue
        rmax, cov = _anchored_violations(D, X, c, n, k, gamma, bits)
        violated = (sizes > 0) & (justified > cov)
        if violated.any():
            s = int(np.flatnonzero(violated)[0])
            members = frozenset(np.flatnonzero(bits[s]).tolist())
            reach = D[np.ix_(sorted(members), np.asarray(X, dtype=np.intp))].min(axis=0)
            covered = frozenset(int(x) for x, d in zip(X, reach)
                                if d <= gamma * rmax[s])
            wit = Witness(center=c, level=int(justified[s]), radius=float(rmax[s]),
                          coalition=members, covered=covered)
            return Verdict("mpjr+-oracle", gamma, False, wit,
                           (time.perf_counter() - t0) * 1000.0)
    return Verdict("mpjr+-oracle", gamma, True, None,
                   (time.perf_counter() - t0) * 1000.0)


def oracle_mpjr_plus_fixed_ell(instance: Instance, selection, ell: int,
                               gamma: float = 1.0, max_agents: int = 16) -> Verdict:
    """Single-level variant of the anchored oracle (used by transfer tests)."""
    t0 = time.perf_counter()
    X = check_selection(instance, selection)
    n, k = instance.n, instance.k
    if n > max_agents:
        raise SizeError(f"n={n} exceeds exhaustive cap {max_agents}")
    D = instance.dists()
    bits = _subset_bits(n)
    sizes = bits.sum(axis=1).astype(np.int64)
    xset = set(X)
    for c in range(instance.m):
        if c in xset:
            continue
        rmax, cov = _anchored_violations(D, X, c, n, k, gamma, bits)
        violated = (sizes * k >= ell * n) & (sizes > 0) & (cov < ell)
        if violated.any():
            s = int(np.flatnonzero(violated)[0])
            members = frozenset(np.flatnonzero(bits[s]).tolist())
            wit = Witness(center=c, level=ell, radius=float(rmax[s]),
                          coalition=members, covered=None)
            return Verdict("fixed-ell-mpjr+-oracle", gamma, False, wit,
                           (time.perf_counter() - t0) * 1000.0)
    return Verdict("fixed-ell-mpjr+-oracle", gamma, True, None,
                   (time.perf_counter() - t0) * 1000.0)


def oracle_dc(instance: Instance, selection, gamma: float = 1.0) -> Verdict:
    """Default-coalitions audit transcribed per (anchor, level) pair.

    Independent of the sweep verifier: radii come from a plain sort, and
    coverage from explicit ball membership.
    """
    t0 = time.perf_counter()
    X = check_selection(instance, selection)
    n, k = instance.n, instance.k
    D = instance.dists()
    xs = np.asarray(X, dtype=np.intp)
    xset = set(X)
    for c in range(instance.m):
        if c in xset:
            continue
        by_dist = np.sort(D[:, c])
        for ell in range(1, k + 1):
            need = -((-ell * n) // k)
            radius = float(by_dist[need - 1])
            members = np.flatnonzero(D[:, c] <= radius)
            reach = D[np.ix_(members, xs)].min(axis=0)
            cov = int((reach <= gamma * radius).sum())
            if cov < ell:
                covered = frozenset(int(x) for x, d in zip(X, reach)
                                    if d <= gamma * radius)
                wit = Witness(center=c, level=ell, radius=radius,
                              coalition=frozenset(members.tolist()), covered=covered)
                return Verdict("dc-oracle", gamma, False, wit,
                               (time.perf_counter() - t0) * 1000.0)
    return Verdict("dc-oracle", gamma, True, None,
                   (time.perf_counter() - t0) * 1000.0)


@dataclass(frozen=True)
class SubmodularReport:
    """Exact minimum of the anchored deficiency function over one ball.

    The minimized value is coverage - |S|/q, kept as the integer pair
    (coverage, size); the violation test coverage * n <= size * k - n is
    the cross-multiplied form of "<= -1".
    """

    center: int
    radius: float
    coverage: int
    size: int
    violation: bool


def submodular_min_check(instance: Instance, selection, center: int, r: float,
                         max_ball: int = 20) -> SubmodularReport:
    """Exhaustively minimize coverage(S) - |S|/q over subsets of the ball.

    Ground set is B(center, r) among agents; coverage counts selected
    centers within r of the coalition.  Ties in the minimum resolve to
    the numerically first subset.
    """
    X = check_selection(instance, selection)
    n, k = instance.n, instance.k
    D = instance.dists()
    ground = np.flatnonzero(D[:, center] <= r)
    b = len(ground)
    if b > max_ball:
        raise SizeError(f"ball of {b} agents exceeds cap {max_ball}")
    if b == 0:
        return SubmodularReport(center, float(r), 0, 0, False)
    bits = _subset_bits(b)
    sizes = bits.sum(axis=1).astype(np.int64)
    cov = np.zeros(len(bits), dtype=np.int64)
    for x in X:
        within = D[ground, x] <= r
        cov += (bits & within[None, :]).any(axis=1)
    g = cov * n - sizes * k   # n * f(S); exact integers
    best = int(np.argmin(g))
    return SubmodularReport(center, float(r), int(cov[best]), int(sizes[best]),
                            bool(g[best] <= -n))
