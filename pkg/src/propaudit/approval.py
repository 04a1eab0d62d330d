"""Approval-ballot committees: brute-force and sweep verifiers, plus the
balanced-biclique instance generator used for hardness-style fixtures.

The exhaustive verifiers enumerate voter subsets (2^n) and are guarded by
configurable caps; they exist as ground truth for desk-scale inputs, not
as production verification paths.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from .core import (InfeasibleLevel, InputError, SizeError, Verdict, Witness)


@dataclass(frozen=True)
class ApprovalInstance:
    """Multiwinner approval election: voters, candidates, ballots, and k."""

    voters: tuple
    candidates: tuple
    approvals: tuple          # per voter, frozenset of candidate indices
    k: int

    def __post_init__(self):
        n, m = len(self.voters), len(self.candidates)
        if n < 1:
            raise InputError("need at least one voter")
        if not (1 <= self.k <= m):
            raise InputError(f"k={self.k} out of range [1, {m}]")
        if len(self.approvals) != n:
            raise InputError("one approval set per voter required")
        for a in self.approvals:
            if a and (min(a) < 0 or max(a) >= m):
                raise InputError("approval set references unknown candidate")

    @property
    def n(self) -> int:
        return len(self.voters)

    @property
    def m(self) -> int:
        return len(self.candidates)

    @classmethod
    def from_approvals(cls, approvals, m: int, k: int) -> "ApprovalInstance":
        sets = tuple(frozenset(int(c) for c in a) for a in approvals)
        return cls(tuple(range(len(sets))), tuple(range(m)), sets, int(k))

    @classmethod
    def from_dict(cls, data: dict) -> "ApprovalInstance":
        try:
            return cls.from_approvals(data["approvals"], int(data["candidates"]),
                                      int(data["k"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad approval JSON: {exc}") from exc

    def to_dict(self) -> dict:
        return {
            "voters": self.n,
            "candidates": self.m,
            "approvals": [sorted(a) for a in self.approvals],
            "k": self.k,
        }

    def matrix(self) -> np.ndarray:
        """Voter x candidate boolean approval matrix."""
        a = np.zeros((self.n, self.m), dtype=bool)
        for i, s in enumerate(self.approvals):
            a[i, list(s)] = True
        return a

    def masks(self) -> np.ndarray:
        """Per-voter candidate bitmasks (requires m <= 62)."""
        if self.m > 62:
            raise SizeError("bitmask path supports at most 62 candidates")
        out = np.zeros(self.n, dtype=np.int64)
        for i, s in enumerate(self.approvals):
            for c in s:
                out[i] |= np.int64(1) << np.int64(c)
        return out


def _check_committee(inst: ApprovalInstance, committee) -> tuple:
    xs = sorted(set(int(c) for c in committee))
    if len(xs) != inst.k:
        raise InputError(f"committee has {len(xs)} members, expected k={inst.k}")
    if xs[0] < 0 or xs[-1] >= inst.m:
        raise InputError("committee index out of range")
    return tuple(xs)


def _subset_unions(masks: np.ndarray) -> np.ndarray:
    """union[S] = OR of masks over voters in subset S, for all 2^n subsets."""
    n = len(masks)
    u = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        half = 1 << v
        blk = u.reshape(-1, 2 * half)
        blk[:, half:] = blk[:, :half] | masks[v]
    return u


def _subset_inters(masks: np.ndarray, full: np.int64) -> np.ndarray:
    n = len(masks)
    w = np.full(1 << n, full, dtype=np.int64)
    for v in range(n):
        half = 1 << v
        blk = w.reshape(-1, 2 * half)
        blk[:, half:] = blk[:, :half] & masks[v]
    return w


def verify_pjr_bruteforce(inst: ApprovalInstance, committee, max_voters: int = 16) -> Verdict:
    """Exhaustive PJR check over all voter coalitions.

    A committee fails PJR when some coalition S with |S|*k >= ell*n shares
    ell commonly-approved candidates yet sees fewer than ell committee
    members across its union of ballots.
    """
    t0 = time.perf_counter()
    X = _check_committee(inst, committee)
    n, k = inst.n, inst.k
    if n > max_voters:
        raise SizeError(f"n={n} exceeds exhaustive cap {max_voters}")
    masks = inst.masks()
    full = np.int64((1 << inst.m) - 1)
    xmask = np.int64(0)
    for c in X:
        xmask |= np.int64(1) << np.int64(c)

    union = _subset_unions(masks)
    inter = _subset_inters(masks, full)
    sizes = np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)
    cohesion = np.bitwise_count(inter.view(np.uint64)).astype(np.int64)
    coverage = np.bitwise_count((union & xmask).view(np.uint64)).astype(np.int64)
    level = np.minimum((sizes * k) // n, cohesion)
    violated = (sizes > 0) & (level > coverage)
    elapsed = (time.perf_counter() - t0) * 1000.0
    if not violated.any():
        return Verdict("pjr", 1.0, True, None, elapsed)
    s = int(np.flatnonzero(violated)[0])
    coalition = frozenset(i for i in range(n) if s >> i & 1)
    wit = Witness(center=None, level=int(level[s]), radius=None,
                  coalition=coalition,
                  covered=frozenset(c for c in X if union[s] >> c & 1))
    return Verdict("pjr", 1.0, False, wit, elapsed)


def verify_pjr_plus_sweep(inst: ApprovalInstance, committee, max_k: int = 24) -> Verdict:
    """PJR+ by scanning exclusion sets Y and anchor candidates c.

    For each Y strictly inside the committee, collect the voters approving
    nobody in X \\ Y; a violation is an unselected c approved by at least
    (|Y|+1) * q of them (integer cross-test).  Y is scanned by popcount
    then lexicographically, c by index, so witnesses are deterministic.
    """
    t0 = time.perf_counter()
    X = _check_committee(inst, committee)
    n, k = inst.n, inst.k
    if k > max_k:
        raise SizeError(f"k={k} exceeds sweep cap {max_k}")
    A = inst.matrix()
    outs = [c for c in range(inst.m) if c not in set(X)]
    for size in range(k):
        for Y in combinations(X, size):
            rest = [c for c in X if c not in Y]
            unserved = ~A[:, rest].any(axis=1)
            if not unserved.any() or not outs:
                continue
            counts = A[np.ix_(unserved, outs)].sum(axis=0)
            hit = np.flatnonzero(counts * k >= (size + 1) * n)
            if hit.size:
                c = outs[int(hit[0])]
                voters = frozenset(np.flatnonzero(unserved & A[:, c]).tolist())
                wit = Witness(center=c, level=size + 1, radius=None,
                              coalition=voters, covered=frozenset(Y))
                return Verdict("pjr+", 1.0, False, wit,
                               (time.perf_counter() - t0) * 1000.0)
    return Verdict("pjr+", 1.0, True, None, (time.perf_counter() - t0) * 1000.0)


def verify_fixed_ell_pjr_plus_bruteforce(inst: ApprovalInstance, committee,
                                         ell: int, max_voters: int = 16) -> Verdict:
    """Exhaustive fixed-level PJR+ check.

    Enumerates, for each unselected candidate c, every coalition drawn from
    the approvers of c, and tests |S|*k >= ell*n against committee coverage
    of the coalition's ballot union.
    """
    t0 = time.perf_counter()
    X = _check_committee(inst, committee)
    n, k = inst.n, inst.k
    if not (1 <= ell <= k):
        raise InfeasibleLevel(f"ell={ell} outside [1, {k}]")
    masks = inst.masks()
    xmask = np.int64(0)
    for c in X:
        xmask |= np.int64(1) << np.int64(c)
    xset = set(X)
    for c in range(inst.m):
        if c in xset:
            continue
        approvers = [i for i in range(n) if c in inst.approvals[i]]
        if len(approvers) > max_voters:
            raise SizeError(f"{len(approvers)} approvers exceed cap {max_voters}")
        if not approvers:
            continue
        union = _subset_unions(masks[approvers])
        sizes = np.bitwise_count(np.arange(len(union), dtype=np.uint64)).astype(np.int64)
        coverage = np.bitwise_count((union & xmask).view(np.uint64)).astype(np.int64)
        violated = (sizes * k >= ell * n) & (coverage < ell) & (sizes > 0)
        if violated.any():
            s = int(np.flatnonzero(violated)[0])
            coalition = frozenset(approvers[i] for i in range(len(approvers)) if s >> i & 1)
            wit = Witness(center=c, level=ell, radius=None, coalition=coalition,
                          covered=frozenset(x for x in X if union[s] >> x & 1))
            return Verdict("fixed-ell-pjr+", 1.0, False, wit,
                           (time.perf_counter() - t0) * 1000.0)
    return Verdict("fixed-ell-pjr+", 1.0, True, None,
                   (time.perf_counter() - t0) * 1000.0)


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with index-based edges between the two sides."""

    left: tuple
    right: tuple
    edges: frozenset       # pairs (left index, right index)

    def __post_init__(self):
        for u, w in self.edges:
            if not (0 <= u < len(self.left) and 0 <= w < len(self.right)):
                raise InputError(f"edge {(u, w)} references unknown vertex")

    @classmethod
    def from_edges(cls, n_left: int, n_right: int, edges) -> "BipartiteGraph":
        return cls(tuple(range(n_left)), tuple(range(n_right)),
                   frozenset((int(u), int(w)) for u, w in edges))

    def adj_left(self, u: int) -> frozenset:
        return frozenset(w for (a, w) in self.edges if a == u)


def pad_balanced(graph: BipartiteGraph, t: int) -> tuple:
    """Equalize the sides to 2t'-1 vertices, preserving biclique existence.

    Isolated vertices are appended up to n' = max(|L|, |R|, 2t-1), then
    p = n' - 2t + 1 universal vertices are appended to each side; the
    padded graph has a t'xt' biclique (t' = t + p) iff the original has a
    txt one.  Returns (padded graph, t').
    """
    if t < 1:
        raise InputError("t must be >= 1")
    nl, nr = len(graph.left), len(graph.right)
    n1 = max(nl, nr, 2 * t - 1)
    p = n1 - 2 * t + 1
    t1 = t + p
    left = list(graph.left) + [("iso-l", i) for i in range(n1 - nl)]
    right = list(graph.right) + [("iso-r", i) for i in range(n1 - nr)]
    edges = set(graph.edges)
    for i in range(p):
        u = len(left) + i
        edges.update((u, w) for w in range(n1 + p))
    for j in range(p):
        w = len(right) + j
        edges.update((u, w) for u in range(n1))   # universal-left rows already added above
    left += [("uni-l", i) for i in range(p)]
    right += [("uni-r", j) for j in range(p)]
    return BipartiteGraph(tuple(left), tuple(right), frozenset(edges)), t1


def biclique_reduction(graph: BipartiteGraph, t: int) -> tuple:
    """Build the voting instance whose fixed-level audit mirrors biclique search.

    After padding to 2t'-1 per side, left vertices become voters and right
    vertices candidates; a voter approves the extra candidate z plus every
    non-neighbour.  The committee is everything but z, k = 2t'-1, and the
    level to audit is t'.  Returns (instance, committee, level).
    """
    g, t1 = pad_balanced(graph, t)
    side = len(g.left)
    adj = {u: set() for u in range(side)}
    for (u, w) in g.edges:
        adj[u].add(w)
    z = side   # candidates are right vertices 0..side-1, then z
    approvals = []
    for u in range(side):
        approvals.append(frozenset({z} | (set(range(side)) - adj[u])))
    inst = ApprovalInstance(tuple(range(side)), tuple(range(side + 1)),
                            tuple(approvals), side)
    committee = tuple(range(side))
    return inst, committee, t1


def find_balanced_biclique_bruteforce(graph: BipartiteGraph, t: int,
                                      max_side: int = 16) -> Optional[tuple]:
    """Exhaustive search for a t x t complete bipartite subgraph.

    Left subsets grow in index order with the common right neighbourhood
    kept as a bitmask; branches die as soon as the neighbourhood drops
    below t, so the first hit equals what plain subset enumeration would
    return.
    """
    if t < 1:
        raise InputError("t must be >= 1")
    nl, nr = len(graph.left), len(graph.right)
    if nl > max_side or nr > max_side:
        raise SizeError(f"sides exceed cap {max_side}")
    if t > min(nl, nr):
        return None
    adj = [0] * nl
    for (u, w) in graph.edges:
        adj[u] |= 1 << w

    def extend(start: int, chosen: list, common: int):
        if len(chosen) == t:
            rights = [w for w in range(nr) if common >> w & 1]
            return tuple(chosen), tuple(rights[:t])
        for u in range(start, nl - (t - len(chosen)) + 1):
            nxt = common & adj[u]
            if nxt.bit_count() >= t:
                found = extend(u + 1, chosen + [u], nxt)
                if found:
                    return found
        return None

    return extend(0, [], (1 << nr) - 1)
