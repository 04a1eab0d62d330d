"""Classical clustering objectives over a discrete candidate set.

These exist to produce the selections a practitioner would actually
compute (aggregate-cost optima), which the proportionality audits can
then reject.  Neither offers representation guarantees.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .core import EUCLIDEAN, Instance, SizeError, UnsupportedBackend
from .gen import sample_selection, substream


def kmedian_cost(instance: Instance, selection) -> float:
    """Sum over agents of the distance to the nearest selected center."""
    xs = np.asarray(sorted(selection), dtype=np.intp)
    return float(instance.dists()[:, xs].min(axis=1).sum())


def kmeans_cost(instance: Instance, selection) -> float:
    """Sum over agents of the squared distance to the nearest selected center."""
    xs = np.asarray(sorted(selection), dtype=np.intp)
    return float((instance.dists()[:, xs] ** 2).min(axis=1).sum())


def kmedian_exhaustive(instance: Instance, max_candidates: int = 12) -> tuple:
    """Global k-median optimum by subset enumeration (lexicographic tie-break)."""
    if instance.m > max_candidates:
        raise SizeError(f"m={instance.m} exceeds exhaustive cap {max_candidates}")
    D = instance.dists()
    best, best_cost = None, np.inf
    for subset in combinations(range(instance.m), instance.k):
        cost = D[:, subset].min(axis=1).sum()
        if cost < best_cost:
            best, best_cost = subset, cost
    return tuple(best)


def kmedian_local_search(instance: Instance, seed: int, exhaustive: bool = False,
                         max_candidates: int = 12, start=None) -> tuple:
    """Best-improvement single-swap descent from a uniform random start.

    Swaps are scanned in (selected, unselected) index order and the
    largest strict cost reduction is applied, so runs are deterministic
    per seed.  Terminates at a local optimum: the subset lattice is
    finite and the cost strictly decreases.  An explicit `start`
    selection overrides the random initialization.
    """
    if exhaustive:
        return kmedian_exhaustive(instance, max_candidates)
    D = instance.dists()
    m, k = instance.m, instance.k
    if start is not None:
        current = sorted(int(c) for c in start)
    else:
        current = list(sample_selection(m, k, substream(seed, "kmedian-init")))
    cost = D[:, current].min(axis=1).sum()
    while True:
        best_swap, best_cost = None, cost
        outside = [c for c in range(m) if c not in set(current)]
        for xi, x in enumerate(current):
            rest = current[:xi] + current[xi + 1:]
            base = D[:, rest].min(axis=1) if rest else np.full(instance.n, np.inf)
            for c in outside:
                trial = np.minimum(base, D[:, c]).sum()
                if trial < best_cost:
                    best_swap, best_cost = (xi, c), trial
        if best_swap is None:
            return tuple(sorted(current))
        xi, c = best_swap
        current[xi] = c
        cost = best_cost


def kmeans_lloyd_snapped(instance: Instance, seed: int, max_iter: int = 100) -> tuple:
    """Lloyd iterations on squared cost with centroids snapped to candidates.

    Cluster centroids are recomputed as coordinate means and snapped to
    the nearest candidate; a cluster whose snap target is already taken
    keeps its previous center (or the nearest unused candidate).  Stops
    when the selection is stable or after max_iter rounds.
    """
    if instance.metric != EUCLIDEAN:
        raise UnsupportedBackend("snapped Lloyd requires coordinates")
    agents = instance._agent_points
    cands = instance._candidate_points
    m, k = instance.m, instance.k
    # seed with coordinate-distinct candidates where possible: coincident
    # starting centers would leave a cluster permanently empty
    gen = substream(seed, "kmeans-init")
    shuffled = list(gen.permutation(m))
    current, seen = [], set()
    for c in shuffled:
        pos = tuple(cands[c])
        if pos not in seen:
            current.append(int(c))
            seen.add(pos)
        if len(current) == k:
            break
    for c in shuffled:
        if len(current) == k:
            break
        if int(c) not in current:
            current.append(int(c))
    D = instance.dists()
    for _ in range(max_iter):
        assign = np.argmin(D[:, current], axis=1)
        taken: set = set()
        nxt = []
        for ci in range(k):
            cluster = agents[assign == ci]
            centroid = cluster.mean(axis=0) if len(cluster) else cands[current[ci]]
            dist2 = ((cands - centroid) ** 2).sum(axis=1)
            target = int(np.argmin(dist2))
            if target in taken:
                target = current[ci]
            if target in taken:
                for j in np.argsort(dist2, kind="stable"):
                    if int(j) not in taken:
                        target = int(j)
                        break
            taken.add(target)
            nxt.append(target)
        if sorted(nxt) == sorted(current):
            break
        current = nxt
    return tuple(sorted(current))
