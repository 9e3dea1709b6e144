"""Brute-force reference implementations used to cross-check the real searches."""

import itertools
from typing import Iterable, Sequence

import numpy as np

from hypergraph import Hypergraph


def naive_contains(host: Hypergraph, pattern: Hypergraph) -> bool:
    """Try every injective vertex map."""
    if pattern.n > host.n:
        return False
    edges = set(host.edges)
    for image in itertools.permutations(range(host.n), pattern.n):
        if all(tuple(sorted(image[v] for v in e)) in edges for e in pattern.edges):
            return True
    return False


def naive_has_zycle(host: Hypergraph, ell: int) -> bool:
    """Every ordered choice of ell disjoint blocks, checked edge by edge."""
    k1 = host.k - 1
    if ell * k1 > host.n:
        return False
    edges = set(host.edges)
    for seq in itertools.permutations(range(host.n), ell * k1):
        blocks = [seq[i * k1:(i + 1) * k1] for i in range(ell)]
        if all(tuple(sorted(blocks[i] + (v,))) in edges
               for i in range(ell) for v in blocks[(i + 1) % ell]):
            return True
    return False


def naive_min_codegree(n: int, k: int, edges: Iterable[Sequence[int]]) -> int:
    edges = [set(e) for e in edges]
    return min(sum(1 for e in edges if set(x) <= e)
               for x in itertools.combinations(range(n), k - 1))


def naive_exco(n: int, k: int, patterns: Sequence[Hypergraph]) -> int:
    """Maximum minimum codegree over all 2^C(n,k) edge sets avoiding every pattern."""
    candidates = list(itertools.combinations(range(n), k))
    best = 0
    for mask in range(1 << len(candidates)):
        chosen = [e for i, e in enumerate(candidates) if mask >> i & 1]
        value = naive_min_codegree(n, k, chosen)
        if value <= best:
            continue
        host = Hypergraph(n, k, chosen)
        if not any(naive_contains(host, p) for p in patterns):
            best = value
    return best


def random_hypergraph(rng: np.random.Generator, n: int, k: int, density: float) -> Hypergraph:
    candidates = list(itertools.combinations(range(n), k))
    keep = rng.random(len(candidates)) < density
    return Hypergraph(n, k, (e for e, flag in zip(candidates, keep) if flag))
