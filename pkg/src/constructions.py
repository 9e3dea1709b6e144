"""
Generators for the named hypergraphs: zycles and their one-edge-deleted
variants, the modular algebraic constructions, the partite constructions
and complete graphs, plus the modular arithmetic they rely on.

Every generator uses cluster-major (or block-major) labeling: cluster i
occupies a contiguous block of vertex indices.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from errors import (
    DivisibilityViolated,
    HypergraphError,
    LengthTooSmall,
    NotPrime,
    PrimeTooSmall,
    UniformityTooSmall,
    ZeroResidue,
)
from hypergraph import Hypergraph, KSet

logger = logging.getLogger(__name__)


# -- modular arithmetic -----------------------------------------------------------

def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def next_prime(m: int) -> int:
    """Smallest prime strictly larger than m."""
    candidate = m + 1
    while not is_prime(candidate):
        candidate += 1
    return candidate


@dataclass(frozen=True)
class PrimeChoice:
    k: int
    ell: int
    p: int

    @property
    def bound(self) -> int:
        return 2 * (self.k - 1) ** self.ell


def smallest_admissible_prime(k: int, ell: int) -> PrimeChoice:
    """Smallest prime p with p > (k-1)^ell + 1 and p > k."""
    if k < 3 or ell < 2:
        raise HypergraphError(f"need k >= 3 and ell >= 2, got k={k}, ell={ell}")
    p = next_prime(max((k - 1) ** ell + 1, k))
    choice = PrimeChoice(k=k, ell=ell, p=p)
    # Bertrand-Chebyshev
    assert p <= choice.bound, f"prime {p} exceeds 2(k-1)^ell = {choice.bound}"
    return choice


def admissible_primes(k: int, ell: int) -> List[int]:
    """Every prime in ((k-1)^ell + 1, 2(k-1)^ell] that also exceeds k."""
    low = max((k - 1) ** ell + 1, k)
    return [p for p in range(low + 1, 2 * (k - 1) ** ell + 1) if is_prime(p)]


def multiplicative_order(a: int, p: int) -> int:
    """Least r >= 1 with a^r = 1 mod p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    residue = a % p
    if residue == 0:
        raise ZeroResidue(f"{a} is 0 mod {p}")
    r, power = 1, residue
    while power != 1:
        power = power * residue % p
        r += 1
    return r


def cluster_chain(k: int, p: int, start: int = 1) -> List[int]:
    """Labels start, (1-k)start, (1-k)^2 start, ... up to the first repeat of start."""
    step = (1 - k) % p
    chain = [start % p]
    current = chain[0] * step % p
    while current != chain[0]:
        chain.append(current)
        current = current * step % p
    return chain


# -- cluster labelings --------------------------------------------------------------

@dataclass(frozen=True)
class ClusterLabeling:
    """
    Cluster-major labeling: vertex v lies in cluster base + v // cluster_size.

    base is 0 for the algebraic graph (labels 0..p-1) and 1 for the reduced
    graph (labels 1..p, read mod p when summed).
    """
    p: int
    cluster_size: int
    base: int = 0

    def label(self, v: int) -> int:
        return self.base + v // self.cluster_size

    def residue(self, v: int) -> int:
        return self.label(v) % self.p

    def cluster(self, label: int) -> range:
        start = (label - self.base) * self.cluster_size
        return range(start, start + self.cluster_size)

    def cluster_of_residue(self, residue: int) -> range:
        label = residue % self.p
        if self.base and label == 0:
            label = self.p
        return self.cluster(label)

    @property
    def assignment(self) -> Dict[int, int]:
        return {v: self.label(v) for v in range(self.p * self.cluster_size)}


def _check_uniformity(k: int):
    if k < 2:
        raise UniformityTooSmall(f"uniformity must be at least 2, got {k}")


def _check_prime(p: int, k: int):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p <= k:
        raise PrimeTooSmall(f"prime {p} must exceed the uniformity {k}")


def _labelled_edges(k: int, labeling: ClusterLabeling, labels: Sequence[int],
                    accept: Callable[[Tuple[int, ...]], bool]) -> Iterator[Tuple[int, ...]]:
    """Edges whose multiset of cluster labels passes `accept`."""
    for combo in itertools.combinations_with_replacement(labels, k):
        if not accept(combo):
            continue
        parts = [itertools.combinations(labeling.cluster(label), m)
                 for label, m in sorted(Counter(combo).items())]
        for choice in itertools.product(*parts):
            yield tuple(v for part in choice for v in part)


# -- zycles -------------------------------------------------------------------------

def block(k: int, i: int) -> KSet:
    """Vertices of block i (0-based) under block-major labeling."""
    return tuple(range(i * (k - 1), (i + 1) * (k - 1)))


def zycle_blocks(k: int, ell: int) -> List[KSet]:
    return [block(k, i) for i in range(ell)]


def _check_zycle_args(k: int, ell: int):
    _check_uniformity(k)
    if ell < 2:
        raise LengthTooSmall(f"zycle length must be at least 2, got {ell}")


def zycle(k: int, ell: int) -> Hypergraph:
    """
    The k-uniform zycle of length ell.

    Vertex v_i^j (1-based i, j) is (i-1)(k-1) + (j-1). Lengths below k are
    accepted; Z_2^(3) is K_4^(3).
    """
    _check_zycle_args(k, ell)
    edges = []
    for i in range(ell):
        nxt = block(k, (i + 1) % ell)
        edges.extend(block(k, i) + (v,) for v in nxt)
    return Hypergraph((k - 1) * ell, k, edges)


def zycle_minus(k: int, ell: int) -> Hypergraph:
    """zycle(k, ell) without the edge block_ell + {v_1^(k-1)}."""
    _check_zycle_args(k, ell)
    if k > 3:
        logger.warning("zycle_minus for k=%d: only k=3 is known to be unique up to isomorphism", k)
    full = zycle(k, ell)
    return full.without_edge(block(k, ell - 1) + (k - 2,))


def zycle_path_plus_edge(k: int, ell: int) -> Hypergraph:
    """Path e_1 |> ... |> e_ell of disjoint blocks plus the single edge e_ell + {v_1^1}."""
    _check_zycle_args(k, ell)
    edges = []
    for i in range(ell - 1):
        edges.extend(block(k, i) + (v,) for v in block(k, i + 1))
    edges.append(block(k, ell - 1) + (0,))
    return Hypergraph((k - 1) * ell, k, edges)


def complete(n: int, k: int) -> Hypergraph:
    _check_uniformity(k)
    return Hypergraph(n, k, itertools.combinations(range(n), k))


def complete_minus(k: int) -> Hypergraph:
    """K_{k+1}^(k) minus the edge {1, ..., k}."""
    return complete(k + 1, k).without_edge(range(1, k + 1))


# -- algebraic constructions --------------------------------------------------------

def algebraic(k: int, p: int, n: int) -> Hypergraph:
    """
    p clusters of n/p vertices; v_1..v_k is an edge iff the labels sum to
    0 mod p and are not all 0, or k-1 labels are 0 and the last is 1.
    """
    _check_uniformity(k)
    _check_prime(p, k)
    if n % p:
        raise DivisibilityViolated(f"{p} does not divide {n}")
    labeling = ClusterLabeling(p=p, cluster_size=n // p)
    special = (0,) * (k - 1) + (1,)

    def accept(labels: Tuple[int, ...]) -> bool:
        if sum(labels) % p == 0 and any(labels):
            return True
        return labels == special

    return Hypergraph(n, k, _labelled_edges(k, labeling, range(p), accept))


def algebraic_labeling(p: int, n: int) -> ClusterLabeling:
    return ClusterLabeling(p=p, cluster_size=n // p)


def reduced_algebraic(k: int, p: int) -> Hypergraph:
    """p clusters of k-1 vertices labeled 1..p; edges are the zero label sums mod p."""
    _check_uniformity(k)
    _check_prime(p, k)
    labeling = reduced_labeling(k, p)
    return Hypergraph(p * (k - 1), k,
                      _labelled_edges(k, labeling, range(1, p + 1), lambda ls: sum(ls) % p == 0))


def reduced_labeling(k: int, p: int) -> ClusterLabeling:
    return ClusterLabeling(p=p, cluster_size=k - 1, base=1)


# -- partite constructions ----------------------------------------------------------

def _cyclic_pair_edges(clusters: List[range]) -> Iterator[Tuple[int, ...]]:
    """u, v in cluster i and w in cluster i+1, indices mod the cluster count."""
    for i, current in enumerate(clusters):
        nxt = clusters[(i + 1) % len(clusters)]
        for u, v in itertools.combinations(current, 2):
            for w in nxt:
                yield (u, v, w)


def _equal_clusters(n: int, parts: int) -> List[range]:
    if n % parts:
        raise DivisibilityViolated(f"{parts} does not divide {n}")
    size = n // parts
    return [range(i * size, (i + 1) * size) for i in range(parts)]


def tripartite_iterated(n: int) -> Hypergraph:
    """Clusters V_1, V_2, V_3 (indices 0..2 here) with edges uvw, u, v in V_i, w in V_{i+1}."""
    clusters = _equal_clusters(n, 3)
    return Hypergraph(n, 3, _cyclic_pair_edges(clusters))


def quadripartite(n: int) -> Hypergraph:
    """The cyclic pair edges on four clusters plus every xyz with x in V_1, y in V_2, z in V_3 or V_4."""
    clusters = _equal_clusters(n, 4)
    edges = list(_cyclic_pair_edges(clusters))
    tail = list(clusters[2]) + list(clusters[3])
    edges.extend(itertools.product(clusters[0], clusters[1], tail))
    return Hypergraph(n, 3, edges)


def partite_clusters(n: int, parts: int) -> List[range]:
    return _equal_clusters(n, parts)


FAMILIES = (
    'zycle', 'zycle-minus', 'zycle-path-plus-edge', 'algebraic', 'reduced-algebraic',
    'tripartite', 'quadripartite', 'complete', 'blowup',
)
