"""
Backtracking searches inside a host hypergraph.

Zycles are searched as directed cycles of pairwise disjoint (k-1)-sets in
the block digraph: e |> f holds exactly when f lies inside the link of e,
so successors of a block are the (k-1)-subsets of its link. Arcs are
computed on demand from the host's link index.

General patterns are embedded by a vertex-by-vertex matcher that draws
candidates from host links whenever an edge of the pattern is about to be
completed.
"""

import itertools
import json
import logging
import multiprocessing
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from config import DEFAULT_BUDGET_NODES, DEFAULT_BUDGET_SECONDS
from errors import BudgetExhausted, ChainStuck, HypergraphError, LengthTooSmall, UniformityMismatch
from hypergraph import Hypergraph, KSet

logger = logging.getLogger(__name__)

# time is sampled once per this many nodes
_CLOCK_STRIDE = 1024


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = DEFAULT_BUDGET_NODES
    time_limit: float = DEFAULT_BUDGET_SECONDS
    deterministic: bool = True

    def __post_init__(self):
        if self.node_limit <= 0 or self.time_limit <= 0:
            raise ValueError("search budget limits must be positive")


class _Stopped(Exception):
    """Raised inside a worker once another worker has already answered."""


class _Meter:
    """Counts expanded nodes and raises BudgetExhausted past the limits."""

    def __init__(self, budget: SearchBudget, stop=None):
        self.budget = budget
        self.stop = stop
        self.nodes = 0
        self.started = time.monotonic()

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.started

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            raise BudgetExhausted(self.nodes, self.elapsed)
        if self.nodes % _CLOCK_STRIDE == 0:
            if self.elapsed > self.budget.time_limit:
                raise BudgetExhausted(self.nodes, self.elapsed)
            if self.stop is not None and self.stop.is_set():
                raise _Stopped()


# -- certificates -------------------------------------------------------------------

@dataclass(frozen=True)
class ZycleCertificate:
    blocks: Tuple[KSet, ...]
    host_n: int
    host_k: int

    @property
    def ell(self) -> int:
        return len(self.blocks)

    def to_dict(self) -> Dict[str, object]:
        return {'type': 'zycle', 'ell': self.ell, 'blocks': [list(b) for b in self.blocks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, document: Dict[str, object], host: Hypergraph) -> "ZycleCertificate":
        blocks = tuple(tuple(b) for b in document['blocks'])
        return cls(blocks=blocks, host_n=host.n, host_k=host.k)


@dataclass(frozen=True)
class Embedding:
    """mapping[i] is the host vertex that pattern vertex i is sent to."""
    pattern: Hypergraph
    host: Hypergraph
    mapping: Tuple[int, ...]

    def to_dict(self) -> Dict[str, object]:
        return {'type': 'embedding', 'map': [[p, h] for p, h in enumerate(self.mapping)]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, document: Dict[str, object], pattern: Hypergraph,
                  host: Hypergraph) -> "Embedding":
        pairs = sorted((int(p), int(h)) for p, h in document['map'])
        return cls(pattern=pattern, host=host, mapping=tuple(h for _, h in pairs))


Certificate = Union[ZycleCertificate, Embedding]


@dataclass
class Verification:
    ok: bool
    reasons: List[str]

    def __bool__(self) -> bool:
        return self.ok


def _verify_zycle(host: Hypergraph, cert: ZycleCertificate) -> List[str]:
    reasons = []
    k = host.k
    if (cert.host_n, cert.host_k) != (host.n, host.k):
        reasons.append(f"certificate is for n={cert.host_n}, k={cert.host_k}")
    if len(cert.blocks) < 2:
        reasons.append("a zycle needs at least two blocks")
    seen: Set[int] = set()
    for i, b in enumerate(cert.blocks):
        if len(b) != k - 1 or len(set(b)) != k - 1:
            reasons.append(f"block {i} is not a {k - 1}-set")
        if any(v < 0 or v >= host.n for v in b):
            reasons.append(f"block {i} leaves the vertex range")
        if seen & set(b):
            reasons.append(f"block {i} meets an earlier block")
        seen |= set(b)
    if reasons:
        return reasons
    ell = len(cert.blocks)
    for i, b in enumerate(cert.blocks):
        nxt = cert.blocks[(i + 1) % ell]
        for v in nxt:
            if not host.has_edge(set(b) | {v}):
                reasons.append(f"{sorted(set(b) | {v})} missing (block {i} -> {(i + 1) % ell})")
    return reasons


def _verify_embedding(host: Hypergraph, emb: Embedding) -> List[str]:
    pattern = emb.pattern
    if pattern.k != host.k:
        return [f"uniformity {pattern.k} does not match host {host.k}"]
    if len(emb.mapping) != pattern.n:
        return [f"map covers {len(emb.mapping)} of {pattern.n} pattern vertices"]
    reasons = []
    if len(set(emb.mapping)) != len(emb.mapping):
        reasons.append("map is not injective")
    if any(h < 0 or h >= host.n for h in emb.mapping):
        reasons.append("map leaves the host vertex range")
    if reasons:
        return reasons
    for edge in pattern.edges:
        image = [emb.mapping[v] for v in edge]
        if not host.has_edge(image):
            reasons.append(f"pattern edge {list(edge)} -> {sorted(image)} is not a host edge")
    return reasons


def verify_certificate(host: Hypergraph, cert: Certificate) -> Verification:
    """Re-check a certificate directly against the host's edge set."""
    if isinstance(cert, ZycleCertificate):
        reasons = _verify_zycle(host, cert)
    elif isinstance(cert, Embedding):
        reasons = _verify_embedding(host, cert)
    else:
        reasons = [f"unknown certificate type {type(cert).__name__}"]
    return Verification(ok=not reasons, reasons=reasons)


# -- zycle search ---------------------------------------------------------------------

def _root_blocks(host: Hypergraph) -> List[KSet]:
    k1 = host.k - 1
    return sorted(x for x, nb in host.linked_sets().items() if len(nb) >= k1)


def _zycles_from_roots(host: Hypergraph, ell: int, roots: Iterable[KSet],
                       meter: _Meter) -> Iterator[Tuple[KSet, ...]]:
    """
    Every zycle whose lexicographically smallest block is one of `roots`,
    each rotation class once, in lexicographic order of block sequences.
    """
    k1 = host.k - 1
    link = host.link

    for root in roots:
        root_set = set(root)
        chain = [root]
        used = set(root)

        def extend() -> Iterator[Tuple[KSet, ...]]:
            meter.tick()
            depth = len(chain)
            avail = sorted(v for v in link(chain[-1]) if v not in used)
            if len(avail) < k1:
                return
            closing = depth + 1 == ell
            for f in itertools.combinations(avail, k1):
                if f < root:
                    continue
                nb = link(f)
                if closing:
                    if root_set <= nb:
                        yield tuple(chain) + (f,)
                    continue
                # f needs k-1 unused successors of its own
                if sum(1 for v in nb if v not in used and v not in f) < k1:
                    continue
                chain.append(f)
                used.update(f)
                yield from extend()
                chain.pop()
                used.difference_update(f)

        yield from extend()


def _zycle_chunk(host: Hypergraph, ell: int, roots: Sequence[KSet],
                 budget: SearchBudget, stop=None) -> Tuple[Optional[Tuple[KSet, ...]], int]:
    meter = _Meter(budget, stop)
    try:
        for blocks in _zycles_from_roots(host, ell, roots, meter):
            return blocks, meter.nodes
    except _Stopped:
        logger.debug("chunk from root %s stopped after %d nodes", roots[0], meter.nodes)
    return None, meter.nodes


def _check_length(host: Hypergraph, ell: int):
    if ell < 2:
        raise LengthTooSmall(f"zycle length must be at least 2, got {ell}")
    if host.k < 2:
        raise HypergraphError("host uniformity must be at least 2")


def iter_zycles(host: Hypergraph, ell: int,
                budget: Optional[SearchBudget] = None) -> Iterator[ZycleCertificate]:
    """All copies of Z_ell in the host, one per rotation class."""
    _check_length(host, ell)
    meter = _Meter(budget or SearchBudget())
    for blocks in _zycles_from_roots(host, ell, _root_blocks(host), meter):
        yield ZycleCertificate(blocks=blocks, host_n=host.n, host_k=host.k)


def _chunks(items: Sequence[KSet], count: int) -> List[Sequence[KSet]]:
    size = max(1, -(-len(items) // count))
    return [items[i:i + size] for i in range(0, len(items), size)]


def find_zycle(host: Hypergraph, ell: int, budget: Optional[SearchBudget] = None,
               jobs: int = 1) -> Optional[ZycleCertificate]:
    """
    A copy of Z_ell in the host, or None when the search proved there is none.

    Raises BudgetExhausted instead of returning None when a limit was hit.
    With budget.deterministic the lexicographically least block sequence is
    returned regardless of `jobs`.
    """
    _check_length(host, ell)
    budget = budget or SearchBudget()
    roots = _root_blocks(host)
    started = time.monotonic()
    if jobs <= 1 or len(roots) < 2 * jobs:
        blocks, nodes = _zycle_chunk(host, ell, roots, budget)
    else:
        blocks, nodes = _parallel_zycle(host, ell, roots, budget, jobs)
    logger.info("Z_%d search on %r: %s after %d nodes (%.2fs)", ell, host,
                "found" if blocks else "absent", nodes, time.monotonic() - started)
    if blocks is None:
        return None
    return ZycleCertificate(blocks=blocks, host_n=host.n, host_k=host.k)


def _parallel_zycle(host: Hypergraph, ell: int, roots: List[KSet], budget: SearchBudget,
                    jobs: int) -> Tuple[Optional[Tuple[KSet, ...]], int]:
    chunks = _chunks(roots, jobs * 4)
    # running chunks poll `stop`; cancel() only reaches the queued ones
    with multiprocessing.Manager() as manager:
        stop = manager.Event()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_zycle_chunk, host, ell, chunk, budget, stop) for chunk in chunks]

            def halt():
                stop.set()
                for rest in futures:
                    rest.cancel()

            if budget.deterministic:
                # chunks are contiguous root ranges: the first hit in chunk order is the least
                total = 0
                for future in futures:
                    try:
                        blocks, nodes = future.result()
                    except BudgetExhausted as exc:
                        halt()
                        raise BudgetExhausted(total + exc.nodes, exc.elapsed)
                    total += nodes
                    if blocks is not None:
                        halt()
                        return blocks, total
                return None, total
            pending = set(futures)
            total = 0
            exhausted: Optional[BudgetExhausted] = None
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for future in done:
                    try:
                        blocks, nodes = future.result()
                    except BudgetExhausted as exc:
                        exhausted = exc
                        total += exc.nodes
                        continue
                    total += nodes
                    if blocks is not None:
                        halt()
                        return blocks, total
            if exhausted is not None:
                raise BudgetExhausted(total, exhausted.elapsed)
            return None, total


def min_zycle_length(host: Hypergraph, max_ell: int, budget: Optional[SearchBudget] = None,
                     jobs: int = 1) -> Optional[int]:
    """Smallest ell <= max_ell with Z_ell in the host; None proves absence up to max_ell."""
    if max_ell < 2:
        raise LengthTooSmall(f"bound must be at least 2, got {max_ell}")
    for ell in range(2, max_ell + 1):
        if find_zycle(host, ell, budget, jobs) is not None:
            return ell
    return None


def greedy_back_chain(host: Hypergraph, start: Iterable[int], length: int,
                      forbidden: Iterable[int] = ()) -> List[KSet]:
    """
    e_1 = start |> e_2 |> ... |> e_length, pairwise disjoint and avoiding
    `forbidden`, always taking the lexicographically least admissible block.
    """
    first = tuple(sorted(start))
    if len(first) != host.k - 1:
        raise HypergraphError(f"start must be a {host.k - 1}-set")
    used = set(forbidden)
    if used & set(first):
        raise HypergraphError("start meets the forbidden vertices")
    used |= set(first)
    chain = [first]
    for step in range(2, length + 1):
        avail = sorted(v for v in host.link(chain[-1]) if v not in used)
        if len(avail) < host.k - 1:
            raise ChainStuck(step)
        nxt = tuple(avail[:host.k - 1])
        chain.append(nxt)
        used.update(nxt)
    return chain


# -- pattern embedding ----------------------------------------------------------------

class _PatternMatcher:
    """
    Backtracking embedder of a pattern into any host exposing n, link(),
    vertex_degree().

    Pattern vertices are placed in a fixed order; a vertex that completes a
    pattern edge takes its candidates from the host link of the images of
    that edge's other vertices.
    """

    def __init__(self, host, pattern: Hypergraph, meter: _Meter):
        self.host = host
        self.pattern = pattern
        self.meter = meter
        self.degree = [pattern.vertex_degree(v) for v in range(pattern.n)]
        self._orders: Dict[Tuple[int, ...], Tuple[List[int], List[List[Tuple[int, ...]]]]] = {}

    def _plan(self, fixed: Tuple[int, ...]) -> Tuple[List[int], List[List[Tuple[int, ...]]]]:
        if fixed in self._orders:
            return self._orders[fixed]
        pattern = self.pattern
        order = list(fixed)
        placed = set(fixed)
        remaining = [v for v in range(pattern.n) if v not in placed]

        def score(v: int):
            completes = touching = 0
            for edge in pattern.incident_edges(v):
                others = [w for w in edge if w != v]
                hits = sum(1 for w in others if w in placed)
                completes += hits == len(others)
                touching += hits
            return (completes, touching, self.degree[v], -v)

        while remaining:
            best = max(remaining, key=score)
            order.append(best)
            placed.add(best)
            remaining.remove(best)
        position = {v: i for i, v in enumerate(order)}
        anchors = []
        for i, u in enumerate(order):
            own = []
            for edge in pattern.incident_edges(u):
                others = tuple(w for w in edge if w != u)
                if all(position[w] < i for w in others):
                    own.append(others)
            anchors.append(own)
        self._orders[fixed] = (order, anchors)
        return order, anchors

    def run(self, seed: Optional[Dict[int, int]] = None) -> Optional[Tuple[int, ...]]:
        seed = seed or {}
        if len(set(seed.values())) != len(seed):
            return None
        fixed = tuple(sorted(seed))
        order, anchors = self._plan(fixed)
        mapping = [-1] * self.pattern.n
        for v, h in seed.items():
            mapping[v] = h
        used = set(seed.values())
        host = self.host
        # edges lying entirely inside the seed
        for i in range(len(fixed)):
            for others in anchors[i]:
                image = tuple(sorted(mapping[w] for w in others))
                if mapping[order[i]] not in host.link(image):
                    return None

        def place(pos: int) -> bool:
            self.meter.tick()
            if pos == len(order):
                return True
            u = order[pos]
            need = self.degree[u]
            if anchors[pos]:
                cands: Optional[Set[int]] = None
                for others in anchors[pos]:
                    nb = host.link(tuple(sorted(mapping[w] for w in others)))
                    cands = set(nb) if cands is None else cands & nb
                    if not cands:
                        return False
                pool = sorted(cands)
            else:
                pool = range(host.n)
            for h in pool:
                if h in used or host.vertex_degree(h) < need:
                    continue
                mapping[u] = h
                used.add(h)
                if place(pos + 1):
                    return True
                used.discard(h)
                mapping[u] = -1
            return False

        if place(len(fixed)):
            return tuple(mapping)
        return None


def _check_pattern(host, pattern: Hypergraph):
    if pattern.k != host.k:
        raise UniformityMismatch(f"pattern is {pattern.k}-uniform, host is {host.k}-uniform")


def contains_pattern(host: Hypergraph, pattern: Hypergraph,
                     budget: Optional[SearchBudget] = None) -> Optional[Embedding]:
    """An injective edge-preserving map pattern -> host, or None if provably absent."""
    _check_pattern(host, pattern)
    if pattern.n > host.n:
        return None
    meter = _Meter(budget or SearchBudget())
    mapping = _PatternMatcher(host, pattern, meter).run()
    logger.info("embedding %r into %r: %s after %d nodes", pattern, host,
                "found" if mapping else "absent", meter.nodes)
    if mapping is None:
        return None
    return Embedding(pattern=pattern, host=host, mapping=mapping)


def find_embedding_through(host, pattern: Hypergraph, edge: Sequence[int],
                           budget: Optional[SearchBudget] = None,
                           meter: Optional[_Meter] = None) -> Optional[Tuple[int, ...]]:
    """
    A copy of the pattern that uses the given host edge, as a vertex map.

    `host` may be any object exposing n, k, link() and vertex_degree(); the
    extremal solver passes its mutable edge state.
    """
    _check_pattern(host, pattern)
    if pattern.n > host.n:
        return None
    meter = meter or _Meter(budget or SearchBudget())
    matcher = _PatternMatcher(host, pattern, meter)
    target = tuple(sorted(edge))
    for pattern_edge in pattern.edges:
        for image in itertools.permutations(target):
            mapping = matcher.run(dict(zip(pattern_edge, image)))
            if mapping is not None:
                return mapping
    return None
