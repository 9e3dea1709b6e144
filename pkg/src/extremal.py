"""
Finite codegree Turan numbers.

exco_exact decides, for d = n-k+1 down to 1, whether some pattern-free
k-graph on n vertices has minimum codegree at least d. Each level is a
depth-first search that always branches on the tightest (k-1)-set and
rejects an added edge as soon as a forbidden pattern appears through it.

exco_local_search anneals single edge flips from a seeded start and only
ever holds pattern-free states, so its result is a lower bound.
"""

import itertools
import json
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence, Set, Tuple

import numpy as np

from config import DEFAULT_EXACT_MAX_N
from errors import BudgetExhausted, HypergraphError, InstanceTooLarge, UniformityMismatch
from hypergraph import Hypergraph, KSet
from zycle_search import SearchBudget, _Meter, contains_pattern, find_embedding_through

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtremalResult:
    n: int
    k: int
    patterns: Tuple[Hypergraph, ...]
    value: int
    witness: Hypergraph
    exhaustive: bool

    @property
    def ratio(self) -> float:
        return self.value / self.n if self.n else 0.0

    def to_dict(self) -> Dict[str, object]:
        return {
            'n': self.n,
            'k': self.k,
            'value': self.value,
            'ratio': round(self.ratio, 6),
            'exhaustive': self.exhaustive,
            'witness_khg': self.witness.to_khg(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


@dataclass(frozen=True)
class LocalSearchConfig:
    seed: int = 0
    restarts: int = 4
    steps: int = 2000
    initial_temperature: float = 1.0
    decay: float = 0.999
    initial: Optional[Hypergraph] = field(default=None, compare=False)

    def __post_init__(self):
        if self.restarts <= 0 or self.steps <= 0:
            raise ValueError("restarts and steps must be positive")
        if self.initial_temperature <= 0:
            raise ValueError("initial temperature must be positive")
        if not 0 < self.decay < 1:
            raise ValueError("temperature decay must lie in (0, 1)")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


class _EdgeState:
    """
    Mutable edge set with a live link index.

    Exposes the same n / k / link / vertex_degree surface as Hypergraph so
    the pattern matcher can search inside it.
    """

    def __init__(self, n: int, k: int, edges: Iterable[KSet] = ()):
        self.n = n
        self.k = k
        self.edges: Set[KSet] = set()
        self.links: Dict[KSet, Set[int]] = {}
        self.vdeg = [0] * n
        for edge in edges:
            self.add(edge)

    def link(self, x: KSet) -> Set[int]:
        return self.links.get(x, set())

    def vertex_degree(self, v: int) -> int:
        return self.vdeg[v]

    def has_edge(self, edge: KSet) -> bool:
        return edge in self.edges

    def add(self, edge: KSet):
        self.edges.add(edge)
        for i, v in enumerate(edge):
            self.links.setdefault(edge[:i] + edge[i + 1:], set()).add(v)
            self.vdeg[v] += 1

    def remove(self, edge: KSet):
        self.edges.discard(edge)
        for i, v in enumerate(edge):
            self.links[edge[:i] + edge[i + 1:]].discard(v)
            self.vdeg[v] -= 1

    def snapshot(self) -> Hypergraph:
        return Hypergraph(self.n, self.k, self.edges)


def _faces(edge: KSet) -> Iterable[KSet]:
    return (edge[:i] + edge[i + 1:] for i in range(len(edge)))


def _creates_copy(state: _EdgeState, patterns: Sequence[Hypergraph], edge: KSet,
                  meter: _Meter) -> bool:
    return any(find_embedding_through(state, p, edge, meter=meter) is not None for p in patterns)


class _FeasibilitySearch:
    """Is there a pattern-free k-graph on n vertices with minimum codegree >= d?"""

    def __init__(self, n: int, k: int, patterns: Sequence[Hypergraph], d: int, meter: _Meter):
        self.n, self.k, self.d = n, k, d
        self.patterns = patterns
        self.meter = meter
        self.sets = list(itertools.combinations(range(n), k - 1))
        self.state = _EdgeState(n, k)
        self.decided: Dict[KSet, bool] = {}
        self.undecided = {x: n - k + 1 for x in self.sets}

    def _decide(self, edge: KSet, include: bool):
        self.decided[edge] = include
        for x in _faces(edge):
            self.undecided[x] -= 1
        if include:
            self.state.add(edge)

    def _undo(self, edge: KSet):
        if self.decided.pop(edge):
            self.state.remove(edge)
        for x in _faces(edge):
            self.undecided[x] += 1

    def _slack(self, x: KSet) -> int:
        return len(self.state.link(x)) + self.undecided[x] - self.d

    def solve(self, star: int) -> Optional[Hypergraph]:
        """
        Fix the link of {0..k-2} to {k-1, .., k-2+star}.

        Any witness can be relabeled outside {0..k-2} so that this set's
        neighbourhood is an initial run of the remaining labels.
        """
        k1 = self.k - 1
        base = tuple(range(k1))
        for v in range(k1, self.n):
            edge = base + (v,)
            include = v < k1 + star
            self._decide(edge, include)
            if include and _creates_copy(self.state, self.patterns, edge, self.meter):
                return None
        if self._branch():
            return self.state.snapshot()
        return None

    def _branch(self) -> bool:
        self.meter.tick()
        tightest, tightest_slack = None, 0
        for x in self.sets:
            if len(self.state.link(x)) >= self.d:
                continue
            slack = self._slack(x)
            if slack < 0:
                return False
            if tightest is None or slack < tightest_slack:
                tightest, tightest_slack = x, slack
        if tightest is None:
            return True
        edge = next(e for e in (tuple(sorted(tightest + (v,))) for v in range(self.n)
                                if v not in tightest)
                    if e not in self.decided)
        self._decide(edge, True)
        if not _creates_copy(self.state, self.patterns, edge, self.meter) and self._branch():
            return True
        self._undo(edge)
        if tightest_slack > 0:
            self._decide(edge, False)
            if all(self._slack(x) >= 0 for x in _faces(edge)) and self._branch():
                return True
            self._undo(edge)
        return False


def _check_patterns(k: int, patterns: Sequence[Hypergraph]):
    if not patterns:
        raise HypergraphError("at least one forbidden pattern is required")
    for pattern in patterns:
        if pattern.k != k:
            raise UniformityMismatch(f"pattern is {pattern.k}-uniform, expected {k}")
        if not pattern.edges:
            raise HypergraphError("a forbidden pattern must have at least one edge")


def _solve_level(n: int, k: int, patterns: Tuple[Hypergraph, ...], d: int, star: int,
                 budget: SearchBudget) -> Tuple[Optional[Hypergraph], int]:
    meter = _Meter(budget)
    witness = _FeasibilitySearch(n, k, patterns, d, meter).solve(star)
    return witness, meter.nodes


def _level(n: int, k: int, patterns: Tuple[Hypergraph, ...], d: int, budget: SearchBudget,
           jobs: int) -> Optional[Hypergraph]:
    stars = list(range(n - k + 1, d - 1, -1))
    if jobs <= 1 or len(stars) == 1:
        meter = _Meter(budget)
        for star in stars:
            witness = _FeasibilitySearch(n, k, patterns, d, meter).solve(star)
            if witness is not None:
                return witness
        return None
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_solve_level, n, k, patterns, d, star, budget) for star in stars]
        exhausted = None
        # stars in order so the densest-star witness wins deterministically
        for future in futures:
            try:
                witness, _ = future.result()
            except BudgetExhausted as exc:
                exhausted = exc
                continue
            if witness is not None:
                for rest in futures:
                    rest.cancel()
                return witness
        if exhausted is not None:
            raise exhausted
    return None


def exco_exact(n: int, k: int, patterns: Sequence[Hypergraph],
               budget: Optional[SearchBudget] = None, jobs: int = 1,
               max_n: int = DEFAULT_EXACT_MAX_N) -> ExtremalResult:
    """
    ex_co(n, patterns) with a witness.

    A level that runs out of budget is skipped; the result then reports the
    best level actually found with exhaustive=False.
    """
    _check_patterns(k, patterns)
    if n > max_n:
        raise InstanceTooLarge(f"n={n} exceeds the exact solver cap {max_n}")
    if n < k:
        raise HypergraphError(f"need n >= k, got n={n}, k={k}")
    budget = budget or SearchBudget()
    relevant = tuple(p for p in patterns if p.n <= n)
    exhaustive = True
    if not relevant:
        complete = Hypergraph(n, k, itertools.combinations(range(n), k))
        return ExtremalResult(n, k, tuple(patterns), n - k + 1, complete, True)
    for d in range(n - k + 1, 0, -1):
        try:
            witness = _level(n, k, relevant, d, budget, jobs)
        except BudgetExhausted as exc:
            logger.warning("ex_co level d=%d inconclusive: %s", d, exc)
            exhaustive = False
            continue
        if witness is not None:
            logger.info("ex_co(%d) = %d (exhaustive=%s)", n, d, exhaustive)
            return ExtremalResult(n, k, tuple(patterns), d, witness, exhaustive)
        logger.debug("no pattern-free %d-graph on %d vertices with codegree >= %d", k, n, d)
    return ExtremalResult(n, k, tuple(patterns), 0, Hypergraph(n, k), exhaustive)


# -- local search ---------------------------------------------------------------------

class _Annealer:
    """
    One restart: single edge flips, pattern-free states only.

    A flip that would complete a forbidden copy is rejected outright rather
    than scored with a -n penalty per copy, so every visited state is a valid
    witness and the score is just (min codegree, codegree sum).
    """

    def __init__(self, n: int, k: int, patterns: Sequence[Hypergraph], config: LocalSearchConfig,
                 seed_seq: np.random.SeedSequence, budget: SearchBudget):
        self.n, self.k = n, k
        self.patterns = [p for p in patterns if p.n <= n]
        self.config = config
        self.rng = np.random.Generator(np.random.PCG64(seed_seq))
        self.budget = budget
        self.sets = list(itertools.combinations(range(n), k - 1))
        self.scale = len(self.sets) * (n - k + 2)
        self.state = _EdgeState(n, k)
        self.codegree: Counter = Counter({0: len(self.sets)})
        self.total = 0

    def _meter(self) -> _Meter:
        return _Meter(self.budget)

    def _bump(self, edge: KSet, delta: int):
        for x in _faces(edge):
            d = len(self.state.link(x))
            self.codegree[d] -= 1
            if not self.codegree[d]:
                del self.codegree[d]
            self.codegree[d + delta] += 1
        self.total += delta * self.k

    def _add(self, edge: KSet):
        self._bump(edge, 1)
        self.state.add(edge)

    def _remove(self, edge: KSet):
        self._bump(edge, -1)
        self.state.remove(edge)

    @property
    def minimum(self) -> int:
        return min(self.codegree)

    def score(self) -> float:
        # the codegree sum only breaks ties: it stays below one
        return self.minimum + self.total / (self.scale + 1)

    def _safe_to_add(self, edge: KSet) -> bool:
        self.state.add(edge)
        try:
            return not _creates_copy(self.state, self.patterns, edge, self._meter())
        except BudgetExhausted:
            return False
        finally:
            self.state.remove(edge)

    def seed_with(self, graph: Optional[Hypergraph]):
        """Start from the given graph, dropping edges that would complete a pattern."""
        if graph is None:
            return
        for edge in graph.edges:
            if self._safe_to_add(edge):
                self._add(edge)
            else:
                logger.debug("seed edge %s dropped: completes a forbidden pattern", edge)

    def _propose(self) -> KSet:
        if self.rng.random() < 0.5:
            low = self.minimum
            candidates = [x for x in self.sets if len(self.state.link(x)) == low]
            x = candidates[int(self.rng.integers(len(candidates)))]
            nb = self.state.link(x)
            outside = [v for v in range(self.n) if v not in x and v not in nb]
            if outside:
                v = outside[int(self.rng.integers(len(outside)))]
                return tuple(sorted(x + (v,)))
        picked = self.rng.choice(self.n, size=self.k, replace=False)
        return tuple(sorted(int(v) for v in picked))

    def run(self) -> Hypergraph:
        best_value, best = self.minimum, self.state.snapshot()
        temperature = self.config.initial_temperature
        for _ in range(self.config.steps):
            edge = self._propose()
            before = self.score()
            adding = not self.state.has_edge(edge)
            if adding:
                if not self._safe_to_add(edge):
                    temperature *= self.config.decay
                    continue
                self._add(edge)
            else:
                self._remove(edge)
            delta = self.score() - before
            if delta < 0 and self.rng.random() >= math.exp(delta / temperature):
                if adding:
                    self._remove(edge)
                else:
                    self._add(edge)
            elif self.minimum > best_value:
                best_value, best = self.minimum, self.state.snapshot()
            temperature *= self.config.decay
        return best


def _anneal_restart(n: int, k: int, patterns: Tuple[Hypergraph, ...], config: LocalSearchConfig,
                    seed_seq: np.random.SeedSequence, budget: SearchBudget) -> Hypergraph:
    annealer = _Annealer(n, k, patterns, config, seed_seq, budget)
    annealer.seed_with(config.initial)
    return annealer.run()


def exco_local_search(n: int, k: int, patterns: Sequence[Hypergraph],
                      config: Optional[LocalSearchConfig] = None,
                      budget: Optional[SearchBudget] = None, jobs: int = 1) -> ExtremalResult:
    """Best pattern-free graph found by annealing; never claims optimality."""
    _check_patterns(k, patterns)
    if n < k:
        raise HypergraphError(f"need n >= k, got n={n}, k={k}")
    config = config or LocalSearchConfig()
    if config.initial is not None and (config.initial.n, config.initial.k) != (n, k):
        raise HypergraphError("initial graph must have the same n and k")
    budget = budget or SearchBudget(node_limit=100_000, time_limit=10.0)
    streams = np.random.SeedSequence(config.seed).spawn(config.restarts)
    patterns = tuple(patterns)
    if jobs <= 1:
        found = [_anneal_restart(n, k, patterns, config, s, budget) for s in streams]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = list(pool.map(_anneal_restart, *zip(*[(n, k, patterns, config, s, budget)
                                                           for s in streams])))
    # highest codegree, then smallest serialization
    ranked = sorted(found, key=lambda g: (-g.min_codegree().minimum, g.to_khg()))
    for witness in ranked:
        value = witness.min_codegree().minimum
        if verify_witness(witness, patterns, value):
            logger.info("local search: codegree %d on %d vertices", value, n)
            return ExtremalResult(n, k, patterns, value, witness, False)
        logger.warning("discarding unverified local-search witness (codegree %d)", value)
    return ExtremalResult(n, k, patterns, 0, Hypergraph(n, k), False)


def verify_witness(graph: Hypergraph, patterns: Sequence[Hypergraph], claimed_d: int,
                   budget: Optional[SearchBudget] = None) -> bool:
    """Minimum codegree at least claimed_d and every pattern provably absent."""
    for pattern in patterns:
        if pattern.k != graph.k:
            raise UniformityMismatch(f"pattern is {pattern.k}-uniform, witness is {graph.k}-uniform")
    if graph.min_codegree().minimum < claimed_d:
        return False
    try:
        return all(contains_pattern(graph, p, budget) is None for p in patterns)
    except BudgetExhausted:
        logger.warning("witness check ran out of budget; not verified")
        return False
