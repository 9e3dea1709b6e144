"""
Immutable k-uniform hypergraphs.

Vertices are the integers 0..n-1. Edges and (k-1)-sets are sorted tuples
(``KSet``). Degree, neighbourhood and back-neighbourhood queries go
through a link index that is built lazily on first use.
"""

import itertools
import json
import logging
import threading
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from errors import (
    FormatError,
    HypergraphError,
    OutOfRangeVertex,
    UniformityTooSmall,
    WrongEdgeSize,
    WrongSetSize,
)

logger = logging.getLogger(__name__)

KSet = Tuple[int, ...]

FORMATS = ('khg', 'json', 'edge-list')

_EMPTY: FrozenSet[int] = frozenset()


def kset(vertices: Iterable[int]) -> KSet:
    """Sorted tuple of distinct non-negative vertices."""
    items = tuple(sorted(vertices))
    for a, b in zip(items, items[1:]):
        if a == b:
            raise WrongSetSize(f"repeated vertex {a} in {list(items)}")
    if items and items[0] < 0:
        raise OutOfRangeVertex(f"negative vertex {items[0]}")
    return items


@dataclass(frozen=True)
class CodegreeProfile:
    minimum: int
    argmin: KSet
    histogram: Dict[int, int]

    def to_dict(self) -> Dict[str, object]:
        return {
            'minimum': self.minimum,
            'argmin': list(self.argmin),
            'histogram': {str(d): c for d, c in sorted(self.histogram.items())},
        }


class Hypergraph:
    """
    An n-vertex k-uniform hypergraph.

    Instances never change after construction; the lazily built link
    index is guarded by a lock so concurrent readers initialize it once.
    """

    def __init__(self, n: int, k: int, edges: Iterable[Iterable[int]] = ()):
        if k < 2:
            raise UniformityTooSmall(f"uniformity must be at least 2, got {k}")
        if n < 0:
            raise HypergraphError(f"vertex count must be non-negative, got {n}")
        canonical = set()
        for edge in edges:
            items = tuple(sorted(edge))
            if len(items) != k or len(set(items)) != k:
                raise WrongEdgeSize(f"edge {list(edge)} does not have {k} distinct vertices")
            if items[0] < 0 or items[-1] >= n:
                raise OutOfRangeVertex(f"edge {list(items)} leaves vertex range [0, {n})")
            canonical.add(items)
        self.n = n
        self.k = k
        self.edges: Tuple[KSet, ...] = tuple(sorted(canonical))
        self._edge_set: FrozenSet[KSet] = frozenset(canonical)
        self._lock = threading.Lock()
        self._links: Optional[Dict[KSet, FrozenSet[int]]] = None
        self._incident: Optional[Dict[int, Tuple[KSet, ...]]] = None

    # -- identity -----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.k, self.edges) == (other.n, other.k, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, k={self.k}, edges={len(self.edges)})"

    def __getstate__(self):
        return {'n': self.n, 'k': self.k, 'edges': self.edges}

    def __setstate__(self, state):
        self.n = state['n']
        self.k = state['k']
        self.edges = state['edges']
        self._edge_set = frozenset(self.edges)
        self._lock = threading.Lock()
        self._links = None
        self._incident = None

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    # -- indexes ------------------------------------------------------------------

    def _ensure_index(self):
        if self._links is not None:
            return
        with self._lock:
            if self._links is not None:
                return
            links: Dict[KSet, Set[int]] = defaultdict(set)
            incident: Dict[int, List[KSet]] = defaultdict(list)
            for edge in self.edges:
                for i, v in enumerate(edge):
                    links[edge[:i] + edge[i + 1:]].add(v)
                    incident[v].append(edge)
            self._incident = {v: tuple(es) for v, es in incident.items()}
            # published last: readers test _links first
            self._links = {x: frozenset(vs) for x, vs in links.items()}
            logger.debug("indexed %r: %d linked (k-1)-sets", self, len(self._links))

    def link(self, x: KSet) -> FrozenSet[int]:
        """Neighbourhood of a sorted (k-1)-tuple, without validation."""
        self._ensure_index()
        return self._links.get(x, _EMPTY)

    def incident_edges(self, v: int) -> Tuple[KSet, ...]:
        self._ensure_index()
        return self._incident.get(v, ())

    def vertex_degree(self, v: int) -> int:
        return len(self.incident_edges(v))

    def linked_sets(self) -> Dict[KSet, FrozenSet[int]]:
        """Every (k-1)-set of positive degree, with its neighbourhood."""
        self._ensure_index()
        return self._links

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self._edge_set

    # -- queries ------------------------------------------------------------------

    def _checked(self, vertices: Iterable[int], size: Optional[int] = None) -> KSet:
        items = kset(vertices)
        if items and items[-1] >= self.n:
            raise OutOfRangeVertex(f"vertex {items[-1]} outside [0, {self.n})")
        if size is not None and len(items) != size:
            raise WrongSetSize(f"expected a {size}-set, got {list(items)}")
        return items

    def degree(self, vertices: Iterable[int]) -> int:
        """Number of edges containing the given set."""
        s = self._checked(vertices)
        if len(s) > self.k:
            return 0
        if len(s) == self.k:
            return int(s in self._edge_set)
        if len(s) == self.k - 1:
            return len(self.link(s))
        if not s:
            return len(self.edges)
        wanted = set(s)
        return sum(1 for edge in self.incident_edges(s[0]) if wanted.issubset(edge))

    def min_codegree(self) -> CodegreeProfile:
        if self.n < self.k - 1:
            raise HypergraphError(f"need at least {self.k - 1} vertices, got {self.n}")
        self._ensure_index()
        links = self._links
        histogram: Counter = Counter()
        minimum = None
        argmin: KSet = ()
        for x in itertools.combinations(range(self.n), self.k - 1):
            d = len(links.get(x, _EMPTY))
            histogram[d] += 1
            if minimum is None or d < minimum:
                minimum, argmin = d, x
        return CodegreeProfile(minimum=minimum or 0, argmin=argmin, histogram=dict(histogram))

    def neighborhood(self, x: Iterable[int]) -> FrozenSet[int]:
        return self.link(self._checked(x, self.k - 1))

    def back_neighborhood(self, e: Iterable[int]) -> FrozenSet[KSet]:
        """All (k-1)-sets f with f + {v} an edge for every v in e."""
        block = self._checked(e, self.k - 1)
        result: Optional[Set[KSet]] = None
        for v in block:
            # f + {v} is an edge exactly when f = edge - {v} for an edge through v
            candidates = set()
            for edge in self.incident_edges(v):
                i = edge.index(v)
                candidates.add(edge[:i] + edge[i + 1:])
            result = candidates if result is None else result & candidates
            if not result:
                break
        return frozenset(result or ())

    def back_related(self, e: Iterable[int], f: Iterable[int]) -> bool:
        """e |> f: e + {v} is an edge for every v in f."""
        first = self._checked(e, self.k - 1)
        second = self._checked(f, self.k - 1)
        base = set(first)
        # v in e gives a (k-1)-set, never an edge
        return all(v not in base and tuple(sorted(base | {v})) in self._edge_set for v in second)

    def blow_up(self, c: int) -> "Hypergraph":
        """Replace vertex i by the clones i*c .. i*c + c - 1."""
        if c < 1:
            raise HypergraphError(f"blow-up multiplicity must be positive, got {c}")
        edges = []
        for edge in self.edges:
            classes = [range(v * c, (v + 1) * c) for v in edge]
            edges.extend(itertools.product(*classes))
        return Hypergraph(self.n * c, self.k, edges)

    # -- derived graphs -------------------------------------------------------------

    def relabel(self, mapping: Sequence[int]) -> "Hypergraph":
        """Apply the vertex bijection old -> mapping[old]."""
        if sorted(mapping) != list(range(self.n)):
            raise HypergraphError("relabeling must be a permutation of the vertices")
        return Hypergraph(self.n, self.k, ([mapping[v] for v in edge] for edge in self.edges))

    def without_edge(self, edge: Iterable[int]) -> "Hypergraph":
        target = tuple(sorted(edge))
        if target not in self._edge_set:
            raise HypergraphError(f"{list(target)} is not an edge")
        return Hypergraph(self.n, self.k, (e for e in self.edges if e != target))

    def with_edges(self, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return Hypergraph(self.n, self.k, itertools.chain(self.edges, edges))

    def is_subgraph_of(self, other: "Hypergraph") -> bool:
        """Same labels, edge set contained in the other graph's."""
        return self.k == other.k and self.n <= other.n and self._edge_set <= other._edge_set

    # -- serialization --------------------------------------------------------------

    def to_khg(self) -> str:
        lines = [f"{self.n} {self.k}"]
        lines.extend(" ".join(map(str, edge)) for edge in self.edges)
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        document = {'n': self.n, 'k': self.k, 'edges': [list(edge) for edge in self.edges]}
        return json.dumps(document, sort_keys=True) + "\n"

    def to_edge_list(self) -> str:
        return "".join(" ".join(map(str, edge)) + "\n" for edge in self.edges)

    def serialize(self, fmt: str = 'khg') -> str:
        if fmt == 'khg':
            return self.to_khg()
        if fmt == 'json':
            return self.to_json()
        if fmt == 'edge-list':
            return self.to_edge_list()
        raise FormatError(f"unknown format '{fmt}' (expected one of {', '.join(FORMATS)})")


def build(n: int, k: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Validated, canonical, deduplicated hypergraph."""
    if n < k:
        raise HypergraphError(f"need n >= k, got n={n}, k={k}")
    return Hypergraph(n, k, edges)


def _int_row(line: str, lineno: int) -> List[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers, got '{line.strip()}'")


def parse_khg(text: str) -> Hypergraph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        row = _int_row(line, lineno)
        if header is None:
            if len(row) != 2:
                raise FormatError(f"line {lineno}: header must be 'n k'")
            header = row
        else:
            edges.append(row)
    if header is None:
        raise FormatError("missing 'n k' header")
    n, k = header
    return Hypergraph(n, k, edges)


def parse_json(text: str) -> Hypergraph:
    try:
        document = json.loads(text)
        return Hypergraph(document['n'], document['k'], document['edges'])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"invalid hypergraph json: {exc}")


def parse_edge_list(text: str, n: Optional[int] = None) -> Hypergraph:
    """Header-less edge rows; n defaults to one past the largest vertex."""
    rows = [_int_row(line, i) for i, line in enumerate(text.splitlines(), 1)
            if line.strip() and not line.lstrip().startswith('#')]
    if not rows:
        raise FormatError("edge list is empty; uniformity cannot be inferred")
    k = len(rows[0])
    if n is None:
        n = max(max(row) for row in rows) + 1
    return Hypergraph(n, k, rows)


def detect_format(path: Union[str, Path]) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == '.json':
        return 'json'
    if suffix in ('.edges', '.txt', '.el'):
        return 'edge-list'
    return 'khg'


def parse(text: str, fmt: str = 'khg') -> Hypergraph:
    if fmt == 'khg':
        return parse_khg(text)
    if fmt == 'json':
        return parse_json(text)
    if fmt == 'edge-list':
        return parse_edge_list(text)
    raise FormatError(f"unknown format '{fmt}' (expected one of {', '.join(FORMATS)})")


def read_hypergraph(path: Union[str, Path], fmt: Optional[str] = None) -> Hypergraph:
    path = Path(path)
    return parse(path.read_text(encoding='utf-8'), fmt or detect_format(path))


def write_hypergraph(graph: Hypergraph, path: Union[str, Path], fmt: Optional[str] = None):
    path = Path(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(graph.serialize(fmt or detect_format(path)))
