import logging
from typing import Optional, Tuple

import constructions as cons
from hypergraph import Hypergraph, read_hypergraph, write_hypergraph

logger = logging.getLogger(__name__)

# family -> parameters it needs
FAMILY_PARAMS = {
    'zycle': ('k', 'ell'),
    'zycle-minus': ('k', 'ell'),
    'zycle-path-plus-edge': ('k', 'ell'),
    'algebraic': ('k', 'p', 'n'),
    'reduced-algebraic': ('k', 'p'),
    'tripartite': ('n',),
    'quadripartite': ('n',),
    'complete': ('n', 'k'),
    'blowup': ('source', 'c'),
}

_FLAG = {'k': '-k', 'ell': '-l', 'p': '-p', 'n': '-n', 'c': '-c', 'source': '--input'}


class GraphCommands:
    """
    Generation, inspection and format conversion of hypergraph files.
    """

    def __init__(self, engine):
        self.engine = engine

    def _build(self, family: str, params: dict) -> Hypergraph:
        if family == 'zycle':
            return cons.zycle(params['k'], params['ell'])
        if family == 'zycle-minus':
            return cons.zycle_minus(params['k'], params['ell'])
        if family == 'zycle-path-plus-edge':
            return cons.zycle_path_plus_edge(params['k'], params['ell'])
        if family == 'algebraic':
            return cons.algebraic(params['k'], params['p'], params['n'])
        if family == 'reduced-algebraic':
            return cons.reduced_algebraic(params['k'], params['p'])
        if family == 'tripartite':
            return cons.tripartite_iterated(params['n'])
        if family == 'quadripartite':
            return cons.quadripartite(params['n'])
        if family == 'complete':
            return cons.complete(params['n'], params['k'])
        return read_hypergraph(params['source']).blow_up(params['c'])

    def gen(self, family: str, output: Optional[str] = None, **params) -> Tuple[int, str, str]:
        """Generate a named family and write it as .khg (stdout without -o)."""
        if family not in FAMILY_PARAMS:
            return 2, "", f"gen: unknown family '{family}' (choose from {', '.join(FAMILY_PARAMS)})"
        missing = [_FLAG[name] for name in FAMILY_PARAMS[family] if params.get(name) is None]
        if missing:
            return 2, "", f"gen: {family} needs {' '.join(missing)}"
        graph = self._build(family, params)
        logger.info("generated %s: %r", family, graph)
        if output is None:
            return 0, graph.to_khg(), ""
        write_hypergraph(graph, output, 'khg')
        return 0, "", ""

    def stats(self, path: str) -> Tuple[int, str, str]:
        """Print n, k, edge count, minimum codegree, an argmin set and the codegree histogram."""
        graph = read_hypergraph(path)
        profile = graph.min_codegree()
        lines = [
            f"n: {graph.n}",
            f"k: {graph.k}",
            f"edges: {graph.num_edges}",
            f"min codegree: {profile.minimum}",
            f"argmin: {' '.join(map(str, profile.argmin))}",
            "histogram:",
        ]
        for degree, count in sorted(profile.histogram.items()):
            lines.append(f"  {degree:>4}: {count}")
        return 0, "\n".join(lines) + "\n", ""

    def export(self, path: str, fmt: str, output: Optional[str] = None) -> Tuple[int, str, str]:
        """Convert between khg, json and edge-list."""
        graph = read_hypergraph(path)
        text = graph.serialize(fmt)
        if output is None:
            return 0, text, ""
        write_hypergraph(graph, output, fmt)
        return 0, "", ""
