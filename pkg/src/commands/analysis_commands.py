import inspect
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from extremal import LocalSearchConfig, exco_exact, exco_local_search
from hypergraph import read_hypergraph
from lemma_checks import CHECKS, FULL_SUITE, run_suite, suite_exit_code
from zycle_search import contains_pattern, find_zycle

logger = logging.getLogger(__name__)


def parse_param(text: str) -> Tuple[str, object]:
    """key=value with the value read as int, float or bool where it parses."""
    if '=' not in text:
        raise ValueError(f"parameter '{text}' is not key=value")
    key, raw = text.split('=', 1)
    key = key.strip().replace('-', '_')
    raw = raw.strip()
    if raw.lower() in ('true', 'false'):
        return key, raw.lower() == 'true'
    for cast in (int, float):
        try:
            return key, cast(raw)
        except ValueError:
            pass
    return key, raw


class AnalysisCommands:
    """
    Searches, extremal runs and the check suite.
    """

    def __init__(self, engine):
        self.engine = engine

    def search(self, path: str, zycle: Optional[int] = None, pattern: Optional[str] = None,
               deterministic: bool = False) -> Tuple[int, str, str]:
        """Look for Z_L (or an arbitrary pattern) in FILE; 0 found, 1 proven absent, 3 budget."""
        if (zycle is None) == (pattern is None):
            return 2, "", "search: give exactly one of --zycle or --pattern"
        host = read_hypergraph(path)
        budget = self.engine.budget(deterministic=deterministic)
        if zycle is not None:
            found = find_zycle(host, zycle, budget, self.engine.jobs)
            target = f"Z_{zycle}"
        else:
            forbidden = read_hypergraph(pattern)
            found = contains_pattern(host, forbidden, budget)
            target = Path(pattern).name
        if found is None:
            return 1, "", f"search: no copy of {target} in {Path(path).name}"
        return 0, found.to_json(), ""

    def exco(self, n: int, k: int, forbid: Sequence[str], exact: bool = False, local: bool = False,
             restarts: int = 4, steps: int = 2000,
             seed_graph: Optional[str] = None) -> Tuple[int, str, str]:
        """Exact (default) or annealed ex_co for the forbidden family."""
        if exact and local:
            return 2, "", "exco: --exact and --local are mutually exclusive"
        if not forbid:
            return 2, "", "exco: at least one --forbid file is required"
        patterns = [read_hypergraph(f) for f in forbid]
        budget = self.engine.budget()
        if local:
            initial = read_hypergraph(seed_graph) if seed_graph else None
            settings = LocalSearchConfig(seed=self.engine.resolve_seed(), restarts=restarts,
                                         steps=steps, initial=initial)
            result = exco_local_search(n, k, patterns, settings, jobs=self.engine.jobs)
            return 0, result.to_json(), ""
        result = exco_exact(n, k, patterns, budget, self.engine.jobs,
                            max_n=self.engine.config.exact_max_n)
        if not result.exhaustive:
            return 3, result.to_json(), "exco: budget exhausted on some level; value is a lower bound"
        return 0, result.to_json(), ""

    def verify(self, run_all: bool = False, check: Optional[str] = None,
               params: Sequence[str] = (), out_dir: Optional[str] = None,
               deterministic: bool = False) -> Tuple[int, str, str]:
        """Run named checks or the full suite; 0 all pass, 1 any fail, 4 any inconclusive."""
        if run_all == (check is not None):
            return 2, "", "verify: give exactly one of --all or --check NAME"
        if run_all:
            if params:
                return 2, "", "verify: --param only applies with --check"
            entries = list(FULL_SUITE)
        else:
            if check not in CHECKS:
                return 2, "", f"verify: unknown check '{check}' (known: {', '.join(sorted(CHECKS))})"
            arguments = dict(parse_param(p) for p in params)
            accepted = set(inspect.signature(CHECKS[check][0]).parameters) - {'budget', 'jobs'}
            unknown = sorted(set(arguments) - accepted)
            if unknown:
                return 2, "", f"verify: {check} does not take {', '.join(unknown)}"
            entries = [(check, arguments)]

        reports = run_suite(entries, self.engine.budget(), self.engine.jobs)
        logger.info("ran %d checks", len(reports))
        include_runtime = not deterministic

        if out_dir is None:
            return suite_exit_code(reports), "".join(r.to_json(include_runtime) for r in reports), ""

        target = Path(out_dir)
        target.mkdir(parents=True, exist_ok=True)
        summary: List[str] = []
        for index, report in enumerate(reports, 1):
            report_path = target / f"{index:02d}-{report.check_id}.json"
            with open(report_path, 'w', encoding='utf-8', newline='\n') as handle:
                handle.write(report.to_json(include_runtime))
            summary.append(f"{report.status:<13} {report.check_id:<24} {report_path}")
        return suite_exit_code(reports), "\n".join(summary) + "\n", ""


def check_names() -> List[str]:
    return sorted(CHECKS)

