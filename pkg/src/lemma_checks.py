"""
Desk-scale verification of the structural facts about zycles and the
algebraic and partite constructions.

Every check returns a CheckReport whose evidence can be re-verified
against a freshly built host without the search that produced it. A
sub-search that runs out of budget makes the report inconclusive, never
a pass.
"""

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import constructions as cons
from errors import BudgetExhausted, HypergraphError
from extremal import exco_exact, verify_witness
from hypergraph import Hypergraph, KSet
from zycle_search import (
    Embedding,
    SearchBudget,
    ZycleCertificate,
    contains_pattern,
    find_zycle,
    iter_zycles,
    min_zycle_length,
    verify_certificate,
)

logger = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'
INCONCLUSIVE = 'inconclusive'


@dataclass
class CheckReport:
    check_id: str
    parameters: Dict[str, object]
    status: str
    evidence: Dict[str, object] = field(default_factory=dict)
    runtime: float = 0.0
    vacuous: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, include_runtime: bool = True) -> Dict[str, object]:
        document = {
            'check_id': self.check_id,
            'parameters': self.parameters,
            'status': self.status,
            'passed': self.passed,
            'vacuous': self.vacuous,
            'evidence': self.evidence,
            'notes': self.notes,
        }
        if include_runtime:
            document['runtime'] = round(self.runtime, 3)
        return document

    def to_json(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_dict(include_runtime), sort_keys=True) + "\n"


class _Recorder:
    """Collects expectations, evidence and budget failures for one check."""

    def __init__(self, check_id: str, parameters: Dict[str, object]):
        self.check_id = check_id
        self.parameters = parameters
        self.failures: List[str] = []
        self.notes: List[str] = []
        self.evidence: Dict[str, object] = {}
        self.inconclusive = False
        self.vacuous = False
        self.started = time.perf_counter()

    def expect(self, condition: bool, message: str) -> bool:
        if not condition:
            self.failures.append(message)
            logger.warning("%s: %s", self.check_id, message)
        return condition

    def exhausted(self, what: str, exc: BudgetExhausted):
        self.inconclusive = True
        self.notes.append(f"{what}: {exc}")
        logger.warning("%s: %s inconclusive (%s)", self.check_id, what, exc)

    def report(self) -> CheckReport:
        if self.failures:
            status = FAIL
        elif self.inconclusive:
            status = INCONCLUSIVE
        else:
            status = PASS
        return CheckReport(
            check_id=self.check_id,
            parameters=self.parameters,
            status=status,
            evidence=self.evidence,
            runtime=time.perf_counter() - self.started,
            vacuous=self.vacuous,
            notes=self.failures + self.notes,
        )


def _absent(rec: _Recorder, host: Hypergraph, ell: int, budget: Optional[SearchBudget],
            jobs: int, label: str) -> Optional[bool]:
    """True if Z_ell is provably absent, False if found, None if out of budget."""
    try:
        cert = find_zycle(host, ell, budget, jobs)
    except BudgetExhausted as exc:
        rec.exhausted(f"{label} Z_{ell} search", exc)
        return None
    if cert is not None:
        rec.evidence.setdefault('unexpected_zycles', {})[f"{label}:{ell}"] = cert.to_dict()
        return False
    return True


def _present(rec: _Recorder, host: Hypergraph, ell: int, budget: Optional[SearchBudget],
             jobs: int, label: str) -> Optional[ZycleCertificate]:
    try:
        cert = find_zycle(host, ell, budget, jobs)
    except BudgetExhausted as exc:
        rec.exhausted(f"{label} Z_{ell} search", exc)
        return None
    if rec.expect(cert is not None, f"{label}: no Z_{ell} found"):
        rec.expect(bool(verify_certificate(host, cert)), f"{label}: Z_{ell} certificate rejected")
        return cert
    return None


# -- blow-ups ---------------------------------------------------------------------------

def lap_embedding(k: int, r: int, c: int) -> Embedding:
    """
    Z_{cr} into the c-blow-up of Z_r: block t of the long zycle goes to the
    copy number t // r of block t mod r, so each lap round the short zycle
    uses fresh clones.
    """
    host = zycle_blow_up(k, r, c)
    pattern = cons.zycle(k, c * r)
    mapping = []
    for t in range(c * r):
        for j in range(k - 1):
            original = (t % r) * (k - 1) + j
            mapping.append(original * c + t // r)
    return Embedding(pattern=pattern, host=host, mapping=tuple(mapping))


def zycle_blow_up(k: int, r: int, c: int) -> Hypergraph:
    return cons.zycle(k, r).blow_up(c)


def check_blowup_fact(k: int, r: int, c: int, budget: Optional[SearchBudget] = None,
                      jobs: int = 1) -> CheckReport:
    """Z_{cr} embeds in the c-blow-up of Z_r."""
    if k < 3 or r < 3 or c < 1:
        raise HypergraphError(f"need k, r >= 3 and c >= 1, got k={k}, r={r}, c={c}")
    rec = _Recorder('blowup-fact', {'k': k, 'r': r, 'c': c})
    host = zycle_blow_up(k, r, c)
    pattern = cons.zycle(k, c * r)
    rec.evidence['host'] = {'n': host.n, 'edges': host.num_edges}

    explicit = lap_embedding(k, r, c)
    verdict = verify_certificate(host, explicit)
    rec.expect(verdict.ok, f"lap embedding rejected: {verdict.reasons[:3]}")
    rec.evidence['lap_embedding'] = explicit.to_dict()

    try:
        found = contains_pattern(host, pattern, budget)
    except BudgetExhausted as exc:
        rec.exhausted("embedding search", exc)
        return rec.report()
    if rec.expect(found is not None, f"Z_{c * r} not found in the blow-up"):
        rec.expect(bool(verify_certificate(host, found)), "searched embedding rejected")
        rec.evidence['embedding'] = found.to_dict()
    return rec.report()


# -- algebraic construction -----------------------------------------------------------

def chain_certificate(host: Hypergraph, labeling: cons.ClusterLabeling, k: int,
                      p: int) -> Tuple[List[int], ZycleCertificate]:
    """Blocks taken from the clusters V_1, V_{1-k}, V_{(1-k)^2}, ... (first k-1 vertices each)."""
    chain = cons.cluster_chain(k, p, 1)
    blocks = tuple(tuple(labeling.cluster_of_residue(j)[:k - 1]) for j in chain)
    return chain, ZycleCertificate(blocks=blocks, host_n=host.n, host_k=host.k)


def _all_zero_degree(host: Hypergraph, labeling: cons.ClusterLabeling, k: int) -> Optional[int]:
    zero = labeling.cluster(0)
    if len(zero) < k - 1:
        return None
    return host.degree(zero[:k - 1])


def _check_prime_instance(rec: _Recorder, k: int, ell: int, p: int, cluster_size: int,
                          budget: Optional[SearchBudget], jobs: int,
                          observe_limit: int) -> Dict[str, object]:
    n = p * cluster_size
    host = cons.algebraic(k, p, n)
    labeling = cons.algebraic_labeling(p, n)
    profile = host.min_codegree()
    info: Dict[str, object] = {'n': n, 'edges': host.num_edges, 'min_codegree': profile.minimum,
                               'argmin': list(profile.argmin), 'ratio': round(profile.minimum / n, 6)}

    # a (k-1)-set may sit inside the cluster it extends into, losing up to k-2 vertices
    floor = cluster_size - (k - 2)
    rec.expect(profile.minimum >= floor,
               f"p={p}: min codegree {profile.minimum} below n/p - (k-2) = {floor}")
    zero_degree = _all_zero_degree(host, labeling, k)
    info['all_zero_degree'] = zero_degree
    if zero_degree is not None:
        rec.expect(zero_degree == cluster_size,
                   f"p={p}: all-V_0 set has degree {zero_degree}, expected n/p = {cluster_size}")
    rec.expect(p <= 2 * (k - 1) ** ell, f"p={p}: n/p falls below n/(2(k-1)^ell)")

    free = []
    for r in range(2, ell + 1):
        absent = _absent(rec, host, r, budget, jobs, f"p={p}")
        if absent is not None:
            rec.expect(absent, f"p={p}: Z_{r} present")
            free.append(r)
    info['free_lengths'] = free

    order = cons.multiplicative_order(1 - k, p)
    info['order'] = order
    rec.expect(order > ell, f"p={p}: ord(1-k) = {order} does not exceed ell = {ell}")
    if cluster_size >= k - 1:
        chain, cert = chain_certificate(host, labeling, k, p)
        verdict = verify_certificate(host, cert)
        rec.expect(verdict.ok, f"p={p}: cluster chain certificate rejected: {verdict.reasons[:3]}")
        rec.expect(len(chain) == order, f"p={p}: chain closes after {len(chain)} steps, not {order}")
        info['chain'] = chain
        info['certificate'] = cert.to_dict()
    else:
        rec.notes.append(f"p={p}: clusters of size {cluster_size} cannot hold a {k - 1}-block; "
                         f"chain check skipped")

    if comb(n, k - 1) <= observe_limit:
        try:
            observed = min_zycle_length(host, order, budget, jobs)
        except BudgetExhausted as exc:
            rec.notes.append(f"p={p}: minimal length not observed ({exc})")
        else:
            info['observed_min_length'] = observed
            if observed != order:
                rec.notes.append(f"p={p}: observed minimal zycle length {observed} != order {order}")
    return info


def check_algebraic_construction(k: int, ell: int, cluster_size: int,
                                 budget: Optional[SearchBudget] = None, jobs: int = 1,
                                 sweep: bool = False, observe_limit: int = 2000) -> CheckReport:
    """
    The algebraic graph on the smallest admissible prime (every admissible
    prime with sweep) has the promised codegree, no short zycles, and the
    cluster chain zycle of length ord_p(1-k).
    """
    if k < 3 or ell < 2 or cluster_size < 1:
        raise HypergraphError(f"need k >= 3, ell >= 2, cluster_size >= 1, got k={k}, ell={ell}, "
                              f"cluster_size={cluster_size}")
    rec = _Recorder('algebraic-construction', {'k': k, 'ell': ell, 'cluster_size': cluster_size,
                                               'sweep': sweep})
    primes = cons.admissible_primes(k, ell) if sweep else [cons.smallest_admissible_prime(k, ell).p]
    rec.evidence['instances'] = {
        str(p): _check_prime_instance(rec, k, ell, p, cluster_size, budget, jobs, observe_limit)
        for p in primes
    }
    return rec.report()


def _trapped(block: KSet, labeling: cons.ClusterLabeling) -> Optional[int]:
    labels = {labeling.label(v) for v in block}
    if len(labels) == 1:
        (label,) = labels
        if label != 0:
            return label
    return None


def check_cluster_trapping(k: int, ell: int, cluster_size: int,
                           budget: Optional[SearchBudget] = None, jobs: int = 1,
                           max_ell: Optional[int] = None) -> CheckReport:
    """Every shortest zycle of the algebraic graph has a block inside one non-zero cluster."""
    rec = _Recorder('cluster-trapping', {'k': k, 'ell': ell, 'cluster_size': cluster_size})
    p = cons.smallest_admissible_prime(k, ell).p
    n = p * cluster_size
    host = cons.algebraic(k, p, n)
    labeling = cons.algebraic_labeling(p, n)
    bound = max_ell or cons.multiplicative_order(1 - k, p)
    try:
        shortest = min_zycle_length(host, bound, budget, jobs)
    except BudgetExhausted as exc:
        rec.exhausted("shortest zycle search", exc)
        return rec.report()
    rec.evidence.update({'p': p, 'n': n, 'bound': bound, 'length': shortest})
    if shortest is None:
        rec.vacuous = True
        rec.notes.append(f"no zycle up to length {bound}; nothing to trap")
        return rec.report()
    count = 0
    try:
        for cert in iter_zycles(host, shortest, budget):
            count += 1
            clusters = [_trapped(b, labeling) for b in cert.blocks]
            if not rec.expect(any(c is not None for c in clusters),
                              f"zycle {cert.to_dict()['blocks']} has no trapped block"):
                rec.evidence['counterexample'] = cert.to_dict()
                break
            if count == 1:
                rec.evidence['first'] = cert.to_dict()
                rec.evidence['first_clusters'] = clusters
    except BudgetExhausted as exc:
        rec.exhausted("zycle enumeration", exc)
    rec.evidence['zycles_checked'] = count
    return rec.report()


# -- partite constructions --------------------------------------------------------------

def _partite_part(rec: _Recorder, name: str, host: Hypergraph, parts: int, max_ell: int,
                  budget: Optional[SearchBudget], jobs: int):
    profile = host.min_codegree()
    # a pair split across consecutive clusters misses one vertex of the n/parts
    expected = host.n // parts - 1
    rec.expect(profile.minimum >= expected,
               f"{name}: min codegree {profile.minimum} below n/{parts} - 1 = {expected}")
    info: Dict[str, object] = {'n': host.n, 'min_codegree': profile.minimum,
                               'ratio': round(profile.minimum / host.n, 6)}
    free = []
    lengths = [ell for ell in range(2, max_ell + 1) if ell % parts]
    for ell in lengths:
        absent = _absent(rec, host, ell, budget, jobs, name)
        if absent is not None:
            rec.expect(absent, f"{name}: Z_{ell} present")
            free.append(ell)
    info['free_lengths'] = free
    cert = _present(rec, host, parts, budget, jobs, name)
    if cert is not None:
        info['certificate'] = cert.to_dict()
    rec.evidence[name] = info


def check_partite_constructions(n3: int, n4: int, max_ell: int,
                                budget: Optional[SearchBudget] = None,
                                jobs: int = 1) -> CheckReport:
    """
    The tripartite graph has no zycle of length not divisible by 3 but a Z_3; the
    quadripartite graph has no zycle of length not divisible by 4 but a Z_4.
    """
    rec = _Recorder('partite-constructions', {'n3': n3, 'n4': n4, 'max_ell': max_ell})
    _partite_part(rec, 'tripartite', cons.tripartite_iterated(n3), 3, max_ell, budget, jobs)
    _partite_part(rec, 'quadripartite', cons.quadripartite(n4), 4, max_ell, budget, jobs)
    return rec.report()


# -- reduced algebraic graph -----------------------------------------------------------

def check_reduced_chain(k: int, p: int, budget: Optional[SearchBudget] = None,
                        jobs: int = 1) -> CheckReport:
    """V_1 |> V_{1-k} |> ... closes after exactly ord_p(1-k) <= p-1 clusters."""
    rec = _Recorder('reduced-chain', {'k': k, 'p': p})
    host = cons.reduced_algebraic(k, p)
    labeling = cons.reduced_labeling(k, p)
    order = cons.multiplicative_order(1 - k, p)
    chain, cert = chain_certificate(host, labeling, k, p)
    rec.expect(len(chain) == order, f"chain closes after {len(chain)} steps, order is {order}")
    rec.expect(order <= p - 1, f"order {order} exceeds p-1")
    verdict = verify_certificate(host, cert)
    rec.expect(verdict.ok, f"chain certificate rejected: {verdict.reasons[:3]}")
    rec.evidence.update({'order': order, 'chain': chain, 'certificate': cert.to_dict(),
                         'n': host.n, 'edges': host.num_edges})
    return rec.report()


# -- one-edge-deleted zycles --------------------------------------------------------------

def check_zycle_minus_density_witnesses(ell: int, n: int, budget: Optional[SearchBudget] = None,
                                        jobs: int = 1) -> CheckReport:
    """
    ex_co(n, Z_ell^-) <= ex_co(n, Z_ell): the finite ordering behind
    gamma(Z^-) = 0 <= gamma(Z). No limit is claimed.
    """
    if ell < 3:
        raise HypergraphError(f"need ell >= 3, got {ell}")
    rec = _Recorder('zycle-minus-density', {'ell': ell, 'n': n})
    results = {}
    for name, pattern in (('minus', cons.zycle_minus(3, ell)), ('full', cons.zycle(3, ell))):
        result = exco_exact(n, 3, [pattern], budget, jobs)
        if not result.exhaustive:
            rec.inconclusive = True
            rec.notes.append(f"{name}: solver budget exhausted")
        rec.expect(verify_witness(result.witness, [pattern], result.value),
                   f"{name}: witness does not verify")
        results[name] = result
        rec.evidence[name] = {'value': result.value, 'ratio': round(result.ratio, 6),
                              'exhaustive': result.exhaustive,
                              'witness_khg': result.witness.to_khg()}
    rec.expect(results['minus'].value <= results['full'].value,
               f"ex_co(Z^-) = {results['minus'].value} exceeds ex_co(Z) = {results['full'].value}")
    return rec.report()


# -- supplementary structure checks --------------------------------------------------------

def check_kminus_in_algebraic(k: int, p: int, n: int, budget: Optional[SearchBudget] = None,
                              jobs: int = 1) -> CheckReport:
    """K_{k+1}^(k)- sits inside the algebraic graph."""
    rec = _Recorder('kminus-in-algebraic', {'k': k, 'p': p, 'n': n})
    host = cons.algebraic(k, p, n)
    pattern = cons.complete_minus(k)
    if n < p * k:
        rec.notes.append(f"n={n} is below p*k={p * k}; containment is not guaranteed")
    try:
        found = contains_pattern(host, pattern, budget)
    except BudgetExhausted as exc:
        rec.exhausted("embedding search", exc)
        return rec.report()
    if rec.expect(found is not None, f"K_{k + 1}^({k})- not found"):
        rec.expect(bool(verify_certificate(host, found)), "embedding rejected")
        rec.evidence['embedding'] = found.to_dict()
    return rec.report()


def cycle_graph(ell: int) -> Hypergraph:
    return Hypergraph(ell, 2, ((i, (i + 1) % ell) for i in range(ell)))


def check_zycle_identities(max_ell: int = 8, budget: Optional[SearchBudget] = None,
                           jobs: int = 1) -> CheckReport:
    """Z_2^(3) = K_4^(3) and Z_ell^(2) = C_ell, as labeled edge sets."""
    rec = _Recorder('zycle-identities', {'max_ell': max_ell})
    rec.expect(cons.zycle(3, 2) == cons.complete(4, 3), "Z_2^(3) differs from K_4^(3)")
    checked = []
    for ell in range(3, max_ell + 1):
        rec.expect(cons.zycle(2, ell) == cycle_graph(ell), f"Z_{ell}^(2) differs from C_{ell}")
        checked.append(ell)
    rec.evidence['cycle_lengths'] = checked
    return rec.report()


# -- registry ---------------------------------------------------------------------------

CheckFn = Callable[..., CheckReport]

CHECKS: Dict[str, Tuple[CheckFn, Dict[str, object]]] = {
    'blowup-fact': (check_blowup_fact, {'k': 3, 'r': 3, 'c': 2}),
    'algebraic-construction': (check_algebraic_construction, {'k': 3, 'ell': 2, 'cluster_size': 2}),
    'cluster-trapping': (check_cluster_trapping, {'k': 3, 'ell': 2, 'cluster_size': 2}),
    'partite-constructions': (check_partite_constructions, {'n3': 9, 'n4': 8, 'max_ell': 6}),
    'reduced-chain': (check_reduced_chain, {'k': 3, 'p': 5}),
    'zycle-minus-density': (check_zycle_minus_density_witnesses, {'ell': 3, 'n': 6}),
    'kminus-in-algebraic': (check_kminus_in_algebraic, {'k': 3, 'p': 7, 'n': 14}),
    'zycle-identities': (check_zycle_identities, {'max_ell': 8}),
}

# the instances `verify --all` runs
FULL_SUITE: List[Tuple[str, Dict[str, object]]] = [
    ('zycle-identities', {'max_ell': 8}),
    ('blowup-fact', {'k': 3, 'r': 3, 'c': 2}),
    ('blowup-fact', {'k': 3, 'r': 4, 'c': 2}),
    ('blowup-fact', {'k': 4, 'r': 3, 'c': 2}),
    ('algebraic-construction', {'k': 3, 'ell': 2, 'cluster_size': 2}),
    ('algebraic-construction', {'k': 3, 'ell': 3, 'cluster_size': 2}),
    ('algebraic-construction', {'k': 4, 'ell': 2, 'cluster_size': 3}),
    ('algebraic-construction', {'k': 4, 'ell': 3, 'cluster_size': 3}),
    ('cluster-trapping', {'k': 3, 'ell': 2, 'cluster_size': 2}),
    ('partite-constructions', {'n3': 9, 'n4': 8, 'max_ell': 6}),
    ('partite-constructions', {'n3': 12, 'n4': 12, 'max_ell': 6}),
    ('reduced-chain', {'k': 3, 'p': 5}),
    ('reduced-chain', {'k': 3, 'p': 7}),
    ('reduced-chain', {'k': 4, 'p': 5}),
    ('kminus-in-algebraic', {'k': 3, 'p': 7, 'n': 21}),
    ('zycle-minus-density', {'ell': 3, 'n': 6}),
]


def run_check(name: str, params: Optional[Dict[str, object]] = None,
              budget: Optional[SearchBudget] = None, jobs: int = 1) -> CheckReport:
    if name not in CHECKS:
        raise KeyError(f"unknown check '{name}' (known: {', '.join(sorted(CHECKS))})")
    fn, defaults = CHECKS[name]
    arguments = dict(defaults)
    arguments.update(params or {})
    logger.info("running %s %s", name, arguments)
    return fn(budget=budget, jobs=jobs, **arguments)


def _run_entry(name: str, params: Dict[str, object], budget: Optional[SearchBudget]) -> CheckReport:
    return run_check(name, params, budget, jobs=1)


def run_suite(entries: Sequence[Tuple[str, Dict[str, object]]],
              budget: Optional[SearchBudget] = None, jobs: int = 1) -> List[CheckReport]:
    """Run checks, one per worker when jobs > 1; reports keep the entry order."""
    if jobs <= 1 or len(entries) == 1:
        return [run_check(name, params, budget, jobs) for name, params in entries]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_entry, name, params, budget) for name, params in entries]
        return [future.result() for future in futures]


def suite_exit_code(reports: Sequence[CheckReport]) -> int:
    """0 all pass, 1 any failure, 4 any inconclusive (and no failure)."""
    if any(r.status == FAIL for r in reports):
        return 1
    if any(r.status == INCONCLUSIVE for r in reports):
        return 4
    return 0
