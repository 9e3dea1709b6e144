"""Tests for the lemma checks and the suite runner."""

import json

import pytest

import constructions as cons
from extremal import verify_witness
from hypergraph import parse_khg
from lemma_checks import (
    CHECKS,
    FAIL,
    FULL_SUITE,
    INCONCLUSIVE,
    PASS,
    CheckReport,
    check_algebraic_construction,
    check_blowup_fact,
    check_cluster_trapping,
    check_kminus_in_algebraic,
    check_partite_constructions,
    check_reduced_chain,
    check_zycle_identities,
    check_zycle_minus_density_witnesses,
    lap_embedding,
    run_check,
    run_suite,
    suite_exit_code,
    zycle_blow_up,
)
from zycle_search import Embedding, SearchBudget, ZycleCertificate, verify_certificate


class TestBlowupFact:
    """Long zycles inside blow-ups of short ones."""

    @pytest.mark.parametrize("k, r, c", [(3, 3, 2), (3, 3, 1), (3, 4, 2), (4, 3, 2)])
    def test_passes(self, budget, k, r, c):
        report = check_blowup_fact(k, r, c, budget)
        assert report.status == PASS, report.notes

    def test_lap_embedding_verifies_on_its_own(self):
        emb = lap_embedding(3, 3, 2)
        assert verify_certificate(zycle_blow_up(3, 3, 2), emb)

    def test_evidence_re_verifies(self, budget):
        report = check_blowup_fact(3, 3, 2, budget)
        host = zycle_blow_up(3, 3, 2)
        emb = Embedding.from_dict(report.evidence['embedding'], cons.zycle(3, 6), host)
        assert verify_certificate(host, emb)

    def test_budget_makes_it_inconclusive(self):
        report = check_blowup_fact(3, 3, 2, SearchBudget(node_limit=1))
        assert report.status == INCONCLUSIVE

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            check_blowup_fact(3, 2, 2)


class TestAlgebraicConstruction:
    """The modular construction at the smallest admissible prime."""

    def test_triples_length_two(self, budget):
        report = check_algebraic_construction(3, 2, 2, budget)
        assert report.status == PASS, report.notes
        instance = report.evidence['instances']['7']
        assert instance['n'] == 14
        assert instance['min_codegree'] == 1
        assert instance['all_zero_degree'] == 2
        assert instance['free_lengths'] == [2]
        assert instance['order'] == 6
        assert instance['chain'] == [1, 5, 4, 6, 2, 3]
        assert instance['observed_min_length'] == 6

    def test_triples_length_three(self, budget):
        report = check_algebraic_construction(3, 3, 2, budget)
        assert report.status == PASS, report.notes
        instance = report.evidence['instances']['11']
        assert instance['free_lengths'] == [2, 3]
        assert instance['order'] == 5

    def test_chain_certificate_re_verifies(self, budget):
        report = check_algebraic_construction(3, 2, 2, budget)
        host = cons.algebraic(3, 7, 14)
        document = report.evidence['instances']['7']['certificate']
        assert verify_certificate(host, ZycleCertificate.from_dict(document, host))

    def test_small_clusters_skip_the_chain(self, budget):
        report = check_algebraic_construction(3, 2, 1, budget)
        assert report.status == PASS, report.notes
        assert 'chain' not in report.evidence['instances']['7']
        assert any("chain check skipped" in note for note in report.notes)

    def test_sweep_covers_every_admissible_prime(self, budget):
        report = check_algebraic_construction(3, 3, 2, budget, sweep=True, observe_limit=0)
        assert sorted(report.evidence['instances']) == ['11', '13']
        assert report.status == PASS, report.notes

    @pytest.mark.slow
    def test_four_uniform(self, budget):
        report = check_algebraic_construction(4, 2, 3, budget)
        assert report.status == PASS, report.notes
        assert report.evidence['instances']['11']['order'] == 10


class TestClusterTrapping:
    """Shortest zycles keep a block inside one cluster."""

    def test_default_instance(self, budget):
        report = check_cluster_trapping(3, 2, 2, budget)
        assert report.status == PASS, report.notes
        assert not report.vacuous
        assert report.evidence['length'] == 6
        assert report.evidence['zycles_checked'] == 1

    def test_no_zycle_is_vacuous(self, budget):
        report = check_cluster_trapping(3, 2, 2, budget, max_ell=5)
        assert report.status == PASS
        assert report.vacuous

    def test_larger_clusters(self, budget):
        report = check_cluster_trapping(3, 2, 3, budget)
        assert report.status == PASS, report.notes


class TestPartiteConstructions:
    """Tripartite and quadripartite zycle spectra."""

    def test_small(self, budget):
        report = check_partite_constructions(9, 8, 6, budget)
        assert report.status == PASS, report.notes
        assert report.evidence['tripartite']['free_lengths'] == [2, 4, 5]
        assert report.evidence['quadripartite']['free_lengths'] == [2, 3, 5, 6]

    def test_reduced_scope(self, budget):
        report = check_partite_constructions(9, 8, 2, budget)
        assert report.status == PASS
        assert report.evidence['quadripartite']['free_lengths'] == [2]

    @pytest.mark.slow
    def test_one_size_up(self, budget):
        report = check_partite_constructions(12, 12, 6, budget)
        assert report.status == PASS, report.notes


class TestReducedChain:
    """Cluster chains in the reduced construction."""

    @pytest.mark.parametrize("k, p, order", [(3, 5, 4), (3, 7, 6), (4, 5, 4)])
    def test_orders(self, k, p, order):
        report = check_reduced_chain(k, p)
        assert report.status == PASS, report.notes
        assert report.evidence['order'] == order

    def test_chain_through_clusters(self):
        report = check_reduced_chain(3, 5)
        assert report.evidence['chain'] == [1, 3, 4, 2]
        assert report.evidence['certificate']['blocks'] == [[0, 1], [4, 5], [6, 7], [2, 3]]


class TestZycleMinusDensity:
    """ex_co of the one-edge-deleted zycle never exceeds the full one."""

    def test_pattern_too_large(self, budget):
        report = check_zycle_minus_density_witnesses(3, 4, budget)
        assert report.status == PASS
        assert report.evidence['minus']['value'] == report.evidence['full']['value'] == 2

    def test_witnesses_re_verify(self, budget):
        report = check_zycle_minus_density_witnesses(4, 5, budget)
        for name, pattern in (('minus', cons.zycle_minus(3, 4)), ('full', cons.zycle(3, 4))):
            witness = parse_khg(report.evidence[name]['witness_khg'])
            assert verify_witness(witness, [pattern], report.evidence[name]['value'])

    def test_length_too_small(self):
        with pytest.raises(ValueError):
            check_zycle_minus_density_witnesses(2, 4)

    def test_instance_too_large(self):
        with pytest.raises(ValueError, match="exceeds"):
            check_zycle_minus_density_witnesses(3, 9)

    @pytest.mark.slow
    def test_six_vertices(self, budget):
        report = check_zycle_minus_density_witnesses(3, 6, budget)
        assert report.status == PASS, report.notes


class TestSupplementaryChecks:
    """K_4^- containment and the small-case identities."""

    def test_kminus(self, budget):
        report = check_kminus_in_algebraic(3, 7, 21, budget)
        assert report.status == PASS, report.notes
        assert report.notes == []

    def test_kminus_small_host_is_noted(self, budget):
        report = check_kminus_in_algebraic(3, 7, 14, budget)
        assert report.status == PASS
        assert any("below p*k" in note for note in report.notes)

    def test_identities(self):
        report = check_zycle_identities(6)
        assert report.status == PASS
        assert report.evidence['cycle_lengths'] == [3, 4, 5, 6]


class TestReports:
    """Report documents, the registry and the suite runner."""

    def test_json_without_runtime_is_stable(self, budget):
        first = check_reduced_chain(3, 5).to_json(include_runtime=False)
        second = check_reduced_chain(3, 5).to_json(include_runtime=False)
        assert first == second
        assert 'runtime' not in json.loads(first)

    def test_json_fields(self):
        document = json.loads(check_reduced_chain(3, 5).to_json())
        assert document['check_id'] == 'reduced-chain'
        assert document['parameters'] == {'k': 3, 'p': 5}
        assert document['passed'] is True
        assert document['vacuous'] is False
        assert 'runtime' in document

    def test_run_check_applies_defaults(self, budget):
        report = run_check('reduced-chain', {'p': 7}, budget)
        assert report.parameters == {'k': 3, 'p': 7}

    def test_unknown_check(self):
        with pytest.raises(KeyError, match="unknown check"):
            run_check('no-such-check')

    def test_suite_keeps_order(self, budget):
        entries = [('zycle-identities', {'max_ell': 4}), ('reduced-chain', {'k': 3, 'p': 5})]
        reports = run_suite(entries, budget, jobs=2)
        assert [r.check_id for r in reports] == ['zycle-identities', 'reduced-chain']
        assert suite_exit_code(reports) == 0

    def test_exit_codes(self):
        passed = CheckReport('a', {}, PASS)
        failed = CheckReport('b', {}, FAIL)
        unsure = CheckReport('c', {}, INCONCLUSIVE)
        assert suite_exit_code([passed]) == 0
        assert suite_exit_code([passed, unsure]) == 4
        assert suite_exit_code([unsure, failed]) == 1

    def test_suite_names_are_registered(self):
        assert {name for name, _ in FULL_SUITE} == set(CHECKS)
