"""Tests for the command line and the engine behind it."""

import json

import pytest
from click.testing import CliRunner

import constructions as cons
from config import ZycloneConfig
from hypergraph import write_hypergraph
from main import cli, run
from zyclone_engine import ZycloneEngine


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, ['--jobs', '1', *args])


class TestGen:
    """gen and stats."""

    def test_zycle_then_stats(self, runner, tmp_path):
        path = tmp_path / "z.khg"
        result = invoke(runner, 'gen', 'zycle', '-k', '3', '-l', '2', '-o', str(path))
        assert result.exit_code == 0
        assert path.read_text() == "4 3\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n"

        result = invoke(runner, 'stats', str(path))
        assert result.exit_code == 0
        assert "n: 4" in result.stdout
        assert "k: 3" in result.stdout
        assert "edges: 4" in result.stdout
        assert "min codegree: 2" in result.stdout

    def test_stdout_without_output(self, runner):
        result = invoke(runner, 'gen', 'complete', '-n', '4', '-k', '3')
        assert result.exit_code == 0
        assert result.stdout.startswith("4 3\n")

    def test_missing_parameter(self, runner):
        result = invoke(runner, 'gen', 'algebraic', '-k', '3', '-p', '7')
        assert result.exit_code == 2
        assert "needs -n" in result.stderr

    def test_unknown_family(self, runner):
        result = invoke(runner, 'gen', 'petersen')
        assert result.exit_code == 2

    def test_construction_error(self, runner):
        result = invoke(runner, 'gen', 'algebraic', '-k', '3', '-p', '7', '-n', '15')
        assert result.exit_code == 2
        assert result.stderr.startswith("gen: ")
        assert "7 does not divide 15" in result.stderr

    def test_blowup(self, runner, tmp_path):
        source = tmp_path / "edge.khg"
        source.write_text("3 3\n0 1 2\n")
        result = invoke(runner, 'gen', 'blowup', '--input', str(source), '-c', '2')
        assert result.exit_code == 0
        assert result.stdout.startswith("6 3\n")
        assert len(result.stdout.splitlines()) == 9

    def test_unknown_flag(self, runner):
        result = invoke(runner, 'gen', 'zycle', '--colour', 'red')
        assert result.exit_code == 2


class TestSearch:
    """search exit codes and output."""

    @pytest.fixture
    def algebraic_file(self, tmp_path):
        path = tmp_path / "f.khg"
        result = invoke(CliRunner(), 'gen', 'algebraic', '-k', '3', '-p', '7', '-n', '14', '-o', str(path))
        assert result.exit_code == 0
        return path

    def test_proven_absent(self, runner, algebraic_file):
        result = invoke(runner, 'search', str(algebraic_file), '--zycle', '2')
        assert result.exit_code == 1
        assert result.stdout == ""

    def test_found(self, runner, algebraic_file):
        result = invoke(runner, 'search', str(algebraic_file), '--zycle', '6', '--deterministic')
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document['type'] == 'zycle'
        assert document['ell'] == 6

    def test_missing_file(self, runner, tmp_path):
        result = invoke(runner, 'search', str(tmp_path / "missing.khg"), '--zycle', '3')
        assert result.exit_code == 2
        assert "no such file" in result.stderr
        assert len(result.stderr.strip().splitlines()) == 1

    def test_pattern(self, runner, tmp_path):
        host, pattern = tmp_path / "h.khg", tmp_path / "p.khg"
        write_hypergraph(cons.tripartite_iterated(9), host)
        write_hypergraph(cons.zycle(3, 3), pattern)
        result = invoke(runner, 'search', str(host), '--pattern', str(pattern))
        assert result.exit_code == 0
        assert json.loads(result.stdout)['type'] == 'embedding'

    def test_needs_exactly_one_target(self, runner, algebraic_file):
        result = invoke(runner, 'search', str(algebraic_file))
        assert result.exit_code == 2

    def test_budget_exhausted(self, runner, tmp_path):
        path = tmp_path / "z5.khg"
        write_hypergraph(cons.zycle(3, 5), path)
        result = invoke(runner, 'search', str(path), '--zycle', '5', '--budget-nodes', '1')
        assert result.exit_code == 3
        assert "budget exhausted" in result.stderr

    def test_deterministic_output_is_stable(self, runner, tmp_path):
        path = tmp_path / "t.khg"
        write_hypergraph(cons.tripartite_iterated(12), path)
        outputs = set()
        for jobs in ('1', '2', '1', '2'):
            result = runner.invoke(cli, ['--jobs', jobs, 'search', str(path), '--zycle', '3',
                                         '--deterministic'])
            assert result.exit_code == 0
            outputs.add(result.stdout)
        assert len(outputs) == 1


class TestExport:
    """Format conversion."""

    def test_round_trip_is_byte_exact(self, runner, tmp_path):
        original = tmp_path / "r.khg"
        as_json = tmp_path / "r.json"
        invoke(runner, 'gen', 'reduced-algebraic', '-k', '3', '-p', '5', '-o', str(original))
        result = invoke(runner, 'export', str(original), '--format', 'json', '-o', str(as_json))
        assert result.exit_code == 0
        result = invoke(runner, 'export', str(as_json), '--format', 'khg')
        assert result.exit_code == 0
        assert result.stdout == original.read_text()

    def test_edge_list(self, runner, tmp_path):
        path = tmp_path / "k4.khg"
        write_hypergraph(cons.complete(4, 3), path)
        result = invoke(runner, 'export', str(path), '--format', 'edge-list')
        assert result.stdout == "0 1 2\n0 1 3\n0 2 3\n1 2 3\n"

    def test_output_file_uses_lf(self, runner, tmp_path):
        source, target = tmp_path / "k4.khg", tmp_path / "k4.json"
        write_hypergraph(cons.complete(4, 3), source)
        result = invoke(runner, 'export', str(source), '--format', 'json', '-o', str(target))
        assert result.exit_code == 0
        assert result.stdout == ""
        assert target.read_bytes() == cons.complete(4, 3).to_json().encode()

    def test_bad_format(self, runner, tmp_path):
        path = tmp_path / "k4.khg"
        write_hypergraph(cons.complete(4, 3), path)
        assert invoke(runner, 'export', str(path), '--format', 'yaml').exit_code == 2

    def test_parse_error(self, runner, tmp_path):
        path = tmp_path / "bad.khg"
        path.write_text("4 3\n0 1\n")
        result = invoke(runner, 'export', str(path), '--format', 'json')
        assert result.exit_code == 2
        assert result.stderr.startswith("export: ")


class TestExco:
    """Extremal runs."""

    @pytest.fixture
    def k4_file(self, tmp_path):
        path = tmp_path / "k4.khg"
        write_hypergraph(cons.complete(4, 3), path)
        return path

    def test_exact(self, runner, k4_file):
        result = invoke(runner, 'exco', '-n', '4', '-k', '3', '--forbid', str(k4_file))
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document['value'] == 1
        assert document['exhaustive'] is True

    def test_local_with_seed(self, runner, k4_file):
        args = ['exco', '-n', '5', '-k', '3', '--forbid', str(k4_file), '--local',
                '--seed', '4', '--restarts', '1', '--steps', '100']
        first = invoke(runner, *args)
        second = invoke(runner, *args)
        assert first.exit_code == 0
        assert first.stdout == second.stdout
        assert json.loads(first.stdout)['exhaustive'] is False

    def test_local_without_seed_logs_it(self, runner, k4_file):
        result = invoke(runner, 'exco', '-n', '5', '-k', '3', '--forbid', str(k4_file), '--local',
                        '--restarts', '1', '--steps', '50')
        assert result.exit_code == 0
        assert "using seed" in result.stderr

    def test_modes_exclusive(self, runner, k4_file):
        result = invoke(runner, 'exco', '-n', '4', '-k', '3', '--forbid', str(k4_file), '--exact', '--local')
        assert result.exit_code == 2

    def test_too_large(self, runner, k4_file):
        result = invoke(runner, 'exco', '-n', '12', '-k', '3', '--forbid', str(k4_file))
        assert result.exit_code == 2
        assert "exceeds" in result.stderr


class TestVerify:
    """The check suite from the command line."""

    def test_single_check(self, runner):
        result = invoke(runner, 'verify', '--check', 'reduced-chain', '--param', 'k=3', '--param', 'p=5',
                        '--deterministic')
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document['status'] == 'pass'
        assert 'runtime' not in document

    def test_out_dir(self, runner, tmp_path):
        result = invoke(runner, 'verify', '--check', 'zycle-identities', '--out-dir', str(tmp_path / "reports"))
        assert result.exit_code == 0
        written = list((tmp_path / "reports").glob("*.json"))
        assert [p.name for p in written] == ["01-zycle-identities.json"]
        data = written[0].read_bytes()
        assert data.endswith(b"}\n")
        assert b"\r\n" not in data

    def test_unknown_check(self, runner):
        result = invoke(runner, 'verify', '--check', 'nonsense')
        assert result.exit_code == 2

    def test_unknown_param(self, runner):
        result = invoke(runner, 'verify', '--check', 'reduced-chain', '--param', 'q=3')
        assert result.exit_code == 2
        assert "does not take q" in result.stderr

    def test_needs_a_selection(self, runner):
        assert invoke(runner, 'verify').exit_code == 2

    def test_inconclusive_exit_code(self, runner):
        result = invoke(runner, 'verify', '--check', 'blowup-fact', '--budget-nodes', '1')
        assert result.exit_code == 4


class TestEngine:
    """Direct engine use and configuration."""

    def test_unknown_subcommand(self):
        engine = ZycloneEngine(ZycloneConfig.from_env())
        assert engine.execute('frobnicate')[0] == 2

    def test_env_configures_jobs(self, monkeypatch):
        monkeypatch.setenv('ZYCLONE_JOBS', '3')
        assert ZycloneConfig.from_env().jobs == 3
        assert ZycloneConfig.from_env().with_overrides(jobs=2).jobs == 2

    def test_bad_env_value(self, monkeypatch, runner):
        monkeypatch.setenv('ZYCLONE_BUDGET_NODES', 'lots')
        with pytest.raises(ValueError, match="ZYCLONE_BUDGET_NODES"):
            ZycloneConfig.from_env()
        assert runner.invoke(cli, ['stats', 'x.khg']).exit_code == 2

    def test_run_returns_exit_code(self, tmp_path):
        path = tmp_path / "k4.khg"
        write_hypergraph(cons.complete(4, 3), path)
        assert run(['--jobs', '1', 'search', str(path), '--zycle', '2']) == 0
        assert run(['--jobs', '1', 'search', str(path), '--zycle', '3']) == 1
        assert run(['--no-such-flag']) == 2
