#!/usr/bin/env python3
"""
zyclone command line: generate, inspect, search and verify k-uniform hypergraphs.

Payloads (.khg, JSON) go to stdout; diagnostics and logs go to stderr.
"""

import os
import sys
from typing import Optional, Sequence, Tuple

import click
from rich.console import Console
from rich.theme import Theme

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__)))

from commands.analysis_commands import check_names
from commands.graph_commands import FAMILY_PARAMS
from config import ZycloneConfig
from hypergraph import FORMATS
from log_config import initialize_logging
from zyclone_engine import ZycloneEngine

error_console = Console(stderr=True, theme=Theme({
    "info": "cyan",
    "warning": "yellow",
    "error": "bold red",
}))

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


def _emit(result: Tuple[int, str, str]):
    """Write an engine result to the streams and exit with its code."""
    exit_code, stdout, stderr = result
    if stdout:
        click.echo(stdout, nl=False)
    if stderr:
        error_console.print(stderr, style="error", markup=False, highlight=False, soft_wrap=True)
    click.get_current_context().exit(exit_code)


def _engine(budget_nodes: Optional[int] = None, budget_seconds: Optional[float] = None) -> ZycloneEngine:
    engine: ZycloneEngine = click.get_current_context().find_object(ZycloneEngine)
    engine.config = engine.config.with_overrides(budget_nodes=budget_nodes, budget_seconds=budget_seconds)
    return engine


def budget_options(command):
    command = click.option('--budget-seconds', type=click.FloatRange(min=0, min_open=True),
                           help='Wall-clock limit per search.')(command)
    command = click.option('--budget-nodes', type=click.IntRange(min=1),
                           help='Node limit per search.')(command)
    return command


@click.group(context_settings={'help_option_names': ['-h', '--help']})
@click.option('--jobs', type=click.IntRange(min=1), help='Worker processes (default: ZYCLONE_JOBS or all cores).')
@click.option('--log-level', type=click.Choice(LOG_LEVELS, case_sensitive=False), help='Logging level on stderr.')
@click.pass_context
def cli(ctx: click.Context, jobs: Optional[int], log_level: Optional[str]):
    """Zycle hypergraphs: constructions, searches and codegree extremal numbers."""
    try:
        config = ZycloneConfig.from_env().with_overrides(jobs=jobs, log_level=log_level)
    except ValueError as e:
        raise click.UsageError(str(e))
    initialize_logging(config.log_level)
    ctx.obj = ZycloneEngine(config)


@cli.command()
@click.argument('family', type=click.Choice(sorted(FAMILY_PARAMS)))
@click.option('-k', 'k', type=int, help='Uniformity.')
@click.option('-l', '--ell', 'ell', type=int, help='Zycle length.')
@click.option('-p', 'p', type=int, help='Prime modulus.')
@click.option('-n', 'n', type=int, help='Number of vertices.')
@click.option('-c', 'c', type=int, help='Blow-up factor.')
@click.option('--input', 'source', help='Source .khg for blowup.')
@click.option('-o', '--output', help='Write here instead of stdout.')
def gen(family: str, output: Optional[str], **params):
    """Generate FAMILY as .khg."""
    _emit(_engine().execute('gen', family=family, output=output, **params))


@cli.command()
@click.argument('path', metavar='FILE')
def stats(path: str):
    """Vertex count, edge count and codegree profile of FILE."""
    _emit(_engine().execute('stats', path=path))


@cli.command()
@click.argument('path', metavar='FILE')
@click.option('--zycle', type=int, help='Search for Z_L.')
@click.option('--pattern', help='Search for the hypergraph in PFILE.')
@click.option('--deterministic', is_flag=True, help='Return the lexicographically least copy.')
@budget_options
def search(path: str, zycle: Optional[int], pattern: Optional[str], deterministic: bool,
           budget_nodes: Optional[int], budget_seconds: Optional[float]):
    """Find a copy of Z_L or PFILE in FILE. Exit 0 found, 1 proven absent, 3 budget exhausted."""
    engine = _engine(budget_nodes, budget_seconds)
    _emit(engine.execute('search', path=path, zycle=zycle, pattern=pattern,
                         deterministic=deterministic))


@cli.command()
@click.option('-n', 'n', type=int, required=True, help='Number of vertices.')
@click.option('-k', 'k', type=int, required=True, help='Uniformity.')
@click.option('--forbid', multiple=True, help='Forbidden pattern file (repeatable).')
@click.option('--exact', is_flag=True, help='Exhaustive solver (default).')
@click.option('--local', is_flag=True, help='Simulated annealing lower bound.')
@click.option('--seed', type=int, help='Random seed for --local.')
@click.option('--restarts', type=click.IntRange(min=1), default=4, show_default=True)
@click.option('--steps', type=click.IntRange(min=1), default=2000, show_default=True)
@click.option('--seed-graph', help='Starting graph for --local.')
@budget_options
def exco(n: int, k: int, forbid: Sequence[str], exact: bool, local: bool, seed: Optional[int],
         restarts: int, steps: int, seed_graph: Optional[str],
         budget_nodes: Optional[int], budget_seconds: Optional[float]):
    """Largest minimum codegree of an n-vertex k-graph avoiding every --forbid pattern."""
    engine = _engine(budget_nodes, budget_seconds)
    engine.seed = seed
    _emit(engine.execute('exco', n=n, k=k, forbid=list(forbid), exact=exact, local=local,
                         restarts=restarts, steps=steps, seed_graph=seed_graph))


@cli.command()
@click.option('--all', 'run_all', is_flag=True, help='Run the full suite.')
@click.option('--check', help=f"One of: {', '.join(check_names())}.")
@click.option('--param', 'params', multiple=True, metavar='KEY=VALUE', help='Check parameter (repeatable).')
@click.option('--out-dir', help='Write one JSON report per check here.')
@click.option('--deterministic', is_flag=True, help='Omit runtimes from reports.')
@budget_options
def verify(run_all: bool, check: Optional[str], params: Sequence[str], out_dir: Optional[str],
           deterministic: bool, budget_nodes: Optional[int], budget_seconds: Optional[float]):
    """Run lemma checks. Exit 0 all pass, 1 any fail, 4 any inconclusive."""
    engine = _engine(budget_nodes, budget_seconds)
    _emit(engine.execute('verify', run_all=run_all, check=check, params=list(params),
                         out_dir=out_dir, deterministic=deterministic))


@cli.command()
@click.argument('path', metavar='FILE')
@click.option('--format', 'fmt', type=click.Choice(FORMATS), required=True)
@click.option('-o', '--output', help='Write here instead of stdout.')
def export(path: str, fmt: str, output: Optional[str]):
    """Convert FILE between khg, json and edge-list."""
    _emit(_engine().execute('export', path=path, fmt=fmt, output=output))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        code = cli.main(args=list(argv) if argv is not None else None,
                        prog_name='zyclone', standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        error_console.print("Aborted.", style="error")
        return 1
    return code or 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
