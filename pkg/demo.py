#!/usr/bin/env python3

import sys
import os
import tempfile

# Add src to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from config import ZycloneConfig
from log_config import initialize_logging
from zyclone_engine import ZycloneEngine


def demo_commands():
    """Walk through generation, search, extremal runs and one lemma check."""
    print("zyclone demo")
    print("=" * 50)

    initialize_logging()
    workdir = tempfile.mkdtemp(prefix='zyclone-demo-')
    algebraic = os.path.join(workdir, 'alg-3-7-14.khg')
    z3 = os.path.join(workdir, 'z3.khg')
    tripartite = os.path.join(workdir, 'tri-9.khg')

    engine = ZycloneEngine(ZycloneConfig.from_env().with_overrides(jobs=1), seed=7)

    demo_steps = [
        ('gen', dict(family='algebraic', k=3, p=7, n=14, output=algebraic),
         "Algebraic construction for k=3, ell=2 on 14 vertices"),
        ('stats', dict(path=algebraic), "Codegree profile"),
        ('search', dict(path=algebraic, zycle=2, deterministic=True), "Z_2 is absent"),
        ('search', dict(path=algebraic, zycle=6, deterministic=True), "Z_6 is present"),
        ('gen', dict(family='zycle', k=3, ell=3, output=z3), "The zycle Z_3"),
        ('gen', dict(family='tripartite', n=9, output=tripartite), "Iterated tripartite graph"),
        ('search', dict(path=tripartite, pattern=z3), "Z_3 inside the tripartite graph"),
        ('exco', dict(n=6, k=3, forbid=[z3], exact=True), "Exact ex_co(6, Z_3)"),
        ('verify', dict(check='reduced-chain', params=['k=3', 'p=5'], deterministic=True),
         "Back-neighborhood chain in the reduced construction"),
    ]

    for name, options, description in demo_steps:
        print(f"\n{description}")
        print(f"Command: {name} {options}")
        print("-" * 40)

        exit_code, stdout, stderr = engine.execute(name, **options)

        if stdout:
            # Limit output length for demo
            output_lines = stdout.rstrip('\n').split('\n')
            if len(output_lines) > 10:
                print('\n'.join(output_lines[:10]))
                print(f"... ({len(output_lines) - 10} more lines)")
            else:
                print('\n'.join(output_lines))

        if stderr:
            print(f"stderr: {stderr}")

        print(f"Exit code: {exit_code}")


if __name__ == "__main__":
    demo_commands()
