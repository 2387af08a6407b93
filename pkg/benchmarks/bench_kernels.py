"""Time the compiled kernels against the pure-Python fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--quick]

Each workload runs in both implementations (best of three) and the table
reports the native speedup.  Requires the compiled extension; build it
with `pip install -e . --no-build-isolation`.
"""

from __future__ import annotations

import math
import time

import click
import numpy as np

from nbgrid._kernels import _pyfallback as pyk
from nbgrid.census import unique_table

try:
    from nbgrid._kernels import _native as natk
except ImportError:  # pragma: no cover - exercised only on fallback installs
    natk = None


def best_of(fn, repeats: int = 3) -> float:
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(quick: bool):
    identity9 = tuple(range(9))
    identity16 = tuple(range(16))
    scan_span = 200 if quick else 2000
    tables3 = {4: unique_table(2)}

    def scan(mod):
        buf = np.zeros(scan_span, dtype=np.int64)
        mod.scan_configs(3, buf, 0, scan_span)
        return buf

    yield ("count 3x3 identity (42 states)",
           lambda mod: mod.count_stable_placements(identity9, 3))
    if not quick:
        yield ("count 4x4 identity (24024 states)",
               lambda mod: mod.count_stable_placements(identity16, 4))
    yield ("enumerate 3x3 identity",
           lambda mod: mod.enumerate_stable_placements(identity9, 3))
    yield (f"scan {scan_span} 3x3 configurations", scan)
    yield ("binned candidate search, n=3",
           lambda mod: mod.binned_candidates(3, tables3))


@click.command()
@click.option("--quick", is_flag=True, help="Smaller workloads, skip the 4x4 count.")
def main(quick: bool):
    if natk is None:
        raise click.ClickException(
            "compiled extension not available; build it first"
        )
    width = 44
    click.echo(f"{'workload':<{width}} {'python':>10} {'native':>10} {'speedup':>8}")
    for label, call in workloads(quick):
        t_py = best_of(lambda: call(pyk))
        t_nat = best_of(lambda: call(natk))
        ratio = t_py / t_nat if t_nat > 0 else math.inf
        click.echo(
            f"{label:<{width}} {t_py:>9.4f}s {t_nat:>9.4f}s {ratio:>7.1f}x"
        )


if __name__ == "__main__":
    main()
