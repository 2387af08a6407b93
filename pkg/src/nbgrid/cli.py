"""Command-line interface.

Exit codes: 0 success, 1 usage or parse failure, 2 resource guard
refused the request, 3 invariant violation (unstable verify target,
iteration budget exhausted).  All commands are deterministic given
their flags; randomness flows from a single --seed.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import _kernels
from .census import (
    census_unique,
    max_stable_states_probe,
    perm_label,
    write_census_csv,
    write_census_summary,
)
from .counting import (
    count_bin_stable,
    count_fillings,
    count_stable_fillings,
    lower_bound_bits,
    lower_bound_bits_formula,
    stable_fraction,
)
from .dynamics import STRATEGIES, energy, run_until_stable, write_trace_jsonl
from .grid import build_stable, is_stable, read_grid_json, write_grid_json
from .points import GuardError, ParseError, read_points_csv, write_points_csv
from .quality import (
    adversarial_all_grid,
    adversarial_single_grid,
    grid_quality_report,
    BUILDERS,
    DISTRIBUTIONS,
    GENERATORS,
    METRICS,
    gen_adversarial_all,
    gen_adversarial_single,
    gen_random,
    quality_report,
    write_report_csv,
    write_report_json,
)
from .tableaux import Partition, count_tableaux_hook

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GUARD = 2
EXIT_INVARIANT = 3


class InvariantFailure(RuntimeError):
    """Raised by commands whose result violates a checked invariant."""


def _out_path(path: str) -> str:
    """Resolve a relative output path against NBGRID_OUT_DIR when set."""
    base = os.environ.get("NBGRID_OUT_DIR")
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, path)
    return path


@click.group()
def cli():
    """Neighborhood grid toolbox."""


@cli.command("build")
@click.option("--points", "points_path", required=True, help="Input point CSV.")
@click.option("--out", "out_path", default=None, help="Grid JSON output path.")
def cmd_build(points_path: str, out_path: str | None):
    """Build a stable grid directly from a point CSV."""
    ps = read_points_csv(points_path)
    g = build_stable(ps)
    report = is_stable(g)
    click.echo(
        f"n={g.n} d={g.d} points={len(ps)} padding={len(g.padding_ids)} "
        f"stable={report.stable} energy={energy(g)}"
    )
    if out_path:
        write_grid_json(_out_path(out_path), g)
        click.echo(f"grid written to {_out_path(out_path)}")
    if not report.stable:  # the direct builder must always land stable
        raise InvariantFailure("construction produced an unstable grid")


@cli.command("verify")
@click.option("--grid", "grid_path", required=True, help="Grid JSON to check.")
def cmd_verify(grid_path: str):
    """Re-check stability of a stored grid."""
    g = read_grid_json(grid_path)
    report = is_stable(g)
    click.echo(
        f"n={g.n} d={g.d} stable={report.stable} energy={energy(g)} "
        f"violations={len(report.violations)}"
    )
    for axis, (a, b) in report.violations[:20]:
        click.echo(f"  axis {axis}: {a} !< {b}")
    if not report.stable:
        raise InvariantFailure("grid is not stable")


@cli.command("iterate")
@click.option("--grid", "grid_path", required=True, help="Starting grid JSON.")
@click.option("--strategy", type=click.Choice(STRATEGIES), default="full-pass")
@click.option("--step-limit", type=int, default=None, help="Max recorded steps.")
@click.option("--snapshots", is_flag=True, help="Embed full grid snapshots in the trace.")
@click.option("--trace", "trace_path", default=None, help="Trace JSONL output path.")
@click.option("--out", "out_path", default=None, help="Final grid JSON output path.")
def cmd_iterate(grid_path, strategy, step_limit, snapshots, trace_path, out_path):
    """Iterate a sorting strategy until stable and record the trace."""
    g = read_grid_json(grid_path)
    trace = run_until_stable(g, strategy, step_limit, record_snapshots=snapshots)
    final_report = is_stable(trace.final)
    click.echo(
        f"strategy={strategy} steps={trace.step_count} units={trace.units} "
        f"converged={trace.converged} stable={final_report.stable} "
        f"energy={energy(trace.final)}"
    )
    if trace_path:
        write_trace_jsonl(_out_path(trace_path), trace)
        click.echo(f"trace written to {_out_path(trace_path)}")
    if out_path:
        write_grid_json(_out_path(out_path), trace.final)
    if not trace.converged:
        raise InvariantFailure("step limit exceeded before reaching a fixed point")


@cli.command("census")
@click.option("--n", type=int, required=True)
@click.option("--long-run", is_flag=True, help="Confirm the n=4 candidate scan.")
@click.option("--threads", type=int, default=1, help="Worker process cap.")
@click.option("--out-dir", default=None, help="Write per-config CSV and summary JSON here.")
@click.option("--csv/--no-csv", "want_csv", default=True,
              help="Write the per-configuration CSV (large for n=3).")
def cmd_census(n, long_run, threads, out_dir, want_csv):
    """Exhaustively census unique stable states (n <= 3; n = 4 pruned)."""
    result = census_unique(n, long_run=long_run, workers=threads)
    click.echo(
        f"n={n} configs={result.configs_examined} unique={result.unique_count} "
        f"max_stable_states={result.max_stable_states} "
        f"runtime={result.runtime_seconds:.2f}s"
    )
    if result.candidates is not None:
        from .census import REPORTED_CANDIDATE_COUNT_N4

        click.echo(
            f"candidates={len(result.candidates)} "
            f"(previously reported filter size: {REPORTED_CANDIDATE_COUNT_N4})"
        )
    if out_dir:
        out_dir = _out_path(out_dir)
        os.makedirs(out_dir, exist_ok=True)
        write_census_summary(os.path.join(out_dir, f"census_n{n}_summary.json"), result)
        if want_csv:
            write_census_csv(os.path.join(out_dir, f"census_n{n}.csv"), result)
        click.echo(f"census files written to {out_dir}")


@cli.command("counts")
@click.option("--n", type=int, required=True)
@click.option("--probe-samples", type=int, default=0,
              help="Also probe the max-stable-states conjecture with this many samples.")
@click.option("--seed", type=int, default=1, show_default=True)
def cmd_counts(n, probe_samples, seed):
    """Print the closed-form counting table for side length n."""
    if n < 1:
        raise click.UsageError("n must be positive")
    sets, fillings = count_fillings(n)
    click.echo(f"point sets:            {sets}")
    click.echo(f"fillings:              {fillings}")
    click.echo(f"stable fillings:       {count_stable_fillings(n)}")
    click.echo(f"stable fraction:       {stable_fraction(n)}")
    click.echo(f"bin-stable fillings:   {count_bin_stable(n)}")
    click.echo(f"identity stable count: {count_tableaux_hook(Partition.square(n))}")
    click.echo(
        f"lower bound bits:      {lower_bound_bits(n):.3f} "
        f"(formula: {lower_bound_bits_formula(n):.3f})"
    )
    if probe_samples or n <= 3:
        probe = max_stable_states_probe(n, probe_samples, seed)
        scope = "exhaustive" if probe["exhaustive"] else f"{probe['samples']} samples"
        click.echo(
            f"max stable states:     {probe['max_observed']} ({scope}; "
            f"identity has {probe['identity_count']}, bound {probe['bound']})"
        )
        if probe["conjecture_violated"]:
            click.echo(
                "WARNING: observed a configuration exceeding the identity bound: "
                f"{perm_label(probe['argmax_perm'])}", err=True
            )


@cli.command("generate")
@click.option("--gen", "generator", type=click.Choice(GENERATORS), required=True)
@click.option("--n", type=int, required=True)
@click.option("--d", type=int, default=2, show_default=True)
@click.option("--dist", type=click.Choice(DISTRIBUTIONS), default="uniform-box",
              show_default=True)
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--depth", type=int, default=1, show_default=True,
              help="Family-splitting depth (adversarial-all only).")
@click.option("--out", "out_path", required=True, help="Point CSV output path.")
def cmd_generate(generator, n, d, dist, seed, depth, out_path):
    """Emit a generated point set as CSV."""
    ps = _generate(generator, n, d, dist, seed, depth)
    write_points_csv(_out_path(out_path), ps)
    click.echo(f"seed={seed}")
    click.echo(f"{len(ps)} points written to {_out_path(out_path)}")


@cli.command("quality")
@click.option("--gen", "generator", type=click.Choice(GENERATORS), default=None)
@click.option("--points", "points_path", default=None, help="Point CSV input.")
@click.option("--n", type=int, default=None)
@click.option("--d", type=int, default=2, show_default=True)
@click.option("--dist", type=click.Choice(DISTRIBUTIONS), default="uniform-box",
              show_default=True)
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--builder", type=click.Choice(BUILDERS), default=None,
              help="Grid construction route [default: direct; adversarial "
                   "generators default to their reference arrangement].")
@click.option("--k", type=int, default=1, show_default=True, help="Ring radius.")
@click.option("--metric", type=click.Choice(sorted(METRICS)), default="euclidean",
              show_default=True)
@click.option("--depth", type=int, default=1, show_default=True,
              help="Family-splitting depth (adversarial-all only).")
@click.option("--out", "out_path", default=None, help="Report JSON output path.")
@click.option("--per-point", "csv_path", default=None, help="Per-point CSV output path.")
def cmd_quality(generator, points_path, n, d, dist, seed, builder, k, metric,
                depth, out_path, csv_path):
    """Measure neighbor-estimate quality against the exact oracle."""
    if (generator is None) == (points_path is None):
        raise click.UsageError("pass exactly one of --gen or --points")
    report = None
    if generator is not None:
        if n is None:
            raise click.UsageError("--gen needs --n")
        ps = _generate(generator, n, d, dist, seed, depth)
        click.echo(f"seed={seed}")
        if builder is None and generator == "adversarial-single":
            report = grid_quality_report(
                adversarial_single_grid(n), k, metric, "reference")
        elif builder is None and generator == "adversarial-all":
            report = grid_quality_report(
                adversarial_all_grid(n, depth), k, metric, "reference")
    else:
        ps = read_points_csv(points_path)
    if report is None:
        report = quality_report(ps, builder or "direct", k, metric)
    click.echo(
        f"n={report.n} d={report.d} points={report.point_count} k={k} "
        f"builder={report.builder} hit_rate={report.one_ring_hit_rate} "
        f"mean_ring_distance={report.mean_ring_distance:.3f} "
        f"max_ring_distance={report.max_ring_distance}"
    )
    if out_path:
        write_report_json(_out_path(out_path), report)
    if csv_path:
        write_report_csv(_out_path(csv_path), report)


def _generate(generator: str, n: int, d: int, dist: str, seed: int, depth: int = 1):
    if generator == "adversarial-single":
        if d != 2:
            raise click.UsageError("adversarial generators are two-dimensional")
        return gen_adversarial_single(n)
    if generator == "adversarial-all":
        if d != 2:
            raise click.UsageError("adversarial generators are two-dimensional")
        return gen_adversarial_all(n, depth)
    return gen_random(n, d, seed, dist)


def main(argv: list[str] | None = None) -> int:
    """Run the CLI, mapping failures onto the documented exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return EXIT_OK
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except GuardError as exc:
        click.echo(f"guard: {exc}", err=True)
        return EXIT_GUARD
    except InvariantFailure as exc:
        click.echo(f"invariant violated: {exc}", err=True)
        return EXIT_INVARIANT
    except click.exceptions.Exit as exc:  # --help and friends
        return int(exc.exit_code)
    except click.exceptions.Abort:
        return EXIT_USAGE
    except RuntimeError as exc:  # e.g. a builder halting on an unstable grid
        click.echo(f"invariant violated: {exc}", err=True)
        return EXIT_INVARIANT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
