"""Command line front end.

`circtheta theta` certifies a single graph, `circtheta experiment` runs the
seeded Monte-Carlo studies, `circtheta selftest` checks the install against
closed-form values.  Exit codes: 0 success, 1 computation failure, 2 usage.
"""

from __future__ import annotations

import sys

import click

from . import harness
from .errors import NumericalBreakdownError, SolverFailureError, TooLargeError
from .graph import BitStream, from_connection_set, paley, parse_set_file, sample_random
from .harness import (
    ExperimentConfig,
    ExperimentKind,
    columns_for,
    records_to_csv,
    records_to_json,
    run_experiment,
)
from .theta import lovasz_theta

_FAILURES = (SolverFailureError, NumericalBreakdownError, TooLargeError, ArithmeticError)


@click.group()
def main():
    """Lovasz numbers of circulant graphs, exactly and at scale."""


@main.command()
@click.option("--n", type=int, default=None, help="Number of vertices (odd).")
@click.option("--set", "set_spec", default=None,
              help="Comma-separated connection set residues; '' for the empty graph.")
@click.option("--set-file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="File with 'n=<order>' on line 1 and the residues on line 2.")
@click.option("--paley", "paley_p", type=int, default=None,
              help="Paley graph on a prime p = 1 mod 4.")
@click.option("--random", "random_graph", is_flag=True,
              help="Sample the connection set from the seeded bit stream.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for --random.")
@click.option("--json", "as_json", is_flag=True, help="Print the full certificate as JSON.")
def theta(n, set_spec, set_file, paley_p, random_graph, seed, as_json):
    """Compute the certified theta of one circulant graph."""
    sources = [set_spec is not None, set_file is not None, paley_p is not None, random_graph]
    if sum(sources) != 1:
        raise click.UsageError("give exactly one of --set, --set-file, --paley, --random")
    try:
        if set_spec is not None:
            if n is None:
                raise click.UsageError("--set requires --n")
            residues = tuple(int(t) for t in set_spec.split(",") if t.strip())
            g = from_connection_set(n, residues)
        elif set_file is not None:
            if n is not None:
                raise click.UsageError("--n conflicts with --set-file")
            with open(set_file) as fh:
                g = parse_set_file(fh.read())
        elif paley_p is not None:
            if n is not None:
                raise click.UsageError("--n conflicts with --paley")
            g = paley(paley_p)
        else:
            if n is None:
                raise click.UsageError("--random requires --n")
            g = sample_random(n, BitStream((seed, n, 0)))
    except click.UsageError:
        raise
    except ValueError as exc:
        raise click.UsageError(str(exc))

    try:
        cert = lovasz_theta(g)
    except _FAILURES as exc:
        raise click.ClickException(str(exc))
    if as_json:
        click.echo(cert.to_json())
    else:
        click.echo(f"graph {g.key()}")
        click.echo(f"theta = {cert.theta:.9f}")
        click.echo(
            f"gap={cert.duality_gap:.3e} kernel={cert.kernel_residual:.3e} "
            f"l1={cert.l1_deviation:.3e} neg={cert.negativity:.3e} "
            f"identity={cert.objective_identity_residual:.3e}"
        )


@main.group()
def experiment():
    """Seeded Monte-Carlo experiments over random circulant graphs."""


def _parse_ns(ns: str) -> tuple:
    try:
        values = tuple(int(t) for t in ns.split(",") if t.strip())
    except ValueError:
        raise click.UsageError(f"--ns must be comma-separated integers, got {ns!r}")
    if not values:
        raise click.UsageError("--ns must name at least one order")
    return values


def _run(kind: ExperimentKind, ns: str, samples: int, seed: int, out, fmt: str,
         tail_constant: float = 2.0, exhaustive: bool = False, timing: bool = False):
    try:
        config = ExperimentConfig(
            kind=kind,
            n_list=_parse_ns(ns),
            samples=samples,
            seed=seed,
            tail_constant=tail_constant,
            output=out,
            fmt=fmt,
            exhaustive=exhaustive,
            record_timing=timing,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    try:
        records = run_experiment(config)
    except _FAILURES as exc:
        raise click.ClickException(str(exc))
    if out:
        click.echo(f"wrote {out}", err=True)
    else:
        columns = columns_for(kind)
        text = records_to_csv(records, columns) if fmt == "csv" else records_to_json(records, columns)
        click.echo(text, nl=False)


_shared = [
    click.option("--ns", required=True, help="Comma-separated odd orders, e.g. 101,201,401."),
    click.option("--samples", type=int, default=100, show_default=True),
    click.option("--seed", type=int, default=0, show_default=True),
    click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
                 help="Write the table here instead of stdout."),
    click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
                 show_default=True),
]


def _with_shared(fn):
    for opt in reversed(_shared):
        fn = opt(fn)
    return fn


@experiment.command()
@_with_shared
@click.option("--exhaustive", is_flag=True,
              help="Enumerate all 2^m connection sets instead of sampling.")
@click.option("--timing", is_flag=True,
              help="Fill wall_seconds with measured time; output is then not reproducible.")
def scaling(ns, samples, seed, out, fmt, exhaustive, timing):
    """Theta statistics and the complement product check across orders."""
    _run(ExperimentKind.SCALING, ns, samples, seed, out, fmt,
         exhaustive=exhaustive, timing=timing)


@experiment.command()
@_with_shared
@click.option("--tail-constant", type=float, default=2.0, show_default=True,
              help="C in the |g_k| > C sqrt(n ln ln n) cutoff.")
def tails(ns, samples, seed, out, fmt, tail_constant):
    """Sign-spectrum extreme-value statistics (no LP solves)."""
    _run(ExperimentKind.TAILS, ns, samples, seed, out, fmt, tail_constant=tail_constant)


@experiment.command("kernel-ratio")
@_with_shared
@click.option("--tail-constant", type=float, default=2.0, show_default=True,
              help="C in the |g_k| > C sqrt(n ln ln n) cutoff.")
def kernel_ratio(ns, samples, seed, out, fmt, tail_constant):
    """Flatness of the theta optimizer, sqrt(n) |y*|_2 / |y*|_1."""
    _run(ExperimentKind.KERNEL_RATIO, ns, samples, seed, out, fmt, tail_constant=tail_constant)


@main.command()
@click.option("--seed", type=int, default=20260823, show_default=True)
def selftest(seed):
    """Check closed forms and invariants; exit 1 on any failure."""
    report = harness.selftest(seed=seed)
    for check in report.checks:
        click.echo(f"{'PASS' if check.ok else 'FAIL'} {check.name}: {check.detail}")
    if not report.ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
