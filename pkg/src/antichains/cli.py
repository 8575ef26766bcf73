"""Command-line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 an enumeration hit its resource guard.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click
import mpmath

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class _Group(click.Group):
    """Map library errors onto the documented exit codes."""

    def invoke(self, ctx):
        from .coefficients import PipelineError
        from .oracle import ResourceGuardError

        try:
            return super().invoke(ctx)
        except ResourceGuardError as exc:
            click.echo(f"resource guard: {exc}", err=True)
            ctx.exit(EXIT_RESOURCE)
        except PipelineError as exc:
            click.echo(f"pipeline error: {exc}", err=True)
            ctx.exit(EXIT_VERIFY_FAILED)
        except (ValueError, ZeroDivisionError) as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_USAGE)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"{text!r} is not an exact rational like 3/2")


def _layers(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise click.BadParameter("layers must look like a..b")
    if lo > hi:
        raise click.BadParameter("empty layer range")
    return lo, hi


@click.group(cls=_Group)
@click.option("--precision", default=200, show_default=True, help="Float precision in bits.")
@click.pass_context
def main(ctx, precision):
    """Antichain counting: exact oracles, cluster-expansion coefficients, asymptotics."""
    ctx.obj = {"precision": precision}
    previous = mpmath.mp.prec
    mpmath.mp.prec = precision
    ctx.call_on_close(lambda: setattr(mpmath.mp, "prec", previous))


@main.command()
@click.option("--kind", type=click.Choice(["S", "P", "F", "B", "R"]), required=True)
@click.option("--j", "j", type=click.IntRange(1, 6), required=True)
@click.option("--parity", type=click.Choice(["even", "odd"]), required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def coeffs(kind, j, parity, fmt):
    """Print a coefficient family member."""
    from .coefficients import compute

    families = compute(kind, j, parity)
    if fmt == "json":
        click.echo(json.dumps([f.to_json() for f in families], indent=2))
    else:
        for fam in families:
            click.echo(fam.render())


@main.command()
@click.option("--n", "n", type=click.IntRange(0, 24), required=True)
@click.option("--size", type=click.IntRange(0), default=None, help="Count antichains of this size.")
@click.option("--layers", default=None, help="Restrict to layers a..b.")
@click.option("--lambda", "lam", default="1", help="Activity as an exact rational.")
@click.option("--profile", is_flag=True, help="Print the whole size profile.")
def exact(n, size, layers, lam, profile):
    """Exact (weighted) antichain counts by enumeration."""
    from .oracle import count_antichains, evaluate_profile
    from .lattice import popcount

    restrict = None
    if layers is not None:
        lo, hi = _layers(layers)
        restrict = [v for v in range(1 << n) if lo <= popcount(v) <= hi]
    counts = count_antichains(n, restrict_to=restrict, by_size=True)
    if profile:
        click.echo(" ".join(str(c) for c in counts))
    elif size is not None:
        click.echo(counts[size] if size < len(counts) else 0)
    else:
        click.echo(evaluate_profile(counts, _fraction(lam)))


@main.command()
@click.option("--suite", type=click.Choice(["appendix", "identities", "isoperimetry", "ursell", "all"]),
              required=True)
@click.option("--verbose", "-v", is_flag=True)
def verify(suite, verbose):
    """Run a self-check suite; exit 1 if any check fails."""
    from .verification import SUITES, run_suite, suite_passed

    names = SUITES if suite == "all" else (suite,)
    ok = True
    for name in names:
        results = run_suite(name)
        passed = suite_passed(results)
        ok &= passed
        for r in results:
            if verbose or not r.ok:
                click.echo(f"{'ok  ' if r.ok else 'FAIL'} {name}: {r.name} {r.detail}".rstrip())
        click.echo(f"{name}: {'PASS' if passed else 'FAIL'} ({sum(r.ok for r in results)}/{len(results)})")
    sys.exit(0 if ok else EXIT_VERIFY_FAILED)


@main.command()
@click.option("--n", "n", type=click.IntRange(1, 24), required=True)
@click.option("--theorem", type=click.Choice(["1.1", "1.3", "1.4"]), required=True)
@click.option("--t", "t", type=click.IntRange(0), default=None)
@click.option("--m", "m", type=click.IntRange(1), default=None)
@click.option("--out", type=click.Path(dir_okay=False, allow_dash=True), default="-", show_default=True)
@click.pass_context
def compare(ctx, n, theorem, t, m, out):
    """Asymptotic estimate against exact counts, as CSV."""
    from .evaluate import compare_psi, compare_psi_nm, write_csv

    precision = ctx.obj["precision"]
    if theorem == "1.1":
        records = [compare_psi(n, "T1.1-Korshunov", precision=precision)]
    elif theorem == "1.4":
        records = [compare_psi(n, "T1.4-refined", 1 if t is None else t, precision)]
    else:
        records = compare_psi_nm(n, None if m is None else [m], t, precision)
    with click.open_file(out, "w") as handle:
        write_csv(records, handle)


@main.command()
@click.option("--n", "n", type=click.IntRange(10), required=True)
@click.option("--c", "c", default="0", help="Window offset as an exact rational.")
@click.pass_context
def window(ctx, n, c):
    """Size-1 cluster sum in the scaling window and the limiting constant."""
    from .evaluate import threshold_window

    result = threshold_window(n, _fraction(c), ctx.obj["precision"])
    for key, value in result.items():
        click.echo(f"{key} = {mpmath.nstr(value, 20)}")


if __name__ == "__main__":
    main()
