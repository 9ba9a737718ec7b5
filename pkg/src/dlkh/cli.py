"""Command-line front end: ``dlkh states | kh | dkh | check``."""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .complex import (GenusError, assemble, homology, homology_json, khovanov_bidegree, to_dot)
from .diagram import IncidenceError, PDSyntaxError, parse_pd, validate
from .diagramless import (DecompositionError, DiagramClassSet, MixedCrossingError,
                          diagramless_homology, parse_manifest)
from .states import enhanced_states
from .suites import run_suite
from .surface import state_gradings

EXIT_REFUSED = 2


class Refusal(click.ClickException):
    exit_code = EXIT_REFUSED


def _inputs(pd: str | None, manifest: str | None) -> DiagramClassSet:
    if bool(pd) == bool(manifest):
        raise click.UsageError("give exactly one of --pd or --manifest")
    try:
        if pd:
            ds = DiagramClassSet([parse_pd(pd)], ["D"])
        else:
            ds = parse_manifest(Path(manifest).read_text(), Path(manifest).stem)
    except MixedCrossingError as e:
        raise Refusal(str(e))
    except (PDSyntaxError, IncidenceError, ValueError) as e:
        raise Refusal(f"cannot read input: {e}")
    for label, d in zip(ds.labels, ds.diagrams):
        rep = validate(d)
        if not rep.spherical:
            raise Refusal(f"{label}: diagram has genus {d.genus}; only spherical diagrams are supported")
    return ds


def _algebra_only(frobenius: str) -> None:
    if frobenius != "f1":
        raise Refusal("the f5 system is only available to 'check'; homology is computed over F1")


def _torsion(t) -> str:
    return ",".join(str(x) for x in t) or "-"


def _table(rows: list[tuple], header: tuple) -> str:
    widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(len(header))]
    fmt = "  ".join("{:>%d}" % w for w in widths)
    return "\n".join([fmt.format(*header)] + [fmt.format(*map(str, r)) for r in rows])


options_input = [
    click.option("--pd", help="PD code, e.g. 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]'."),
    click.option("--manifest", type=click.Path(exists=True, dir_okay=False),
                 help="File of 'label: PD' lines."),
    click.option("--frobenius", type=click.Choice(["f1", "f5"]), default="f1", show_default=True),
]


def _add(options):
    def deco(f):
        for opt in reversed(options):
            f = opt(f)
        return f
    return deco


@click.group()
def main() -> None:
    """Diagramless link homology from PD codes."""


@main.command()
@_add(options_input)
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
def states(pd, manifest, frobenius, fmt):
    """List enhanced states with their gradings (I, J, K, B)."""
    ds = _inputs(pd, manifest)
    _algebra_only(frobenius)
    rows = []
    for label, d in zip(ds.labels, ds.diagrams):
        for s in enhanced_states(d):
            g = state_gradings(s).as_tuple()
            rows.append((label, "".join("+" if v else "-" for v in s.markers) or ".",
                         "".join("+" if v > 0 else "-" for v in s.signs)) + g)
    if fmt == "json":
        click.echo(json.dumps([dict(zip(("label", "markers", "signs", "i", "j", "k", "b"), r))
                               for r in rows], indent=2))
    else:
        click.echo(_table(rows, ("label", "markers", "signs", "i", "j", "k", "b")))


@main.command()
@_add(options_input)
@click.option("--sign", type=click.Choice(["sigma", "alpha"]), default="sigma", show_default=True)
@click.option("--normalize", is_flag=True, help="Apply the writhe shift to Khovanov gradings.")
@click.option("--format", "fmt", type=click.Choice(["table", "json", "dot"]), default="table")
def kh(pd, manifest, frobenius, sign, normalize, fmt):
    """Khovanov homology of one diagram; rows (i, j, k, b, rank, torsion)."""
    ds = _inputs(pd, manifest)
    _algebra_only(frobenius)
    if len(ds) != 1:
        raise click.UsageError("kh takes a single diagram")
    d = ds.diagrams[0]
    try:
        c = assemble(d, sign_rule=sign)
    except GenusError as e:
        raise Refusal(str(e))
    if fmt == "dot":
        click.echo(to_dot(c))
        return
    H = homology(c)
    out = {}
    for g, h in H.items():
        i, j = khovanov_bidegree(g, d, normalize)
        out[(i, j, g[2], g[3])] = h
    if fmt == "json":
        click.echo(homology_json(out, {"normalized": normalize, "sign_rule": sign}))
    else:
        rows = [g + (h.rank, _torsion(h.torsion)) for g, h in sorted(out.items())]
        click.echo(_table(rows, ("i", "j", "k", "b", "rank", "torsion")))


@main.command()
@_add(options_input)
@click.option("--sign", type=click.Choice(["sigma", "alpha"]), default="alpha", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
def dkh(pd, manifest, frobenius, sign, fmt):
    """Diagramless homology of a class set and its copy count N."""
    ds = _inputs(pd, manifest)
    _algebra_only(frobenius)
    try:
        res = diagramless_homology(ds, sign_rule=sign)
    except DecompositionError as e:
        click.echo(json.dumps({"error": str(e), "details": {k: str(v) for k, v in e.details.items()}}),
                   err=True)
        sys.exit(1)
    for w in res.warnings:
        click.echo(f"warning: {w}", err=True)
    if fmt == "json":
        click.echo(res.to_json())
        return
    rows = [g + (h.rank, _torsion(h.torsion)) for g, h in sorted(res.homology.items())]
    click.echo(_table(rows, ("i", "j", "k", "b", "rank", "torsion")))
    click.echo(f"N = {res.N}")


@main.command()
@click.option("--pd", help="Check one diagram instead of the built-in suite.")
@click.option("--manifest", type=click.Path(exists=True, dir_okay=False))
@click.option("--frobenius", type=click.Choice(["f1", "f5"]), default=None,
              help="Restrict the algebra checks to one system.")
@click.option("--suite", type=click.Choice(["fast", "full"]), default="fast", show_default=True)
def check(pd, manifest, frobenius, suite):
    """Run the invariant suite; exit code 0 iff every check passes."""
    systems = (frobenius,) if frobenius else ("f1", "f5")
    if pd or manifest:
        ds = _inputs(pd, manifest)
        results = run_suite(systems=systems, diagrams=list(zip(ds.labels, ds.diagrams)))
    else:
        results = run_suite(suite, systems=systems)
    for r in results:
        click.echo(r.line())
    sys.exit(0 if all(r.ok for r in results) else 1)


if __name__ == "__main__":  # pragma: no cover
    main()
