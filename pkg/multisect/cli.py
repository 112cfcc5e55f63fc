import functools
import logging
import time
from typing import Optional, Tuple

import click

from multisect.constructions import (
    GluePlan,
    bisection_from_heegaard,
    bisection_from_trisection,
    double_bisection,
    genus_report,
    glue_bisections,
    insert_parallel_sectors,
    lens_diagram,
    merge_adjacent_sectors,
)
from multisect.diagrams import (
    GeometricHeegaardDiagram,
    MultisectionDiagram,
    connected_sum,
    connected_sum_power,
    mirror,
    pi1_of_diagram,
    stabilize,
    validate,
)
from multisect.formats import (
    format_tuple,
    parse_hd,
    parse_msd,
    parse_tuple,
    serialize_hd,
    serialize_msd,
)
from multisect.nielsen import (
    CertificateVerdict,
    NielsenCertificate,
    distinguish,
    flip_check,
    format_certificate,
    spine_tuple,
)
from multisect.presentations import abelianization, parse_presentation, tietze_simplify
from multisect.render import render_svg
from multisect.reports import RunReport
from multisect.utils.exceptions import MultisectError, ShapeMismatchError

logger = logging.getLogger(__name__)

EXIT_CODES = {
    CertificateVerdict.DISTINCT: 0,
    CertificateVerdict.SAME_ORBIT: 10,
    CertificateVerdict.INCONCLUSIVE: 20,
}
ERROR_EXIT = 2


def reports_errors(command):
    """Turn library errors into a one-line message and a usage-error exit code."""

    @functools.wraps(command)
    def wrapped(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except MultisectError as e:
            click.echo(f"error: {e}", err=True)
            raise SystemExit(ERROR_EXIT)

    return wrapped


def _read(path: str) -> str:
    with click.open_file(path, "r") as f:
        return f.read()


def _write(text: str, output: Optional[str]):
    if output is None:
        click.echo(text, nl=False)
        return
    with click.open_file(output, "w") as f:
        f.write(text)


def _load_msd(path: str) -> Tuple[MultisectionDiagram, str]:
    text = _read(path)
    return parse_msd(text), text


def _load_hd(path: str) -> Tuple[GeometricHeegaardDiagram, str]:
    text = _read(path)
    return parse_hd(text), text


def _emit_hd(h: GeometricHeegaardDiagram, output: Optional[str]):
    _write(serialize_hd(h), output)
    click.echo(f"genus {h.genus}", err=True)


def _emit_msd(d: MultisectionDiagram, output: Optional[str]):
    _write(serialize_msd(d), output)
    types = " ".join(str(k) for k in d.claimed_types)
    click.echo(f"genus {d.genus}, types {types}", err=True)


def _finish(report: RunReport, exit_code: int = 0):
    ctx = click.get_current_context()
    if ctx.obj.get("timing"):
        report.elapsed = time.perf_counter() - ctx.obj["started"]
    click.echo(report.render(), nl=False)
    ctx.exit(exit_code)


input_option = click.option(
    "-i", "--input", "source", default="-", show_default=True, help="Input file, - for stdin."
)
output_option = click.option("-o", "--output", default=None, help="Output file (default stdout).")


@click.group()
@click.option("-v", "--verbose", count=True, help="More logging, repeat for debug output.")
@click.option("-q", "--quiet", is_flag=True, help="Only log errors.")
@click.option("--timing", is_flag=True, help="Append a timing section to reports.")
@click.pass_context
def main(ctx, verbose: int, quiet: bool, timing: bool):
    """Build, check and compare multisection diagrams of 4-manifolds."""
    level = logging.ERROR if quiet else max(logging.DEBUG, logging.WARNING - 10 * verbose)
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", force=True
    )
    ctx.obj = {"timing": timing, "started": time.perf_counter()}


@main.group()
def construct():
    """Construct Heegaard (HD) and multisection (MSD) diagrams."""


@construct.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--q", "q", type=int, required=True)
@click.option("--copies", type=click.IntRange(min=1), default=1, show_default=True)
@output_option
@reports_errors
def lens(p: int, q: int, copies: int, output: Optional[str]):
    """Genus-1 diagram of L(p, q), or the connected sum of COPIES of it."""
    h = lens_diagram(p, q)
    if copies > 1:
        h = connected_sum_power(h, copies)
    _emit_hd(h, output)


@construct.command(name="sum")
@click.argument("inputs", nargs=-1, required=True)
@output_option
@reports_errors
def sum_(inputs: Tuple[str, ...], output: Optional[str]):
    """Connected sum of Heegaard diagrams."""
    diagrams = [_load_hd(path)[0] for path in inputs]
    result = functools.reduce(connected_sum, diagrams)
    _emit_hd(result, output)


@construct.command(name="mirror")
@input_option
@output_option
@reports_errors
def mirror_(source: str, output: Optional[str]):
    """Orientation reversal of a Heegaard diagram."""
    _emit_hd(mirror(_load_hd(source)[0]), output)


@construct.command(name="stabilize")
@input_option
@output_option
@reports_errors
def stabilize_(source: str, output: Optional[str]):
    _emit_hd(stabilize(_load_hd(source)[0]), output)


@construct.command()
@input_option
@output_option
@reports_errors
def bisect(source: str, output: Optional[str]):
    """Bisection of the punctured 3-manifold times an interval."""
    _emit_msd(bisection_from_heegaard(_load_hd(source)[0]), output)


@construct.command(name="trisect-restrict")
@input_option
@click.option("--drop", type=click.IntRange(1, 3), required=True, help="Sector to remove.")
@output_option
@reports_errors
def trisect_restrict(source: str, drop: int, output: Optional[str]):
    _emit_msd(bisection_from_trisection(_load_msd(source)[0], drop), output)


@construct.command()
@input_option
@output_option
@reports_errors
def double(source: str, output: Optional[str]):
    """Closed 4-section of the double of a bisection."""
    _emit_msd(double_bisection(_load_msd(source)[0]), output)


@construct.command()
@input_option
@click.option("--position", type=int, default=2, show_default=True)
@click.option("--count", type=click.IntRange(min=0), default=1, show_default=True)
@output_option
@reports_errors
def insert(source: str, position: int, count: int, output: Optional[str]):
    """Insert parallel copies of one system."""
    _emit_msd(insert_parallel_sectors(_load_msd(source)[0], position, count), output)


@construct.command()
@input_option
@click.option("--copies", type=click.IntRange(min=1), required=True)
@click.option("--cap", type=click.Choice(["auto", "none"]), default="auto", show_default=True)
@output_option
@reports_errors
def glue(source: str, copies: int, cap: str, output: Optional[str]):
    """Glue copies of a bisection in a chain, optionally closing it off."""
    b = _load_msd(source)[0]
    plan = GluePlan.auto(b, copies, capped=cap == "auto")
    _emit_msd(glue_bisections(plan), output)


@construct.command()
@input_option
@click.option("--interface", type=int, required=True, help="System to remove.")
@output_option
@reports_errors
def merge(source: str, interface: int, output: Optional[str]):
    """Merge the two sectors around one interface system."""
    _emit_msd(merge_adjacent_sectors(_load_msd(source)[0], interface), output)


@main.command(name="validate")
@click.argument("source")
@reports_errors
def validate_(source: str):
    """Check every sector; exit 0 only when all are verified."""
    d, text = _load_msd(source)
    result = validate(d)
    report = RunReport("multisect validate")
    report.add_input(source, text)
    report.section(
        "verdicts",
        [f"{i} {j} {verdict}" for (i, j), verdict in result.verdicts.items()],
    )
    if result.errors:
        report.section("errors", [f"{pair}: {detail}" for pair, detail in result.errors.items()])
    if result.boundary is not None:
        report.section("boundary", [result.boundary])
    _finish(report, 0 if result.ok else 1)


@main.command()
@click.argument("source")
@reports_errors
def pi1(source: str):
    """Fundamental group presentation, raw and simplified."""
    d, text = _load_msd(source)
    presentation = pi1_of_diagram(d)
    simplified = tietze_simplify(presentation)
    report = RunReport("multisect pi1")
    report.add_input(source, text)
    report.section("presentation", [presentation])
    report.section("simplified", [simplified.presentation])
    report.section("invariants", [abelianization(presentation)])
    _finish(report)


@main.command()
@click.argument("source")
@reports_errors
def homology(source: str):
    """First homology of the manifold, of each sector and of the boundary."""
    d, text = _load_msd(source)
    report = RunReport("multisect homology")
    report.add_input(source, text)
    report.section("pi1", [d.abelian_invariants()])
    report.section(
        "sectors",
        [f"{i} {j} {abelianization(d.presentation_of_pair(i, j))}" for i, j in d.sector_pairs()],
    )
    if not d.closed:
        report.section("boundary", [d.boundary_invariants()])
    _finish(report)


@main.command()
@click.argument("source")
@reports_errors
def genus(source: str):
    """Achieved genus against homological lower bounds."""
    d, text = _load_msd(source)
    report = RunReport("multisect genus")
    report.add_input(source, text)
    report.section("genus", genus_report(d).lines())
    _finish(report)


def _certificate_report(report: RunReport, cert: NielsenCertificate):
    report.section("certificate", format_certificate(cert).splitlines())
    _finish(report, EXIT_CODES[cert.verdict])


@main.command()
@click.argument("source")
@click.option("--bound", type=click.IntRange(min=2), default=None, help="Largest quotient order.")
@reports_errors
def flip(source: str, bound: Optional[int]):
    """Compare the spines of the two sectors of a bisection."""
    d, text = _load_msd(source)
    report = RunReport("multisect flip")
    report.add_input(source, text)
    if bound is None:
        cert = flip_check(d)
    else:
        cert = distinguish(pi1_of_diagram(d), spine_tuple(d, 1), spine_tuple(d, 2), bound)
    _certificate_report(report, cert)


@main.command(name="distinguish")
@click.option("--presentation", "presentation_path", default=None, help="Presentation file.")
@click.option("--tuple", "tuples", multiple=True, help="Comma-separated words, give twice.")
@click.option(
    "--diagram", "diagram_paths", multiple=True, help="MSD file, give twice to compare two diagrams."
)
@click.option("--sectors", type=int, nargs=2, default=None, help="Sector index in each diagram.")
@click.option("--bound", type=click.IntRange(min=2), default=None, help="Largest quotient order.")
@reports_errors
def distinguish_(
    presentation_path: Optional[str],
    tuples: Tuple[str, ...],
    diagram_paths: Tuple[str, ...],
    sectors: Optional[Tuple[int, int]],
    bound: Optional[int],
):
    """Certify that two generating tuples are Nielsen inequivalent, or connect them."""
    report = RunReport("multisect distinguish")
    if presentation_path is not None:
        if len(tuples) != 2:
            raise click.UsageError("Give exactly two --tuple options with --presentation")
        text = _read(presentation_path)
        report.add_input(presentation_path, text)
        P = parse_presentation(text)
        t1, t2 = (parse_tuple(t, P.generator_count) for t in tuples)
    elif diagram_paths:
        if sectors is None:
            raise click.UsageError("Give --sectors with --diagram")
        if len(diagram_paths) > 2:
            raise click.UsageError("Give one or two --diagram options")
        diagrams = []
        for path in diagram_paths:
            d, text = _load_msd(path)
            report.add_input(path, text)
            diagrams.append(d)
        first, second = diagrams[0], diagrams[-1]
        P = pi1_of_diagram(first)
        if pi1_of_diagram(second) != P:
            raise ShapeMismatchError(
                f"Diagrams present different groups: {P} and {pi1_of_diagram(second)}"
            )
        t1, t2 = spine_tuple(first, sectors[0]), spine_tuple(second, sectors[1])
    else:
        raise click.UsageError("Give --presentation or --diagram")
    report.section("tuples", [format_tuple(t1, P.names()), format_tuple(t2, P.names())])
    _certificate_report(report, distinguish(P, t1, t2, bound))


@main.command()
@click.argument("source")
@click.option("--svg", "output", default=None, help="Output file (default stdout).")
@reports_errors
def render(source: str, output: Optional[str]):
    """Schematic chord diagram of every system on the 4G-gon."""
    d, _ = _load_msd(source)
    _write(render_svg(d), output)


if __name__ == "__main__":
    main()
