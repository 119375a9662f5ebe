"""
Command-line interface for the toolkit.
Uses Click framework for command parsing and execution.

Every command prints a human-readable summary (unless --json-only) followed
by one JSON document on the last line of stdout. Diagnostics go to stderr.

Exit codes: 0 success, 1 computation error, 2 usage or input error,
3 verification mismatch, 64 unknown command.
"""

import functools
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import click
from tabulate import tabulate

from core import __version__
from core.batch_verify import BatchVerifier, generate_suite
from core.diagram import LinkDiagram
from core.exceptions import ComputationLimitError, EmbeddingError, ParseError, ToolkitError
from core.graph import SignedBipartiteGraph, forget_signs
from core.homfly import HomflyEvaluator
from core.interior import InteriorCalculator, recursion_trace
from core.lattice import ehrhart_data, ehrhart_series, signed_ehrhart_counts, signed_ehrhart_series
from core.median import PlaneEmbedding, median_construct
from core.poly import IntPolynomial, series_from_poly_over_power
from core.seifert import seifert_decompose
from core.signed import SignedInteriorCalculator, signed_interior_recursive
from core.theorem import morton_bound, signed_interior_any, verify_main_theorem
from database.catalog import get_catalog
from utils.config import Config, get_config, reload_config
from utils.exporter import Exporter, render_json
from utils.formats import FORMAT_VERSION, GRAPH_KIND, diagram_payload, format_pd_text, load_input
from utils.logger import configure_logging, get_logger

EXIT_MISMATCH = 3
EXIT_UNKNOWN_COMMAND = 64


class InputError(click.ClickException):
    """Unreadable or malformed input file."""
    exit_code = 2


class ComputationError(click.ClickException):
    """A computation failed or exceeded its budget."""
    exit_code = 1


class UnknownCommandError(click.UsageError):
    exit_code = EXIT_UNKNOWN_COMMAND


class ToolkitGroup(click.Group):
    """Group that reports unknown subcommands with their own exit code."""

    def resolve_command(self, ctx, args):
        name = args[0] if args else ""
        if name and not name.startswith("-") and self.get_command(ctx, name) is None:
            raise UnknownCommandError(f"No such command '{name}'.", ctx)
        return super().resolve_command(ctx, args)


def handle_errors(func):
    """Translate toolkit exceptions into click exceptions with the right exit codes."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (ParseError, EmbeddingError) as e:
            raise InputError(str(e)) from None
        except OSError as e:
            raise InputError(f"{e.filename or ''}: {e.strerror or e}") from None
        except (ToolkitError, ArithmeticError, ValueError) as e:
            raise ComputationError(str(e)) from None
    return wrapper


def _config(ctx: click.Context) -> Config:
    return ctx.obj["config"]


def _emit(ctx: click.Context, payload: Dict[str, Any], text: Optional[str] = None) -> None:
    """Print the optional text block and the JSON document."""
    data = {"format": FORMAT_VERSION}
    data.update(payload)
    if text and not ctx.obj["json_only"]:
        click.echo(text)
    click.echo(render_json(data, _config(ctx).get("output.json_indent")))


def _load_graph(path: str) -> Tuple[SignedBipartiteGraph, Optional[PlaneEmbedding]]:
    kind, g, emb = load_input(path)
    if kind != GRAPH_KIND:
        raise ParseError("Expected a graph file, got a PD diagram", source=path)
    return g, emb


def _load_diagram(path: str) -> LinkDiagram:
    """A PD file, or the median diagram of a graph file with its rotations."""
    kind, data, emb = load_input(path)
    if kind == GRAPH_KIND:
        return median_construct(data, emb or PlaneEmbedding())
    return data


input_file = click.argument("path", type=click.Path(exists=True, dir_okay=False))


@click.group(cls=ToolkitGroup)
@click.version_option(version=__version__)
@click.option("--json-only", is_flag=True, help="Print only the JSON document")
@click.option("--config", "config_file", type=click.Path(dir_okay=False), help="Configuration file")
@click.option("--verbose", "-v", count=True, help="-v for progress, -vv for debug output")
@click.pass_context
def cli(ctx, json_only, config_file, verbose):
    """
    Interior polynomials of signed bipartite graphs and the top of the HOMFLY polynomial.

    Graph files (*.graph) and PD diagram files (*.pd) are accepted in text
    or JSON form.
    """
    ctx.ensure_object(dict)
    config = reload_config(config_file) if config_file else get_config()
    level = config.get("logging.level", "WARNING")
    if verbose == 1:
        level = "INFO"
    elif verbose >= 2:
        level = "DEBUG"
    configure_logging(
        level,
        config.get("logging.file_enabled", False),
        config.get("logging.log_dir"),
        config.get("logging.keep_days", 30),
    )
    ctx.obj["config"] = config
    ctx.obj["json_only"] = json_only or not config.get("output.text", True)
    ctx.obj["verbose"] = verbose


@cli.command()
@input_file
@click.option("--offset", type=click.Choice(["0", "1"]), default="0", help="Which alternate cycle edges are deleted")
@click.pass_context
@handle_errors
def interior(ctx, path, offset):
    """Interior polynomial I' of a graph (edge signs are ignored)."""
    g, _ = _load_graph(path)
    calculator = InteriorCalculator(offset=int(offset), memoize=_config(ctx).get("interior.memoize", True))
    polynomial = calculator.compute(forget_signs(g))
    payload = dict(polynomial.to_dict())
    payload["text"] = polynomial.to_text()
    _emit(ctx, payload, f"I'(G) = {polynomial.to_text()}")


@cli.command("signed-interior")
@input_file
@click.option("--no-shortcut", is_flag=True, help="Always evaluate the full subset sum")
@click.option("--trace", is_flag=True, help="Show the ledger of subset terms")
@click.option("--csv", "csv_file", type=click.Path(dir_okay=False), help="Write the ledger rows to a CSV file")
@click.pass_context
@handle_errors
def signed_interior_command(ctx, path, no_shortcut, trace, csv_file):
    """Signed interior polynomial I+ of a graph."""
    g, _ = _load_graph(path)
    config = _config(ctx)
    use_shortcut = config.get("signed.use_shortcut", True) and not no_shortcut
    calculator = SignedInteriorCalculator(
        use_shortcut,
        config.get("signed.max_negative_edges", 20),
        keep_terms=trace or bool(csv_file),
    )
    try:
        result = calculator.compute(g)
    except ComputationLimitError as e:
        get_logger().warning(f"{e}; using the skein-lemma recursion")
        polynomial = signed_interior_recursive(g, use_shortcut)
        _emit(ctx, {**polynomial.to_dict(), "text": polynomial.to_text(), "shortcut": None},
              f"I+(G) = {polynomial.to_text()}")
        return

    lines = []
    if result.shortcut is not None:
        lines.append(f"Alternating cycle through edges {' '.join(result.shortcut.edge_ids)}")
    if trace and result.terms:
        rows = [
            [row.size, "+" if row.sign > 0 else "-", row.multiplicity, row.polynomial.to_text()]
            for row in result.rows()
        ]
        lines.append(tabulate(rows, headers=["Deleted", "Sign", "Count", "I'(G - S)"], tablefmt="grid"))
    lines.append(f"I+(G) = {result.polynomial.to_text()}")

    if csv_file:
        Exporter().export_ledger_csv(result, csv_file)
    payload = result.to_dict()
    if not trace:
        payload.pop("ledger", None)
    _emit(ctx, payload, "\n".join(lines))


@cli.command()
@input_file
@click.option("--max-s", type=click.IntRange(min=0), default=None, help="Largest dilation factor to report")
@click.option("--order", type=click.IntRange(min=0), default=None, help="Truncation order of the Ehrhart series")
@click.option("--signed", is_flag=True, help="Use the signed counts eps+ and I+")
@click.option("--csv", "csv_file", type=click.Path(dir_okay=False), help="Write the counts to a CSV file")
@click.pass_context
@handle_errors
def ehrhart(ctx, path, max_s, order, signed, csv_file):
    """Lattice point counts of the root polytope and the Ehrhart series identity."""
    g, _ = _load_graph(path)
    max_s = _config(ctx).resolve("lattice.max_s", max_s)
    order = _config(ctx).resolve("lattice.series_order", order)
    direct = _config(ctx).get("lattice.direct_counts", False)
    exponent = g.vertex_count - 1

    if signed:
        counts = list(signed_ehrhart_counts(g, max_s))
        series = signed_ehrhart_series(g, order, direct)
        polynomial = signed_interior_any(g)
        payload: Dict[str, Any] = {"signed": True, "counts": counts}
    else:
        unsigned = forget_signs(g)
        data = ehrhart_data(unsigned)
        counts = [data.value(s) for s in range(max_s + 1)]
        series = ehrhart_series(unsigned, order, direct)
        polynomial = data.interior_polynomial()
        payload = {"signed": False, "counts": counts}
        payload.update({"degree_bound": data.degree_bound, "basis_coeffs": data.to_dict()["basis_coeffs"]})

    predicted = series_from_poly_over_power(polynomial, exponent, order)
    payload["interior"] = polynomial.to_dict()
    payload["series"] = series.to_dict()
    payload["series_identity"] = predicted.coeffs == series.coeffs
    if csv_file:
        Exporter().export_counts_csv(counts, csv_file)

    name = "I+(G)" if signed else "I'(G)"
    table = tabulate(list(enumerate(counts)), headers=["s", "points"], tablefmt="grid")
    text = "\n".join([
        table,
        f"{name} = {polynomial.to_text()}",
        f"Series to order {order}: {series.to_text()}",
        f"Matches I/(1-x)^{exponent}: {payload['series_identity']}",
    ])
    _emit(ctx, payload, text)


@cli.command()
@input_file
@click.option("--max-crossings", type=int, default=None, help="Crossing budget")
@click.pass_context
@handle_errors
def homfly(ctx, path, max_crossings):
    """HOMFLY polynomial of a PD diagram, or of the median diagram of a plane graph."""
    d = _load_diagram(path)
    evaluator = HomflyEvaluator(
        _config(ctx).resolve("knot.max_crossings", max_crossings),
        _config(ctx).get("knot.split_diagrams", True),
    )
    polynomial = evaluator.evaluate(d)
    bound = morton_bound(d)
    payload = dict(polynomial.to_dict())
    payload.update({
        "text": polynomial.to_text(),
        "crossings": d.crossing_count,
        "components": d.component_count,
        "max_z_degree": polynomial.max_z_degree(),
        "morton_bound": bound,
    })
    text = "\n".join([
        f"P(v,z) = {polynomial.to_text()}",
        f"max z-degree {polynomial.max_z_degree()}, Morton bound {bound}",
    ])
    _emit(ctx, payload, text)


@cli.command()
@input_file
@click.pass_context
@handle_errors
def seifert(ctx, path):
    """Seifert circles and Seifert graph of a diagram."""
    d = _load_diagram(path)
    decomposition = seifert_decompose(d)
    rows = [
        [label, decomposition.graph.color_of(label), " ".join(circle)]
        for label, circle in zip(decomposition.labels, decomposition.circles)
    ]
    text = tabulate(rows, headers=["Circle", "Class", "Arcs"], tablefmt="grid")
    _emit(ctx, decomposition.to_dict(), text)


@cli.command()
@input_file
@click.pass_context
@handle_errors
def median(ctx, path):
    """Median diagram of a plane signed bipartite graph (R lines give the rotations)."""
    g, emb = _load_graph(path)
    d = median_construct(g, emb or PlaneEmbedding())
    _emit(ctx, diagram_payload(d), format_pd_text(d).rstrip("\n"))


@cli.command()
@input_file
@click.option("--max-crossings", type=int, default=None, help="Crossing budget")
@click.option("--no-shortcut", is_flag=True, help="Always evaluate the full subset sum for I+")
@click.option("--report", "report_file", type=click.Path(dir_okay=False), help="Also write the report to a JSON file")
@click.pass_context
@handle_errors
def verify(ctx, path, max_crossings, no_shortcut, report_file):
    """Compare the top of the HOMFLY polynomial with v^e I+(v^2)."""
    d = _load_diagram(path)
    use_shortcut = _config(ctx).get("signed.use_shortcut", True) and not no_shortcut
    report = verify_main_theorem(d, _config(ctx).resolve("knot.max_crossings", max_crossings), use_shortcut)
    rows = [
        ["crossings", report.crossings],
        ["Seifert circles", report.seifert_circles],
        ["Morton bound", report.morton_bound],
        ["max z-degree", report.max_z_degree],
        ["exponent e", report.exponent],
        ["I+(G)", report.signed_interior.to_text()],
        ["top", report.top.to_text()],
        ["v^e I+(v^2)", report.predicted_top.to_text()],
        ["equal", report.equal],
    ]
    if report_file:
        Exporter().export_report_json({**diagram_payload(d), "report": report.to_dict()}, report_file)
    _emit(ctx, report.to_dict(), tabulate(rows, tablefmt="grid"))
    if not report.equal:
        ctx.exit(EXIT_MISMATCH)


@cli.command("recursion-trace")
@input_file
@click.option("--offset", type=click.Choice(["0", "1"]), default="0", help="Which alternate cycle edges are deleted")
@click.pass_context
@handle_errors
def recursion_trace_command(ctx, path, offset):
    """Computation tree of the cycle-deletion recursion."""
    g, _ = _load_graph(path)
    tree = recursion_trace(forget_signs(g), int(offset))
    total = tree.signed_sum()
    leaves = [
        ["+" if sign > 0 else "-", " ".join(leaf.edges), leaf.components, leaf.polynomial.to_text()]
        for sign, leaf in tree.leaves()
    ]
    text = "\n".join([
        tabulate(leaves, headers=["Sign", "Forest edges", "Components", "Polynomial"], tablefmt="grid"),
        f"Signed sum: {total.to_text()}",
    ])
    _emit(ctx, {"tree": tree.to_dict(), "sum": total.to_dict(), "leaves": len(leaves)}, text)


@cli.command("verify-suite")
@click.option("--random", "random_cases", type=int, default=None, help="Extra random plane graphs")
@click.option("--seed", type=int, default=None, help="Seed for the random graphs")
@click.option("--max-edges", type=int, default=None, help="Largest template size")
@click.option("--csv", "csv_file", type=click.Path(dir_okay=False), help="Write per-case results to a CSV file")
@click.pass_context
@handle_errors
def verify_suite_command(ctx, random_cases, seed, max_edges, csv_file):
    """Verify every sign pattern of the catalogue templates."""
    cases = generate_suite(
        get_catalog(),
        _config(ctx).resolve("suite.max_edges", max_edges),
        _config(ctx).resolve("suite.random_cases", random_cases),
        _config(ctx).resolve("suite.seed", seed),
    )

    def progress(message: str, current: int, total: int) -> None:
        click.echo(message, err=True)

    verifier = BatchVerifier(
        progress if ctx.obj["verbose"] else None,
        _config(ctx).get("knot.max_crossings", 16),
    )
    result = verifier.verify_cases(cases)
    if csv_file:
        Exporter().export_suite_csv(result, csv_file)

    rows = [
        ["Total cases", result.total_cases],
        ["Passed", result.passed],
        ["Failed", result.failed],
        ["Errors", result.errored],
    ]
    _emit(ctx, result.to_dict(), tabulate(rows, tablefmt="grid"))
    if not result.success:
        ctx.exit(EXIT_MISMATCH)


@cli.command()
@click.pass_context
def fixtures(ctx):
    """List the shipped fixtures."""
    catalog = get_catalog()
    rows = [
        [
            info.name,
            info.file,
            info.kind,
            IntPolynomial(tuple(info.signed_interior)).to_text() if info.signed_interior else "",
            len(info.designated),
            info.description,
        ]
        for info in catalog.fixtures
    ]
    text = tabulate(rows, headers=["Name", "File", "Kind", "I+", "Designated", "Description"], tablefmt="grid")
    payload = {"fixtures": [{"name": info.name, "file": info.file, "kind": info.kind} for info in catalog.fixtures]}
    _emit(ctx, payload, text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line and return the exit code instead of exiting.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]
    """
    args: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        result = cli.main(args=args, prog_name="seifert-interior", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    return result if isinstance(result, int) else 0


def main() -> None:
    """Console script entry point."""
    sys.exit(run())
