"""Command-line interface for dawg-morph."""

import json
import logging
import sys
from pathlib import Path
from typing import Any, NoReturn

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from dawg_morph.bench import DEFAULT_REPEAT, generate_queries, load_queries, run_benchmark
from dawg_morph.chart_generator import generate_compression_chart
from dawg_morph.coding import CodingTable, resolve_coding_table
from dawg_morph.config import Settings, load_settings
from dawg_morph.encoding import feature_dict, format_feature_pairs, parse_feature_query
from dawg_morph.engine import Inflection, Lexicon
from dawg_morph.exceptions import DawgMorphError, StorageError
from dawg_morph.ingest import ingest_tsv
from dawg_morph.pattern import Pattern
from dawg_morph.report import (
    build_dump,
    build_stats_report,
    compression_summary,
    render_bench_text,
    render_dump,
    render_stats_text,
)
from dawg_morph.storage import load_compiled, save_compiled
from dawg_morph.types import AnalyzeRecord, DawgMode, FormRecord

console = Console()
err_console = Console(stderr=True)

EXIT_IO = 1
EXIT_DATA = 2
EXIT_USAGE = 3

UNKNOWN = "?"


class DawgMorphGroup(click.Group):
    """Command group that reports usage errors with exit code 3."""

    def main(self, *args: Any, **kwargs: Any) -> Any:
        kwargs["standalone_mode"] = False
        try:
            return super().main(*args, **kwargs)
        except click.UsageError as e:
            e.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as e:
            e.show()
            sys.exit(e.exit_code)
        except click.exceptions.Abort:
            err_console.print("Aborted!")
            sys.exit(EXIT_IO)


def _configure_logging(level: str) -> None:
    handler = RichHandler(console=err_console, show_time=False, show_path=False)
    logger = logging.getLogger("dawg_morph")
    logger.handlers[:] = [handler]
    logger.setLevel(level)


def _fail(e: Exception, code: int) -> NoReturn:
    err_console.print("[red]Error:[/red]", escape(str(e)))
    sys.exit(code)


def _coding_table(path: str | None, settings: Settings) -> CodingTable:
    return resolve_coding_table(path if path is not None else settings.coding_table)


def _load(path: str, coding_table: str | None, settings: Settings) -> Lexicon:
    return load_compiled(path, _coding_table(coding_table, settings))


def _echo_json(data: Any) -> None:
    click.echo(json.dumps(data, ensure_ascii=False, indent=2))


def _form_record(form: Inflection, table: CodingTable, with_lemma: bool) -> FormRecord:
    record: FormRecord = {"surface": form.surface, "features": feature_dict(form.features, table)}
    if with_lemma:
        record["lemma"] = form.lemma
    return record


lexicon_option = click.option(
    "--lexicon",
    "lexicon_path",
    required=True,
    type=click.Path(dir_okay=False),
    help="Compiled lexicon image",
)
coding_table_option = click.option(
    "--coding-table",
    type=click.Path(dir_okay=False),
    help="Coding table JSON (default: DAWG_MORPH_CODING_TABLE or the Greek table)",
)
json_option = click.option("--json", "as_json", is_flag=True, help="Output JSON")


@click.group(cls=DawgMorphGroup)
@click.version_option(package_name="dawg-morph")
@click.option("--verbose", "-v", is_flag=True, help="Show debug logging on stderr")
@click.pass_context
def cli(ctx: click.Context, verbose: bool) -> None:
    """dawg-morph - Morphological analysis and synthesis with word graphs."""
    settings = load_settings()
    _configure_logging("DEBUG" if verbose else settings.log_level)
    ctx.obj = settings


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False))
@click.option("--output", "output_path", required=True, type=click.Path(dir_okay=False))
@click.option(
    "--mode",
    type=click.Choice([m.value for m in DawgMode]),
    help="Storage mode (default: DAWG_MORPH_MODE or det)",
)
@click.option("--strict", is_flag=True, help="Fail on the first invalid line")
@coding_table_option
@json_option
@click.pass_obj
def build(
    settings: Settings,
    input_path: str,
    output_path: str,
    mode: str | None,
    strict: bool,
    coding_table: str | None,
    as_json: bool,
) -> None:
    """Compile a TSV lexicon into an image."""
    try:
        table = _coding_table(coding_table, settings)
        storage_mode = DawgMode(mode) if mode else settings.mode
        result = ingest_tsv(input_path, table, strict or settings.strict, storage_mode)
        result.lexicon.freeze()
        save_compiled(result.lexicon, output_path)
        report = build_stats_report(result.lexicon)

        if as_json:
            _echo_json(
                {
                    "output": output_path,
                    "records": result.records,
                    "duplicates": result.duplicates,
                    "warnings": result.warnings,
                    "stats": report,
                }
            )
            return

        for warning in result.warnings:
            err_console.print("[yellow]Warning:[/yellow]", escape(warning))
        console.print(
            f"[green]✓[/green] Compiled {result.lexicon.entry_count} entries "
            f"({result.duplicates} duplicates) into {escape(output_path)}"
        )
        click.echo(render_stats_text(report), nl=False)

    except (StorageError, OSError) as e:
        _fail(e, EXIT_IO)
    except DawgMorphError as e:
        _fail(e, EXIT_DATA)


@cli.command()
@lexicon_option
@click.option("--stdin", "from_stdin", is_flag=True, help="Read words from stdin, one per line")
@click.argument("words", nargs=-1)
@coding_table_option
@json_option
@click.pass_obj
def analyze(
    settings: Settings,
    lexicon_path: str,
    from_stdin: bool,
    words: tuple[str, ...],
    coding_table: str | None,
    as_json: bool,
) -> None:
    """Print lemma and features of each WORD."""
    queries = list(words)
    if from_stdin:
        stream = click.get_text_stream("stdin")
        queries.extend(line.strip() for line in stream if line.strip())
    if not queries:
        raise click.UsageError("Give one or more WORD arguments or --stdin")

    try:
        lexicon = _load(lexicon_path, coding_table, settings)
        records: list[AnalyzeRecord] = []
        for word in queries:
            analyses = lexicon.analyze(word)
            if as_json:
                records.append(
                    {
                        "surface": word,
                        "analyses": [
                            {"lemma": a.lemma, "features": feature_dict(a.features, lexicon.coding)}
                            for a in analyses
                        ],
                    }
                )
                continue
            if not analyses:
                click.echo(f"{word}\t{UNKNOWN}\t{UNKNOWN}")
            for analysis in analyses:
                features = format_feature_pairs(analysis.features, lexicon.coding)
                click.echo(f"{word}\t{analysis.lemma}\t{features}")

        if as_json:
            _echo_json(records)

    except (StorageError, OSError) as e:
        _fail(e, EXIT_IO)
    except DawgMorphError as e:
        _fail(e, EXIT_DATA)


@cli.command()
@lexicon_option
@click.option("--lemma", required=True, help="Citation form to inflect")
@click.option("--features", default="", help="Wanted features, e.g. case=genitive,number=plural")
@coding_table_option
@json_option
@click.pass_obj
def synth(
    settings: Settings,
    lexicon_path: str,
    lemma: str,
    features: str,
    coding_table: str | None,
    as_json: bool,
) -> None:
    """Print the inflected forms of a lemma."""
    try:
        lexicon = _load(lexicon_path, coding_table, settings)
        query = parse_feature_query(features, lexicon.coding)
        forms = lexicon.synthesize(lemma, query)
        if as_json:
            _echo_json([_form_record(f, lexicon.coding, False) for f in forms])
            return
        for form in forms:
            click.echo(f"{form.surface}\t{format_feature_pairs(form.features, lexicon.coding)}")

    except (StorageError, OSError) as e:
        _fail(e, EXIT_IO)
    except DawgMorphError as e:
        _fail(e, EXIT_DATA)


@cli.command()
@lexicon_option
@click.option("--features", required=True, help="Target features, e.g. number=singular")
@click.argument("word")
@coding_table_option
@json_option
@click.pass_obj
def reinflect(
    settings: Settings,
    lexicon_path: str,
    features: str,
    word: str,
    coding_table: str | None,
    as_json: bool,
) -> None:
    """Print the forms of WORD's lemmas that carry the target features."""
    try:
        lexicon = _load(lexicon_path, coding_table, settings)
        forms = lexicon.reinflect(word, parse_feature_query(features, lexicon.coding))
        if as_json:
            _echo_json([_form_record(f, lexicon.coding, True) for f in forms])
            return
        for form in forms:
            click.echo(f"{form.surface}\t{format_feature_pairs(form.features, lexicon.coding)}")

    except (StorageError, OSError) as e:
        _fail(e, EXIT_IO)
    except DawgMorphError as e:
        _fail(e, EXIT_DATA)


@cli.command()
@lexicon_option
@click.option("--pattern", "glob", required=True, help="Surface pattern, '*' matches any text")
@click.option("--features", default="", help="Partial features, e.g. case=genitive")
@coding_table_option
@json_option
@click.pass_obj
def lookup(
    settings: Settings,
    lexicon_path: str,
    glob: str,
    features: str,
    coding_table: str | None,
    as_json: bool,
) -> None:
    """Find entries by surface pattern and partial features."""
    if not glob:
        raise click.BadParameter("must not be empty", param_hint="--pattern")
    try:
        lexicon = _load(lexicon_path, coding_table, settings)
        query = parse_feature_query(features, lexicon.coding)
        matches = lexicon.fuzzy_lookup(Pattern.parse(glob), query)
        if as_json:
            _echo_json(
                [
                    _form_record(Inflection(s, a.features, a.lemma), lexicon.coding, True)
                    for s, a in matches
                ]
            )
            return
        for surface, analysis in matches:
            features_text = format_feature_pairs(analysis.features, lexicon.coding)
            click.echo(f"{surface}\t{analysis.lemma}\t{features_text}")

    except (StorageError, OSError) as e:
        _fail(e, EXIT_IO)
    except DawgMorphError as e:
        _fail(e, EXIT_DATA)


@cli.command()
@lexicon_option
@click.option(
    "--chart",
    type=click.Path(dir_okay=False),
    help="Also write a PNG chart of trie/det/nondet node counts",
)
@coding_table_option
@json_option
@click.pass_obj
def stats(
    settings: Settings,
    lexicon_path: str,
    chart: str | None,
    coding_table: str | None,
    as_json: bool,
) -> None:
    """Print node, edge and entry counts and the compression ratio."""
    try:
        lexicon = _load(lexicon_path, coding_table, settings)
        report = build_stats_report(lexicon)
        if chart:
            png = generate_compression_chart(compression_summary(lexicon))
            Path(chart).write_bytes(png)
        if as_json:
            _echo_json(report)
        else:
            click.echo(render_stats_text(report), nl=False)
        if chart and not as_json:
            console.print(f"[green]✓[/green] Chart saved to {escape(chart)}")

    except (StorageError, OSError) as e:
        _fail(e, EXIT_IO)
    except DawgMorphError as e:
        _fail(e, EXIT_DATA)


@cli.command()
@lexicon_option
@click.option(
    "--queries",
    "queries_path",
    type=click.Path(dir_okay=False),
    help="File of query words, one per line",
)
@click.option("--generate", type=int, help="Draw N query words from the lexicon")
@click.option("--repeat", type=click.IntRange(min=1), default=DEFAULT_REPEAT, show_default=True)
@click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for --generate")
@coding_table_option
@json_option
@click.pass_obj
def bench(
    settings: Settings,
    lexicon_path: str,
    queries_path: str | None,
    generate: int | None,
    repeat: int,
    threads: int,
    seed: int,
    coding_table: str | None,
    as_json: bool,
) -> None:
    """Measure analysis throughput against the 10,000 words/sec reference."""
    if (queries_path is None) == (generate is None):
        raise click.UsageError("Give exactly one of --queries or --generate")
    try:
        lexicon = _load(lexicon_path, coding_table, settings)
        if queries_path is not None:
            queries = load_queries(queries_path)
        else:
            assert generate is not None
            queries = generate_queries(lexicon, generate, seed)

        report = run_benchmark(lexicon, queries, repeat=repeat, threads=threads)
        if as_json:
            _echo_json(report)
        else:
            click.echo(render_bench_text(report), nl=False)

    except (StorageError, OSError) as e:
        _fail(e, EXIT_IO)
    except DawgMorphError as e:
        _fail(e, EXIT_DATA)


@cli.command()
@lexicon_option
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "dot"]),
    default="text",
    show_default=True,
)
@coding_table_option
@json_option
@click.pass_obj
def dump(
    settings: Settings,
    lexicon_path: str,
    fmt: str,
    coding_table: str | None,
    as_json: bool,
) -> None:
    """Print the nodes and edges of the lexicon graph."""
    try:
        lexicon = _load(lexicon_path, coding_table, settings)
        if as_json:
            _echo_json(build_dump(lexicon.dawg))
        else:
            click.echo(render_dump(lexicon.dawg, fmt), nl=False)

    except (StorageError, OSError) as e:
        _fail(e, EXIT_IO)
    except DawgMorphError as e:
        _fail(e, EXIT_DATA)


if __name__ == "__main__":
    cli()
