"""Command line entry points: repl, serve, eval, corpus run."""

from __future__ import annotations

import json
import sys

import click

from .errors import QuantKitchenError
from .harness import format_report, load_corpus, run_corpus
from .service import load_pipeline, repl as run_repl, serve as run_serve
from .textio import serialize_ir

_SOURCE_OPTIONS = [
    click.option("--world", type=click.Path(exists=True), default=None, help="scenario file"),
    click.option("--kb", type=click.Path(exists=True), default=None, help="knowledge file"),
    click.option("--lexicon", type=click.Path(exists=True), default=None, help="lexicon file"),
]


def _with_sources(f):
    for opt in reversed(_SOURCE_OPTIONS):
        f = opt(f)
    return f


def _pipeline_or_die(world, kb, lexicon):
    try:
        return load_pipeline(world, kb, lexicon)
    except (QuantKitchenError, OSError, ValueError) as e:
        raise click.ClickException(str(e))


@click.group()
def main() -> None:
    """English sentences with quantifiers, evaluated over a symbolic kitchen."""


@main.command()
@_with_sources
def repl(world, kb, lexicon) -> None:
    """Interactive session: type sentences, get answers."""
    run_repl(_pipeline_or_die(world, kb, lexicon))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8008, show_default=True, type=int)
@_with_sources
def serve(host, port, world, kb, lexicon) -> None:
    """Run the HTTP service."""
    run_serve(_pipeline_or_die(world, kb, lexicon), host=host, port=port)


@main.command(name="eval")
@click.option("--sentence", required=True, help="sentence to translate and evaluate")
@_with_sources
def eval_cmd(sentence, world, kb, lexicon) -> None:
    """One-shot: translate a sentence, run it, print the result as JSON."""
    pipeline = _pipeline_or_die(world, kb, lexicon)
    ir = pipeline.interpret(sentence)
    click.echo(serialize_ir(ir))
    entry = pipeline.handle_sentence(sentence)
    if "answer" in entry:
        click.echo(json.dumps({"answer": entry["answer"]}))
    elif "report" in entry:
        click.echo(json.dumps(entry["report"], indent=2))
    else:
        sys.exit(2)


@main.group()
def corpus() -> None:
    """Corpus evaluation commands."""


@corpus.command(name="run")
@click.argument("file", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None, help="write the JSON report here")
@_with_sources
def corpus_run(file, out, world, kb, lexicon) -> None:
    """Grade a prompt/completion corpus against the translator."""
    pipeline = _pipeline_or_die(world, kb, lexicon)
    try:
        pairs = load_corpus(open(file).read())
    except QuantKitchenError as e:
        raise click.ClickException(str(e))
    report = run_corpus(pairs, pipeline.lexicon, pipeline.kb)
    click.echo(format_report(report))
    if out:
        with open(out, "w") as fh:
            json.dump(report, fh, indent=2)
        click.echo(f"report written to {out}")


if __name__ == "__main__":
    main()
