"""Command-line interface: ``polyrep {show|verify|act|band|seq}``."""
from __future__ import annotations

import logging
import re
from contextlib import contextmanager
from pathlib import Path

import click

from polyrep.base.module import RepresentationModule, StateIndex
from polyrep.errors import (
    FuelExhausted,
    ParseError,
    PolyrepError,
    PresentationError,
    UnknownIdent,
)
from polyrep.parser.alg_file import dump_presentation
from polyrep.report.suites import SUITES, parse_range, parse_suites, run_suites
from polyrep.systems.catalog import resolve
from polyrep.systems.claims import probe
from polyrep.systems.sequences import BracketSequences
from polyrep.utils.config import EngineConfig
from polyrep.utils.export import band_dict, band_frame, combo_frame, dumps, findings_frame

logger = logging.getLogger(__name__)

EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_FUEL = 3

_FACTOR = re.compile(r"^([A-Za-z]\w*)(?:\^(\d+))?$")


@contextmanager
def _exit_codes():
    """Map engine errors to exit codes."""
    try:
        yield
    except FuelExhausted as exc:
        click.echo(f"error: {exc}", err=True)
        raise SystemExit(EXIT_FUEL) from None
    except (PresentationError, ParseError, UnknownIdent, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        raise SystemExit(EXIT_INPUT) from None
    except PolyrepError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        raise SystemExit(EXIT_INPUT) from None


def parse_state(spec: str, template: tuple[str, ...]) -> StateIndex:
    """Read ``"F^2*X2^3"`` as template exponents; ``"1"`` or ``"Psi"`` is the lowest."""
    exponents = dict.fromkeys(template, 0)
    if spec.strip() in ("1", "Psi"):
        return tuple(exponents.values())
    for factor in spec.replace(" ", "").split("*"):
        match = _FACTOR.match(factor)
        if match is None or match.group(1) not in exponents:
            raise ValueError(f"Invalid state factor {factor!r} for template {template}")
        exponents[match.group(1)] += int(match.group(2) or 1)
    return tuple(exponents.values())


def _config(fuel: int | None = None, workers: int | None = None) -> EngineConfig:
    return EngineConfig.from_env(fuel=fuel, workers=workers)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        click.echo(text, nl=not text.endswith("\n"))
    else:
        out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        logger.info("wrote %s", out)


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG.")
@click.pass_context
def main(ctx: click.Context, verbose: int) -> None:
    """Exact representations of polynomial symmetry algebras."""
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = {"verbose": verbose}


@main.command()
@click.argument("algebra")
@click.option("--fuel", type=int, default=None, help="Rewrite step budget.")
def show(algebra: str, fuel: int | None) -> None:
    """Print a presentation in file syntax."""
    with _exit_codes():
        presentation = resolve(algebra, _config(fuel))
        click.echo(dump_presentation(presentation), nl=False)


@main.command()
@click.argument("algebra")
@click.option("--suites", "suites_text", default=",".join(SUITES), show_default=True)
@click.option("--range", "range_text", default=None, help="Index range, e.g. m=4..10.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="json")
@click.option("--strict", is_flag=True, help="Exit 1 on any MISMATCH.")
@click.option("--fuel", type=int, default=None, help="Rewrite step budget.")
@click.option("--workers", type=int, default=None, help="Threads for claim suites.")
@click.option("--timings", is_flag=True, help="Record wall time per suite.")
@click.pass_context
def verify(
    ctx: click.Context,
    algebra: str,
    suites_text: str,
    range_text: str | None,
    out: Path | None,
    fmt: str,
    strict: bool,
    fuel: int | None,
    workers: int | None,
    timings: bool,
) -> None:
    """Run verification suites and write the report."""
    with _exit_codes():
        config = _config(fuel, workers)
        presentation = resolve(algebra, config)
        report = run_suites(
            presentation,
            parse_suites(suites_text),
            config,
            parse_range(range_text) if range_text else None,
            timings=timings,
            progress=ctx.obj["verbose"] >= 1,
        )
    match fmt:
        case "json":
            _emit(report.to_json(), out)
        case "csv":
            _emit(findings_frame(report).to_csv(index=False), out)
        case _:
            lines = [f"{f.verdict:<15}{f.claim_ref}" for f in report.findings]
            counts = report.counts()
            lines.append(" ".join(f"{k}={v}" for k, v in counts.items()))
            _emit("\n".join(lines), out)
    if strict and report.mismatches:
        raise SystemExit(EXIT_MISMATCH)


@main.command()
@click.argument("algebra")
@click.option("--op", required=True, help="Operator expression.")
@click.option("--state", "state_spec", default="1", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
@click.option("--fuel", type=int, default=None, help="Rewrite step budget.")
def act(
    algebra: str, op: str, state_spec: str, fmt: str, fuel: int | None
) -> None:
    """Apply an operator to a basis state."""
    with _exit_codes():
        config = _config(fuel)
        module = RepresentationModule(resolve(algebra, config), config=config)
        image = module.act(op, parse_state(state_spec, module.template))
    match fmt:
        case "json":
            click.echo(dumps(image.to_dict()))
        case "csv":
            click.echo(combo_frame(image).to_csv(index=False), nl=False)
        case _:
            click.echo(str(image))


@main.command()
@click.argument("algebra")
@click.option("--op", required=True, help="Operator expression.")
@click.option("--range", "range_text", default="0..5", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="csv")
@click.option("--fuel", type=int, default=None, help="Rewrite step budget.")
def band(
    algebra: str,
    op: str,
    range_text: str,
    out: Path | None,
    fmt: str,
    fuel: int | None,
) -> None:
    """Matrix of an operator on the basis states in a range."""
    with _exit_codes():
        config = _config(fuel)
        module = RepresentationModule(resolve(algebra, config), config=config)
        start, top = parse_range(range_text)
        action = module.action_band(op, probe(len(module.template), top, start))
    match fmt:
        case "json":
            _emit(dumps(band_dict(action)), out)
        case "csv":
            _emit(band_frame(action).to_csv(index=False), out)
        case _:
            _emit(band_frame(action).to_string(index=False), out)


@main.command()
@click.argument("family", type=click.Choice(["a", "b"]))
@click.option("--k", "k_text", default="0..3", show_default=True)
@click.option("--p", "p_text", default="1..5", show_default=True)
@click.option(
    "--shift", type=click.Choice(["display", "recurrence"]), default="display", show_default=True
)
@click.option("--algebra", default="DII", show_default=True, help="Engine column source.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "text"]), default="csv")
def seq(
    family: str,
    k_text: str,
    p_text: str,
    shift: str,
    algebra: str,
    out: Path | None,
    fmt: str,
) -> None:
    """Table of a bracket sequence with recurrence and engine columns."""
    with _exit_codes():
        k0, k1 = parse_range(k_text)
        p0, p1 = parse_range(p_text)
        presentation = resolve(algebra, _config())
        table = BracketSequences(shift).table(
            family, range(k0, k1 + 1), range(p0, p1 + 1), presentation
        )
    match fmt:
        case "json":
            _emit(dumps(table.to_dict(orient="records")), out)
        case "csv":
            _emit(table.to_csv(index=False), out)
        case _:
            _emit(table.to_string(index=False), out)


if __name__ == "__main__":
    main()
