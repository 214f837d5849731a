import logging
from enum import Enum
from typing import Annotated

import typer
from rich.console import Console
from rich.logging import RichHandler

from geofix import __version__
from geofix.cli.utilities import GeofixTyper

app = GeofixTyper(
    rich_markup_mode="rich",
    help="Check metric, convexity and fixed point properties of geodesic spaces",
    short_help="Geodesic space experiments",
    no_args_is_help=True,
)


class LogLevel(str, Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


def version_callback(value: bool) -> None:
    if value:
        print(__version__)
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        False,
        "--version",
        "-v",
        help="Display the current version of geofix",
        callback=version_callback,
        is_eager=True,
    ),
    log_level: Annotated[
        LogLevel,
        typer.Option(
            "--log-level",
            help="Level of library log messages shown on stderr",
            case_sensitive=False,
        ),
    ] = LogLevel.WARNING,
) -> None:
    """
    Main callback for the CLI app.
    """
    logging.basicConfig(
        level=log_level.value,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )
