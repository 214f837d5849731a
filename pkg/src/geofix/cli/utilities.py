import functools
import json
import traceback
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Callable, ContextManager, Generator, NoReturn, TypeVar

import typer
from click import ClickException
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn

from geofix.utilities.exception import ConfigurationError, GeofixError

ModelT = TypeVar("ModelT", bound=BaseModel)

EXIT_VIOLATION = 1
EXIT_ERROR = 2


def process_key_value_pairs(
    pairs: list[str] | None,
    as_json: bool = False,
) -> dict[str, Any]:
    """
    Turn repeated `--set KEY=VALUE` flags into a dictionary.

    Surrounding whitespace and quotes are dropped from values. With `as_json`, values that
    parse as JSON (numbers, lists, objects, true/false/null) are decoded and anything else
    stays a string, so `map=negate` and `epsilons=[1, 0.1]` both work unquoted.
    """
    parsed: dict[str, Any] = {}
    malformed: list[str] = []
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key or not value:
            malformed.append(pair)
            continue
        text = value.strip().strip("\"'")
        if as_json:
            try:
                parsed[key.strip()] = json.loads(text)
                continue
            except json.JSONDecodeError:
                pass
        parsed[key.strip()] = text

    if malformed:
        raise ConfigurationError(
            f"Expected KEY=VALUE, got {', '.join(repr(pair) for pair in malformed)}"
        )
    return parsed


def apply_overrides(raw: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    """Set dotted keys such as `space.dim` in a nested config dictionary."""
    merged = json.loads(json.dumps(raw))
    for dotted, value in overrides.items():
        *parents, leaf = dotted.split(".")
        node = merged
        for key in parents:
            child = node.setdefault(key, {})
            if not isinstance(child, dict):
                raise ConfigurationError(f"Cannot set {dotted}: {key} is not an object")
            node = child
        node[leaf] = value
    return merged


def load_config(
    model: type[ModelT],
    path: Path | None,
    overrides: dict[str, Any],
) -> ModelT:
    """
    Read a JSON config, apply flag overrides and validate it.

    Relative paths in the config resolve against the config's own directory.
    """
    raw: dict[str, Any] = {}
    if path is not None:
        try:
            raw = json.loads(path.read_text())
        except FileNotFoundError:
            raise ConfigurationError(f"Config file {path} does not exist") from None
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Config file {path} is not valid JSON: {e}") from None
        if not isinstance(raw, dict):
            raise ConfigurationError(f"Config file {path} must hold a JSON object")

    base_dir = path.parent if path is not None else Path.cwd()
    return model.model_validate(
        apply_overrides(raw, overrides), context={"base_dir": base_dir}
    )


class GeofixTyper(typer.Typer):
    """
    Wraps commands created by `Typer` to map errors onto exit codes.

    0 means every checked property held, 1 that a property was violated and 2 that
    the run could not be carried out.
    """

    console: Console
    quiet: bool = False

    def __init__(
        self,
        *args: Any,
        **kwargs: Any,
    ):
        super().__init__(*args, **kwargs)
        self.console = Console(highlight=False, color_system="auto")

    def _with_cli_exception_handling(
        self, fn: Callable[..., Any]
    ) -> Callable[..., Any]:
        """Internal wrapper to handle exceptions in CLI commands."""

        @functools.wraps(fn)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            try:
                return fn(*args, **kwargs)
            except (typer.Exit, typer.Abort, ClickException):
                raise  # Do not capture click or typer exceptions
            except ValidationError as e:
                self.exit_with_error(f"Invalid configuration:\n{e}")
            except GeofixError as e:
                self.exit_with_error(str(e) or type(e).__name__)
            except Exception as e:
                traceback.print_exc()
                self.exit_with_error(str(e) or "An error occurred.")

        return wrapper

    def command(
        self,
        name: str | None = None,
        *args: Any,
        **kwargs: Any,
    ) -> Callable[[Callable[..., Any]], Callable[..., Any]]:
        """Create a new command whose errors are reported through the console."""

        def wrapper(original_fn: Callable[..., Any]) -> Callable[..., Any]:
            wrapped_fn = self._with_cli_exception_handling(original_fn)
            command_decorator = super(GeofixTyper, self).command(
                name=name, *args, **kwargs
            )
            return command_decorator(wrapped_fn)

        return wrapper

    def create_progress(self, *columns: Any, **kwargs: Any) -> ContextManager[Progress]:
        """Create a progress indicator that respects quiet mode."""
        if not columns:
            columns = (SpinnerColumn(), TextColumn("[dim]{task.description}"))

        @contextmanager
        def progress_maker() -> Generator[Progress, None, None]:
            with Progress(*columns, transient=True, disable=self.quiet, **kwargs) as prog:
                yield prog

        return progress_maker()

    def print(self, *args: Any, **kwargs: Any) -> None:
        """Print a message unless quiet mode is enabled."""
        if not self.quiet:
            self.console.print(*args, **kwargs)

    def error(self, message: str | Exception) -> None:
        """Print an error message unless quiet mode is enabled."""
        if not self.quiet:
            self.console.print(message, style="red")

    def exit_with_error(self, message: str) -> NoReturn:
        """Print an error message and exit with the usage/config error code."""
        self.error(message)
        raise typer.Exit(EXIT_ERROR)

    def exit_with_violation(self, message: str) -> NoReturn:
        """Print a message naming the violated property and exit with code 1."""
        self.error(message)
        raise typer.Exit(EXIT_VIOLATION)

    def success(self, message: str) -> None:
        """Print a success message unless quiet mode is enabled."""
        if not self.quiet:
            self.console.print(message, style="green")
