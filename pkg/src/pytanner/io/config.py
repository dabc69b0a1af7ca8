"""TOML run configuration files.

Top-level keys apply to every command, a table named after a command
applies to that command only and wins over top-level keys::

    seed = 7
    metric = "dist-ace"

    [construct]
    m = 504
    n = 1008
    edge-trials = 4

Keys mirror the long command-line flags, dashes may be written as
underscores. A command skips top-level keys it has no option for.
"""

import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from pytanner.exceptions import TannerValidationError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

COMMANDS = frozenset({"construct", "analyze", "ensemble", "simulate"})


def _key(name: str) -> str:
    return name.replace("-", "_")


@dataclass(frozen=True)
class RunConfig:
    """Settings of one command, split by where they were written."""

    shared: dict[str, Any]
    own: dict[str, Any]

    def merged(self) -> dict[str, Any]:
        return {**self.shared, **self.own}


def parse_run_sections(text: str, command: str) -> RunConfig:
    """Return the top-level and `command` table settings of a document."""
    try:
        document = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        msg = f"invalid TOML: {e}"
        raise TannerValidationError(msg) from e
    shared: dict[str, Any] = {}
    for name, value in document.items():
        if name in COMMANDS:
            continue
        if isinstance(value, dict):
            msg = f"unknown config table [{name}]"
            raise TannerValidationError(msg)
        shared[_key(name)] = value
    table = document.get(command, {})
    if not isinstance(table, dict):
        msg = f"config key {command!r} must be a table"
        raise TannerValidationError(msg)
    own = {_key(name): value for name, value in table.items()}
    return RunConfig(shared=shared, own=own)


def parse_run_config(text: str, command: str) -> dict[str, Any]:
    """Return the settings of `command` from a TOML document."""
    return parse_run_sections(text, command).merged()


def load_run_sections(
    path: str | os.PathLike[str], command: str
) -> RunConfig:
    """Read the settings of `command` from a TOML file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return parse_run_sections(text, command)
    except TannerValidationError as e:
        msg = f"{path}: {e}"
        raise TannerValidationError(msg) from e


def load_run_config(
    path: str | os.PathLike[str], command: str
) -> dict[str, Any]:
    return load_run_sections(path, command).merged()
