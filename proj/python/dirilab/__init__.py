"""Python front end to the dirilab C++ core."""

import json

from ._core import (
    DirilabError,
    Series,
    command_names,
    corpus,
    corpus_names,
    hardy_stein_rhs,
    hp_norm,
    isolate_zeros,
    jessen,
    kronecker_point,
    parseval_mean,
    polynomial,
    torus_mean,
)
from ._core import run_command as _run_command


def run(command, config=None, seed=None):
    """Run a CLI command in process; returns (passed, report dict, other files)."""
    passed, files = _run_command(command, json.dumps(config or {}), seed)
    report = json.loads(files.pop("report.json"))
    return passed, report, files


__all__ = [
    "DirilabError",
    "Series",
    "command_names",
    "corpus",
    "corpus_names",
    "hardy_stein_rhs",
    "hp_norm",
    "isolate_zeros",
    "jessen",
    "kronecker_point",
    "parseval_mean",
    "polynomial",
    "run",
    "torus_mean",
]
