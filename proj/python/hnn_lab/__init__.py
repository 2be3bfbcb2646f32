import json

from ._core import (
    HnnLabError,
    abelianize,
    britton,
    classify,
    indices,
    is_trivial,
    tree_degree,
    verify,
)
from ._core import run as _run


def run(*args):
    """Run a subcommand; returns (exit_code, stdout, result dict)."""
    code, out, result = _run([str(a) for a in args])
    return code, out, json.loads(result)


__all__ = [
    "HnnLabError",
    "abelianize",
    "britton",
    "classify",
    "indices",
    "is_trivial",
    "run",
    "tree_degree",
    "verify",
]
