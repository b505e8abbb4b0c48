"""Python bindings for the trife library."""

import json

from ._trife import (
    PhiChain,
    PoleError,
    SolutionTriple,
    TrifeError,
    Weierstrass,
    _run_cli,
    elliptic_solution,
    entire_solution,
    family_from_json,
)
from . import _trife


def fe14_report(triple, seed=0, count=200, half_width=2.0, tol=1e-8):
    """Functional-equation residual report as a dict."""
    return json.loads(_trife.fe14_report(triple, seed, count, half_width, tol))


def det22_report(triple, seed=0, count=200, half_width=2.0, tol=1e-7):
    """Determinant-criterion residual report as a dict."""
    return json.loads(_trife.det22_report(triple, seed, count, half_width, tol))


def run_cli(*args):
    """Run a CLI subcommand in process. Returns (exit_code, stdout, stderr)."""
    return _run_cli([str(a) for a in args])


__all__ = [
    "PhiChain",
    "PoleError",
    "SolutionTriple",
    "TrifeError",
    "Weierstrass",
    "det22_report",
    "elliptic_solution",
    "entire_solution",
    "fe14_report",
    "family_from_json",
    "run_cli",
]
