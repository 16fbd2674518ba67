"""Python access to the qloop C++ core."""

import json as _json

from ._qloop import (
    ConfigError,
    LoopModule,
    Scalar,
    TorsionTriple,
    f_to_torsion,
    fundamental_evaluation,
    suite_names,
    tensor,
    torsion_to_f,
)
from ._qloop import run_suite as _run_suite


def run_suite(suite, **config):
    """Run a report suite and return the decoded report."""
    return _json.loads(_run_suite(suite, config))


def passed(report):
    return all(c["status"] == "pass" for c in report["checks"])


__all__ = [
    "ConfigError",
    "LoopModule",
    "Scalar",
    "TorsionTriple",
    "f_to_torsion",
    "fundamental_evaluation",
    "passed",
    "run_suite",
    "suite_names",
    "tensor",
    "torsion_to_f",
]
