"""Densities of group languages in shift spaces."""

import json
from typing import Any, Mapping, Optional, Union

from ._core import SchemaError, SemanticError, SkewdensError
from ._core import normalize as _normalize
from ._core import run as _run

__all__ = [
    "COMMANDS",
    "SchemaError",
    "SemanticError",
    "SkewdensError",
    "density",
    "parse",
    "run",
]

COMMANDS = (
    "density",
    "minimality",
    "cobounding",
    "bifix",
    "irreducibility",
    "sequence",
    "probe-fibonacci",
    "demo-contfrac",
    "report",
)

Spec = Union[str, Mapping[str, Any]]


def _text(spec: Optional[Spec]) -> Optional[str]:
    if spec is None or isinstance(spec, str):
        return spec
    return json.dumps(spec)


def run(
    command: str,
    spec: Optional[Spec] = None,
    *,
    horizon: Optional[int] = None,
    max_cylinder: Optional[int] = None,
    cap: Optional[int] = None,
) -> dict:
    """Run one command on a problem spec (dict or JSON text) and return the report."""
    return json.loads(_run(command, _text(spec), horizon, max_cylinder, cap))


def parse(spec: Spec) -> dict:
    """Validate a spec and return it normalized."""
    return json.loads(_normalize(_text(spec)))


def density(spec: Spec, *, horizon: Optional[int] = None) -> dict:
    """Exact and Cesàro densities for the query in a problem spec."""
    return run("density", spec, horizon=horizon)["results"]
