"""Chase termination analysis for TGD/EGD constraint sets.

Inputs are constraint and instance texts in the same syntax the `chaselab` command
line tool reads; results come back as plain Python data.
"""

import json

from . import _core
from ._core import ParseError

__all__ = [
    "ParseError",
    "normalize",
    "normalize_instance",
    "classify",
    "chase",
    "chase_graph",
    "terminating_order",
    "verdict",
]


def normalize(constraints: str) -> str:
    return _core.normalize(constraints)


def normalize_instance(instance: str) -> str:
    return _core.normalize_instance(instance)


def classify(constraints: str, max_k: int = 3) -> dict:
    return json.loads(_core.classify(constraints, max_k))


def chase(constraints: str, instance: str, policy: str = "round-robin", budget: int = 10000,
          monitor_k: int | None = None, oblivious: bool = False) -> dict:
    return json.loads(_core.chase(constraints, instance, policy, budget, monitor_k, oblivious))


def chase_graph(constraints: str, oblivious: bool = False) -> dict:
    return json.loads(_core.chase_graph(constraints, oblivious))


def terminating_order(constraints: str) -> list[list[str]] | None:
    return _core.terminating_order(constraints)


def verdict(constraints: str, instance: str, max_k: int = 3, standard_graph: bool = False) -> dict:
    status, irrelevant, level = _core.verdict(constraints, instance, max_k, standard_graph)
    return {"verdict": status, "irrelevant": irrelevant, "level": level}
