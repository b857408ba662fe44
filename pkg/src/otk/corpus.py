"""Built-in example configurations.

Every entry is unimodular, has no co-loops and comes with a theta for which
the hyperplane arrangement is simple, so every check in the pipeline applies.
"""

from __future__ import annotations

from typing import Dict, List

from .errors import UsageError
from .matroid import VectorConfig

_CORPUS: Dict[str, VectorConfig] = {
    # T*P^1: two opposite vectors on a line
    "tp1": VectorConfig(1, ((1,), (-1,)), (0, -1), name="tp1"),
    # the A_2 arrangement: one circuit of size three
    "triangle": VectorConfig(2, ((1, 0), (0, 1), (1, 1)), (0, 0, 1), name="triangle"),
    # rank two with a parallel pair: circuits {1,4}, {1,2,3}, {2,3,4}
    "four": VectorConfig(2, ((1, 0), (0, 1), (1, 1), (-1, 0)), (0, 0, 1, 1), name="four"),
    # graphic arrangement of K4 minus an edge
    "k4minus": VectorConfig(
        3, ((1, 0, 0), (0, 1, 0), (1, -1, 0), (1, 0, -1), (0, 1, -1)), (0, 0, 1, 0, 1), name="k4minus"
    ),
    # graphic arrangement of K4
    "k4": VectorConfig(
        3,
        ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)),
        (0, 0, 0, 1, 2, 3),
        name="k4",
    ),
}


def names() -> List[str]:
    return list(_CORPUS)


def get(name: str) -> VectorConfig:
    try:
        return _CORPUS[name]
    except KeyError:
        raise UsageError(f"unknown example {name!r}; choose from {', '.join(_CORPUS)}") from None


def all_configs() -> List[VectorConfig]:
    return list(_CORPUS.values())
