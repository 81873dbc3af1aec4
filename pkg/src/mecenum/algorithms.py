"""Name -> enumerator registry shared by the CLI and the benchmark harness."""

from __future__ import annotations

from typing import Callable, Iterator

from .baselines import iter_chickering, iter_meek, iter_shd3
from .graph import PDG
from .mcs_enum import iter_pdag

ALGORITHMS: dict[str, Callable[[PDG], Iterator]] = {
    "mcs": iter_pdag,
    "meek": iter_meek,
    "chickering": iter_chickering,
    "shd3": iter_shd3,
}


def get(name: str) -> Callable[[PDG], Iterator]:
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None
