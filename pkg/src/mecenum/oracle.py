"""Brute-force ground truth for small graphs.

Every orientation of the free edges is tried at once, chunked, as a numpy
batch. Each orientation stores one parent bitmask per vertex; v-structures
are counted with popcounts and acyclicity is checked by peeling sources.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import GraphError, TooLarge
from .graph import PDG, is_acyclic, skeleton, v_structures

GUARD = 25
MAX_VERTICES = 63
CHUNK = 1 << 16


def _orientations(n, fixed, free, targets):
    """Acyclic orientations of ``free`` (with ``fixed`` arcs kept) whose
    v-structure set is exactly ``targets``."""
    k = len(free)
    if k > GUARD:
        raise TooLarge(f"{k} free edges exceeds the oracle guard of {GUARD}")
    if n > MAX_VERTICES:
        raise TooLarge(f"oracle handles at most {MAX_VERTICES} vertices")
    if n == 0:
        return {PDG(0)}
    one = np.int64(1)
    base = np.zeros(n, dtype=np.int64)
    adj = [0] * n
    for u, v in fixed:
        base[v] |= one << u
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    for u, v in free:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    full = (1 << n) - 1
    nonadj = [np.int64(full & ~adj[i] & ~(1 << i)) for i in range(n)]
    want = len(targets)
    found = []
    total = 1 << k
    for lo in range(0, total, CHUNK):
        idx = np.arange(lo, min(total, lo + CHUNK), dtype=np.int64)
        # pa[c] is the parent bitmask of vertex c across the whole chunk
        pa = [np.full(len(idx), base[c], dtype=np.int64) for c in range(n)]
        for e, (u, v) in enumerate(free):
            b = (idx >> e) & 1
            pa[v] |= b << u
            pa[u] |= (1 - b) << v
        keep = np.ones(len(idx), dtype=bool)
        for u, c, v in targets:
            keep &= ((pa[c] >> u) & (pa[c] >> v) & 1) == 1
        pa = [p[keep] for p in pa]
        # every non-adjacent parent pair is a v-structure (counted twice);
        # partial counts only grow, so rows over budget are dropped early
        cnt = np.zeros(len(pa[0]), dtype=np.int64)
        for c in range(n):
            p = pa[c]
            for i in range(n):
                if nonadj[i]:
                    cnt += ((p >> i) & 1) * np.bitwise_count(p & nonadj[i])
            live = cnt <= 2 * want
            if not live.all():
                pa = [q[live] for q in pa]
                cnt = cnt[live]
        good = cnt == 2 * want
        pa = [p[good] for p in pa]
        alive = np.full(len(pa[0]), full, dtype=np.int64)
        for _ in range(n):
            gone = np.zeros(len(alive), dtype=np.int64)
            for c in range(n):
                gone |= ((pa[c] & alive) == 0).astype(np.int64) << c
            alive &= ~gone
        done = alive == 0
        found.extend(zip(*(p[done].tolist() for p in pa)))
    out = set()
    for row in found:
        directed = [(u, c) for c in range(n) for u in range(n) if row[c] >> u & 1]
        out.add(PDG._trusted(n, directed, ()))
    return out


def brute_force_extensions(g: PDG) -> set[PDG]:
    """All consistent extensions of ``g`` by exhaustive orientation."""
    if not is_acyclic(g):
        return set()
    return _orientations(g.n, g.directed_edges(), g.undirected_edges(), sorted(v_structures(g)))


def brute_force_mec(d: PDG) -> set[PDG]:
    """Every DAG Markov equivalent to ``d``."""
    if any(d.undirected) or not is_acyclic(d):
        raise GraphError("brute_force_mec needs a DAG")
    return _orientations(d.n, (), skeleton(d).undirected_edges(), sorted(v_structures(d)))


def union_graph(dags: Iterable[PDG], n: int) -> PDG:
    """Edges directed in every DAG stay directed, the rest become undirected."""
    seen: dict[tuple[int, int], set] = {}
    for d in dags:
        for u, v in d.directed_edges():
            seen.setdefault((min(u, v), max(u, v)), set()).add((u, v))
    directed, undirected = [], []
    for e, dirs in sorted(seen.items()):
        if len(dirs) == 1:
            directed.append(next(iter(dirs)))
        else:
            undirected.append(e)
    return PDG._trusted(n, directed, undirected)


def mec_size(d: PDG) -> int:
    from .instances import dag_to_cpdag

    return len(brute_force_extensions(dag_to_cpdag(d)))


@dataclass
class ValidationReport:
    expected_count: int
    actual_count: int
    duplicates: list = field(default_factory=list)
    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            not self.duplicates
            and not self.missing
            and not self.extra
            and self.expected_count == self.actual_count
        )


def validate_enumeration(g: PDG, outputs: Iterable) -> ValidationReport:
    """Compare a stream of DAGs (or enumeration members) with the oracle."""
    expected = brute_force_extensions(g)
    counts = Counter(o.to_graph() for o in outputs)
    return ValidationReport(
        expected_count=len(expected),
        actual_count=sum(counts.values()),
        duplicates=sorted((d for d, c in counts.items() if c > 1), key=PDG.key),
        missing=sorted(expected - counts.keys(), key=PDG.key),
        extra=sorted(counts.keys() - expected, key=PDG.key),
    )
