"""Random instance generators and DAG -> CPDAG -> PDAG converters.

All randomness comes from ``random.Random`` (Mersenne Twister MT19937),
seeded per instance, so a (config, seed) pair reproduces bit-exactly on any
platform.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass

from .errors import GraphError, NotExtendable
from .graph import PDG, is_acyclic, skeleton, v_structures
from .meek import MixedGraph, maximal_orientation

MODELS = ("chordal", "dag_uniform", "dag_ba")


@dataclass(frozen=True)
class GenConfig:
    """Generator settings. ``k`` may be a number or ``"log2"`` (rounded log2 n)."""

    n: int
    k: float | str = 3
    model: str = "chordal"
    seed: int = 0
    bg_edges: tuple[int, int] = (3, 7)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        lo, hi = self.bg_edges
        if lo > hi or lo < 0:
            raise ValueError(f"empty background-edge range {self.bg_edges}")
        if self.density < 1 and self.n > 1:
            raise ValueError("k must be at least 1")

    @property
    def density(self) -> float:
        if self.k == "log2":
            return float(round(math.log2(self.n))) if self.n > 1 else 1.0
        return float(self.k)

    @property
    def target_edges(self) -> int:
        return min(round(self.density * self.n), self.n * (self.n - 1) // 2)


def _prufer_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    if n < 2:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def keeps_chordal(nbrs: list[set[int]], u: int, v: int) -> bool:
    """Would adding u -- v to the chordal graph ``nbrs`` keep it chordal?

    True iff the common neighbours of u and v separate them: otherwise a
    shortest u-v path avoiding them closes a chordless cycle of length >= 4.
    """
    seen = nbrs[u] & nbrs[v]
    seen.add(u)
    stack = [u]
    while stack:
        x = stack.pop()
        for w in nbrs[x]:
            if w == v:
                return False
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return True


def random_chordal(cfg: GenConfig) -> PDG:
    """Uniform labeled tree plus rejection-sampled chordality-preserving edges.

    Candidate pairs are drawn uniformly; absent pairs whose insertion would
    break chordality are rejected and redrawn.
    """
    rng = random.Random(cfg.seed)
    n = cfg.n
    nbrs: list[set[int]] = [set() for _ in range(n)]
    m = 0
    for u, v in _prufer_tree(n, rng):
        nbrs[u].add(v)
        nbrs[v].add(u)
        m += 1
    target = cfg.target_edges
    while m < target:
        u, v = rng.sample(range(n), 2)
        if v in nbrs[u]:
            continue
        # the graph is connected, so without a common neighbour the
        # insertion always closes a chordless cycle
        if nbrs[u].isdisjoint(nbrs[v]) or not keeps_chordal(nbrs, u, v):
            continue
        nbrs[u].add(v)
        nbrs[v].add(u)
        m += 1
    return PDG._trusted(n, (), [(u, v) for u in range(n) for v in sorted(nbrs[u]) if u < v])


def _uniform_dag(cfg: GenConfig, rng: random.Random) -> PDG:
    n = cfg.n
    target = cfg.target_edges
    g_out: list[set] = [set() for _ in range(n)]
    present: set = set()

    def reaches(src, dst):
        stack, seen = [src], {src}
        while stack:
            u = stack.pop()
            if u == dst:
                return True
            for w in g_out[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    while len(present) < target:
        u, v = rng.sample(range(n), 2)
        if (min(u, v), max(u, v)) in present:
            continue
        if reaches(v, u):
            u, v = v, u  # the other direction is always acyclic
        g_out[u].add(v)
        present.add((min(u, v), max(u, v)))
    return PDG._trusted(n, [(u, v) for u in range(n) for v in g_out[u]], ())


def _ba_dag(cfg: GenConfig, rng: random.Random) -> PDG:
    """Preferential attachment with ``round(k)`` links per new vertex,
    oriented along a random permutation."""
    n = cfg.n
    attach = max(1, round(cfg.density))
    present: set = set()
    targets: list[int] = []  # vertex repeated once per incident edge
    core = min(n, attach + 1)
    for u in range(core):
        for v in range(u + 1, core):
            present.add((u, v))
            targets += (u, v)
    for v in range(core, n):
        chosen: set = set()
        while len(chosen) < min(attach, v):
            w = rng.choice(targets) if targets else rng.randrange(v)
            chosen.add(w)
        for w in chosen:
            present.add((min(w, v), max(w, v)))
            targets += (w, v)
    perm = list(range(n))
    rng.shuffle(perm)
    rank = {v: i for i, v in enumerate(perm)}
    directed = [(u, v) if rank[u] < rank[v] else (v, u) for u, v in sorted(present)]
    return PDG._trusted(n, directed, ())


def random_dag(cfg: GenConfig) -> PDG:
    rng = random.Random(cfg.seed)
    if cfg.model == "dag_uniform":
        return _uniform_dag(cfg, rng)
    if cfg.model == "dag_ba":
        return _ba_dag(cfg, rng)
    raise ValueError(f"random_dag needs a DAG model, got {cfg.model!r}")


def generate(cfg: GenConfig) -> PDG:
    return random_chordal(cfg) if cfg.model == "chordal" else random_dag(cfg)


def dag_to_cpdag(d: PDG) -> PDG:
    """Skeleton with v-structure arcs directed, closed under the Meek rules."""
    if any(d.undirected) or not is_acyclic(d):
        raise GraphError("dag_to_cpdag needs a DAG")
    arcs = set()
    for u, c, v in v_structures(d):
        arcs.add((u, c))
        arcs.add((v, c))
    und = [e for e in skeleton(d).undirected_edges() if e not in arcs and e[::-1] not in arcs]
    h = MixedGraph.from_graph(PDG._trusted(d.n, sorted(arcs), und))
    h.close()
    return h.to_graph()


def cpdag_to_pdag(g: PDG, cfg: GenConfig, r: int | None = None) -> PDG:
    """Orient ``r`` random undirected edges (``r`` drawn from ``cfg.bg_edges``
    by default), closing under the Meek rules after each one."""
    rng = random.Random(cfg.seed ^ 0x5DEECE66D)
    if r is None:
        r = rng.randint(*cfg.bg_edges)
    h = MixedGraph.from_graph(g)
    for _ in range(r):
        und = h.undirected_edges()
        if not und:
            break
        u, v = rng.choice(und)
        first = (u, v) if rng.random() < 0.5 else (v, u)
        for a, b in (first, first[::-1]):
            trial = h.copy()
            trial.orient(a, b)
            trial.close()
            tg = trial.to_graph()
            try:
                maximal_orientation(tg)
            except NotExtendable:
                continue
            if v_structures(tg) == v_structures(g):
                h = trial
                break
    return h.to_graph()


def header(cfg: GenConfig) -> str:
    return f"# seed={cfg.seed} model={cfg.model} n={cfg.n} k={cfg.k}"
