"""Shared fixtures data and small brute-force helpers for the test suite."""

from __future__ import annotations

import itertools
from functools import lru_cache

from mecenum.graph import PDG, is_acyclic, v_structures
from mecenum.instances import GenConfig, cpdag_to_pdag, dag_to_cpdag, random_chordal, random_dag

A, B, C, D, E, F, G = range(7)

# seven-vertex CPDAG and the six DAGs of its class, transcribed edge by edge
CP7_ARCS = [(B, D), (D, A), (G, D), (D, C), (D, F)]
CP7 = PDG(7, CP7_ARCS, [(A, C), (C, F), (B, E)])
CP7_DAGS = frozenset(
    PDG(7, CP7_ARCS + rest)
    for rest in (
        [(A, C), (C, F), (B, E)],
        [(C, F), (C, A), (B, E)],
        [(F, C), (C, A), (B, E)],
        [(A, C), (C, F), (E, B)],
        [(C, F), (C, A), (E, B)],
        [(F, C), (C, A), (E, B)],
    )
)

# chordal graph on a..g with 10 edges; UG7_AMO orients it along a..g, one of its AMOs
UG7_EDGES = [(A, B), (A, C), (A, D), (A, E), (A, F), (B, C), (C, D), (E, F), (E, G), (F, G)]
UG7 = PDG(7, (), UG7_EDGES)
UG7_AMO = PDG(7, UG7_EDGES)

# MPDAG with buckets {a,b,d,e} and {c,f}
MP6 = PDG(6, [(A, E), (E, C), (E, F)], [(A, B), (B, E), (E, D), (D, A), (C, F)])

# tree CPDAG, centre g with five arms of length two (a..k = 0..10)
STAR = PDG(11, (), [(0, 1), (1, 6), (6, 2), (2, 3), (6, 5), (5, 4), (6, 7), (7, 8), (6, 10), (10, 9)])


def brute_chordal(g: PDG) -> bool:
    """No induced cycle of length >= 4, by scanning every vertex subset."""
    n = g.n
    for size in range(4, n + 1):
        for sub in itertools.combinations(range(n), size):
            s = set(sub)
            deg = {v: sum(1 for w in g.adjacent(v) if w in s) for v in sub}
            if any(d != 2 for d in deg.values()):
                continue
            # 2-regular: a single cycle iff connected
            seen, stack = {sub[0]}, [sub[0]]
            while stack:
                u = stack.pop()
                for w in g.adjacent(u):
                    if w in s and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == size:
                return False
    return True


def is_connected(g: PDG) -> bool:
    if g.n == 0:
        return True
    seen, stack = {0}, [0]
    while stack:
        u = stack.pop()
        for w in g.adjacent(u):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def brute_amos(g: PDG) -> set[PDG]:
    """AMOs of an undirected graph straight from the definition, via all
    vertex orderings (every acyclic orientation comes from some ordering)."""
    out = set()
    und = g.undirected_edges()
    for perm in itertools.permutations(range(g.n)):
        pos = {v: i for i, v in enumerate(perm)}
        d = PDG(g.n, [(u, v) if pos[u] < pos[v] else (v, u) for u, v in und])
        if not v_structures(d):
            out.add(d)
    return out


@lru_cache(maxsize=None)
def connected_chordal_graphs(max_n: int = 5) -> tuple[PDG, ...]:
    """Every connected chordal graph on labelled vertices 1..max_n."""
    out = []
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = PDG(n, (), [p for i, p in enumerate(pairs) if mask >> i & 1])
            if is_connected(g) and brute_chordal(g):
                out.append(g)
    return tuple(out)


def all_dags(n: int):
    """Every labelled DAG on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        arcs = []
        for (u, v), c in zip(pairs, choice):
            if c == 1:
                arcs.append((u, v))
            elif c == 2:
                arcs.append((v, u))
        g = PDG(n, arcs)
        if is_acyclic(g):
            yield g


def uccg_corpus(count: int = 200, base: int = 0):
    for s in range(base, base + count):
        n = 3 + s % 5
        k = 1 + (s // 5) % 3
        yield f"uccg-s{s}", random_chordal(GenConfig(n=n, k=k, seed=s))


def cpdag_corpus(count: int = 200, base: int = 0):
    for s in range(base, base + count):
        n = 3 + s % 5
        model = ("dag_uniform", "dag_ba")[s % 2]
        k = 1 + (s // 10) % 2
        yield f"cpdag-s{s}", dag_to_cpdag(random_dag(GenConfig(n=n, k=k, model=model, seed=s)))


def pdag_corpus(count: int = 200, base: int = 0):
    """PDAGs with one to three background edges; CPDAGs without undirected
    edges are skipped in favour of the next seed."""
    s = base
    made = 0
    while made < count:
        n = 4 + s % 4
        cfg = GenConfig(n=n, k=1 + s % 2, model=("dag_uniform", "dag_ba")[(s // 4) % 2], seed=s, bg_edges=(1, 3))
        cp = dag_to_cpdag(random_dag(cfg))
        s += 1
        if not cp.undirected_edges():
            continue
        made += 1
        yield f"pdag-s{s - 1}", cpdag_to_pdag(cp, cfg)


def corpus():
    yield from uccg_corpus()
    yield from cpdag_corpus()
    yield from pdag_corpus()
