"""Maximum Cardinality Search, chordality, AMO checks and CPDAG extension."""

from __future__ import annotations

import random
from typing import Sequence

from .errors import GraphError, NotChordal
from .graph import PDG, is_acyclic, orient_by_ordering, skeleton, v_structures


class MCSState:
    """Label bins of an MCS run.

    ``sets[b]`` holds the unvisited vertices of bin ``b``; with ``split=False``
    the bin is the label (number of visited neighbours), with ``split=True``
    bin ``2*label + 1`` holds vertices that still have an unvisited parent and
    ``2*label`` the admissible ones. Bins are arrays with swap-remove, so
    moving a vertex between bins is O(1).
    """

    __slots__ = ("n", "split", "sets", "pos", "label", "where", "tau", "visited", "max_label")

    def __init__(self, n: int, split: bool = False, blocked: Sequence[bool] | None = None):
        self.n = n
        self.split = split
        self.sets: list[list[int]] = [[] for _ in range((2 if split else 1) * (n + 1))]
        self.pos = [0] * n
        self.label = [0] * n
        self.where = [0] * n
        self.tau: list[int] = []
        self.visited = [False] * n
        self.max_label = 0
        for v in range(n):
            self.insert(v, 1 if split and blocked and blocked[v] else 0)

    def insert(self, v: int, b: int) -> None:
        s = self.sets[b]
        self.pos[v] = len(s)
        self.where[v] = b
        s.append(v)

    def remove(self, v: int) -> None:
        s = self.sets[self.where[v]]
        last = s.pop()
        if last != v:
            p = self.pos[v]
            s[p] = last
            self.pos[last] = p

    def label_sets(self) -> list[frozenset[int]]:
        """A[i] for every label i (both halves merged when split)."""
        if not self.split:
            return [frozenset(s) for s in self.sets]
        return [
            frozenset(self.sets[2 * i]) | frozenset(self.sets[2 * i + 1])
            for i in range(self.n + 1)
        ]

    def snapshot(self) -> tuple:
        return (tuple(self.label_sets()), tuple(self.label), tuple(self.tau), self.max_label)


def _undirected_only(g: PDG) -> None:
    if any(g.directed_out):
        raise GraphError("expected an undirected graph, found directed edges")


def mcs(
    g: PDG,
    tie_break: str = "lowest",
    seed: int | None = None,
    start: int | None = None,
) -> list[int]:
    """Maximum Cardinality Search order of an undirected graph.

    ``tie_break`` picks among the highest-label vertices: ``"lowest"`` takes
    the smallest id, ``"seeded"`` a uniform choice driven by ``seed``, and
    ``"any"`` the O(1) bin tail (used where only linear time matters).
    Disconnected graphs are traversed component by component.
    """
    _undirected_only(g)
    if tie_break not in ("lowest", "seeded", "any"):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    st = MCSState(g.n)
    sets, label, visited, tau = st.sets, st.label, st.visited, st.tau
    nbrs = g.undirected
    rng = random.Random(seed)
    i = 0
    while len(tau) < g.n:
        while not sets[i]:
            i -= 1
        s = sets[i]
        if start is not None and not tau:
            v = start
        elif tie_break == "lowest":
            v = min(s)
        elif tie_break == "seeded":
            v = s[rng.randrange(len(s))]
        else:
            v = s[-1]
        st.remove(v)
        visited[v] = True
        tau.append(v)
        for w in nbrs[v]:
            if not visited[w]:
                st.remove(w)
                lw = label[w] + 1
                label[w] = lw
                st.insert(w, lw)
                if lw > i:
                    i = lw
    return tau


def is_amo_ordering(nbrs: Sequence[Sequence[int]], order: Sequence[int]) -> bool:
    """True iff orienting along ``order`` creates no v-structure.

    Each vertex's earlier neighbours must form a clique; checking them against
    the latest earlier neighbour suffices (Tarjan-Yannakakis).
    """
    n = len(nbrs)
    pos = [-1] * n
    for i, v in enumerate(order):
        pos[v] = i
    adj = [set(a) for a in nbrs]
    for v in order:
        pv = pos[v]
        earlier = [w for w in nbrs[v] if 0 <= pos[w] < pv]
        if len(earlier) < 2:
            continue
        p = max(earlier, key=pos.__getitem__)
        ap = adj[p]
        for w in earlier:
            if w != p and w not in ap:
                return False
    return True


def is_chordal(g: PDG) -> bool:
    _undirected_only(g)
    return is_amo_ordering(g.undirected, mcs(g, "any"))


def is_amo(g: PDG, d: PDG) -> bool:
    """True iff the all-directed ``d`` is an acyclic moral orientation of ``g``."""
    if skeleton(d) != skeleton(g) or any(d.undirected):
        raise GraphError("d is not an orientation of g")
    return is_acyclic(d) and not v_structures(d)


def consistent_extension_cpdag(g: PDG) -> PDG:
    """A DAG in the class of CPDAG ``g``: one MCS over its undirected part."""
    und = PDG._trusted(g.n, (), g.undirected_edges())
    tau = mcs(und, "any")
    if not is_amo_ordering(und.undirected, tau):
        raise NotChordal("an undirected component is not chordal")
    return orient_by_ordering(g, tau)
