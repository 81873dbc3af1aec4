"""Meek rules, maximal orientation, buckets and MPDAG/PDAG extension."""

from __future__ import annotations

from dataclasses import dataclass

from .chordal import MCSState, is_amo_ordering, is_chordal
from .errors import GraphError, NoAdmissibleVertex, NotExtendable
from .graph import PDG, induced_subgraph, is_acyclic, skeleton, undirected_components, v_structures


class MixedGraph:
    """Mutable scratch copy of a PDAG used while orienting edges."""

    __slots__ = ("n", "pa", "ch", "un")

    def __init__(self, n: int, pa: list[set[int]], ch: list[set[int]], un: list[set[int]]):
        self.n = n
        self.pa = pa
        self.ch = ch
        self.un = un

    @classmethod
    def from_graph(cls, g: PDG) -> "MixedGraph":
        return cls(
            g.n,
            [set(p) for p in g.directed_in],
            [set(c) for c in g.directed_out],
            [set(u) for u in g.undirected],
        )

    def copy(self) -> "MixedGraph":
        return MixedGraph(
            self.n,
            [set(p) for p in self.pa],
            [set(c) for c in self.ch],
            [set(u) for u in self.un],
        )

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.un[u] or v in self.ch[u] or v in self.pa[u]

    def orient(self, u: int, v: int) -> None:
        """Turn the undirected edge u -- v into u -> v."""
        self.un[u].discard(v)
        self.un[v].discard(u)
        self.ch[u].add(v)
        self.pa[v].add(u)

    def undirected_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.un[u]) if u < v]

    def first_undirected(self) -> tuple[int, int] | None:
        for u in range(self.n):
            later = [v for v in self.un[u] if v > u]
            if later:
                return u, min(later)
        return None

    def to_graph(self) -> PDG:
        directed = [(u, v) for u in range(self.n) for v in self.ch[u]]
        return PDG._trusted(self.n, directed, self.undirected_edges())

    def _forced(self, a: int, b: int) -> bool:
        """Does any Meek rule orient the undirected edge a -- b as a -> b?"""
        pa, un = self.pa, self.un
        # R1: c -> a -- b, c and b non-adjacent
        for c in pa[a]:
            if not self.adjacent(c, b):
                return True
        pa_b = pa[b]
        # R2: a -> c -> b
        if not self.ch[a].isdisjoint(pa_b):
            return True
        common = [c for c in un[a] if c in pa_b]
        # R3: a -- c -> b, a -- d -> b, c and d non-adjacent
        for i, c in enumerate(common):
            for d in common[i + 1 :]:
                if not self.adjacent(c, d):
                    return True
        # R4: a -- d -> c -> b, a -- c, d and b non-adjacent
        for c in common:
            for d in pa[c]:
                if d in un[a] and not self.adjacent(d, b):
                    return True
        return False

    def _sweep(self) -> bool:
        """Orient the first edge (in (min, max) order) some rule forces."""
        for a in range(self.n):
            for b in sorted(self.un[a]):
                if b < a:
                    continue
                if self._forced(a, b):
                    self.orient(a, b)
                    return True
                if self._forced(b, a):
                    self.orient(b, a)
                    return True
        return False

    def close(self) -> None:
        """Apply R1-R4, restarting the sweep after every orientation, until
        a full sweep fires nothing."""
        while self._sweep():
            pass


def apply_meek_rules(g: PDG) -> PDG:
    """Fixed point of the four Meek rules."""
    if not is_acyclic(g):
        raise GraphError("directed cycle in input")
    h = MixedGraph.from_graph(g)
    h.close()
    return h.to_graph()


@dataclass(frozen=True)
class Bucket:
    """Induced subgraph over one undirected component of an MPDAG.

    ``graph`` uses local ids; ``vertices[i]`` is the parent id of local ``i``.
    """

    vertices: tuple[int, ...]
    graph: PDG
    relabel: dict

    def lift(self, local_edges):
        vs = self.vertices
        return [(vs[u], vs[v]) for u, v in local_edges]


def buckets(g: PDG) -> list[Bucket]:
    out = []
    for comp in undirected_components(g):
        if len(comp) < 2:
            continue
        sub, relabel = induced_subgraph(g, comp)
        out.append(Bucket(tuple(comp), sub, relabel))
    return out


def is_extendable(g: PDG) -> bool:
    return all(is_chordal(skeleton(b.graph)) for b in buckets(g))


def restricted_mcs(bg: PDG) -> list[int]:
    """MCS over the skeleton of a bucket visiting only vertices whose
    parents inside the bucket are already visited."""
    n = bg.n
    nbrs = [sorted(bg.adjacent(v)) for v in range(n)]
    pcount = [len(p) for p in bg.directed_in]
    st = MCSState(n, split=True, blocked=[c > 0 for c in pcount])
    sets, label, visited, tau = st.sets, st.label, st.visited, st.tau
    i = 0
    while len(tau) < n:
        while not sets[2 * i] and not sets[2 * i + 1]:
            i -= 1
        s = sets[2 * i]
        if not s:
            raise NoAdmissibleVertex(f"no admissible vertex at label {i}")
        v = s[-1]
        st.remove(v)
        visited[v] = True
        tau.append(v)
        kids = bg.directed_out[v]
        for w in nbrs[v]:
            if visited[w]:
                continue
            st.remove(w)
            lw = label[w] + 1
            label[w] = lw
            if w in kids:
                pcount[w] -= 1
            st.insert(w, 2 * lw + (pcount[w] > 0))
            if lw > i:
                i = lw
    return tau


def consistent_extension_mpdag(g: PDG) -> PDG:
    """A consistent extension of an MPDAG, one restricted MCS per bucket."""
    directed = g.directed_edges()
    for b in buckets(g):
        bg = b.graph
        tau = restricted_mcs(bg)
        if not is_amo_ordering([sorted(bg.adjacent(v)) for v in range(bg.n)], tau):
            raise NotExtendable("bucket skeleton is not chordal")
        pos = [0] * bg.n
        for k, v in enumerate(tau):
            pos[v] = k
        directed += b.lift((u, v) if pos[u] < pos[v] else (v, u) for u, v in bg.undirected_edges())
    return PDG._trusted(g.n, directed, ())


def maximal_orientation(g: PDG) -> PDG:
    """Meek closure of a PDAG, verified to have a consistent extension.

    Raises NotExtendable otherwise.
    """
    if not is_acyclic(g):
        raise NotExtendable("directed cycle in input")
    h = MixedGraph.from_graph(g)
    h.close()
    closed = h.to_graph()
    if not is_acyclic(closed):
        raise NotExtendable("Meek closure produced a directed cycle")
    if not is_extendable(closed):
        raise NotExtendable("a bucket skeleton is not chordal")
    ext = consistent_extension_mpdag(closed)
    if not is_acyclic(ext) or v_structures(ext) != v_structures(g):
        raise NotExtendable("extension check failed")
    return closed
