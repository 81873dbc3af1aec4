"""Partially directed graphs and the structural predicates built on them.

One container covers DAGs, CPDAGs, MPDAGs and PDAGs. Vertices are dense
0-based integers; any naming happens at the I/O boundary.
"""

from __future__ import annotations

import enum
import io
from collections import deque
from typing import Iterable, Iterator, Sequence, TextIO

from .errors import GraphError, GraphFormatError


class EdgeKind(enum.IntEnum):
    DIRECTED = 0
    UNDIRECTED = 1

    @property
    def symbol(self) -> str:
        return "->" if self is EdgeKind.DIRECTED else "--"


class PartiallyDirectedGraph:
    """Immutable graph with directed (u -> v) and undirected (u -- v) edges.

    Adjacency lists are sorted tuples. ``adjacent`` holds one frozenset per
    vertex so pair-adjacency tests are O(1).
    """

    __slots__ = ("n", "directed_out", "directed_in", "undirected", "_adj", "_hash")

    def __init__(
        self,
        n: int,
        directed: Iterable[tuple[int, int]] = (),
        undirected: Iterable[tuple[int, int]] = (),
    ):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        out: list[set[int]] = [set() for _ in range(n)]
        inc: list[set[int]] = [set() for _ in range(n)]
        und: list[set[int]] = [set() for _ in range(n)]
        adj: list[set[int]] = [set() for _ in range(n)]

        def check(u: int, v: int) -> None:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if v in adj[u]:
                raise GraphError(f"parallel edge between {u} and {v}")

        for u, v in directed:
            check(u, v)
            out[u].add(v)
            inc[v].add(u)
            adj[u].add(v)
            adj[v].add(u)
        for u, v in undirected:
            check(u, v)
            und[u].add(v)
            und[v].add(u)
            adj[u].add(v)
            adj[v].add(u)
        self._init(n, out, inc, und, adj)

    def _init(self, n, out, inc, und, adj) -> None:
        self.n = n
        self.directed_out = tuple(tuple(sorted(s)) for s in out)
        self.directed_in = tuple(tuple(sorted(s)) for s in inc)
        self.undirected = tuple(tuple(sorted(s)) for s in und)
        self._adj = tuple(frozenset(s) for s in adj)
        self._hash = None

    @classmethod
    def _trusted(cls, n: int, directed, undirected) -> "PartiallyDirectedGraph":
        # Caller guarantees a well-formed edge set; skips the per-edge checks.
        g = cls.__new__(cls)
        out: list[list[int]] = [[] for _ in range(n)]
        inc: list[list[int]] = [[] for _ in range(n)]
        und: list[list[int]] = [[] for _ in range(n)]
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in directed:
            out[u].append(v)
            inc[v].append(u)
            adj[u].append(v)
            adj[v].append(u)
        for u, v in undirected:
            und[u].append(v)
            und[v].append(u)
            adj[u].append(v)
            adj[v].append(u)
        g._init(n, out, inc, und, adj)
        return g

    @property
    def m(self) -> int:
        return sum(map(len, self.directed_out)) + sum(map(len, self.undirected)) // 2

    def directed_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.directed_out[u]]

    def undirected_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.undirected[u] if u < v]

    def edges(self) -> list[tuple[int, int, EdgeKind]]:
        """All edges in canonical (min endpoint, max endpoint, kind) order."""
        es = [(u, v, EdgeKind.DIRECTED) for u, v in self.directed_edges()]
        es += [(u, v, EdgeKind.UNDIRECTED) for u, v in self.undirected_edges()]
        es.sort(key=lambda e: (min(e[0], e[1]), max(e[0], e[1]), e[2]))
        return es

    def parents(self, v: int) -> tuple[int, ...]:
        return self.directed_in[v]

    def children(self, v: int) -> tuple[int, ...]:
        return self.directed_out[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Undirected neighbours of ``v``."""
        return self.undirected[v]

    def adjacent(self, v: int) -> frozenset[int]:
        """Vertices joined to ``v`` by an edge of either kind."""
        return self._adj[v]

    def is_adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def has_directed(self, u: int, v: int) -> bool:
        return v in self._adj[u] and u in self.directed_in[v]

    def has_undirected(self, u: int, v: int) -> bool:
        return v in self._adj[u] and u in self.undirected[v]

    def is_dag(self) -> bool:
        return not any(self.undirected) and is_acyclic(self)

    def key(self) -> tuple:
        return (self.n, tuple(self.directed_edges()), tuple(self.undirected_edges()))

    def to_graph(self) -> "PartiallyDirectedGraph":
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartiallyDirectedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.directed_out == other.directed_out
            and self.undirected == other.undirected
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self) -> str:
        parts = [f"{u}{k.symbol}{v}" for u, v, k in self.edges()]
        return f"PartiallyDirectedGraph(n={self.n}, [{', '.join(parts)}])"


PDG = PartiallyDirectedGraph


def skeleton(g: PDG) -> PDG:
    return PDG._trusted(g.n, (), g.directed_edges() + g.undirected_edges())


def v_structures(g: PDG) -> set[tuple[int, int, int]]:
    """Triples (u, c, v), u < v, with u -> c <- v directed and u, v non-adjacent."""
    out = set()
    for c in range(g.n):
        pa = g.directed_in[c]
        for i, u in enumerate(pa):
            adj_u = g._adj[u]
            for v in pa[i + 1 :]:
                if v not in adj_u:
                    out.add((u, c, v))
    return out


def _relation(g: PDG, u: int, v: int) -> int:
    # 0: absent, 1: u -> v, 2: v -> u, 3: u -- v
    if v not in g._adj[u]:
        return 0
    if u in g.directed_in[v]:
        return 1
    if v in g.directed_in[u]:
        return 2
    return 3


def shd(g1: PDG, g2: PDG) -> int:
    """Number of unordered vertex pairs whose edge relation differs."""
    if g1.n != g2.n:
        raise GraphError(f"vertex counts differ: {g1.n} vs {g2.n}")
    pairs = set()
    for g in (g1, g2):
        for u in range(g.n):
            for v in g._adj[u]:
                if u < v:
                    pairs.add((u, v))
    return sum(_relation(g1, u, v) != _relation(g2, u, v) for u, v in pairs)


def undirected_components(g: PDG) -> list[list[int]]:
    """Connected components over undirected edges, singletons included."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.undirected[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def induced_subgraph(g: PDG, s: Iterable[int]) -> tuple[PDG, dict[int, int]]:
    """Subgraph over ``s`` relabelled to 0..|s|-1 in ascending order of old id."""
    verts = sorted(set(s))
    for v in verts:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    relabel = {v: i for i, v in enumerate(verts)}
    directed = [
        (relabel[u], relabel[v]) for u in verts for v in g.directed_out[u] if v in relabel
    ]
    undirected = [
        (relabel[u], relabel[v]) for u in verts for v in g.undirected[u] if u < v and v in relabel
    ]
    return PDG._trusted(len(verts), directed, undirected), relabel


def topological_order(g: PDG) -> list[int] | None:
    """Kahn order of the directed part, or None if it has a cycle."""
    indeg = [len(p) for p in g.directed_in]
    stack = [v for v in range(g.n) if indeg[v] == 0]
    order = []
    while stack:
        u = stack.pop()
        order.append(u)
        for w in g.directed_out[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return order if len(order) == g.n else None


def is_acyclic(g: PDG) -> bool:
    """True iff the directed part has no cycle; undirected edges are ignored."""
    return topological_order(g) is not None


def orient_by_ordering(g: PDG, tau: Sequence[int]) -> PDG:
    """Direct every undirected u -- v as u -> v iff u precedes v in ``tau``."""
    pos = {v: i for i, v in enumerate(tau)}
    directed = g.directed_edges()
    for u, v in g.undirected_edges():
        pu, pv = pos.get(u), pos.get(v)
        if pu is None or pv is None:
            raise GraphError(f"ordering does not cover undirected edge {u} -- {v}")
        directed.append((u, v) if pu < pv else (v, u))
    return PDG._trusted(g.n, directed, ())


# --- text format -----------------------------------------------------------


def to_text(g: PDG) -> str:
    lines = [f"pdag {g.n} {g.m}"]
    lines += [f"{u} {k.symbol} {v}" for u, v, k in g.edges()]
    return "\n".join(lines) + "\n"


def write_graph(g: PDG, out: TextIO) -> None:
    out.write(to_text(g))


def _parse_block(lines: list[tuple[int, str]]) -> PDG:
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "pdag":
        raise GraphFormatError(f"line {lineno}: expected 'pdag <n> <m>', got {header!r}")
    try:
        n, m = int(parts[1]), int(parts[2])
    except ValueError:
        raise GraphFormatError(f"line {lineno}: non-integer header {header!r}") from None
    directed, undirected = [], []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 3 or parts[1] not in ("->", "--"):
            raise GraphFormatError(f"line {lineno}: bad edge line {line!r}")
        try:
            u, v = int(parts[0]), int(parts[2])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
        (directed if parts[1] == "->" else undirected).append((u, v))
    if len(directed) + len(undirected) != m:
        raise GraphFormatError(
            f"header declares {m} edges, found {len(directed) + len(undirected)}"
        )
    try:
        return PDG(n, directed, undirected)
    except GraphError as exc:
        raise GraphFormatError(str(exc)) from None


def iter_graphs(stream: TextIO | str) -> Iterator[PDG]:
    """Parse a stream of graphs separated by blank lines; '#' lines are comments."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    block: list[tuple[int, str]] = []
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if block:
                yield _parse_block(block)
                block = []
            continue
        if block and line.startswith("pdag"):
            yield _parse_block(block)
            block = []
        block.append((lineno, line))
    if block:
        yield _parse_block(block)


def parse_graph(text: str) -> PDG:
    graphs = list(iter_graphs(text))
    if len(graphs) != 1:
        raise GraphFormatError(f"expected exactly one graph, found {len(graphs)}")
    return graphs[0]


def read_graph(path) -> PDG:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def to_dot(g: PDG, names: Sequence[str] | None = None) -> str:
    label = (lambda v: names[v]) if names else str
    lines = ["digraph G {"]
    lines += [f'  "{label(v)}";' for v in range(g.n)]
    for u, v, k in g.edges():
        attr = "" if k is EdgeKind.DIRECTED else " [dir=none]"
        lines.append(f'  "{label(u)}" -> "{label(v)}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"
