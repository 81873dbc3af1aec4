"""Comparison enumerators: Meek-rule branching and covered-edge reversal DFS.

All three accept CPDAGs, MPDAGs and PDAGs; inputs without a consistent
extension enumerate nothing.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

from .errors import GraphError, NotExtendable
from .graph import PDG, is_acyclic, skeleton, v_structures
from .mcs_enum import Sink, _drain
from .meek import MixedGraph, consistent_extension_mpdag, maximal_orientation


class CoveredEdge(NamedTuple):
    x: int
    y: int


def covered_edges(d: PDG) -> list[CoveredEdge]:
    """Edges x -> y of DAG ``d`` with Pa(x) + {x} == Pa(y)."""
    if any(d.undirected) or not is_acyclic(d):
        raise GraphError("covered_edges needs a DAG")
    out = []
    for x, y in d.directed_edges():
        py, px = d.directed_in[y], d.directed_in[x]
        if len(py) == len(px) + 1 and set(py) == set(px) | {x}:
            out.append(CoveredEdge(x, y))
    return out


def reverse_edge(d: PDG, x: int, y: int) -> PDG:
    directed = [(v, u) if (u, v) == (x, y) else (u, v) for u, v in d.directed_edges()]
    return PDG._trusted(d.n, directed, ())


def markov_equivalent(d1: PDG, d2: PDG) -> bool:
    for d in (d1, d2):
        if not is_acyclic(d):
            raise GraphError("markov_equivalent needs acyclic inputs")
    if d1.n != d2.n:
        raise GraphError(f"vertex counts differ: {d1.n} vs {d2.n}")
    return skeleton(d1) == skeleton(d2) and v_structures(d1) == v_structures(d2)


def dag_key(d: PDG) -> tuple[tuple[int, int], ...]:
    """Canonical form of a DAG: its sorted directed-edge list."""
    return tuple(d.directed_edges())


class VisitedSet:
    """Already-output DAGs keyed by canonical edge list.

    Python's set hashes each key and confirms hits by full equality, which is
    exactly the collision handling the traversal needs.
    """

    def __init__(self, dags: Iterable[PDG] = ()):
        self._keys: set = set()
        for d in dags:
            self.add(d)

    def add(self, d: PDG) -> None:
        self._keys.add(dag_key(d))

    def __contains__(self, d: PDG) -> bool:
        return dag_key(d) in self._keys

    def __len__(self) -> int:
        return len(self._keys)


class _GraphMember:
    __slots__ = ("_h",)

    def __init__(self, h: MixedGraph):
        self._h = h

    def to_graph(self) -> PDG:
        return self._h.to_graph()


def iter_meek(g: PDG) -> Iterator[_GraphMember]:
    """Branch on the lowest undirected edge, orienting u <- v before u -> v,
    re-closing under the Meek rules after every orientation."""
    try:
        root = maximal_orientation(g)
    except NotExtendable:
        return
    h = MixedGraph.from_graph(root)
    # each entry is a closed graph, or (parent, tail, head) still to orient
    stack: list = [h]
    while stack:
        item = stack.pop()
        if isinstance(item, tuple):
            parent, a, b = item
            item = parent.copy()
            item.orient(a, b)
            item.close()
        edge = item.first_undirected()
        if edge is None:
            yield _GraphMember(item)
            continue
        u, v = edge
        stack.append((item, u, v))
        stack.append((item, v, u))


def meek_enum(g: PDG, sink: Sink | None = None) -> int:
    return _drain(iter_meek(g), sink)


class _Orientation:
    """Orientation of a fixed skeleton: ``bits[e]`` is 1 iff edge e = (u, v),
    u < v, points u -> v."""

    __slots__ = ("edges", "n", "bits")

    def __init__(self, n: int, edges, bits: bytes):
        self.n = n
        self.edges = edges
        self.bits = bits

    def to_graph(self) -> PDG:
        directed = [(u, v) if b else (v, u) for (u, v), b in zip(self.edges, self.bits)]
        return PDG._trusted(self.n, directed, ())


class _ReversalWalk:
    """Depth-first walk over the covered-edge-reversal graph of an MEC.

    Keeps one mutable DAG; each stack frame records the edge reversed to
    reach it and its pending covered-edge candidates (ascending (x, y)).
    """

    def __init__(self, g: PDG):
        closed = maximal_orientation(g)
        start = consistent_extension_mpdag(closed)
        self.n = g.n
        self.edges = sorted(tuple(sorted(e)) for e in start.directed_edges())
        self.index = {e: k for k, e in enumerate(self.edges)}
        self.fixed = bytearray(len(self.edges))
        for u, v in closed.directed_edges():
            self.fixed[self.index[(min(u, v), max(u, v))]] = 1
        self.orient = bytearray(len(self.edges))
        self.pa = [set(p) for p in start.directed_in]
        for u, v in start.directed_edges():
            if u < v:
                self.orient[self.index[(u, v)]] = 1
        self.visited: set[bytes] = set()

    def covered(self) -> list[int]:
        pa, edges, orient, fixed = self.pa, self.edges, self.orient, self.fixed
        cands = []
        for k, (u, v) in enumerate(edges):
            if fixed[k]:
                continue
            x, y = (u, v) if orient[k] else (v, u)
            py, px = pa[y], pa[x]
            if len(py) == len(px) + 1 and px <= py:
                cands.append((x, y, k))
        cands.sort()
        return [k for _, _, k in cands]

    def flip(self, k: int) -> None:
        u, v = self.edges[k]
        x, y = (u, v) if self.orient[k] else (v, u)
        self.pa[y].discard(x)
        self.pa[x].add(y)
        self.orient[k] ^= 1

    def member(self) -> _Orientation:
        return _Orientation(self.n, self.edges, bytes(self.orient))

    def walk(self, parity: bool) -> Iterator[_Orientation]:
        """Yield DAGs in pre-order, or with ``parity`` at depth-alternating
        pre/post order (even depths on discovery, odd depths on completion)."""
        orient, visited = self.orient, self.visited
        visited.add(bytes(orient))
        yield self.member()
        # frames: [depth, candidates, next index, edge reversed to get here]
        stack = [[0, self.covered(), 0, -1]]
        while stack:
            frame = stack[-1]
            depth, cands, idx, _ = frame
            while idx < len(cands):
                k = cands[idx]
                idx += 1
                orient[k] ^= 1
                key = bytes(orient)
                orient[k] ^= 1
                if key not in visited:
                    visited.add(key)
                    frame[2] = idx
                    self.flip(k)
                    if not parity or (depth + 1) % 2 == 0:
                        yield self.member()
                    stack.append([depth + 1, self.covered(), 0, k])
                    break
            else:
                stack.pop()
                if parity and depth % 2 == 1:
                    yield self.member()
                if frame[3] >= 0:
                    self.flip(frame[3])


def _walk(g: PDG, parity: bool) -> Iterator[_Orientation]:
    try:
        w = _ReversalWalk(g)
    except NotExtendable:
        return
    yield from w.walk(parity)


def iter_chickering(g: PDG) -> Iterator[_Orientation]:
    return _walk(g, parity=False)


def iter_shd3(g: PDG) -> Iterator[_Orientation]:
    return _walk(g, parity=True)


def chickering_enum(g: PDG, sink: Sink | None = None) -> int:
    return _drain(iter_chickering(g), sink)


def shd3_enum(g: PDG, sink: Sink | None = None) -> int:
    return _drain(iter_shd3(g), sink)
