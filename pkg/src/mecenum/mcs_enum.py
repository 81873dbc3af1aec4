"""Linear-delay enumeration of AMOs, CPDAG classes, buckets and PDAG extensions.

The enumerators run a recursive MCS: at each level the first highest-label
vertex ``v`` is visited, and after its subtree is exhausted the other
highest-label vertices reachable from ``v`` inside the highest-label set are
tried in turn. Recursion is an explicit stack of frames ``[i, v, x, R]``
(label, first pivot, current pivot, pending reach set), so depth is bounded
only by memory.

Outputs are :class:`Extension` objects holding the visiting order; the DAG is
built only when ``to_graph()`` is called.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable, Iterator

from .chordal import MCSState, is_amo_ordering, is_chordal
from .errors import GraphError, NoAdmissibleVertex, NotChordal, NotExtendable
from .graph import PDG, orient_by_ordering
from .meek import Bucket, buckets, maximal_orientation, restricted_mcs

Sink = Callable[["Extension"], object]


class Extension:
    """One enumerated DAG, kept as visiting orders until materialized.

    ``parts`` is a tuple of ``(bucket, order)`` pairs. A ``None`` bucket means
    ``order`` covers every vertex of ``base``.
    """

    __slots__ = ("base", "parts")

    def __init__(self, base: PDG, parts: tuple):
        self.base = base
        self.parts = parts

    @property
    def order(self) -> tuple[int, ...]:
        if len(self.parts) != 1 or self.parts[0][0] is not None:
            raise AttributeError("multi-bucket extension has no single order")
        return self.parts[0][1]

    def to_graph(self) -> PDG:
        base = self.base
        if len(self.parts) == 1 and self.parts[0][0] is None:
            return orient_by_ordering(base, self.parts[0][1])
        directed = base.directed_edges()
        for bucket, order in self.parts:
            pos = [0] * len(order)
            for k, v in enumerate(order):
                pos[v] = k
            directed += bucket.lift(
                (u, v) if pos[u] < pos[v] else (v, u) for u, v in bucket.graph.undirected_edges()
            )
        return PDG._trusted(base.n, directed, ())

    def __repr__(self) -> str:
        return f"Extension(parts={self.parts!r})"


def _picker(tie_break: str, seed: int | None):
    if tie_break == "any":
        return None
    if tie_break == "lowest":
        return min
    if tie_break == "seeded":
        rng = random.Random(seed)
        return lambda s: s[rng.randrange(len(s))]
    raise ValueError(f"unknown tie_break {tie_break!r}")


class AmoEnumerator:
    """All AMOs of a chordal undirected graph, as MCS visiting orders.

    ``state`` is the shared :class:`MCSState`; it is back in its initial
    configuration once :meth:`orders` runs to completion.
    """

    def __init__(self, g: PDG, tie_break: str = "any", seed: int | None = None):
        if any(g.directed_out):
            raise GraphError("expected an undirected graph, found directed edges")
        if not is_chordal(g):
            raise NotChordal("graph is not chordal")
        self.graph = g
        self.state = MCSState(g.n)
        self._pick = _picker(tie_break, seed)

    def orders(self) -> Iterator[tuple[int, ...]]:
        st = self.state
        n = st.n
        if n == 0:
            yield ()
            return
        sets, pos, label, visited, tau = st.sets, st.pos, st.label, st.visited, st.tau
        nbrs = self.graph.undirected
        pick = self._pick
        mark = [0] * n
        stamp = 0

        # bin moves are inlined: an unvisited vertex always sits in
        # sets[label[w]], so ``st.where`` is not consulted here
        def visit(x, i):
            s = sets[i]
            last = s.pop()
            if last != x:
                p = pos[x]
                s[p] = last
                pos[last] = p
            visited[x] = True
            tau.append(x)
            for w in nbrs[x]:
                if visited[w]:
                    continue
                lw = label[w]
                s = sets[lw]
                last = s.pop()
                if last != w:
                    p = pos[w]
                    s[p] = last
                    pos[last] = p
                lw += 1
                label[w] = lw
                s = sets[lw]
                pos[w] = len(s)
                s.append(w)
            # every unvisited label was <= i, so none exceeds i + 1 now
            return i + 1

        def unvisit(x, i):
            for w in nbrs[x]:
                if visited[w]:
                    continue
                lw = label[w]
                s = sets[lw]
                last = s.pop()
                if last != w:
                    p = pos[w]
                    s[p] = last
                    pos[last] = p
                lw -= 1
                label[w] = lw
                s = sets[lw]
                pos[w] = len(s)
                s.append(w)
            visited[x] = False
            tau.pop()
            s = sets[i]
            pos[x] = len(s)
            s.append(x)

        stack: list[list] = []
        i = 0
        while True:
            while len(tau) < n:
                while not sets[i]:
                    i -= 1
                s = sets[i]
                v = s[-1] if pick is None else pick(s)
                stack.append([i, v, v, None])
                st.max_label = i
                i = visit(v, i)
            yield tuple(tau)
            while stack:
                frame = stack[-1]
                fi, fv, fx, reach = frame
                unvisit(fx, fi)
                if fx == fv:
                    # vertices reachable from v inside A[fi]
                    stamp += 1
                    mark[fv] = stamp
                    queue = [fv]
                    k = 0
                    while k < len(queue):
                        u = queue[k]
                        k += 1
                        for w in nbrs[u]:
                            if mark[w] != stamp and not visited[w] and label[w] == fi:
                                mark[w] = stamp
                                queue.append(w)
                    reach = queue[1:]
                    frame[3] = reach
                if reach:
                    x = reach.pop()
                    frame[2] = x
                    st.max_label = fi
                    i = visit(x, fi)
                    break
                stack.pop()
            else:
                st.max_label = 0
                return


class BucketEnumerator:
    """All AMOs of a bucket's skeleton that agree with its directed edges.

    Only highest-label vertices with no unvisited parent (the admissible set)
    are chosen, and reachability is taken inside the admissible set.
    """

    def __init__(self, bg: PDG, tie_break: str = "any", seed: int | None = None):
        nbrs = [sorted(bg.adjacent(v)) for v in range(bg.n)]
        order = None
        if bg.n:
            order = restricted_mcs(bg)
        if order is not None and not is_amo_ordering(nbrs, order):
            raise NotChordal("bucket skeleton is not chordal")
        self.graph = bg
        self._nbrs = nbrs
        self._kids = [frozenset(c) for c in bg.directed_out]
        self._pcount = [len(p) for p in bg.directed_in]
        self.state = MCSState(bg.n, split=True, blocked=[c > 0 for c in self._pcount])
        self._pick = _picker(tie_break, seed)

    def orders(self) -> Iterator[tuple[int, ...]]:
        st = self.state
        n = st.n
        if n == 0:
            yield ()
            return
        sets, pos, label, where, visited, tau = (
            st.sets, st.pos, st.label, st.where, st.visited, st.tau
        )
        nbrs, kids, pcount = self._nbrs, self._kids, self._pcount
        pick = self._pick
        mark = [0] * n
        stamp = 0

        # bin moves are inlined: swap-remove from sets[where[w]], append to
        # bin 2*label + (still has an unvisited parent)
        def visit(x, i):
            s = sets[where[x]]
            last = s.pop()
            if last != x:
                p = pos[x]
                s[p] = last
                pos[last] = p
            visited[x] = True
            tau.append(x)
            kx = kids[x]
            for w in nbrs[x]:
                if visited[w]:
                    continue
                s = sets[where[w]]
                last = s.pop()
                if last != w:
                    p = pos[w]
                    s[p] = last
                    pos[last] = p
                lw = label[w] + 1
                label[w] = lw
                if w in kx:
                    pcount[w] -= 1
                b = 2 * lw + (pcount[w] > 0)
                where[w] = b
                s = sets[b]
                pos[w] = len(s)
                s.append(w)
            # every unvisited label was <= i, so none exceeds i + 1 now
            return i + 1

        def unvisit(x, i):
            kx = kids[x]
            for w in nbrs[x]:
                if visited[w]:
                    continue
                s = sets[where[w]]
                last = s.pop()
                if last != w:
                    p = pos[w]
                    s[p] = last
                    pos[last] = p
                lw = label[w] - 1
                label[w] = lw
                if w in kx:
                    pcount[w] += 1
                b = 2 * lw + (pcount[w] > 0)
                where[w] = b
                s = sets[b]
                pos[w] = len(s)
                s.append(w)
            visited[x] = False
            tau.pop()
            b = 2 * i
            where[x] = b
            s = sets[b]
            pos[x] = len(s)
            s.append(x)

        stack: list[list] = []
        i = 0
        while True:
            while len(tau) < n:
                while not sets[2 * i] and not sets[2 * i + 1]:
                    i -= 1
                s = sets[2 * i]
                if not s:
                    raise NoAdmissibleVertex(f"no admissible vertex at label {i}")
                v = s[-1] if pick is None else pick(s)
                stack.append([i, v, v, None])
                st.max_label = i
                i = visit(v, i)
            yield tuple(tau)
            while stack:
                frame = stack[-1]
                fi, fv, fx, reach = frame
                unvisit(fx, fi)
                if fx == fv:
                    # vertices reachable from v inside the admissible set
                    stamp += 1
                    mark[fv] = stamp
                    queue = [fv]
                    k = 0
                    b = 2 * fi
                    while k < len(queue):
                        u = queue[k]
                        k += 1
                        for w in nbrs[u]:
                            if mark[w] != stamp and where[w] == b and not visited[w]:
                                mark[w] = stamp
                                queue.append(w)
                    reach = queue[1:]
                    frame[3] = reach
                if reach:
                    x = reach.pop()
                    frame[2] = x
                    st.max_label = fi
                    i = visit(x, fi)
                    break
                stack.pop()
            else:
                st.max_label = 0
                return


def _drain(members: Iterable, sink: Sink | None) -> int:
    count = 0
    for member in members:
        count += 1
        if sink is not None and sink(member):
            break
    return count


def iter_amos(g: PDG, tie_break: str = "any", seed: int | None = None) -> Iterator[Extension]:
    """Every AMO of the chordal undirected graph ``g`` exactly once."""
    for tau in AmoEnumerator(g, tie_break, seed).orders():
        yield Extension(g, ((None, tau),))


def enumerate_amos(g: PDG, sink: Sink | None = None, **kw) -> int:
    """Feed every AMO of ``g`` to ``sink``; a truthy return stops early."""
    return _drain(iter_amos(g, **kw), sink)


def iter_cpdag(g: PDG, tie_break: str = "any", seed: int | None = None) -> Iterator[Extension]:
    """Every DAG in the class of CPDAG ``g``: AMOs of the undirected part
    with the directed edges re-added."""
    und = PDG._trusted(g.n, (), g.undirected_edges())
    for tau in AmoEnumerator(und, tie_break, seed).orders():
        yield Extension(g, ((None, tau),))


def enumerate_cpdag(g: PDG, sink: Sink | None = None, **kw) -> int:
    return _drain(iter_cpdag(g, **kw), sink)


def iter_bucket(b: Bucket | PDG, tie_break: str = "any", seed: int | None = None) -> Iterator[Extension]:
    bg = b.graph if isinstance(b, Bucket) else b
    for tau in BucketEnumerator(bg, tie_break, seed).orders():
        yield Extension(bg, ((None, tau),))


def enumerate_bucket(b: Bucket | PDG, sink: Sink | None = None, **kw) -> int:
    return _drain(iter_bucket(b, **kw), sink)


def _bucket_enumerator(bg: PDG, tie_break: str, seed: int | None):
    # without directed edges every highest-label vertex is admissible, so
    # the plain AMO enumerator produces the same orders more cheaply
    if not any(bg.directed_out):
        return AmoEnumerator(bg, tie_break, seed)
    return BucketEnumerator(bg, tie_break, seed)


def iter_pdag(g: PDG, tie_break: str = "any", seed: int | None = None) -> Iterator[Extension]:
    """Every consistent extension of PDAG ``g``; nothing if there is none.

    The Meek closure is split into buckets whose enumerations are combined
    odometer-style, the last bucket varying fastest.
    """
    try:
        closed = maximal_orientation(g)
    except NotExtendable:
        return
    bs = buckets(closed)
    if not bs:
        yield Extension(closed, ())
        return
    enums = [_bucket_enumerator(b.graph, tie_break, seed) for b in bs]
    gens = [e.orders() for e in enums]
    current = [next(gen) for gen in gens]
    yield Extension(closed, tuple(zip(bs, current)))
    last = len(bs) - 1
    while True:
        k = last
        while k >= 0:
            nxt = next(gens[k], None)
            if nxt is not None:
                current[k] = nxt
                break
            gens[k] = enums[k].orders()
            current[k] = next(gens[k])
            k -= 1
        if k < 0:
            return
        yield Extension(closed, tuple(zip(bs, current)))


def enumerate_pdag(g: PDG, sink: Sink | None = None, **kw) -> int:
    return _drain(iter_pdag(g, **kw), sink)
