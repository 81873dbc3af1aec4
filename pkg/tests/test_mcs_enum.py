import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import (
    A,
    B,
    C,
    E,
    F,
    CP7,
    CP7_DAGS,
    UG7,
    MP6,
    brute_amos,
    connected_chordal_graphs,
    pdag_corpus,
    uccg_corpus,
)
from mecenum.errors import NoAdmissibleVertex, NotChordal
from mecenum.graph import PDG, induced_subgraph, skeleton, undirected_components, v_structures
from mecenum.instances import GenConfig, random_chordal
from mecenum.mcs_enum import (
    AmoEnumerator,
    BucketEnumerator,
    enumerate_amos,
    enumerate_bucket,
    enumerate_cpdag,
    enumerate_pdag,
    iter_amos,
    iter_bucket,
    iter_cpdag,
    iter_pdag,
)
from mecenum.meek import buckets, maximal_orientation
from mecenum.oracle import brute_force_extensions


def dags(it):
    return [x.to_graph() for x in it]


def complete(n):
    return PDG(n, (), list(itertools.combinations(range(n), 2)))


class TestAmoCounts:
    def test_path(self):
        g = PDG(7, (), [(A, C), (C, F)])
        out = set(dags(iter_amos(g)))
        assert out == {
            PDG(7, [(A, C), (C, F)]),
            PDG(7, [(C, A), (C, F)]),
            PDG(7, [(F, C), (C, A)]),
        }

    def test_single_edge(self):
        g = PDG(7, (), [(B, E)])
        assert enumerate_amos(g) == 2

    def test_single_vertex(self):
        out = dags(iter_amos(PDG(1)))
        assert out == [PDG(1)]

    def test_empty_graph(self):
        assert enumerate_amos(PDG(0)) == 1

    def test_star_four_leaves(self):
        assert enumerate_amos(PDG(5, (), [(0, i) for i in range(1, 5)])) == 5

    def test_k4(self):
        assert enumerate_amos(complete(4)) == 24

    def test_ug7(self):
        out = dags(iter_amos(UG7))
        expected = brute_amos(UG7)
        assert len(out) == len(set(out)) == len(expected)
        assert set(out) == expected

    def test_not_chordal(self):
        with pytest.raises(NotChordal):
            list(iter_amos(PDG(4, (), [(0, 1), (1, 2), (2, 3), (3, 0)])))

    def test_disconnected(self):
        assert enumerate_amos(PDG(4, (), [(0, 1), (2, 3)])) == 4


class TestAmoOracle:
    def test_connected_chordal_n5(self):
        for g in connected_chordal_graphs(5):
            out = dags(iter_amos(g))
            assert len(out) == len(set(out))
            assert set(out) == brute_amos(g)

    @pytest.mark.parametrize("tie_break,seed", [("lowest", None), ("seeded", 7), ("any", None)])
    def test_tie_breaks_agree(self, tie_break, seed):
        for _, g in uccg_corpus(40):
            out = dags(iter_amos(g, tie_break=tie_break, seed=seed))
            assert Counter(out) == Counter(brute_force_extensions(g))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(3, 7), st.integers(1, 3), st.integers(0, 10**6))
    def test_random_chordal(self, n, k, seed):
        g = random_chordal(GenConfig(n=n, k=k, seed=seed))
        out = dags(iter_amos(g))
        assert len(out) == len(set(out))
        assert set(out) == brute_force_extensions(g)
        assert all(not v_structures(d) for d in out)


class TestStateRestored:
    def test_amo_enumerator(self):
        for s in range(20):
            g = random_chordal(GenConfig(n=8, k=2, seed=s))
            en = AmoEnumerator(g)
            before = en.state.snapshot()
            count = sum(1 for _ in en.orders())
            assert count > 0 and en.state.snapshot() == before
            assert sum(1 for _ in en.orders()) == count

    def test_bucket_enumerator(self):
        bg = buckets(MP6)[0].graph
        en = BucketEnumerator(bg)
        before = en.state.snapshot()
        first = list(en.orders())
        assert en.state.snapshot() == before
        # bins hold the same vertices, possibly in another order, so the
        # second run may list the orders differently
        assert sorted(en.orders()) == sorted(first)


def first_difference_connected(g: PDG, orders) -> bool:
    for s, t in itertools.combinations(orders, 2):
        p = next(i for i, (x, y) in enumerate(zip(s, t)) if x != y)
        sub, relabel = induced_subgraph(g, s[p:])
        comp = next(c for c in undirected_components(sub) if relabel[s[p]] in c)
        if relabel[t[p]] not in comp:
            return False
    return True


class TestPivotRotation:
    def test_first_difference_is_connected(self):
        checked = 0
        for g in connected_chordal_graphs(5):
            assert first_difference_connected(g, [x.order for x in iter_amos(g)])
            checked += 1
        for s in range(40):
            g = random_chordal(GenConfig(n=6, k=1 + s % 2, seed=s))
            assert first_difference_connected(g, [x.order for x in iter_amos(g)])
            checked += 1
        assert checked > 100

    def test_orders_are_mcs_orders(self):
        for _, g in uccg_corpus(30):
            for x in iter_amos(g):
                seen = set()
                for v in x.order:
                    label = lambda w: sum(1 for u in g.undirected[w] if u in seen)
                    assert label(v) == max(label(w) for w in range(g.n) if w not in seen)
                    seen.add(v)


class TestEarlyStop:
    @pytest.mark.parametrize("k", [1, 3, 10])
    def test_sink_stops(self, k):
        seen = []

        def sink(x):
            seen.append(x.to_graph())
            return len(seen) >= k

        assert enumerate_amos(complete(4), sink) == k
        assert len(seen) == len(set(seen)) == k

    def test_stop_in_pdag(self):
        seen = []
        assert enumerate_pdag(CP7, lambda x: seen.append(x) or len(seen) == 4) == 4


class TestCpdag:
    def test_cp7(self):
        out = dags(iter_cpdag(CP7))
        assert len(out) == 6 and set(out) == CP7_DAGS

    def test_dag(self):
        d = PDG(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
        assert dags(iter_cpdag(d)) == [d]

    def test_two_disjoint_edges(self):
        g = PDG(4, (), [(0, 1), (2, 3)])
        out = dags(iter_cpdag(g))
        assert len(out) == 4 and set(out) == brute_force_extensions(g)
        assert enumerate_cpdag(g) == 4


class TestBucket:
    def test_mp6_cf(self):
        b = buckets(MP6)[1]
        assert enumerate_bucket(b) == 2

    def test_mp6_square(self):
        b = buckets(MP6)[0]
        out = dags(iter_bucket(b))
        expected = brute_force_extensions(b.graph)
        assert len(out) == len(expected) == 5
        assert set(out) == expected
        a, e = b.relabel[A], b.relabel[E]
        assert all((a, e) in d.directed_edges() for d in out)

    def test_forced_edge(self):
        out = dags(iter_pdag(PDG(3, [(0, 1)], [(1, 2)])))
        assert out == [PDG(3, [(0, 1), (1, 2)])]

    def test_not_meek_closed(self):
        # 0 -> 1 -- 2 needs R1 first; without it no vertex is admissible
        with pytest.raises(NoAdmissibleVertex):
            list(iter_bucket(PDG(3, [(0, 1)], [(1, 2)])))

    def test_no_directed_edges_matches_amos(self):
        g = random_chordal(GenConfig(n=6, k=2, seed=4))
        assert set(dags(iter_bucket(g))) == set(dags(iter_amos(g)))


class TestPdag:
    def test_cp7_with_background(self):
        g = PDG(7, CP7.directed_edges() + [(A, C)], [(C, F), (B, E)])
        out = dags(iter_pdag(g))
        assert set(out) == {d for d in CP7_DAGS if (A, C) in d.directed_edges()}
        assert len(out) == 2

    def test_four_cycle(self):
        assert enumerate_pdag(PDG(4, (), [(0, 1), (1, 2), (2, 3), (3, 0)])) == 0

    def test_mp6_is_bucket_product(self):
        out = dags(iter_pdag(MP6))
        sizes = [enumerate_bucket(b) for b in buckets(MP6)]
        assert len(out) == len(set(out)) == sizes[0] * sizes[1] == 10
        assert set(out) == brute_force_extensions(MP6)

    def test_product_order_is_odometer(self):
        outs = list(iter_pdag(CP7))
        # the last bucket ({b, e}) varies fastest
        firsts = [x.parts[0][1] for x in outs]
        assert firsts[0] == firsts[1] and firsts[2] == firsts[3]

    def test_directed_only(self):
        d = PDG(3, [(0, 1), (1, 2)])
        assert dags(iter_pdag(d)) == [d]

    def test_corpus(self):
        for _, g in pdag_corpus(80):
            closed = maximal_orientation(g)
            out = dags(iter_pdag(g))
            assert len(out) == len(set(out))
            assert set(out) == brute_force_extensions(g)
            for d in out:
                assert set(closed.directed_edges()) <= set(d.directed_edges())
                assert skeleton(d) == skeleton(g)
                assert v_structures(d) == v_structures(g)


class TestScale:
    def test_long_path_no_recursion_limit(self):
        n = 1024
        g = PDG(n, (), [(i, i + 1) for i in range(n - 1)])
        head = list(itertools.islice(iter_amos(g), 3))
        assert len(head) == 3
        assert all(len(x.order) == n for x in head)

    def test_seeded_is_reproducible(self):
        g = random_chordal(GenConfig(n=30, k=3, seed=2))
        a = [x.order for x in itertools.islice(iter_amos(g, "seeded", 5), 50)]
        b = [x.order for x in itertools.islice(iter_amos(g, "seeded", 5), 50)]
        assert a == b

    def test_extension_order(self):
        x = next(iter_amos(PDG(3, (), [(0, 1), (1, 2)])))
        assert sorted(x.order) == [0, 1, 2]
        y = next(iter_pdag(CP7))
        with pytest.raises(AttributeError):
            y.order
