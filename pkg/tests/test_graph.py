"""Bipartite graph sampling, persistence, and the expansion oracle."""

from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest

from qexpander.errors import BudgetError, ParameterError, SamplingError
from qexpander.graph import (BipartiteGraph, check_biregular,
                             expansion_profile, load_graph, sample_biregular,
                             save_graph)

from .conftest import TOY_H


@pytest.mark.parametrize("n_a,d_a,d_b", [(2, 1, 1), (8, 2, 4), (20, 5, 10),
                                         (30, 5, 10), (12, 3, 4)])
def test_sampled_graph_is_simple_and_biregular(n_a, d_a, d_b):
    g = sample_biregular(n_a, d_a, d_b, seed=(n_a, d_a, d_b))
    assert g.n_B == n_a * d_a // d_b
    assert g.n_edges == n_a * d_a
    assert check_biregular(g)
    for nbrs in g.adj_A:
        assert len(set(int(b) for b in nbrs)) == len(nbrs)


def test_perfect_matching_at_degree_one():
    g = sample_biregular(2, 1, 1, seed=0)
    assert sorted(int(x[0]) for x in g.adj_A) == [0, 1]


def test_sampling_is_deterministic_per_seed():
    g1 = sample_biregular(20, 5, 10, seed=77)
    g2 = sample_biregular(20, 5, 10, seed=77)
    g3 = sample_biregular(20, 5, 10, seed=78)
    assert all(np.array_equal(a, b) for a, b in zip(g1.adj_A, g2.adj_A))
    assert any(not np.array_equal(a, b) for a, b in zip(g1.adj_A, g3.adj_A))


def test_sampling_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        sample_biregular(3, 2, 4, seed=0)  # 4 does not divide 6
    with pytest.raises(ParameterError):
        sample_biregular(4, 3, 12, seed=0)  # n_B = 1 < d_A
    with pytest.raises(ParameterError):
        sample_biregular(4, 0, 2, seed=0)


def test_dense_degree_pair_samples_quickly():
    # expected duplicate count of a raw matching here is ~18, so whole
    # matching rejection would essentially never terminate; the switch
    # repair must handle it routinely
    for s in range(10):
        g = sample_biregular(20, 5, 10, seed=s)
        assert check_biregular(g)


def test_biadjacency_round_trip(toy_graph):
    h = toy_graph.biadjacency()
    assert np.array_equal(h, TOY_H)
    again = BipartiteGraph.from_biadjacency(h)
    assert all(np.array_equal(a, b)
               for a, b in zip(again.adj_A, toy_graph.adj_A))


def test_swap_sides_is_an_involution():
    g = sample_biregular(8, 2, 4, seed=5)
    back = g.swap_sides().swap_sides()
    assert back.n_A == g.n_A and back.d_A == g.d_A
    assert all(np.array_equal(a, b) for a, b in zip(g.adj_A, back.adj_A))
    assert np.array_equal(g.swap_sides().biadjacency(), g.biadjacency().T)


def test_constructor_rejects_malformed_adjacency():
    with pytest.raises(ParameterError):
        BipartiteGraph(n_A=2, n_B=2, d_A=1, d_B=1, adj_A=[[0], [5]])
    with pytest.raises(ParameterError):
        BipartiteGraph(n_A=2, n_B=2, d_A=2, d_B=2, adj_A=[[0, 0], [1, 1]])
    with pytest.raises(ParameterError):
        BipartiteGraph(n_A=2, n_B=2, d_A=1, d_B=1, adj_A=[[0]])


def test_check_biregular_detects_defects():
    g = sample_biregular(8, 2, 4, seed=1)
    assert check_biregular(g)
    adj = [x.copy() for x in g.adj_A]
    adj[0] = adj[0][:-1]  # drop one edge
    broken = BipartiteGraph(n_A=g.n_A, n_B=g.n_B, d_A=g.d_A, d_B=g.d_B,
                            adj_A=adj)
    assert not check_biregular(broken)
    assert not check_biregular(BipartiteGraph.from_biadjacency(TOY_H))


def test_save_load_round_trip(tmp_path):
    g = sample_biregular(12, 3, 4, seed=9)
    path = tmp_path / "g.txt"
    save_graph(g, path)
    back = load_graph(path)
    assert (back.n_A, back.n_B, back.d_A, back.d_B) == (g.n_A, g.n_B,
                                                        g.d_A, g.d_B)
    assert all(np.array_equal(a, b) for a, b in zip(g.adj_A, back.adj_A))


def test_load_rejects_malformed_files(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2 3\n")
    with pytest.raises(ParameterError):
        load_graph(bad)
    short = tmp_path / "short.txt"
    short.write_text("2 2 1 1\n0\n")
    with pytest.raises(ParameterError):
        load_graph(short)


def test_expansion_profile_matches_set_enumeration():
    g = sample_biregular(8, 2, 4, seed=3)
    prof = expansion_profile(g, side="left", max_subset_size=3)
    for s in range(1, 4):
        want = min(len(set().union(*(set(int(b) for b in g.adj_A[v])
                                     for v in combo)))
                   for combo in combinations(range(g.n_A), s))
        assert prof[s] == want
    prof_r = expansion_profile(g, side="right", max_subset_size=2)
    for s in range(1, 3):
        want = min(len(set().union(*(set(int(a) for a in g.adj_B[v])
                                     for v in combo)))
                   for combo in combinations(range(g.n_B), s))
        assert prof_r[s] == want


def test_expansion_profile_guards():
    g = sample_biregular(8, 2, 4, seed=3)
    with pytest.raises(ParameterError):
        expansion_profile(g, side="middle")
    with pytest.raises(ParameterError):
        expansion_profile(g, max_subset_size=0)
    with pytest.raises(BudgetError):
        expansion_profile(g, max_subset_size=8, budget=10)


def test_sampling_failure_is_reported_not_hung():
    # a repair budget of zero proposals forces the failure path whenever
    # the initial matching has duplicates
    hit = False
    for s in range(50):
        try:
            sample_biregular(4, 3, 4, seed=s, max_retries=0)
        except SamplingError:
            hit = True
            break
    assert hit
