"""Shared fixtures.

The toy code is the hypergraph product of the 3-bit repetition-check seed;
it is small enough for exhaustive oracles.  The mid and large codes are
sampled biregular instances shared across the session because the flip
table and row-space basis are the expensive parts.
"""

from __future__ import annotations

import numpy as np
import pytest

from qexpander.code import build_code
from qexpander.constants import ConstantsLedger, to_fraction
from qexpander.decoder import color_generators, precompute_flips
from qexpander.graph import BipartiteGraph, sample_biregular

TOY_H = np.array([[1, 1, 0],
                  [0, 1, 1]], dtype=np.uint8)


@pytest.fixture(scope="session")
def toy_graph():
    return BipartiteGraph.from_biadjacency(TOY_H)


@pytest.fixture(scope="session")
def toy_code(toy_graph):
    return build_code(toy_graph)


@pytest.fixture(scope="session")
def toy_table(toy_code):
    return precompute_flips(toy_code)


@pytest.fixture(scope="session")
def toy_colors(toy_table):
    return color_generators(toy_table)


@pytest.fixture(scope="session")
def small_graph():
    # (8,2,4): n = 80, supports of size 6; cheap enough for full-rescan
    # reference decoding
    return sample_biregular(8, 2, 4, seed=20240901)


@pytest.fixture(scope="session")
def small_code(small_graph):
    return build_code(small_graph)


@pytest.fixture(scope="session")
def small_table(small_code):
    return precompute_flips(small_code)


@pytest.fixture(scope="session")
def small_colors(small_table):
    return color_generators(small_table)


@pytest.fixture(scope="session")
def mid_graph():
    # seed 3 gives a graph with all-distinct neighborhoods on both sides,
    # so single-qubit syndromes have a unique best flip
    return sample_biregular(20, 5, 10, seed=3)


@pytest.fixture(scope="session")
def mid_code(mid_graph):
    return build_code(mid_graph)


@pytest.fixture(scope="session")
def mid_table(mid_code):
    return precompute_flips(mid_code)


@pytest.fixture(scope="session")
def mid_colors(mid_table):
    return color_generators(mid_table)


@pytest.fixture(scope="session")
def big_graph():
    return sample_biregular(60, 5, 10, seed=1)


@pytest.fixture(scope="session")
def big_code(big_graph):
    code = build_code(big_graph)
    code.hz_row_space()
    return code


@pytest.fixture(scope="session")
def big_table(big_code):
    return precompute_flips(big_code)


@pytest.fixture(scope="session")
def big_colors(big_table):
    return color_generators(big_table)


@pytest.fixture(scope="session")
def ledger_5_10():
    return ConstantsLedger(d_A=5, d_B=10, delta=to_fraction("1/20"),
                           beta=to_fraction("1/10"), c=to_fraction("14"),
                           gamma=to_fraction("1/2"))
