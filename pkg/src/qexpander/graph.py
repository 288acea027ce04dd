"""Bipartite graphs for code construction.

A graph has left part A (bits of the seed code) and right part B (checks).
Sampled graphs are (d_A, d_B)-biregular; hand-built graphs may be irregular,
in which case ``d_A``/``d_B`` record the maximum degree per side and
:func:`check_biregular` reports False.  Vertex expansion here means set
expansion (|Gamma(S)| large for every small S), not spectral expansion, and
is only checkable by enumeration at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import BudgetError, ParameterError, SamplingError

DEFAULT_ENUM_BUDGET = 5_000_000


@dataclass
class BipartiteGraph:
    """Bipartite graph with adjacency stored from the left side.

    Attributes:
        n_A: number of left vertices.
        n_B: number of right vertices.
        d_A: design left degree (exact for sampled graphs, max otherwise).
        d_B: design right degree (same convention).
        adj_A: per-left-vertex sorted arrays of right neighbors.
        adj_B: per-right-vertex sorted arrays of left neighbors (derived).
    """

    n_A: int
    n_B: int
    d_A: int
    d_B: int
    adj_A: list = field(repr=False)
    adj_B: list = field(repr=False, default=None)

    def __post_init__(self):
        if self.n_A <= 0 or self.n_B <= 0:
            raise ParameterError("graph sides must be nonempty")
        if len(self.adj_A) != self.n_A:
            raise ParameterError("adj_A length must equal n_A")
        cleaned = []
        for a, nbrs in enumerate(self.adj_A):
            arr = np.asarray(nbrs, dtype=np.int64)
            if arr.size and (arr.min() < 0 or arr.max() >= self.n_B):
                raise ParameterError(f"neighbor of left vertex {a} out of range")
            arr = np.sort(arr)
            if arr.size != np.unique(arr).size:
                raise ParameterError(f"left vertex {a} has a repeated neighbor")
            cleaned.append(arr)
        self.adj_A = cleaned
        if self.adj_B is None:
            back = [[] for _ in range(self.n_B)]
            for a, nbrs in enumerate(self.adj_A):
                for b in nbrs:
                    back[int(b)].append(a)
            self.adj_B = [np.asarray(sorted(x), dtype=np.int64) for x in back]

    @property
    def n_edges(self) -> int:
        return sum(len(x) for x in self.adj_A)

    def degree_A(self) -> np.ndarray:
        return np.asarray([len(x) for x in self.adj_A], dtype=np.int64)

    def degree_B(self) -> np.ndarray:
        return np.asarray([len(x) for x in self.adj_B], dtype=np.int64)

    @classmethod
    def from_biadjacency(cls, h: np.ndarray, d_A: int | None = None,
                         d_B: int | None = None) -> "BipartiteGraph":
        """Build from a 0/1 biadjacency matrix of shape (n_B, n_A).

        Rows index the right side B, columns the left side A, matching the
        parity-check convention for the seed code.  When the degrees are not
        passed, the per-side maxima are used.
        """
        h = np.asarray(h)
        if h.ndim != 2:
            raise ParameterError("biadjacency must be a matrix")
        n_b, n_a = h.shape
        adj_a = [np.flatnonzero(h[:, a]).astype(np.int64) for a in range(n_a)]
        if d_A is None:
            d_A = max((len(x) for x in adj_a), default=0)
        if d_B is None:
            d_B = int(max((int(h[b].sum()) for b in range(n_b)), default=0))
        return cls(n_A=n_a, n_B=n_b, d_A=int(d_A), d_B=int(d_B), adj_A=adj_a)

    def biadjacency(self) -> np.ndarray:
        """Dense 0/1 matrix of shape (n_B, n_A)."""
        h = np.zeros((self.n_B, self.n_A), dtype=np.uint8)
        for a, nbrs in enumerate(self.adj_A):
            h[nbrs, a] = 1
        return h

    def swap_sides(self) -> "BipartiteGraph":
        """Graph with the A and B roles exchanged."""
        return BipartiteGraph(n_A=self.n_B, n_B=self.n_A, d_A=self.d_B,
                              d_B=self.d_A, adj_A=[x.copy() for x in self.adj_B])


def sample_biregular(n_A: int, d_A: int, d_B: int, seed,
                     max_retries: int = 1000) -> BipartiteGraph:
    """Sample a simple (d_A, d_B)-biregular bipartite graph.

    Uses the configuration model: d_A stubs per left vertex matched to a
    uniformly permuted list of right stubs.  Multi-edges in the matching are
    removed by degree-preserving switches (swap the right endpoints of a
    duplicated edge and a random other edge when that creates no new
    duplicate), so dense degree pairs terminate quickly where whole-matching
    rejection would make the expected number of duplicates too large to ever
    draw a simple matching.

    Args:
        n_A: number of left vertices; n_B = n_A * d_A / d_B is implied.
        d_A: left degree.
        d_B: right degree; must divide n_A * d_A.
        seed: anything accepted by numpy's default_rng.
        max_retries: switch proposals per duplicate edge before giving up.

    Raises:
        ParameterError: degrees or sizes rule out a simple biregular graph.
        SamplingError: repair budget exhausted (callers may retry with
            another seed).
    """
    if d_A < 1 or d_B < 1:
        raise ParameterError("degrees must be >= 1")
    if (n_A * d_A) % d_B != 0:
        raise ParameterError(f"d_B={d_B} must divide n_A*d_A={n_A * d_A}")
    n_B = (n_A * d_A) // d_B
    if n_B < d_A or n_A < d_B:
        raise ParameterError(
            f"no simple graph: need n_B={n_B} >= d_A={d_A} and n_A={n_A} >= d_B={d_B}")

    rng = np.random.default_rng(seed)
    n_stubs = n_A * d_A
    left_stubs = np.repeat(np.arange(n_A, dtype=np.int64), d_A)
    right_stubs = np.repeat(np.arange(n_B, dtype=np.int64), d_B)
    perm = rng.permutation(right_stubs)

    edge_mult = {}
    for i in range(n_stubs):
        key = left_stubs[i] * n_B + perm[i]
        edge_mult[key] = edge_mult.get(key, 0) + 1

    def dup_stubs():
        return [i for i in range(n_stubs)
                if edge_mult[left_stubs[i] * n_B + perm[i]] > 1]

    bad = dup_stubs()
    budget = max_retries * max(len(bad), 1)
    attempts = 0
    while bad:
        if attempts >= budget:
            raise SamplingError(
                f"switch repair stalled after {attempts} proposals for "
                f"(n_A={n_A}, d_A={d_A}, d_B={d_B})")
        attempts += 1
        i = bad[int(rng.integers(len(bad)))]
        j = int(rng.integers(n_stubs))
        a_i, b_i = left_stubs[i], perm[i]
        a_j, b_j = left_stubs[j], perm[j]
        if a_i == a_j or b_i == b_j:
            continue
        if edge_mult.get(a_i * n_B + b_j, 0) or edge_mult.get(a_j * n_B + b_i, 0):
            continue
        for key in (a_i * n_B + b_i, a_j * n_B + b_j):
            edge_mult[key] -= 1
            if edge_mult[key] == 0:
                del edge_mult[key]
        perm[i], perm[j] = b_j, b_i
        edge_mult[a_i * n_B + b_j] = 1
        edge_mult[a_j * n_B + b_i] = 1
        bad = dup_stubs()

    adj = perm.reshape(n_A, d_A)
    return BipartiteGraph(n_A=n_A, n_B=n_B, d_A=d_A, d_B=d_B,
                          adj_A=[adj[a] for a in range(n_A)])


def check_biregular(g: BipartiteGraph) -> bool:
    """True when every left degree is exactly d_A and every right degree d_B."""
    if any(len(x) != g.d_A for x in g.adj_A):
        return False
    if any(len(x) != g.d_B for x in g.adj_B):
        return False
    return g.n_A * g.d_A == g.n_B * g.d_B


def expansion_profile(g: BipartiteGraph, side: str = "left",
                      max_subset_size: int = 3,
                      budget: int = DEFAULT_ENUM_BUDGET) -> dict:
    """Exact worst-case neighborhood sizes by brute force.

    Returns {s: min over |S| = s of |Gamma(S)|} for 1 <= s <= max_subset_size,
    where S ranges over one side.  This is the expansion oracle: a side is
    (gamma, delta)-expanding up to the enumerated range when the entry at
    each s <= gamma * n satisfies min >= (1 - delta) * d * s.

    Raises:
        BudgetError: the enumeration would exceed ``budget`` subsets.
        ParameterError: unknown side or bad subset size.
    """
    if side not in ("left", "right"):
        raise ParameterError(f"side must be 'left' or 'right', got {side!r}")
    adj = g.adj_A if side == "left" else g.adj_B
    n = len(adj)
    if max_subset_size < 1 or max_subset_size > n:
        raise ParameterError("max_subset_size out of range")
    total = sum(math.comb(n, s) for s in range(1, max_subset_size + 1))
    if total > budget:
        raise BudgetError(f"{total} subsets exceeds budget {budget}")

    masks = []
    for nbrs in adj:
        m = 0
        for v in nbrs:
            m |= 1 << int(v)
        masks.append(m)

    profile = {}
    for s in range(1, max_subset_size + 1):
        best = None
        for combo in combinations(range(n), s):
            union = 0
            for v in combo:
                union |= masks[v]
            size = union.bit_count()
            if best is None or size < best:
                best = size
        profile[s] = best
    return profile


def save_graph(g: BipartiteGraph, path) -> None:
    """Write the text format: header ``n_A n_B d_A d_B`` then one line of
    0-based neighbor indices per left vertex."""
    with open(path, "w") as fh:
        fh.write(f"{g.n_A} {g.n_B} {g.d_A} {g.d_B}\n")
        for nbrs in g.adj_A:
            fh.write(" ".join(str(int(b)) for b in nbrs) + "\n")


def load_graph(path) -> BipartiteGraph:
    """Read the format written by :func:`save_graph`."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 4:
            raise ParameterError(f"bad graph header in {path}")
        n_a, n_b, d_a, d_b = (int(x) for x in header)
        adj = []
        for _ in range(n_a):
            line = fh.readline()
            if line == "":
                raise ParameterError(f"truncated graph file {path}")
            adj.append([int(x) for x in line.split()])
    return BipartiteGraph(n_A=n_a, n_B=n_b, d_A=d_a, d_B=d_b, adj_A=adj)
