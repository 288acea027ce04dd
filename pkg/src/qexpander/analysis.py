"""Structural oracles for decoding experiments.

Everything here exists to verify properties of codes and decoder runs, not
to decode at scale: residual classification against the stabilizer row
space, the syndrome adjacency graph and its connected-subset searches, a
locality comparison of restricted vs full decoder runs, and brute-force
minimum-weight decoding at toy size.  The exponential searches carry hard
size caps and refuse inputs beyond them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bitset
from .code import CssCode, syndrome_x
from .constants import to_fraction
from .decoder import FlipTable, decode_beta
from .errors import BudgetError, ParameterError, PreconditionError


@dataclass(frozen=True)
class OutcomeClass:
    """Residual classification of a decoding attempt.

    kind is one of:
      * ``exact``: the estimate equals the error;
      * ``stabilizer_equivalent``: nonzero residual inside the Z-stabilizer
        row space (acts trivially on the code space);
      * ``logical_failure``: zero residual syndrome but the residual is not
        a stabilizer, so a logical operator was applied;
      * ``syndrome_nonzero``: the residual still trips some X check.
    """

    kind: str
    residual_weight: int

    @property
    def success(self) -> bool:
        return self.kind in ("exact", "stabilizer_equivalent")


def classify(code: CssCode, e_words: np.ndarray,
             e_hat_words: np.ndarray) -> OutcomeClass:
    """Classify the residual e xor e_hat against the code structure."""
    r = e_words ^ e_hat_words
    w = bitset.popcount(r)
    if not bitset.is_zero(syndrome_x(code, r)):
        return OutcomeClass(kind="syndrome_nonzero", residual_weight=w)
    if w == 0:
        return OutcomeClass(kind="exact", residual_weight=0)
    r_int = int.from_bytes(r.tobytes(), "little")
    if code.hz_row_space().contains(r_int):
        return OutcomeClass(kind="stabilizer_equivalent", residual_weight=w)
    return OutcomeClass(kind="logical_failure", residual_weight=w)


def normalized_weight(code: CssCode, e_words: np.ndarray, d_A: int,
                      d_B: int) -> Fraction:
    """|E on A*A| / d_B + |E on B*B| / d_A, as an exact rational."""
    naa = code.n_A * code.n_A
    idx = bitset.to_indices(e_words, code.n)
    aa = int(np.count_nonzero(idx < naa))
    return Fraction(aa, d_B) + Fraction(int(idx.size) - aa, d_A)


@dataclass
class SyndromeAdjacencyGraph:
    """Qubits and X-checks with the adjacency the locality arguments use.

    Vertices 0..n-1 are qubits, n..n+n_cx-1 are X-checks.  A qubit is
    adjacent to its X-checks, and two qubits are adjacent when they share
    an X-check or a Z-generator.
    """

    n_qubits: int
    n_checks: int
    adj_ptr: np.ndarray = field(repr=False)
    adj: np.ndarray = field(repr=False)
    max_degree: int

    @property
    def n_vertices(self) -> int:
        return self.n_qubits + self.n_checks

    def neighbors(self, v: int) -> np.ndarray:
        return self.adj[self.adj_ptr[v]:self.adj_ptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.adj_ptr[v + 1] - self.adj_ptr[v])

    def is_qubit(self, v: int) -> bool:
        return 0 <= v < self.n_qubits

    def check_vertex(self, c: int) -> int:
        return self.n_qubits + c


def build_syndrome_graph(code: CssCode) -> SyndromeAdjacencyGraph:
    """Construct the syndrome adjacency graph of a code."""
    n, n_cx = code.n, code.n_cx
    us, vs = [], []

    checks = np.repeat(np.arange(n_cx, dtype=np.int64), np.diff(code.c_x_ptr))
    us.append(code.c_x.astype(np.int64))
    vs.append(n + checks)

    for ptr, idx in ((code.c_x_ptr, code.c_x), (code.g_z_ptr, code.g_z)):
        for r in range(ptr.shape[0] - 1):
            sup = idx[ptr[r]:ptr[r + 1]].astype(np.int64)
            if sup.shape[0] < 2:
                continue
            i, j = np.triu_indices(sup.shape[0], k=1)
            us.append(sup[i])
            vs.append(sup[j])

    u = np.concatenate(us)
    v = np.concatenate(vs)
    n_vert = n + n_cx
    keys = np.unique(np.concatenate([u * n_vert + v, v * n_vert + u]))
    src = (keys // n_vert).astype(np.int64)
    dst = (keys % n_vert).astype(np.int64)

    counts = np.bincount(src, minlength=n_vert)
    adj_ptr = np.zeros(n_vert + 1, np.int64)
    np.cumsum(counts, out=adj_ptr[1:])
    return SyndromeAdjacencyGraph(
        n_qubits=n, n_checks=n_cx, adj_ptr=adj_ptr, adj=dst.astype(np.int32),
        max_degree=int(counts.max()) if n_vert else 0)


def connected_components(sgraph: SyndromeAdjacencyGraph, vertices) -> list:
    """Components of the induced subgraph on a vertex subset.

    Returns sorted index arrays, ordered by their smallest vertex.
    """
    vset = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if vset.size and (vset[0] < 0 or vset[-1] >= sgraph.n_vertices):
        raise ParameterError("vertex index out of range")
    member = np.zeros(sgraph.n_vertices, dtype=bool)
    member[vset] = True
    seen = np.zeros(sgraph.n_vertices, dtype=bool)
    out = []
    for start in vset:
        if seen[start]:
            continue
        comp = []
        queue = deque([int(start)])
        seen[start] = True
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in sgraph.neighbors(x):
                y = int(y)
                if member[y] and not seen[y]:
                    seen[y] = True
                    queue.append(y)
        out.append(np.asarray(sorted(comp), dtype=np.int64))
    return out


def _connected_subsets(sgraph: SyndromeAdjacencyGraph, allowed, size_cap: int):
    """Yield every connected subset of ``allowed`` with 1 <= size <= cap.

    Each subset appears exactly once: subsets are rooted at their minimum
    vertex and extended only through larger vertices, with a banned set to
    kill mirror orderings.
    """
    allowed = sorted(int(v) for v in allowed)
    allow = set(allowed)

    def rec(sub, cand, banned):
        yield tuple(sub)
        if len(sub) == size_cap:
            return
        local_banned = set(banned)
        for uu in sorted(cand):
            if uu in local_banned:
                continue
            grow = {int(w) for w in sgraph.neighbors(uu)
                    if int(w) in allow and int(w) > sub[0]}
            new_cand = (cand | grow) - set(sub) - local_banned - {uu}
            sub.append(uu)
            yield from rec(sub, new_cand, local_banned)
            sub.pop()
            local_banned.add(uu)

    for v in allowed:
        first = {int(w) for w in sgraph.neighbors(v)
                 if int(w) in allow and int(w) > v}
        yield from rec([v], first, set())


def max_conn_alpha(sgraph: SyndromeAdjacencyGraph, e_vertices, alpha,
                   size_cap: int = 12) -> tuple:
    """Largest connected X (within the cap) with |X and E| >= alpha |X|.

    Connected subsets are enumerated over E plus its distance-<=1
    surroundings grown transitively; any qualifying X is connected and each
    of its vertices is reachable, so it suffices to search subsets of the
    component-closure of E in the whole graph.  Returns (size, capped);
    when capped is True a qualifying subset of exactly ``size_cap`` exists
    and larger ones may too, so the true value is >= the reported one.

    Raises:
        BudgetError: the closure to search is too large for the cap to be
            affordable (guards against accidental huge inputs).
    """
    alpha = to_fraction(alpha)
    if alpha <= 0:
        raise ParameterError("alpha must be positive")
    e_set = {int(v) for v in e_vertices}
    if not e_set:
        return 0, False
    # X must be connected and satisfy |X ∩ E| >= alpha|X| > 0, so X touches
    # E and lives in the connected closure of E.
    closure = set()
    queue = deque(e_set)
    while queue:
        x = queue.popleft()
        if x in closure:
            continue
        closure.add(x)
        for y in sgraph.neighbors(x):
            if int(y) not in closure:
                queue.append(int(y))
    if len(closure) > 4000 and size_cap > 3:
        raise BudgetError(
            f"connected closure has {len(closure)} vertices; "
            f"max_conn_alpha is a toy-scale oracle")
    best = 0
    capped = False
    num, den = alpha.numerator, alpha.denominator
    for sub in _connected_subsets(sgraph, closure, size_cap):
        hits = sum(1 for x in sub if x in e_set)
        if hits * den >= num * len(sub):
            if len(sub) > best:
                best = len(sub)
            if len(sub) == size_cap:
                capped = True
    return best, capped


def neighborhood(sgraph: SyndromeAdjacencyGraph, vertices) -> set:
    """Open neighborhood: union of neighbor sets, members not implied."""
    out = set()
    for v in vertices:
        out.update(int(w) for w in sgraph.neighbors(int(v)))
    return out


def locality_check(code: CssCode, table: FlipTable, e_words: np.ndarray,
                   d_words: np.ndarray, k_words: np.ndarray, beta,
                   sgraph: SyndromeAdjacencyGraph | None = None) -> bool:
    """Compare a decoder run restricted to a separated region with the full run.

    Runs decode_beta on (E, D) and on (E and K, D and Gamma_X(K)), then
    checks that the restricted run's flip sequence equals the full run's
    flips that lie inside K, in order.

    Pre: in the syndrome adjacency graph, the open neighborhoods of K and
    of U \\ K are disjoint, where U = E union all flipped sets of the full
    run.  Raises PreconditionError otherwise.
    """
    if sgraph is None:
        sgraph = build_syndrome_graph(code)
    sigma0 = syndrome_x(code, e_words) ^ d_words
    full = decode_beta(code, table, sigma0, beta)

    u_words = e_words | full.flip_union
    k_in = bitset.to_indices(k_words, code.n)
    rest = bitset.to_indices(u_words & ~k_words, code.n)
    if neighborhood(sgraph, k_in) & neighborhood(sgraph, rest):
        raise PreconditionError(
            "K and the rest of the run support have intersecting "
            "neighborhoods; the locality comparison is not defined")

    gamma_k = bitset.zeros(code.n_cx)
    if k_in.size:
        gamma_k = np.bitwise_or.reduce(code.x_masks[k_in], axis=0)
    sigma_r = syndrome_x(code, e_words & k_words) ^ (d_words & gamma_k)
    restricted = decode_beta(code, table, sigma_r, beta)

    kept = []
    for i in range(full.n_flips):
        g = int(full.flip_gen[i])
        fm = int(full.flip_fmask[i])
        qubits = table.flip_qubits(g, fm)
        inside = [bitset.get_bit(k_words, int(q)) for q in qubits]
        if all(inside):
            kept.append((g, fm))
        elif any(inside):
            return False
    got = [(int(restricted.flip_gen[i]), int(restricted.flip_fmask[i]))
           for i in range(restricted.n_flips)]
    return got == kept


def find_witness(sgraph: SyndromeAdjacencyGraph, code: CssCode, s_qubits,
                 d_words: np.ndarray, c, size_cap: int = 12):
    """Search for a qubit set W containing S, every component of W meeting
    S, with |W| <= c * |D and Gamma_X(W)|.

    Breadth-first over supersets of S grown through qubit-qubit adjacency,
    so the first hit has minimum size.  Returns a sorted qubit index array,
    or None when no witness of size <= size_cap exists.
    """
    c = to_fraction(c)
    s = sorted({int(q) for q in s_qubits})
    for q in s:
        if not sgraph.is_qubit(q):
            raise ParameterError("witness seeds must be qubit vertices")
    if not s:
        return np.zeros(0, dtype=np.int64)
    if len(s) > size_cap:
        return None

    def qualifies(w_tuple) -> bool:
        masks = code.x_masks[np.asarray(w_tuple, dtype=np.int64)]
        gamma = np.bitwise_or.reduce(masks, axis=0)
        hit = bitset.intersection_size(d_words, gamma)
        return len(w_tuple) * c.denominator <= c.numerator * hit

    start = tuple(s)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        if qualifies(w):
            return np.asarray(w, dtype=np.int64)
        if len(w) == size_cap:
            continue
        frontier = set()
        for x in w:
            for y in sgraph.neighbors(x):
                y = int(y)
                if sgraph.is_qubit(y) and y not in w:
                    frontier.add(y)
        for y in sorted(frontier):
            nxt = tuple(sorted(w + (y,)))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return None


def brute_force_decode(code: CssCode, sigma_words: np.ndarray,
                       weight_cap: int = 4):
    """Minimum-weight error with the given syndrome, by exhaustion.

    Returns a qubit bitset, or None when no error of weight <= weight_cap
    has that syndrome.  Feasible only for toy codes.

    Raises:
        BudgetError: the enumeration would exceed ~10^7 candidates.
    """
    from itertools import combinations
    from math import comb

    total = sum(comb(code.n, w) for w in range(weight_cap + 1))
    if total > 10_000_000:
        raise BudgetError(
            f"{total} candidates above the brute-force budget")
    if bitset.is_zero(sigma_words):
        return bitset.zeros(code.n)
    for w in range(1, weight_cap + 1):
        for combo in combinations(range(code.n), w):
            acc = code.x_masks[combo[0]].copy()
            for q in combo[1:]:
                acc ^= code.x_masks[q]
            if bitset.equal(acc, sigma_words):
                return bitset.from_indices(np.asarray(combo, dtype=np.int64),
                                           code.n)
    return None


def coset_minimum_weight(code: CssCode, r_words: np.ndarray,
                         max_generators: int = 20) -> int:
    """Minimum Hamming weight over r + row_space(H_Z), by full enumeration.

    2^(number of generators) combinations; toy codes only.
    """
    if code.n_cz > max_generators:
        raise BudgetError(
            f"{code.n_cz} generators is beyond the coset enumeration cap")
    rows = []
    for g in range(code.n_cz):
        sup = code.g_z[code.g_z_ptr[g]:code.g_z_ptr[g + 1]]
        rows.append(bitset.from_indices(sup.astype(np.int64), code.n))
    best = bitset.popcount(r_words)
    for mask in range(1, 1 << code.n_cz):
        acc = r_words.copy()
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            acc ^= rows[i]
            m &= m - 1
        w = bitset.popcount(acc)
        if w < best:
            best = w
    return best
