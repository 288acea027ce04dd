"""Hypergraph-product CSS codes built from a bipartite seed graph.

Given a seed graph with biadjacency H (shape n_B x n_A, rows = checks),
the code places qubits on A*A and B*B and check generators on the two
mixed blocks:

    H_X = [ I_{n_A} (x) H   |  H^T (x) I_{n_B} ]   rows = C_X = A x B
    H_Z = [ H (x) I_{n_A}   |  I_{n_B} (x) H^T ]   rows = C_Z = B x A

with (x) the Kronecker product over GF(2).  Row orthogonality
H_X H_Z^T = H^T (x) H + H^T (x) H = 0 holds for any seed.

Index layout (fixed, version tag below): qubit (alpha, a) in A*A maps to
alpha * n_A + a; qubit (b, beta) in B*B maps to n_A^2 + b * n_B + beta;
X-check (alpha, beta) to alpha * n_B + beta; Z-generator (b, a) to
b * n_A + a.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import bitset
from .errors import ParameterError
from .gf2 import Gf2Basis, Gf2Matrix, gf2_rank
from .graph import BipartiteGraph

LAYOUT_VERSION = "hgp-v1"


def _csr_arrays(m: sp.csr_matrix):
    # kron products come back in block form whose conversion to CSR keeps
    # explicit zero entries; drop them or every support is wrong
    m = m.tocsr().copy()
    m.sum_duplicates()
    m.eliminate_zeros()
    m.sort_indices()
    return m.indptr.astype(np.int64), m.indices.astype(np.int32)


@dataclass
class CssCode:
    """A hypergraph-product code plus the adjacency views the decoder needs.

    Attributes:
        graph: the seed graph.
        h_x, h_z: sparse check matrices (uint8 CSR, entries in {0,1}).
        q_x_ptr/q_x: qubit -> X-check incidence (CSR over qubits).
        q_z_ptr/q_z: qubit -> Z-generator incidence.
        c_x_ptr/c_x: X-check -> qubit supports.
        g_z_ptr/g_z: Z-generator -> qubit supports; within each generator the
            A*A-side qubits come first, then the B*B side, both ascending.
        x_masks: per-qubit X-check neighborhoods as bitset rows, used for
            word-parallel syndrome computation.
    """

    graph: BipartiteGraph
    layout: str
    n_A: int
    n_B: int
    n: int
    n_cx: int
    n_cz: int
    h_x: sp.csr_matrix = field(repr=False)
    h_z: sp.csr_matrix = field(repr=False)
    q_x_ptr: np.ndarray = field(repr=False)
    q_x: np.ndarray = field(repr=False)
    q_z_ptr: np.ndarray = field(repr=False)
    q_z: np.ndarray = field(repr=False)
    c_x_ptr: np.ndarray = field(repr=False)
    c_x: np.ndarray = field(repr=False)
    g_z_ptr: np.ndarray = field(repr=False)
    g_z: np.ndarray = field(repr=False)
    x_masks: np.ndarray = field(repr=False)
    _hz_basis: Gf2Basis = field(default=None, repr=False)

    @property
    def n_words_v(self) -> int:
        return bitset.n_words(self.n)

    @property
    def n_words_cx(self) -> int:
        return bitset.n_words(self.n_cx)

    # index arithmetic for the fixed layout
    def qubit_aa(self, alpha: int, a: int) -> int:
        return alpha * self.n_A + a

    def qubit_bb(self, b: int, beta: int) -> int:
        return self.n_A * self.n_A + b * self.n_B + beta

    def check_x(self, alpha: int, beta: int) -> int:
        return alpha * self.n_B + beta

    def gen_z(self, b: int, a: int) -> int:
        return b * self.n_A + a

    def qubit_label(self, v: int):
        """(block, i, j) for a qubit index; block is 'AA' or 'BB'."""
        naa = self.n_A * self.n_A
        if v < 0 or v >= self.n:
            raise ParameterError(f"qubit index {v} out of range")
        if v < naa:
            return ("AA", v // self.n_A, v % self.n_A)
        v -= naa
        return ("BB", v // self.n_B, v % self.n_B)

    def gen_sides(self, g: int):
        """Split a Z-generator's support into (A*A side, B*B side) arrays."""
        sup = self.g_z[self.g_z_ptr[g]:self.g_z_ptr[g + 1]]
        naa = self.n_A * self.n_A
        cut = int(np.searchsorted(sup, naa))
        return sup[:cut], sup[cut:]

    def hz_row_space(self) -> Gf2Basis:
        """Echelon basis of the Z-stabilizer row space (cached)."""
        if self._hz_basis is None:
            self._hz_basis = Gf2Basis.from_matrix(Gf2Matrix.from_csr(self.h_z))
        return self._hz_basis


def build_code(g: BipartiteGraph) -> CssCode:
    """Construct the hypergraph-product code of a seed graph.

    Works for irregular seeds too; all the structural facts that depend on
    biregularity (uniform generator weight d_A + d_B, the decoder's constants)
    simply degrade to per-generator local degrees.
    """
    h = sp.csr_matrix(g.biadjacency().astype(np.uint8))
    n_a, n_b = g.n_A, g.n_B
    i_a = sp.identity(n_a, dtype=np.uint8, format="csr")
    i_b = sp.identity(n_b, dtype=np.uint8, format="csr")

    h_x = sp.hstack([sp.kron(i_a, h, format="csr"),
                     sp.kron(h.T, i_b, format="csr")], format="csr")
    h_z = sp.hstack([sp.kron(h, i_a, format="csr"),
                     sp.kron(i_b, h.T, format="csr")], format="csr")
    for m in (h_x, h_z):
        m.sum_duplicates()
        m.eliminate_zeros()
        m.sort_indices()

    n = n_a * n_a + n_b * n_b
    c_x_ptr, c_x = _csr_arrays(h_x)
    g_z_ptr, g_z = _csr_arrays(h_z)
    q_x_ptr, q_x = _csr_arrays(h_x.T.tocsr())
    q_z_ptr, q_z = _csr_arrays(h_z.T.tocsr())

    n_cx = n_a * n_b
    words = bitset.n_words(n_cx)
    x_masks = np.zeros((n, words), dtype=np.uint64)
    counts = np.diff(q_x_ptr)
    rows = np.repeat(np.arange(n, dtype=np.int64), counts)
    idx = q_x.astype(np.int64)
    np.bitwise_or.at(x_masks, (rows, idx >> 6),
                     np.uint64(1) << (idx & 63).astype(np.uint64))

    return CssCode(
        graph=g, layout=LAYOUT_VERSION,
        n_A=n_a, n_B=n_b, n=n, n_cx=n_cx, n_cz=n_cx,
        h_x=h_x, h_z=h_z,
        q_x_ptr=q_x_ptr, q_x=q_x, q_z_ptr=q_z_ptr, q_z=q_z,
        c_x_ptr=c_x_ptr, c_x=c_x, g_z_ptr=g_z_ptr, g_z=g_z,
        x_masks=x_masks,
    )


def swap_roles(code: CssCode) -> CssCode:
    """Code with X and Z roles exchanged (decode Z errors via the X path)."""
    return build_code(code.graph.swap_sides())


def syndrome_x(code: CssCode, e_words: np.ndarray) -> np.ndarray:
    """X-type syndrome sigma_X(E) of an error bitset, as a bitset over C_X."""
    idx = bitset.to_indices(e_words, code.n)
    if idx.size == 0:
        return bitset.zeros(code.n_cx)
    return np.bitwise_xor.reduce(code.x_masks[idx], axis=0)


def css_orthogonality_violations(code: CssCode) -> int:
    """Number of odd entries of H_X H_Z^T; zero for a valid CSS pair."""
    prod = (code.h_x.astype(np.int64) @ code.h_z.T.astype(np.int64)).tocoo()
    return int(np.count_nonzero(prod.data % 2))


def code_dimension(code: CssCode) -> int:
    """Number of logical qubits k = n - rank(H_X) - rank(H_Z)."""
    rx = gf2_rank(Gf2Matrix.from_csr(code.h_x))
    rz = gf2_rank(Gf2Matrix.from_csr(code.h_z))
    return code.n - rx - rz
