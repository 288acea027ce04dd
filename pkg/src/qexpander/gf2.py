"""GF(2) linear algebra on bit-packed rows.

Matrices are stored sparsely (sorted column indices per row) and converted
to Python integers for elimination: XOR on big ints is word-parallel, which
keeps rank computations on the code's check matrices (thousands of columns)
in the test path fast enough without a compiled extension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass
class Gf2Matrix:
    """Sparse GF(2) matrix: row supports as sorted index arrays."""

    rows: int
    cols: int
    row_supports: list

    def __post_init__(self):
        if len(self.row_supports) != self.rows:
            raise ParameterError("row count does not match supports")
        cleaned = []
        for r, sup in enumerate(self.row_supports):
            arr = np.unique(np.asarray(sup, dtype=np.int64))
            if arr.size and (arr[0] < 0 or arr[-1] >= self.cols):
                raise ParameterError(f"column index out of range in row {r}")
            cleaned.append(arr)
        self.row_supports = cleaned

    @classmethod
    def from_dense(cls, arr) -> "Gf2Matrix":
        arr = np.asarray(arr)
        supports = [np.flatnonzero(arr[r] % 2) for r in range(arr.shape[0])]
        return cls(rows=arr.shape[0], cols=arr.shape[1], row_supports=supports)

    @classmethod
    def from_csr(cls, m) -> "Gf2Matrix":
        """From a scipy sparse matrix, reading entries modulo 2.

        Robust to stored duplicates and explicit zeros, which sparse kron
        and format conversions are free to produce.
        """
        m = m.tocsr().copy()
        m.sum_duplicates()
        supports = []
        for r in range(m.shape[0]):
            cols = m.indices[m.indptr[r]:m.indptr[r + 1]]
            vals = m.data[m.indptr[r]:m.indptr[r + 1]]
            supports.append(cols[vals % 2 == 1])
        return cls(rows=m.shape[0], cols=m.shape[1], row_supports=supports)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for r, sup in enumerate(self.row_supports):
            out[r, sup] = 1
        return out

    def int_rows(self) -> list:
        """Rows as Python integers, bit i = column i."""
        out = []
        for sup in self.row_supports:
            r = 0
            for c in sup:
                r |= 1 << int(c)
            out.append(r)
        return out


class Gf2Basis:
    """Row-echelon basis of a row space, for repeated membership tests.

    Pivots are the highest set bit of each stored row; reduction of a query
    vector against the pivot map decides membership in O(rank) XORs.
    """

    def __init__(self):
        self._pivot_rows = {}

    @classmethod
    def from_matrix(cls, m: Gf2Matrix) -> "Gf2Basis":
        basis = cls()
        for r in m.int_rows():
            basis.add(r)
        return basis

    @property
    def rank(self) -> int:
        return len(self._pivot_rows)

    def reduce(self, v: int) -> int:
        """Remainder of v after elimination against the basis."""
        while v:
            p = v.bit_length() - 1
            row = self._pivot_rows.get(p)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        """Insert v; returns True when it enlarged the basis."""
        v = self.reduce(v)
        if v == 0:
            return False
        self._pivot_rows[v.bit_length() - 1] = v
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0


def gf2_rank(m: Gf2Matrix) -> int:
    """Rank of the matrix over GF(2)."""
    return Gf2Basis.from_matrix(m).rank


def _vector_to_int(v, cols: int) -> int:
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] != cols:
        raise ParameterError(f"vector length {v.shape} does not match cols {cols}")
    out = 0
    for c in np.flatnonzero(v % 2):
        out |= 1 << int(c)
    return out


def in_row_space(m: Gf2Matrix, v, basis: Gf2Basis | None = None) -> bool:
    """Membership of a 0/1 vector in the row space of m.

    Passing a prebuilt basis skips the elimination of m, which matters when
    testing many vectors against the same matrix.
    """
    vi = _vector_to_int(v, m.cols)
    if basis is None:
        basis = Gf2Basis.from_matrix(m)
    return basis.contains(vi)
