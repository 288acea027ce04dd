"""Small-set-flip decoding for hypergraph-product codes.

A Z-type generator g = (b, a) touches the qubits {(alpha, a): alpha in
Gamma(b)} on the A*A side and {(b, beta): beta in Gamma(a)} on the B*B
side.  Every X-check that any of those qubits can trip lies in the product
grid Gamma(b) x Gamma(a), and inside that grid the syndrome of a flip
F = (rows S_r, columns S_c) is the XOR pattern [i in S_r] ^ [j in S_c].
The local picture therefore depends only on the degree pair
(|Gamma(b)|, |Gamma(a)|), so candidate flips are enumerated once per degree
class and shared by every generator of that class.

Candidate sets:
  * the full store keeps every nonempty F (the greedy ratio decoder
    searches it);
  * the threshold store keeps the F with 2*|sigma_X(F)| >= deg_a * |F|
    (the beta and parallel decoders search only these; for any F either it
    or its complement within the generator passes this test).

All three decoders are deterministic.  Ties break by maximal gain (the
ratio decoder compares delta/|F| by cross-multiplication), then smallest
|F|, then lowest generator index, then smallest local qubit mask, where
support bit k maps to the k-th qubit of the generator in ascending global
order.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bitset
from ._kernels import ACTIVE
from .code import CssCode
from .constants import ConstantsLedger, to_fraction
from .errors import CapacityError, InvariantViolation, ParameterError

MAX_SUPPORT_DEFAULT = 22
_MASK64 = (1 << 64) - 1
_FIXPOINT_BUDGET = 1 << 62


@functools.lru_cache(maxsize=128)
def _class_candidates(db: int, da: int):
    """Candidate tables for one degree class (db rows, da columns).

    Returns a dict of numpy arrays for the full and threshold stores, each
    sorted by (signature size, flip size, mask) so a signature-size cutoff
    is a contiguous prefix, plus the per-size offset arrays.
    """
    n_sup = db + da
    gb = db * da
    row_full = (1 << da) - 1
    row_sig = [row_full << (i * da) for i in range(db)]
    col_sig = []
    for j in range(da):
        m = 0
        for i in range(db):
            m |= 1 << (i * da + j)
        col_sig.append(m)

    n_cand = (1 << n_sup) - 1
    lo = np.zeros(n_cand, np.uint64)
    hi = np.zeros(n_cand, np.uint64)
    fmask = np.zeros(n_cand, np.uint32)
    fsize = np.zeros(n_cand, np.int32)
    ssize = np.zeros(n_cand, np.int32)
    inf = np.zeros(n_cand, np.uint8)
    for fm in range(1, 1 << n_sup):
        sig = 0
        for k in range(db):
            if (fm >> k) & 1:
                sig ^= row_sig[k]
        for j in range(da):
            if (fm >> (db + j)) & 1:
                sig ^= col_sig[j]
        i = fm - 1
        lo[i] = sig & _MASK64
        hi[i] = sig >> 64
        fmask[i] = fm
        fsize[i] = fm.bit_count()
        ssize[i] = sig.bit_count()
        inf[i] = 1 if 2 * sig.bit_count() >= da * fm.bit_count() else 0

    def _sorted_store(sel):
        order = np.lexsort((fmask[sel], fsize[sel], ssize[sel]))
        s_lo, s_hi = lo[sel][order], hi[sel][order]
        s_fm, s_fs = fmask[sel][order], fsize[sel][order]
        s_ss = ssize[sel][order]
        soff = np.searchsorted(s_ss, np.arange(gb + 2), side="left").astype(np.int64)
        return s_lo, s_hi, s_fm, s_fs, s_ss, soff

    every = np.ones(n_cand, dtype=bool)
    full = _sorted_store(every)
    filt = _sorted_store(inf.astype(bool))
    return {"full": full, "filt": filt, "inf_count": int(inf.sum()),
            "row_sig": row_sig, "col_sig": col_sig}


@dataclass
class FlipTable:
    """Precomputed flip candidates and adjacency for one code.

    Stores are concatenated over degree classes; ``*_ptr`` delimits each
    class and ``*_soff`` holds per-class absolute offsets indexed by
    signature size.  ``chk_gen`` maps an X-check to every generator whose
    window grid contains it (used for dirty tracking and coloring).
    """

    n_gen: int
    n_cx: int
    n_v: int
    classes: list
    gen_class: np.ndarray = field(repr=False)
    gen_sup_ptr: np.ndarray = field(repr=False)
    gen_sup: np.ndarray = field(repr=False)
    gen_win_ptr: np.ndarray = field(repr=False)
    gen_win: np.ndarray = field(repr=False)
    chk_gen_ptr: np.ndarray = field(repr=False)
    chk_gen: np.ndarray = field(repr=False)
    f0_ptr: np.ndarray = field(repr=False)
    f0_soff_ptr: np.ndarray = field(repr=False)
    f0_soff: np.ndarray = field(repr=False)
    f0_lo: np.ndarray = field(repr=False)
    f0_hi: np.ndarray = field(repr=False)
    f0_fmask: np.ndarray = field(repr=False)
    f0_fsize: np.ndarray = field(repr=False)
    f0_ssize: np.ndarray = field(repr=False)
    fl_ptr: np.ndarray = field(repr=False)
    fl_soff_ptr: np.ndarray = field(repr=False)
    fl_soff: np.ndarray = field(repr=False)
    fl_lo: np.ndarray = field(repr=False)
    fl_hi: np.ndarray = field(repr=False)
    fl_fmask: np.ndarray = field(repr=False)
    fl_fsize: np.ndarray = field(repr=False)
    fl_ssize: np.ndarray = field(repr=False)

    def support(self, g: int) -> np.ndarray:
        return self.gen_sup[self.gen_sup_ptr[g]:self.gen_sup_ptr[g + 1]]

    def window(self, g: int) -> np.ndarray:
        return self.gen_win[self.gen_win_ptr[g]:self.gen_win_ptr[g + 1]]

    def degrees(self, g: int) -> tuple:
        return self.classes[self.gen_class[g]]

    def full_range(self, cls: int) -> tuple:
        return int(self.f0_ptr[cls]), int(self.f0_ptr[cls + 1])

    def filtered_range(self, cls: int) -> tuple:
        return int(self.fl_ptr[cls]), int(self.fl_ptr[cls + 1])

    def flip_qubits(self, g: int, fmask: int) -> np.ndarray:
        """Global qubit indices of a flip given its local support mask."""
        sup = self.support(g)
        fmask = int(fmask)
        return np.asarray([int(sup[k]) for k in range(sup.shape[0])
                           if (fmask >> k) & 1], dtype=np.int64)

    def local_signature(self, g: int, fmask: int) -> int:
        """sigma_X(F) of a flip as a Python-int mask over the window grid."""
        db, da = self.degrees(g)
        cand = _class_candidates(db, da)
        sig = 0
        fmask = int(fmask)
        for k in range(db):
            if (fmask >> k) & 1:
                sig ^= cand["row_sig"][k]
        for j in range(da):
            if (fmask >> (db + j)) & 1:
                sig ^= cand["col_sig"][j]
        return sig

    def gather_window(self, sigma: np.ndarray, g: int) -> int:
        """Restriction of a syndrome bitset to the generator's grid."""
        w = 0
        for t, c in enumerate(self.window(g)):
            if bitset.get_bit(sigma, int(c)):
                w |= 1 << t
        return w

    def delta(self, sigma: np.ndarray, g: int, fmask: int) -> int:
        """Syndrome weight change |sigma| - |sigma ^ sigma_X(F)| of a flip.

        Equals 2*|sigma & sigma_X(F)| - |sigma_X(F)|; computed locally from
        the window grid, which is exact because sigma_X(F) lives inside it.
        """
        sig = self.local_signature(g, fmask)
        w = self.gather_window(sigma, g)
        return 2 * (w & sig).bit_count() - sig.bit_count()


def precompute_flips(code: CssCode,
                     max_support: int = MAX_SUPPORT_DEFAULT) -> FlipTable:
    """Build the flip table for a code.

    Raises:
        CapacityError: a generator support exceeds ``max_support`` qubits
            (candidate enumeration is 2^support) or its window grid exceeds
            128 bits.
        InvariantViolation: the code's stored generator supports disagree
            with the seed graph adjacency (corrupted construction).
    """
    g = code.graph
    n_a, n_b = code.n_A, code.n_B
    n_gen = code.n_cz
    naa = n_a * n_a

    class_ids: dict = {}
    classes: list = []
    gen_class = np.empty(n_gen, np.int64)
    win_ptr = np.zeros(n_gen + 1, np.int64)
    win_parts = []
    for gi in range(n_gen):
        b, a = divmod(gi, n_a)
        rows = g.adj_B[b]
        cols = g.adj_A[a]
        db, da = len(rows), len(cols)
        if db + da > max_support:
            raise CapacityError(
                f"generator support {db + da} exceeds enumeration cap {max_support}")
        if db * da > 128:
            raise CapacityError(f"window grid {db}x{da} exceeds 128 bits")
        key = (db, da)
        if key not in class_ids:
            class_ids[key] = len(classes)
            classes.append(key)
        gen_class[gi] = class_ids[key]
        win = (rows * n_b)[:, None] + cols[None, :]
        win_parts.append(win.reshape(-1).astype(np.int32))
        win_ptr[gi + 1] = win_ptr[gi] + db * da

        sup = code.g_z[code.g_z_ptr[gi]:code.g_z_ptr[gi + 1]]
        expect = np.concatenate([rows * n_a + a, naa + b * n_b + cols])
        if not np.array_equal(sup, expect):
            raise InvariantViolation(
                f"generator {gi} support does not match seed adjacency")

    gen_win = (np.concatenate(win_parts) if win_parts
               else np.zeros(0, np.int32))

    counts = np.bincount(gen_win, minlength=code.n_cx)
    chk_gen_ptr = np.zeros(code.n_cx + 1, np.int64)
    np.cumsum(counts, out=chk_gen_ptr[1:])
    gen_of_entry = np.repeat(np.arange(n_gen, dtype=np.int64),
                             np.diff(win_ptr))
    order = np.argsort(gen_win, kind="stable")
    chk_gen = gen_of_entry[order].astype(np.int32)

    def _concat(store_key):
        ptr = np.zeros(len(classes) + 1, np.int64)
        soff_ptr = np.zeros(len(classes) + 1, np.int64)
        los, his, fms, fss, sss, soffs = [], [], [], [], [], []
        for ci, (db, da) in enumerate(classes):
            s_lo, s_hi, s_fm, s_fs, s_ss, soff = _class_candidates(db, da)[store_key]
            ptr[ci + 1] = ptr[ci] + s_lo.shape[0]
            soff_ptr[ci + 1] = soff_ptr[ci] + soff.shape[0]
            los.append(s_lo)
            his.append(s_hi)
            fms.append(s_fm)
            fss.append(s_fs)
            sss.append(s_ss)
            soffs.append(soff + ptr[ci])
        cat = lambda parts, dt: (np.concatenate(parts).astype(dt) if parts
                                 else np.zeros(0, dt))
        return (ptr, soff_ptr, cat(soffs, np.int64), cat(los, np.uint64),
                cat(his, np.uint64), cat(fms, np.uint32), cat(fss, np.int32),
                cat(sss, np.int32))

    f0 = _concat("full")
    fl = _concat("filt")
    return FlipTable(
        n_gen=n_gen, n_cx=code.n_cx, n_v=code.n,
        classes=classes, gen_class=gen_class,
        gen_sup_ptr=code.g_z_ptr.astype(np.int64),
        gen_sup=code.g_z.astype(np.int32),
        gen_win_ptr=win_ptr, gen_win=gen_win,
        chk_gen_ptr=chk_gen_ptr, chk_gen=chk_gen,
        f0_ptr=f0[0], f0_soff_ptr=f0[1], f0_soff=f0[2], f0_lo=f0[3],
        f0_hi=f0[4], f0_fmask=f0[5], f0_fsize=f0[6], f0_ssize=f0[7],
        fl_ptr=fl[0], fl_soff_ptr=fl[1], fl_soff=fl[2], fl_lo=fl[3],
        fl_hi=fl[4], fl_fmask=fl[5], fl_fsize=fl[6], fl_ssize=fl[7],
    )


@dataclass
class DecodeOutcome:
    """Result of one decoding run.

    The flip log is parallel arrays: entry i applied the flip with local
    mask ``flip_fmask[i]`` at generator ``flip_gen[i]`` during step
    ``flip_step[i]`` (color ``flip_color[i]``, -1 for sequential variants),
    improving the syndrome weight by ``flip_delta[i]``.  ``sigma_trace``
    records the syndrome weight after every executed step, starting at the
    input weight.
    """

    variant: str
    e_hat: np.ndarray = field(repr=False)
    sigma_final: np.ndarray = field(repr=False)
    steps: int
    executed_steps: int
    terminated_by: str
    beta: Fraction | None
    flip_step: np.ndarray = field(repr=False)
    flip_color: np.ndarray = field(repr=False)
    flip_gen: np.ndarray = field(repr=False)
    flip_fmask: np.ndarray = field(repr=False)
    flip_delta: np.ndarray = field(repr=False)
    sigma_trace: np.ndarray = field(repr=False)
    flip_union: np.ndarray = field(repr=False)
    additivity_mismatches: int = 0
    budget: int | None = None

    @property
    def n_flips(self) -> int:
        return int(self.flip_gen.shape[0])

    @property
    def converged(self) -> bool:
        return bitset.is_zero(self.sigma_final)

    def execution_support(self, e_words: np.ndarray) -> np.ndarray:
        """Union of the true error with every flipped set."""
        return e_words | self.flip_union


def _beta_pair(beta) -> tuple:
    fr = to_fraction(beta)
    if not (0 < fr <= 1):
        raise ParameterError(f"beta must be in (0, 1], got {fr}")
    return fr, int(fr.numerator), int(fr.denominator)


def _check_sigma(table: FlipTable, sigma: np.ndarray) -> None:
    if sigma.dtype != np.uint64 or sigma.shape[0] != bitset.n_words(table.n_cx):
        raise ParameterError("sigma must be a uint64 bitset over the X checks")


def _flip_union(table: FlipTable, gens, fmasks, n_v: int) -> np.ndarray:
    u = bitset.zeros(n_v)
    for g, fm in zip(gens, fmasks):
        for v in table.flip_qubits(int(g), int(fm)):
            u[v >> 6] |= np.uint64(1) << np.uint64(v & 63)
    return u


def decode_beta(code: CssCode, table: FlipTable, sigma: np.ndarray,
                beta) -> DecodeOutcome:
    """Sequential threshold decoding.

    Repeatedly applies the best flip with delta * den >= num * |sigma_X(F)|
    over every generator (ties: larger delta, then smaller |F|, then lower
    generator index, then smaller local mask); stops when no flip qualifies
    anywhere.  The syndrome weight strictly decreases every step, so at
    most |sigma| flips happen.
    """
    _check_sigma(table, sigma)
    fr, num, den = _beta_pair(beta)
    sw = bitset.popcount(sigma)
    work = sigma.copy()
    e_hat = bitset.zeros(table.n_v)
    out_gen = np.empty(sw, np.int64)
    out_cand = np.empty(sw, np.int64)
    out_delta = np.empty(sw, np.int64)
    trace = np.empty(sw + 1, np.int64)
    steps, final = ACTIVE._decode_beta_core(
        work, sw, table.n_gen,
        table.gen_sup_ptr, table.gen_sup, table.gen_win_ptr, table.gen_win,
        table.gen_class,
        table.fl_ptr, table.fl_soff_ptr, table.fl_soff,
        table.fl_lo, table.fl_hi, table.fl_fmask, table.fl_fsize,
        table.fl_ssize,
        table.chk_gen_ptr, table.chk_gen, num, den,
        e_hat, out_gen, out_cand, out_delta, trace)
    steps = int(steps)
    gens = out_gen[:steps].copy()
    fmasks = table.fl_fmask[out_cand[:steps]].copy()
    return DecodeOutcome(
        variant="beta", e_hat=e_hat, sigma_final=work, steps=steps,
        executed_steps=steps, terminated_by="no_flip_available", beta=fr,
        flip_step=np.arange(steps, dtype=np.int64),
        flip_color=np.full(steps, -1, np.int32),
        flip_gen=gens, flip_fmask=fmasks,
        flip_delta=out_delta[:steps].copy(),
        sigma_trace=trace[:steps + 1].copy(),
        flip_union=_flip_union(table, gens, fmasks, table.n_v))


def decode_ratio(code: CssCode, table: FlipTable,
                 sigma: np.ndarray) -> DecodeOutcome:
    """Sequential greedy decoding: while some flip has delta > 0, apply the
    one maximizing delta / |F| over every generator's full candidate set."""
    _check_sigma(table, sigma)
    sw = bitset.popcount(sigma)
    work = sigma.copy()
    e_hat = bitset.zeros(table.n_v)
    out_gen = np.empty(sw, np.int64)
    out_cand = np.empty(sw, np.int64)
    out_delta = np.empty(sw, np.int64)
    trace = np.empty(sw + 1, np.int64)
    steps, final = ACTIVE._decode_ratio_core(
        work, sw, table.n_gen,
        table.gen_sup_ptr, table.gen_sup, table.gen_win_ptr, table.gen_win,
        table.gen_class,
        table.f0_ptr, table.f0_soff_ptr, table.f0_soff,
        table.f0_lo, table.f0_hi, table.f0_fmask, table.f0_fsize,
        table.f0_ssize,
        table.chk_gen_ptr, table.chk_gen,
        e_hat, out_gen, out_cand, out_delta, trace)
    steps = int(steps)
    gens = out_gen[:steps].copy()
    fmasks = table.f0_fmask[out_cand[:steps]].copy()
    return DecodeOutcome(
        variant="ratio", e_hat=e_hat, sigma_final=work, steps=steps,
        executed_steps=steps, terminated_by="no_flip_available", beta=None,
        flip_step=np.arange(steps, dtype=np.int64),
        flip_color=np.full(steps, -1, np.int32),
        flip_gen=gens, flip_fmask=fmasks,
        flip_delta=out_delta[:steps].copy(),
        sigma_trace=trace[:steps + 1].copy(),
        flip_union=_flip_union(table, gens, fmasks, table.n_v))


def color_generators(table: FlipTable) -> np.ndarray:
    """Greedy coloring of generators so same-color window grids are disjoint.

    Generators are colored in index order with the smallest color absent
    from every window check they touch.  The color count is at most the
    conflict-graph degree plus one, hence at most
    (d_B(d_A-1)+1)(d_A(d_B-1)+1) for a (d_A, d_B)-biregular seed.
    """
    n_gen = table.n_gen
    max_per_chk = int(np.diff(table.chk_gen_ptr).max()) if table.n_cx else 0
    slots = np.full((table.n_cx, max(max_per_chk, 1)), -1, np.int32)
    fill = np.zeros(table.n_cx, np.int64)
    colors = np.full(n_gen, -1, np.int32)
    for gi in range(n_gen):
        wc = table.window(gi)
        used = slots[wc].ravel()
        used = used[used >= 0]
        if used.size:
            seen = np.zeros(int(used.max()) + 2, dtype=bool)
            seen[used] = True
            col = int(np.argmin(seen))
        else:
            col = 0
        colors[gi] = col
        slots[wc, fill[wc]] = col
        fill[wc] += 1
    return colors


def check_coloring(table: FlipTable, colors: np.ndarray, limit: int = 100) -> list:
    """Conflicting same-color generator pairs, as (check, g1, g2) triples.

    Empty means the coloring is sound: no two generators of one color share
    a window check.
    """
    colors = np.asarray(colors)
    if colors.shape[0] != table.n_gen:
        raise ParameterError("coloring length must equal the generator count")
    bad = []
    for c in range(table.n_cx):
        row = table.chk_gen[table.chk_gen_ptr[c]:table.chk_gen_ptr[c + 1]]
        if row.shape[0] < 2:
            continue
        cc = colors[row]
        order = np.argsort(cc, kind="stable")
        cc_s = cc[order]
        dup = np.flatnonzero(cc_s[1:] == cc_s[:-1])
        for d in dup:
            bad.append((int(c), int(row[order[d]]), int(row[order[d + 1]])))
            if len(bad) >= limit:
                return bad
    return bad


def f0_steps(s: int, ledger: ConstantsLedger) -> int:
    """Parallel step budget for initial syndrome weight s (ledger formula)."""
    return ledger.f0_steps(s)


def decode_parallel(code: CssCode, table: FlipTable, sigma: np.ndarray,
                    beta, coloring: np.ndarray | None = None,
                    stopping: str = "fixpoint",
                    ledger: ConstantsLedger | None = None) -> DecodeOutcome:
    """Color-synchronous threshold decoding.

    Step i serves color class i mod n_colors: every generator of the color
    picks its best qualifying flip against the snapshot of sigma taken at
    the start of the step, and the picks (whose windows are disjoint for a
    sound coloring) are applied together.

    stopping="fixpoint" runs until one full color cycle makes no flip.
    stopping="f0" runs exactly ledger.f0_steps(|sigma|) steps; once a full
    cycle makes no flip the remaining steps cannot change anything and are
    skipped (the reported step count still equals the budget).

    Raises:
        InvariantViolation: the run exceeded work bounds that hold for any
            sound coloring (only possible with an unsound one).
    """
    _check_sigma(table, sigma)
    fr, num, den = _beta_pair(beta)
    if coloring is None:
        coloring = color_generators(table)
    coloring = np.ascontiguousarray(coloring, dtype=np.int32)
    if coloring.shape[0] != table.n_gen or (table.n_gen and coloring.min() < 0):
        raise ParameterError("coloring must assign a color >= 0 per generator")

    sw = bitset.popcount(sigma)
    if stopping == "fixpoint":
        budget = _FIXPOINT_BUDGET
    elif stopping == "f0":
        if ledger is None:
            raise ParameterError("stopping='f0' needs a constants ledger")
        budget = ledger.f0_steps(sw)
    else:
        raise ParameterError(f"unknown stopping rule {stopping!r}")

    n_colors = int(coloring.max()) + 1 if table.n_gen else 1
    counts = np.bincount(coloring, minlength=n_colors)
    color_ptr = np.zeros(n_colors + 1, np.int64)
    np.cumsum(counts, out=color_ptr[1:])
    color_gens = np.argsort(coloring, kind="stable").astype(np.int32)

    work = sigma.copy()
    e_hat = bitset.zeros(table.n_v)
    flip_cap = sw
    trace_limit = min(budget, (sw + 1) * n_colors + n_colors)
    out_step = np.empty(flip_cap, np.int64)
    out_gen = np.empty(flip_cap, np.int64)
    out_cand = np.empty(flip_cap, np.int64)
    out_delta = np.empty(flip_cap, np.int64)
    trace = np.empty(trace_limit + 1, np.int64)
    nf, steps_exec, ff, mism, final = ACTIVE._decode_parallel_core(
        work, sw, table.n_gen,
        table.gen_sup_ptr, table.gen_sup, table.gen_win_ptr, table.gen_win,
        table.gen_class,
        table.fl_ptr, table.fl_soff_ptr, table.fl_soff,
        table.fl_lo, table.fl_hi, table.fl_fmask, table.fl_fsize,
        table.fl_ssize,
        table.chk_gen_ptr, table.chk_gen,
        coloring, color_ptr, color_gens, num, den, int(budget),
        e_hat, out_step, out_gen, out_cand, out_delta, trace)
    nf, steps_exec = int(nf), int(steps_exec)
    mism = int(mism)

    hit_flip_cap = nf == flip_cap and final > 0
    hit_trace_cap = (steps_exec >= trace_limit and steps_exec < budget
                     and not ff)
    if mism > 0 or hit_flip_cap or hit_trace_cap:
        raise InvariantViolation(
            f"parallel decode exceeded sound-coloring bounds "
            f"(mismatches={mism}, flips={nf}, steps={steps_exec}); "
            f"the supplied coloring is likely unsound")

    if stopping == "f0":
        steps = int(budget)
        terminated_by = "step_budget"
    else:
        steps = steps_exec
        terminated_by = "no_flip_available"
    gens = out_gen[:nf].copy()
    fmasks = table.fl_fmask[out_cand[:nf]].copy()
    return DecodeOutcome(
        variant="parallel", e_hat=e_hat, sigma_final=work, steps=steps,
        executed_steps=steps_exec, terminated_by=terminated_by, beta=fr,
        flip_step=out_step[:nf].copy(),
        flip_color=coloring[gens],
        flip_gen=gens, flip_fmask=fmasks,
        flip_delta=out_delta[:nf].copy(),
        sigma_trace=trace[:steps_exec + 1].copy(),
        flip_union=_flip_union(table, gens, fmasks, table.n_v),
        additivity_mismatches=mism, budget=int(budget))


@dataclass
class DecoderParams:
    """Variant selection for the experiment harness and CLI."""

    variant: str = "beta"
    beta: Fraction = Fraction(1, 2)
    stopping: str = "fixpoint"

    def __post_init__(self):
        if self.variant not in ("ratio", "beta", "parallel"):
            raise ParameterError(f"unknown variant {self.variant!r}")
        if self.stopping not in ("fixpoint", "f0"):
            raise ParameterError(f"unknown stopping {self.stopping!r}")
        self.beta = to_fraction(self.beta)
        if not (0 < self.beta <= 1):
            raise ParameterError(f"beta must be in (0, 1], got {self.beta}")


def run_decoder(code: CssCode, table: FlipTable, sigma: np.ndarray,
                params: DecoderParams, coloring: np.ndarray | None = None,
                ledger: ConstantsLedger | None = None) -> DecodeOutcome:
    """Dispatch a decode by parameter block."""
    if params.variant == "beta":
        return decode_beta(code, table, sigma, params.beta)
    if params.variant == "ratio":
        return decode_ratio(code, table, sigma)
    return decode_parallel(code, table, sigma, params.beta, coloring=coloring,
                           stopping=params.stopping, ledger=ledger)


def check_flip_log(code: CssCode, table: FlipTable, sigma0: np.ndarray,
                   outcome: DecodeOutcome) -> dict:
    """Replay a flip log sequentially and audit every acceptance condition.

    Each flip's syndrome sigma_X(F) is recomputed from the code's per-qubit
    check masks (not from the flip table), so this also cross-checks the
    table construction.  Verified per flip, against the syndrome state at
    that point of the replay:

      * membership: 2|sigma_X(F)| >= deg_a(g) * |F|   (beta/parallel)
      * threshold:  delta * den >= num * |sigma_X(F)| (beta/parallel)
        or delta > 0 (ratio)

    and at the end that the replayed syndrome and error match the outcome.
    A parallel log passing this replay certifies that its flips, applied in
    log order, would also have been accepted by the sequential decoder.
    """
    sigma = sigma0.copy()
    e = bitset.zeros(code.n)
    violations = []
    weight = bitset.popcount(sigma)
    if outcome.beta is not None:
        num, den = outcome.beta.numerator, outcome.beta.denominator
    else:
        num = den = None
    for i in range(outcome.n_flips):
        g = int(outcome.flip_gen[i])
        fm = int(outcome.flip_fmask[i])
        qubits = table.flip_qubits(g, fm)
        if qubits.size == 0:
            violations.append({"flip": i, "kind": "empty_flip"})
            continue
        s_f = np.bitwise_xor.reduce(code.x_masks[qubits], axis=0)
        ssize = bitset.popcount(s_f)
        new_sigma = sigma ^ s_f
        new_weight = bitset.popcount(new_sigma)
        delta = weight - new_weight
        if num is not None:
            db, da = table.degrees(g)
            if 2 * ssize < da * qubits.size:
                violations.append({"flip": i, "kind": "membership",
                                   "gen": g, "ssize": ssize,
                                   "fsize": int(qubits.size)})
            if delta * den < num * ssize:
                violations.append({"flip": i, "kind": "threshold",
                                   "gen": g, "delta": delta, "ssize": ssize})
        else:
            if delta <= 0:
                violations.append({"flip": i, "kind": "no_gain",
                                   "gen": g, "delta": delta})
        if int(outcome.flip_delta[i]) != delta and outcome.variant != "parallel":
            violations.append({"flip": i, "kind": "delta_mismatch",
                               "logged": int(outcome.flip_delta[i]),
                               "replayed": delta})
        for v in qubits:
            bitset.flip_bit(e, int(v))
        sigma = new_sigma
        weight = new_weight
    if not bitset.equal(sigma, outcome.sigma_final):
        violations.append({"kind": "final_syndrome_mismatch"})
    if not bitset.equal(e, outcome.e_hat):
        violations.append({"kind": "ehat_mismatch"})
    return {"ok": not violations, "violations": violations,
            "flips": outcome.n_flips}


def write_flip_log(outcome: DecodeOutcome, table: FlipTable, path) -> None:
    """Text export: one line per flip,
    ``step_index color generator_id qubit_indices... delta``."""
    with open(path, "w") as fh:
        for i in range(outcome.n_flips):
            qubits = table.flip_qubits(int(outcome.flip_gen[i]),
                                       int(outcome.flip_fmask[i]))
            fh.write(" ".join([
                str(int(outcome.flip_step[i])),
                str(int(outcome.flip_color[i])),
                str(int(outcome.flip_gen[i])),
                *(str(int(q)) for q in qubits),
                str(int(outcome.flip_delta[i])),
            ]) + "\n")
