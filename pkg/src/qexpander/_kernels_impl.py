"""Decoder inner loops, written once for two execution modes.

qexpander._kernels loads this file twice: as-is for the pure-Python path
and with every function njit-wrapped for the numba path.  Everything here
must therefore stay inside the numba nopython subset: plain loops, numpy
arrays and scalars, tuples.

Conventions shared with the flip-table layout:
  * syndromes and error patterns are uint64 bitset arrays;
  * a generator's local syndrome window is at most 128 bits, carried as a
    (lo, hi) pair of uint64 words in grid order;
  * flip candidates per degree class are pre-sorted by signature size so a
    popcount cutoff bounds the scan range;
  * the acceptance threshold is the exact integer test
    delta * beta_den >= beta_num * |sigma_X(F)|.
"""

import numpy as np

U0 = np.uint64(0)
U1 = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_M7 = np.uint64(0x7F)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S8 = np.uint64(8)
_S16 = np.uint64(16)
_S32 = np.uint64(32)


def _popcount64(x):
    x = x - ((x >> _S1) & _M1)
    x = (x & _M2) + ((x >> _S2) & _M2)
    x = (x + (x >> _S4)) & _M4
    x = x + (x >> _S8)
    x = x + (x >> _S16)
    x = x + (x >> _S32)
    return np.int64(x & _M7)


def _bitset_weight(words):
    total = 0
    for i in range(words.shape[0]):
        total += _popcount64(words[i])
    return total


def _eval_beta(sigma, gen_win, ws, wl, fstart, fl_soff, sbase, gb,
               fl_lo, fl_hi, fl_fmask, fl_fsize, fl_ssize,
               beta_num, beta_den):
    """Best qualifying flip of one generator against ``sigma``.

    Returns (window_popcount, best_delta, best_fsize, best_candidate); the
    candidate is -1 when nothing passes the threshold.  Tie rule within the
    generator: maximal delta, then smallest |F|, then smallest local mask.
    """
    wlo = U0
    whi = U0
    pcw = 0
    for t in range(wl):
        c = gen_win[ws + t]
        if (sigma[c >> 6] >> np.uint64(c & 63)) & U1:
            pcw += 1
            if t < 64:
                wlo |= U1 << np.uint64(t)
            else:
                whi |= U1 << np.uint64(t - 64)
    if pcw == 0:
        return 0, np.int64(-1), np.int64(0), np.int64(-1)
    # qualifying needs 2*|w & sig| * den >= (num + den) * ssize, and the
    # overlap is at most pcw, so larger signatures cannot qualify
    cutoff = (2 * pcw * beta_den) // (beta_num + beta_den)
    if cutoff > gb:
        cutoff = gb
    scan_end = fl_soff[sbase + cutoff + 1]
    bd = np.int64(-1)
    bf = np.int64(0)
    bm = np.int64(0)
    bc = np.int64(-1)
    for i in range(fstart, scan_end):
        ov = _popcount64(wlo & fl_lo[i]) + _popcount64(whi & fl_hi[i])
        ssz = np.int64(fl_ssize[i])
        delta = 2 * ov - ssz
        if delta * beta_den >= beta_num * ssz:
            fsz = np.int64(fl_fsize[i])
            fmv = np.int64(fl_fmask[i])
            if (delta > bd
                    or (delta == bd and fsz < bf)
                    or (delta == bd and fsz == bf and fmv < bm)):
                bd = delta
                bf = fsz
                bm = fmv
                bc = np.int64(i)
    return pcw, bd, bf, bc


def _eval_ratio(sigma, gen_win, ws, wl, fstart, f0_soff, sbase, gb,
                f0_lo, f0_hi, f0_fmask, f0_fsize, f0_ssize):
    """Best positive-gain flip of one generator under the delta/|F| order.

    Returns (window_popcount, best_delta, best_fsize, best_candidate).
    """
    wlo = U0
    whi = U0
    pcw = 0
    for t in range(wl):
        c = gen_win[ws + t]
        if (sigma[c >> 6] >> np.uint64(c & 63)) & U1:
            pcw += 1
            if t < 64:
                wlo |= U1 << np.uint64(t)
            else:
                whi |= U1 << np.uint64(t - 64)
    if pcw == 0:
        return 0, np.int64(-1), np.int64(0), np.int64(-1)
    # delta > 0 needs ssize <= 2*overlap - 1 <= 2*pcw - 1
    cutoff = 2 * pcw - 1
    if cutoff > gb:
        cutoff = gb
    scan_end = f0_soff[sbase + cutoff + 1]
    bd = np.int64(-1)
    bf = np.int64(1)
    bm = np.int64(0)
    bc = np.int64(-1)
    for i in range(fstart, scan_end):
        ov = _popcount64(wlo & f0_lo[i]) + _popcount64(whi & f0_hi[i])
        ssz = np.int64(f0_ssize[i])
        delta = 2 * ov - ssz
        if delta <= 0:
            continue
        fsz = np.int64(f0_fsize[i])
        fmv = np.int64(f0_fmask[i])
        take = False
        if bc < 0:
            take = True
        else:
            lhs = delta * bf
            rhs = bd * fsz
            if lhs > rhs:
                take = True
            elif lhs == rhs:
                if fsz < bf or (fsz == bf and fmv < bm):
                    take = True
        if take:
            bd = delta
            bf = fsz
            bm = fmv
            bc = np.int64(i)
    return pcw, bd, bf, bc


def _mark_from_sigma(sigma, chk_gen_ptr, chk_gen, pending, dirty):
    """Queue every generator whose window touches a set syndrome bit."""
    nd = 0
    for wi in range(sigma.shape[0]):
        w = sigma[wi]
        if w == U0:
            continue
        for b in range(64):
            if (w >> np.uint64(b)) & U1:
                c = (wi << 6) + b
                for ci in range(chk_gen_ptr[c], chk_gen_ptr[c + 1]):
                    h = chk_gen[ci]
                    if pending[h] == 0:
                        pending[h] = 1
                        dirty[nd] = h
                        nd += 1
    return nd


def _apply_flip(sigma, e_hat, g, cand, fmask_arr, lo_arr, hi_arr,
                gen_sup_ptr, gen_sup, gen_win_ptr, gen_win,
                chk_gen_ptr, chk_gen, pending, dirty, nd):
    """XOR one flip into e_hat and sigma; queue generators whose window
    changed.  Returns the new dirty count."""
    fmv = np.int64(fmask_arr[cand])
    ss = gen_sup_ptr[g]
    sl = gen_sup_ptr[g + 1] - ss
    for k in range(sl):
        if (fmv >> k) & 1:
            v = gen_sup[ss + k]
            e_hat[v >> 6] ^= U1 << np.uint64(v & 63)
    slo = lo_arr[cand]
    shi = hi_arr[cand]
    ws = gen_win_ptr[g]
    wl = gen_win_ptr[g + 1] - ws
    for t in range(wl):
        if t < 64:
            hit = (slo >> np.uint64(t)) & U1
        else:
            hit = (shi >> np.uint64(t - 64)) & U1
        if hit:
            c = gen_win[ws + t]
            sigma[c >> 6] ^= U1 << np.uint64(c & 63)
            for ci in range(chk_gen_ptr[c], chk_gen_ptr[c + 1]):
                h = chk_gen[ci]
                if pending[h] == 0:
                    pending[h] = 1
                    dirty[nd] = h
                    nd += 1
    return nd


def _decode_beta_core(sigma, sigma_weight, n_gen,
                      gen_sup_ptr, gen_sup, gen_win_ptr, gen_win, gen_class,
                      fl_ptr, fl_soff_ptr, fl_soff,
                      fl_lo, fl_hi, fl_fmask, fl_fsize, fl_ssize,
                      chk_gen_ptr, chk_gen, beta_num, beta_den,
                      e_hat, out_gen, out_cand, out_delta, trace):
    """Sequential threshold decoding.

    Each step applies the qualifying flip with maximal delta anywhere in
    the code (ties: smaller |F|, then lower generator index, then smaller
    local mask) and re-evaluates only the generators whose windows the
    flip touched.  Returns (steps, final weight).
    """
    best_delta = np.full(n_gen, -1, np.int64)
    best_fsize = np.ones(n_gen, np.int64)
    best_cand = np.full(n_gen, -1, np.int64)
    pending = np.zeros(n_gen, np.uint8)
    dirty = np.empty(n_gen, np.int64)
    nd = _mark_from_sigma(sigma, chk_gen_ptr, chk_gen, pending, dirty)
    for i in range(nd):
        g = dirty[i]
        pending[g] = 0
        cls = gen_class[g]
        sbase = fl_soff_ptr[cls]
        gb = (fl_soff_ptr[cls + 1] - sbase) - 2
        pcw, bd, bf, bc = _eval_beta(
            sigma, gen_win, gen_win_ptr[g], gen_win_ptr[g + 1] - gen_win_ptr[g],
            fl_ptr[cls], fl_soff, sbase, gb,
            fl_lo, fl_hi, fl_fmask, fl_fsize, fl_ssize, beta_num, beta_den)
        best_delta[g] = bd
        best_fsize[g] = bf
        best_cand[g] = bc
    nd = 0
    steps = 0
    trace[0] = sigma_weight
    cap = out_gen.shape[0]
    while steps < cap:
        gsel = -1
        sel_d = np.int64(-1)
        sel_f = np.int64(0)
        for g in range(n_gen):
            if best_cand[g] < 0:
                continue
            bd = best_delta[g]
            bf = best_fsize[g]
            if gsel < 0 or bd > sel_d or (bd == sel_d and bf < sel_f):
                gsel = g
                sel_d = bd
                sel_f = bf
        if gsel < 0:
            break
        cand = best_cand[gsel]
        delta = best_delta[gsel]
        out_gen[steps] = gsel
        out_cand[steps] = cand
        out_delta[steps] = delta
        nd = _apply_flip(sigma, e_hat, gsel, cand, fl_fmask, fl_lo, fl_hi,
                         gen_sup_ptr, gen_sup, gen_win_ptr, gen_win,
                         chk_gen_ptr, chk_gen, pending, dirty, nd)
        sigma_weight -= delta
        steps += 1
        trace[steps] = sigma_weight
        for i in range(nd):
            g = dirty[i]
            pending[g] = 0
            cls = gen_class[g]
            sbase = fl_soff_ptr[cls]
            gb = (fl_soff_ptr[cls + 1] - sbase) - 2
            pcw, bd, bf, bc = _eval_beta(
                sigma, gen_win, gen_win_ptr[g],
                gen_win_ptr[g + 1] - gen_win_ptr[g],
                fl_ptr[cls], fl_soff, sbase, gb,
                fl_lo, fl_hi, fl_fmask, fl_fsize, fl_ssize,
                beta_num, beta_den)
            best_delta[g] = bd
            best_fsize[g] = bf
            best_cand[g] = bc
        nd = 0
    return steps, sigma_weight


def _decode_ratio_core(sigma, sigma_weight, n_gen,
                       gen_sup_ptr, gen_sup, gen_win_ptr, gen_win, gen_class,
                       f0_ptr, f0_soff_ptr, f0_soff,
                       f0_lo, f0_hi, f0_fmask, f0_fsize, f0_ssize,
                       chk_gen_ptr, chk_gen,
                       e_hat, out_gen, out_cand, out_delta, trace):
    """Sequential greedy decoding by maximal delta / |F| over all flips.

    Cross-generator ties break toward the lower generator index (the scan
    only replaces the incumbent on strict improvement).
    """
    best_delta = np.full(n_gen, -1, np.int64)
    best_fsize = np.ones(n_gen, np.int64)
    best_cand = np.full(n_gen, -1, np.int64)
    pending = np.zeros(n_gen, np.uint8)
    dirty = np.empty(n_gen, np.int64)
    nd = _mark_from_sigma(sigma, chk_gen_ptr, chk_gen, pending, dirty)
    for i in range(nd):
        g = dirty[i]
        pending[g] = 0
        cls = gen_class[g]
        sbase = f0_soff_ptr[cls]
        gb = (f0_soff_ptr[cls + 1] - sbase) - 2
        pcw, bd, bf, bc = _eval_ratio(
            sigma, gen_win, gen_win_ptr[g], gen_win_ptr[g + 1] - gen_win_ptr[g],
            f0_ptr[cls], f0_soff, sbase, gb,
            f0_lo, f0_hi, f0_fmask, f0_fsize, f0_ssize)
        best_delta[g] = bd
        best_fsize[g] = bf
        best_cand[g] = bc
    nd = 0
    steps = 0
    trace[0] = sigma_weight
    cap = out_gen.shape[0]
    while steps < cap:
        gsel = -1
        gd = np.int64(-1)
        gf = np.int64(1)
        for g in range(n_gen):
            if best_cand[g] < 0:
                continue
            if gsel < 0:
                gsel = g
                gd = best_delta[g]
                gf = best_fsize[g]
            else:
                lhs = best_delta[g] * gf
                rhs = gd * best_fsize[g]
                if lhs > rhs or (lhs == rhs and best_fsize[g] < gf):
                    gsel = g
                    gd = best_delta[g]
                    gf = best_fsize[g]
        if gsel < 0:
            break
        cand = best_cand[gsel]
        out_gen[steps] = gsel
        out_cand[steps] = cand
        out_delta[steps] = gd
        nd = _apply_flip(sigma, e_hat, gsel, cand, f0_fmask, f0_lo, f0_hi,
                         gen_sup_ptr, gen_sup, gen_win_ptr, gen_win,
                         chk_gen_ptr, chk_gen, pending, dirty, nd)
        sigma_weight -= gd
        steps += 1
        trace[steps] = sigma_weight
        for i in range(nd):
            g = dirty[i]
            pending[g] = 0
            cls = gen_class[g]
            sbase = f0_soff_ptr[cls]
            gb = (f0_soff_ptr[cls + 1] - sbase) - 2
            pcw, bd, bf, bc = _eval_ratio(
                sigma, gen_win, gen_win_ptr[g],
                gen_win_ptr[g + 1] - gen_win_ptr[g],
                f0_ptr[cls], f0_soff, sbase, gb,
                f0_lo, f0_hi, f0_fmask, f0_fsize, f0_ssize)
            best_delta[g] = bd
            best_fsize[g] = bf
            best_cand[g] = bc
        nd = 0
    return steps, sigma_weight


def _decode_parallel_core(sigma, sigma_weight, n_gen,
                          gen_sup_ptr, gen_sup, gen_win_ptr, gen_win, gen_class,
                          fl_ptr, fl_soff_ptr, fl_soff,
                          fl_lo, fl_hi, fl_fmask, fl_fsize, fl_ssize,
                          chk_gen_ptr, chk_gen,
                          color_of, color_ptr, color_gens,
                          beta_num, beta_den, budget,
                          e_hat, out_step, out_gen, out_cand, out_delta, trace):
    """Color-synchronous threshold decoding.

    Step i serves color i mod n_colors; every generator of that color picks
    its best qualifying flip against a snapshot of sigma and all chosen
    flips are applied together.  Stops after ``budget`` steps, or earlier
    once a full color cycle makes no flip (at that point sigma can never
    change again, so the remaining steps are provably no-ops).

    Returns (flips, executed_steps, fast_forwarded, additivity_mismatches,
    final_weight).  Mismatches can only be nonzero when same-color windows
    overlap, i.e. when the supplied coloring is unsound.
    """
    n_colors = color_ptr.shape[0] - 1
    active = np.zeros(n_gen, np.uint8)
    color_active = np.zeros(n_colors, np.int64)
    total_active = 0
    for wi in range(sigma.shape[0]):
        w = sigma[wi]
        if w == U0:
            continue
        for b in range(64):
            if (w >> np.uint64(b)) & U1:
                c = (wi << 6) + b
                for ci in range(chk_gen_ptr[c], chk_gen_ptr[c + 1]):
                    h = chk_gen[ci]
                    if active[h] == 0:
                        active[h] = 1
                        color_active[color_of[h]] += 1
                        total_active += 1
    snap = np.empty_like(sigma)
    steps = 0
    nf = 0
    streak = 0
    mismatches = 0
    fast_forwarded = 0
    trace[0] = sigma_weight
    flip_cap = out_gen.shape[0]
    trace_cap = trace.shape[0] - 1
    while steps < budget and steps < trace_cap and nf < flip_cap:
        if total_active == 0 or streak >= n_colors:
            fast_forwarded = 1
            break
        k = steps % n_colors
        if color_active[k] == 0:
            steps += 1
            streak += 1
            trace[steps] = sigma_weight
            continue
        for i in range(sigma.shape[0]):
            snap[i] = sigma[i]
        dsum = 0
        flipped = 0
        for gi in range(color_ptr[k], color_ptr[k + 1]):
            g = color_gens[gi]
            if active[g] == 0:
                continue
            cls = gen_class[g]
            sbase = fl_soff_ptr[cls]
            gb = (fl_soff_ptr[cls + 1] - sbase) - 2
            pcw, bd, bf, bc = _eval_beta(
                snap, gen_win, gen_win_ptr[g],
                gen_win_ptr[g + 1] - gen_win_ptr[g],
                fl_ptr[cls], fl_soff, sbase, gb,
                fl_lo, fl_hi, fl_fmask, fl_fsize, fl_ssize,
                beta_num, beta_den)
            if pcw == 0:
                active[g] = 0
                color_active[k] -= 1
                total_active -= 1
                continue
            if bc < 0:
                continue
            if nf >= flip_cap:
                break
            out_step[nf] = steps
            out_gen[nf] = g
            out_cand[nf] = bc
            out_delta[nf] = bd
            nf += 1
            dsum += bd
            flipped += 1
            # apply to the live sigma; same-color windows are disjoint under
            # a sound coloring so later evaluations in this step (which read
            # the snapshot anyway) are unaffected
            fmv = np.int64(fl_fmask[bc])
            ss = gen_sup_ptr[g]
            sl = gen_sup_ptr[g + 1] - ss
            for kk in range(sl):
                if (fmv >> kk) & 1:
                    v = gen_sup[ss + kk]
                    e_hat[v >> 6] ^= U1 << np.uint64(v & 63)
            slo = fl_lo[bc]
            shi = fl_hi[bc]
            ws = gen_win_ptr[g]
            wl = gen_win_ptr[g + 1] - ws
            for t in range(wl):
                if t < 64:
                    hit = (slo >> np.uint64(t)) & U1
                else:
                    hit = (shi >> np.uint64(t - 64)) & U1
                if hit:
                    c = gen_win[ws + t]
                    sigma[c >> 6] ^= U1 << np.uint64(c & 63)
                    for ci in range(chk_gen_ptr[c], chk_gen_ptr[c + 1]):
                        h = chk_gen[ci]
                        if active[h] == 0:
                            active[h] = 1
                            color_active[color_of[h]] += 1
                            total_active += 1
        steps += 1
        if flipped > 0:
            nw = _bitset_weight(sigma)
            if nw != sigma_weight - dsum:
                mismatches += 1
            sigma_weight = nw
            streak = 0
        else:
            streak += 1
        trace[steps] = sigma_weight
    return nf, steps, fast_forwarded, mismatches, sigma_weight


def _syndrome_accumulate(e_idx, q_x_ptr, q_x, out):
    """XOR the X-check neighborhoods of the given qubits into a bitset."""
    for i in range(e_idx.shape[0]):
        v = e_idx[i]
        for t in range(q_x_ptr[v], q_x_ptr[v + 1]):
            c = q_x[t]
            out[c >> 6] ^= U1 << np.uint64(c & 63)
