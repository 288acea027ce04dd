"""Acceptance suite: nine end-to-end criteria, one verdict line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the verdict lines.
Calibration values were measured 2026-08-14 under master seed 20240814 on
the frozen graph seeds below and are regression-tested here; every random
stream is counter-derived, so reruns are bit-reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from qexpander import bitset
from qexpander.analysis import (brute_force_decode, classify,
                                coset_minimum_weight)
from qexpander.code import (build_code, code_dimension,
                            css_orthogonality_violations, syndrome_x)
from qexpander.decoder import (DecoderParams, check_flip_log, decode_beta,
                               precompute_flips, run_decoder)
from qexpander.graph import BipartiteGraph, sample_biregular
from qexpander.harness import (ExperimentConfig, Instance, build_instance,
                               mann_kendall, run_cycles, run_invariant_audit,
                               run_sweep, support_slack)
from qexpander.noise import NoiseSpec, sample_error, trial_rng

from .reference import gf2_rank_dense

SEED = 20240814
BIG_GRAPH = {"n_a": 60, "d_a": 5, "d_b": 10, "seed": 1}

# frozen calibration (master seed 20240814, graph seeds as configured)
C5_TRIALS = 10000
C5_FROZEN_FAILURES = {1e-3: 1263, 1e-2: 9993}
C6_FROZEN_TOTALS = {1e-4: 0, 1e-3: 4}
C8_FROZEN_MATCHES = 956


def _verdict(k: int, ok: bool, detail: str) -> None:
    print(f"\nACCEPT-{k} {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {k}: {detail}"


@pytest.fixture(scope="module")
def big_inst():
    cfg = ExperimentConfig.from_dict({
        "graph": dict(BIG_GRAPH),
        "noise": {"p_phys": [1e-3, 1e-2], "p_synd": [0.0]},
        "decoder": {"variant": "beta", "beta": "1/2"},
        "trials": C5_TRIALS, "master_seed": SEED, "workers": 8})
    return cfg, build_instance(cfg)


@pytest.fixture(scope="module")
def audit_runs(big_inst):
    cfg, inst = big_inst
    base = {"graph": dict(BIG_GRAPH),
            "noise": {"p_phys": [1e-3], "p_synd": [1e-4]},
            "trials": 5000, "master_seed": SEED, "workers": 8}
    t0 = time.perf_counter()
    cfg_b = ExperimentConfig.from_dict(
        {**base, "decoder": {"variant": "beta", "beta": "1/2"}})
    rep_b = run_invariant_audit(cfg_b, inst)
    cfg_p = ExperimentConfig.from_dict(
        {**base, "decoder": {"variant": "parallel", "beta": "1/2"}})
    inst_p = replace(inst, params=DecoderParams(variant="parallel",
                                                beta=Fraction(1, 2)))
    rep_p = run_invariant_audit(cfg_p, inst_p)
    return {"beta": rep_b, "parallel": rep_p,
            "duration": time.perf_counter() - t0}


def test_criterion_1_css_validity():
    rng = np.random.default_rng(SEED)
    sizes = np.arange(20, 61, 2)  # degree (5,10) needs even n_A
    t0 = time.perf_counter()
    bad = 0
    for i in range(100):
        n_a = int(rng.choice(sizes))
        code = build_code(sample_biregular(n_a, 5, 10, seed=1000 + i))
        if css_orthogonality_violations(code) != 0:
            bad += 1
        if code.n != n_a * n_a + (n_a // 2) ** 2:
            bad += 1
    dt = time.perf_counter() - t0
    _verdict(1, bad == 0 and dt < 30.0,
             f"100 codes, {bad} violations, {dt:.1f}s < 30s")


def test_criterion_2_dimension_bound():
    rng = np.random.default_rng(SEED + 1)
    sizes = np.arange(20, 37, 2)
    checked = 0
    equalities = 0
    ok = True
    for i in range(20):
        n_a = int(rng.choice(sizes))
        g = sample_biregular(n_a, 5, 10, seed=2000 + i)
        code = build_code(g)
        k = code_dimension(code)
        lower = (g.n_A - g.n_B) ** 2
        ok &= k >= lower
        if gf2_rank_dense(g.biadjacency()) == g.n_B:
            ok &= k == lower
            equalities += 1
        checked += 1
    _verdict(2, ok and checked == 20,
             f"20 codes, k >= (n_A-n_B)^2 all, equality at full seed rank "
             f"({equalities}/20 full-rank)")


def test_criterion_3_toy_oracle_equivalence():
    h = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    code = build_code(BipartiteGraph.from_biadjacency(h))
    table = precompute_flips(code)
    cases = 0
    agree = 0
    decoder_success = 0
    for w in (1, 2):
        for combo in combinations(range(code.n), w):
            e = bitset.from_indices(np.asarray(combo, np.int64), code.n)
            out = decode_beta(code, table, syndrome_x(code, e),
                              Fraction(1, 2))
            got = classify(code, e, out.e_hat)

            r = e ^ out.e_hat
            if not bitset.is_zero(syndrome_x(code, r)):
                want = "syndrome_nonzero"
            elif bitset.is_zero(r):
                want = "exact"
            elif coset_minimum_weight(code, r) == 0:
                want = "stabilizer_equivalent"
            else:
                want = "logical_failure"

            e_bf = brute_force_decode(code, syndrome_x(code, e))
            assert e_bf is not None
            assert bitset.equal(syndrome_x(code, e_bf), syndrome_x(code, e))
            assert bitset.popcount(e_bf) <= w

            cases += 1
            agree += got.kind == want
            decoder_success += got.success
    _verdict(3, cases == 91 and agree == 91,
             f"{agree}/{cases} classification agreement; decoder succeeded "
             f"on {decoder_success}/91 (recorded, not asserted)")


def test_criterion_4_invariant_audit(audit_runs):
    rb, rp = audit_runs["beta"], audit_runs["parallel"]
    viol = rb["violation_count"] + rp["violation_count"]
    structural = all(r["structural"]["candidate_tables"]["ok"]
                     and r["structural"]["coloring"]["ok"]
                     and r["structural"]["coloring"]["within_chi"]
                     and r["structural"]["locally_stochastic"]["ok"]
                     for r in (rb, rp))
    ok = rb["ok"] and rp["ok"] and viol == 0 and structural
    _verdict(4, ok,
             f"10^4 trials (5k sequential + 5k parallel), {viol} violations, "
             f"colors={rb['structural']['coloring']['colors']} <= "
             f"chi={rb['structural']['coloring']['chi']}, "
             f"{audit_runs['duration']:.0f}s")


def test_criterion_5_noiseless_syndrome_rate(big_inst):
    cfg, inst = big_inst
    res = run_sweep(cfg, inst)
    pts = {pt["p_phys"]: pt for pt in res["summary"]["points"]}
    ok = True
    details = []
    for p, frozen in C5_FROZEN_FAILURES.items():
        pt = pts[p]
        rate = pt["rate_strict"]
        f_rate = frozen / C5_TRIALS
        band = 3.0 * math.sqrt(f_rate * (1.0 - f_rate) / C5_TRIALS)
        ok &= abs(rate - f_rate) <= band
        ok &= pt["slack_violations"] == 0
        details.append(f"p={p:g}: fail {pt['failures_strict']}/{C5_TRIALS} "
                       f"(frozen {frozen}, band +-{band:.4f})")
    lo, hi = pts[1e-3], pts[1e-2]
    ok &= lo["rate_strict"] <= hi["rate_strict"]
    separated = lo["ci_strict"][1] < hi["ci_strict"][0]
    details.append("CI-separated" if separated else "CI-overlapping (flagged)")
    details.append(f"success@1e-3 = {1 - lo['rate_strict']:.4f}")
    _verdict(5, ok, "; ".join(details))


def test_criterion_6_syndrome_noise_degradation():
    cfg = ExperimentConfig.from_dict({
        "graph": {"n_a": 200, "d_a": 5, "d_b": 10, "seed": 1},
        "noise": {"p_phys": [1e-3], "p_synd": [0.0]},
        "decoder": {"variant": "beta", "beta": "1/10"},
        "trials": 10, "master_seed": SEED, "workers": 8})
    inst = build_instance(cfg)
    params = DecoderParams(variant="beta", beta=Fraction(1, 10))

    def run_point(j: int, ps: float):
        total = 0
        viol = 0
        for ti in range(10000):
            rng = trial_rng(SEED, 6, j, ti)
            e, d = sample_error(
                NoiseSpec(qubit=("iid", 0.0), synd=("iid", ps)),
                inst.code, rng)
            out = run_decoder(inst.code, inst.table, d.copy(), params,
                              coloring=inst.coloring, ledger=inst.ledger)
            total += bitset.popcount(out.e_hat)
            viol += support_slack(inst, e, d, out) < 0
        return total, viol

    totals = {}
    ok = True
    for j, ps in enumerate((1e-4, 1e-3)):
        total, viol = run_point(j, ps)
        totals[ps] = total
        ok &= viol == 0
        ok &= total == C6_FROZEN_TOTALS[ps]
    again, _ = run_point(1, 1e-3)
    reproducible = again == totals[1e-3]
    ok &= reproducible and totals[1e-3] > totals[1e-4]
    _verdict(6, ok,
             f"(200,5,10) n=50000, mean|e_hat| {totals[1e-4]/10000:.6f} -> "
             f"{totals[1e-3]/10000:.6f} strictly increasing, rerun equal: "
             f"{reproducible}, 0 support-bound violations")


def test_criterion_7_cycle_stability():
    cfg = ExperimentConfig.from_dict({
        "graph": {"n_a": 20, "d_a": 5, "d_b": 10, "seed": 1},
        "noise": {"p_phys": [1e-3], "p_synd": [1e-4]},
        "decoder": {"variant": "ratio"},
        "trials": 40, "cycles": 100, "master_seed": SEED, "workers": 8})
    res = run_cycles(cfg)
    traj = res["summary"]["median_trajectory"]
    mk = mann_kendall(traj[9:])  # cycles 10..100
    ok = not mk["upward"] and len(traj) == 100
    _verdict(7, ok,
             f"median residual cycles 10-100: max={max(traj[9:]):g}, "
             f"Mann-Kendall z={mk['z']:.2f}, p_up={mk['p_upward']:.3f}, "
             f"upward={mk['upward']}; blowups="
             f"{res['summary']['blowup_trials']}")


def test_criterion_8_parallel_agreement(big_inst):
    _, inst = big_inst
    pb = DecoderParams(variant="beta", beta=Fraction(3, 4))
    pp = DecoderParams(variant="parallel", beta=Fraction(3, 4))
    match = 0
    replay_ok = 0
    budget_ok = 0
    max_steps = 0
    for ti in range(1000):
        rng = trial_rng(SEED, 8, ti)
        e, _ = sample_error(NoiseSpec(qubit=("iid", 1e-3)), inst.code, rng)
        sigma = syndrome_x(inst.code, e)
        ob = run_decoder(inst.code, inst.table, sigma, pb,
                         coloring=inst.coloring, ledger=inst.ledger)
        op = run_decoder(inst.code, inst.table, sigma, pp,
                         coloring=inst.coloring, ledger=inst.ledger)
        kb = classify(inst.code, e, ob.e_hat).kind
        kp = classify(inst.code, e, op.e_hat).kind
        match += kb == kp
        replay_ok += check_flip_log(inst.code, inst.table, sigma, op)["ok"]
        budget_ok += op.executed_steps <= op.budget
        max_steps = max(max_steps, op.executed_steps)
    ok = (match >= 950 and match == C8_FROZEN_MATCHES
          and replay_ok == 1000 and budget_ok == 1000)
    _verdict(8, ok,
             f"outcome-class match {match}/1000 >= 950 (frozen "
             f"{C8_FROZEN_MATCHES}), replay {replay_ok}/1000, step count "
             f"within budget {budget_ok}/1000, max steps {max_steps}")


def test_criterion_9_performance(big_inst, audit_runs):
    _, inst = big_inst
    rng = trial_rng(SEED, 9, 0)
    e, _ = sample_error(NoiseSpec(qubit=("iid", 1e-3)), inst.code, rng)
    sigma = syndrome_x(inst.code, e)
    params = DecoderParams(variant="beta", beta=Fraction(1, 2))
    t0 = time.perf_counter()
    out = run_decoder(inst.code, inst.table, sigma, params,
                      coloring=inst.coloring, ledger=inst.ledger)
    dt = time.perf_counter() - t0
    audit_dt = audit_runs["duration"]
    ok = dt < 1.0 and audit_dt < 600.0 and out.n_flips >= 0
    _verdict(9, ok,
             f"single n=4500 decode {dt * 1000:.1f}ms < 1s; "
             f"full audit {audit_dt:.0f}s < 600s")
