"""Monte Carlo experiment driver.

Three entry points, all driven by one JSON config document:

  * ``run_sweep``: decode fresh (E, D) samples over a (p_phys, p_synd)
    grid, emitting one CSV row per trial plus an aggregate summary.
  * ``run_cycles``: repeated-cycle simulation; each cycle adds fresh noise
    to the surviving residual, decodes one noisy syndrome, and records the
    residual weight.
  * ``run_invariant_audit``: runs the randomized property checks (flip-log
    replay, strict progress, support bound, coloring soundness, candidate
    complement closure, parallel additivity) and reports violations with
    the trial coordinates needed to replay them.

Reproducibility contract: every random draw comes from a counter-derived
stream (master_seed, mode_tag, *coords), so a record is replayable from
its row alone and results are independent of worker scheduling.  Output
rows are sorted by coordinates before writing; the only nondeterministic
column is the wall-clock duration.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bitset
from ._kernels import MODE
from .analysis import classify
from .code import CssCode, build_code, syndrome_x
from .constants import ConstantsLedger, to_fraction
from .decoder import (DecodeOutcome, DecoderParams, FlipTable, check_coloring,
                      check_flip_log, color_generators, precompute_flips,
                      run_decoder)
from .errors import InvariantViolation, ParameterError
from .graph import load_graph, sample_biregular
from .noise import NoiseSpec, ls_audit, sample_error, trial_rng

SWEEP_VERSION = "qexpander sweep v1"
CYCLES_VERSION = "qexpander cycles v1"

SWEEP_COLUMNS = ("grid_index,p_phys,p_synd,trial,seed,e_weight,d_weight,"
                 "sigma_weight,steps,executed_steps,flips,terminated_by,"
                 "outcome,residual_weight,support_slack,duration_s")
CYCLES_COLUMNS = ("trial,cycle,seed,e_new_weight,d_weight,sigma_weight,"
                  "steps,flips,residual_weight,blowup,duration_s")

# stream namespaces so sweep / cycles / audit draws never collide
_STREAM_SWEEP = 0
_STREAM_CYCLES = 1
_STREAM_AUDIT = 2
_STREAM_LS = 3


@dataclass
class ExperimentConfig:
    """One experiment: code instance, constants, noise grid, decoder, sizes.

    ``graph`` holds either sampling parameters (n_a, d_a, d_b, seed) or a
    {"path": ...} pointing at a saved graph file.  ``ledger`` holds the
    constant inputs (delta, beta, c, gamma) used for budgets and bounds;
    the decoder's own threshold lives in ``decoder.beta`` and may differ.
    """

    graph: dict
    noise: dict
    decoder: dict = field(default_factory=dict)
    ledger: dict = field(default_factory=dict)
    trials: int = 100
    cycles: int = 1
    master_seed: int = 0
    workers: int = 4
    fail_policy: dict = field(default_factory=dict)
    blowup_fraction: float = 0.5
    out: str | None = None

    def __post_init__(self):
        if not isinstance(self.graph, dict) or not (
                "path" in self.graph or "n_a" in self.graph):
            raise ParameterError("graph must give a path or (n_a, d_a, d_b, seed)")
        pp = self.noise.get("p_phys")
        ps = self.noise.get("p_synd", [0.0])
        if not pp:
            raise ParameterError("noise.p_phys must be a nonempty list")
        self.noise = {"p_phys": [float(p) for p in pp],
                      "p_synd": [float(p) for p in ps]}
        if not self.noise["p_synd"]:
            raise ParameterError("noise.p_synd must be nonempty")
        self.decoder = {"variant": "beta", "beta": "1/2",
                        "stopping": "fixpoint", **self.decoder}
        self.fail_policy = {"mode": "strict", "threshold": 10,
                            **self.fail_policy}
        if self.fail_policy["mode"] not in ("strict", "residual_threshold"):
            raise ParameterError(f"unknown fail policy {self.fail_policy['mode']!r}")
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if self.cycles < 1:
            raise ParameterError("cycles must be >= 1")
        if self.workers < 1:
            raise ParameterError("workers must be >= 1")

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        fields = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - fields
        if unknown:
            raise ParameterError(f"unknown config keys {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "graph": dict(self.graph), "noise": dict(self.noise),
            "decoder": dict(self.decoder), "ledger": dict(self.ledger),
            "trials": self.trials, "cycles": self.cycles,
            "master_seed": self.master_seed, "workers": self.workers,
            "fail_policy": dict(self.fail_policy),
            "blowup_fraction": self.blowup_fraction, "out": self.out,
        }


@dataclass
class Instance:
    """A built experiment: shared immutable state for all trials."""

    code: CssCode
    table: FlipTable
    coloring: np.ndarray
    ledger: ConstantsLedger
    params: DecoderParams


def build_instance(config: ExperimentConfig) -> Instance:
    if "path" in config.graph:
        g = load_graph(config.graph["path"])
    else:
        g = sample_biregular(int(config.graph["n_a"]),
                             int(config.graph["d_a"]),
                             int(config.graph["d_b"]),
                             seed=int(config.graph.get("seed", 0)))
    code = build_code(g)
    table = precompute_flips(code)
    coloring = color_generators(table)
    led = {"delta": "1/20", "beta": "1/10", "c": 14, "gamma": "1/2",
           **config.ledger}
    ledger = ConstantsLedger(d_A=g.d_A, d_B=g.d_B,
                             delta=to_fraction(led["delta"]),
                             beta=to_fraction(led["beta"]),
                             c=to_fraction(led["c"]),
                             gamma=to_fraction(led["gamma"]))
    params = DecoderParams(variant=config.decoder["variant"],
                           beta=to_fraction(config.decoder["beta"]),
                           stopping=config.decoder["stopping"])
    if params.stopping == "f0":
        ledger.validate()
    code.hz_row_space()
    # one throwaway decode so kernel compilation happens before timing
    run_decoder(code, table, bitset.zeros(code.n_cx), params,
                coloring=coloring, ledger=ledger)
    return Instance(code=code, table=table, coloring=coloring,
                    ledger=ledger, params=params)


def support_slack(inst: Instance, e_words: np.ndarray, d_words: np.ndarray,
                  outcome: DecodeOutcome) -> Fraction | None:
    """(|E union D| / (2 alpha_0)) - |U union D|, exact, for threshold runs.

    U is the execution support E union all flipped sets.  With the run's
    threshold beta = p/q, 1/(2 alpha_0) = 2 d_B q / (d_A p) + 1.  The bound
    holds for the threshold variants; the ratio-greedy decoder carries no
    such guarantee, so None is returned there.
    """
    if outcome.beta is None:
        return None
    d_a, d_b = inst.ledger.d_A, inst.ledger.d_B
    p, q = outcome.beta.numerator, outcome.beta.denominator
    e_w = bitset.popcount(e_words)
    d_w = bitset.popcount(d_words)
    u_w = bitset.popcount(e_words | outcome.flip_union)
    bound = Fraction((e_w + d_w) * (2 * d_b * q + d_a * p), d_a * p)
    return bound - (u_w + d_w)


def _slack_str(s: Fraction | None) -> str:
    return "" if s is None else f"{s.numerator}/{s.denominator}"


def wilson_interval(k: int, n: int, z: float = 1.959963984540054) -> tuple:
    """Wilson score interval for a binomial proportion k/n."""
    if n == 0:
        return 0.0, 1.0
    ph = k / n
    z2 = z * z
    denom = 1.0 + z2 / n
    center = ph + z2 / (2 * n)
    rad = z * math.sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n))
    return max(0.0, (center - rad) / denom), min(1.0, (center + rad) / denom)


def mann_kendall(values) -> dict:
    """Mann-Kendall trend statistic with tie correction, one-sided upward.

    Returns s, z, the one-sided p-value for an upward trend, and the 5%
    decision flag.
    """
    x = np.asarray(values, dtype=float)
    n = x.shape[0]
    s = 0
    for i in range(n - 1):
        s += int(np.sign(x[i + 1:] - x[i]).sum())
    _, tie_counts = np.unique(x, return_counts=True)
    ties = tie_counts[tie_counts > 1]
    var = (n * (n - 1) * (2 * n + 5)
           - int(np.sum(ties * (ties - 1) * (2 * ties + 5)))) / 18.0
    if var <= 0:
        z = 0.0
    elif s > 0:
        z = (s - 1) / math.sqrt(var)
    elif s < 0:
        z = (s + 1) / math.sqrt(var)
    else:
        z = 0.0
    p_up = 0.5 * math.erfc(z / math.sqrt(2.0))
    return {"s": int(s), "z": float(z), "p_upward": float(p_up),
            "upward": bool(p_up < 0.05)}


def _noise_spec(p_phys: float, p_synd: float) -> NoiseSpec:
    synd = ("iid", p_synd) if p_synd > 0 else ("none",)
    return NoiseSpec(qubit=("iid", p_phys), synd=synd)


def _is_failure(oc, policy: dict) -> bool:
    if policy["mode"] == "strict":
        return not oc.success
    if oc.kind == "logical_failure":
        return True
    return oc.kind == "syndrome_nonzero" and \
        oc.residual_weight > int(policy["threshold"])


def _run_grid_trial(config, inst, gi, pp, ps, ti) -> dict:
    t0 = time.perf_counter()
    rng = trial_rng(config.master_seed, _STREAM_SWEEP, gi, ti)
    spec = _noise_spec(pp, ps)
    e_words, d_words = sample_error(spec, inst.code, rng)
    sigma = syndrome_x(inst.code, e_words) ^ d_words
    sw = bitset.popcount(sigma)
    out = run_decoder(inst.code, inst.table, sigma, inst.params,
                      coloring=inst.coloring, ledger=inst.ledger)
    oc = classify(inst.code, e_words, out.e_hat)
    slack = support_slack(inst, e_words, d_words, out)
    return {
        "grid_index": gi, "p_phys": pp, "p_synd": ps, "trial": ti,
        "seed": f"{config.master_seed}:{_STREAM_SWEEP}:{gi}:{ti}",
        "e_weight": bitset.popcount(e_words),
        "d_weight": bitset.popcount(d_words),
        "sigma_weight": sw,
        "steps": out.steps, "executed_steps": out.executed_steps,
        "flips": out.n_flips, "terminated_by": out.terminated_by,
        "outcome": oc.kind, "residual_weight": oc.residual_weight,
        "support_slack": slack,
        "duration_s": time.perf_counter() - t0,
    }


def _sweep_row(rec: dict) -> str:
    return ",".join([
        str(rec["grid_index"]), str(rec["p_phys"]), str(rec["p_synd"]),
        str(rec["trial"]), rec["seed"], str(rec["e_weight"]),
        str(rec["d_weight"]), str(rec["sigma_weight"]), str(rec["steps"]),
        str(rec["executed_steps"]), str(rec["flips"]),
        rec["terminated_by"], rec["outcome"], str(rec["residual_weight"]),
        _slack_str(rec["support_slack"]), f"{rec['duration_s']:.6f}",
    ])


def run_sweep(config: ExperimentConfig,
              instance: Instance | None = None) -> dict:
    """Decode trials over the noise grid; returns records plus summary.

    When ``config.out`` is set, writes ``<out>.csv`` and ``<out>.json``.
    """
    inst = instance if instance is not None else build_instance(config)
    grid = [(pp, ps) for pp in config.noise["p_phys"]
            for ps in config.noise["p_synd"]]
    jobs = [(gi, pp, ps, ti) for gi, (pp, ps) in enumerate(grid)
            for ti in range(config.trials)]
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(
                lambda j: _run_grid_trial(config, inst, j[0], j[1], j[2], j[3]),
                jobs))
    else:
        records = [_run_grid_trial(config, inst, *j) for j in jobs]
    records.sort(key=lambda r: (r["grid_index"], r["trial"]))

    points = []
    for gi, (pp, ps) in enumerate(grid):
        rs = [r for r in records if r["grid_index"] == gi]
        n = len(rs)
        fails_strict = sum(not (r["outcome"] in ("exact", "stabilizer_equivalent"))
                           for r in rs)
        fails_res = sum(_is_failure_record(r, config.fail_policy) for r in rs)
        slacks = [r["support_slack"] for r in rs
                  if r["support_slack"] is not None]
        counts: dict = {}
        for r in rs:
            counts[r["outcome"]] = counts.get(r["outcome"], 0) + 1
        points.append({
            "p_phys": pp, "p_synd": ps, "trials": n,
            "failures_strict": fails_strict,
            "rate_strict": fails_strict / n,
            "ci_strict": list(wilson_interval(fails_strict, n)),
            "failures_policy": fails_res,
            "rate_policy": fails_res / n,
            "ci_policy": list(wilson_interval(fails_res, n)),
            "mean_e_weight": float(np.mean([r["e_weight"] for r in rs])),
            "mean_flips": float(np.mean([r["flips"] for r in rs])),
            "mean_residual": float(np.mean([r["residual_weight"] for r in rs])),
            "outcome_counts": counts,
            "min_slack": _slack_str(min(slacks)) if slacks else "",
            "slack_violations": sum(s < 0 for s in slacks),
        })
    summary = {"version": SWEEP_VERSION, "mode": MODE,
               "config": config.to_dict(), "points": points}
    if config.out:
        with open(str(config.out) + ".csv", "w") as fh:
            fh.write(f"# {SWEEP_VERSION}\n{SWEEP_COLUMNS}\n")
            for r in records:
                fh.write(_sweep_row(r) + "\n")
        with open(str(config.out) + ".json", "w") as fh:
            json.dump(summary, fh, indent=1)
    return {"records": records, "summary": summary}


def _is_failure_record(rec: dict, policy: dict) -> bool:
    if policy["mode"] == "strict":
        return rec["outcome"] not in ("exact", "stabilizer_equivalent")
    if rec["outcome"] == "logical_failure":
        return True
    return rec["outcome"] == "syndrome_nonzero" and \
        rec["residual_weight"] > int(policy["threshold"])


def _run_cycle_trial(config, inst, ti) -> list:
    rows = []
    residual = bitset.zeros(inst.code.n)
    blow_at = config.blowup_fraction * inst.code.n
    pp = config.noise["p_phys"][0]
    ps = config.noise["p_synd"][0]
    for ci in range(config.cycles):
        t0 = time.perf_counter()
        rng = trial_rng(config.master_seed, _STREAM_CYCLES, ti, ci)
        e_new, d_words = sample_error(_noise_spec(pp, ps), inst.code, rng)
        residual = residual ^ e_new
        sigma = syndrome_x(inst.code, residual) ^ d_words
        out = run_decoder(inst.code, inst.table, sigma, inst.params,
                          coloring=inst.coloring, ledger=inst.ledger)
        residual = residual ^ out.e_hat
        w = bitset.popcount(residual)
        rows.append({
            "trial": ti, "cycle": ci,
            "seed": f"{config.master_seed}:{_STREAM_CYCLES}:{ti}:{ci}",
            "e_new_weight": bitset.popcount(e_new),
            "d_weight": bitset.popcount(d_words),
            "sigma_weight": bitset.popcount(sigma),
            "steps": out.steps, "flips": out.n_flips,
            "residual_weight": w, "blowup": int(w > blow_at),
            "duration_s": time.perf_counter() - t0,
            "_residual": residual if ci == config.cycles - 1 else None,
        })
    return rows


def run_cycles(config: ExperimentConfig,
               instance: Instance | None = None) -> dict:
    """Repeated-cycle simulation at the first grid point of the config."""
    inst = instance if instance is not None else build_instance(config)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            per_trial = list(pool.map(
                lambda ti: _run_cycle_trial(config, inst, ti),
                range(config.trials)))
    else:
        per_trial = [_run_cycle_trial(config, inst, ti)
                     for ti in range(config.trials)]

    weights = np.asarray([[row["residual_weight"] for row in rows]
                          for rows in per_trial], dtype=np.int64)
    trials_summary = []
    for ti, rows in enumerate(per_trial):
        final_residual = rows[-1].pop("_residual")
        oc = classify(inst.code, final_residual, bitset.zeros(inst.code.n))
        trials_summary.append({
            "trial": ti, "final_outcome": oc.kind,
            "final_residual": int(weights[ti, -1]),
            "blowup": bool(any(r["blowup"] for r in rows)),
        })
        for r in rows:
            r.pop("_residual", None)

    median_traj = np.median(weights, axis=0)
    summary = {
        "version": CYCLES_VERSION, "mode": MODE, "config": config.to_dict(),
        "median_trajectory": [float(v) for v in median_traj],
        "max_residual": int(weights.max()),
        "blowup_trials": sum(t["blowup"] for t in trials_summary),
        "final_outcomes": _count_by(trials_summary, "final_outcome"),
        "mann_kendall_median": mann_kendall(median_traj),
        "trials": trials_summary,
    }
    if config.out:
        with open(str(config.out) + ".csv", "w") as fh:
            fh.write(f"# {CYCLES_VERSION}\n{CYCLES_COLUMNS}\n")
            for rows in per_trial:
                for r in rows:
                    fh.write(",".join([
                        str(r["trial"]), str(r["cycle"]), r["seed"],
                        str(r["e_new_weight"]), str(r["d_weight"]),
                        str(r["sigma_weight"]), str(r["steps"]),
                        str(r["flips"]), str(r["residual_weight"]),
                        str(r["blowup"]), f"{r['duration_s']:.6f}",
                    ]) + "\n")
        with open(str(config.out) + ".json", "w") as fh:
            json.dump(summary, fh, indent=1)
    return {"rows": [r for rows in per_trial for r in rows],
            "summary": summary}


def _count_by(dicts, key) -> dict:
    out: dict = {}
    for d in dicts:
        out[d[key]] = out.get(d[key], 0) + 1
    return out


def complement_closure_report(table: FlipTable) -> dict:
    """For every degree class, verify F or its in-generator complement is
    kept by the threshold filter, and that the stored tables are complete
    and correctly filtered."""
    per_class = []
    ok = True
    for ci, (db, da) in enumerate(table.classes):
        n_sup = db + da
        full_mask = (1 << n_sup) - 1
        lo, hi = table.filtered_range(ci)
        kept = set(int(m) for m in table.fl_fmask[lo:hi])
        f0_lo, f0_hi = table.full_range(ci)
        complete = (f0_hi - f0_lo) == full_mask
        member_ok = all(
            2 * int(table.fl_ssize[i]) >= da * int(table.fl_fsize[i])
            for i in range(lo, hi))
        closure_ok = True
        for fm in range(1, full_mask + 1):
            comp = full_mask ^ fm
            if fm not in kept and comp != 0 and comp not in kept:
                closure_ok = False
                break
        ok &= complete and member_ok and closure_ok
        per_class.append({"degrees": [db, da], "full_entries": f0_hi - f0_lo,
                          "kept_entries": hi - lo, "complete": complete,
                          "membership_ok": member_ok,
                          "complement_closure_ok": closure_ok})
    return {"ok": bool(ok), "classes": per_class}


def _audit_trial(config, inst, coloring, ti) -> list:
    """Run one audit trial; returns a list of violation dicts (empty = pass)."""
    pp = config.noise["p_phys"][0]
    ps = config.noise["p_synd"][0]
    rng = trial_rng(config.master_seed, _STREAM_AUDIT, ti)
    e_words, d_words = sample_error(_noise_spec(pp, ps), inst.code, rng)
    sigma = syndrome_x(inst.code, e_words) ^ d_words
    seed = f"{config.master_seed}:{_STREAM_AUDIT}:{ti}"
    bad = []

    try:
        out = run_decoder(inst.code, inst.table, sigma, inst.params,
                          coloring=coloring, ledger=inst.ledger)
    except InvariantViolation as exc:
        return [{"seed": seed, "check": "decode_invariant",
                 "detail": str(exc)}]
    replay = check_flip_log(inst.code, inst.table, sigma, out)
    if not replay["ok"]:
        bad.append({"seed": seed, "check": "flip_log_replay",
                    "detail": replay["violations"][:3]})
    if out.variant != "parallel":
        tr = out.sigma_trace
        if not (np.all(np.diff(tr) < 0) if tr.shape[0] > 1 else True):
            bad.append({"seed": seed, "check": "strict_progress"})
        if out.steps > bitset.popcount(sigma):
            bad.append({"seed": seed, "check": "step_bound"})
    else:
        if out.additivity_mismatches:
            bad.append({"seed": seed, "check": "parallel_additivity",
                        "detail": out.additivity_mismatches})
        if not _parallel_trace_replay(inst, sigma, out):
            bad.append({"seed": seed, "check": "parallel_trace_replay"})
    slack = support_slack(inst, e_words, d_words, out)
    if slack is not None and slack < 0:
        bad.append({"seed": seed, "check": "support_bound",
                    "detail": _slack_str(slack)})
    oc = classify(inst.code, e_words, out.e_hat)
    resid_synd_zero = bitset.is_zero(out.sigma_final ^ d_words)
    if resid_synd_zero == (oc.kind == "syndrome_nonzero"):
        bad.append({"seed": seed, "check": "classification_consistency"})
    return bad


def _parallel_trace_replay(inst: Instance, sigma0: np.ndarray,
                           out: DecodeOutcome) -> bool:
    """Apply the parallel flip log step by step; the syndrome weight after
    each executed step must reproduce the recorded trace."""
    sigma = sigma0.copy()
    tr = out.sigma_trace
    if tr.shape[0] == 0 or tr[0] != bitset.popcount(sigma0):
        return False
    fi = 0
    for s in range(out.executed_steps):
        while fi < out.n_flips and out.flip_step[fi] == s:
            g = int(out.flip_gen[fi])
            fm = int(out.flip_fmask[fi])
            qs = inst.table.flip_qubits(g, fm)
            sigma = sigma ^ np.bitwise_xor.reduce(inst.code.x_masks[qs], axis=0)
            fi += 1
        if tr[s + 1] != bitset.popcount(sigma):
            return False
    return fi == out.n_flips


def run_invariant_audit(config: ExperimentConfig,
                        instance: Instance | None = None,
                        coloring_override: np.ndarray | None = None) -> dict:
    """Randomized invariant suite plus structural checks; JSON-ready report.

    ``coloring_override`` substitutes a (possibly unsound) coloring for the
    parallel checks, which is how the fault-injection test exercises the
    soundness detector.
    """
    inst = instance if instance is not None else build_instance(config)
    coloring = inst.coloring if coloring_override is None else \
        np.ascontiguousarray(coloring_override, dtype=np.int32)

    structural: dict = {}
    closure = complement_closure_report(inst.table)
    structural["candidate_tables"] = closure
    conflicts = check_coloring(inst.table, coloring)
    n_colors = int(coloring.max()) + 1 if coloring.size else 0
    structural["coloring"] = {
        "ok": not conflicts, "colors": n_colors,
        "chi": inst.ledger.chi, "within_chi": n_colors <= inst.ledger.chi,
        "conflicts": conflicts[:10],
    }

    ls = None
    pp = config.noise["p_phys"][0]
    if 0.0 < pp < 1.0:
        probe_rng = trial_rng(config.master_seed, _STREAM_LS)
        probes = [[0], [1], [0, 1],
                  sorted(int(v) for v in
                         probe_rng.choice(inst.code.n, 3, replace=False))]
        ls = ls_audit(NoiseSpec(qubit=("iid", pp)), inst.code.n, probes,
                      trials=min(20000, max(2000, config.trials)),
                      rng=trial_rng(config.master_seed, _STREAM_LS, 1))
        structural["locally_stochastic"] = {"ok": ls["ok"],
                                            "trials": ls["trials"]}

    violations = []
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            for bad in pool.map(
                    lambda ti: _audit_trial(config, inst, coloring, ti),
                    range(config.trials)):
                violations.extend(bad)
    else:
        for ti in range(config.trials):
            violations.extend(_audit_trial(config, inst, coloring, ti))

    ok = (closure["ok"] and structural["coloring"]["ok"]
          and structural["coloring"]["within_chi"]
          and (ls is None or ls["ok"]) and not violations)
    return {
        "version": "qexpander audit v1", "mode": MODE,
        "config": config.to_dict(), "trials": config.trials,
        "structural": structural,
        "violation_count": len(violations),
        "violations": violations[:50],
        "ok": bool(ok),
    }
