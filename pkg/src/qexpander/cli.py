"""Command line front end.

Subcommands:
  gen-graph   sample a biregular seed graph and save it
  build-info  print code parameters and derived constants for a config
  decode      decode one syndrome read from a file
  sweep       Monte Carlo failure-rate sweep over a noise grid
  cycles      repeated-cycle residual-weight simulation
  audit       randomized invariant suite; exit status 1 on any violation

Experiment subcommands read a JSON config (see harness.ExperimentConfig)
and accept overrides: --seed, --out, --beta num/denom, --variant,
--stopping.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bitset
from ._kernels import MODE
from .code import build_code, code_dimension, css_orthogonality_violations
from .decoder import run_decoder, write_flip_log
from .graph import load_graph, sample_biregular, save_graph
from .harness import (ExperimentConfig, build_instance, run_cycles,
                      run_invariant_audit, run_sweep)


def _add_overrides(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", required=True, help="JSON experiment config")
    p.add_argument("--seed", type=int, default=None,
                   help="override the master seed")
    p.add_argument("--out", default=None, help="override the output prefix")
    p.add_argument("--beta", default=None,
                   help="decoder threshold as num/denom")
    p.add_argument("--variant", choices=("ratio", "beta", "parallel"),
                   default=None)
    p.add_argument("--stopping", choices=("fixpoint", "f0"), default=None)


def _load_config(args) -> ExperimentConfig:
    cfg = ExperimentConfig.from_json(args.config)
    if args.seed is not None:
        cfg.master_seed = args.seed
    if args.out is not None:
        cfg.out = args.out
    if args.beta is not None:
        cfg.decoder["beta"] = args.beta
    if args.variant is not None:
        cfg.decoder["variant"] = args.variant
    if args.stopping is not None:
        cfg.decoder["stopping"] = args.stopping
    return cfg


def _cmd_gen_graph(args) -> int:
    g = sample_biregular(args.n_a, args.d_a, args.d_b, seed=args.seed)
    save_graph(g, args.out)
    print(f"wrote ({g.n_A},{g.n_B}) graph with degrees "
          f"({g.d_A},{g.d_B}), {g.n_edges} edges -> {args.out}")
    return 0


def _cmd_build_info(args) -> int:
    cfg = _load_config(args)
    inst = build_instance(cfg)
    code = inst.code
    info = {
        "n": code.n, "n_checks_x": code.n_cx, "n_generators_z": code.n_cz,
        "k": code_dimension(code),
        "css_violations": css_orthogonality_violations(code),
        "colors": int(inst.coloring.max()) + 1,
        "kernel_mode": MODE,
        "constants": inst.ledger.to_dict(),
    }
    print(json.dumps(info, indent=1))
    return 0


def _read_syndrome(path, n_cx: int) -> np.ndarray:
    with open(path) as fh:
        idx = [int(tok) for tok in fh.read().split()]
    return bitset.from_indices(np.asarray(idx, dtype=np.int64), n_cx)


def _cmd_decode(args) -> int:
    cfg = _load_config(args)
    inst = build_instance(cfg)
    sigma = _read_syndrome(args.syndrome, inst.code.n_cx)
    out = run_decoder(inst.code, inst.table, sigma, inst.params,
                      coloring=inst.coloring, ledger=inst.ledger)
    if args.flip_log:
        write_flip_log(out, inst.table, args.flip_log)
    print(json.dumps({
        "variant": out.variant,
        "sigma_weight": bitset.popcount(sigma),
        "final_weight": bitset.popcount(out.sigma_final),
        "steps": out.steps, "executed_steps": out.executed_steps,
        "flips": out.n_flips, "terminated_by": out.terminated_by,
        "e_hat_weight": bitset.popcount(out.e_hat),
        "e_hat": [int(v) for v in bitset.to_indices(out.e_hat, inst.code.n)],
    }, indent=1))
    return 0


def _cmd_sweep(args) -> int:
    cfg = _load_config(args)
    res = run_sweep(cfg)
    for pt in res["summary"]["points"]:
        ci = pt["ci_strict"]
        print(f"p_phys={pt['p_phys']:g} p_synd={pt['p_synd']:g} "
              f"trials={pt['trials']} fail_strict={pt['rate_strict']:.4g} "
              f"ci=[{ci[0]:.4g},{ci[1]:.4g}] "
              f"slack_violations={pt['slack_violations']}")
    if cfg.out:
        print(f"wrote {cfg.out}.csv and {cfg.out}.json")
    return 0


def _cmd_cycles(args) -> int:
    cfg = _load_config(args)
    res = run_cycles(cfg)
    s = res["summary"]
    mk = s["mann_kendall_median"]
    print(f"trials={cfg.trials} cycles={cfg.cycles} "
          f"max_residual={s['max_residual']} blowups={s['blowup_trials']} "
          f"median_trend_z={mk['z']:.3f} upward={mk['upward']}")
    if cfg.out:
        print(f"wrote {cfg.out}.csv and {cfg.out}.json")
    return 0


def _cmd_audit(args) -> int:
    cfg = _load_config(args)
    report = run_invariant_audit(cfg)
    if cfg.out:
        with open(str(cfg.out) + ".json", "w") as fh:
            json.dump(report, fh, indent=1)
    print(json.dumps(report, indent=1, default=str))
    return 0 if report["ok"] else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qexpander",
        description="Quantum expander codes with small-set-flip decoding")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-graph", help="sample and save a seed graph")
    p.add_argument("--n-a", type=int, required=True, dest="n_a")
    p.add_argument("--d-a", type=int, required=True, dest="d_a")
    p.add_argument("--d-b", type=int, required=True, dest="d_b")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen_graph)

    p = sub.add_parser("build-info", help="print code and constant info")
    _add_overrides(p)
    p.set_defaults(func=_cmd_build_info)

    p = sub.add_parser("decode", help="decode one syndrome from a file")
    _add_overrides(p)
    p.add_argument("--syndrome", required=True,
                   help="file of set X-check indices")
    p.add_argument("--flip-log", default=None, dest="flip_log",
                   help="write the flip log here")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("sweep", help="failure-rate sweep over the noise grid")
    _add_overrides(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("cycles", help="repeated-cycle simulation")
    _add_overrides(p)
    p.set_defaults(func=_cmd_cycles)

    p = sub.add_parser("audit", help="run the invariant suite")
    _add_overrides(p)
    p.set_defaults(func=_cmd_audit)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
