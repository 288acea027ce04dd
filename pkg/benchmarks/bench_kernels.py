"""Timing comparison of the decoder kernels: numba against pure Python.

Both flavors are loaded in-process via qexpander._kernels, so the numbers
come from identical inputs and the outputs are cross-checked bit for bit.

Run: python benchmarks/bench_kernels.py [--n-a 60] [--trials 50] [--p 0.01]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qexpander import bitset
from qexpander._kernels import JIT, PURE
from qexpander.code import build_code, syndrome_x
from qexpander.decoder import decode_beta, precompute_flips
from qexpander.graph import sample_biregular
from qexpander.noise import NoiseSpec, sample_error, trial_rng

# decode_beta resolves ACTIVE through the decoder module's namespace, so
# that is the binding to swap when switching flavors
import qexpander.decoder as decoder_mod


def run_batch(code, table, syndromes, beta):
    t0 = time.perf_counter()
    outs = [decode_beta(code, table, s, beta) for s in syndromes]
    dt = time.perf_counter() - t0
    return outs, dt


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-a", type=int, default=60, dest="n_a")
    ap.add_argument("--d-a", type=int, default=5, dest="d_a")
    ap.add_argument("--d-b", type=int, default=10, dest="d_b")
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--p", type=float, default=0.01)
    ap.add_argument("--beta", default="1/2")
    args = ap.parse_args()

    g = sample_biregular(args.n_a, args.d_a, args.d_b, seed=7)
    code = build_code(g)
    table = precompute_flips(code)
    spec = NoiseSpec(qubit=("iid", args.p))
    syndromes = []
    for t in range(args.trials):
        e, _ = sample_error(spec, code, trial_rng(99, t))
        syndromes.append(syndrome_x(code, e))
    mean_w = np.mean([bitset.popcount(s) for s in syndromes])
    print(f"code n={code.n}, {args.trials} syndromes, "
          f"mean |sigma| = {mean_w:.1f}")

    if JIT is None:
        print("numba flavor unavailable (not installed or QEXPANDER_JIT=0); "
              "timing the pure path only")
        decoder_mod.ACTIVE = PURE
        _, dt = run_batch(code, table, syndromes, args.beta)
        print(f"pure python: {dt:.3f} s total, {1e3 * dt / args.trials:.2f} "
              f"ms/decode")
        return 0

    results = {}
    for name, impl in (("numba", JIT), ("pure", PURE)):
        decoder_mod.ACTIVE = impl
        if name == "numba":
            # first call includes compilation; do one warmup decode
            decode_beta(code, table, syndromes[0], args.beta)
        outs, dt = run_batch(code, table, syndromes, args.beta)
        results[name] = (outs, dt)
        print(f"{name:>6}: {dt:.3f} s total, "
              f"{1e3 * dt / args.trials:.2f} ms/decode")
    decoder_mod.ACTIVE = JIT

    a, b = results["numba"][0], results["pure"][0]
    identical = all(
        np.array_equal(x.e_hat, y.e_hat)
        and np.array_equal(x.flip_gen, y.flip_gen)
        and np.array_equal(x.flip_fmask, y.flip_fmask)
        for x, y in zip(a, b))
    print(f"outputs bit-identical: {identical}")
    print(f"speedup: {results['pure'][1] / results['numba'][1]:.1f}x")
    return 0 if identical else 1


if __name__ == "__main__":
    raise SystemExit(main())
