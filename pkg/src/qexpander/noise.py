"""Noise sampling for decoding experiments.

Two sampler families: i.i.d. bit flips with probability p, and fixed-weight
uniform errors.  Qubit errors E and syndrome-bit errors D are drawn
independently; the decoder then sees sigma_X(E) xor D.  The i.i.d. family
is the canonical locally stochastic model (P[S subset E] = p^|S| exactly);
``ls_audit`` checks that product bound empirically.

Per-trial reproducibility comes from counter-based stream derivation: a
trial's generator is seeded with the integer tuple (master_seed, *stream),
so any record can be replayed from its coordinates alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bitset
from .code import CssCode, syndrome_x
from .errors import ParameterError, UnsupportedModelError

_MODEL_KINDS = ("iid", "fixed_weight", "none")


@dataclass(frozen=True)
class NoiseSpec:
    """Qubit and syndrome error models.

    Each model is a tuple: ("iid", p), ("fixed_weight", w) or ("none",).
    """

    qubit: tuple
    synd: tuple = ("none",)

    def __post_init__(self):
        for name, model in (("qubit", self.qubit), ("synd", self.synd)):
            if not model or model[0] not in _MODEL_KINDS:
                raise ParameterError(f"unknown {name} model {model!r}")
            if model[0] == "iid":
                p = model[1]
                if not (0.0 <= p <= 1.0):
                    raise ParameterError(f"{name} iid probability {p} not in [0,1]")
            elif model[0] == "fixed_weight":
                if model[1] < 0:
                    raise ParameterError(f"{name} fixed weight must be >= 0")
        if self.qubit[0] == "none":
            raise ParameterError("qubit model cannot be 'none'")

    def to_dict(self) -> dict:
        def one(m):
            if m[0] == "iid":
                return {"kind": "iid", "p": float(m[1])}
            if m[0] == "fixed_weight":
                return {"kind": "fixed_weight", "w": int(m[1])}
            return {"kind": "none"}
        return {"qubit": one(self.qubit), "synd": one(self.synd)}

    @classmethod
    def from_dict(cls, d: dict) -> "NoiseSpec":
        def one(m):
            if m["kind"] == "iid":
                return ("iid", float(m["p"]))
            if m["kind"] == "fixed_weight":
                return ("fixed_weight", int(m["w"]))
            if m["kind"] == "none":
                return ("none",)
            raise ParameterError(f"unknown model kind {m['kind']!r}")
        return cls(qubit=one(d["qubit"]), synd=one(d.get("synd", {"kind": "none"})))


def trial_rng(master_seed: int, *stream: int) -> np.random.Generator:
    """Independent generator for a trial, derived by counter splitting.

    The stream coordinates (grid index, trial index, cycle index, ...) plus
    the master seed form the seed sequence, so streams never collide and any
    one of them can be reconstructed without drawing the others.
    """
    return np.random.default_rng([int(master_seed), *(int(s) for s in stream)])


def _sample_bits(model: tuple, n: int, rng: np.random.Generator) -> np.ndarray:
    if model[0] == "none":
        return bitset.zeros(n)
    if model[0] == "iid":
        return bitset.from_bool(rng.random(n) < model[1])
    if model[0] == "fixed_weight":
        w = int(model[1])
        if w > n:
            raise ParameterError(f"fixed weight {w} exceeds size {n}")
        return bitset.from_indices(rng.choice(n, size=w, replace=False), n)
    raise ParameterError(f"unknown model {model!r}")


def sample_error(spec: NoiseSpec, code: CssCode, rng: np.random.Generator):
    """Draw (E, D): qubit error bitset and syndrome error bitset.

    The qubit draw always happens before the syndrome draw, so a given
    generator state yields the same E regardless of the syndrome model.
    """
    e_words = _sample_bits(spec.qubit, code.n, rng)
    d_words = _sample_bits(spec.synd, code.n_cx, rng)
    return e_words, d_words


def observed_syndrome(code: CssCode, e_words: np.ndarray,
                      d_words: np.ndarray) -> np.ndarray:
    """sigma_X(E) xor D, what the decoder actually receives."""
    return syndrome_x(code, e_words) ^ d_words


def ls_audit(spec: NoiseSpec, n: int, probes, trials: int,
             rng: np.random.Generator, alpha: float = 1e-4,
             batch: int = 2000) -> dict:
    """Empirical check of the locally stochastic product bound on E.

    For each probe subset S, tests the observed count of trials with
    S subset E against Binomial(trials, p^|S|) with an exact two-sided
    test at significance ``alpha``.  A sigma band would misfire here: for
    small p^|S| a single hit already lies many sigmas out.  Only defined
    for the i.i.d. qubit model, where the bound is an exact equality.

    Returns a dict with per-probe rows and an overall ``ok`` flag.

    Raises:
        UnsupportedModelError: the qubit model is not i.i.d.
    """
    from scipy.stats import binomtest

    if spec.qubit[0] != "iid":
        raise UnsupportedModelError(
            f"ls_audit covers the iid model only, got {spec.qubit[0]!r}")
    p = float(spec.qubit[1])
    probes = [np.asarray(sorted(set(int(v) for v in s)), dtype=np.int64)
              for s in probes]
    for s in probes:
        if s.size and (s[0] < 0 or s[-1] >= n):
            raise ParameterError("probe index out of range")

    hits = np.zeros(len(probes), dtype=np.int64)
    done = 0
    while done < trials:
        m = min(batch, trials - done)
        draws = rng.random((m, n)) < p
        for k, s in enumerate(probes):
            if s.size == 0:
                hits[k] += m
            else:
                hits[k] += int(draws[:, s].all(axis=1).sum())
        done += m

    rows = []
    all_ok = True
    for k, s in enumerate(probes):
        expected = p ** len(s)
        pvalue = binomtest(int(hits[k]), trials, expected).pvalue
        ok = bool(pvalue >= alpha)
        all_ok &= ok
        rows.append({"probe": [int(v) for v in s], "expected": expected,
                     "observed": hits[k] / trials, "pvalue": float(pvalue),
                     "ok": ok})
    return {"ok": all_ok, "trials": trials, "p": p, "rows": rows}
