"""Error sampling, stream reproducibility, and the product-bound audit."""

from __future__ import annotations

import numpy as np
import pytest

from qexpander import bitset
from qexpander.errors import ParameterError, UnsupportedModelError
from qexpander.noise import (NoiseSpec, ls_audit, observed_syndrome,
                             sample_error, trial_rng)


def test_spec_validation():
    NoiseSpec(qubit=("iid", 0.1))
    NoiseSpec(qubit=("fixed_weight", 3), synd=("iid", 0.0))
    with pytest.raises(ParameterError):
        NoiseSpec(qubit=("iid", 1.5))
    with pytest.raises(ParameterError):
        NoiseSpec(qubit=("fixed_weight", -1))
    with pytest.raises(ParameterError):
        NoiseSpec(qubit=("bursty", 0.1))
    with pytest.raises(ParameterError):
        NoiseSpec(qubit=("none",))


def test_spec_dict_round_trip():
    spec = NoiseSpec(qubit=("iid", 0.01), synd=("fixed_weight", 2))
    assert NoiseSpec.from_dict(spec.to_dict()) == spec
    bare = NoiseSpec(qubit=("iid", 0.5))
    assert NoiseSpec.from_dict(bare.to_dict()) == bare


def test_trial_rng_streams_are_reproducible_and_distinct():
    a1 = trial_rng(7, 0, 3).random(8)
    a2 = trial_rng(7, 0, 3).random(8)
    b = trial_rng(7, 0, 4).random(8)
    c = trial_rng(8, 0, 3).random(8)
    assert np.array_equal(a1, a2)
    assert not np.array_equal(a1, b)
    assert not np.array_equal(a1, c)


def test_sample_error_draw_order_insulates_qubit_error(toy_code):
    # E must not depend on the syndrome model: same stream, different D law
    s1 = NoiseSpec(qubit=("iid", 0.2), synd=("none",))
    s2 = NoiseSpec(qubit=("iid", 0.2), synd=("iid", 0.5))
    e1, d1 = sample_error(s1, toy_code, trial_rng(5, 1))
    e2, d2 = sample_error(s2, toy_code, trial_rng(5, 1))
    assert bitset.equal(e1, e2)
    assert bitset.is_zero(d1)
    assert d2.shape[0] == toy_code.n_words_cx


def test_fixed_weight_is_exact(toy_code):
    spec = NoiseSpec(qubit=("fixed_weight", 4), synd=("fixed_weight", 2))
    for t in range(10):
        e, d = sample_error(spec, toy_code, trial_rng(3, t))
        assert bitset.popcount(e) == 4
        assert bitset.popcount(d) == 2
    too_big = NoiseSpec(qubit=("fixed_weight", toy_code.n + 1))
    with pytest.raises(ParameterError):
        sample_error(too_big, toy_code, trial_rng(0, 0))


def test_iid_rate_is_plausible(mid_code):
    spec = NoiseSpec(qubit=("iid", 0.05))
    total = 0
    trials = 200
    for t in range(trials):
        e, _ = sample_error(spec, mid_code, trial_rng(1, 2, t))
        total += bitset.popcount(e)
    mean = total / trials
    expect = 0.05 * mid_code.n
    sigma = np.sqrt(0.05 * 0.95 * mid_code.n / trials)
    assert abs(mean - expect) < 5 * sigma


def test_observed_syndrome_xors_the_syndrome_error(toy_code):
    e = bitset.from_indices([0, 5], toy_code.n)
    d = bitset.from_indices([1], toy_code.n_cx)
    base = observed_syndrome(toy_code, e, bitset.zeros(toy_code.n_cx))
    noisy = observed_syndrome(toy_code, e, d)
    assert bitset.equal(noisy ^ d, base)


def test_ls_audit_accepts_the_iid_sampler():
    spec = NoiseSpec(qubit=("iid", 0.05))
    report = ls_audit(spec, 64, [[0], [1, 2], [3, 4, 5], []],
                      trials=4000, rng=trial_rng(0, 3))
    assert report["ok"]
    assert report["rows"][3]["observed"] == 1.0  # empty probe always holds
    for row in report["rows"]:
        assert row["pvalue"] >= 1e-4


def test_ls_audit_flags_a_biased_sampler():
    # a generator whose uniform draws are squeezed doubles every marginal,
    # so the observed subset frequencies leave the binomial band
    class Squeezed:
        def __init__(self):
            self._rng = np.random.default_rng(9)

        def random(self, shape):
            return self._rng.random(shape) * 0.5

    spec = NoiseSpec(qubit=("iid", 0.05))
    report = ls_audit(spec, 64, [[0], [1, 2]], trials=4000, rng=Squeezed())
    assert not report["ok"]


def test_ls_audit_rejects_unsupported_models():
    with pytest.raises(UnsupportedModelError):
        ls_audit(NoiseSpec(qubit=("fixed_weight", 2)), 16, [[0]],
                 trials=10, rng=trial_rng(0, 0))
    with pytest.raises(ParameterError):
        ls_audit(NoiseSpec(qubit=("iid", 0.1)), 16, [[99]],
                 trials=10, rng=trial_rng(0, 0))
