"""Derived decoder constants for a biregular code family.

All inputs that can be rational are kept as exact fractions so the decoder
threshold test and the support bound use integer arithmetic only; floats
appear only where a square root or logarithm forces them.

Input parameters:
    d_A, d_B: seed degrees (d_A <= d_B by convention).
    delta:    the vertex-expansion slack assumed of the seed graph.
    beta:     flip acceptance threshold of the decoder, in (0, beta_1).
    c:        witness-size budget used by the parallel step bound.
    gamma:    the expansion fraction assumed of the seed graph.

Derived quantities (valid once delta < 1/16, 0 < beta < beta_1 and
c > c_2 + 1):

    r       = d_A / d_B
    gamma_0 = r^2 * gamma / sqrt(1 + r^2)
    beta_0  = 1 - 8 * delta
    beta_1  = 1 - 16 * delta
    c_0     = 4 / (d_A * (beta_1 - beta))
    c_1     = (beta_1 - beta) / (beta_0 * (1 - beta))
    c_2     = 2 * beta_0 / (beta_1 - beta)
    c_3     = 2 * (1 + c) / (beta * d_A)
    chi     = (d_B*(d_A-1) + 1) * (d_A*(d_B-1) + 1)
    alpha_0 = r*beta / (4 + 2*r*beta)
    eta     = 1 - beta*c_1*(c - 1 - c_2) / (d_A*d_B*chi*c)
    d       = d_B * (d_B + 2*d_A - 1)
    w_0(n_B)= gamma * n_B / (3 * (1 + d_B))
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError


def to_fraction(x) -> Fraction:
    """Exact rational from int, Fraction, 'num/denom' string or float.

    Floats go through their decimal repr so 0.1 means 1/10, not the binary
    expansion.
    """
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


@dataclass(frozen=True)
class ConstantsLedger:
    d_A: int
    d_B: int
    delta: Fraction
    beta: Fraction
    c: Fraction
    gamma: Fraction

    def __post_init__(self):
        object.__setattr__(self, "delta", to_fraction(self.delta))
        object.__setattr__(self, "beta", to_fraction(self.beta))
        object.__setattr__(self, "c", to_fraction(self.c))
        object.__setattr__(self, "gamma", to_fraction(self.gamma))
        if self.d_A < 1 or self.d_B < 1:
            raise ParameterError("degrees must be >= 1")

    # primary derived values
    @property
    def r(self) -> Fraction:
        return Fraction(self.d_A, self.d_B)

    @property
    def beta0(self) -> Fraction:
        return 1 - 8 * self.delta

    @property
    def beta1(self) -> Fraction:
        return 1 - 16 * self.delta

    @property
    def c0(self) -> Fraction:
        return Fraction(4) / (self.d_A * (self.beta1 - self.beta))

    @property
    def c1(self) -> Fraction:
        return (self.beta1 - self.beta) / (self.beta0 * (1 - self.beta))

    @property
    def c2(self) -> Fraction:
        return 2 * self.beta0 / (self.beta1 - self.beta)

    @property
    def c3(self) -> Fraction:
        return 2 * (1 + self.c) / (self.beta * self.d_A)

    @property
    def chi(self) -> int:
        return (self.d_B * (self.d_A - 1) + 1) * (self.d_A * (self.d_B - 1) + 1)

    @property
    def alpha0(self) -> Fraction:
        rb = self.r * self.beta
        return rb / (4 + 2 * rb)

    @property
    def eta(self) -> Fraction:
        return 1 - (self.beta * self.c1 * (self.c - 1 - self.c2)
                    / (self.d_A * self.d_B * self.chi * self.c))

    @property
    def d(self) -> int:
        return self.d_B * (self.d_B + 2 * self.d_A - 1)

    def gamma0(self) -> float:
        r = float(self.r)
        return r * r * float(self.gamma) / math.sqrt(1.0 + r * r)

    def w0(self, n_B: int) -> float:
        return float(self.gamma) * n_B / (3.0 * (1 + self.d_B))

    def validate(self) -> None:
        """Raise ParameterError unless every derived constant is in its valid range."""
        problems = []
        if not self.delta < Fraction(1, 16):
            problems.append(f"delta={self.delta} must be < 1/16")
        if not (0 < self.beta < self.beta1):
            problems.append(f"beta={self.beta} must be in (0, beta1={self.beta1})")
        elif not self.c > self.c2 + 1:
            # c2 only exists once beta < beta1, hence the guard above
            problems.append(f"c={self.c} must exceed c2+1={self.c2 + 1}")
        if not (0 < self.gamma <= 1):
            problems.append(f"gamma={self.gamma} must be in (0, 1]")
        if problems:
            raise ParameterError("; ".join(problems))
        # consequences of the conditions above; fail loudly if the algebra
        # above is ever edited into inconsistency
        assert self.c0 > 0 and self.c1 > 0 and self.c2 > 0 and self.c3 > 0
        assert 0 < self.alpha0 <= 1
        assert self.eta < 1

    def f0_steps(self, s: int) -> int:
        """Parallel step budget for an initial syndrome of weight s.

        ceil(chi * log(s) / log(1/eta)); zero syndrome bits need zero steps,
        as does weight one (log 1 = 0).

        Raises:
            ParameterError: eta >= 1, so no finite budget exists for s > 1.
        """
        if s < 0:
            raise ParameterError("syndrome weight cannot be negative")
        if s <= 1:
            return 0
        if not self.eta < 1:
            raise ParameterError(f"eta={float(self.eta)} >= 1: step budget undefined")
        one_minus_eta = self.eta.denominator - self.eta.numerator
        log_inv_eta = -math.log1p(-one_minus_eta / self.eta.denominator)
        return math.ceil(self.chi * math.log(s) / log_inv_eta)

    def to_dict(self) -> dict:
        return {
            "d_A": self.d_A, "d_B": self.d_B,
            "delta": str(self.delta), "beta": str(self.beta),
            "c": str(self.c), "gamma": str(self.gamma),
            "derived": {
                "r": str(self.r), "beta0": str(self.beta0), "beta1": str(self.beta1),
                "c0": str(self.c0), "c1": str(self.c1), "c2": str(self.c2),
                "c3": str(self.c3), "chi": self.chi, "alpha0": str(self.alpha0),
                "eta": float(self.eta), "d": self.d, "gamma0": self.gamma0(),
            },
        }

    @classmethod
    def from_dict(cls, d: dict, d_A: int | None = None,
                  d_B: int | None = None) -> "ConstantsLedger":
        return cls(d_A=int(d.get("d_A", d_A)), d_B=int(d.get("d_B", d_B)),
                   delta=to_fraction(d["delta"]), beta=to_fraction(d["beta"]),
                   c=to_fraction(d["c"]), gamma=to_fraction(d["gamma"]))
