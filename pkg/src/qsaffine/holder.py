"""Local and global Hölder exponents, analytic and empirical.

All analytic exponents are ratios of logarithms of the vertical ratios to
logarithms of the partition weights:

* global:            min_i ln|g_i| / ln q_i
* at digit frequencies nu (points with two-sided approach, nu_0, nu_{s-1} < 1):
                     sum_i nu_i ln|g_i| / sum_i nu_i ln q_i
* at twin (two-expansion) points:
                     min(ln|g_0| / ln q_0, ln|g_{s-1}| / ln q_{s-1})

The empirical estimator regresses log cylinder oscillation against log
cylinder width along the digits of a point; oscillation and width factor
through shared prefixes, so the estimator is deterministic and reproduces
the frequency formula exactly on periodic strings at period multiples.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Iterable

from .codec import DigitString, FrequencyVector
from .errors import (
    AlphabetMismatch,
    HypothesisViolated,
    ValidationError,
)
from .selfaffine import SelfAffineSystem

#: Every analytic certificate is one-sided at its own exponent: the condition
#: holds for all smaller exponents and fails for all larger ones, while
#: behaviour exactly at the reported value is not determined here.
AT_EXPONENT_NOTE = "certified below the exponent; behaviour exactly at it is undetermined"


@dataclass(frozen=True)
class HolderReport:
    exponent: float
    kind: str  # global | local_unary | local_binary | almost_everywhere | empirical
    frequencies_used: FrequencyVector | None = None
    regression_points: int | None = None
    note: str = AT_EXPONENT_NOTE

    def __post_init__(self) -> None:
        if self.kind not in {
            "global",
            "local_unary",
            "local_binary",
            "almost_everywhere",
            "empirical",
        }:
            raise ValidationError(f"unknown report kind {self.kind!r}")
        if not self.exponent >= 0.0:
            raise ValidationError(f"exponent must be non-negative; got {self.exponent!r}")


def _quotient(system: SelfAffineSystem, i: int) -> float:
    return math.log(abs(system.G.g[i])) / math.log(system.Q.q[i])


def global_exponent(system: SelfAffineSystem) -> HolderReport:
    """Hölder exponent of f on all of [0, 1]: the worst single-digit quotient."""
    return HolderReport(
        exponent=min(_quotient(system, i) for i in range(system.s)),
        kind="global",
    )


def local_exponent_unary(
    system: SelfAffineSystem, nu: FrequencyVector, *, kind: str = "local_unary"
) -> HolderReport:
    """Exponent at a uniquely-represented point with digit frequencies ``nu``.

    Requires nu_0 < 1 and nu_{s-1} < 1: a point whose digits are eventually
    all-low or all-high approaches the boundary of every cylinder it lies in
    and the frequency formula does not apply.
    """
    if nu.s != system.s:
        raise AlphabetMismatch(
            f"frequency vector of length {nu.s} used with alphabet {system.s}"
        )
    if abs(math.fsum(nu.nu) - 1.0) > 1e-12:
        raise HypothesisViolated("frequencies must sum to 1")
    if nu.nu[0] >= 1.0 or nu.nu[-1] >= 1.0:
        raise HypothesisViolated(
            "frequency formula requires nu_0 < 1 and nu_{s-1} < 1"
        )
    num = math.fsum(v * math.log(abs(gi)) for v, gi in zip(nu.nu, system.G.g) if v > 0.0)
    den = math.fsum(v * math.log(qi) for v, qi in zip(nu.nu, system.Q.q) if v > 0.0)
    return HolderReport(exponent=num / den, kind=kind, frequencies_used=nu)


def almost_everywhere_exponent(system: SelfAffineSystem) -> HolderReport:
    """Exponent at Lebesgue-typical points: digit frequencies equal the weights."""
    nu = FrequencyVector(system.Q.q, n=0, exact=True)
    return local_exponent_unary(system, nu, kind="almost_everywhere")


def local_exponent_binary(system: SelfAffineSystem) -> HolderReport:
    """Exponent at every twin (two-expansion) point: min of the two boundary quotients."""
    k = min(_quotient(system, 0), _quotient(system, system.s - 1))
    return HolderReport(exponent=k, kind="local_binary")


def empirical_exponent(
    system: SelfAffineSystem, d: DigitString, ranks: Iterable[int]
) -> HolderReport:
    """Least-squares slope of log oscillation against log width along ``d``.

    For each requested rank n the cylinder of the first n digits has width
    ``prod q`` and oscillation ``prod |g|``; both are accumulated in log
    space (deep products underflow doubles long before the sums misbehave).
    A single requested rank returns the direct ratio, anchored at the empty
    cylinder whose logs are (0, 0).
    """
    rank_list = sorted(set(int(r) for r in ranks))
    if not rank_list or rank_list[0] < 1:
        raise ValidationError("ranks must be a non-empty collection of integers >= 1")
    digits = d.head(rank_list[-1])  # InsufficientDepth for short truncated input
    log_w = []
    log_o = []
    acc_w = 0.0
    acc_o = 0.0
    want = set(rank_list)
    for n, dig in enumerate(digits, start=1):
        acc_w += math.log(system.Q.q[dig])
        acc_o += math.log(abs(system.G.g[dig]))
        if n in want:
            log_w.append(acc_w)
            log_o.append(acc_o)
    if len(rank_list) == 1:
        slope = log_o[0] / log_w[0]
    else:
        slope = statistics.linear_regression(log_w, log_o).slope
    return HolderReport(
        exponent=slope,
        kind="empirical",
        regression_points=len(rank_list),
        note="ordinary least squares over the requested ranks, no outlier rejection",
    )


def singularity_predicate(system: SelfAffineSystem) -> bool:
    """True when f is singular: zero derivative at Lebesgue-almost every point.

    Sufficient criterion: the typical-point exponent exceeds 1, i.e.
    sum q_i ln|g_i| < sum q_i ln q_i.
    """
    lhs = math.fsum(qi * math.log(abs(gi)) for qi, gi in zip(system.Q.q, system.G.g))
    rhs = math.fsum(qi * math.log(qi) for qi in system.Q.q)
    return lhs < rhs


def nowhere_differentiable_predicate(system: SelfAffineSystem) -> bool:
    """True when |g_i| > q_i for every digit (a sufficient condition only)."""
    return all(abs(gi) > qi for qi, gi in zip(system.Q.q, system.G.g))
