"""Shared fixtures for the test suite: reference systems and random generators."""

from __future__ import annotations

import numpy as np

from qsaffine import DigitString, SelfAffineSystem


def system(q, g) -> SelfAffineSystem:
    return SelfAffineSystem.from_values(q, g)


# Reference systems, named for the behaviour they exhibit (see configs/).
CANTOR_MAX = system((0.2, 0.4, 0.2, 0.2), (0.4, 0.8, 0.4, -0.6))
LEVEL_SETS = system((0.05, 0.35, 0.2, 0.35, 0.05), (0.5, 0.2, 0.1, -0.28, 0.48))
SINGULAR_S3 = system((0.5, 0.3, 0.2), (0.2, 0.9, -0.1))
ROUGH_S3 = system((0.4, 0.4, 0.2), (2 / 3, 2 / 3, -1 / 3))
DEEP_MIN_S3 = system((0.3, 0.45, 0.25), (0.6, 0.9, -0.5))
IDENTITY_S3 = system((0.5, 0.25, 0.25), (0.5, 0.25, 0.25))

FIGURE_CONFIGS = (
    "cantor_max",
    "level_sets",
    "singular_s3",
    "rough_s3",
    "deep_min_s3",
)


def random_weights(rng: np.random.Generator, s: int, min_w: float = 0.03):
    while True:
        w = rng.dirichlet(np.ones(s))
        if w.min() >= min_w:
            return tuple(float(v) for v in w)


def random_admissible_system(
    rng: np.random.Generator, s_min: int = 2, s_max: int = 6, g_abs_max: float = 0.8
) -> SelfAffineSystem:
    """Any valid system: ratios of mixed sign, |g| in [0.05, g_abs_max], sum 1."""
    s = int(rng.integers(s_min, s_max + 1))
    q = random_weights(rng, s)
    while True:
        mags = rng.uniform(0.05, g_abs_max, size=s - 1)
        signs = rng.choice([-1.0, 1.0], size=s - 1)
        head = mags * signs
        last = 1.0 - float(np.sum(head))
        if 0.05 <= abs(last) <= g_abs_max:
            g = tuple(float(v) for v in head) + (float(last),)
            return SelfAffineSystem.from_values(q, g)


def random_regime_system(
    rng: np.random.Generator, s_min: int = 3, s_max: int = 8
) -> tuple[SelfAffineSystem, int]:
    """A system in the closed-form regime: one negative ratio at digit k, offset > 1."""
    s = int(rng.integers(s_min, s_max + 1))
    k = int(rng.integers(2, s))
    mrem = s - 1 - k
    c = float(rng.uniform(0.05, 0.35))
    while True:
        w = rng.dirichlet(np.ones(k)) * (1.0 + c)
        if w.min() >= 0.05 and w.max() <= 0.93:
            break
    if mrem == 0:
        gk = -c
        tail: tuple[float, ...] = ()
    else:
        extra = float(rng.uniform(0.03 + 0.03 * mrem, 0.5))
        gk = -(c + extra)
        while True:
            v = rng.dirichlet(np.ones(mrem)) * extra
            if v.min() >= 0.01 and v.max() <= 0.93:
                break
        tail = tuple(float(x) for x in v)
    g = tuple(float(x) for x in w) + (gk,) + tail
    return SelfAffineSystem.from_values(random_weights(rng, s), g), k


def random_exact_string(
    rng: np.random.Generator, s: int, max_prefix: int = 4, max_period: int = 5
) -> DigitString:
    r = int(rng.integers(1, max_period + 1))
    period = tuple(int(d) for d in rng.integers(0, s, size=r))
    n = int(rng.integers(0, max_prefix + 1))
    prefix = tuple(int(d) for d in rng.integers(0, s, size=n))
    return DigitString(prefix, period, s)


def random_two_sided_period(rng: np.random.Generator, s: int, max_period: int = 6) -> DigitString:
    """A purely periodic string that is neither eventually all-low nor all-high."""
    while True:
        r = int(rng.integers(2, max_period + 1))
        period = tuple(int(d) for d in rng.integers(0, s, size=r))
        if any(d != 0 for d in period) and any(d != s - 1 for d in period):
            return DigitString((), period, s)


def random_binary_point(rng: np.random.Generator, s: int, max_len: int = 12) -> DigitString:
    """The low (terminating) expansion of a random twin point."""
    n = int(rng.integers(1, max_len + 1))
    digits = [int(d) for d in rng.integers(0, s, size=n)]
    digits[-1] = int(rng.integers(1, s))
    return DigitString(tuple(digits), (0,), s)
