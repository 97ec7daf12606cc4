"""Evaluation of the self-affine function attached to a digit codec.

Pairing the partition weights ``q`` with signed vertical ratios ``g``
(each ``0 < |g_i| < 1``, summing to 1, cumulative offsets ``delta``) defines
the continuous function

    f(a_1 a_2 ...) = delta_{a_1} + sum_{k>=2} delta_{a_k} * prod_{j<k} g_{a_j}

on digit strings, i.e. the unique bounded solution of the affinity system
``f(beta_i + q_i x) = delta_i + g_i f(x)``.  It interpolates f(0)=0, f(1)=1
and, depending on the sign/size pattern of ``g``, is increasing and singular,
nowhere monotonic, or nowhere differentiable.

Evaluation mirrors the codec: periodic tails are summed in closed form
(exact), truncated strings return the partial sum together with a certified
error bound ``(M - m) * prod |g_{a_j}|`` built from the global bounds below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .codec import DigitString, StochasticVector, encode, periodic_tail_value
from .errors import InvalidDigit, NonConvergence, ValidationError

SUM_TOL = 1e-12

#: Fixed-point iteration for the global bounds stops at this step size.
BOUNDS_STEP_TOL = 1e-14
BOUNDS_MAX_ITER = 10_000

#: Default truncation accuracy target and hard digit cap for eval-at-a-point.
DEPTH_TARGET = 1e-12
DEPTH_CAP = 4096


@dataclass(frozen=True)
class AffineCoefficients:
    """Signed vertical ratios ``g`` with cumulative offsets ``delta``."""

    g: tuple[float, ...]
    delta: tuple[float, ...] = field(init=False)
    s: int = field(init=False)

    def __post_init__(self) -> None:
        g = tuple(float(v) for v in self.g)
        if len(g) < 2:
            raise ValidationError("alphabet size must be at least 2")
        for i, v in enumerate(g):
            if not math.isfinite(v) or not 0.0 < abs(v) < 1.0:
                raise ValidationError(
                    f"ratio g[{i}] = {v!r} must satisfy 0 < |g| < 1"
                )
        total = math.fsum(g)
        if abs(total - 1.0) > SUM_TOL:
            raise ValidationError(
                f"ratios must sum to 1 within {SUM_TOL:g}; got sum = {total!r}"
            )
        delta = []
        acc = 0.0
        for v in g:
            delta.append(acc)
            acc += v
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "delta", tuple(delta))
        object.__setattr__(self, "s", len(g))


@dataclass(frozen=True)
class BoundsPair:
    """Certified global bounds ``m <= f <= M`` with convergence metadata."""

    m: float
    M: float
    iterations: int
    residual: float

    def __post_init__(self) -> None:
        if not (self.m <= 1e-12 and self.M >= 1.0 - 1e-12):
            raise ValidationError(
                f"bounds must bracket the attained values f(0)=0, f(1)=1; got ({self.m}, {self.M})"
            )
        if self.residual > 1e-12:
            raise ValidationError(f"bounds residual {self.residual!r} above 1e-12")

    @property
    def span(self) -> float:
        return self.M - self.m


@dataclass(frozen=True)
class SelfAffineSystem:
    """A validated (weights, ratios) pair defining one function."""

    Q: StochasticVector
    G: AffineCoefficients

    def __post_init__(self) -> None:
        if self.Q.s != self.G.s:
            raise ValidationError(
                f"weights and ratios disagree on alphabet size: {self.Q.s} vs {self.G.s}"
            )

    @classmethod
    def from_values(cls, q, g) -> "SelfAffineSystem":
        return cls(StochasticVector(tuple(q)), AffineCoefficients(tuple(g)))

    @property
    def s(self) -> int:
        return self.Q.s

    @cached_property
    def bounds(self) -> BoundsPair:
        return _fixed_point_bounds(self)[0]

    @cached_property
    def default_depth(self) -> int:
        """Smallest digit count with (max|g|)^n * (M-m) below the accuracy target."""
        gmax = max(abs(v) for v in self.G.g)
        span = self.bounds.span
        n = math.ceil(math.log(DEPTH_TARGET / span) / math.log(gmax))
        return max(1, min(DEPTH_CAP, n))


class Evaluation(NamedTuple):
    value: float
    error_bound: float


def _fixed_point_bounds(system: SelfAffineSystem) -> tuple[BoundsPair, list[float]]:
    """Expand (0, 1) to the global bounds of f by iterating the one-digit hull.

    M' = max_i delta_i + g_i * (M if g_i > 0 else m) and dually for m': one
    pass per cylinder rank.  Starting from the attained values (0, 1) the
    iteration is monotone expanding and contracts with factor max|g| < 1, so
    hitting the cap means a validated invariant was broken upstream.
    """
    g, delta = system.G.g, system.G.delta
    pairs = list(zip(delta, g))
    m, M = 0.0, 1.0
    steps: list[float] = []
    for it in range(1, BOUNDS_MAX_ITER + 1):
        M1 = max(d + (gi * M if gi > 0 else gi * m) for d, gi in pairs)
        m1 = min(d + (gi * m if gi > 0 else gi * M) for d, gi in pairs)
        step = max(abs(M1 - M), abs(m1 - m))
        steps.append(step)
        m, M = m1, M1
        if step < BOUNDS_STEP_TOL:
            return BoundsPair(m=m, M=M, iterations=it, residual=step), steps
    raise NonConvergence(
        f"global bounds did not converge within {BOUNDS_MAX_ITER} iterations"
    )


def global_bounds(system: SelfAffineSystem) -> BoundsPair:
    """Certified global minimum and maximum of f (cached per system)."""
    return system.bounds


def bounds_iteration_steps(system: SelfAffineSystem) -> list[float]:
    """Step sizes of the bounds iteration, for contraction-rate checks."""
    return _fixed_point_bounds(system)[1]


def evaluate(system: SelfAffineSystem, d: DigitString) -> Evaluation:
    """f at the point with digits ``d``.

    Exact (periodic) strings evaluate in closed form with error bound 0.
    Truncated strings return the partial sum; the true value differs by at
    most ``(M - m) * prod |g_{a_j}|`` over the consumed digits.
    """
    if d.s != system.s:
        raise InvalidDigit(
            f"digit string over alphabet {d.s} used with system of alphabet {system.s}"
        )
    delta, g = system.G.delta, system.G.g
    acc = 0.0
    prod = 1.0
    for dig in d.prefix:
        acc += delta[dig] * prod
        prod *= g[dig]
    if d.period is None:
        return Evaluation(acc, system.bounds.span * abs(prod))
    acc += prod * periodic_tail_value(d.period, delta, g, system.s)
    return Evaluation(acc, 0.0)


def evaluate_at(system: SelfAffineSystem, x: float, depth: int | None = None) -> Evaluation:
    """f(x) via encode-then-evaluate at the given (or default) digit depth."""
    d = encode(x, system.Q, depth if depth is not None else system.default_depth)
    return evaluate(system, d)


def functional_equation_residual(
    system: SelfAffineSystem, i: int, x: float, depth: int | None = None
) -> float:
    """|f(beta_i + q_i x) - delta_i - g_i f(x)| at matched digit depths.

    The left-hand point is represented exactly by prepending digit ``i`` to
    the digits of ``x`` (that is what the affinity map does to expansions),
    so the residual measures evaluation consistency, not input rounding.
    """
    if not 0 <= i < system.s:
        raise InvalidDigit(f"digit {i} outside alphabet of size {system.s}")
    d = encode(x, system.Q, depth if depth is not None else system.default_depth)
    lhs = evaluate(system, d.prepend(i)).value
    tail = evaluate(system, d).value
    return abs(lhs - system.G.delta[i] - system.G.g[i] * tail)


def variation_lower_bound(system: SelfAffineSystem, n: int) -> float:
    """(sum |g_i|)^n: total rank-n oscillation, a lower bound for the variation.

    Summing |f(right) - f(left)| over all rank-n cylinders telescopes to this
    power; with any negative ratio the base exceeds 1 and the variation is
    unbounded.
    """
    if n < 1:
        raise ValidationError("rank must be at least 1")
    return math.fsum(abs(v) for v in system.G.g) ** n


def _extreme_descent(
    system: SelfAffineSystem, maximize: bool, tol: float, cap: int
) -> tuple[float, float]:
    """Follow the child cylinder with the extreme attainable value.

    Over a cylinder with accumulated offset ``a`` and signed product ``p``
    the function ranges over ``a + p*[m, M]`` exactly, so the child with the
    largest upper (smallest lower) hull value always contains the global
    maximum (minimum).  Descend until the hull width ``|p|*(M-m)`` drops
    below ``tol`` and return that cylinder's left endpoint and exact value.
    """
    q, beta = system.Q.q, system.Q.beta
    g, delta = system.G.g, system.G.delta
    b = system.bounds
    m, M, span = b.m, b.M, b.span
    x = 0.0
    qp = 1.0
    fa = 0.0
    gp = 1.0
    rank = 0
    while abs(gp) * span > tol and rank < cap:
        best_dig = 0
        best_val = -math.inf
        for dig in range(system.s):
            gp2 = gp * g[dig]
            hull = fa + gp * delta[dig] + (gp2 * M if gp2 > 0 else gp2 * m)
            if not maximize:
                hull = -(fa + gp * delta[dig] + (gp2 * m if gp2 > 0 else gp2 * M))
            if hull > best_val:
                best_val = hull
                best_dig = dig
        x += qp * beta[best_dig]
        fa += gp * delta[best_dig]
        qp *= q[best_dig]
        gp *= g[best_dig]
        rank += 1
    return x, fa


def sample(
    system: SelfAffineSystem, points: int, depth: int | None = None
) -> list[tuple[float, float, float]]:
    """Deterministic graph samples ``(x, f(x), error_bound)`` sorted by x.

    Cylinders are subdivided until their width drops to ``1/(points-1)`` and
    f is evaluated exactly at every left endpoint (plus x = 1), so all error
    bounds are 0.  On top of the grid, one point near the maximum and one
    near the minimum are refined to within ``(M - m)/points`` of the certified
    bounds: the grid alone cannot get close, since f approaches its extrema
    only at its (often tiny) local regularity exponent.
    """
    if points < 2:
        raise ValidationError("at least 2 sample points required")
    cap = depth if depth is not None else DEPTH_CAP
    thresh = 1.0 / (points - 1)
    q, beta = system.Q.q, system.Q.beta
    g, delta = system.G.g, system.G.delta
    s = system.s
    out: dict[float, float] = {}
    stack: list[tuple[float, float, float, float, int]] = [(0.0, 1.0, 0.0, 1.0, 0)]
    while stack:
        x, qp, fa, gp, rank = stack.pop()
        if qp <= thresh or rank >= cap:
            out.setdefault(x, fa)
            continue
        for dig in range(s - 1, -1, -1):  # reversed: pop order ascending
            stack.append((x + qp * beta[dig], qp * q[dig], fa + gp * delta[dig], gp * g[dig], rank + 1))
    out.setdefault(1.0, 1.0)
    b = system.bounds
    tol = b.span / points
    hi_x, hi_f = _extreme_descent(system, True, tol, cap)
    if hi_f > max(out.values()):
        out.setdefault(hi_x, hi_f)
    lo_x, lo_f = _extreme_descent(system, False, tol, cap)
    if lo_f < min(out.values()):
        out.setdefault(lo_x, lo_f)
    return [(x, f, 0.0) for x, f in sorted(out.items())]
