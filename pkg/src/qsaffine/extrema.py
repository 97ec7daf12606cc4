"""Closed-form extrema, level sets, digit-restricted Cantor sets, preimages.

The closed forms of this module hold in one distinguished regime: exactly
one vertical ratio ``g_k`` is negative and its cumulative offset ``delta_k``
exceeds 1 (all other ratios positive).  There the function is nowhere
monotonic, its maximum is ``M = max_i delta_i / (1 - g_i)``, its minimum is
``min(0, delta_k + g_k M)``, and the set of maximum points is the set of all
points whose digits stay inside ``V(M) = {i : delta_i / (1 - g_i) = M}`` — a
point, or a Cantor-type set whose Hausdorff dimension solves the Moran
equation ``sum_{i in V} q_i^x = 1``.

Every closed form is cross-checked here against the iterative bounds oracle;
a disagreement raises ``CertificationError`` rather than returning silently.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass, field

from .codec import DigitString, StochasticVector, twin_representation
from .errors import (
    CertificationError,
    ConditionsNotMet,
    OutOfDomain,
    PreconditionViolated,
    ValidationError,
)
from .selfaffine import SelfAffineSystem, evaluate

#: Membership tolerance for "delta_i / (1 - g_i) equals y": parameters are
#: user-supplied rationals stored in doubles, so exact equality is
#: unattainable while genuine coincidences sit many orders below this.
LEVEL_TOL = 1e-10

ORACLE_TOL = 1e-10
MORAN_XTOL = 1e-14


@dataclass(frozen=True)
class LevelSetDescriptor:
    """Digits whose fixed-point value equals ``y``, and what that certifies.

    The digit-restricted set over ``V`` is always a subset of the full level
    set f^{-1}(y) (equality is only certified at y = M); ``continuum`` records
    whether that subset alone already has the cardinality of the continuum.
    """

    y: float
    V: frozenset[int]
    continuum: bool

    def __post_init__(self) -> None:
        if self.continuum != (len(self.V) >= 2):
            raise ValidationError("continuum flag must equal |V| >= 2")


@dataclass(frozen=True)
class CantorSpec:
    """A digit-restricted set: points of [0, 1] using only ``allowed`` digits."""

    Q: StochasticVector
    allowed: frozenset[int]
    dimension: float

    def __post_init__(self) -> None:
        allowed = frozenset(int(i) for i in self.allowed)
        if not allowed:
            raise ValidationError("allowed digit set must be non-empty")
        if any(not 0 <= i < self.Q.s for i in allowed):
            raise ValidationError("allowed digits outside alphabet")
        if not 0.0 <= self.dimension <= 1.0:
            raise ValidationError("dimension must lie in [0, 1]")
        full = len(allowed) == self.Q.s
        if (self.dimension == 1.0) != full:
            raise ValidationError("dimension 1 exactly for the full alphabet")
        if (self.dimension == 0.0) != (len(allowed) == 1):
            raise ValidationError("dimension 0 exactly for a singleton digit set")
        residual = abs(
            math.fsum(self.Q.q[i] ** self.dimension for i in allowed) - 1.0
        )
        if residual > 1e-12:
            raise ValidationError(
                f"dimension does not solve the Moran equation (residual {residual:.3e})"
            )
        object.__setattr__(self, "allowed", allowed)

    @property
    def singleton(self) -> bool:
        return len(self.allowed) == 1


@dataclass(frozen=True)
class NonInvarianceReport:
    """Desk-scale certificate that f maps a thin set onto all of [0, 1].

    ``dimension`` (< 1) is the Hausdorff dimension of the digit-restricted
    set over ``restricted_digits``; each sampled y in [0, 1] received a
    preimage witness inside it with evaluation residual below
    ``residual_bound``.  A set of dimension < 1 (hence Lebesgue-null and
    nowhere dense) therefore covers a full interval under f.
    """

    dimension: float
    restricted_digits: frozenset[int]
    samples: int
    depth: int
    residual_bound: float
    max_residual: float | None


def moran_dimension(Q: StochasticVector, allowed) -> float:
    """Root of ``sum_{i in allowed} q_i^x = 1`` on [0, 1], by bisection.

    The left side is strictly decreasing in x, equals |allowed| at x = 0 and
    the plain weight sum at x = 1, so for a proper non-singleton subset the
    bracket is always valid.  Bisection runs to 1e-14 so the Moran residual
    of the returned root stays below 1e-12.
    """
    V = sorted(set(int(i) for i in allowed))
    if not V:
        raise ValidationError("allowed digit set must be non-empty")
    if any(not 0 <= i < Q.s for i in V):
        raise ValidationError("allowed digits outside alphabet")
    if len(V) == Q.s:
        return 1.0
    if len(V) == 1:
        return 0.0
    weights = [Q.q[i] for i in V]

    def h(x: float) -> float:
        return math.fsum(w**x for w in weights) - 1.0

    lo, hi = 0.0, 1.0
    while hi - lo > MORAN_XTOL:
        mid = 0.5 * (lo + hi)
        if h(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def closed_form_regime(system: SelfAffineSystem) -> int | None:
    """The distinguished negative digit ``k``, when the closed forms apply.

    Returns k when exactly one ratio is negative, all others are positive,
    and ``delta_k > 1``; returns None otherwise.  In the regime k >= 2 is
    automatic (an offset above 1 needs at least two positive ratios below 1
    in front of it) and is asserted.
    """
    g, delta = system.G.g, system.G.delta
    negatives = [i for i, v in enumerate(g) if v < 0.0]
    if len(negatives) != 1:
        return None
    k = negatives[0]
    if not delta[k] > 1.0:
        return None
    if k < 2:
        raise CertificationError(
            f"offset above 1 at digit {k} < 2 contradicts the ratio constraints"
        )
    return k


def _require_regime(system: SelfAffineSystem) -> int:
    k = closed_form_regime(system)
    if k is None:
        raise ConditionsNotMet(
            "closed forms need exactly one negative ratio with cumulative offset above 1"
        )
    return k


def closed_form_max(system: SelfAffineSystem) -> tuple[float, frozenset[int]]:
    """Maximum ``M = max_i delta_i / (1 - g_i)`` and its digit set V(M).

    Cross-checked against the iterative oracle; also asserts that neither 0
    nor the negative digit k belongs to V(M) (their quotients are 0 and a
    value below delta_k respectively).
    """
    k = _require_regime(system)
    g, delta = system.G.g, system.G.delta
    quotients = [d / (1.0 - v) for d, v in zip(delta, g)]
    M = max(quotients)
    V = frozenset(
        i for i in range(system.s) if abs(delta[i] - (1.0 - g[i]) * M) <= LEVEL_TOL
    )
    oracle = system.bounds
    if abs(M - oracle.M) > ORACLE_TOL:
        raise CertificationError(
            f"closed-form maximum {M!r} disagrees with oracle {oracle.M!r}"
        )
    if 0 in V or k in V:
        raise CertificationError(f"digits 0 and {k} cannot be maximum digits; got V = {set(V)}")
    return M, V


def closed_form_min(system: SelfAffineSystem) -> float:
    """Minimum ``m = min(0, delta_k + g_k M)``; asserts |m| < M and checks the oracle."""
    k = _require_regime(system)
    M, _ = closed_form_max(system)
    m = min(0.0, system.G.delta[k] + system.G.g[k] * M)
    if not abs(m) < M:
        raise CertificationError(f"|m| < M violated: m = {m!r}, M = {M!r}")
    oracle = system.bounds
    if abs(m - oracle.m) > ORACLE_TOL:
        raise CertificationError(
            f"closed-form minimum {m!r} disagrees with oracle {oracle.m!r}"
        )
    return m


def level_set(system: SelfAffineSystem, y: float, tol: float = LEVEL_TOL) -> LevelSetDescriptor:
    """Digits i with ``delta_i / (1 - g_i) = y`` within ``tol``.

    Any point using only these digits evaluates to exactly y (the deviation
    telescopes through the shrinking products), so with two or more such
    digits the level set has the cardinality of the continuum.
    """
    g, delta = system.G.g, system.G.delta
    V = frozenset(
        i for i in range(system.s) if abs(delta[i] - (1.0 - g[i]) * y) <= tol
    )
    return LevelSetDescriptor(y=float(y), V=V, continuum=len(V) >= 2)


def level_witness(system: SelfAffineSystem, V, leading_zeros: int = 0) -> DigitString:
    """A point of the (shifted) level set: ``leading_zeros`` zeros, then V cycling."""
    period = tuple(sorted(set(int(i) for i in V)))
    if not period:
        raise ValidationError("witness needs a non-empty digit set")
    return DigitString((0,) * leading_zeros, period, system.s)


def derived_levels(
    system: SelfAffineSystem, y: float, count: int, tol: float = LEVEL_TOL
) -> list[float]:
    """The cascade ``y_n = g_0^n y`` of further continuum levels.

    Prepending n zeros to any digit string over V(y) scales its value by
    g_0^n, so each y_n inherits a continuum of preimages.  Every returned
    level is certified by evaluating such a witness to within ``tol``.
    """
    desc = level_set(system, y, tol)
    if not desc.continuum:
        raise PreconditionViolated(
            f"level {y!r} has |V| = {len(desc.V)}; a continuum level is required"
        )
    if not system.G.g[0] > 0.0:
        raise PreconditionViolated("the zero-digit ratio must be positive")
    g0 = system.G.g[0]
    levels: list[float] = []
    for n in range(1, count + 1):
        yn = g0**n * y
        witness = level_witness(system, desc.V, leading_zeros=n)
        got = evaluate(system, witness).value
        if abs(got - yn) > tol:
            raise CertificationError(
                f"witness for derived level {yn!r} evaluated to {got!r}"
            )
        levels.append(yn)
    return levels


def maxima_set(system: SelfAffineSystem) -> CantorSpec:
    """The set of maximum points as a digit-restricted set with its dimension.

    A singleton V(M) = {i} means a unique maximum point, the fixed point of
    the digit-i map, and dimension 0 (``CantorSpec.singleton`` is then set).
    """
    _, V = closed_form_max(system)
    return CantorSpec(Q=system.Q, allowed=V, dimension=moran_dimension(system.Q, V))


def cantor_construction(
    spec: CantorSpec, steps: int, merged: bool = False
) -> list[list[tuple[float, float]]]:
    """Stagewise geometric construction of the digit-restricted set.

    Stage t lists the closures of all rank-t cylinders whose base digits stay
    in ``allowed``, sorted by left endpoint: |allowed|^t intervals of total
    length ``(sum_allowed q)^t`` (so the set itself is Lebesgue-null for a
    proper subset).  ``merged=True`` joins touching intervals, which is the
    usual way the stages are drawn.
    """
    if steps < 1:
        raise ValidationError("at least one construction step required")
    V = sorted(spec.allowed)
    beta, q = spec.Q.beta, spec.Q.q
    stages: list[list[tuple[float, float]]] = []
    layer: list[tuple[float, float]] = [(0.0, 1.0)]  # (left, width product)
    for _ in range(steps):
        layer = [(left + p * beta[i], p * q[i]) for left, p in layer for i in V]
        intervals = [(left, left + p) for left, p in layer]
        if merged:
            joined: list[tuple[float, float]] = []
            for lo, hi in intervals:
                if joined and lo - joined[-1][1] <= 1e-12:
                    joined[-1] = (joined[-1][0], hi)
                else:
                    joined.append((lo, hi))
            stages.append(joined)
        else:
            stages.append(intervals)
    return stages


def membership(spec: CantorSpec, d: DigitString) -> bool:
    """Whether the point with digits ``d`` lies in the digit-restricted set.

    Twin points belong as soon as either of their two expansions qualifies.
    """
    if d.period is None:
        raise PreconditionViolated("membership needs an exact (periodic) digit string")

    def ok(t: DigitString) -> bool:
        return all(dig in spec.allowed for dig in (*t.prefix, *t.period))

    if ok(d):
        return True
    twin = twin_representation(d)
    return twin is not None and ok(twin)


def preimage_residual_bound(system: SelfAffineSystem, depth: int) -> float:
    """(M - m) * (max low-digit ratio)^depth: the guaranteed witness accuracy."""
    k = _require_regime(system)
    g_star = max(system.G.g[:k])
    return system.bounds.span * g_star**depth


def preimage_digits(system: SelfAffineSystem, y: float, depth: int) -> DigitString:
    """Greedy digit construction of a preimage of ``y`` using only digits < k.

    The offsets delta_0, ..., delta_k climb from 0 past 1, so every residue
    lands in some bracket [delta_a, delta_{a+1}] with a < k; dividing out the
    (positive) ratio g_a renormalizes the residue into [0, 1] and the walk
    repeats.  Ties at a bracket boundary take the larger digit.  The value of
    the returned string is within ``preimage_residual_bound(system, depth)``
    of y, and all its digits stay below k.
    """
    k = _require_regime(system)
    if depth < 1:
        raise ValidationError("depth must be at least 1")
    y = float(y)
    if math.isnan(y) or y < 0.0 or y > 1.0:
        raise OutOfDomain(f"target value {y!r} outside [0, 1]")
    g = system.G.g
    low_deltas = system.G.delta[:k]
    digits: list[int] = []
    t = y
    for _ in range(depth):
        if t == 0.0:
            return DigitString(tuple(digits), (0,), system.s)
        a = bisect_right(low_deltas, t) - 1
        digits.append(a)
        t = (t - low_deltas[a]) / g[a]
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    return DigitString(tuple(digits), None, system.s)


def non_invariance_certificate(
    system: SelfAffineSystem, samples: int, depth: int = 64, seed: int = 0
) -> NonInvarianceReport:
    """Certify that a dimension-<1 digit set maps onto a set containing [0, 1].

    Computes the Hausdorff dimension of the digit-restricted set over
    {0, ..., k-1} (asserted < 1) and, for ``samples`` reproducible uniform
    targets y, builds a preimage witness inside it; a witness whose residual
    exceeds the guaranteed bound raises ``CertificationError``.  Sample j
    draws from its own seeded generator, so the batch is order-independent.
    """
    k = _require_regime(system)
    if samples < 0:
        raise ValidationError("sample count must be non-negative")
    v_star = frozenset(range(k))
    dim = moran_dimension(system.Q, v_star)
    if not dim < 1.0:
        raise CertificationError("restricted digit set must have dimension below 1")
    bound = preimage_residual_bound(system, depth)
    max_residual: float | None = None
    for j in range(samples):
        y = random.Random(seed * 1_000_003 + j).random()
        witness = preimage_digits(system, y, depth)
        if any(dig >= k for dig in witness.prefix):
            raise CertificationError("preimage witness left the restricted digit set")
        residual = abs(evaluate(system, witness).value - y)
        if residual > bound:
            raise CertificationError(
                f"witness residual {residual!r} exceeds the guaranteed bound {bound!r}"
            )
        if max_residual is None or residual > max_residual:
            max_residual = residual
    return NonInvarianceReport(
        dimension=dim,
        restricted_digits=v_star,
        samples=samples,
        depth=depth,
        residual_bound=bound,
        max_residual=max_residual,
    )
