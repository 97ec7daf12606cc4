"""Digit codec for weighted expansions of numbers in [0, 1].

A positive weight vector ``q = (q_0, ..., q_{s-1})`` with sum 1 splits
``[0, 1]`` into ``s`` subintervals of lengths ``q_i`` placed at the cumulative
offsets ``beta_i = q_0 + ... + q_{i-1}``.  Iterating the split assigns every
point an infinite digit sequence over ``{0, ..., s-1}``; conversely a digit
sequence ``a_1 a_2 ...`` sums to

    beta_{a_1} + sum_{k>=2} beta_{a_k} * prod_{j<k} q_{a_j}.

This module implements both directions together with cylinder intervals,
digit statistics, run lengths, and the bookkeeping for points that admit two
expansions (a terminating one and its all-high twin).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field

from .errors import (
    AlphabetMismatch,
    InsufficientDepth,
    InvalidDigit,
    OutOfDomain,
    ValidationError,
)

#: Tolerance on the "weights sum to one" checks.  Inputs outside it are
#: rejected, never renormalized: silently rescaling q would desynchronize the
#: stored offsets from the weights.
SUM_TOL = 1e-12


@dataclass(frozen=True)
class StochasticVector:
    """Partition weights ``q`` with their cumulative offsets ``beta``.

    ``beta`` is stored exactly as the running sum of ``q``, so
    ``beta[0] == 0.0`` and ``beta[i+1] - beta[i] == q[i]`` as floats.
    """

    q: tuple[float, ...]
    beta: tuple[float, ...] = field(init=False)
    s: int = field(init=False)

    def __post_init__(self) -> None:
        q = tuple(float(v) for v in self.q)
        if len(q) < 2:
            raise ValidationError("alphabet size must be at least 2")
        for i, v in enumerate(q):
            if not (v > 0.0) or not math.isfinite(v):
                raise ValidationError(f"weight q[{i}] = {v!r} is not strictly positive")
        total = math.fsum(q)
        if abs(total - 1.0) > SUM_TOL:
            raise ValidationError(
                f"weights must sum to 1 within {SUM_TOL:g}; got sum = {total!r}"
            )
        beta = []
        acc = 0.0
        for v in q:
            beta.append(acc)
            acc += v
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "beta", tuple(beta))
        object.__setattr__(self, "s", len(q))


def _primitive_cycle(period: tuple[int, ...]) -> tuple[int, ...]:
    r = len(period)
    for d in range(1, r + 1):
        if r % d == 0 and period[: d] * (r // d) == period:
            return period[: d]
    return period


@dataclass(frozen=True)
class DigitString:
    """An eventually periodic (or truncated) digit sequence over ``{0..s-1}``.

    ``period is None`` marks a truncated string: a finite prefix standing for
    an unknown continuation.  Exact strings are normalized on construction to
    a canonical form: the period is reduced to its primitive cycle and any
    prefix tail that merely repeats the period is absorbed into it.  In
    canonical form a string ending in period ``(0,)`` never has a trailing 0
    in its prefix, and one ending in ``(s-1,)`` never has a trailing high
    digit; this is what makes the twin rewrites below well defined.
    """

    prefix: tuple[int, ...]
    period: tuple[int, ...] | None
    s: int

    def __post_init__(self) -> None:
        if self.s < 2:
            raise ValidationError("alphabet size must be at least 2")
        prefix = tuple(int(d) for d in self.prefix)
        period = None if self.period is None else tuple(int(d) for d in self.period)
        if period is not None and len(period) == 0:
            raise ValidationError("an empty period is forbidden; use period=None for truncation")
        for d in (*prefix, *(period or ())):
            if not 0 <= d < self.s:
                raise InvalidDigit(f"digit {d} outside alphabet of size {self.s}")
        if period is not None:
            period = _primitive_cycle(period)
            prefix = list(prefix)
            period = list(period)
            while prefix and prefix[-1] == period[-1]:
                prefix.pop()
                period = [period[-1]] + period[:-1]
            prefix = tuple(prefix)
            period = tuple(period)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @property
    def truncated(self) -> bool:
        return self.period is None

    @property
    def is_high(self) -> bool:
        """True for the all-high representation of a twin pair (period ``(s-1,)``)."""
        return self.period == (self.s - 1,)

    def digit_at(self, index: int) -> int:
        """Digit at 0-based ``index``; the first digit of the expansion is index 0."""
        if index < 0:
            raise ValidationError("digit index must be non-negative")
        if index < len(self.prefix):
            return self.prefix[index]
        if self.period is None:
            raise InsufficientDepth(
                f"truncated string holds {len(self.prefix)} digits; index {index} requested"
            )
        return self.period[(index - len(self.prefix)) % len(self.period)]

    def head(self, n: int) -> tuple[int, ...]:
        """First ``n`` digits."""
        if n < 0:
            raise ValidationError("digit count must be non-negative")
        if self.period is None and n > len(self.prefix):
            raise InsufficientDepth(
                f"truncated string holds {len(self.prefix)} digits; {n} requested"
            )
        return tuple(self.digit_at(i) for i in range(n))

    def prepend(self, digit: int) -> "DigitString":
        return DigitString((int(digit),) + self.prefix, self.period, self.s)

    def to_text(self) -> str:
        """Render as ``"1,3,(0,2)"``; a missing parenthesized tail means truncated."""
        parts = [str(d) for d in self.prefix]
        if self.period is not None:
            parts.append("(" + ",".join(str(d) for d in self.period) + ")")
        return ",".join(parts)

    @classmethod
    def from_text(cls, text: str, s: int) -> "DigitString":
        text = text.strip()
        period: tuple[int, ...] | None = None
        if "(" in text:
            head, _, tail = text.partition("(")
            tail = tail.strip()
            if not tail.endswith(")"):
                raise ValidationError(f"unbalanced period parenthesis in {text!r}")
            body = tail[:-1].strip()
            if not body:
                raise ValidationError("period must contain at least one digit")
            period = tuple(int(t) for t in body.split(","))
            text = head.rstrip(", ")
        try:
            prefix = tuple(int(t) for t in text.split(",")) if text else ()
        except ValueError as exc:
            raise ValidationError(f"malformed digit string {text!r}") from exc
        return cls(prefix, period, s)

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.to_text()


@dataclass(frozen=True)
class Cylinder:
    """The closed interval of all points whose expansion starts with ``base``."""

    base: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", tuple(int(d) for d in self.base))

    @property
    def rank(self) -> int:
        return len(self.base)


@dataclass(frozen=True)
class FrequencyVector:
    """Observed or limiting digit frequencies.

    ``exact`` is set when the frequencies were computed analytically from one
    period of an exact string (the finite prefix does not contribute to the
    limit); ``n`` records the number of digits actually counted.
    """

    nu: tuple[float, ...]
    n: int
    exact: bool

    def __post_init__(self) -> None:
        nu = tuple(float(v) for v in self.nu)
        if any(v < 0.0 or v > 1.0 for v in nu):
            raise ValidationError("frequencies must lie in [0, 1]")
        if self.exact and abs(math.fsum(nu) - 1.0) > SUM_TOL:
            raise ValidationError("exact frequencies must sum to 1")
        object.__setattr__(self, "nu", nu)

    @property
    def s(self) -> int:
        return len(self.nu)


def _check_alphabet(d: DigitString, s: int) -> None:
    if d.s != s:
        raise InvalidDigit(f"digit string over alphabet {d.s} used with alphabet {s}")


def periodic_tail_value(
    period: tuple[int, ...], offsets: tuple[float, ...], scales: tuple[float, ...], s: int
) -> float:
    """Value of the purely periodic string under (offsets, scales).

    Solves v = P + v * prod(scales over period) in closed form; the product
    has magnitude below 1, so the geometric tail always converges.  The
    single-digit extremes are pinned to exactly 0 and 1: in floating point
    ``offsets[s-1] / (1 - scales[s-1])`` would drift off 1 by an ulp.
    """
    if period == (0,):
        return 0.0
    if period == (s - 1,):
        return 1.0
    pacc = 0.0
    pprod = 1.0
    for d in period:
        pacc += offsets[d] * pprod
        pprod *= scales[d]
    return pacc / (1.0 - pprod)


def decode(d: DigitString, Q: StochasticVector) -> float:
    """Sum the expansion of ``d`` under ``Q``.

    Periodic tails are summed in closed form.  For a truncated string the
    partial sum (the left endpoint of its cylinder) is returned; the caller's
    error is at most the cylinder length, i.e. the product of the consumed
    weights (see ``cylinder_bounds``).
    """
    _check_alphabet(d, Q.s)
    beta, q = Q.beta, Q.q
    acc = 0.0
    prod = 1.0
    for dig in d.prefix:
        acc += beta[dig] * prod
        prod *= q[dig]
    if d.period is not None:
        acc += prod * periodic_tail_value(d.period, beta, q, Q.s)
    if acc < 0.0:
        return 0.0
    if acc > 1.0:
        return 1.0
    return acc


def encode(x: float, Q: StochasticVector, depth: int) -> DigitString:
    """Greedy cylinder descent producing up to ``depth`` digits of ``x``.

    At each step the digit ``i`` with ``beta_i <= t < beta_{i+1}`` is chosen;
    a tie at an exact boundary takes the larger digit, so terminating points
    come out in their low, ``(0,)``-tail form.  When the residue hits exactly
    0 or 1 the string is closed with the matching period and is exact;
    otherwise the truncated prefix is returned and ``decode`` of the result
    is within ``prod q_{a_j}`` of ``x``.
    """
    if depth < 1:
        raise ValidationError("encoding depth must be at least 1")
    x = float(x)
    if math.isnan(x) or x < 0.0 or x > 1.0:
        raise OutOfDomain(f"point {x!r} outside [0, 1]")
    beta, q = Q.beta, Q.q
    digits: list[int] = []
    t = x
    for _ in range(depth):
        if t == 0.0:
            return DigitString(tuple(digits), (0,), Q.s)
        if t == 1.0:
            return DigitString(tuple(digits), (Q.s - 1,), Q.s)
        d = bisect_right(beta, t) - 1
        digits.append(d)
        t = (t - beta[d]) / q[d]
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    return DigitString(tuple(digits), None, Q.s)


def twin_representation(d: DigitString) -> DigitString | None:
    """The other expansion of the same point, when one exists.

    A string ending in period ``(0,)`` with last prefix digit ``a`` rewrites
    to ``...[a-1]`` followed by the all-high period, and conversely.  Points
    with any other period, as well as 0 and 1 themselves, have a unique
    expansion and yield ``None``.  Truncated strings yield ``None``: the
    continuation is unknown.
    """
    if d.period is None:
        return None
    high = d.s - 1
    if d.period == (0,):
        if not d.prefix:
            return None  # x = 0
        head, last = d.prefix[:-1], d.prefix[-1]
        return DigitString(head + (last - 1,), (high,), d.s)
    if d.period == (high,):
        if not d.prefix:
            return None  # x = 1
        head, last = d.prefix[:-1], d.prefix[-1]
        return DigitString(head + (last + 1,), (0,), d.s)
    return None


def _low_form(d: DigitString) -> DigitString:
    if d.period == (d.s - 1,) and d.prefix:
        twin = twin_representation(d)
        assert twin is not None
        return twin
    return d


def compare(a: DigitString, b: DigitString) -> int:
    """Order two digit strings as the points they represent: -1, 0 or 1.

    Twin pairs are normalized to their low form first, so the two expansions
    of the same point compare equal.  Exact strings are decided within
    ``max(prefix lengths) + lcm(period lengths)`` digits; truncated strings
    are decided as soon as the available digits differ and raise
    ``InsufficientDepth`` otherwise.
    """
    if a.s != b.s:
        raise AlphabetMismatch(f"alphabet sizes differ: {a.s} vs {b.s}")
    a = _low_form(a)
    b = _low_form(b)
    if a.period is not None and b.period is not None:
        horizon = (
            max(len(a.prefix), len(b.prefix))
            + math.lcm(len(a.period), len(b.period))
            + 1
        )
    else:
        horizon = max(
            len(a.prefix) + (len(a.period) if a.period else 0),
            len(b.prefix) + (len(b.period) if b.period else 0),
        ) + 1
    for i in range(horizon):
        try:
            da = a.digit_at(i)
            db = b.digit_at(i)
        except InsufficientDepth:
            raise InsufficientDepth(
                "truncated strings agree on all available digits; order undecidable"
            ) from None
        if da != db:
            return -1 if da < db else 1
    if a.period is None or b.period is None:
        raise InsufficientDepth(
            "truncated strings agree on all available digits; order undecidable"
        )
    return 0


def cylinder_bounds(c: Cylinder, Q: StochasticVector) -> tuple[float, float, float]:
    """(left, right, length) of the cylinder under ``Q``.

    ``left`` is the value of the base followed by zeros, ``length`` the
    product of the base weights, and ``right = left + length`` equals the
    value of the base followed by high digits.
    """
    left = 0.0
    prod = 1.0
    beta, q = Q.beta, Q.q
    for dig in c.base:
        if not 0 <= dig < Q.s:
            raise InvalidDigit(f"digit {dig} outside alphabet of size {Q.s}")
        left += beta[dig] * prod
        prod *= q[dig]
    return left, left + prod, prod


def digit_frequencies(d: DigitString, n: int | None = None) -> FrequencyVector:
    """Digit frequencies over the first ``n`` digits, or the exact limit.

    With ``n=None`` the string must be exact and the limiting frequencies are
    computed from one primitive period (the prefix contributes nothing to the
    limit); the result is flagged ``exact``.
    """
    counts = [0] * d.s
    if n is None:
        if d.period is None:
            raise InsufficientDepth("limit frequencies need an exact (periodic) string")
        for dig in d.period:
            counts[dig] += 1
        r = len(d.period)
        return FrequencyVector(tuple(c / r for c in counts), n=r, exact=True)
    if n < 1:
        raise ValidationError("frequency prefix length must be at least 1")
    for dig in d.head(n):
        counts[dig] += 1
    return FrequencyVector(tuple(c / n for c in counts), n=n, exact=False)


def run_length(d: DigitString, i: int, n: int) -> int | float:
    """Length of the run of digit ``i`` starting right after position ``n``.

    Positions are 1-based, so ``n = 0`` inspects the run at the very start.
    Returns ``math.inf`` when the digits are ``i`` forever (period ``(i,)``
    reached), and raises ``InsufficientDepth`` when a truncated string runs
    out of digits while still matching.
    """
    if not 0 <= i < d.s:
        raise InvalidDigit(f"digit {i} outside alphabet of size {d.s}")
    if n < 0:
        raise ValidationError("position must be non-negative")
    idx = n
    t = 0
    lp = len(d.prefix)
    while idx < lp:
        if d.prefix[idx] != i:
            return t
        t += 1
        idx += 1
    if d.period is None:
        raise InsufficientDepth(
            f"run still open at the end of a truncated string (position {idx})"
        )
    if all(p == i for p in d.period):
        return math.inf
    r = len(d.period)
    phase = (idx - lp) % r
    while d.period[phase] == i:
        t += 1
        phase = (phase + 1) % r
    return t
