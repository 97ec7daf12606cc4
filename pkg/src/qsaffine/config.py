"""System definitions from small key:value config files.

Grammar (UTF-8 text, one entry per line, ``#`` starts a comment):

    label: cantor-max
    q: [1/5, 2/5, 1/5, 1/5]
    g: [2/5, 4/5, 2/5, -3/5]

``q`` and ``g`` are bracketed arrays of the same length (>= 2) whose entries
are exact rationals (``2/5``) or decimals (``-0.28``).  Rationals are parsed
to doubles at read time; the original spellings are kept for echoing in
reports.  ``label`` is optional and defaults to the file stem.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ValidationError
from .selfaffine import SelfAffineSystem


@dataclass(frozen=True)
class SystemConfig:
    q_text: tuple[str, ...]
    g_text: tuple[str, ...]
    label: str

    def __post_init__(self) -> None:
        if len(self.q_text) != len(self.g_text):
            raise ValidationError(
                f"q and g must have equal length; got {len(self.q_text)} and {len(self.g_text)}"
            )
        if len(self.q_text) < 2:
            raise ValidationError("at least 2 entries required in q and g")

    @property
    def q(self) -> tuple[float, ...]:
        return tuple(parse_number(t) for t in self.q_text)

    @property
    def g(self) -> tuple[float, ...]:
        return tuple(parse_number(t) for t in self.g_text)

    def system(self) -> SelfAffineSystem:
        return SelfAffineSystem.from_values(self.q, self.g)


def parse_number(token: str) -> float:
    """Parse ``2/5``, ``0.4`` or ``-0.28`` to a double."""
    try:
        return float(Fraction(token.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse number {token!r}") from exc


def _parse_array(value: str, key: str) -> tuple[str, ...]:
    value = value.strip()
    if not (value.startswith("[") and value.endswith("]")):
        raise ValidationError(f"{key} must be a bracketed array, got {value!r}")
    body = value[1:-1].strip()
    if not body:
        raise ValidationError(f"{key} must not be empty")
    items = tuple(tok.strip() for tok in body.split(","))
    for tok in items:
        parse_number(tok)  # fail early with a named token
    return items


def parse_config_text(text: str, default_label: str = "system") -> SystemConfig:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ValidationError(f"line {lineno}: expected 'key: value', got {raw!r}")
        key = key.strip().lower()
        if key in entries:
            raise ValidationError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value.strip()
    unknown = set(entries) - {"q", "g", "label"}
    if unknown:
        raise ValidationError(f"unknown config keys: {sorted(unknown)}")
    if "q" not in entries or "g" not in entries:
        raise ValidationError("config must define both q and g")
    return SystemConfig(
        q_text=_parse_array(entries["q"], "q"),
        g_text=_parse_array(entries["g"], "g"),
        label=entries.get("label", default_label),
    )


def load_config(path: str | Path) -> SystemConfig:
    path = Path(path)
    return parse_config_text(path.read_text(encoding="utf-8"), default_label=path.stem)
