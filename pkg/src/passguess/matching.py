"""Phrase normalization and error-tolerant comparison.

Typed passphrases are compared in a canonical form: lowercase, punctuation
stripped, whitespace collapsed. A login attempt is accepted when its edit
distance to the stored canonical phrase, divided by the stored phrase's
length, stays within a configured ceiling (0.125 by default, i.e. one
correction per eight characters).
"""

from __future__ import annotations

from dataclasses import dataclass


class EmptyPhraseError(ValueError):
    """Raised when a phrase normalizes to nothing."""


@dataclass(frozen=True)
class NormalizedPhrase:
    tokens: tuple[str, ...]
    canonical: str


@dataclass(frozen=True)
class ToleranceConfig:
    max_relative_distance: float = 0.125

    def __post_init__(self):
        if not 0.0 <= self.max_relative_distance < 1.0:
            raise ValueError(
                "max_relative_distance must be in [0, 1), got %r"
                % (self.max_relative_distance,)
            )


@dataclass(frozen=True)
class ToleranceResult:
    accepted: bool
    distance: int
    relative: float


def _clean_word(word: str) -> str:
    # keep letters and digits only; isalnum() covers the Unicode ranges
    return "".join(ch for ch in word.lower() if ch.isalnum())


def normalize(raw: str) -> NormalizedPhrase:
    """Lowercase, strip punctuation, collapse whitespace.

    Raises EmptyPhraseError if nothing survives.
    """
    tokens = tuple(t for t in (_clean_word(w) for w in raw.split()) if t)
    if not tokens:
        raise EmptyPhraseError("phrase is empty after normalization")
    return NormalizedPhrase(tokens=tokens, canonical=" ".join(tokens))


def levenshtein(a: str, b: str) -> int:
    """Edit distance with unit-cost insert, delete, and substitute."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(
                prev[j] + 1,
                cur[j - 1] + 1,
                prev[j - 1] + (ca != cb),
            ))
        prev = cur
    return prev[-1]


def within_tolerance(
    stored: NormalizedPhrase,
    attempt: NormalizedPhrase,
    config: ToleranceConfig = ToleranceConfig(),
) -> ToleranceResult:
    """Compare an attempt against the stored phrase.

    The distance is always divided by the stored phrase's length, so the
    acceptance region does not grow with longer (or shrink with shorter)
    attempts.
    """
    distance = levenshtein(stored.canonical, attempt.canonical)
    relative = distance / len(stored.canonical)
    return ToleranceResult(
        accepted=relative <= config.max_relative_distance,
        distance=distance,
        relative=relative,
    )
