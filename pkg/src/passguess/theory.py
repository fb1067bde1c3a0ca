"""Analytic security estimates: guesswork, blacklist mass, n-gram joins.

These operate on probability distributions and on the ranked tables
directly, independent of any particular phrase. Guess counts for composed
n-grams are exact integers; bit measures are base-2 logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .corpus import NgramStore, EmptyTableError, _check_arity

# slack for floating-point cumulative sums
_EPS = 1e-9


class BadAlphaError(ValueError):
    """Success probability outside (0, 1]."""


@dataclass(frozen=True)
class Distribution:
    """Guessing-order distribution: probabilities sorted descending."""

    probabilities: tuple[float, ...]

    def __post_init__(self):
        probs = self.probabilities
        if not probs:
            raise ValueError("distribution needs at least one outcome")
        for p in probs:
            if not 0.0 < p <= 1.0:
                raise ValueError("probability %r outside (0, 1]" % (p,))
        if any(a < b for a, b in zip(probs, probs[1:])):
            raise ValueError("probabilities must be sorted descending")
        if sum(probs) > 1.0 + _EPS:
            raise ValueError("probabilities sum past 1")

    @classmethod
    def from_values(cls, values) -> "Distribution":
        """Build from raw weights or probabilities, sorting as needed.

        Values that already look like a probability vector (all at most 1,
        total at most 1) are taken as-is; anything else is normalized by its
        total.
        """
        vals = [float(v) for v in values]
        if any(v <= 0 for v in vals):
            raise ValueError("weights must be positive")
        total = sum(vals)
        if total > 1.0 + _EPS or any(v > 1.0 for v in vals):
            vals = [v / total for v in vals]
        return cls(tuple(sorted(vals, reverse=True)))

    @classmethod
    def from_file(cls, path: str) -> "Distribution":
        """One weight per line; blank lines ignored; frequencies normalized."""
        values = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    values.append(float(line))
                except ValueError:
                    raise ValueError(
                        "%s:%d: %r is not a number" % (path, lineno, line))
        return cls.from_values(values)


def marginal_guesswork(dist: Distribution, alpha: float) -> int | None:
    """Smallest number of best-first guesses whose mass reaches alpha.

    Returns the 1-based guess count, or None when the distribution's total
    mass never reaches alpha.
    """
    if not 0.0 < alpha <= 1.0:
        raise BadAlphaError("alpha must be in (0, 1], got %r" % (alpha,))
    cumulative = 0.0
    for i, p in enumerate(dist.probabilities, start=1):
        cumulative += p
        if cumulative >= alpha - _EPS:
            return i
    return None


@dataclass(frozen=True)
class CurvePoint:
    index: int
    cumulative_mass: float
    log2_index: float


def guesswork_curve(dist: Distribution, stride: int = 1) -> list[CurvePoint]:
    """Cumulative mass against log2(guess count).

    With a stride above 1 only every stride-th index is emitted, but the
    final index always is, so the curve ends at the distribution's total
    mass.
    """
    if stride < 1:
        raise ValueError("stride must be at least 1")
    points = []
    cumulative = 0.0
    last = len(dist.probabilities)
    for i, p in enumerate(dist.probabilities, start=1):
        cumulative += p
        if (i - 1) % stride == 0 or i == last:
            points.append(CurvePoint(i, cumulative, math.log2(i)))
    return points


def blacklist_mass(store: NgramStore, n: int, top_k: int, top_m: int,
                   renormalize: bool = False) -> tuple[float, float]:
    """Probability mass an attacker covers with the first top_m table rows,
    before and after the top_k rows are struck from the pool.

    Masses are fractions of the full table's frequency total; ranks are not
    renumbered after the removal, so the denominator stays put unless
    renormalize is set.
    """
    _check_arity(n)
    if top_k < 0 or top_m < 0:
        raise ValueError("row counts cannot be negative")
    rows = store.tables[n]
    if not rows:
        raise EmptyTableError("no %d-gram table in store" % n)
    total = sum(e.frequency for e in rows)
    mass_plain = sum(e.frequency for e in rows[:top_m]) / total
    struck = sum(e.frequency for e in rows[:top_k])
    mass_after = sum(
        e.frequency for e in rows[top_k:top_k + top_m]) / total
    if renormalize and struck < total:
        mass_after = mass_after * total / (total - struck)
    return mass_plain, mass_after


def join_count(store: NgramStore, parts) -> tuple[int, float | None]:
    """Count phrase candidates built by chaining n-grams on shared words.

    ``parts`` lists the n-gram orders left to right; consecutive parts must
    share exactly one word (the left part's last equals the right part's
    first), so the composed phrase has sum(parts) - len(parts) + 1 words.
    Returns the exact candidate count and its log2 (None when zero).
    """
    parts = list(parts)
    if not parts:
        raise ValueError("composition needs at least one part")
    for n in parts:
        _check_arity(n)
        if not store.tables[n]:
            raise EmptyTableError("no %d-gram table in store" % n)
    # histogram over chain-final words, folded left to right
    ends: dict[str, int] = {}
    for entry in store.tables[parts[0]]:
        word = entry.words[-1]
        ends[word] = ends.get(word, 0) + 1
    for n in parts[1:]:
        pair_counts: dict[tuple[str, str], int] = {}
        for entry in store.tables[n]:
            key = (entry.words[0], entry.words[-1])
            pair_counts[key] = pair_counts.get(key, 0) + 1
        folded: dict[str, int] = {}
        for (first, last), count in pair_counts.items():
            chains = ends.get(first)
            if chains:
                folded[last] = folded.get(last, 0) + chains * count
        ends = folded
    count = sum(ends.values())
    return count, (math.log2(count) if count else None)


def compositions(word_length: int, min_part: int = 2,
                 max_part: int = 5):
    """Ordered ways to cover word_length words with overlap-chained parts."""
    if word_length < 1:
        raise ValueError("word_length must be positive")

    def extend(remaining, acc):
        if remaining == 0:
            yield tuple(acc)
            return
        for n in range(min_part, max_part + 1):
            take = n if not acc else n - 1
            if take <= remaining:
                acc.append(n)
                yield from extend(remaining - take, acc)
                acc.pop()

    yield from extend(word_length, [])


def exhaustive_bits(alphabet_size: float, length: float) -> float:
    """Bits to brute-force `length` symbols over an alphabet."""
    if alphabet_size <= 1 or length <= 0:
        raise ValueError("need alphabet_size > 1 and length > 0")
    return length * math.log2(alphabet_size)


def multiplier_bits(base_count: int, multiplier: int) -> float:
    """Bits when each of base_count candidates fans out multiplier ways."""
    if base_count < 1 or multiplier < 1:
        raise ValueError("counts must be positive integers")
    return math.log2(base_count * multiplier)
