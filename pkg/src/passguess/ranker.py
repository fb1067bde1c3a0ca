"""Guess-number estimation for word-based passphrases.

Models an attacker who walks ranked n-gram tables from the most specific
order down: every 5-word window of the phrase is tried against the 5-gram
table, then 4-word windows against the 4-gram table, and so on to single
words. Once a window matches, its words are marked found and later, shorter
searches only fill the gaps. A window that borders already-found words is
searched with those words fixed and the gaps wildcarded, and the candidate
set that comes back is re-ranked on its own: the attacker already knows the
anchor word, so only the position inside that filtered subset counts.

The optimistic guess number (``low``) is the product of the ranks collected
by matched searches. The pessimistic number (``high``) additionally charges
for every search that came up empty, at the searched table's worst rank (or
the subset size for anchored searches). A separate single-word estimate
models an attacker who permutes ranked words with no phrase structure at
all; for phrases longer than seven words it also charges for first
exhausting every shorter word-sequence, adding vocabulary^k for k from 7 up
to the phrase length minus one.

All guess numbers are exact arbitrary-precision integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .corpus import NgramStore, MAX_N
from .matching import NormalizedPhrase, normalize

NOT_GUESSABLE = "not_guessable"


@dataclass(frozen=True)
class RankerConfig:
    largest_ngram: int = MAX_N
    # "sum" adds the failed-search product to the low estimate;
    # "product" multiplies the low estimate by it
    high_combiner: str = "sum"

    def __post_init__(self):
        if not 1 <= self.largest_ngram <= MAX_N:
            raise ValueError("largest_ngram must be in 1..5")
        if self.high_combiner not in ("sum", "product"):
            raise ValueError("high_combiner must be 'sum' or 'product'")


@dataclass(frozen=True)
class FoundSpan:
    start: int
    length: int
    words: tuple[str, ...]
    rank_used: int
    # true when the rank is a position inside an anchored-search subset
    # rather than a full-table rank
    dynamic: bool


@dataclass(frozen=True)
class GuessEstimate:
    phrase: NormalizedPhrase
    low_guesses: int | None
    high_guesses: int | None
    unigram_guesses: int | None
    found_spans: tuple[FoundSpan, ...] = ()
    unfound_words: tuple[str, ...] = ()
    unigram_unfound_words: tuple[str, ...] = ()

    @property
    def low_bits(self) -> float | None:
        return _bits(self.low_guesses)

    @property
    def high_bits(self) -> float | None:
        return _bits(self.high_guesses)

    @property
    def unigram_bits(self) -> float | None:
        return _bits(self.unigram_guesses)

    def to_record(self) -> dict:
        """JSON-ready form: guess numbers as decimal strings, ranks as ints."""
        return {
            "phrase": self.phrase.canonical,
            "low": _guess_str(self.low_guesses),
            "high": _guess_str(self.high_guesses),
            "unigram": _guess_str(self.unigram_guesses),
            "lowBits": self.low_bits,
            "highBits": self.high_bits,
            "unigramBits": self.unigram_bits,
            "foundSpans": [
                {
                    "start": s.start,
                    "length": s.length,
                    "words": list(s.words),
                    "rankUsed": s.rank_used,
                    "dynamic": s.dynamic,
                }
                for s in self.found_spans
            ],
            "unfoundWords": list(self.unfound_words),
            "unigramUnfoundWords": list(self.unigram_unfound_words),
        }


def _bits(guesses: int | None) -> float | None:
    return None if guesses is None else math.log2(guesses)


def _guess_str(guesses: int | None) -> str:
    return NOT_GUESSABLE if guesses is None else str(guesses)


def _as_phrase(phrase) -> NormalizedPhrase:
    if isinstance(phrase, NormalizedPhrase):
        return phrase
    return normalize(phrase)


def _descend(tokens: tuple[str, ...], store: NgramStore, largest_ngram: int):
    """Walk tables from largest_ngram down to 1, marking matched windows.

    Returns (found flags, matched ranks, spans, failed-search charges).
    """
    length = len(tokens)
    found = [False] * length
    score: list[int] = []
    score_not_found: list[int] = []
    spans: list[FoundSpan] = []

    for n in range(min(largest_ngram, MAX_N), 0, -1):
        if not store.tables[n]:
            continue
        for i in range(length - n + 1):
            start = i
            # longest trailing run of unfound words in the window;
            # a found word resets the count
            run = 0
            for k in range(n):
                run = 0 if found[i + k] else run + 1
            num_not_found = run
            anchored = False
            if n > 1 and run >= n - 1:
                if found[i]:
                    # keep the window, fix its leading word
                    num_not_found += 1
                    anchored = True
                if i + n < length and found[i + n]:
                    # slide right one step, fix the trailing word
                    num_not_found += 1
                    start = i + 1
                    anchored = True
            if num_not_found < n:
                continue

            target = tuple(tokens[start:start + n])
            if anchored:
                pattern = [w if found[start + k] else None
                           for k, w in enumerate(target)]
            else:
                pattern = list(target)
            rows = store.lookup(pattern)

            matched_rank = None
            if len(rows) > 1:
                position = 0
                for entry in rows:
                    position += 1
                    if entry.words == target:
                        matched_rank = position if anchored else entry.rank
                        break
                if matched_rank is None:
                    score_not_found.append(
                        position if anchored else store.max_rank(n))
            else:
                if rows and rows[0].words == target:
                    # a single candidate in an anchored search costs one guess
                    matched_rank = 1 if anchored else rows[0].rank
                else:
                    score_not_found.append(store.max_rank(n))

            if matched_rank is not None:
                score.append(matched_rank)
                spans.append(FoundSpan(
                    start=start, length=n, words=target,
                    rank_used=matched_rank, dynamic=anchored,
                ))
                for k in range(n):
                    found[start + k] = True

    return found, score, spans, score_not_found


def _unique(words) -> tuple[str, ...]:
    seen = []
    for w in words:
        if w not in seen:
            seen.append(w)
    return tuple(seen)


def rank_passphrase(phrase, store: NgramStore,
                    config: RankerConfig = RankerConfig()) -> GuessEstimate:
    """Estimate how many guesses a table-walking attacker needs.

    Returns an estimate with ``low``/``high`` filled in; both are None when
    any word never matched (the attack as modeled cannot produce the phrase).
    """
    norm = _as_phrase(phrase)
    found, score, spans, score_not_found = _descend(
        norm.tokens, store, config.largest_ngram)
    unfound = _unique(t for t, ok in zip(norm.tokens, found) if not ok)
    if unfound:
        low = high = None
    else:
        low = math.prod(score)
        if config.high_combiner == "sum":
            high = low + (math.prod(score_not_found) if score_not_found else 0)
        else:
            high = low * math.prod(score_not_found)
    return GuessEstimate(
        phrase=norm,
        low_guesses=low,
        high_guesses=high,
        unigram_guesses=None,
        found_spans=tuple(spans),
        unfound_words=unfound,
    )


def unigram_permutation_estimate(phrase, store: NgramStore,
                                 vocab_override: int | None = None) -> GuessEstimate:
    """Estimate guesses for an attacker permuting ranked single words.

    The estimate is the product of each word's rank in the 1-gram table. For
    phrases longer than seven words the attacker is assumed to first exhaust
    all shorter candidate sequences, so vocabulary^k is added for every
    length k from 7 through len(phrase) - 1. The vocabulary size defaults to
    the store's distinct-word count and can be overridden.
    """
    norm = _as_phrase(phrase)
    found, score, spans, _ = _descend(norm.tokens, store, 1)
    unfound = _unique(t for t, ok in zip(norm.tokens, found) if not ok)
    if unfound:
        unigram = None
    else:
        vocab = vocab_override if vocab_override else store.lexicon_size
        unigram = math.prod(score) + sum(
            vocab ** k for k in range(7, len(norm.tokens)))
    return GuessEstimate(
        phrase=norm,
        low_guesses=None,
        high_guesses=None,
        unigram_guesses=unigram,
        found_spans=tuple(spans),
        unfound_words=(),
        unigram_unfound_words=unfound,
    )


def estimate(phrase, store: NgramStore,
             config: RankerConfig = RankerConfig(),
             vocab_override: int | None = None) -> GuessEstimate:
    """Full estimate: table-walk low/high plus the single-word permutation."""
    norm = _as_phrase(phrase)
    ngram = rank_passphrase(norm, store, config)
    unigram = unigram_permutation_estimate(norm, store, vocab_override)
    return GuessEstimate(
        phrase=norm,
        low_guesses=ngram.low_guesses,
        high_guesses=ngram.high_guesses,
        unigram_guesses=unigram.unigram_guesses,
        found_spans=ngram.found_spans,
        unfound_words=ngram.unfound_words,
        unigram_unfound_words=unigram.unigram_unfound_words,
    )


@dataclass(frozen=True)
class AttackReport:
    estimates: tuple[GuessEstimate, ...]
    guessable_fraction: dict[str, float] = field(default_factory=dict)


def attack_report(phrases, store: NgramStore,
                  config: RankerConfig = RankerConfig(),
                  vocab_override: int | None = None) -> AttackReport:
    """Run the full estimate over a phrase list and summarize coverage."""
    estimates = tuple(
        estimate(p, store, config, vocab_override) for p in phrases)
    total = len(estimates)

    def fraction(attr):
        if not total:
            return 0.0
        return sum(1 for e in estimates if getattr(e, attr) is not None) / total

    return AttackReport(
        estimates=estimates,
        guessable_fraction={
            "low": fraction("low_guesses"),
            "high": fraction("high_guesses"),
            "unigram": fraction("unigram_guesses"),
        },
    )
