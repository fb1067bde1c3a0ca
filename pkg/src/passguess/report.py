"""Batch evaluation reports over phrase collections.

Everything here consumes the estimator and policy layers and reduces a
phrase list to tables: guessing curves (what fraction falls by N guesses),
coverage rows (what the store knows about each phrase), a tolerance audit
(which unknown words a forgiving matcher would rescue), and an exact-match
sweep against known phrase dictionaries.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

from .corpus import NgramStore
from .matching import (
    NormalizedPhrase,
    ToleranceConfig,
    levenshtein,
    normalize,
    EmptyPhraseError,
)
from .policy import classify_tokens
from .ranker import GuessEstimate, RankerConfig, estimate

_ESTIMATOR_FIELDS = {
    "low": "low_guesses",
    "high": "high_guesses",
    "unigram": "unigram_guesses",
}


@dataclass(frozen=True)
class CurveStep:
    log2_guesses: float
    fraction_guessed: float


def guessing_curve(estimates, estimator: str = "low") -> list[CurveStep]:
    """Fraction of phrases guessed within N guesses, one step per distinct N.

    Phrases the estimator could not price stay in the denominator but never
    join the numerator, so the curve tops out at the guessable fraction.
    """
    field = _ESTIMATOR_FIELDS.get(estimator)
    if field is None:
        raise ValueError("estimator must be one of %s"
                         % sorted(_ESTIMATOR_FIELDS))
    total = len(estimates)
    guesses = sorted(
        g for g in (getattr(e, field) for e in estimates) if g is not None)
    steps = []
    seen = 0
    for i, g in enumerate(guesses):
        seen += 1
        if i + 1 < len(guesses) and guesses[i + 1] == g:
            continue
        steps.append(CurveStep(math.log2(g), seen / total))
    return steps


def tolerance_audit(estimates, store: NgramStore,
                    config: ToleranceConfig = ToleranceConfig()) -> list[dict]:
    """For phrases with unmatched words, find lexicon words close enough
    that a tolerant verifier would have taken them.

    A word of length L may be rescued by any lexicon entry within
    floor(max_relative_distance * L) edits. One row per phrase that had
    unmatched words; each rescue lists the closest lexicon entry.
    """
    lexicon = [entry.words[0] for entry in store.tables[1]]
    rows = []
    for i, est in enumerate(estimates, start=1):
        if not est.unfound_words:
            continue
        rescued = []
        for word in est.unfound_words:
            radius = int(config.max_relative_distance * len(word))
            if radius < 1:
                continue
            best = None
            for candidate in lexicon:
                if abs(len(candidate) - len(word)) > radius:
                    continue
                d = levenshtein(word, candidate)
                if d <= radius and (best is None or (d, candidate) < best):
                    best = (d, candidate)
            if best is not None:
                rescued.append({
                    "word": word,
                    "match": best[1],
                    "distance": best[0],
                })
        rows.append({
            "phrase_id": i,
            "phrase": est.phrase.canonical,
            "rescued_words": rescued,
        })
    return rows


def phrase_dictionary_check(phrases, known_phrases) -> list[dict]:
    """Exact matches between normalized phrases and a known-phrase list."""
    known = set()
    for raw in known_phrases:
        try:
            known.add(normalize(raw).canonical)
        except EmptyPhraseError:
            continue
    hits = []
    for i, raw in enumerate(phrases, start=1):
        try:
            canonical = _canonical(raw)
        except EmptyPhraseError:
            continue
        if canonical in known:
            hits.append({"phrase_id": i, "phrase": canonical})
    return hits


def _canonical(phrase) -> str:
    if isinstance(phrase, NormalizedPhrase):
        return phrase.canonical
    return normalize(phrase).canonical


@dataclass(frozen=True)
class CoverageRow:
    phrase_id: int
    word_count: int
    slang_hits: int
    not_found: int
    low_guessable: bool
    high_guessable: bool
    unigram_guessable: bool


def coverage_table(phrases, store: NgramStore,
                   config: RankerConfig = RankerConfig(),
                   vocab_override: int | None = None):
    """Per-phrase store coverage plus corpus-level totals."""
    rows = []
    estimates: list[GuessEstimate] = []
    total_words = 0
    total_found = 0
    for i, raw in enumerate(phrases, start=1):
        est = estimate(raw, store, config, vocab_override)
        estimates.append(est)
        classes = classify_tokens(est.phrase.tokens, store)
        not_found = sum(1 for c in classes if c.not_found)
        total_words += len(classes)
        total_found += len(classes) - not_found
        rows.append(CoverageRow(
            phrase_id=i,
            word_count=len(classes),
            slang_hits=sum(1 for c in classes if c.slang),
            not_found=not_found,
            low_guessable=est.low_guesses is not None,
            high_guessable=est.high_guesses is not None,
            unigram_guessable=est.unigram_guesses is not None,
        ))
    aggregate = {
        "phrases": len(rows),
        "words": total_words,
        "phrases_with_slang": sum(1 for r in rows if r.slang_hits),
        "phrases_with_not_found": sum(1 for r in rows if r.not_found),
        "percent_words_found": (100.0 * total_found / total_words
                                if total_words else 0.0),
    }
    return rows, aggregate, estimates


def curve_csv(steps) -> str:
    out = io.StringIO()
    out.write("log2_guesses,fraction_guessed\n")
    for step in steps:
        out.write("%.6f,%.6f\n" % (step.log2_guesses, step.fraction_guessed))
    return out.getvalue()


def coverage_csv(rows) -> str:
    out = io.StringIO()
    out.write("phrase_id,word_count,slang_hits,not_found,"
              "low_guessable,high_guessable,unigram_guessable\n")
    for r in rows:
        out.write("%d,%d,%d,%d,%d,%d,%d\n" % (
            r.phrase_id, r.word_count, r.slang_hits, r.not_found,
            r.low_guessable, r.high_guessable, r.unigram_guessable))
    return out.getvalue()
