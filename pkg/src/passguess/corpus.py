"""Ranked n-gram tables built from word-frequency corpora.

A store holds one frequency-ranked table per n-gram order (1 through 5) plus
two auxiliary lexicons (proper nouns, slang). Ranks use competition ranking:
tied frequencies share the smallest rank in their group, and the next distinct
frequency is ranked as if every tied entry above it occupied its own slot, so
frequencies {9, 9, 9, 9, 9, 4} rank as {1, 1, 1, 1, 1, 6}. Ties are broken
lexicographically when ordering rows, which keeps lookups and downstream
re-ranking deterministic.

On disk a store is a directory of TSV tables (``frequency<TAB>w1<TAB>...``),
two plain-text lexicon files, and a small meta.json.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass

from .matching import normalize, EmptyPhraseError

MIN_N = 1
MAX_N = 5

# wildcard marker accepted by lookup(), alongside None
WILDCARD = "%"

DEFAULT_BLACKLIST_K = 10_000


class EmptyCorpusError(ValueError):
    """Corpus text contains no usable tokens."""


class EmptyTableError(ValueError):
    """An operation needs a non-empty n-gram table."""


class BadArityError(ValueError):
    """N-gram length outside the supported 1..5 range."""


class ParseError(ValueError):
    """Malformed store file; carries the 1-based offending line number."""

    def __init__(self, message: str, path: str, line: int):
        super().__init__("%s:%d: %s" % (path, line, message))
        self.path = path
        self.line = line


@dataclass(frozen=True)
class RankedNgram:
    words: tuple[str, ...]
    frequency: int
    rank: int


@dataclass(frozen=True)
class CorpusStats:
    total_tokens: int
    distinct: dict[int, int]
    total_windows: dict[int, int]


def _check_arity(n: int) -> None:
    if not MIN_N <= n <= MAX_N:
        raise BadArityError("n-gram order must be in 1..5, got %d" % n)


def extract_ngrams(text: str, max_n: int = MAX_N,
                   boundary: str | None = None) -> dict[int, Counter]:
    """Count every contiguous window of 1..max_n normalized tokens.

    A pure sliding window: with no boundary marker configured, windows may
    span sentence ends. When a boundary character is given, the raw text is
    split on it first (before normalization strips punctuation) and windows
    never cross the split points.
    """
    _check_arity(max_n)
    segments = text.split(boundary) if boundary else [text]
    token_runs = []
    for seg in segments:
        try:
            token_runs.append(normalize(seg).tokens)
        except EmptyPhraseError:
            continue
    if not token_runs:
        raise EmptyCorpusError("corpus contains no tokens")
    counts: dict[int, Counter] = {n: Counter() for n in range(1, max_n + 1)}
    for run in token_runs:
        for n in range(1, max_n + 1):
            for i in range(len(run) - n + 1):
                counts[n][run[i:i + n]] += 1
    return counts


def rank_table(frequencies: dict[tuple[str, ...], int]) -> list[RankedNgram]:
    """Order by frequency desc (ties lexicographic) and assign competition ranks."""
    if not frequencies:
        raise EmptyTableError("cannot rank an empty table")
    ordered = sorted(frequencies.items(), key=lambda kv: (-kv[1], kv[0]))
    table = []
    prev_freq = None
    prev_rank = 0
    for pos, (words, freq) in enumerate(ordered, start=1):
        if freq != prev_freq:
            prev_rank = pos
            prev_freq = freq
        table.append(RankedNgram(words=tuple(words), frequency=freq, rank=prev_rank))
    return table


class NgramStore:
    """Immutable bundle of ranked tables plus proper-noun and slang lexicons.

    Tables for every order 1..5 always exist, possibly empty. An optional
    per-order entry cap models truncated source tables (entries beyond the cap
    are dropped at build time, keeping the most frequent).
    """

    def __init__(self, tables: dict[int, list[RankedNgram]],
                 proper_nouns: frozenset[str] = frozenset(),
                 slang_terms: frozenset[str] = frozenset(),
                 blacklist_k: int = DEFAULT_BLACKLIST_K,
                 caps: dict[int, int] | None = None):
        self.tables = {n: list(tables.get(n, ())) for n in range(MIN_N, MAX_N + 1)}
        self.proper_nouns = frozenset(proper_nouns)
        self.slang_terms = frozenset(slang_terms)
        self.blacklist_k = blacklist_k
        self.caps = dict(caps or {})
        for n, cap in self.caps.items():
            _check_arity(n)
            self.tables[n] = self.tables[n][:cap]
        self._exact = {
            n: {e.words: e for e in rows} for n, rows in self.tables.items()
        }
        self._max_rank = {
            n: (rows[-1].rank if rows else 0) for n, rows in self.tables.items()
        }
        # slot indexes are built on first wildcard use; see _slot_index
        self._slot_indexes: dict[tuple[int, int], dict[str, list[int]]] = {}

    @property
    def lexicon_size(self) -> int:
        return len(self.tables[1])

    def max_rank(self, n: int) -> int:
        _check_arity(n)
        return self._max_rank[n]

    def contains_word(self, word: str) -> bool:
        return (word,) in self._exact[1]

    def _slot_index(self, n: int, slot: int) -> dict[str, list[int]]:
        key = (n, slot)
        index = self._slot_indexes.get(key)
        if index is None:
            index = {}
            for pos, entry in enumerate(self.tables[n]):
                index.setdefault(entry.words[slot], []).append(pos)
            self._slot_indexes[key] = index
        return index

    def lookup(self, pattern) -> list[RankedNgram]:
        """Find table rows matching a word pattern.

        Each slot is either a word or a wildcard (None or "%"). An exact
        pattern returns at most one row; wildcard patterns return every
        agreeing row ordered by frequency desc, ties lexicographic. At least
        one slot must be a concrete word.
        """
        slots = [None if w in (None, WILDCARD) else w for w in pattern]
        n = len(slots)
        _check_arity(n)
        fixed = [(i, w) for i, w in enumerate(slots) if w is not None]
        if not fixed:
            raise ValueError("lookup pattern needs at least one concrete word")
        if len(fixed) == n:
            entry = self._exact[n].get(tuple(slots))
            return [entry] if entry else []
        # seed from the sparsest fixed slot, then filter by the rest
        seeds = []
        for i, w in fixed:
            positions = self._slot_index(n, i).get(w)
            if not positions:
                return []
            seeds.append((len(positions), i, positions))
        seeds.sort()
        _, seed_slot, positions = seeds[0]
        rest = [(i, w) for i, w in fixed if i != seed_slot]
        table = self.tables[n]
        out = []
        for pos in positions:
            entry = table[pos]
            if all(entry.words[i] == w for i, w in rest):
                out.append(entry)
        return out

    def is_blacklisted(self, words: tuple[str, ...],
                       k: int | None = None) -> bool:
        """True when the 3/4/5-gram sits in the top-k ranks of its table."""
        if not 3 <= len(words) <= 5:
            raise BadArityError(
                "blacklist applies to 3..5-grams, got %d words" % len(words))
        cutoff = self.blacklist_k if k is None else k
        entry = self._exact[len(words)].get(tuple(words))
        return entry is not None and entry.rank <= cutoff

    def stats(self) -> CorpusStats:
        distinct = {n: len(rows) for n, rows in self.tables.items()}
        windows = {
            n: sum(e.frequency for e in rows) for n, rows in self.tables.items()
        }
        return CorpusStats(
            total_tokens=windows.get(1, 0),
            distinct=distinct,
            total_windows=windows,
        )


def build_store(frequencies: dict[int, dict[tuple[str, ...], int]],
                proper_nouns=(), slang_terms=(),
                blacklist_k: int = DEFAULT_BLACKLIST_K,
                caps: dict[int, int] | None = None) -> NgramStore:
    """Rank per-order frequency maps and assemble a store.

    Missing or empty orders produce empty tables; lexicon entries are
    normalized to single tokens.
    """
    tables = {}
    for n, freqs in frequencies.items():
        _check_arity(n)
        if freqs:
            tables[n] = rank_table(freqs)
    return NgramStore(
        tables,
        proper_nouns=frozenset(_clean_lexicon(proper_nouns)),
        slang_terms=frozenset(_clean_lexicon(slang_terms)),
        blacklist_k=blacklist_k,
        caps=caps,
    )


def _clean_lexicon(entries):
    for raw in entries:
        try:
            yield from normalize(raw).tokens
        except EmptyPhraseError:
            continue


def _table_path(directory: str, n: int) -> str:
    return os.path.join(directory, "%dgram.tsv" % n)


def save_store(store: NgramStore, directory: str) -> None:
    os.makedirs(directory, exist_ok=True)
    for n, rows in store.tables.items():
        with open(_table_path(directory, n), "w", encoding="utf-8") as fh:
            for entry in rows:
                fh.write("%d\t%s\n" % (entry.frequency, "\t".join(entry.words)))
    for name, lexicon in (("proper_nouns.txt", store.proper_nouns),
                          ("slang.txt", store.slang_terms)):
        with open(os.path.join(directory, name), "w", encoding="utf-8") as fh:
            for word in sorted(lexicon):
                fh.write(word + "\n")
    meta = {
        "blacklist_k": store.blacklist_k,
        "caps": {str(n): cap for n, cap in store.caps.items()},
        "counts": {str(n): len(rows) for n, rows in store.tables.items()},
    }
    with open(os.path.join(directory, "meta.json"), "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load_table(path: str, n: int) -> dict[tuple[str, ...], int]:
    freqs: dict[tuple[str, ...], int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != n + 1:
                raise ParseError(
                    "expected %d tab-separated fields, found %d"
                    % (n + 1, len(parts)), path, lineno)
            try:
                freq = int(parts[0])
            except ValueError:
                raise ParseError(
                    "frequency %r is not an integer" % parts[0], path, lineno)
            if freq < 1:
                raise ParseError("frequency must be positive", path, lineno)
            words = []
            for token in parts[1:]:
                cleaned = "".join(ch for ch in token.lower() if ch.isalnum())
                if not cleaned:
                    raise ParseError(
                        "word %r is empty after normalization" % token,
                        path, lineno)
                words.append(cleaned)
            key = tuple(words)
            freqs[key] = freqs.get(key, 0) + freq
    return freqs


def _load_lexicon(path: str) -> frozenset[str]:
    if not os.path.exists(path):
        return frozenset()
    with open(path, encoding="utf-8") as fh:
        return frozenset(_clean_lexicon(fh))


def load_store(directory: str) -> NgramStore:
    """Load a store directory; malformed rows raise ParseError with line numbers."""
    if not os.path.isdir(directory):
        raise FileNotFoundError("store directory %r does not exist" % directory)
    meta_path = os.path.join(directory, "meta.json")
    blacklist_k = DEFAULT_BLACKLIST_K
    caps: dict[int, int] = {}
    if os.path.exists(meta_path):
        with open(meta_path, encoding="utf-8") as fh:
            try:
                meta = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(str(exc.msg), meta_path, exc.lineno)
        blacklist_k = int(meta.get("blacklist_k", DEFAULT_BLACKLIST_K))
        caps = {int(n): int(cap) for n, cap in (meta.get("caps") or {}).items()
                if cap is not None}
    frequencies = {}
    for n in range(MIN_N, MAX_N + 1):
        path = _table_path(directory, n)
        if os.path.exists(path):
            freqs = _load_table(path, n)
            if freqs:
                frequencies[n] = freqs
    return build_store(
        frequencies,
        proper_nouns=_load_lexicon(os.path.join(directory, "proper_nouns.txt")),
        slang_terms=_load_lexicon(os.path.join(directory, "slang.txt")),
        blacklist_k=blacklist_k,
        caps=caps,
    )
