"""Passphrase creation policy.

A phrase is acceptable when it has enough words, names at least one proper
noun, and contains no 3/4/5-word window ranked inside the blacklist cutoff of
the corresponding table. Common two-word sequences are deliberately not
blocking (they would reject too much natural phrasing); they surface as a
recommendation instead, as does the absence of slang or other non-dictionary
words.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import NgramStore
from .matching import normalize, EmptyPhraseError

# stable machine-readable codes, shared with the HTTP API and UI
WORD_COUNT = "WORD_COUNT"
PROPER_NOUN = "PROPER_NOUN"
BLACKLISTED_NGRAM = "BLACKLISTED_NGRAM"
EMPTY_PHRASE = "EMPTY_PHRASE"
WORD_LENGTH = "WORD_LENGTH"
NO_SLANG = "NO_SLANG"
COMMON_BIGRAMS = "COMMON_BIGRAMS"


@dataclass(frozen=True)
class PolicyConfig:
    min_words: int = 7
    blacklist_ns: frozenset[int] = frozenset({3, 4, 5})
    require_proper_noun: bool = True
    # None defers to the store's cutoff (10,000 by default)
    blacklist_k: int | None = None
    # abuse guard against degenerate one-character "words"; off by default
    min_word_chars: int = 1


@dataclass(frozen=True)
class Finding:
    code: str
    message: str
    evidence: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PolicyReport:
    violations: tuple[Finding, ...]
    recommendations: tuple[Finding, ...]
    word_count: int
    proper_noun_tokens: tuple[str, ...]
    slang_tokens: tuple[str, ...]
    non_dictionary_tokens: tuple[str, ...]
    blacklisted_windows: tuple[dict, ...]

    @property
    def acceptable(self) -> bool:
        return not self.violations

    def to_record(self) -> dict:
        """JSON-ready form shared by the CLI and the HTTP API."""
        def findings(items):
            return [
                {"code": f.code, "message": f.message, "evidence": f.evidence}
                for f in items
            ]
        return {
            "acceptable": self.acceptable,
            "violations": findings(self.violations),
            "recommendations": findings(self.recommendations),
            "wordCount": self.word_count,
            "properNounTokens": list(self.proper_noun_tokens),
            "slangTokens": list(self.slang_tokens),
            "nonDictionaryTokens": list(self.non_dictionary_tokens),
            "blacklistedWindows": list(self.blacklisted_windows),
        }


@dataclass(frozen=True)
class TokenClass:
    token: str
    in_lexicon: bool
    slang: bool

    @property
    def not_found(self) -> bool:
        return not (self.in_lexicon or self.slang)


def _raw_word_pairs(raw: str) -> list[tuple[str, str]]:
    """Pair each surviving raw word with its normalized token, in order."""
    pairs = []
    for word in raw.split():
        cleaned = "".join(ch for ch in word.lower() if ch.isalnum())
        if cleaned:
            pairs.append((word, cleaned))
    return pairs


def detect_proper_nouns(raw: str, store: NgramStore) -> tuple[str, ...]:
    """Tokens treated as proper-noun evidence.

    A token qualifies when any of these hold: it appears in the store's
    proper-noun lexicon; its raw form is capitalized somewhere other than the
    phrase start (sentence case proves nothing); or it is absent from the
    1-gram lexicon entirely, which is how unlisted names usually look.
    """
    found = []
    for position, (word, token) in enumerate(_raw_word_pairs(raw)):
        first_alpha = next((ch for ch in word if ch.isalpha()), "")
        qualifies = (
            token in store.proper_nouns
            or (position > 0 and first_alpha.isupper())
            or not store.contains_word(token)
        )
        if qualifies and token not in found:
            found.append(token)
    return tuple(found)


def classify_tokens(tokens, store: NgramStore) -> list[TokenClass]:
    return [
        TokenClass(
            token=t,
            in_lexicon=store.contains_word(t),
            slang=t in store.slang_terms,
        )
        for t in tokens
    ]


def check_policy(raw: str, store: NgramStore,
                 config: PolicyConfig = PolicyConfig()) -> PolicyReport:
    """Evaluate a raw phrase against the creation policy."""
    try:
        phrase = normalize(raw)
    except EmptyPhraseError:
        return PolicyReport(
            violations=(Finding(EMPTY_PHRASE, "enter a passphrase"),),
            recommendations=(),
            word_count=0,
            proper_noun_tokens=(),
            slang_tokens=(),
            non_dictionary_tokens=(),
            blacklisted_windows=(),
        )

    tokens = phrase.tokens
    violations = []
    recommendations = []

    if len(tokens) < config.min_words:
        violations.append(Finding(
            WORD_COUNT,
            "use at least %d words (got %d)" % (config.min_words, len(tokens)),
            {"min_words": config.min_words, "word_count": len(tokens)},
        ))

    if config.min_word_chars > 1:
        short = [t for t in tokens if len(t) < config.min_word_chars]
        if short:
            violations.append(Finding(
                WORD_LENGTH,
                "words need at least %d characters" % config.min_word_chars,
                {"short_words": short},
            ))

    proper = detect_proper_nouns(raw, store)
    if config.require_proper_noun and not proper:
        violations.append(Finding(
            PROPER_NOUN,
            "include at least one proper noun (a name, place, or thing)",
        ))

    classes = classify_tokens(tokens, store)
    slang = tuple(c.token for c in classes if c.slang)
    not_found = tuple(c.token for c in classes if c.not_found)

    windows = []
    for n in sorted(config.blacklist_ns):
        for i in range(len(tokens) - n + 1):
            words = tokens[i:i + n]
            if store.is_blacklisted(words, k=config.blacklist_k):
                entry = store.lookup(words)[0]
                windows.append({
                    "n": n,
                    "start": i,
                    "words": list(words),
                    "rank": entry.rank,
                })
    for window in windows:
        violations.append(Finding(
            BLACKLISTED_NGRAM,
            "\"%s\" is a top-ranked %d-word sequence; pick something rarer"
            % (" ".join(window["words"]), window["n"]),
            window,
        ))

    if not slang and not not_found:
        recommendations.append(Finding(
            NO_SLANG,
            "consider slang or made-up words a dictionary would not list",
        ))

    if store.tables[2]:
        cutoff = config.blacklist_k if config.blacklist_k is not None \
            else store.blacklist_k
        common = []
        for i in range(len(tokens) - 1):
            pair = tokens[i:i + 2]
            hit = store.lookup(pair)
            if hit and hit[0].rank <= cutoff:
                common.append({"start": i, "words": list(pair),
                               "rank": hit[0].rank})
        if common:
            recommendations.append(Finding(
                COMMON_BIGRAMS,
                "several adjacent word pairs are very common; "
                "consider rearranging",
                {"windows": common},
            ))

    return PolicyReport(
        violations=tuple(violations),
        recommendations=tuple(recommendations),
        word_count=len(tokens),
        proper_noun_tokens=proper,
        slang_tokens=slang,
        non_dictionary_tokens=not_found,
        blacklisted_windows=tuple(windows),
    )
