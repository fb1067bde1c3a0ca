"""Passphrase policy checking and guessability estimation.

The pieces, bottom up:

* ``matching``: phrase normalization, edit distance, tolerant comparison
* ``corpus``: ranked n-gram tables and the on-disk store format
* ``policy``: the creation policy (word count, proper noun, blacklist)
* ``ranker``: guess-number estimation against ranked tables
* ``theory``: guesswork, blacklist mass, n-gram join counts, bit measures
* ``report``: batch evaluation over phrase collections
* ``cli`` / ``service``: command line and demo HTTP front ends
"""

from .corpus import (
    NgramStore,
    RankedNgram,
    build_store,
    extract_ngrams,
    load_store,
    rank_table,
    save_store,
)
from .matching import (
    NormalizedPhrase,
    ToleranceConfig,
    levenshtein,
    normalize,
    within_tolerance,
)
from .policy import PolicyConfig, PolicyReport, check_policy
from .ranker import (
    GuessEstimate,
    RankerConfig,
    attack_report,
    estimate,
    rank_passphrase,
    unigram_permutation_estimate,
)
from .theory import (
    Distribution,
    blacklist_mass,
    exhaustive_bits,
    guesswork_curve,
    join_count,
    marginal_guesswork,
    multiplier_bits,
)

__version__ = "0.1.0"

__all__ = [
    "NgramStore",
    "RankedNgram",
    "build_store",
    "extract_ngrams",
    "load_store",
    "rank_table",
    "save_store",
    "NormalizedPhrase",
    "ToleranceConfig",
    "levenshtein",
    "normalize",
    "within_tolerance",
    "PolicyConfig",
    "PolicyReport",
    "check_policy",
    "GuessEstimate",
    "RankerConfig",
    "attack_report",
    "estimate",
    "rank_passphrase",
    "unigram_permutation_estimate",
    "Distribution",
    "blacklist_mass",
    "exhaustive_bits",
    "guesswork_curve",
    "join_count",
    "marginal_guesswork",
    "multiplier_bits",
]
