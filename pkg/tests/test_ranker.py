import random

import pytest

from passguess.matching import normalize
from passguess.ranker import (
    RankerConfig,
    attack_report,
    estimate,
    rank_passphrase,
    unigram_permutation_estimate,
)

from conftest import make_store
from oracle_ranker import naive_guess_numbers, naive_unigram_estimate
from synth import random_phrase, random_store


def disjoint_4gram_store():
    """Two 4-grams at ranks 400 and 800, padded with distinct-frequency
    filler rows over a vocabulary the phrase never uses."""
    grams = {}
    for i in range(1, 801):
        if i == 400:
            words = ("p1", "p2", "p3", "p4")
        elif i == 800:
            words = ("p5", "p6", "p7", "p8")
        else:
            words = ("f%da" % i, "f%db" % i, "f%dc" % i, "f%dd" % i)
        grams[words] = 100_000 - 10 * i
    return make_store({4: grams})


class TestWorkedExamples:
    def test_two_disjoint_4grams_multiply(self):
        store = disjoint_4gram_store()
        est = rank_passphrase("p1 p2 p3 p4 p5 p6 p7 p8", store)
        assert est.low_guesses == 400 * 800
        assert est.unfound_words == ()
        assert [s.rank_used for s in est.found_spans] == [400, 800]
        assert not any(s.dynamic for s in est.found_spans)
        # the only failed search is the anchored one bridging the two
        # matches; it charges the table's worst rank on top of low
        assert est.high_guesses == 320_000 + 800

    def test_front_anchored_search_uses_subset_position(self):
        store = make_store({
            5: {("a", "b", "c", "d", "e"): 50,
                ("m1", "m2", "m3", "m4", "m5"): 90,
                ("n1", "n2", "n3", "n4", "n5"): 70},
            4: {("e", "x1", "x2", "x3"): 99,
                ("e", "f", "g", "h"): 10,
                ("e", "y1", "y2", "y3"): 5},
        })
        est = rank_passphrase("a b c d e f g h", store)
        # the 5-gram sits at table rank 3; the trailing words match an
        # anchored 4-gram search at position 2 of the "e % % %" subset
        assert [(s.rank_used, s.dynamic) for s in est.found_spans] == [
            (3, False), (2, True)]
        assert est.low_guesses == 6

    def test_anchored_subset_breaks_ties_lexicographically(self):
        store = make_store({
            5: {("a", "b", "c", "d", "e"): 50},
            4: {("e", "x1", "x2", "x3"): 10,
                ("e", "f", "g", "h"): 10},
        })
        est = rank_passphrase("a b c d e f g h", store)
        # both continuations share a frequency; ("e","f",...) sorts first
        assert est.found_spans[-1].rank_used == 1
        assert est.found_spans[-1].dynamic
        assert est.low_guesses == 1

    def test_back_anchored_search_slides_window(self):
        store = make_store({
            1: {("a",): 50, ("q1",): 90, ("q2",): 80, ("q3",): 60},
            3: {("b", "c", "d"): 10, ("z1", "z2", "d"): 20},
            5: {("d", "e", "f", "g", "h"): 40,
                ("r1", "r2", "r3", "r4", "r5"): 70},
        })
        est = rank_passphrase("a b c d e f g h", store)
        # the 5-gram covers d..h at rank 2; words b,c resolve through a
        # "% % d" search (position 2 of that subset); word a falls through
        # to its 1-gram rank 4
        assert est.low_guesses == 2 * 2 * 4
        spans = {s.words: (s.rank_used, s.dynamic) for s in est.found_spans}
        assert spans[("d", "e", "f", "g", "h")] == (2, False)
        assert spans[("b", "c", "d")] == (2, True)
        assert spans[("a",)] == (4, False)
        # three failed 5-gram windows at max rank 2 each
        assert est.high_guesses == est.low_guesses + 2 ** 3

    def test_single_candidate_anchored_search_costs_one(self):
        store = make_store({
            5: {("the", "cat", "sat", "on", "a"): 30,
                ("cat", "sat", "on", "a", "mat"): 10},
            2: {("a", "mat"): 7, ("on", "a"): 9},
        })
        est = rank_passphrase("the cat sat on a mat", store)
        assert est.low_guesses == 1
        assert est.high_guesses == 1
        spans = {s.words: (s.rank_used, s.dynamic) for s in est.found_spans}
        assert spans[("the", "cat", "sat", "on", "a")] == (1, False)
        assert spans[("a", "mat")] == (1, True)

    def test_unfound_word_means_not_guessable(self, demo_store):
        est = rank_passphrase("the cat sat on a zzzz", demo_store)
        assert est.low_guesses is None
        assert est.high_guesses is None
        assert est.unfound_words == ("zzzz",)

    def test_all_absent_words(self):
        store = make_store({1: {("hello",): 5}})
        est = rank_passphrase("qq ww ee rr", store)
        assert est.low_guesses is None
        assert set(est.unfound_words) == {"qq", "ww", "ee", "rr"}


class TestHighCombiner:
    def setup_method(self):
        self.store = make_store({
            1: {("a",): 3, ("b",): 2, ("c",): 1, ("x",): 4},
            2: {("x", "x"): 5},
        })

    def test_sum_is_default(self):
        est = rank_passphrase("a b c", self.store)
        # 2-gram searches miss twice at max rank 1, then the single words
        # match at ranks 2, 3, 4 (rank 1 belongs to "x")
        assert est.low_guesses == 2 * 3 * 4
        assert est.high_guesses == est.low_guesses + 1 * 1

    def test_product_mode(self):
        config = RankerConfig(high_combiner="product")
        est = rank_passphrase("a b c", self.store, config)
        assert est.high_guesses == est.low_guesses * 1 * 1

    def test_no_failed_searches_sum_collapses_to_low(self):
        store = make_store({1: {("a",): 3, ("b",): 2}})
        est = rank_passphrase("a b", store)
        assert est.low_guesses == est.high_guesses == 1 * 2
        est = rank_passphrase("a b", store,
                              RankerConfig(high_combiner="product"))
        assert est.high_guesses == est.low_guesses

    def test_config_validation(self):
        with pytest.raises(ValueError):
            RankerConfig(high_combiner="max")
        with pytest.raises(ValueError):
            RankerConfig(largest_ngram=6)


class TestUnigramEstimate:
    def setup_method(self):
        self.store = make_store({
            1: {("w%d" % i,): 100 - i for i in range(20)},
            5: {("w0", "w1", "w2", "w3", "w4"): 5},
        })

    def test_seven_words_is_plain_product(self):
        est = unigram_permutation_estimate(
            "w0 w1 w2 w3 w4 w5 w6", self.store)
        assert est.unigram_guesses == 1 * 2 * 3 * 4 * 5 * 6 * 7

    def test_ignores_longer_tables(self):
        # the 5-gram covering the first five words must not shortcut the
        # single-word walk
        est = unigram_permutation_estimate(
            "w0 w1 w2 w3 w4 w5 w6", self.store)
        assert all(s.length == 1 for s in est.found_spans)

    def test_eight_words_charges_shorter_sequences_first(self):
        est = unigram_permutation_estimate(
            "w0 w1 w2 w3 w4 w5 w6 w7", self.store)
        vocab = self.store.lexicon_size
        assert vocab == 20
        product = 1 * 2 * 3 * 4 * 5 * 6 * 7 * 8
        assert est.unigram_guesses == product + vocab ** 7

    def test_ten_words_prefix_sum(self):
        phrase = " ".join("w%d" % i for i in range(10))
        est = unigram_permutation_estimate(phrase, self.store)
        product = 1
        for i in range(10):
            product *= i + 1
        expected = product + 20 ** 7 + 20 ** 8 + 20 ** 9
        assert est.unigram_guesses == expected

    def test_vocab_override(self):
        est = unigram_permutation_estimate(
            "w0 w1 w2 w3 w4 w5 w6 w7", self.store, vocab_override=493_906)
        product = 1 * 2 * 3 * 4 * 5 * 6 * 7 * 8
        assert est.unigram_guesses == product + 493_906 ** 7

    def test_missing_word_not_guessable(self):
        est = unigram_permutation_estimate(
            "w0 w1 w2 qq w4 w5 w6", self.store)
        assert est.unigram_guesses is None
        assert est.unigram_unfound_words == ("qq",)


class TestEstimateAndReport:
    def test_merged_record(self, demo_store):
        est = estimate("the cat sat on a mat the cat", demo_store)
        assert est.low_guesses is not None
        assert est.low_guesses <= est.high_guesses
        assert est.unigram_guesses is not None
        rec = est.to_record()
        assert rec["low"] == str(est.low_guesses)
        assert rec["lowBits"] == pytest.approx(est.low_bits)
        assert rec["unfoundWords"] == []

    def test_not_guessable_serialization(self, demo_store):
        est = estimate("the cat zzzz on a mat qq ww", demo_store)
        rec = est.to_record()
        assert rec["low"] == "not_guessable"
        assert rec["lowBits"] is None
        assert "zzzz" in rec["unfoundWords"]

    def test_attack_report_fractions(self, demo_store):
        phrases = [
            "the cat sat on a mat the cat",
            "the cat zzzz on a mat qq ww",
        ]
        rep = attack_report(phrases, demo_store)
        assert rep.guessable_fraction["low"] == 0.5
        assert rep.guessable_fraction["unigram"] == 0.5

    def test_attack_report_empty(self, demo_store):
        rep = attack_report([], demo_store)
        assert rep.estimates == ()
        assert rep.guessable_fraction["low"] == 0.0

    def test_rank_monotonicity(self):
        # push the matched 2-gram down a rank and low cannot shrink
        base = {2: {("a", "b"): 10, ("c", "d"): 20}}
        worse = {2: {("a", "b"): 10, ("c", "d"): 20, ("e", "f"): 30}}
        low1 = rank_passphrase("a b", make_store(base)).low_guesses
        low2 = rank_passphrase("a b", make_store(worse)).low_guesses
        assert low2 >= low1


class TestAgainstNaiveModel:
    def test_seeded_random_stores(self):
        rng = random.Random(4242)
        checked = 0
        for _ in range(25):
            store, tables, vocab = random_store(rng)
            for _ in range(4):
                phrase = random_phrase(rng, tables, vocab)
                mine = rank_passphrase(normalize(" ".join(phrase)), store)
                low, high, _ = naive_guess_numbers(tables, phrase)
                assert mine.low_guesses == low, (tables, phrase)
                assert mine.high_guesses == high, (tables, phrase)
                uni = unigram_permutation_estimate(
                    normalize(" ".join(phrase)), store)
                assert uni.unigram_guesses == naive_unigram_estimate(
                    tables, phrase, store.lexicon_size), (tables, phrase)
                checked += 1
        assert checked == 100
