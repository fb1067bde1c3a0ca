import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracle_distance import reference_distance
from passguess.matching import (
    EmptyPhraseError,
    ToleranceConfig,
    levenshtein,
    normalize,
    within_tolerance,
)


class TestNormalize:
    def test_lowercases_and_strips_punctuation(self):
        got = normalize("Hello, World!")
        assert got.tokens == ("hello", "world")
        assert got.canonical == "hello world"

    def test_collapses_whitespace(self):
        got = normalize("  the\tcat \n sat  ")
        assert got.canonical == "the cat sat"

    def test_keeps_digits(self):
        assert normalize("route 66!").tokens == ("route", "66")

    def test_punctuation_only_words_vanish(self):
        assert normalize("cat ... dog").tokens == ("cat", "dog")

    def test_empty_raises(self):
        with pytest.raises(EmptyPhraseError):
            normalize("?!* --- ...")

    @given(st.text(max_size=60))
    def test_idempotent(self, raw):
        try:
            once = normalize(raw)
        except EmptyPhraseError:
            return
        assert normalize(once.canonical) == once


class TestLevenshtein:
    def test_known_pairs(self):
        assert levenshtein("cat", "cat") == 0
        assert levenshtein("cat", "hat") == 1
        assert levenshtein("cat", "catt") == 1
        assert levenshtein("cat", "") == 3
        assert levenshtein("", "") == 0
        assert levenshtein("kitten", "sitting") == 3

    @given(st.text(alphabet="abcd ", max_size=10),
           st.text(alphabet="abcd ", max_size=10))
    @settings(max_examples=300)
    def test_agrees_with_recursive_definition(self, a, b):
        assert levenshtein(a, b) == reference_distance(a, b)

    def test_metric_properties_random(self):
        rng = random.Random(97)
        alphabet = "abcdef"
        for _ in range(500):
            a, b, c = (
                "".join(rng.choice(alphabet)
                        for _ in range(rng.randint(0, 12)))
                for _ in range(3)
            )
            dab = levenshtein(a, b)
            assert dab == levenshtein(b, a)
            assert (dab == 0) == (a == b)
            assert dab <= levenshtein(a, c) + levenshtein(c, b)


class TestWithinTolerance:
    def test_exact_match(self):
        stored = normalize("correct horse battery staple mule Ohio gravel")
        got = within_tolerance(stored, stored)
        assert got.accepted and got.distance == 0 and got.relative == 0.0

    def test_accepts_at_exact_boundary(self):
        # stored length 40, distance 5: relative is exactly 0.125
        stored = normalize("abcdefghijkl mnopqrstuvwx yzabcdefghijkl")
        assert len(stored.canonical) == 40
        attempt = normalize("abcdeXghijkl mnopqXstuvwx yzabXdefghXjkX")
        got = within_tolerance(stored, attempt)
        assert got.distance == 5
        assert got.relative == 0.125
        assert got.accepted

    def test_rejects_just_past_boundary(self):
        stored = normalize("abcdefghijkl mnopqrstuvwx yzabcdefghijkl")
        attempt = normalize("aXcdeXghijkl mnopqXstuvwx yzabXdefghXjkX")
        got = within_tolerance(stored, attempt)
        assert got.distance == 6
        assert got.relative == 6 / 40
        assert not got.accepted

    def test_relative_uses_stored_length(self):
        # a short attempt against a long stored phrase divides by the
        # stored length, not the attempt's
        stored = normalize("one two three four five six seven eight")
        attempt = normalize("one")
        got = within_tolerance(stored, attempt)
        assert got.relative == got.distance / len(stored.canonical)
        assert not got.accepted

    def test_typo_within_budget(self):
        stored = normalize("My dog chased the neighbour's cat up a tree")
        attempt = normalize("My dog chased the neighbours catt up a tree")
        got = within_tolerance(stored, attempt)
        assert got.accepted and got.distance == 1

    def test_spaces_dropped_rejected_when_budget_blown(self):
        stored = normalize("uoit deploys lenovo thinkpads for all students")
        attempt = normalize("uoitdeployslenovothinkpadsforallstudents")
        got = within_tolerance(stored, attempt)
        assert got.distance == 6
        assert got.relative > 0.125
        assert not got.accepted

    def test_config_validation(self):
        with pytest.raises(ValueError):
            ToleranceConfig(1.0)
        with pytest.raises(ValueError):
            ToleranceConfig(-0.1)
        assert math.isclose(ToleranceConfig().max_relative_distance, 0.125)
