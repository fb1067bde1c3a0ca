import pytest

from passguess.corpus import build_store


def make_store(ngrams, proper=(), slang=(), k=10_000, caps=None):
    return build_store(ngrams, proper_nouns=proper, slang_terms=slang,
                       blacklist_k=k, caps=caps)


# Hand-built store exercised by the policy, report, CLI, and service tests.
# Frequencies are all distinct within a table unless a tie is the point.
DEMO_NGRAMS = {
    1: {
        ("the",): 1000, ("i",): 950, ("cat",): 900, ("sat",): 800,
        ("on",): 700, ("a",): 600, ("mat",): 500, ("dog",): 400,
        ("ran",): 300, ("december",): 290, ("fast",): 200, ("my",): 150,
        ("big",): 100, ("red",): 90, ("car",): 80, ("park",): 70,
        ("we",): 60, ("for",): 55, ("went",): 50, ("all",): 45,
        ("to",): 40, ("students",): 35, ("store",): 30, ("deploys",): 25,
        ("bought",): 20, ("lenovo",): 15, ("thinkpads",): 12, ("milk",): 10,
        ("uoit",): 8, ("visited",): 6, ("yesterday",): 5,
    },
    2: {
        ("the", "cat"): 500, ("cat", "sat"): 300, ("sat", "on"): 250,
        ("on", "a"): 200, ("a", "mat"): 100, ("my", "dog"): 80,
        ("dog", "ran"): 60, ("went", "to"): 40,
    },
    3: {
        ("the", "cat", "sat"): 200, ("cat", "sat", "on"): 150,
        ("sat", "on", "a"): 100, ("on", "a", "mat"): 50,
        ("my", "dog", "ran"): 20,
    },
    4: {
        ("the", "cat", "sat", "on"): 80, ("cat", "sat", "on", "a"): 40,
        ("sat", "on", "a", "mat"): 20,
    },
    5: {
        ("the", "cat", "sat", "on", "a"): 30,
        ("cat", "sat", "on", "a", "mat"): 10,
    },
}

ACCEPTED_PHRASE = "UOIT deploys Lenovo ThinkPads for all students"


@pytest.fixture(scope="session")
def demo_store():
    return make_store(DEMO_NGRAMS, proper=["uoit", "lenovo"],
                      slang=["bazinga", "wazzup"])
