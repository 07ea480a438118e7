import random

import pytest

from gstalign import corpus as corpus_mod


def random_corpus(rng: random.Random, n_seqs=None, min_len=1, max_len=30,
                  alphabets=(2, 3, 4, 8, 26, 256)):
    """Small random corpus; mixed alphabet sizes keep anchors interesting."""
    if n_seqs is None:
        n_seqs = rng.randint(2, 5)
    sigma = rng.choice(alphabets)
    items = [
        bytes(rng.randrange(sigma) for _ in range(rng.randint(min_len, max_len)))
        for _ in range(n_seqs)
    ]
    return corpus_mod.from_bytes(items)


def unused_byte(corpus) -> int:
    """A gap byte that does not occur anywhere in the corpus."""
    seen = set()
    for s in corpus:
        seen.update(s.data)
    for b in range(255, -1, -1):
        if b not in seen:
            return b
    raise AssertionError("corpus uses all 256 byte values")


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
