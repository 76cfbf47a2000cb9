import random

import pytest

from grassmann.algebra import GrassmannElement
from grassmann.rings import GF, QQ


@pytest.fixture(params=[QQ, GF(7)], ids=["QQ", "GF7"])
def ring(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(20240917)


def letters_multiply(ring, n, word_a, word_b, coeff_a, coeff_b):
    """Brute-force product of two index words by adjacent-swap sorting.

    Independent of the bitmask path: concatenates the letter sequences, then
    bubble-sorts counting transpositions, returning (mask, coeff) or None when
    a letter repeats.
    """
    word = list(word_a) + list(word_b)
    swaps = 0
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            if word[k] > word[k + 1]:
                word[k], word[k + 1] = word[k + 1], word[k]
                swaps += 1
                changed = True
    for k in range(len(word) - 1):
        if word[k] == word[k + 1]:
            return None
    coeff = ring.normalize(coeff_a * coeff_b)
    if swaps % 2:
        coeff = ring.normalize(-coeff)
    mask = 0
    for i in word:
        mask |= 1 << (i - 1)
    return mask, coeff


def brute_force_product(e: GrassmannElement, f: GrassmannElement) -> GrassmannElement:
    """Reference multiplication via letter words; used as the sign oracle."""
    ring, n = e.ring, e.n
    acc = {}
    for m1, c1 in e.terms.items():
        w1 = [i for i in range(1, n + 1) if (m1 >> (i - 1)) & 1]
        for m2, c2 in f.terms.items():
            w2 = [i for i in range(1, n + 1) if (m2 >> (i - 1)) & 1]
            hit = letters_multiply(ring, n, w1, w2, c1, c2)
            if hit is None:
                continue
            mask, coeff = hit
            acc[mask] = ring.normalize(acc.get(mask, ring.zero) + coeff)
    return GrassmannElement(ring, n, acc)
