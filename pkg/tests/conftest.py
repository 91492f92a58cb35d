import random

import pytest
from fractions import Fraction

from lineaut import Word
from lineaut.samples import random_pl


@pytest.fixture
def rng():
    return random.Random(20240811)


def random_reduced_word(rng: random.Random, max_len: int = 6, n_vars: int = 3) -> Word:
    """Uniform-ish random reduced word; cyclically unreduced words allowed."""
    m = rng.randint(1, max_len)
    letters = []
    for _ in range(m):
        while True:
            cand = (rng.randint(2, 1 + n_vars), rng.choice((1, -1)))
            if letters and letters[-1][0] == cand[0] and letters[-1][1] == -cand[1]:
                continue
            break
        letters.append(cand)
    return Word(tuple(letters))


def fraction_grid(lo: int, hi: int, den: int = 4) -> list:
    return [Fraction(n, den) for n in range(lo * den, hi * den + 1)]


def sample_pls(rng: random.Random, count: int, **kwargs) -> list:
    return [random_pl(rng, **kwargs) for _ in range(count)]
