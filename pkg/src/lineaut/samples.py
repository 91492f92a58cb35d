"""Sample-point and random-input generation.

Verification in this library is pointwise and exact, so sample sets matter:
the default mix combines small-denominator rationals spread over a window,
midpoints of terrain elements, and points just inside element boundaries
(where orbit indices get large and case splits are exercised), topped up
with seeded pseudo-random rationals to the requested count.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .automorphism import PLAutomorphism, compose, inverse
from .rational import is_finite
from .terrain import Terrain, realize

DEFAULT_SAMPLE_COUNT = 257

_SLOPES = (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1),
           Fraction(3, 2), Fraction(2), Fraction(3))


def random_fraction(rng: random.Random, span: int = 8, max_den: int = 4) -> Fraction:
    den = rng.randint(1, max_den)
    num = rng.randint(-span * den, span * den)
    return Fraction(num, den)


def random_pl(rng: random.Random, max_knots: int = 4, span: int = 6,
              max_den: int = 4) -> PLAutomorphism:
    """Random piecewise-linear automorphism with small rational data."""
    count = rng.randint(0, max_knots)
    if count == 0:
        a = rng.choice(_SLOPES)
        b = random_fraction(rng, span, max_den)
        return PLAutomorphism.affine(a, b)
    pool = {random_fraction(rng, span, max_den) for _ in range(3 * count + 4)}
    if len(pool) < 2 * count:
        return PLAutomorphism.affine(rng.choice(_SLOPES), random_fraction(rng, span, max_den))
    points = sorted(pool)
    xs = sorted(rng.sample(points, count))
    ys = sorted(rng.sample(points, count))
    return PLAutomorphism(
        tuple(zip(xs, ys)),
        rng.choice(_SLOPES),
        rng.choice(_SLOPES),
    )


def random_with_sequence(rng: random.Random, seq: str) -> PLAutomorphism:
    """Random map whose terrain has the given color sequence.

    Built by conjugating the canonical realization by a random map, which
    preserves the sequence while varying every coordinate.
    """
    base = realize(seq)
    h = random_pl(rng)
    return compose(compose(inverse(h), base), h)


def default_samples(count: int = DEFAULT_SAMPLE_COUNT, seed: int = 0,
                    terrains: tuple = ()) -> list:
    """Deterministic mixed sample set of exactly ``count`` rationals."""
    picks = set()
    for k in range(-8, 9):
        picks.add(Fraction(k))
    for den in (2, 3, 5, 7):
        for num in range(-4 * den, 4 * den + 1):
            picks.add(Fraction(num, den))
    for terrain in terrains:
        picks.update(_terrain_probes(terrain))
    rng = random.Random(seed)
    while len(picks) < count:
        picks.add(random_fraction(rng, span=12, max_den=64))
    ordered = sorted(picks)
    if len(ordered) > count:
        rng.shuffle(ordered)
        ordered = sorted(ordered[:count])
    return ordered


def _terrain_probes(terrain: Terrain) -> list:
    probes = []
    for element in terrain:
        lo_fin = is_finite(element.lo)
        hi_fin = is_finite(element.hi)
        if lo_fin and hi_fin:
            probes.append((element.lo + element.hi) / 2)
        elif lo_fin:
            probes.append(element.lo + 1)
        elif hi_fin:
            probes.append(element.hi - 1)
        else:
            probes.append(Fraction(0))
        for end, fin, sign in ((element.lo, lo_fin, 1), (element.hi, hi_fin, -1)):
            if not fin:
                continue
            for den in (4, 16, 64):
                probe = end + Fraction(sign, den)
                if element.contains(probe):
                    probes.append(probe)
    return probes
