"""Support decomposition and the terrain invariant.

The support of an automorphism splits into maximal open intervals on which
the map is strictly above the diagonal (positive components) or strictly
below it (negative components).  Together with the nontrivial maximal
intervals of fixed points, ordered along the line, these form the *terrain*
of the map: a colored ordered sequence which is a complete conjugacy
invariant.  Isolated fixed points separating two components are boundary
points, not terrain elements.

For the finite terrains handled here, two terrains are isomorphic exactly
when their color sequences agree: the leftmost and rightmost elements are
forced to be unbounded on their outer side, so interval shapes are
determined by position and color alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator

from .automorphism import PLAutomorphism
from .rational import (
    NEG_INF,
    POS_INF,
    ExtendedRational,
    format_extended,
    is_finite,
    parse_extended,
)

ALPHABET = ("+", "-", "0")


class Color(Enum):
    POS = "+"
    NEG = "-"
    FIXED = "0"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Color":
        text = text.strip().replace("−", "-")
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"not a color: {text!r}")


@dataclass(frozen=True)
class TerrainElement:
    """One support component (open) or maximal fixed interval (closed).

    ``lo``/``hi`` are the interval endpoints; closedness is implied by the
    color: POS/NEG elements are open intervals, FIXED elements contain their
    finite endpoints.
    """

    color: Color
    lo: ExtendedRational
    hi: ExtendedRational

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"degenerate element: [{self.lo}, {self.hi}]")

    def contains(self, q: Fraction) -> bool:
        if self.color is Color.FIXED:
            return self.lo <= q <= self.hi
        return self.lo < q < self.hi

    @property
    def bounded(self) -> bool:
        return is_finite(self.lo) and is_finite(self.hi)

    def to_json_dict(self) -> dict:
        return {
            "color": self.color.value,
            "lo": format_extended(self.lo),
            "hi": format_extended(self.hi),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TerrainElement":
        return cls(Color.parse(data["color"]), parse_extended(data["lo"]),
                   parse_extended(data["hi"]))

    def __repr__(self) -> str:
        return f"{self.color.value}({format_extended(self.lo)}, {format_extended(self.hi)})"


@dataclass(frozen=True)
class Terrain:
    """Ordered sequence of terrain elements covering the line."""

    elements: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[TerrainElement]:
        return iter(self.elements)

    def __getitem__(self, k) -> TerrainElement:
        return self.elements[k]

    def color_sequence(self) -> str:
        return "".join(e.color.value for e in self.elements)

    def locate(self, q: Fraction):
        """('element', k) for the element containing q, or ('boundary', k)
        when q is the isolated fixed point between elements k and k+1."""
        for k, e in enumerate(self.elements):
            if e.contains(q):
                return ("element", k)
        for k, e in enumerate(self.elements[:-1]):
            if e.hi == q:
                return ("boundary", k)
        raise ValueError(f"point {q} not located in terrain {self.color_sequence()!r}")

    def is_valid(self) -> bool:
        elems = self.elements
        if not elems:
            return False
        if elems[0].lo != NEG_INF or elems[-1].hi != POS_INF:
            return False
        for a, b in zip(elems, elems[1:]):
            if not a.lo < a.hi:
                return False
            if a.hi != b.lo:
                return False
            if a.color is Color.FIXED and b.color is Color.FIXED:
                return False
        return True

    def to_json_dict(self) -> dict:
        return {"elements": [e.to_json_dict() for e in self.elements]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Terrain":
        return cls(tuple(TerrainElement.from_json_dict(e) for e in data["elements"]))

    def __repr__(self) -> str:
        return f"Terrain({self.color_sequence()!r})"


def _displacement_sign(g: PLAutomorphism, q: Fraction) -> int:
    image = g.forward(q)
    if image > q:
        return 1
    if image < q:
        return -1
    return 0


def support_decompose(g: PLAutomorphism) -> Terrain:
    """Full ordered terrain of a piecewise-linear automorphism.

    The displacement g(t) - t is piecewise affine, so its sign pattern is
    determined exactly: breakpoints are the knots plus the root of the
    displacement inside each affine piece, and the sign is constant between
    consecutive breakpoints.
    """
    if g.is_identity:
        return Terrain((TerrainElement(Color.FIXED, NEG_INF, POS_INF),))

    xs = [x for x, _ in g.knots]
    lines = g.piece_lines()
    breakpoints = set(xs)
    for p, (a, b) in enumerate(lines):
        if a == 1:
            continue  # displacement constant on the piece
        root = b / (1 - a)
        lo = xs[p - 1] if p > 0 else None
        hi = xs[p] if p < len(xs) else None
        if (lo is None or root > lo) and (hi is None or root < hi):
            breakpoints.add(root)
    bps = sorted(breakpoints)

    # alternating items: tail, point, interval, point, ..., tail
    items = []  # (lo, hi, sign) with lo == hi for single points
    items.append((NEG_INF, bps[0], _displacement_sign(g, bps[0] - 1)))
    for k, bp in enumerate(bps):
        items.append((bp, bp, _displacement_sign(g, bp)))
        if k + 1 < len(bps):
            mid = (bp + bps[k + 1]) / 2
            items.append((bp, bps[k + 1], _displacement_sign(g, mid)))
    items.append((bps[-1], POS_INF, _displacement_sign(g, bps[-1] + 1)))

    elements = []
    run_lo, run_hi, run_sign = items[0]
    for lo, hi, sign in items[1:]:
        if sign == run_sign:
            run_hi = hi
            continue
        _emit(elements, run_lo, run_hi, run_sign)
        run_lo, run_hi, run_sign = lo, hi, sign
    _emit(elements, run_lo, run_hi, run_sign)
    return Terrain(tuple(elements))


def _emit(elements, lo, hi, sign):
    if sign == 0:
        if lo == hi:
            return  # isolated fixed point: boundary of two components
        elements.append(TerrainElement(Color.FIXED, lo, hi))
    else:
        elements.append(TerrainElement(Color.POS if sign > 0 else Color.NEG, lo, hi))


def color_sequence(terrain: Terrain) -> str:
    return terrain.color_sequence()


def is_isomorphic(t1: Terrain, t2: Terrain) -> bool:
    """Color- and order-preserving bijection test (finite terrains)."""
    return t1.color_sequence() == t2.color_sequence()


def validate(terrain: Terrain) -> bool:
    return terrain.is_valid()


def _check_sequence(seq: str) -> str:
    seq = seq.strip().replace("−", "-")
    if not seq:
        raise ValueError("empty color sequence")
    for ch in seq:
        if ch not in ALPHABET:
            raise ValueError(f"invalid color {ch!r}; expected one of {ALPHABET}")
    if "00" in seq:
        raise ValueError("'00' is not a terrain: adjacent fixed intervals would merge")
    return seq


def enumerate_color_sequences(n: int) -> list:
    """All length-n color sequences with no '00' substring, sorted."""
    if n < 1:
        raise ValueError("sequence length must be positive")
    out = []
    for chars in itertools.product(ALPHABET, repeat=n):
        seq = "".join(chars)
        if "00" not in seq:
            out.append(seq)
    out.sort()
    return out


def realize(seq: str) -> PLAutomorphism:
    """A piecewise-linear map whose terrain has the given color sequence.

    With m elements, element k (1-based) occupies the k-th slot of the fixed
    partition of the line with boundaries at 1, ..., m-1: slot 1 is
    (-inf, 1), slot m is (m-1, +inf), interior slots are unit intervals.
    POS slots get a simple two-piece arc above the diagonal fixing the slot
    ends (a translation-like tail on unbounded slots), NEG slots the mirror
    image below, FIXED slots the identity.
    """
    seq = _check_sequence(seq)
    m = len(seq)
    if m == 1:
        ch = seq[0]
        if ch == "0":
            return PLAutomorphism.identity()
        if ch == "+":
            return PLAutomorphism.translation(1)
        return PLAutomorphism.translation(-1)

    knots = {}

    def add(x, y):
        knots[Fraction(x)] = Fraction(y)

    for k, ch in enumerate(seq, start=1):
        if ch == "0":
            continue
        up = ch == "+"
        if k == 1:
            b = Fraction(1)
            add(b, b)
            add(b - 2, b - 1 if up else b - 3)
        elif k == m:
            a = Fraction(m - 1)
            add(a, a)
            add(a + 2, a + 3 if up else a + 1)
        else:
            a, b = Fraction(k - 1), Fraction(k)
            add(a, a)
            add(b, b)
            mid = (a + b) / 2
            add(mid, (a + 3 * b) / 4 if up else (3 * a + b) / 4)
    return PLAutomorphism(tuple(sorted(knots.items())), 1, 1)
