"""Order-preserving bijections of the line, exactly.

Two representations are provided.  :class:`PLAutomorphism` is the closed,
finitely-described one: finitely many knots with affine interpolation between
them and affine tails.  It is closed under composition, inversion, pointwise
min/max, and integer powers, all computed exactly over rationals.
:class:`ProceduralAutomorphism` wraps a pair of evaluation procedures and is
how constructed solutions (conjugators, word solutions) are returned: their
graphs have infinitely many affine pieces, so no finite knot list exists.

Composition is written left to right everywhere in this library:
``compose(f, g)`` applies ``f`` first, so ``compose(f, g)(q) == g(f(q))``.
The ``*`` operator follows the same convention: ``(f * g)(q) == g(f(q))``.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Union

from ._backend import kernel
from .rational import format_rational, parse_rational


class DomainError(ValueError):
    """A partial map was evaluated outside its domain."""


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return parse_rational(value)


def _canonicalize(knots, left_slope, right_slope):
    """Normal form: boundaries of maximal affine pieces.

    Knots collinear with their surroundings are dropped.  A globally affine
    map is anchored at x = 0 (so a translation t -> t + c keeps the single
    knot (0, c)); the identity has no knots at all.
    """
    if not knots:
        if left_slope != 1 or right_slope != 1:
            raise ValueError("a map without knots must be the identity; got tail slopes "
                             f"{left_slope}, {right_slope}")
        return (), Fraction(1), Fraction(1)
    lines = []  # (slope, intercept) per piece, len(knots) + 1 entries
    x0, y0 = knots[0]
    lines.append((left_slope, y0 - left_slope * x0))
    for (xa, ya), (xb, yb) in zip(knots, knots[1:]):
        a = (yb - ya) / (xb - xa)
        lines.append((a, ya - a * xa))
    xm, ym = knots[-1]
    lines.append((right_slope, ym - right_slope * xm))
    kept = tuple(knots[i] for i in range(len(knots)) if lines[i] != lines[i + 1])
    if not kept:
        a, b = lines[0]
        if a == 1 and b == 0:
            return (), Fraction(1), Fraction(1)
        return ((Fraction(0), b),), a, a
    return kept, left_slope, right_slope


@dataclass(frozen=True)
class PLAutomorphism:
    """Piecewise-affine increasing bijection of the line.

    ``knots`` are (x, y) pairs with strictly increasing x and strictly
    increasing y; between consecutive knots the map interpolates affinely,
    and beyond the first/last knot it continues with ``left_slope`` /
    ``right_slope``.  Both slopes must be positive, which together with knot
    monotonicity makes the map a continuous increasing bijection by
    construction.  An empty knot tuple denotes the identity.

    Instances are immutable and canonical: redundant (collinear) knots are
    removed on construction, so ``==`` compares the induced maps.
    """

    knots: tuple = ()
    left_slope: Fraction = Fraction(1)
    right_slope: Fraction = Fraction(1)

    def __post_init__(self):
        knots = tuple((_frac(x), _frac(y)) for x, y in self.knots)
        ls = _frac(self.left_slope)
        rs = _frac(self.right_slope)
        if ls <= 0 or rs <= 0:
            raise ValueError(f"tail slopes must be positive; got {ls}, {rs}")
        for (xa, ya), (xb, yb) in zip(knots, knots[1:]):
            if xa >= xb:
                raise ValueError(f"knot x-coordinates must be strictly increasing: {xa} >= {xb}")
            if ya >= yb:
                raise ValueError(f"knot y-coordinates must be strictly increasing: {ya} >= {yb}")
        knots, ls, rs = _canonicalize(knots, ls, rs)
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "left_slope", ls)
        object.__setattr__(self, "right_slope", rs)

    @classmethod
    def identity(cls) -> "PLAutomorphism":
        return cls()

    @classmethod
    def translation(cls, c) -> "PLAutomorphism":
        return cls.affine(1, c)

    @classmethod
    def affine(cls, a, b) -> "PLAutomorphism":
        """The global affine map t -> a*t + b (a > 0)."""
        a = _frac(a)
        b = _frac(b)
        if a == 1 and b == 0:
            return cls()
        return cls(((Fraction(0), b),), a, a)

    @property
    def is_identity(self) -> bool:
        return not self.knots

    def piece_lines(self):
        """(slope, intercept) per affine piece, tails included."""
        if not self.knots:
            return [(Fraction(1), Fraction(0))]
        lines = []
        x0, y0 = self.knots[0]
        lines.append((self.left_slope, y0 - self.left_slope * x0))
        for (xa, ya), (xb, yb) in zip(self.knots, self.knots[1:]):
            a = (yb - ya) / (xb - xa)
            lines.append((a, ya - a * xa))
        xm, ym = self.knots[-1]
        lines.append((self.right_slope, ym - self.right_slope * xm))
        return lines

    @cached_property
    def _table(self):
        bxn = [x.numerator for x, _ in self.knots]
        bxd = [x.denominator for x, _ in self.knots]
        an, ad, bn, bd = [], [], [], []
        for a, b in self.piece_lines():
            an.append(a.numerator)
            ad.append(a.denominator)
            bn.append(b.numerator)
            bd.append(b.denominator)
        return (bxn, bxd, an, ad, bn, bd)

    @cached_property
    def _inverse(self) -> "PLAutomorphism":
        return PLAutomorphism(
            tuple((y, x) for x, y in self.knots),
            1 / self.left_slope,
            1 / self.right_slope,
        )

    def forward(self, q: Fraction) -> Fraction:
        q = _frac(q)
        n, d = kernel.pl_eval(self._table, q.numerator, q.denominator)
        return Fraction(n, d)

    def backward(self, q: Fraction) -> Fraction:
        return self._inverse.forward(q)

    __call__ = forward

    def __mul__(self, other):
        return compose(self, other)

    def __invert__(self):
        return inverse(self)

    def __pow__(self, n: int):
        return power(self, n)

    def to_json_dict(self) -> dict:
        return {
            "knots": [{"x": format_rational(x), "y": format_rational(y)} for x, y in self.knots],
            "left_slope": format_rational(self.left_slope),
            "right_slope": format_rational(self.right_slope),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PLAutomorphism":
        try:
            knots = tuple(
                (parse_rational(k["x"]), parse_rational(k["y"])) for k in data["knots"]
            )
            ls = parse_rational(data["left_slope"])
            rs = parse_rational(data["right_slope"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed piecewise-linear JSON: {exc}") from exc
        return cls(knots, ls, rs)

    def __repr__(self) -> str:
        ks = ", ".join(f"({format_rational(x)}, {format_rational(y)})" for x, y in self.knots)
        return (f"PLAutomorphism([{ks}], left_slope={format_rational(self.left_slope)}, "
                f"right_slope={format_rational(self.right_slope)})")


@dataclass(frozen=True)
class ProceduralAutomorphism:
    """Increasing bijection given by exact evaluation procedures.

    ``forward_fn`` and ``backward_fn`` must be exact mutual inverses on every
    rational, and each call must terminate after finitely many evaluations of
    whatever underlying maps the procedure consults.  ``description`` records
    which construction produced the value.
    """

    forward_fn: Callable[[Fraction], Fraction]
    backward_fn: Callable[[Fraction], Fraction]
    description: str = "procedural"

    def forward(self, q: Fraction) -> Fraction:
        return self.forward_fn(_frac(q))

    def backward(self, q: Fraction) -> Fraction:
        return self.backward_fn(_frac(q))

    __call__ = forward

    def __mul__(self, other):
        return compose(self, other)

    def __invert__(self):
        return inverse(self)

    def __pow__(self, n: int):
        return power(self, n)

    def __repr__(self) -> str:
        return f"ProceduralAutomorphism({self.description})"


Automorphism = Union[PLAutomorphism, ProceduralAutomorphism]


def evaluate(f, x) -> Fraction:
    """Image of x under f (same as ``f.forward(x)``)."""
    return f.forward(_frac(x))


def inverse(f):
    """Group inverse; PL stays PL with knots reflected across the diagonal."""
    if isinstance(f, PLAutomorphism):
        return f._inverse
    if isinstance(f, ProceduralAutomorphism):
        return ProceduralAutomorphism(f.backward_fn, f.forward_fn, f"inverse({f.description})")
    return ProceduralAutomorphism(f.backward, f.forward, "inverse")


def compose(f, g):
    """Apply f, then g.  PL inputs give an exact PL result."""
    if isinstance(f, PLAutomorphism) and isinstance(g, PLAutomorphism):
        if f.is_identity:
            return g
        if g.is_identity:
            return f
        xs = {x for x, _ in f.knots}
        xs.update(f.backward(x) for x, _ in g.knots)
        knots = tuple(sorted((x, g.forward(f.forward(x))) for x in xs))
        return PLAutomorphism(knots, f.left_slope * g.left_slope,
                              f.right_slope * g.right_slope)

    def fwd(q, f=f, g=g):
        return g.forward(f.forward(q))

    def bwd(q, f=f, g=g):
        return f.backward(g.backward(q))

    return ProceduralAutomorphism(fwd, bwd, "composite")


def power(f, n: int):
    """n-fold composition; n = 0 gives the identity, negative n inverts."""
    if n == 0:
        return PLAutomorphism()
    if isinstance(f, PLAutomorphism):
        base = f if n > 0 else f._inverse
        e = abs(n)
        result = None
        sq = base
        while True:
            if e & 1:
                result = sq if result is None else compose(result, sq)
            e >>= 1
            if not e:
                return result
            sq = compose(sq, sq)

    def fwd(q, f=f, n=n):
        step = f.forward if n > 0 else f.backward
        for _ in range(abs(n)):
            q = step(q)
        return q

    def bwd(q, f=f, n=n):
        step = f.backward if n > 0 else f.forward
        for _ in range(abs(n)):
            q = step(q)
        return q

    return ProceduralAutomorphism(fwd, bwd, f"power({n})")


def apply_power(f, n: int, q: Fraction) -> Fraction:
    """Evaluate f^n at q by |n| single applications (black-box friendly)."""
    step = f.forward if n > 0 else f.backward
    for _ in range(abs(n)):
        q = step(q)
    return q


def _select_pointwise(f: PLAutomorphism, g: PLAutomorphism, want_min: bool) -> PLAutomorphism:
    if f == g:
        return f
    boundaries = {x for x, _ in f.knots} | {x for x, _ in g.knots}
    f_xs = [x for x, _ in f.knots]
    g_xs = [x for x, _ in g.knots]
    f_lines = f.piece_lines()
    g_lines = g.piece_lines()

    def line_at(xs, lines, x, side):
        # piece index at x biased to the requested side
        if side < 0:
            return lines[bisect.bisect_left(xs, x)]
        return lines[bisect.bisect_right(xs, x)]

    ordered = sorted(boundaries)  # nonempty: equal knotless maps returned above
    # crossings inside every maximal region where both maps are affine
    regions = [(None, ordered[0])]
    regions.extend(zip(ordered, ordered[1:]))
    regions.append((ordered[-1], None))
    crossings = set()
    for lo, hi in regions:
        probe = lo if lo is not None else hi
        side = 1 if lo is not None else -1
        fa, fb = line_at(f_xs, f_lines, probe, side)
        ga, gb = line_at(g_xs, g_lines, probe, side)
        if fa == ga:
            continue
        x_star = (gb - fb) / (fa - ga)
        if (lo is None or x_star > lo) and (hi is None or x_star < hi):
            crossings.add(x_star)
    boundaries |= crossings
    ordered = sorted(boundaries)
    pick = min if want_min else max
    knots = tuple((x, pick(f.forward(x), g.forward(x))) for x in ordered)
    # tail slopes come from whichever branch wins beyond the last crossing
    left_probe = ordered[0] - 1
    right_probe = ordered[-1] + 1
    fl, gl = f.forward(left_probe), g.forward(left_probe)
    fr, gr = f.forward(right_probe), g.forward(right_probe)
    ls = f.left_slope if pick(fl, gl) == fl else g.left_slope
    rs = f.right_slope if pick(fr, gr) == fr else g.right_slope
    return PLAutomorphism(knots, ls, rs)


def meet(f: PLAutomorphism, g: PLAutomorphism) -> PLAutomorphism:
    """Pointwise min, with crossing points of affine pieces as new knots."""
    return _select_pointwise(f, g, want_min=True)


def join(f: PLAutomorphism, g: PLAutomorphism) -> PLAutomorphism:
    """Pointwise max, with crossing points of affine pieces as new knots."""
    return _select_pointwise(f, g, want_min=False)


def equals_pl(f: PLAutomorphism, g: PLAutomorphism) -> bool:
    """Exact map equality (canonical forms are compared structurally)."""
    return f == g


def reflect(f: PLAutomorphism) -> PLAutomorphism:
    """Conjugate by t -> -t: returns the map t -> -f(-t)."""
    knots = tuple((-x, -y) for x, y in reversed(f.knots))
    return PLAutomorphism(knots, f.right_slope, f.left_slope)
