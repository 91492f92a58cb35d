"""Conjugacy testing and effective conjugator construction.

Two conjugate maps have order-isomorphic terrains, and conversely a terrain
isomorphism can be upgraded to an explicit conjugator: each pair of matched
support components is bridged block by block along the anchor orbit, each
pair of matched fixed intervals by a direct affine or translation map.  The
result is an effective procedure, not a finite knot list: its graph has
infinitely many affine pieces accumulating at component boundaries.

Direction convention (important): ``conjugate_on_component(g, f, I, J, ...)``
takes ``I`` from the support of ``g`` and ``J`` from the support of ``f`` and
returns x with ``f = x^-1 g x`` on ``J``; equivalently x transports the
g-orbit structure of I onto the f-orbit structure of J.  The same convention
is used by :func:`solve_conjugacy`, whose result h satisfies ``f = h^-1 g h``
exactly at every rational.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ._backend import kernel
from .automorphism import (
    DomainError,
    PLAutomorphism,
    ProceduralAutomorphism,
    apply_power,
    compose,
    inverse,
)
from .oracle import CallCounter, FastForwardCache, InstrumentedOracle
from .rational import is_finite
from .terrain import Color, TerrainElement, support_decompose

LINEAR = "linear"
FAST_FORWARD = "fast_forward"
_MODES = (LINEAR, FAST_FORWARD)


@dataclass(frozen=True)
class AffineBridge:
    """Affine increasing bijection [source_lo, source_hi) -> [target_lo, target_hi)."""

    source_lo: Fraction
    source_hi: Fraction
    target_lo: Fraction
    target_hi: Fraction

    def __post_init__(self):
        if self.source_lo >= self.source_hi or self.target_lo >= self.target_hi:
            raise ValueError("degenerate bridge interval")

    @property
    def slope(self) -> Fraction:
        return (self.target_hi - self.target_lo) / (self.source_hi - self.source_lo)

    def forward(self, q: Fraction) -> Fraction:
        return self.target_lo + self.slope * (q - self.source_lo)

    def backward(self, q: Fraction) -> Fraction:
        return self.source_lo + (q - self.target_lo) / self.slope

    __call__ = forward


def affine_bridge(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> AffineBridge:
    """The affine order bijection [a, b) -> [c, d)."""
    return AffineBridge(a, b, c, d)


@dataclass(frozen=True)
class OrbitLocation:
    """Block of the anchor orbit containing a query point.

    ``lower <= query < upper`` always holds.  For an increasing orbit the
    block is [anchor*g^i, anchor*g^(i+1)); for a decreasing one it is the
    mirrored [anchor*g^(i+1), anchor*g^i).
    """

    index: int
    lower: Fraction
    upper: Fraction


def _first_image(g, alpha: Fraction, counter: Optional[CallCounter]) -> Fraction:
    if counter is not None:
        counter.forward += 1
    first = g.forward(alpha)
    if first == alpha:
        raise ValueError(f"anchor {alpha} is a fixed point; it lies in no component")
    return first


def _iterate_until(g, start, gamma, *, use_forward, stop_above, strict, counter):
    """First iterate past gamma, with the step count; mirrors the kernel loop."""
    if isinstance(g, PLAutomorphism):
        table = g._table if use_forward else g._inverse._table
        steps, pn, pd, cn, cd = kernel.pl_orbit_until(
            table, start.numerator, start.denominator,
            gamma.numerator, gamma.denominator, stop_above, strict)
        if counter is not None:
            if use_forward:
                counter.forward += steps
            else:
                counter.inverse += steps
        return steps, Fraction(pn, pd), Fraction(cn, cd)
    step = g.forward if use_forward else g.backward
    prev = start
    steps = 0
    while True:
        cur = step(prev)
        steps += 1
        if counter is not None:
            if use_forward:
                counter.forward += 1
            else:
                counter.inverse += 1
        if cur == prev:
            raise ValueError("fixed point reached during orbit iteration")
        if stop_above:
            done = cur > gamma if strict else cur >= gamma
        else:
            done = cur < gamma if strict else cur <= gamma
        if done:
            return steps, prev, cur
        prev = cur


def _locate_linear(g, alpha, gamma, first, increasing, counter) -> OrbitLocation:
    if increasing:
        if gamma >= alpha:
            if gamma < first:
                return OrbitLocation(0, alpha, first)
            k, prev, cur = _iterate_until(g, first, gamma, use_forward=True,
                                          stop_above=True, strict=True, counter=counter)
            return OrbitLocation(k, prev, cur)
        j, prev, cur = _iterate_until(g, alpha, gamma, use_forward=False,
                                      stop_above=False, strict=False, counter=counter)
        return OrbitLocation(-j, cur, prev)
    if gamma < alpha:
        if first <= gamma:
            return OrbitLocation(0, first, alpha)
        k, prev, cur = _iterate_until(g, first, gamma, use_forward=True,
                                      stop_above=False, strict=False, counter=counter)
        return OrbitLocation(k, cur, prev)
    j, prev, cur = _iterate_until(g, alpha, gamma, use_forward=False,
                                  stop_above=True, strict=True, counter=counter)
    return OrbitLocation(-j, prev, cur)


def _ff_search(apply_step, alpha, gamma, pred, counter):
    """Minimal e >= 1 with pred(point(e)); returns (e, point(e-1), point(e)).

    Doubling finds the power-of-two bracket, then a nested binary descent
    adds halving power-of-two steps; every cache application is one
    fast-forward step.
    """
    pt = apply_step(alpha, 0, counter)
    if pred(pt):
        return 1, alpha, pt
    n = 0
    pt_e = pt  # point(2^n), pred still false
    while True:
        nxt = apply_step(pt_e, n, counter)
        if pred(nxt):
            break
        n += 1
        pt_e = nxt
    j = 1 << n
    pt = pt_e
    hit = None
    for k in range(n - 1, -1, -1):
        cand = apply_step(pt, k, counter)
        if pred(cand):
            if k == 0:
                hit = cand
        else:
            pt = cand
            j += 1 << k
            if k == 0:
                hit = None
    if hit is None:
        hit = apply_step(pt, 0, counter)
    return j + 1, pt, hit


def _locate_fast_forward(cache, alpha, gamma, increasing, counter) -> OrbitLocation:
    if increasing:
        if gamma >= alpha:
            e, prev, cur = _ff_search(cache.apply, alpha, gamma,
                                      lambda p: p > gamma, counter)
            return OrbitLocation(e - 1, prev, cur)
        e, prev, cur = _ff_search(cache.apply_inverse, alpha, gamma,
                                  lambda p: p <= gamma, counter)
        return OrbitLocation(-e, cur, prev)
    if gamma < alpha:
        e, prev, cur = _ff_search(cache.apply, alpha, gamma,
                                  lambda p: p <= gamma, counter)
        return OrbitLocation(e - 1, cur, prev)
    e, prev, cur = _ff_search(cache.apply_inverse, alpha, gamma,
                              lambda p: p > gamma, counter)
    return OrbitLocation(-e, prev, cur)


def _cache_for(g, cache: Optional[FastForwardCache]) -> FastForwardCache:
    if cache is not None:
        return cache
    if isinstance(g, PLAutomorphism):
        return FastForwardCache(g)
    if isinstance(g, InstrumentedOracle) and isinstance(g.inner, PLAutomorphism):
        return FastForwardCache(g.inner)
    raise TypeError("fast-forward mode needs a piecewise-linear map or an explicit cache")


def orbit_locate(g, alpha: Fraction, gamma: Fraction, mode: str = LINEAR, *,
                 cache: Optional[FastForwardCache] = None,
                 counter: Optional[CallCounter] = None) -> OrbitLocation:
    """Block of the anchor orbit of g containing gamma.

    Both gamma and alpha must lie in the same support component of g (the
    caller guarantees this; reaching a fixed point raises ValueError).
    Linear mode walks the orbit step by step, |index| + O(1) evaluations.
    Fast-forward mode uses doubling plus nested binary descent over cached
    powers of two, O(log |index|) fast-forward steps.
    """
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {_MODES}")
    if mode == FAST_FORWARD:
        ff_cache = _cache_for(g, cache)
        probe = ff_cache.apply(alpha, 0, counter)
        if probe == alpha:
            raise ValueError(f"anchor {alpha} is a fixed point; it lies in no component")
        return _locate_fast_forward(ff_cache, alpha, gamma, probe > alpha, counter)
    first = _first_image(g, alpha, counter)
    return _locate_linear(g, alpha, gamma, first, first > alpha, counter)


class ComponentOrbit:
    """Lazily cached two-sided anchor orbit inside one support component.

    ``point(i)`` is anchor*g^i; ``locate(q)`` returns the block index of q.
    Points are cached and extended on demand under a lock, so repeated
    lookups cost amortized O(log) comparisons.
    """

    def __init__(self, g, anchor: Fraction):
        self.g = g
        self.anchor = anchor
        self._fwd = [anchor]  # indices 0, 1, 2, ...
        self._bwd = []  # indices -1, -2, ...
        self._lock = threading.RLock()
        first = g.forward(anchor)
        if first == anchor:
            raise ValueError(f"anchor {anchor} is a fixed point; it lies in no component")
        self.increasing = first > anchor
        self._fwd.append(first)

    def point(self, i: int) -> Fraction:
        with self._lock:
            if i >= 0:
                while len(self._fwd) <= i:
                    nxt = self.g.forward(self._fwd[-1])
                    if nxt == self._fwd[-1]:
                        raise ValueError("orbit hit a fixed point")
                    self._fwd.append(nxt)
                return self._fwd[i]
            while len(self._bwd) < -i:
                prev = self._bwd[-1] if self._bwd else self.anchor
                nxt = self.g.backward(prev)
                if nxt == prev:
                    raise ValueError("orbit hit a fixed point")
                self._bwd.append(nxt)
            return self._bwd[-i - 1]

    def locate(self, q: Fraction) -> int:
        """Index i with point(i) <= q < point(i+1) (mirrored when decreasing)."""
        with self._lock:
            if self.increasing:
                if q >= self.anchor:
                    i = 0
                    while self.point(i + 1) <= q:
                        i += 1
                    return i
                i = -1
                while self.point(i) > q:
                    i -= 1
                return i
            if q < self.anchor:
                i = 0
                while self.point(i + 1) > q:
                    i += 1
                return i
            i = -1
            while self.point(i) <= q:
                i -= 1
            return i


@dataclass(frozen=True)
class ComponentPairing:
    """A matched pair of terrain elements with their chosen anchors."""

    source: TerrainElement
    target: TerrainElement
    source_anchor: Optional[Fraction] = None
    target_anchor: Optional[Fraction] = None

    def __post_init__(self):
        if self.source.color is not self.target.color:
            raise ValueError("paired elements must share a color")
        for elem, anchor in ((self.source, self.source_anchor),
                             (self.target, self.target_anchor)):
            if anchor is not None and not elem.contains(anchor):
                raise ValueError(f"anchor {anchor} outside element {elem!r}")


def anchor_point(element: TerrainElement) -> Fraction:
    """Deterministic anchor: midpoint of bounded elements, finite endpoint
    plus/minus 1 for half-unbounded ones, 0 for the whole line."""
    lo_fin = is_finite(element.lo)
    hi_fin = is_finite(element.hi)
    if lo_fin and hi_fin:
        return (element.lo + element.hi) / 2
    if hi_fin:
        return element.hi - 1
    if lo_fin:
        return element.lo + 1
    return Fraction(0)


def conjugate_on_component(g, f, source: TerrainElement, target: TerrainElement,
                           alpha: Fraction, beta: Fraction, mode: str = LINEAR,
                           g_cache: Optional[FastForwardCache] = None,
                           f_cache: Optional[FastForwardCache] = None) -> ProceduralAutomorphism:
    """Partial conjugator between support components of the same sign.

    ``source`` is a component of the support of g with anchor ``alpha``,
    ``target`` a component of the support of f with anchor ``beta``; the
    returned x maps source onto target and satisfies f = x^-1 g x on the
    target.  Evaluating x at a point locates its orbit block, pulls it back
    to the anchor block with single applications of g^-1, crosses the affine
    bridge, and pushes forward with f, so an orbit index i costs |i|
    inverse evaluations of g plus |i| forward evaluations of f.
    """
    if source.color is target.color is Color.FIXED:
        raise ValueError("components must be POS or NEG; use conjugate_on_fixed")
    if source.color is not target.color:
        raise ValueError("paired components must share a color")
    if not source.contains(alpha):
        raise DomainError(f"anchor {alpha} outside source component")
    if not target.contains(beta):
        raise DomainError(f"anchor {beta} outside target component")

    alpha_g = g.forward(alpha)
    beta_f = f.forward(beta)
    if source.color is Color.POS:
        bridge = AffineBridge(alpha, alpha_g, beta, beta_f)
    else:
        bridge = AffineBridge(alpha_g, alpha, beta_f, beta)

    if mode == FAST_FORWARD:
        g_cache = _cache_for(g, g_cache)
        f_cache = _cache_for(f, f_cache)

    def fwd(q):
        if not source.contains(q):
            raise DomainError(f"{q} outside source component {source!r}")
        loc = orbit_locate(g, alpha, q, mode, cache=g_cache)
        v = apply_power(g, -loc.index, q)
        v = bridge.forward(v)
        return apply_power(f, loc.index, v)

    def bwd(q):
        if not target.contains(q):
            raise DomainError(f"{q} outside target component {target!r}")
        loc = orbit_locate(f, beta, q, mode, cache=f_cache)
        v = apply_power(f, -loc.index, q)
        v = bridge.backward(v)
        return apply_power(g, loc.index, v)

    return ProceduralAutomorphism(fwd, bwd, f"component-conjugator({source.color.value})")


def conjugate_on_fixed(source: TerrainElement, target: TerrainElement) -> ProceduralAutomorphism:
    """Order bijection between two fixed intervals of the same positional kind.

    Bounded pairs get the affine bridge over the closed intervals, intervals
    unbounded on one side a translation aligning the finite endpoint, and the
    full line the identity.
    """
    if source.color is not Color.FIXED or target.color is not Color.FIXED:
        raise ValueError("conjugate_on_fixed expects FIXED elements")
    kind = (is_finite(source.lo), is_finite(source.hi))
    if kind != (is_finite(target.lo), is_finite(target.hi)):
        raise ValueError(f"mismatched fixed-interval kinds: {source!r} vs {target!r}")

    lo_fin, hi_fin = kind
    if lo_fin and hi_fin:
        scale = (target.hi - target.lo) / (source.hi - source.lo)

        def fwd_map(q):
            return target.lo + scale * (q - source.lo)

        def bwd_map(q):
            return source.lo + (q - target.lo) / scale
    elif not lo_fin and not hi_fin:
        fwd_map = bwd_map = lambda q: q
    else:
        shift = (target.hi - source.hi) if hi_fin else (target.lo - source.lo)

        def fwd_map(q):
            return q + shift

        def bwd_map(q):
            return q - shift

    def fwd(q):
        if not source.contains(q):
            raise DomainError(f"{q} outside fixed interval {source!r}")
        return fwd_map(q)

    def bwd(q):
        if not target.contains(q):
            raise DomainError(f"{q} outside fixed interval {target!r}")
        return bwd_map(q)

    return ProceduralAutomorphism(fwd, bwd, "fixed-interval-conjugator")


def solve_conjugacy(g: PLAutomorphism, f: PLAutomorphism,
                    mode: str = LINEAR) -> Optional[ProceduralAutomorphism]:
    """Conjugator h with f = h^-1 g h, or None when none exists.

    Existence is decided by color-sequence equality of the two terrains.
    When the sequences agree, the k-th element of the terrain of g is paired
    with the k-th element of the terrain of f (for finite terrains the
    positional pairing is the unique order-preserving one), components by the
    orbit-block procedure with deterministic anchors, fixed intervals by the
    direct interval maps; the result dispatches each query to the element
    containing it.  Isolated fixed points between two components map to the
    corresponding boundary point on the other side.
    """
    terrain_g = support_decompose(g)
    terrain_f = support_decompose(f)
    if terrain_g.color_sequence() != terrain_f.color_sequence():
        return None

    g_cache = FastForwardCache(g) if mode == FAST_FORWARD else None
    f_cache = FastForwardCache(f) if mode == FAST_FORWARD else None
    pieces = []
    pairings = []
    for eg, ef in zip(terrain_g, terrain_f):
        if eg.color is Color.FIXED:
            pairings.append(ComponentPairing(eg, ef))
            pieces.append(conjugate_on_fixed(eg, ef))
        else:
            alpha = anchor_point(eg)
            beta = anchor_point(ef)
            pairings.append(ComponentPairing(eg, ef, alpha, beta))
            pieces.append(conjugate_on_component(g, f, eg, ef, alpha, beta, mode,
                                                 g_cache, f_cache))

    def fwd(q):
        kind, k = terrain_g.locate(q)
        if kind == "element":
            return pieces[k].forward(q)
        return terrain_f[k].hi  # isolated fixed point maps to its counterpart

    def bwd(q):
        kind, k = terrain_f.locate(q)
        if kind == "element":
            return pieces[k].backward(q)
        return terrain_g[k].hi

    return ProceduralAutomorphism(fwd, bwd, f"conjugator({terrain_g.color_sequence()})")


def verify_pointwise(lhs, rhs, samples) -> bool:
    """Exact pointwise equality of two automorphisms on a finite sample set."""
    return all(lhs.forward(q) == rhs.forward(q) for q in samples)


def conjugation(g, h):
    """h^-1 g h as a composite (left-to-right evaluation)."""
    return compose(compose(inverse(h), g), h)
