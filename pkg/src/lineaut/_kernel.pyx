# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``lineaut._kernel_py``; see that module for the table
layout and contracts.  Arithmetic stays on Python ints (values are arbitrary
precision); the speedup comes from removing interpreter dispatch in the
piece search, the evaluation formula, and the orbit loop."""

from math import gcd

MAX_ORBIT_STEPS = 1 << 32


def rat_norm(n, d):
    """Reduce n/d to lowest terms with a positive denominator."""
    if d == 0:
        raise ZeroDivisionError("rational with zero denominator")
    if d < 0:
        n = -n
        d = -d
    g = gcd(n, d)
    if g > 1:
        n //= g
        d //= g
    return n, d


def rat_cmp(an, ad, bn, bd):
    """Sign of a - b for rationals with positive denominators."""
    lhs = an * bd
    rhs = bn * ad
    if lhs < rhs:
        return -1
    if lhs > rhs:
        return 1
    return 0


cdef Py_ssize_t _piece_index(list bxn, list bxd, xn, xd):
    cdef Py_ssize_t lo = 0
    cdef Py_ssize_t hi = len(bxn)
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) // 2
        if bxn[mid] * xd < xn * bxd[mid]:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef tuple _eval(list bxn, list bxd, list an, list ad, list bn, list bd, xn, xd):
    cdef Py_ssize_t p = _piece_index(bxn, bxd, xn, xd)
    num = an[p] * xn * bd[p] + bn[p] * ad[p] * xd
    den = ad[p] * xd * bd[p]
    if den < 0:
        num = -num
        den = -den
    g = gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    return num, den


def pl_eval(table, xn, xd):
    """Evaluate the table at x = xn/xd; returns a normalized pair."""
    bxn, bxd, an, ad, bn, bd = table
    return _eval(bxn, bxd, an, ad, bn, bd, xn, xd)


def pl_eval_many(table, points):
    """Evaluate the table at a list of (n, d) pairs."""
    bxn, bxd, an, ad, bn, bd = table
    cdef list out = []
    for n, d in points:
        out.append(_eval(bxn, bxd, an, ad, bn, bd, n, d))
    return out


def pl_orbit_until(table, xn, xd, gn, gd, stop_above, strict, max_steps=MAX_ORBIT_STEPS):
    """Iterate x -> table(x) until the iterate passes gn/gd on the chosen side.

    Same contract as the pure version: returns (count, prev_n, prev_d,
    cur_n, cur_d) and raises ValueError on a fixed point or step overflow.
    """
    bxn, bxd, an, ad, bn, bd = table
    cdef bint above = bool(stop_above)
    cdef bint strict_ = bool(strict)
    cdef long long limit = max_steps
    cdef long long steps = 0
    cdef int c
    pn, pd = xn, xd
    while steps < limit:
        cn, cd = _eval(bxn, bxd, an, ad, bn, bd, pn, pd)
        steps += 1
        if cn == pn and cd == pd:
            raise ValueError("fixed point reached during orbit iteration")
        c = rat_cmp(cn, cd, gn, gd)
        if above:
            done = c > 0 if strict_ else c >= 0
        else:
            done = c < 0 if strict_ else c <= 0
        if done:
            return steps, pn, pd, cn, cd
        pn, pd = cn, cd
    raise ValueError("orbit iteration exceeded max_steps")
