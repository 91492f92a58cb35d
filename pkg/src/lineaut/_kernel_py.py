"""Integer-pair rational kernels for piecewise-linear evaluation.

Pure-Python twin of the compiled extension ``lineaut._kernel``.  Both modules
expose the same functions with identical semantics and bit-identical results;
``lineaut._backend`` picks the compiled one when it is importable.

A piecewise-linear *table* is a 6-tuple of lists of Python ints::

    (bxn, bxd, an, ad, bn, bd)

``bxn/bxd`` are the k breakpoint x-coordinates as normalized pairs (positive
denominators).  ``an/ad/bn/bd`` describe k+1 affine pieces ``y = a*x + b``;
piece p covers ``[bx[p-1], bx[p]]`` with unbounded tails at both ends.
Adjacent pieces agree at the shared breakpoint, so boundary membership does
not affect results.
"""

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


def _piece_index(bxn, bxd, xn, xd):
    # number of breakpoints strictly below x
    lo = 0
    hi = len(bxn)
    while lo < hi:
        mid = (lo + hi) // 2
        if bxn[mid] * xd < xn * bxd[mid]:
            lo = mid + 1
        else:
            hi = mid
    return lo


def pl_eval(table, xn, xd):
    """Evaluate the table at x = xn/xd; returns a normalized pair."""
    bxn, bxd, an, ad, bn, bd = table
    p = _piece_index(bxn, bxd, xn, xd)
    num = an[p] * xn * bd[p] + bn[p] * ad[p] * xd
    den = ad[p] * xd * bd[p]
    return rat_norm(num, den)


def pl_eval_many(table, points):
    """Evaluate the table at a list of (n, d) pairs."""
    return [pl_eval(table, n, d) for n, d in points]


def pl_orbit_until(table, xn, xd, gn, gd, stop_above, strict, max_steps=MAX_ORBIT_STEPS):
    """Iterate x -> table(x) until the iterate passes gn/gd on the chosen side.

    Returns (count, prev_n, prev_d, cur_n, cur_d): cur is the first iterate
    satisfying the stop predicate (cur > g, >=, <, or <= according to
    stop_above/strict), prev the one before it, count the number of
    evaluations performed.  Raises ValueError on an exact fixed point, which
    means the target is not in the orbit's component.
    """
    pn, pd = xn, xd
    steps = 0
    while steps < max_steps:
        cn, cd = pl_eval(table, pn, pd)
        steps += 1
        if cn == pn and cd == pd:
            raise ValueError("fixed point reached during orbit iteration")
        c = rat_cmp(cn, cd, gn, gd)
        if stop_above:
            done = c > 0 if strict else c >= 0
        else:
            done = c < 0 if strict else c <= 0
        if done:
            return steps, pn, pd, cn, cd
        pn, pd = cn, cd
    raise ValueError("orbit iteration exceeded max_steps")
