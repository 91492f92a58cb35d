"""The compiled kernel and the pure fallback must agree bit for bit."""

import os
import random

import pytest

from lineaut import _kernel_py
from lineaut._backend import KERNEL_BACKEND
from lineaut.automorphism import PLAutomorphism
from lineaut.samples import random_pl

compiled = pytest.importorskip("lineaut._kernel")


def test_backend_selection_honors_environment():
    expected = "pure" if os.environ.get("LINEAUT_PURE_KERNEL") else "compiled"
    assert KERNEL_BACKEND == expected


def test_rat_norm_and_cmp_agree():
    rng = random.Random(3)
    for _ in range(500):
        n = rng.randint(-10**6, 10**6)
        d = rng.randint(-10**6, 10**6) or 1
        assert compiled.rat_norm(n, d) == _kernel_py.rat_norm(n, d)
    for _ in range(500):
        an, ad = rng.randint(-99, 99), rng.randint(1, 99)
        bn, bd = rng.randint(-99, 99), rng.randint(1, 99)
        assert compiled.rat_cmp(an, ad, bn, bd) == _kernel_py.rat_cmp(an, ad, bn, bd)


def test_rat_norm_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        compiled.rat_norm(1, 0)
    with pytest.raises(ZeroDivisionError):
        _kernel_py.rat_norm(1, 0)


def test_pl_eval_agrees_on_random_tables():
    rng = random.Random(5)
    points = [(rng.randint(-500, 500), rng.randint(1, 48)) for _ in range(300)]
    for _ in range(40):
        table = random_pl(rng, max_knots=5)._table
        assert compiled.pl_eval_many(table, points) == _kernel_py.pl_eval_many(table, points)
        for n, d in points[:20]:
            assert compiled.pl_eval(table, n, d) == _kernel_py.pl_eval(table, n, d)


def test_orbit_until_agrees():
    table = PLAutomorphism.translation(1)._table
    for gamma in (5, 127, 4096):
        a = compiled.pl_orbit_until(table, 0, 1, gamma, 1, True, True)
        b = _kernel_py.pl_orbit_until(table, 0, 1, gamma, 1, True, True)
        assert a == b
    # descending iteration with the inverse map
    inv = PLAutomorphism.translation(-1)._table
    a = compiled.pl_orbit_until(inv, 0, 1, -17, 2, False, False)
    b = _kernel_py.pl_orbit_until(inv, 0, 1, -17, 2, False, False)
    assert a == b


def test_orbit_until_detects_fixed_point():
    ident = PLAutomorphism()._table
    for kernel in (compiled, _kernel_py):
        with pytest.raises(ValueError):
            kernel.pl_orbit_until(ident, 0, 1, 10, 1, True, True)
