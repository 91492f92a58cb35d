from fractions import Fraction

import pytest

from lineaut import (
    Color,
    ComponentOrbit,
    PLAutomorphism,
    Subdivision,
    Word,
    anchor_point,
    apply_word,
    commutator_decomposition,
    compose,
    inverse,
    nth_root,
    realize,
    solve_two_sided,
    solve_word,
    solve_xgx,
    support_decompose,
    validate_word,
    verify_pointwise,
    word_automorphism,
)
from lineaut.samples import default_samples, random_pl
from conftest import fraction_grid, random_reduced_word, sample_pls

F = Fraction
T1 = PLAutomorphism.translation(1)
T2 = PLAutomorphism.translation(2)
IDENT = PLAutomorphism()

COMMUTATOR = Word(((2, -1), (3, -1), (2, 1), (3, 1)))


def samples_for(*maps, count=80, seed=0):
    return default_samples(count, seed, tuple(support_decompose(m) for m in maps))


class TestWord:
    def test_validate(self):
        assert validate_word(Word(((2, 1),)))
        assert not validate_word(Word(((2, 1), (2, -1))))
        assert validate_word(COMMUTATOR)
        assert not validate_word(Word(()))

    def test_construction_guards(self):
        with pytest.raises(ValueError):
            Word(((1, 1),))
        with pytest.raises(ValueError):
            Word(((2, 2),))

    def test_json_roundtrip(self):
        data = COMMUTATOR.to_json_dict()
        assert data == {"letters": [{"var": 2, "exp": -1}, {"var": 3, "exp": -1},
                                    {"var": 2, "exp": 1}, {"var": 3, "exp": 1}]}
        assert Word.from_json_dict(data) == COMMUTATOR

    def test_variables(self):
        assert COMMUTATOR.variables == (2, 3)


class TestSubdivision:
    def test_endpoints_exact(self):
        orbit = ComponentOrbit(T2, F(0))
        sub = Subdivision(orbit, 4)
        assert sub.point(3, 0) == orbit.point(3)
        assert sub.point(3, 4) == orbit.point(4)
        assert sub.point(0, 2) == F(1)

    def test_monotone_within_block(self):
        orbit = ComponentOrbit(T2, F(0))
        sub = Subdivision(orbit, 5)
        pts = [sub.point(2, j) for j in range(6)]
        assert pts == sorted(pts)
        assert len(set(pts)) == 6


class TestComponentOrbit:
    def test_block_containment(self, rng):
        for _ in range(40):
            g = random_pl(rng)
            terrain = support_decompose(g)
            comps = [e for e in terrain if e.color is not Color.FIXED]
            if not comps:
                continue
            e = comps[0]
            orbit = ComponentOrbit(g, anchor_point(e))
            for q in (anchor_point(e), orbit.point(3), orbit.point(-2),
                      (orbit.point(1) + orbit.point(2)) / 2):
                i = orbit.locate(q)
                if orbit.increasing:
                    assert orbit.point(i) <= q < orbit.point(i + 1)
                else:
                    assert orbit.point(i + 1) <= q < orbit.point(i)


class TestSolveWord:
    def test_single_letter(self, rng):
        for g in sample_pls(rng, 5):
            a = solve_word(Word(((2, 1),)), g)
            assert a[2] is g
            a = solve_word(Word(((2, -1),)), g)
            assert verify_pointwise(a[2], inverse(g), fraction_grid(-3, 3))

    def test_square_of_translation(self):
        a = solve_word(Word(((2, 1), (2, 1))), T2)
        x = a[2]
        for q in samples_for(T2, count=100):
            assert x.forward(x.forward(q)) == q + 2
            # canonical midpoint subdivision makes the solution t -> t + 1 exactly
            assert x.forward(q) == q + 1

    def test_identity_parameter(self):
        a = solve_word(COMMUTATOR, IDENT)
        for v in (2, 3):
            assert verify_pointwise(a[v], IDENT, fraction_grid(-3, 3))

    def test_non_reduced_rejected(self):
        with pytest.raises(ValueError):
            solve_word(Word(((2, 1), (2, -1))), T1)
        with pytest.raises(ValueError):
            solve_word(Word(()), T1)

    def test_cyclically_unreduced(self, rng):
        # x y x^-1 = g forces y to be a conjugate of g
        word = Word(((2, 1), (3, 1), (2, -1)))
        for trial in range(5):
            g = random_pl(rng)
            a = solve_word(word, g)
            for q in samples_for(g, count=60, seed=trial):
                assert apply_word(word, a, q) == g.forward(q)

    def test_random_reduced_words(self, rng):
        for trial in range(15):
            word = random_reduced_word(rng)
            g = random_pl(rng)
            a = solve_word(word, g)
            value = word_automorphism(word, a)
            for q in samples_for(g, count=50, seed=trial):
                assert value.forward(q) == g.forward(q)
                assert value.backward(g.forward(q)) == q

    def test_solutions_order_preserving(self, rng):
        word = random_reduced_word(rng, max_len=4)
        g = random_pl(rng)
        a = solve_word(word, g)
        pts = samples_for(g, count=40)
        for v in word.variables:
            images = [a[v].forward(q) for q in pts]
            assert all(p < q for p, q in zip(images, images[1:]))


class TestCommutator:
    def test_identity(self):
        x, y = commutator_decomposition(IDENT)
        assert verify_pointwise(x, IDENT, fraction_grid(-2, 2))
        assert verify_pointwise(y, IDENT, fraction_grid(-2, 2))

    def test_translation(self):
        x, y = commutator_decomposition(T1)
        for q in samples_for(T1, count=100):
            lhs = y.forward(x.forward(inverse_chain(x, y, q)))
            assert lhs == q + 1

    def test_mixed_terrain(self):
        g = realize("+0-")
        x, y = commutator_decomposition(g)
        assignment = {2: x, 3: y}
        for q in samples_for(g, count=100):
            assert apply_word(COMMUTATOR, assignment, q) == g.forward(q)


def inverse_chain(x, y, q):
    return y.backward(x.backward(q))


class TestNthRoot:
    def test_first_root_is_input(self):
        assert nth_root(T2, 1) is T2

    def test_square_root_of_translation(self):
        r = nth_root(T2, 2)
        for q in samples_for(T2, count=100):
            assert r.forward(r.forward(q)) == q + 2

    def test_identity(self):
        for n in (2, 5):
            r = nth_root(IDENT, n)
            assert verify_pointwise(r, IDENT, fraction_grid(-2, 2))

    def test_random_inputs(self, rng):
        for trial, n in ((0, 2), (1, 3), (2, 5)):
            g = random_pl(rng)
            r = nth_root(g, n)
            for q in samples_for(g, count=40, seed=trial):
                v = q
                for _ in range(n):
                    v = r.forward(v)
                assert v == g.forward(q)

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            nth_root(T1, 0)


class TestSolveXgx:
    def test_equal_translations_identity_solution(self):
        x = solve_xgx(T1, T1)
        for q in samples_for(T1, count=100):
            assert x.forward(q) == q

    def test_identity_parameter(self):
        x = solve_xgx(IDENT, T2)
        for q in samples_for(T2, count=100):
            assert x.forward(q) == q + 1

    def test_random_pairs(self, rng):
        for trial in range(20):
            f, g = sample_pls(rng, 2)
            x = solve_xgx(g, f)
            fg = compose(f, g)
            for q in samples_for(f, g, fg, count=60, seed=trial):
                assert x.forward(g.forward(x.forward(q))) == f.forward(q)

    def test_mixed_sign_and_fixed_terrain(self, rng):
        for trial, seq in enumerate(("+-+", "-+-", "+0-", "-0+0-")):
            target = realize(seq)
            f = random_pl(rng)
            g = compose(inverse(f), target)  # fg == target exactly
            fg = compose(f, g)
            assert support_decompose(fg).color_sequence() == seq
            x = solve_xgx(g, f)
            for q in samples_for(f, g, fg, count=60, seed=trial):
                assert x.forward(g.forward(x.forward(q))) == f.forward(q)

    def test_case_partition_soundness(self, rng):
        # exactly one of the two half-open case conditions holds per sample
        from lineaut.equations import _XgxComponentPiece

        f, g = PLAutomorphism.translation(3), random_pl(rng, max_knots=2)
        fg = compose(f, g)
        terrain = support_decompose(fg)
        pos = [k for k, e in enumerate(terrain) if e.color is Color.POS]
        terrain_gf = support_decompose(compose(g, f))
        for k in pos:
            piece = _XgxComponentPiece(f, g, fg, compose(g, f), terrain[k], terrain_gf[k])
            for q in samples_for(fg, count=40):
                if not terrain[k].contains(q):
                    continue
                i, first = piece.case_split(q)
                a_i = piece.orbit_alpha.point(i)
                a_next = piece.orbit_alpha.point(i + 1)
                b_i = piece.orbit_beta_g.point(i)
                in_first = a_i <= q < b_i
                in_second = b_i <= q < a_next
                assert in_first != in_second
                assert first == in_first

    def test_fixed_point_rule(self, rng):
        # where fg fixes q, the solution equals f there and the equation holds
        for trial in range(8):
            seq = ("0", "+0-", "0-0")[trial % 3]
            target = realize(seq)
            f = random_pl(rng)
            g = compose(inverse(f), target)
            fg = compose(f, g)
            x = solve_xgx(g, f)
            terrain = support_decompose(fg)
            for e in terrain:
                if e.color is not Color.FIXED:
                    continue
                q = anchor_point(e)
                assert fg.forward(q) == q
                assert x.forward(q) == f.forward(q)
                assert x.forward(g.forward(x.forward(q))) == f.forward(q)

    def test_inverse_consistency(self, rng):
        f, g = sample_pls(rng, 2)
        x = solve_xgx(g, f)
        for q in samples_for(f, g, count=60):
            assert x.backward(x.forward(q)) == q


class TestSolveTwoSided:
    def test_conjugacy_route_identity(self):
        x = solve_two_sided(T1, T1, 1, -1)
        assert x is not None
        for q in fraction_grid(-4, 4, 3):
            # the identity conjugator solves x g x^-1 = g
            assert x.forward(q) == q
            assert x.backward(T1.forward(x.forward(q))) == T1.forward(q)

    def test_conjugacy_route_directions(self, rng):
        g, h0 = sample_pls(rng, 2)
        f = compose(compose(inverse(h0), g), h0)
        for e1, e2 in ((1, -1), (-1, 1)):
            x = solve_two_sided(g, f, e1, e2)
            assert x is not None
            for q in samples_for(g, f, count=50):
                if e1 == 1:
                    lhs = x.backward(g.forward(x.forward(q)))
                else:
                    lhs = x.forward(g.forward(x.backward(q)))
                assert lhs == f.forward(q)

    def test_conjugacy_route_absent(self):
        assert solve_two_sided(T1, PLAutomorphism.translation(-1), 1, -1) is None

    def test_plus_plus_delegates(self, rng):
        f, g = sample_pls(rng, 2)
        x = solve_two_sided(g, f, 1, 1)
        for q in samples_for(f, g, count=50):
            assert x.forward(g.forward(x.forward(q))) == f.forward(q)

    def test_minus_minus_reduction(self, rng):
        for trial in range(5):
            f, g = sample_pls(rng, 2)
            x = solve_two_sided(g, f, -1, -1)
            for q in samples_for(f, g, count=50, seed=trial):
                assert x.backward(g.forward(x.backward(q))) == f.forward(q)

    def test_bad_exponents(self):
        with pytest.raises(ValueError):
            solve_two_sided(T1, T1, 0, 1)
