import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusfill.errors import DomainError
from torusfill.sl2z import (
    IDENTITY,
    S,
    T,
    H1Invariants,
    Mat2,
    TraceClass,
    classify_trace,
    cyclic_canonical,
    cyclic_equal,
    evaluate_word,
    hyperbolic_standard_form,
    is_standard_string,
    monodromy,
    orientation_reversal,
    standard_factorization,
    torus_bundle_h1,
)


def bounded_conjugator(x, y, bound=10):
    """Brute-force search for u with u x u^-1 == y, |entries| <= bound."""
    rng = range(-bound, bound + 1)
    for p in rng:
        for q in rng:
            for r in rng:
                for s in rng:
                    if p * s - q * r != 1:
                        continue
                    u = Mat2(p, q, r, s)
                    if u * x == y * u:
                        return u
    return None


def random_string(rng, max_len=6, lo=2, hi=8):
    m = rng.randint(1, max_len)
    d = [rng.randint(lo, hi) for _ in range(m)]
    if all(x == 2 for x in d):
        d[rng.randrange(m)] = rng.randint(3, hi)
    return tuple(d)


class TestMat2:
    def test_determinant_enforced(self):
        with pytest.raises(DomainError):
            Mat2(1, 0, 0, 2)
        with pytest.raises(DomainError):
            Mat2(1, 1, 1, 1)

    def test_algebra(self):
        assert S * S == -IDENTITY
        assert (T ** -3) * (T ** 3) == IDENTITY
        assert S.inverse() == -S
        u = Mat2(2, 1, 1, 1)
        assert u * u.inverse() == IDENTITY


class TestMonodromy:
    def test_single_factor(self):
        assert monodromy((1,)) == Mat2(1, 1, -1, 0)

    def test_parabolic_pair(self):
        assert monodromy((0, -2)) == Mat2(-1, -2, 0, -1)

    def test_order_of_factors(self):
        assert monodromy((1, 2)) == Mat2(1, 2, -1, -1)

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            monodromy(())

    @given(st.lists(st.integers(-9, 9), min_size=1, max_size=7))
    def test_trace_is_rotation_invariant(self, entries):
        d = tuple(entries)
        rotated = d[1:] + d[:1]
        assert monodromy(d).trace == monodromy(rotated).trace


class TestTraceClass:
    def test_elliptic(self):
        assert classify_trace(Mat2(0, -1, 1, 0)) == TraceClass("elliptic", 0)

    def test_parabolic(self):
        tc = classify_trace(monodromy((0, -4)))
        assert (tc.kind, tc.trace) == ("parabolic", -2)

    def test_hyperbolic(self):
        tc = classify_trace(monodromy((3,)))
        assert (tc.kind, tc.trace) == ("hyperbolic", 3)


class TestWords:
    def test_t_inverse_s(self):
        assert evaluate_word([("T", -1), ("S", 1)]) == monodromy((1,))

    def test_negative_s(self):
        assert evaluate_word([("S", 1)], sign=-1) == -monodromy((0,))

    def test_double_turn_is_conjugate_to_elliptic_monodromy(self):
        # -(T^-1 S)^2 has trace 1 and is conjugate to -A(-1)
        w = evaluate_word([("T", -1), ("S", 1), ("T", -1), ("S", 1)], sign=-1)
        target = -monodromy((-1,))
        assert w.trace == target.trace == 1
        u = bounded_conjugator(w, target)
        assert u is not None and u * w == target * u

    def test_factorization_matches_composition(self):
        rng = random.Random(11)
        for _ in range(50):
            m = rng.randint(1, 8)
            d = tuple(rng.randint(-5, 5) for _ in range(m))
            word = standard_factorization(d)
            assert evaluate_word(word) == monodromy(d)
            assert evaluate_word(word, sign=-1) == -monodromy(d)

    def test_bad_generator(self):
        with pytest.raises(DomainError):
            evaluate_word([("X", 1)])
        with pytest.raises(DomainError):
            evaluate_word([])


class TestOrientationReversal:
    def test_fixed_point(self):
        assert orientation_reversal((3,)) == (3,)

    def test_single_block(self):
        assert orientation_reversal((5,)) == (3, 2, 2)

    def test_multi_block(self):
        assert orientation_reversal((3, 3, 3, 2, 3, 3)) == (3, 3, 4, 3, 3)

    def test_rotates_to_leading_three(self):
        assert orientation_reversal((2, 3)) == (4,)
        assert orientation_reversal((4,)) == (3, 2)

    def test_rejects_all_twos(self):
        with pytest.raises(DomainError):
            orientation_reversal((2, 2, 2))

    def test_rejects_small_entries(self):
        with pytest.raises(DomainError):
            orientation_reversal((3, 1))

    def test_involution_on_samples(self):
        rng = random.Random(5)
        for _ in range(200):
            d = random_string(rng)
            rr = orientation_reversal(orientation_reversal(d))
            assert cyclic_equal(rr, d)

    def test_length_formula(self):
        # length of the reversal is (number of blocks) + (sum of n_i)
        d = (6, 2, 3, 5, 2, 2)
        # blocks: (3, 1), (0, 0), (2, 2) -> lengths 1+3, 1+0, 1+2
        assert len(orientation_reversal(d)) == 3 + (3 + 0 + 2)


class TestCyclicCanonical:
    def test_identity(self):
        assert cyclic_canonical((2, 3)) == (2, 3)

    def test_rotation(self):
        assert cyclic_canonical((3, 2)) == (2, 3)

    def test_longer(self):
        assert cyclic_canonical((3, 3, 4, 3, 3)) == (3, 3, 3, 3, 4)

    def test_reflection_not_identified(self):
        assert cyclic_canonical((2, 3, 4)) != cyclic_canonical((4, 3, 2))
        assert not cyclic_equal((2, 3, 4), (2, 4, 3))


class TestHyperbolicStandardForm:
    def test_round_trip_single(self):
        assert hyperbolic_standard_form(monodromy((3,))) == (1, (3,))

    def test_round_trip_negative(self):
        assert hyperbolic_standard_form(-monodromy((3, 2, 2))) == (-1, (2, 2, 3))

    def test_conjugated_input(self):
        u = Mat2(2, 1, 1, 1)
        m = u * monodromy((2, 3)) * u.inverse()
        assert hyperbolic_standard_form(m) == (1, (2, 3))

    def test_postcondition_via_bounded_oracle(self):
        m = Mat2(1, 1, 1, 2) * monodromy((4,)) * Mat2(1, 1, 1, 2).inverse()
        sign, d = hyperbolic_standard_form(m)
        assert sign == 1
        u = bounded_conjugator(monodromy(d), m)
        assert u is not None

    def test_rejects_non_hyperbolic(self):
        with pytest.raises(DomainError):
            hyperbolic_standard_form(S)
        with pytest.raises(DomainError):
            hyperbolic_standard_form(monodromy((0, -4)))

    def test_random_round_trips(self):
        rng = random.Random(23)
        for _ in range(150):
            d = random_string(rng)
            sign = rng.choice((1, -1))
            target = monodromy(d) if sign == 1 else -monodromy(d)
            u = IDENTITY
            for _ in range(rng.randint(0, 10)):
                u = u * rng.choice((S, T, T.inverse()))
            got_sign, got = hyperbolic_standard_form(u * target * u.inverse())
            assert got_sign == sign
            assert got == cyclic_canonical(d)


class TestH1:
    def test_quarter_turn(self):
        assert torus_bundle_h1(Mat2(0, -1, 1, 0)) == H1Invariants(1, (2,))

    def test_parabolic_family(self):
        assert torus_bundle_h1(monodromy((0, -4))) == H1Invariants(1, (2, 2))

    def test_hyperbolic(self):
        assert torus_bundle_h1(-monodromy((3,))) == H1Invariants(1, (5,))

    def test_trace_two_rejected(self):
        with pytest.raises(DomainError):
            torus_bundle_h1(T)

    def test_conjugation_invariance(self):
        rng = random.Random(7)
        for _ in range(100):
            d = random_string(rng)
            m = -monodromy(d)
            u = IDENTITY
            for _ in range(rng.randint(0, 8)):
                u = u * rng.choice((S, T, T.inverse()))
            assert torus_bundle_h1(m) == torus_bundle_h1(u * m * u.inverse())

    def test_torsion_is_divisibility_chain(self):
        rng = random.Random(9)
        for _ in range(200):
            d = random_string(rng)
            inv = torus_bundle_h1(monodromy(d))
            if len(inv.torsion) == 2:
                assert inv.torsion[1] % inv.torsion[0] == 0


class TestDisplayedIdentities:
    @pytest.mark.parametrize("eps", [-1, 0, 1])
    def test_triangle_identity(self, eps):
        assert monodromy((1 - eps, 0, -1)) == -monodromy((-eps,))

    @pytest.mark.parametrize("eps", [-1, 0, 1])
    def test_conjugation_identity(self, eps):
        u = Mat2(1, -1, 0, 1)
        assert monodromy((1, 2 - eps)) == u * monodromy((-eps,)) * u.inverse()

    def test_standardness_predicate(self):
        assert is_standard_string((3, 2, 2))
        assert not is_standard_string((2, 2))
        assert not is_standard_string((3, 1))
