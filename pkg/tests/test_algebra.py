"""Engine tests: PBW straightening, deformed rewriting, tensors, exp."""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscquant.algebra import (
    A,
    AM,
    AP,
    GEN_MONOS,
    M,
    UNIT_MONO,
    Algebra,
    Element,
    embed,
    exp_series,
    lie_brackets,
    mono_of_word,
    tensor,
    word_of_mono,
)
from oscquant.coeffs import CoefficientField

F = CoefficientField.get("z")
CL = Algebra.classical(F)


def uz_algebra(order):
    """A deformed enveloping algebra with exponential-series rewrite tails.

    Relations: Ap*A = A*Ap - (exp(z*Ap)-1)/z, Am*A = A*Am + Am,
    Am*Ap = Ap*Am + M*exp(z*Ap); the parameter z carries the marker.
    """
    z = F.marked_param("z")
    t10 = {}
    for k in range(1, order + 2):
        t10[(0, k, 0, 0)] = -(z ** (k - 1)) * Fraction(1, factorial(k))
    t21 = {}
    for k in range(0, order + 1):
        t21[(0, k, 0, 1)] = z**k * Fraction(1, factorial(k))
    tails = {(AP, A): t10, (AM, A): {GEN_MONOS[AM]: F.one}, (AM, AP): t21}
    return Algebra(F, tails, order, "Uz(h4)")


UZ = uz_algebra(4)


def some_elements(alg, with_marker=True):
    monos = st.tuples(*(st.integers(0, 2) for _ in range(4)))
    scalars = [F.rational(1), F.rational(-1), F.rational(2), F.rational(1, 2)]
    if with_marker:
        scalars.append(F.marked_param("z"))
    coeffs = st.sampled_from(scalars)

    @st.composite
    def elem(draw):
        e = alg.zero()
        for _ in range(draw(st.integers(1, 3))):
            e = e + alg.monomial(draw(monos), draw(coeffs))
        return e

    return elem()


class TestClassicalPBW:
    def test_defining_relations(self):
        a, ap, am, m = CL.gens()
        assert a * ap - ap * a == ap
        assert a * am - am * a == -am
        assert am * ap - ap * am == m
        for g in (a, ap, am):
            assert m * g - g * m == CL.zero()

    def test_straightening_example(self):
        # Am*Ap*A = A*Ap*Am + A*M  (worked out by hand)
        got = CL.normalize_word((AM, AP, A))
        want = CL.monomial((1, 1, 1, 0)) + CL.monomial((1, 0, 0, 1))
        assert got == want

    def test_casimir_is_central(self):
        # 2*A*M - Ap*Am - Am*Ap, in PBW form 2*A*M - 2*Ap*Am - M.
        cas = 2 * CL.monomial((1, 0, 0, 1)) - 2 * CL.monomial((0, 1, 1, 0)) - CL.gen(M)
        for g in CL.gens():
            assert cas.commutator(g).is_zero

    def test_bracket_table_is_antisymmetric(self):
        table = lie_brackets(F)
        for i in range(4):
            for j in range(4):
                forward = Element(CL, dict(table[(i, j)]))
                backward = Element(CL, dict(table[(j, i)]))
                assert forward == -backward
                assert CL.gen(i).commutator(CL.gen(j)) == forward

    @settings(max_examples=50, deadline=None)
    @given(some_elements(CL), some_elements(CL), some_elements(CL))
    def test_associativity(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    @settings(max_examples=50, deadline=None)
    @given(some_elements(CL), some_elements(CL), some_elements(CL))
    def test_distributivity(self, x, y, z):
        assert x * (y + z) == x * y + x * z

    def test_unit_and_zero(self):
        x = CL.monomial((1, 2, 0, 1), F.rational(3, 2))
        assert CL.one() * x == x
        assert x * CL.one() == x
        assert x * CL.zero() == CL.zero()
        assert x.scale(0).is_zero


class TestDeformedRewriting:
    def test_defining_relations_roundtrip(self):
        a, ap, am, m = UZ.gens()
        z = F.marked_param("z")
        exp_zap = exp_series(ap.scale(z))
        # [Am, Ap] = M * exp(z*Ap)
        assert am * ap - ap * am == m * exp_zap
        # [A, Ap] = (exp(z*Ap) - 1)/z  -- multiply through by z to compare
        assert (a * ap - ap * a).scale(z) == exp_zap - UZ.one()
        assert a * am - am * a == -am

    def test_classical_limit(self):
        a, ap, am, _ = UZ.gens()
        assert (am * ap - ap * am).h_part(0).terms == {GEN_MONOS[M]: F.one}
        assert (a * ap - ap * a).h_part(0).terms == {GEN_MONOS[AP]: F.one}

    def test_deformed_casimir_is_central(self):
        # 2*A*M + ((exp(-z*Ap)-1)/z)*Am + Am*((exp(-z*Ap)-1)/z)
        z = F.marked_param("z")
        em = UZ.zero()
        for k in range(1, UZ.order + 2):
            em = em + UZ.monomial((0, k, 0, 0), (-1) ** k * z ** (k - 1) * Fraction(1, factorial(k)))
        am = UZ.gen(AM)
        cas = 2 * UZ.monomial((1, 0, 0, 1)) + em * am + am * em
        for g in UZ.gens():
            assert cas.commutator(g).is_zero

    @settings(max_examples=40, deadline=None)
    @given(some_elements(UZ), some_elements(UZ), some_elements(UZ))
    def test_associativity(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    def test_series_tails_need_an_order(self):
        z = F.marked_param("z")
        with pytest.raises(ValueError, match="truncation order"):
            Algebra(F, {(AP, A): {(0, 2, 0, 0): z}}, None)

    def test_unmarked_series_tails_are_rejected(self):
        with pytest.raises(ValueError, match="terminate"):
            Algebra(F, {(AP, A): {(0, 2, 0, 0): F.one}}, 4)


class TestConfluence:
    def all_words(self, max_len):
        words = [()]
        frontier = [()]
        for _ in range(max_len):
            frontier = [w + (g,) for w in frontier for g in range(4)]
            words.extend(frontier)
        return words

    def test_classical_both_strategies_agree(self):
        for w in self.all_words(4):
            assert CL.normalize_word(w) == CL.normalize_word(w, rightmost=True), w

    def test_deformed_both_strategies_agree_short(self):
        for w in self.all_words(3):
            assert UZ.normalize_word(w) == UZ.normalize_word(w, rightmost=True), w

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=4, max_size=6))
    def test_deformed_both_strategies_agree_random(self, w):
        w = tuple(w)
        assert UZ.normalize_word(w) == UZ.normalize_word(w, rightmost=True)

    def test_word_mono_roundtrip(self):
        assert word_of_mono((2, 0, 1, 3)) == (0, 0, 2, 3, 3, 3)
        assert mono_of_word((0, 0, 2, 3, 3, 3)) == (2, 0, 1, 3)
        assert mono_of_word(word_of_mono(UNIT_MONO)) == UNIT_MONO


class TestTensors:
    def test_tensor_product_and_swap(self):
        a, ap = CL.gen(A), CL.gen(AP)
        t = tensor(a, ap)
        assert t.swap() == tensor(ap, a)
        assert t.swap().swap() == t

    def test_slotwise_multiplication(self):
        a, ap, am = CL.gen(A), CL.gen(AP), CL.gen(AM)
        lhs = tensor(a, ap) * tensor(ap, am)
        assert lhs == tensor(a * ap, ap * am)

    def test_commutator_in_tensor_square(self):
        a, ap = CL.gen(A), CL.gen(AP)
        one = CL.one()
        left = tensor(a, one) + tensor(one, a)
        r = tensor(ap, a)
        # [A o 1 + 1 o A, Ap o A] = Ap o A  (first slot bracket only)
        assert left.commutator(r) == tensor(ap, a)

    def test_embed(self):
        a, ap = CL.gen(A), CL.gen(AP)
        t = tensor(a, ap)
        t13 = embed(t, (0, 2), 3)
        assert t13 == tensor(a, CL.one(), ap)

    def test_permute_cyclic(self):
        a, ap, am = CL.gen(A), CL.gen(AP), CL.gen(AM)
        t = tensor(a, ap, am)
        assert t.permute((1, 2, 0)) == tensor(ap, am, a)

    def test_contract(self):
        # scalar map sending 1 -> 1 and everything else -> 0 (a counit).
        def eps(mono):
            return F.one if mono == UNIT_MONO else F.zero

        a = CL.gen(A)
        t = tensor(CL.one(), a) + tensor(a, CL.one())
        assert t.contract(0, eps) == a
        assert t.contract(1, eps) == a

    def test_fold_slots(self):
        a, ap = CL.gen(A), CL.gen(AP)
        assert tensor(a, ap).fold_slots() == a * ap
        flipmap = lambda mono: Element(CL, {mono: F.rational(2)})
        assert tensor(a, ap).fold_slots([flipmap, None]) == 2 * a * ap

    def test_arity_mismatch_rejected(self):
        with pytest.raises(ValueError):
            tensor(CL.gen(A), CL.gen(AP)) + tensor(CL.gen(A), CL.gen(AP), CL.gen(M))


class TestExp:
    def test_group_like_inverse(self):
        alg = Algebra.classical(F, order=6)
        zm = alg.gen(M).scale(F.marked_param("z"))
        assert exp_series(zm) * exp_series(-zm) == alg.one()

    def test_exp_adds_for_commuting_exponents(self):
        alg = Algebra.classical(F, order=5)
        z = F.marked_param("z")
        x = alg.gen(AP).scale(z)
        y = alg.gen(M).scale(z)
        assert exp_series(x) * exp_series(y) == exp_series(x + y)

    def test_tensor_exp(self):
        alg = Algebra.classical(F, order=4)
        z = F.marked_param("z")
        t = tensor(alg.gen(AP), alg.gen(M)).scale(z)
        e = exp_series(t)
        assert e.terms[(UNIT_MONO, UNIT_MONO)] == F.one
        assert e.terms[((0, 1, 0, 0), (0, 0, 0, 1))] == z
        assert e.terms[((0, 2, 0, 0), (0, 0, 0, 2))] == z**2 * Fraction(1, 2)

    def test_exp_rejects_unmarked_argument(self):
        alg = Algebra.classical(F, order=4)
        with pytest.raises(ValueError, match="order-0"):
            exp_series(alg.gen(M))

    def test_exp_needs_order(self):
        with pytest.raises(ValueError, match="order"):
            exp_series(CL.gen(M).scale(F.marked_param("z")))


class TestElementOps:
    def test_h_part_and_strip(self):
        z = F.marked_param("z")
        e = UZ.gen(A) + UZ.gen(AP).scale(z) + UZ.gen(AP).scale(z**2)
        assert e.h_part(0) == UZ.gen(A)
        assert e.h_part(1) == UZ.gen(AP).scale(F.param("z"))
        zs = F.param("z")
        assert e.strip_marker() == UZ.gen(A) + UZ.gen(AP).scale(zs + zs**2)

    def test_scale_params_marks_coefficients(self):
        e = CL.gen(AP).scale(F.param("z"))
        assert e.scale_params() == CL.gen(AP).scale(F.marked_param("z"))

    def test_cross_algebra_mixing_rejected(self):
        with pytest.raises(ValueError):
            CL.gen(A) + UZ.gen(A)

    def test_degree(self):
        assert (CL.monomial((1, 2, 0, 1)) + CL.gen(A)).degree == 4
        assert CL.zero().degree == 0
