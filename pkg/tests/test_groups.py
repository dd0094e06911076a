import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nielsen_bip.fibered_map import make_theorem1_family, make_theorem2_family
from nielsen_bip.groups import (
    FiberElement,
    ProductElement,
    SurfaceWord,
    apply_endomorphism,
    exponent_vector,
    parse_word,
    twisted_conjugate,
    word_multiply,
)

A1, B1, A2, B2 = 0, 1, 2, 3


def w(*letters, genus=2):
    return SurfaceWord(genus, tuple(letters))


def words(genus=2, max_len=8):
    letter = st.tuples(st.integers(0, 2 * genus - 1), st.integers(-3, 3).filter(bool))
    return st.lists(letter, max_size=max_len).map(lambda ls: SurfaceWord(genus, tuple(ls)))


def fibers(rank, lo=-6, hi=6):
    return st.lists(st.integers(lo, hi), min_size=rank, max_size=rank).map(lambda c: FiberElement(rank, tuple(c)))


def products(genus, rank):
    return st.builds(ProductElement, words(genus), fibers(rank))


class TestSurfaceWord:
    def test_construction_reduces(self):
        assert w((A1, 2), (A1, -2)).is_identity
        assert w((A1, 1), (B1, 1), (B1, -1), (A1, 2)).letters == ((A1, 3),)
        assert w((A1, 0)).letters == ()

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            SurfaceWord(1)
        with pytest.raises(ValueError):
            w((4, 1))

    def test_inverse_cancellation(self):
        assert word_multiply(w((A1, 1)), w((A1, -1))).is_identity

    def test_single_cancellation(self):
        assert w((A1, 2), (B1, 1)) * w((B1, -1), (A2, 1)) == w((A1, 2), (A2, 1))

    @pytest.mark.parametrize("s, s2", [(0, 5), (3, -4), (-7, 2)])
    def test_power_cancellation(self, s, s2):
        assert (SurfaceWord.generator(2, A1, s2 - s) * SurfaceWord.generator(2, A1, s - s2)).is_identity

    def test_relator_is_not_rewritten(self):
        rel = SurfaceWord.relator(2)
        assert not rel.is_identity
        assert len(rel) == 8

    def test_genus_mismatch(self):
        with pytest.raises(ValueError):
            SurfaceWord(2) * SurfaceWord(3)

    @given(words(), words(), words())
    def test_associative(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    @given(words())
    def test_inverse(self, x):
        assert (x * x.inverse()).is_identity
        assert (x.inverse() * x).is_identity

    def test_power(self):
        assert w((A1, 1), (B1, 1)) ** 2 == w((A1, 1), (B1, 1), (A1, 1), (B1, 1))
        assert (w((A1, 1), (B1, 1)) ** -1) == w((B1, -1), (A1, -1))


class TestExponentVector:
    def test_empty(self):
        assert exponent_vector(SurfaceWord(2)) == (0, 0, 0, 0)

    def test_relator_dies(self):
        assert exponent_vector(SurfaceWord.relator(2)) == (0, 0, 0, 0)
        assert exponent_vector(SurfaceWord.relator(3)) == (0,) * 6

    def test_direct_sum(self):
        assert exponent_vector(w((A1, 3), (B2, -1))) == (3, 0, 0, -1)

    @given(words(), words())
    def test_homomorphism(self, x, y):
        ex, ey = exponent_vector(x), exponent_vector(y)
        assert exponent_vector(x * y) == tuple(a + b for a, b in zip(ex, ey))

    @given(st.lists(st.integers(-5, 5), min_size=6, max_size=6))
    def test_from_exponents_roundtrip(self, e):
        assert exponent_vector(SurfaceWord.from_exponents(3, e)) == tuple(e)


class TestParseWord:
    def test_basic(self):
        assert parse_word("a1 b1^-1 a2^3", 2) == w((A1, 1), (B1, -1), (A2, 3))

    def test_case_insensitive_and_identity(self):
        assert parse_word("A1^2 B2", 2) == w((A1, 2), (B2, 1))
        assert parse_word("", 2).is_identity
        assert parse_word("1", 2).is_identity

    def test_roundtrip(self):
        word = w((A1, 2), (B2, -1), (A2, 1))
        assert parse_word(str(word), 2) == word

    @pytest.mark.parametrize("text", ["c1", "a3", "a1^x", "a0", "a1^"])
    def test_errors(self, text):
        with pytest.raises(ValueError):
            parse_word(text, 2)


class TestEndomorphism:
    def test_retraction_image(self):
        for m in (1, 2, 7):
            x = ProductElement(w((A1, 1)), FiberElement.of(0, 0))
            assert apply_endomorphism(make_theorem2_family(m), x) == ProductElement(w((A1, 1)), FiberElement.of(1, 0))

    def test_fiber_automorphism_on_a(self):
        x = ProductElement(SurfaceWord(2), FiberElement.of(1, 0))
        assert apply_endomorphism(make_theorem2_family(1), x).fiber == FiberElement.of(2, 1)

    def test_identity_fixed(self):
        e = ProductElement.identity(2, 2)
        assert apply_endomorphism(make_theorem2_family(3), e) == e

    def test_theorem1_generators(self):
        spec = make_theorem1_family(4)
        c = ProductElement(SurfaceWord(2), FiberElement.of(1))
        assert apply_endomorphism(spec, c).fiber == FiberElement.of(5)
        for gen, image in [(A1, 1), (B1, 0), (A2, 0), (B2, 0)]:
            x = ProductElement(SurfaceWord.generator(2, gen), FiberElement.of(0))
            assert apply_endomorphism(spec, x).fiber == FiberElement.of(image)

    def test_rank_mismatch(self):
        with pytest.raises(ValueError):
            apply_endomorphism(make_theorem2_family(1), ProductElement.identity(2, 1))

    @settings(deadline=None)
    @given(st.integers(1, 20), products(2, 2), products(2, 2))
    def test_homomorphism(self, m, x, y):
        spec = make_theorem2_family(m)
        f = lambda z: apply_endomorphism(spec, z)  # noqa: E731
        assert f(x * y) == f(x) * f(y)


class TestTwistedConjugate:
    def test_identity_gamma(self):
        spec = make_theorem2_family(3)
        beta = ProductElement(w((B1, 2)), FiberElement.of(4, -1))
        assert twisted_conjugate(spec, beta, ProductElement.identity(2, 2)) == beta

    @pytest.mark.parametrize("m", [1, 2, 9])
    @pytest.mark.parametrize("s, s2", [(0, 3), (4, -2), (-5, -5)])
    def test_theorem1_collapse(self, m, s, s2):
        spec = make_theorem1_family(m)
        beta = ProductElement(SurfaceWord(2), FiberElement.of(s))
        gamma = ProductElement(SurfaceWord.generator(2, A1, s2 - s), FiberElement.of(0))
        assert twisted_conjugate(spec, beta, gamma) == ProductElement(SurfaceWord(2), FiberElement.of(s2))

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_step3_witness_sweep(self, m):
        spec = make_theorem2_family(m)
        rng = range(-5, 6)
        for s1 in rng:
            for t1 in rng:
                for s2 in rng:
                    for t2 in rng:
                        beta = ProductElement(SurfaceWord(2), FiberElement.of(s1, t1))
                        gamma = ProductElement(
                            SurfaceWord.generator(2, A1, s2 - s1), FiberElement.of(t2 - t1, t1 - t2)
                        )
                        got = twisted_conjugate(spec, beta, gamma)
                        assert got.base.is_identity and got.fiber.coords == (s2, t2)

    @settings(deadline=None)
    @given(st.integers(1, 10), products(2, 2), products(2, 2), products(2, 2))
    def test_action_composes(self, m, beta, g1, g2):
        spec = make_theorem2_family(m)
        lhs = twisted_conjugate(spec, twisted_conjugate(spec, beta, g1), g2)
        assert lhs == twisted_conjugate(spec, beta, g1 * g2)
