# -*- encoding: utf-8 -*-

from fractions import Fraction
from random import Random

import pytest

from rotelem import (
    IDENTITY,
    RotationElement,
    Word,
    WordError,
    common_primitive,
    concat_reduce,
    conjugacy_equal,
    cyclically_reduce,
    exponent_of,
    generate_s_set,
    initial_subwords,
    invert,
    normalize_rot,
    primitive_root,
    s_set_periods,
    word_power,
)

W = Word.parse


def random_word(rng, length, alphabet="ab"):
    letters = [(rng.choice(alphabet), rng.choice((1, -1))) for _ in range(length)]
    return Word(letters)


def test_parse_and_str():
    assert str(W("a~ba")) == "a~ba"
    assert str(W("")) == "1"
    assert W("1").is_identity
    assert W("a~a").is_identity
    assert len(W("ab~b~c")) == 2

    for text in ("a~", "a~~b", "aB", "a b"):
        with pytest.raises(WordError):
            W(text)


def test_concat_reduce():
    assert concat_reduce(W("a"), W("~a")) == Word()
    assert concat_reduce(W("ab"), W("~b~b")) == W("a~b")
    assert concat_reduce(W("ba"), W("a")) == W("baa")
    assert W("ab") * W("~b~a") == Word()


def test_invert():
    assert invert(Word()) == Word()
    assert invert(W("ab")) == W("~b~a")
    assert invert(W("aab")) == W("~b~a~a")


def test_word_power():
    assert word_power(W("ab"), 3) == W("ababab")
    assert word_power(W("ab"), -2) == W("~b~a~b~a")
    assert word_power(W("ab"), 0) == Word()


def test_cyclically_reduce():
    assert cyclically_reduce(W("ab~a")) == (W("b"), W("a"))
    assert cyclically_reduce(W("ab")) == (W("ab"), Word())
    assert cyclically_reduce(W("abab~a")) == (W("bab"), W("a"))


def test_primitive_root():
    assert primitive_root(W("abab")) == (W("ab"), 2)
    assert primitive_root(W("ab")) == (W("ab"), 1)
    assert primitive_root(W("ababab")) == (W("ab"), 3)
    # Conjugated powers keep their conjugator
    assert primitive_root(W("cabab~c")) == (W("cab~c"), 2)

    with pytest.raises(WordError, match="identity has no primitive root"):
        primitive_root(Word())


def test_exponent_of():
    assert exponent_of(W("aaa"), W("a")) == 3
    assert exponent_of(W("~a~a"), W("a")) == -2
    assert exponent_of(Word(), W("ab")) == 0
    assert exponent_of(W("ab"), W("ba")) is None


def test_normalize_rot():
    assert normalize_rot(W("aa"), 4) == RotationElement(W("a"), Fraction(1, 2))
    assert str(normalize_rot(W("ba"), 5)) == "ba^1/5"
    assert normalize_rot(Word(), 3) == IDENTITY
    assert normalize_rot(W("~a~a"), 3) == RotationElement(W("~a"), Fraction(2, 3))

    with pytest.raises(WordError):
        normalize_rot(W("a"), 0)


def test_rotation_element_normal_form():
    with pytest.raises(WordError):
        RotationElement(W("a"), Fraction(-1, 2))

    with pytest.raises(WordError):
        RotationElement(W("a"), None)

    assert RotationElement.power(W("aa"), Fraction(-1, 4)) == RotationElement(
        W("~a"), Fraction(1, 2)
    )
    assert IDENTITY.to_dict()["element"] == "1"
    assert normalize_rot(W("ab"), 3).to_dict() == {
        "element": "ab^1/3",
        "base": "ab",
        "exponent": "1/3",
    }


def test_conjugacy_equal():
    assert conjugacy_equal(normalize_rot(W("ba"), 5), normalize_rot(W("ab"), 5))
    assert conjugacy_equal(normalize_rot(W("a"), 2), normalize_rot(W("aa"), 4))
    assert not conjugacy_equal(normalize_rot(W("a"), 2), normalize_rot(W("a"), 3))
    assert not conjugacy_equal(normalize_rot(W("a"), 1), IDENTITY)
    assert conjugacy_equal(IDENTITY, normalize_rot(Word(), 7))
    assert conjugacy_equal(normalize_rot(W("b~a~b"), 1), normalize_rot(W("~a"), 1))


def test_common_primitive():
    assert common_primitive(W("a"), W("aaa")) == W("a")
    assert common_primitive(W("aa"), W("~a~a~a")) == W("a")
    assert common_primitive(W("ab"), W("ba")) is None
    assert common_primitive(Word(), W("abab")) == W("ab")
    assert common_primitive(Word(), Word()) is None


def test_s_set():
    a, b = W("a"), W("b")
    assert generate_s_set((a, 2), (b, 3), 1) == {normalize_rot(a, 2), normalize_rot(b, 3)}

    expected = {
        normalize_rot(a, 1),
        normalize_rot(b, 1),
        normalize_rot(W("ab"), 2),
        normalize_rot(W("ba"), 2),
    }
    assert generate_s_set((a, 1), (b, 1), 2) == expected

    periods = s_set_periods((a, 1), (b, 1), 2)
    assert periods[normalize_rot(W("ab"), 2)] == 2
    assert periods[normalize_rot(a, 1)] == 1

    with pytest.raises(WordError):
        generate_s_set((a, 1), (b, 1), 0)


def test_s_set_single_generator_mediants():
    # a^(p/m) and a^(q/n) generate exponents (rp+sq)/(rm+sn)
    p, m, q, n = 1, 3, 1, 2
    max_len = 5
    result = generate_s_set((word_power(W("a"), p), m), (word_power(W("a"), q), n), max_len)

    expected = set()
    for length in range(1, max_len + 1):
        for r in range(length + 1):
            s = length - r
            expected.add(RotationElement.power(W("a"), Fraction(r * p + s * q, r * m + s * n)))

    assert result == expected


def test_initial_subwords():
    assert initial_subwords(W("ab")) == [Word(), W("a"), W("ab")]
    assert initial_subwords(Word()) == [Word()]
    assert initial_subwords(W("~ab")) == [Word(), W("~a"), W("~ab")]


def test_word_properties():
    rng = Random(20231017)
    for _ in range(200):
        u, v, w = (random_word(rng, rng.randint(0, 6)) for _ in range(3))
        assert (u * v) * w == u * (v * w)
        assert u * invert(u) == Word()

        if u.is_identity:
            continue

        k = rng.randint(1, 4)
        n = rng.randint(1, 5)
        assert normalize_rot(word_power(u, k), k * n) == normalize_rot(u, n)

        root, exp = primitive_root(u)
        assert primitive_root(word_power(u, k)) == (root, exp * k)
        assert word_power(root, exp) == u

        # Conjugating does not change the class
        c = random_word(rng, rng.randint(0, 3))
        conj = c * u * invert(c)
        assert conjugacy_equal(normalize_rot(u, n), normalize_rot(conj, n))
