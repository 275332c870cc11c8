from __future__ import annotations

import numpy as np
import pytest

from braidgrowth.words import (
    Alphabet,
    Kind,
    Word,
    colex_pairs,
    dual_expansion,
    pack_letters,
    pack_word,
    unpack_letters,
    unpack_word,
)


def test_alphabet_sizes():
    assert Alphabet.artin(4).size == 6
    assert Alphabet.dual(4).size == 12
    assert Alphabet.dual(3).size == Alphabet.artin(4).size
    assert Alphabet.artin(2).size == 2


def test_positive_letters_come_first():
    a = Alphabet.dual(4)
    signs = [a.letter(x)[1] for x in range(a.size)]
    assert signs == [1] * 6 + [-1] * 6
    assert [a.letter(x)[0] for x in range(6)] == colex_pairs(4)


@pytest.mark.parametrize("alphabet", [Alphabet.artin(3), Alphabet.dual(4), Alphabet.artin(6)])
def test_inverse_is_an_involution(alphabet):
    for x in range(alphabet.size):
        y = alphabet.inverse(x)
        assert y != x
        assert alphabet.inverse(y) == x
        assert alphabet.letter(y) == (alphabet.letter(x)[0], -alphabet.letter(x)[1])


def test_parse_and_print():
    a = Alphabet.dual(4)
    w = Word.parse(a, "a12 a23^-1 a14")
    assert str(w) == "a12 a23^-1 a14"
    assert Word.parse(a, "e").letters == ()
    with pytest.raises(ValueError):
        Word.parse(a, "s1")
    art = Alphabet.artin(3)
    assert Word.parse(art, "s1 s2^-1").inverse() == Word.parse(art, "s2 s1^-1")


def test_dual_expansion_shape():
    # a_pq expands to 2(q - p) - 1 Artin letters
    a = Alphabet.dual(5)
    for x, seq in enumerate(dual_expansion(5)):
        (p, q), _ = a.letter(x)
        assert len(seq) == 2 * (q - p) - 1


@pytest.mark.parametrize(
    "alphabet,k",
    [(Alphabet.artin(3), 4), (Alphabet.artin(4), 3), (Alphabet.dual(4), 2), (Alphabet.artin(2), 8), (Alphabet.dual(3), 3)],
)
def test_letters_per_byte(alphabet, k):
    assert alphabet.letters_per_byte == k
    assert alphabet.size**k <= 256 < alphabet.size ** (k + 1)


def test_b4_artin_length_21_packs_in_7_bytes():
    assert Alphabet.artin(4).packed_size(21) == 7


@pytest.mark.parametrize("alphabet", [Alphabet.artin(3), Alphabet.artin(4), Alphabet.dual(4), Alphabet.artin(2)])
@pytest.mark.parametrize("length", [0, 1, 5, 13])
def test_pack_round_trip(alphabet, length):
    rng = np.random.default_rng(length)
    letters = rng.integers(0, alphabet.size, size=(50, length), dtype=np.uint8)
    packed = pack_letters(letters, alphabet)
    assert packed.shape == (50, alphabet.packed_size(length))
    assert np.array_equal(unpack_letters(packed, length, alphabet), letters)


def test_unpack_rejects_out_of_range_bytes():
    a = Alphabet.artin(4)  # 3 letters per byte, 216 codes
    with pytest.raises(ValueError):
        unpack_letters(np.array([[250]], dtype=np.uint8), 3, a)
    # last byte only holds one letter for length 4
    with pytest.raises(ValueError):
        unpack_letters(np.array([[0, 6]], dtype=np.uint8), 4, a)


def test_pack_word_round_trip():
    a = Alphabet.dual(3)
    w = Word.parse(a, "a12 a13^-1 a23 a23 a12^-1")
    assert unpack_word(pack_word(w), len(w), a) == w


def test_omega_range_checked():
    with pytest.raises(ValueError):
        Word(Alphabet.artin(3), (0,), omega=2**64)
    assert Kind("dual") is Kind.DUAL
