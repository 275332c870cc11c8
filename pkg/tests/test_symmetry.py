from __future__ import annotations

import pytest

from braidgrowth.dynnikov import braids_equal
from braidgrowth.symmetry import (
    SymmetryElement,
    _map_template_direct,
    group,
    inverse_element,
    is_reduced,
    map_template,
    map_word,
    orbit,
    reduce,
    sort_key,
)
from braidgrowth.templates import Template, from_cycles, template_of_word
from braidgrowth.words import Alphabet, Kind, Word

from conftest import ALPHABETS, alphabet_id, random_word

A4 = Alphabet.artin(4)
T = template_of_word(Word.parse(A4, "s1 s2^-1"))


def el(**kw):
    return SymmetryElement(Kind.ARTIN, **kw)


@pytest.mark.parametrize(
    "g,perm_cycle,links",
    [
        (el(inv=True), (1, 3, 2), (0, -1, 1, 0, 0, 0)),
        (el(theta=True), (1, 2, 3), (-1, 1, 0, 0, 0, 0)),
        (el(flip=True), (2, 4, 3), (0, 0, 0, 0, -1, 1)),
        (el(inv=True, theta=True), (1, 3, 2), (0, 1, -1, 0, 0, 0)),
        (el(inv=True, flip=True), (2, 3, 4), (0, 0, 1, 0, -1, 0)),
        (el(theta=True, flip=True), (2, 4, 3), (0, 0, 0, 0, 1, -1)),
        (el(inv=True, theta=True, flip=True), (2, 3, 4), (0, 0, -1, 0, 1, 0)),
    ],
)
def test_orbit_example_in_b4(g, perm_cycle, links):
    assert map_template(g, T) == Template(from_cycles(4, perm_cycle), links)


def test_reduced_template_of_the_example():
    tr, g = reduce(T, A4)
    assert tr == Template(from_cycles(4, (2, 3, 4)), (0, 0, -1, 0, 1, 0))
    assert g == el(inv=True, theta=True, flip=True)
    assert len(orbit(T, A4)) == 8
    assert is_reduced(tr, A4) and not is_reduced(T, A4)


def test_permutation_order_of_the_example():
    perms = [from_cycles(4, c) for c in [(2, 3, 4), (2, 4, 3), (1, 2, 3), (1, 3, 2)]]
    keys = [sort_key(Template(p, (0,) * 6)) for p in perms]
    assert keys == sorted(keys)


@pytest.mark.parametrize("n,kind,order", [(3, "artin", 8), (5, "artin", 8), (3, "dual", 6), (5, "dual", 10), (2, "artin", 2), (2, "dual", 2)])
def test_group_orders(n, kind, order):
    assert len(group(Alphabet(n, Kind(kind)))) == order


@pytest.mark.parametrize("alphabet", ALPHABETS + [Alphabet.dual(5)], ids=alphabet_id)
def test_group_law_on_words(alphabet, rng):
    # generators: involutions, phi of order n, all commuting
    elems = group(alphabet)
    for _ in range(50):
        w = random_word(rng, alphabet, 7)
        for g in elems:
            back = map_word(inverse_element(g, alphabet.n), map_word(g, w))
            assert back == w
            for h in elems:
                assert map_word(g, map_word(h, w)) == map_word(h, map_word(g, w))
        if alphabet.kind is Kind.DUAL:
            phi = SymmetryElement(Kind.DUAL, rot=1)
            v = w
            for k in range(1, alphabet.n + 1):
                v = map_word(phi, v)
                assert (v == w) == (k == alphabet.n)


@pytest.mark.parametrize("alphabet", ALPHABETS + [Alphabet.dual(5), Alphabet.artin(5), Alphabet.artin(2)], ids=alphabet_id)
def test_template_maps_agree_with_word_images(alphabet, rng):
    for _ in range(300):
        w = random_word(rng, alphabet, rng.randrange(0, 12))
        t = template_of_word(w)
        for g in group(alphabet):
            assert map_template(g, t) == template_of_word(map_word(g, w))


@pytest.mark.parametrize("alphabet", ALPHABETS, ids=alphabet_id)
def test_cached_affine_rules_match_closed_forms(alphabet, rng):
    for _ in range(200):
        t = template_of_word(random_word(rng, alphabet, 9))
        for g in group(alphabet):
            assert map_template(g, t) == _map_template_direct(g, t)


@pytest.mark.parametrize("alphabet", ALPHABETS, ids=alphabet_id)
def test_maps_preserve_braid_equality(alphabet, rng):
    # u and u.x.x^-1 are equal braids; so must be their images
    for _ in range(100):
        u = random_word(rng, alphabet, 5)
        x = rng.randrange(alphabet.size)
        v = Word(alphabet, u.letters[:2] + (x, alphabet.inverse(x)) + u.letters[2:])
        for g in group(alphabet):
            assert braids_equal(map_word(g, u), map_word(g, v))


def test_dual_relation_images_stay_equal():
    a = Alphabet.dual(4)
    u, v = Word.parse(a, "a12 a23"), Word.parse(a, "a23 a13")
    for g in group(a):
        assert braids_equal(map_word(g, u), map_word(g, v))


@pytest.mark.parametrize("alphabet", ALPHABETS + [Alphabet.dual(6)], ids=alphabet_id)
def test_orbit_sizes_divide_group_order(alphabet, rng):
    order = len(group(alphabet))
    for _ in range(200):
        t = template_of_word(random_word(rng, alphabet, rng.randrange(0, 10)))
        assert order % len(orbit(t, alphabet)) == 0


def test_theta_rejected_on_dual():
    with pytest.raises(ValueError):
        map_template(SymmetryElement(Kind.DUAL, theta=True), Template.identity(3))


def test_reduce_is_orbit_minimum(rng):
    for alphabet in ALPHABETS:
        for _ in range(50):
            t = template_of_word(random_word(rng, alphabet, 8))
            tr, g = reduce(t, alphabet)
            assert tr == min(orbit(t, alphabet), key=sort_key)
            assert map_template(g, t) == tr
            assert reduce(tr, alphabet)[0] == tr
