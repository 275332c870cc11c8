"""Stable word maps, their action on templates, and template reduction.

The symmetry group is generated by

* ``inv``   reverse a word and invert every letter (both alphabets),
* ``theta`` invert every letter in place (Artin only),
* ``Phi``   sigma_k -> sigma_{n-k} (Artin only),
* ``phi``   a_pq -> a_{[p+1]_n [q+1]_n} (dual only).

All generators commute at word level, so an element is a set of flags (Artin) or
an ``inv`` flag plus a rotation exponent (dual).  Template images use closed
forms, never word-level conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .templates import Template, perm_inverse
from .words import Alphabet, Kind, Word, colex_pairs


def wrap(k: int, n: int) -> int:
    """``[k]_n`` on ``0..n+1``: 0 -> n, n+1 -> 1, identity otherwise."""
    if k == 0:
        return n
    if k == n + 1:
        return 1
    return k


@dataclass(frozen=True)
class SymmetryElement:
    kind: Kind
    inv: bool = False
    theta: bool = False
    flip: bool = False
    rot: int = 0

    def __str__(self):
        parts = []
        if self.inv:
            parts.append("inv")
        if self.theta:
            parts.append("theta")
        if self.flip:
            parts.append("Phi")
        if self.rot:
            parts.append(f"phi^{self.rot}")
        return " o ".join(parts) or "id"


@lru_cache(maxsize=None)
def group(alphabet: Alphabet) -> tuple[SymmetryElement, ...]:
    """Elements of the symmetry group in a fixed enumeration order (identity first)."""
    kind, n = alphabet.kind, alphabet.n
    if n == 2:
        return (SymmetryElement(kind), SymmetryElement(kind, inv=True))
    if kind is Kind.ARTIN:
        return tuple(
            SymmetryElement(kind, inv=a, theta=b, flip=c)
            for a in (False, True)
            for b in (False, True)
            for c in (False, True)
        )
    return tuple(SymmetryElement(kind, inv=a, rot=k) for a in (False, True) for k in range(n))


def inverse_element(g: SymmetryElement, n: int) -> SymmetryElement:
    if g.rot:
        return SymmetryElement(g.kind, inv=g.inv, rot=(-g.rot) % n)
    return g


def _check(g: SymmetryElement, alphabet: Alphabet):
    if g.kind is not alphabet.kind:
        raise ValueError(f"{g} is not a symmetry of the {alphabet.kind.value} alphabet")
    if alphabet.kind is Kind.DUAL and (g.theta or g.flip):
        raise ValueError("theta and Phi are not stable on dual words")
    if alphabet.kind is Kind.ARTIN and g.rot:
        raise ValueError("phi acts on dual words only")


@lru_cache(maxsize=None)
def letter_table(g: SymmetryElement, alphabet: Alphabet) -> np.ndarray:
    """Letterwise part of ``g`` (everything except the reversal done by ``inv``)."""
    _check(g, alphabet)
    n = alphabet.n
    out = []
    for x in range(alphabet.size):
        base, sign = alphabet.letter(x)
        if alphabet.kind is Kind.ARTIN:
            if g.flip:
                base = n - base
        else:
            p, q = base
            for _ in range(g.rot):
                p, q = wrap(p + 1, n), wrap(q + 1, n)
            base = (min(p, q), max(p, q))
        if g.theta:
            sign = -sign
        if g.inv:
            sign = -sign
        out.append(alphabet.index(base, sign))
    return np.array(out, dtype=np.uint8)


def map_letters(g: SymmetryElement, alphabet: Alphabet, letters: np.ndarray) -> np.ndarray:
    """Apply ``g`` to every row of an ``(m, length)`` letter array."""
    mapped = letter_table(g, alphabet)[np.asarray(letters, dtype=np.intp)]
    if g.inv:
        mapped = mapped[:, ::-1]
    return np.ascontiguousarray(mapped, dtype=np.uint8)


def map_word(g: SymmetryElement, w: Word) -> Word:
    table = letter_table(g, w.alphabet)
    letters = [int(table[x]) for x in w.letters]
    if g.inv:
        letters.reverse()
    return Word(w.alphabet, tuple(letters), w.omega)


# -- template images -------------------------------------------------------------


def _inv_t(t: Template) -> Template:
    p = t.perm
    links = tuple(-t.link(p[i - 1], p[j - 1]) for i, j in colex_pairs(t.n))
    return Template(perm_inverse(p), links)


def _theta_t(t: Template) -> Template:
    return Template(t.perm, tuple(-v for v in t.links))


def _flip_t(t: Template) -> Template:
    n, p = t.n, t.perm
    perm = tuple(n + 1 - p[n - k] for k in range(1, n + 1))
    links = tuple(t.link(n + 1 - j, n + 1 - i) for i, j in colex_pairs(n))
    return Template(perm, links)


def _rot_t(t: Template) -> Template:
    n, p = t.n, t.perm
    perm = tuple(wrap(1 + p[wrap(k - 1, n) - 1], n) for k in range(1, n + 1))
    # position where the strand ending at n lands after conjugation; the closing
    # delta^-1 unlinks it from every other strand, whichever index of the pair it is
    last = wrap(1 + p[n - 1], n)
    links = tuple(
        t.link(wrap(i - 1, n), wrap(j - 1, n)) + (i == 1) - (last in (i, j)) for i, j in colex_pairs(n)
    )
    return Template(perm, links)


def map_template(g: SymmetryElement, t: Template) -> Template:
    perm, rule = _affine(g, t.perm)
    L = t.links
    return Template._trusted(perm, tuple(s * L[i] + o for i, s, o in rule))


@lru_cache(maxsize=None)
def _affine(g: SymmetryElement, perm) -> tuple:
    """Every template map is affine in the links for a fixed permutation.

    Returns the image permutation and ``(source index, sign, offset)`` per image link,
    read off from the images of the zero and unit link vectors.
    """
    n = len(perm)
    k = n * (n - 1) // 2
    base = _map_template_direct(g, Template(perm, (0,) * k))
    rule = []
    units = [_map_template_direct(g, Template(perm, tuple(int(a == b) for a in range(k)))) for b in range(k)]
    for out in range(k):
        off = base.links[out]
        hits = [(b, u.links[out] - off) for b, u in enumerate(units) if u.links[out] != off]
        if len(hits) != 1 or abs(hits[0][1]) != 1:
            raise AssertionError("template map is not a signed coordinate permutation")
        rule.append((hits[0][0], hits[0][1], off))
    return base.perm, tuple(rule)


def _map_template_direct(g: SymmetryElement, t: Template) -> Template:
    if g.kind is Kind.DUAL and (g.theta or g.flip):
        raise ValueError("theta and Phi are not stable on dual words")
    if g.kind is Kind.ARTIN and g.rot:
        raise ValueError("phi acts on dual words only")
    if t.n == 2:
        # Phi and phi are trivial on two strands
        return _inv_t(t) if g.inv else t
    for _ in range(g.rot):
        t = _rot_t(t)
    if g.flip:
        t = _flip_t(t)
    if g.theta:
        t = _theta_t(t)
    if g.inv:
        t = _inv_t(t)
    return t


def sort_key(t: Template) -> tuple:
    """Total order: permutations co-lex on their image tuples, then links lexicographically."""
    return (t.perm[::-1], t.links)


def template_compare(a: Template, b: Template) -> int:
    ka, kb = sort_key(a), sort_key(b)
    return (ka > kb) - (ka < kb)


def orbit(t: Template, alphabet: Alphabet) -> set[Template]:
    return {map_template(g, t) for g in group(alphabet)}


def reduce(t: Template, alphabet: Alphabet) -> tuple[Template, SymmetryElement]:
    """Minimal element of the orbit of ``t`` and the first group element reaching it."""
    best = best_g = None
    for g in group(alphabet):
        img = map_template(g, t)
        if best is None or sort_key(img) < sort_key(best):
            best, best_g = img, g
    return best, best_g


def is_reduced(t: Template, alphabet: Alphabet) -> bool:
    return reduce(t, alphabet)[0] == t
