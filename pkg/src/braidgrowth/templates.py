"""Braid templates: underlying permutation plus all pairwise linking numbers.

A permutation is stored as the tuple ``(p(1), ..., p(n))`` where ``p(i)`` is the
start position of the strand ending at position ``i``.  Linking numbers are kept
in co-lex pair order (1,2), (1,3), (2,3), (1,4), ...
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import lru_cache

from .words import Alphabet, Kind, Word, colex_pairs, pair_index

Permutation = tuple


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def perm_inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return tuple(inv)


def perm_compose(p: Permutation, q: Permutation) -> Permutation:
    """``p o q``: first ``q``, then ``p``."""
    return tuple(p[v - 1] for v in q)


def transposition(n: int, i: int, j: int) -> Permutation:
    p = list(range(1, n + 1))
    p[i - 1], p[j - 1] = j, i
    return tuple(p)


def from_cycles(n: int, *cycles) -> Permutation:
    """Permutation from cycle notation, e.g. ``from_cycles(4, (1, 2, 3))`` sends 1->2->3->1."""
    p = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a - 1] = b
    return tuple(p)


@dataclass(frozen=True, order=False)
class Template:
    perm: Permutation
    links: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError(f"{self.perm} is not a permutation of 1..{n}")
        if len(self.links) != n * (n - 1) // 2:
            raise ValueError(f"expected {n * (n - 1) // 2} linking numbers, got {len(self.links)}")

    @classmethod
    def _trusted(cls, perm, links) -> Template:
        # skips validation; for results of operations on valid templates
        t = object.__new__(cls)
        object.__setattr__(t, "perm", perm)
        object.__setattr__(t, "links", links)
        return t

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> Template:
        return cls(identity(n), (0,) * (n * (n - 1) // 2))

    def link(self, i: int, j: int) -> int:
        """``l_{i,j}`` with the symmetric convention ``l_{i,j} = l_{j,i}``."""
        return self.links[pair_index(self.n, i, j)]

    def encode(self) -> bytes:
        """Canonical bytes: n permutation images, then links as little-endian int32."""
        return bytes(self.perm) + struct.pack(f"<{len(self.links)}i", *self.links)

    @classmethod
    def decode(cls, data: bytes, n: int) -> Template:
        k = n * (n - 1) // 2
        if len(data) != n + 4 * k:
            raise ValueError(f"template encoding for n={n} must be {n + 4 * k} bytes, got {len(data)}")
        return cls(tuple(data[:n]), struct.unpack(f"<{k}i", data[n:]))

    def __str__(self):
        return f"({list(self.perm)}; {', '.join(map(str, self.links))})"


@lru_cache(maxsize=None)
def perm_of_letter(alphabet: Alphabet, x: int) -> Permutation:
    base, _ = alphabet.letter(x)
    if alphabet.kind is Kind.ARTIN:
        return transposition(alphabet.n, base, base + 1)
    return transposition(alphabet.n, *base)


def linking_of_letter(alphabet: Alphabet, x: int, i: int, j: int) -> int:
    if not 1 <= i < j <= alphabet.n:
        raise ValueError(f"need 1 <= i < j <= {alphabet.n}, got ({i}, {j})")
    base, e = alphabet.letter(x)
    if alphabet.kind is Kind.ARTIN:
        return e if (i == base and j == base + 1) else 0
    p, q = base
    if i == p and j == q:
        return e
    if i == p and j < q:
        return 1
    if p < i and j == q:
        return -1
    return 0


@lru_cache(maxsize=None)
def letter_links(alphabet: Alphabet, x: int) -> tuple[int, ...]:
    return tuple(linking_of_letter(alphabet, x, i, j) for i, j in colex_pairs(alphabet.n))


@lru_cache(maxsize=None)
def _pair_table(n: int):
    """``table[a][b]`` = co-lex index of {a, b} (1-based, a != b)."""
    t = [[-1] * (n + 1) for _ in range(n + 1)]
    for k, (i, j) in enumerate(colex_pairs(n)):
        t[i][j] = t[j][i] = k
    return t


@lru_cache(maxsize=None)
def _extend_step(alphabet: Alphabet, perm: Permutation, x: int):
    """New permutation and per-pair link increments for appending ``x``."""
    inv = perm_inverse(perm)
    lx = letter_links(alphabet, x)
    table = _pair_table(alphabet.n)
    incr = tuple(lx[table[inv[i - 1]][inv[j - 1]]] for i, j in colex_pairs(alphabet.n))
    return perm_compose(perm, perm_of_letter(alphabet, x)), incr


def template_extend(t: Template, alphabet: Alphabet, x: int) -> Template:
    """Template of ``beta . x`` from the template of ``beta``."""
    if t.n != alphabet.n:
        raise ValueError("template and alphabet disagree on the strand count")
    perm, incr = _extend_step(alphabet, t.perm, x)
    return Template._trusted(perm, tuple(a + b for a, b in zip(t.links, incr)))


def template_of_word(w: Word) -> Template:
    t = Template.identity(w.alphabet.n)
    for x in w.letters:
        t = template_extend(t, w.alphabet, x)
    return t
