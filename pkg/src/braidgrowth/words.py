"""Generator alphabets, braid words and their byte packing.

Letters are small integers.  For an alphabet with ``2h`` letters the positive
generators occupy ``0..h-1`` (Artin: sigma_1..sigma_{n-1}; dual: a_pq in
co-lex order of (p, q)) and their inverses follow in the same order, so the
inverse of letter ``i`` is ``(i + h) % 2h``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache

import numpy as np

UINT64_MAX = (1 << 64) - 1


class Kind(str, Enum):
    ARTIN = "artin"
    DUAL = "dual"


def colex_pairs(n: int) -> list[tuple[int, int]]:
    """Pairs ``(p, q)`` with ``1 <= p < q <= n`` in co-lex order: (1,2), (1,3), (2,3), (1,4), ..."""
    return [(p, q) for q in range(2, n + 1) for p in range(1, q)]


@lru_cache(maxsize=None)
def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {pq: k for k, pq in enumerate(colex_pairs(n))}


def pair_index(n: int, i: int, j: int) -> int:
    """Position of the unordered pair {i, j} in the co-lex enumeration."""
    if i > j:
        i, j = j, i
    return _pair_index(n)[(i, j)]


@dataclass(frozen=True)
class Alphabet:
    n: int
    kind: Kind

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need at least 2 strands, got {self.n}")
        object.__setattr__(self, "kind", Kind(self.kind))

    @classmethod
    def artin(cls, n: int) -> Alphabet:
        return cls(n, Kind.ARTIN)

    @classmethod
    def dual(cls, n: int) -> Alphabet:
        return cls(n, Kind.DUAL)

    @cached_property
    def bases(self) -> list:
        """Base generator ids of the positive letters: ``i`` for sigma_i, ``(p, q)`` for a_pq."""
        if self.kind is Kind.ARTIN:
            return list(range(1, self.n))
        return colex_pairs(self.n)

    @property
    def half(self) -> int:
        return len(self.bases)

    @property
    def size(self) -> int:
        return 2 * self.half

    def __len__(self):
        return self.size

    def letter(self, index: int) -> tuple:
        """``(base id, sign)`` of a letter index."""
        if not 0 <= index < self.size:
            raise ValueError(f"letter {index} out of range for {self}")
        return self.bases[index % self.half], (1 if index < self.half else -1)

    def index(self, base, sign: int = 1) -> int:
        if self.kind is Kind.DUAL:
            p, q = base
            if p > q:
                p, q = q, p
            base = (p, q)
        k = self.bases.index(base)
        return k if sign > 0 else k + self.half

    def inverse(self, index: int) -> int:
        return (index + self.half) % self.size

    @cached_property
    def inverse_table(self) -> np.ndarray:
        return np.array([self.inverse(i) for i in range(self.size)], dtype=np.uint8)

    @cached_property
    def letters_per_byte(self) -> int:
        """Largest ``k`` with ``size**k <= 256``."""
        if self.size > 256:
            raise ValueError(f"alphabet of size {self.size} cannot be byte-packed")
        k = 1
        while self.size ** (k + 1) <= 256:
            k += 1
        return k

    def packed_size(self, length: int) -> int:
        return math.ceil(length / self.letters_per_byte)

    def name(self, index: int) -> str:
        base, sign = self.letter(index)
        exp = "" if sign > 0 else "^-1"
        if self.kind is Kind.ARTIN:
            return f"s{base}{exp}"
        return f"a{base[0]}{base[1]}{exp}"

    def __str__(self):
        return f"{self.kind.value}(n={self.n})"


@dataclass(frozen=True)
class Word:
    """A word over an alphabet; ``omega`` counts the geodesic words of its braid when the
    word sits in a representative set."""

    alphabet: Alphabet
    letters: tuple[int, ...] = ()
    omega: int = field(default=1, compare=False)

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if not 0 <= x < self.alphabet.size:
                raise ValueError(f"letter {x} out of range for {self.alphabet}")
        if not 0 <= self.omega <= UINT64_MAX:
            raise ValueError(f"omega {self.omega} does not fit in 64 bits")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> Word:
        """Parse ``"s1 s2^-1"`` or ``"a13^-1 a24"`` style words; ``""`` or ``"e"`` is the empty word."""
        letters = []
        for tok in text.replace(",", " ").split():
            if tok in ("e", "1"):
                continue
            sign = 1
            if tok.endswith("^-1"):
                sign, tok = -1, tok[:-3]
            elif tok.endswith("'"):
                sign, tok = -1, tok[:-1]
            head, digits = tok[0], tok[1:]
            if alphabet.kind is Kind.ARTIN and head == "s":
                letters.append(alphabet.index(int(digits), sign))
            elif alphabet.kind is Kind.DUAL and head == "a":
                if "," in digits or len(digits) != 2:
                    raise ValueError(f"cannot parse dual letter {tok!r}")
                letters.append(alphabet.index((int(digits[0]), int(digits[1])), sign))
            else:
                raise ValueError(f"cannot parse {tok!r} as a letter of {alphabet}")
        return cls(alphabet, tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: Word) -> Word:
        if other.alphabet != self.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.letters + other.letters)

    def inverse(self) -> Word:
        inv = self.alphabet.inverse
        return Word(self.alphabet, tuple(inv(x) for x in reversed(self.letters)))

    def __str__(self):
        if not self.letters:
            return "e"
        return " ".join(self.alphabet.name(x) for x in self.letters)


@lru_cache(maxsize=None)
def dual_expansion(n: int) -> tuple[tuple[int, ...], ...]:
    """Artin letter indices of each dual letter, indexed like ``Alphabet.dual(n)``.

    ``a_pq = s_p ... s_{q-2} s_{q-1} s_{q-2}^-1 ... s_p^-1`` and ``a_pq^-1`` only flips the
    middle letter.
    """
    artin, dual = Alphabet.artin(n), Alphabet.dual(n)
    out = []
    for idx in range(dual.size):
        (p, q), sign = dual.letter(idx)
        head = [artin.index(k, 1) for k in range(p, q - 1)]
        tail = [artin.index(k, -1) for k in reversed(range(p, q - 1))]
        out.append(tuple(head + [artin.index(q - 1, sign)] + tail))
    return tuple(out)


def dual_to_artin(w: Word) -> Word:
    if w.alphabet.kind is Kind.ARTIN:
        return w
    expansion = dual_expansion(w.alphabet.n)
    letters = tuple(a for x in w.letters for a in expansion[x])
    return Word(Alphabet.artin(w.alphabet.n), letters, w.omega)


# -- packing -----------------------------------------------------------------


def pack_letters(letters: np.ndarray, alphabet: Alphabet) -> np.ndarray:
    """Pack an ``(m, length)`` letter array into ``(m, ceil(length / k))`` bytes, base ``|S|``
    little-endian within each byte; unused trailing slots are zero."""
    letters = np.asarray(letters, dtype=np.uint16)
    m, length = letters.shape
    k = alphabet.letters_per_byte
    nbytes = alphabet.packed_size(length)
    padded = np.zeros((m, nbytes * k), dtype=np.uint16)
    padded[:, :length] = letters
    padded = padded.reshape(m, nbytes, k)
    weights = (alphabet.size ** np.arange(k)).astype(np.uint16)
    return (padded * weights).sum(axis=2).astype(np.uint8)


def unpack_letters(packed: np.ndarray, length: int, alphabet: Alphabet) -> np.ndarray:
    """Inverse of :func:`pack_letters`; rejects bytes that do not encode a letter tuple."""
    packed = np.asarray(packed, dtype=np.uint16)
    m, nbytes = packed.shape
    k = alphabet.letters_per_byte
    if nbytes != alphabet.packed_size(length):
        raise ValueError(f"{nbytes} bytes cannot hold a length-{length} word over {alphabet}")
    if m and nbytes:
        limit = np.full(nbytes, alphabet.size ** k, dtype=np.int64)
        used_last = length - (nbytes - 1) * k
        limit[-1] = alphabet.size ** used_last
        if np.any(packed >= limit):
            raise ValueError(f"byte value out of range for {alphabet}")
    out = np.empty((m, nbytes, k), dtype=np.uint8)
    rest = packed.copy()
    for slot in range(k):
        out[:, :, slot] = rest % alphabet.size
        rest //= alphabet.size
    return out.reshape(m, nbytes * k)[:, :length]


def pack_word(w: Word) -> bytes:
    arr = np.array([w.letters], dtype=np.uint8).reshape(1, len(w))
    return pack_letters(arr, w.alphabet).tobytes()


def unpack_word(data: bytes, length: int, alphabet: Alphabet, omega: int = 1) -> Word:
    arr = np.frombuffer(bytes(data), dtype=np.uint8).reshape(1, -1)
    letters = unpack_letters(arr, length, alphabet)[0]
    return Word(alphabet, tuple(int(x) for x in letters), omega)
