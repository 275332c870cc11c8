"""Dynnikov coordinates: the action of B_n on Z^{2n} used as the braid equality oracle.

Two code paths compute the same action:

* a scalar path on Python integers that follows the update formulas term by term
  and checks every intermediate value against the signed 64-bit range;
* a vectorised numpy path over ``(m, 2n)`` int64 arrays used by the engine.  It
  runs while every coordinate is bounded by ``2**60`` (so no term of a step can
  wrap) and otherwise recomputes the batch on the scalar path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CoordinateOverflowError
from .words import Alphabet, Kind, Word, dual_expansion

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1
# inputs bounded by 2**60 keep every term of one step below 7 * 2**60 < 2**63
SAFE_BOUND = 1 << 60


@dataclass(frozen=True)
class DynnikovCoords:
    n: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} coordinates, got {len(self.coords)}")

    @classmethod
    def base(cls, n: int) -> DynnikovCoords:
        return cls(n, (0, 1) * n)

    def __iter__(self):
        return iter(self.coords)


def _chk(v: int, position) -> int:
    if v < INT64_MIN or v > INT64_MAX:
        raise CoordinateOverflowError(position)
    return v


def _pos(x):
    return x if x > 0 else 0


def _neg(x):
    return x if x < 0 else 0


def apply_sigma(q, sign: int, position=None) -> tuple[int, int, int, int]:
    """Image of ``(x1, y1, x2, y2)`` under sigma (``sign=+1``) or sigma^-1 (``sign=-1``)."""
    x1, y1, x2, y2 = (_chk(int(v), position) for v in q)
    c = lambda v: _chk(v, position)  # noqa: E731
    if sign > 0:
        t1 = c(c(c(x1 - _neg(y1)) - x2) + _pos(y2))
        return (
            c(c(x1 + _pos(y1)) + _pos(c(_pos(y2) - t1))),
            c(y2 - _pos(t1)),
            c(c(x2 + _neg(y2)) + _neg(c(_neg(y1) + t1))),
            c(y1 + _pos(t1)),
        )
    if sign < 0:
        t2 = c(c(c(x1 + _neg(y1)) - x2) - _pos(y2))
        return (
            c(c(x1 - _pos(y1)) - _pos(c(_pos(y2) + t2))),
            c(y2 + _neg(t2)),
            c(c(x2 - _neg(y2)) - _neg(c(_neg(y1) - t2))),
            c(y1 - _neg(t2)),
        )
    raise ValueError(f"sign must be +1 or -1, got {sign}")


def _artin_steps(alphabet: Alphabet, letters):
    """Yield ``(word position, generator i, sign)`` for the Artin letters acting on a word."""
    if alphabet.kind is Kind.ARTIN:
        for pos, x in enumerate(letters):
            base, sign = alphabet.letter(x)
            yield pos, base, sign
    else:
        artin = Alphabet.artin(alphabet.n)
        expansion = dual_expansion(alphabet.n)
        for pos, x in enumerate(letters):
            for a in expansion[x]:
                base, sign = artin.letter(a)
                yield pos, base, sign


def act(coords, alphabet: Alphabet, letters, offset: int = 0) -> list[int]:
    """Right action of a letter sequence on a coordinate vector (scalar, checked)."""
    c = [int(v) for v in coords]
    for pos, i, sign in _artin_steps(alphabet, letters):
        k = 2 * (i - 1)
        c[k : k + 4] = apply_sigma(c[k : k + 4], sign, position=pos + offset)
    return c


def dynnikov(w: Word) -> DynnikovCoords:
    n = w.alphabet.n
    return DynnikovCoords(n, tuple(act((0, 1) * n, w.alphabet, w.letters)))


def braids_equal(u: Word, v: Word) -> bool:
    if u.alphabet.n != v.alphabet.n:
        raise ValueError("words live in braid groups with different strand counts")
    return dynnikov(u) == dynnikov(v)


_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


def hash64(c: DynnikovCoords) -> int:
    """64-bit hash of coordinates.

    For ``n <= 4`` the byte ``rem(c_k, 256)`` of the k-th coordinate (order
    a1, b1, a2, b2, ...) sits at position ``256**k``; this is exactly the four-strand
    formula.  Larger ``n`` folds the same bytes with 64-bit FNV-1a.
    """
    rems = [v % 256 for v in c.coords]
    if c.n <= 4:
        return sum(r << (8 * k) for k, r in enumerate(rems))
    h = _FNV_OFFSET
    for r in rems:
        h = ((h ^ r) * _FNV_PRIME) & _MASK64
    return h


def hash64_array(coords: np.ndarray) -> np.ndarray:
    """Vectorised :func:`hash64` over the rows of an ``(m, 2n)`` int64 array."""
    coords = np.asarray(coords, dtype=np.int64)
    rems = (coords & 255).astype(np.uint64)
    m, width = rems.shape
    if width <= 8:
        out = np.zeros(m, dtype=np.uint64)
        for k in range(width):
            out |= rems[:, k] << np.uint64(8 * k)
        return out
    out = np.full(m, _FNV_OFFSET, dtype=np.uint64)
    with np.errstate(over="ignore"):
        for k in range(width):
            out = (out ^ rems[:, k]) * np.uint64(_FNV_PRIME)
    return out


# -- vectorised action ---------------------------------------------------------


@lru_cache(maxsize=None)
def _step_tables(alphabet: Alphabet):
    """Per-letter Artin step tables padded to a common width.

    Returns ``(gen, sign)`` arrays of shape ``(|S|, width)``; padding steps act on a
    scratch pair of blocks (generator index ``n + 1``) appended past the real coordinates.
    """
    n = alphabet.n
    artin = Alphabet.artin(n)
    if alphabet.kind is Kind.ARTIN:
        seqs = [(x,) for x in range(alphabet.size)]
    else:
        seqs = dual_expansion(n)
    width = max(len(s) for s in seqs)
    gen = np.full((alphabet.size, width), n + 1, dtype=np.intp)
    sign = np.ones((alphabet.size, width), dtype=np.int64)
    for x, seq in enumerate(seqs):
        for k, a in enumerate(seq):
            base, sg = artin.letter(a)
            gen[x, k] = base
            sign[x, k] = sg
    return gen, sign, width


def dynnikov_array(letters: np.ndarray, alphabet: Alphabet, start=None, offset: int = 0) -> np.ndarray:
    """Coordinates of every row of an ``(m, length)`` letter array.

    ``start`` optionally gives per-row starting coordinates (default: the base point).
    Raises :class:`CoordinateOverflowError` naming the word position (shifted by
    ``offset``, the length already applied) where a value leaves the signed 64-bit range.
    """
    letters = np.asarray(letters)
    m, length = letters.shape
    n = alphabet.n
    if start is not None:
        start = np.asarray(start)
        if start.dtype != np.int64 or (start.size and np.abs(start).max() > SAFE_BOUND):
            exact = [[int(v) for v in row] for row in start.reshape(m, 2 * n)]
            if any(abs(v) > SAFE_BOUND for row in exact for v in row):
                return _exact(letters, alphabet, exact, offset)
            start = np.array(exact, dtype=np.int64)
    C = np.empty((m, 2 * n + 4), dtype=np.int64)
    C[:, : 2 * n] = (0, 1) * n if start is None else start.reshape(m, 2 * n)
    C[:, 2 * n :] = (0, 1, 0, 1)
    if m == 0:
        return C[:, : 2 * n].copy()
    gen_t, sign_t, steps = _step_tables(alphabet)
    rows = np.arange(m)
    for pos in range(length):
        col = letters[:, pos]
        for s in range(steps):
            g = gen_t[col, s]
            sg = sign_t[col, s]
            k = 2 * (g - 1)
            # sigma^-1 is sigma conjugated by negating the x coordinates
            x1 = C[rows, k] * sg
            y1 = C[rows, k + 1]
            x2 = C[rows, k + 2] * sg
            y2 = C[rows, k + 3]
            y1m = np.minimum(y1, 0)
            y2p = np.maximum(y2, 0)
            t1 = x1 - y1m - x2 + y2p
            t1p = np.maximum(t1, 0)
            X1 = x1 + np.maximum(y1, 0) + np.maximum(y2p - t1, 0)
            X2 = x2 + np.minimum(y2, 0) + np.minimum(y1m + t1, 0)
            Y1 = y2 - t1p
            Y2 = y1 + t1p
            C[rows, k] = X1 * sg
            C[rows, k + 1] = Y1
            C[rows, k + 2] = X2 * sg
            C[rows, k + 3] = Y2
            if np.abs(C).max() > SAFE_BOUND:
                # rare: redo the batch exactly so overflow is reported, never wrapped
                base = [list((0, 1) * n)] * m if start is None else start.tolist()
                return _exact(letters, alphabet, base, offset)
    return C[:, : 2 * n].copy()


def _exact(letters, alphabet, start_rows, offset=0) -> np.ndarray:
    out = [act(start_rows[r], alphabet, [int(v) for v in letters[r]], offset) for r in range(letters.shape[0])]
    return np.array(out, dtype=np.int64).reshape(letters.shape[0], 2 * alphabet.n)
