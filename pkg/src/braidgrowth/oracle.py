"""Brute-force reference enumeration.

Breadth-first search over the Cayley graph, with braids identified by their
Dynnikov coordinates.  Deliberately shares nothing with the engine except the
coordinate action: no templates module, no representative-set files, no numpy.
Templates are computed here by following strands through the Artin expansion.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .dynnikov import act
from .errors import BraidGrowthError
from .words import Alphabet, Kind


class NodeCapError(BraidGrowthError):
    """The search would hold more braids than the configured cap."""


@dataclass
class OracleResult:
    alphabet: Alphabet
    s: list[int] = field(default_factory=list)
    g: list[int] = field(default_factory=list)
    # coordinates -> (length, omega, first geodesic word found)
    braids: dict = field(default_factory=dict)
    # length -> {(perm, links): count}
    templates: dict = field(default_factory=dict)


def _artin_expansion(alphabet: Alphabet, x: int) -> list[tuple[int, int]]:
    """Letter as a list of ``(i, e)`` for sigma_i^e."""
    base, e = alphabet.letter(x)
    if alphabet.kind is Kind.ARTIN:
        return [(base, e)]
    p, q = base
    up = [(k, 1) for k in range(p, q - 1)]
    down = [(k, -1) for k in range(q - 2, p - 1, -1)]
    return up + [(q - 1, e)] + down


def strand_template(alphabet: Alphabet, letters) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(perm, links)`` of a word by following its strands.

    ``perm[i-1]`` is the start position of the strand ending at ``i``; the link of
    strands started at ``i < j`` (co-lex order) sums the signs of their crossings.
    """
    n = alphabet.n
    at = list(range(1, n + 1))  # at[pos-1] = start label of the strand now at pos
    link = defaultdict(int)
    for x in letters:
        for i, e in _artin_expansion(alphabet, x):
            a, b = at[i - 1], at[i]
            link[(min(a, b), max(a, b))] += e
            at[i - 1], at[i] = b, a
    pairs = [(i, j) for j in range(2, n + 1) for i in range(1, j)]
    return tuple(at), tuple(link[p] for p in pairs)


def bfs_enumerate(n: int, kind, max_len: int, node_cap: int | None = 5_000_000) -> OracleResult:
    kind = Kind(kind)
    alphabet = Alphabet(n, kind)
    start = tuple((0, 1) * n)
    res = OracleResult(alphabet)
    depth = {start: 0}
    frontier = {start: [1, ()]}
    res.braids[start] = (0, 1, ())
    res.s.append(1)
    res.g.append(1)
    res.templates[0] = {strand_template(alphabet, ()): 1}
    for ell in range(1, max_len + 1):
        nxt: dict = {}
        for coords, (omega, word) in frontier.items():
            for x in range(alphabet.size):
                c = tuple(act(coords, alphabet, [x]))
                if c in depth:
                    continue
                entry = nxt.get(c)
                if entry is None:
                    nxt[c] = [omega, word + (x,)]
                else:
                    entry[0] += omega
        if node_cap is not None and len(depth) + len(nxt) > node_cap:
            raise NodeCapError(f"more than {node_cap} braids by length {ell}")
        counts: dict = defaultdict(int)
        for c, (omega, word) in nxt.items():
            depth[c] = ell
            res.braids[c] = (ell, omega, word)
            counts[strand_template(alphabet, word)] += 1
        res.s.append(len(nxt))
        res.g.append(sum(v[0] for v in nxt.values()))
        res.templates[ell] = dict(counts)
        frontier = nxt
    return res
