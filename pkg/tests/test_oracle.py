from __future__ import annotations

import pytest

from braidgrowth.oracle import NodeCapError, bfs_enumerate, strand_template
from braidgrowth.symmetry import orbit
from braidgrowth.templates import Template
from braidgrowth.words import Alphabet, Kind


def test_b3_dual_length_three():
    res = bfs_enumerate(3, "dual", 3)
    assert (res.s[3], res.g[3]) == (54, 126)


def test_b4_dual_length_two():
    res = bfs_enumerate(4, Kind.DUAL, 2)
    assert (res.s[2], res.g[2]) == (84, 132)


@pytest.mark.parametrize("n,kind", [(2, "artin"), (3, "artin"), (4, "dual"), (5, "dual")])
def test_length_one(n, kind):
    res = bfs_enumerate(n, kind, 1)
    size = Alphabet(n, Kind(kind)).size
    assert res.s == [1, size] and res.g == [1, size]


def test_b2_is_cyclic():
    res = bfs_enumerate(2, "artin", 6)
    assert res.s == [1] + [2] * 6 and res.g == res.s


def test_omega_sums_to_g():
    res = bfs_enumerate(3, "artin", 5)
    for ell in range(6):
        assert sum(om for (d, om, _) in res.braids.values() if d == ell) == res.g[ell]
        assert sum(res.templates[ell].values()) == res.s[ell]


@pytest.mark.parametrize("n,kind", [(3, "artin"), (3, "dual"), (4, "artin"), (4, "dual")])
def test_template_counts_constant_on_orbits(n, kind):
    alphabet = Alphabet(n, Kind(kind))
    res = bfs_enumerate(n, kind, 4 if n == 4 else 6)
    for ell, counts in res.templates.items():
        for (perm, links), c in counts.items():
            for img in orbit(Template(perm, links), alphabet):
                assert counts[(img.perm, img.links)] == c


def test_strand_template_of_a_dual_letter():
    a = Alphabet.dual(4)
    perm, links = strand_template(a, [a.index((1, 3), 1)])
    assert perm == (3, 2, 1, 4)
    assert links == (1, 1, -1, 0, 0, 0)


def test_node_cap():
    with pytest.raises(NodeCapError):
        bfs_enumerate(4, "dual", 5, node_cap=1000)
