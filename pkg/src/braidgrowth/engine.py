"""Level-by-level construction of geodesic representative sets.

``rep_set`` is the unpartitioned step (all braids of one length at once).
``temp_rep_set`` does the same for a single template class, reading the two
previous levels from a :class:`~braidgrowth.store.Store`.  :class:`Enumeration`
drives whole runs, either over every template (``combi``) or over reduced
templates only (``red-combi``), with a manifest that makes runs resumable.
"""

from __future__ import annotations

import logging
import time
import uuid
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import MemoryCapError, OmegaOverflowError, StoreError
from .store import RepSet, RunManifest, Store, TemplateRecord, checked_sum
from .symmetry import SymmetryElement, group, inverse_element, map_letters, map_template, orbit, reduce, sort_key
from .templates import Template, template_extend
from .dynnikov import dynnikov_array
from .words import UINT64_MAX, Alphabet, Kind

log = logging.getLogger(__name__)

MODES = ("red-combi", "combi")


# -- deduplication core ---------------------------------------------------------------


def _dedupe(prev2_coords: np.ndarray, cand_coords: np.ndarray, cand_omega: np.ndarray):
    """Group candidates by coordinates, dropping groups that meet a shorter braid.

    Returns ``(rep_index, coords, omega)`` for the surviving braids, sorted by
    coordinates; ``rep_index`` is the smallest candidate index in each group.
    """
    k2 = prev2_coords.shape[0]
    allc = np.concatenate([prev2_coords, cand_coords]) if k2 else cand_coords
    total = allc.shape[0]
    if total == 0:
        return np.zeros(0, np.intp), cand_coords[:0], np.zeros(0, np.uint64)
    tags = np.concatenate([np.zeros(k2, np.int8), np.ones(cand_coords.shape[0], np.int8)])
    idx = np.arange(total)
    order = np.lexsort((idx, tags, *allc.T[::-1]))
    sc = allc[order]
    new = np.ones(total, dtype=bool)
    new[1:] = np.any(sc[1:] != sc[:-1], axis=1)
    starts = np.flatnonzero(new)
    keep = tags[order][starts] == 1
    omega_all = np.concatenate([np.zeros(k2, np.uint64), cand_omega])[order]
    sums = _group_sums(omega_all, starts)
    rep = order[starts][keep] - k2
    return rep, sc[starts][keep], sums[keep]


def _group_sums(values: np.ndarray, starts: np.ndarray) -> np.ndarray:
    if values.size == 0:
        return np.zeros(0, np.uint64)
    sums = np.add.reduceat(values, starts)
    approx = np.add.reduceat(values.astype(np.float64), starts)
    risky = np.flatnonzero(approx >= 2.0**62)
    if risky.size:
        ends = np.append(starts[1:], values.size)
        for g in risky:
            exact = sum(int(v) for v in values[starts[g] : ends[g]])
            if exact > UINT64_MAX:
                raise OmegaOverflowError(f"omega {exact} exceeds 2**64 - 1")
    return sums


def _extend(alphabet: Alphabet, rep: RepSet, x: int):
    """Letters, coordinates and omega of ``u x`` for every ``u`` in ``rep``."""
    m = len(rep)
    col = np.full((m, 1), x, dtype=np.uint8)
    coords = dynnikov_array(col, alphabet, start=rep.coords, offset=rep.length)
    return np.hstack([rep.letters, col]), coords, rep.omega


def rep_set(prev: RepSet, prev2: RepSet) -> RepSet:
    """Representative set of the next length from those of the two previous lengths.

    Works on whole spheres (``template`` may be ``None``) or on single template classes.
    """
    alphabet = prev.alphabet
    length = prev.length + 1
    letters, coords, omegas = [], [], []
    for x in range(alphabet.size):
        if len(prev):
            lx, cx, ox = _extend(alphabet, prev, x)
            letters.append(lx)
            coords.append(cx)
            omegas.append(ox)
    if not letters:
        return RepSet(alphabet, length, prev.template, np.zeros((0, length), np.uint8), np.zeros(0, np.uint64))
    L = np.concatenate(letters)
    C = np.concatenate(coords)
    O = np.concatenate(omegas)
    rep, rc, ro = _dedupe(prev2.coords if len(prev2) else C[:0], C, O)
    return RepSet(alphabet, length, prev.template, L[rep], ro, rc)


def sphere_levels(alphabet: Alphabet, max_len: int) -> list[RepSet]:
    """Unpartitioned representative sets for every length ``0..max_len`` (in memory)."""
    eps = RepSet(alphabet, 0, None, np.zeros((1, 0), np.uint8), np.ones(1, np.uint64))
    none = RepSet(alphabet, 0, None, np.zeros((0, 0), np.uint8), np.zeros(0, np.uint64))
    levels = [eps]
    for ell in range(1, max_len + 1):
        levels.append(rep_set(levels[-1], levels[-2] if ell >= 2 else none))
    return levels


# -- template classes ------------------------------------------------------------------


class Loader:
    """Reads representative sets of arbitrary templates, directly or from reduced files."""

    def __init__(self, store: Store, reduced: bool):
        self.store = store
        self.alphabet = store.alphabet
        self.reduced = reduced
        self._red: dict[Template, tuple[Template, SymmetryElement]] = {}

    def reduction(self, t: Template) -> tuple[Template, SymmetryElement]:
        r = self._red.get(t)
        if r is None:
            if len(self._red) > 200_000:
                self._red.clear()
            r = self._red[t] = reduce(t, self.alphabet)
        return r

    def count(self, level: int, t: Template) -> int:
        if level < 0:
            return 0
        if self.reduced:
            t = self.reduction(t)[0]
        return self.store.count(level, t)

    def load(self, level: int, t: Template) -> RepSet:
        if level < 0:
            return RepSet.empty(self.alphabet, 0, t)
        if not self.reduced:
            return self.store.load(level, t)
        return load_from_red(self.store, level, t, self.reduction(t))


def load_from_red(store: Store, level: int, t: Template, reduction=None) -> RepSet:
    """Representative set of ``(level, t)`` rebuilt from the file of its reduced template."""
    tr, g = reduction or reduce(t, store.alphabet)
    rep = store.load(level, tr)
    if g == group(store.alphabet)[0] or len(rep) == 0:
        return RepSet(rep.alphabet, level, t, rep.letters, rep.omega, rep._coords)
    ginv = inverse_element(g, store.alphabet.n)
    return RepSet(rep.alphabet, level, t, map_letters(ginv, rep.alphabet, rep.letters), rep.omega)


BYTES_PER_CANDIDATE_BASE = 64


def temp_rep_set(loader: Loader, level: int, t: Template, mem_cap: int | None = None) -> tuple[RepSet, int]:
    """Representative set of the braids of length ``level`` and template ``t``.

    Returns the set and its geodesic count (sum of omega).  Missing files of the
    previous level count as empty sets.
    """
    alphabet = loader.alphabet
    if mem_cap is not None:
        need = sum(
            loader.count(level - 1, template_extend(t, alphabet, alphabet.inverse(x))) for x in range(alphabet.size)
        )
        need += loader.count(level - 2, t)
        est = need * (BYTES_PER_CANDIDATE_BASE + 24 * alphabet.n + level)
        if est > mem_cap:
            raise MemoryCapError(f"template {t} at length {level} needs ~{est} bytes, cap is {mem_cap}")
    prev2 = loader.load(level - 2, t)
    letters, coords, omegas = [], [], []
    for x in range(alphabet.size):
        tx = template_extend(t, alphabet, alphabet.inverse(x))
        prev = loader.load(level - 1, tx)
        if len(prev) == 0:
            continue
        lx, cx, ox = _extend(alphabet, prev, x)
        letters.append(lx)
        coords.append(cx)
        omegas.append(ox)
    if not letters:
        return RepSet.empty(alphabet, level, t), 0
    L = np.concatenate(letters)
    C = np.concatenate(coords)
    O = np.concatenate(omegas)
    p2 = prev2.coords if len(prev2) else C[:0]
    rep, rc, ro = _dedupe(p2, C, O)
    result = RepSet(alphabet, level, t, L[rep], ro, rc)
    return result, result.omega_sum()


# -- worker plumbing ---------------------------------------------------------------------

_WORKER: dict = {}


def _init_worker(root, alphabet, reduced, shard_depth, mem_cap):
    store = Store(root, alphabet, shard_depth)
    _WORKER["loader"] = Loader(store, reduced)
    _WORKER["mem_cap"] = mem_cap


def _run_task(args):
    level, t = args
    loader: Loader = _WORKER["loader"]
    rep, ngeo = temp_rep_set(loader, level, t, _WORKER["mem_cap"])
    checksum = None
    if len(rep):
        checksum, _ = loader.store.save(rep)
    return t, len(rep), ngeo, checksum


# -- driver ------------------------------------------------------------------------------


@dataclass
class LevelCounts:
    length: int
    s: int
    g: int


class Enumeration:
    """A resumable enumeration run rooted at one store directory."""

    def __init__(
        self,
        alphabet: Alphabet,
        root,
        mode: str = "red-combi",
        workers: int = 1,
        mem_cap: int | None = None,
        shard_depth: int = 1,
        checkpoint_every: int = 512,
    ):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        if workers < 1:
            raise ValueError("need at least one worker")
        self.alphabet = alphabet
        self.root = Path(root)
        self.mode = mode
        self.reduced = mode == "red-combi"
        self.workers = workers
        self.mem_cap = mem_cap
        self.shard_depth = shard_depth
        self.checkpoint_every = checkpoint_every
        self.store = Store(self.root, alphabet, shard_depth)
        self._orbit_size: dict[Template, int] = {}

    # manifest handling

    def _fresh_manifest(self) -> RunManifest:
        return RunManifest(n=self.alphabet.n, kind=self.alphabet.kind, mode=self.mode, run_id=uuid.uuid4().hex)

    def open_manifest(self, resume: bool) -> RunManifest:
        existing = RunManifest.load(self.root)
        if existing is None:
            return self._fresh_manifest()
        if not resume:
            raise StoreError(self.root / RunManifest.FILENAME, "store already holds a run; resume it or use an empty directory")
        if (existing.n, Kind(existing.kind), existing.mode) != (self.alphabet.n, self.alphabet.kind, self.mode):
            raise StoreError(self.root / RunManifest.FILENAME, "manifest was written for a different configuration")
        self._verify(existing)
        return existing

    def _verify(self, man: RunManifest):
        """Check every file the continuation will read against its manifest checksum."""
        first = max(0, man.completed_levels - 1)
        for ell, recs in man.levels.items():
            if ell < first:
                continue
            for key, rec in recs.items():
                if rec.checksum is not None:
                    self.store.verify(ell, Template.decode(bytes.fromhex(key), self.alphabet.n), rec.checksum)

    def orbit_size(self, t: Template) -> int:
        if not self.reduced:
            return 1
        k = self._orbit_size.get(t)
        if k is None:
            k = self._orbit_size[t] = len(orbit(t, self.alphabet))
        return k

    # candidate generation

    def candidates(self, previous: list[Template]) -> list[Template]:
        alphabet = self.alphabet
        out = set()
        if not self.reduced:
            for t in previous:
                for x in range(alphabet.size):
                    out.add(template_extend(t, alphabet, x))
        else:
            seen = set()
            for tr in previous:
                for t in orbit(tr, alphabet):
                    for x in range(alphabet.size):
                        c = template_extend(t, alphabet, x)
                        if c in seen:
                            continue
                        seen.add(c)
                        if reduce(c, alphabet)[0] == c:
                            out.add(c)
        return sorted(out, key=sort_key)

    # main loop

    def run(self, max_len: int, resume: bool = False, on_task=None) -> tuple[list[int], list[int]]:
        """Enumerate up to ``max_len``; returns ``(s, g)`` for lengths ``0..max_len``.

        ``on_task(level, template, done)`` is called after each finished template.
        """
        man = self.open_manifest(resume)
        self.root.mkdir(parents=True, exist_ok=True)
        if man.completed_levels < 0:
            ident = Template.identity(self.alphabet.n)
            eps = RepSet(self.alphabet, 0, ident, np.zeros((1, 0), np.uint8), np.ones(1, np.uint64))
            cs, _ = self.store.save(eps)
            man.levels[0] = {ident.encode().hex(): TemplateRecord(1, 1, cs)}
            man.s, man.g, man.completed_levels = [1], [1], 0
            man.save(self.root)
        for level in range(man.completed_levels + 1, max_len + 1):
            self._run_level(man, level, on_task)
        return man.s[: max_len + 1], man.g[: max_len + 1]

    def _run_level(self, man: RunManifest, level: int, on_task):
        t0 = time.monotonic()
        n = self.alphabet.n
        prev = [Template.decode(bytes.fromhex(k), n) for k, r in man.levels[level - 1].items() if r.count > 0]
        todo = self.candidates(prev)
        done = man.level(level)
        pending = [t for t in todo if t.encode().hex() not in done]
        log.info("length %d: %d candidate templates, %d already done", level, len(todo), len(todo) - len(pending))
        since = 0
        for t, count, ngeo, checksum in self._execute(level, pending):
            done[t.encode().hex()] = TemplateRecord(count, ngeo, checksum)
            since += 1
            if since >= self.checkpoint_every:
                man.save(self.root)
                since = 0
            if on_task is not None:
                on_task(level, t, len(done))
        s = g = 0
        for key, rec in done.items():
            if rec.count:
                mult = self.orbit_size(Template.decode(bytes.fromhex(key), n))
                s += rec.count * mult
                g += rec.omega_sum * mult
        if g > UINT64_MAX or s > UINT64_MAX:
            raise OmegaOverflowError(f"level {level} totals exceed 64 bits (s={s}, g={g})")
        # drop zero records: they only matter while the level is in progress
        man.levels[level] = {k: r for k, r in done.items() if r.count}
        man.s = man.s[:level] + [s]
        man.g = man.g[:level] + [g]
        man.completed_levels = level
        man.save(self.root)
        log.info("length %d: s=%d g=%d (%d templates, %.1fs)", level, s, g, len(man.levels[level]), time.monotonic() - t0)

    def _execute(self, level: int, templates: list[Template]):
        init = (self.root, self.alphabet, self.reduced, self.shard_depth, self.mem_cap)
        tasks = [(level, t) for t in templates]
        if self.workers == 1 or len(tasks) < 2:
            _init_worker(*init)
            yield from map(_run_task, tasks)
            return
        with ProcessPoolExecutor(self.workers, initializer=_init_worker, initargs=init) as pool:
            chunk = max(1, min(64, len(tasks) // (8 * self.workers)))
            yield from pool.map(_run_task, tasks, chunksize=chunk)


def combi(alphabet: Alphabet, root, max_len: int, **kwargs) -> tuple[list[int], list[int]]:
    return Enumeration(alphabet, root, mode="combi", **kwargs).run(max_len)


def red_combi(alphabet: Alphabet, root, max_len: int, **kwargs) -> tuple[list[int], list[int]]:
    return Enumeration(alphabet, root, mode="red-combi", **kwargs).run(max_len)


def template_counts(root, alphabet: Alphabet, level: int, mode: str = "red-combi") -> dict[Template, int]:
    """Per-template braid counts of a finished level, expanded to full orbits in reduced mode."""
    man = RunManifest.load(root)
    if man is None or man.completed_levels < level:
        raise StoreError(Path(root) / RunManifest.FILENAME, f"length {level} has not been enumerated")
    out = {}
    for key, rec in man.levels[level].items():
        t = Template.decode(bytes.fromhex(key), alphabet.n)
        if mode == "red-combi":
            for img in orbit(t, alphabet):
                out[img] = rec.count
        else:
            out[t] = rec.count
    return out


__all__ = [
    "Enumeration",
    "LevelCounts",
    "Loader",
    "combi",
    "load_from_red",
    "map_template",
    "red_combi",
    "rep_set",
    "sphere_levels",
    "temp_rep_set",
    "template_counts",
]
