"""On-disk representative sets and the run manifest.

File layout (little-endian)::

    magic "BGRS" | version u16 | n u8 | kind u8 | length u16 | template bytes u16 | count u64
    template encoding
    count records: packed word (ceil(length / k) bytes) + omega u64
    checksum u64 (blake2b-64 of everything above)

Records are sorted by Dynnikov coordinates so equal sets give byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
import os
import struct
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dynnikov import dynnikov_array
from .errors import OmegaOverflowError, StoreError
from .templates import Template
from .words import UINT64_MAX, Alphabet, Kind, Word, pack_letters, unpack_letters

MAGIC = b"BGRS"
VERSION = 1
HEADER = struct.Struct("<4sHBBHHQ")
_KIND_CODE = {Kind.ARTIN: 0, Kind.DUAL: 1}
_CODE_KIND = {v: k for k, v in _KIND_CODE.items()}


def checksum64(data: bytes) -> int:
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "little")


def checked_sum(values: np.ndarray) -> int:
    """Exact sum of uint64 values; raises if it does not fit in 64 bits."""
    total = sum(int(v) for v in values) if values.size < 64 else _fast_sum(values)
    if total > UINT64_MAX:
        raise OmegaOverflowError(f"geodesic count {total} exceeds 2**64 - 1")
    return total


def _fast_sum(values: np.ndarray) -> int:
    # float64 is accurate to ~1e-16 relative; only near the limit do we need exact ints
    approx = float(values.sum(dtype=np.float64))
    if approx < 2.0**62:
        return int(values.sum(dtype=np.uint64))
    return sum(int(v) for v in values)


@dataclass
class RepSet:
    """Representative words of one (length, template) class with their omega values."""

    alphabet: Alphabet
    length: int
    template: Template
    letters: np.ndarray
    omega: np.ndarray
    _coords: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.omega = np.asarray(self.omega, dtype=np.uint64).reshape(-1)
        self.letters = np.asarray(self.letters, dtype=np.uint8).reshape(self.omega.shape[0], self.length)
        if self.letters.shape[0] != self.omega.shape[0]:
            raise ValueError("letters and omega disagree on the number of entries")

    @classmethod
    def empty(cls, alphabet: Alphabet, length: int, template: Template) -> RepSet:
        return cls(alphabet, length, template, np.zeros((0, length), np.uint8), np.zeros(0, np.uint64))

    @classmethod
    def from_words(cls, words: list[Word], template: Template) -> RepSet:
        alphabet = words[0].alphabet
        length = len(words[0])
        letters = np.array([w.letters for w in words], dtype=np.uint8).reshape(len(words), length)
        omega = np.array([w.omega for w in words], dtype=np.uint64)
        return cls(alphabet, length, template, letters, omega)

    def __len__(self):
        return self.letters.shape[0]

    @property
    def coords(self) -> np.ndarray:
        if self._coords is None:
            self._coords = dynnikov_array(self.letters, self.alphabet)
        return self._coords

    def omega_sum(self) -> int:
        return checked_sum(self.omega)

    def words(self) -> list[Word]:
        return [Word(self.alphabet, tuple(int(x) for x in row), int(w)) for row, w in zip(self.letters, self.omega)]

    def sorted(self) -> RepSet:
        """Copy with entries in lexicographic order of their coordinates (then letters)."""
        c = self.coords
        order = np.lexsort((*self.letters.T[::-1], *c.T[::-1])) if len(self) else np.zeros(0, dtype=np.intp)
        return RepSet(self.alphabet, self.length, self.template, self.letters[order], self.omega[order], c[order])


# -- single files ------------------------------------------------------------------


def encode_repset(rep: RepSet) -> bytes:
    rep = rep.sorted()
    tbytes = rep.template.encode()
    head = HEADER.pack(MAGIC, VERSION, rep.alphabet.n, _KIND_CODE[rep.alphabet.kind], rep.length, len(tbytes), len(rep))
    packed = pack_letters(rep.letters, rep.alphabet)
    body = np.empty((len(rep), packed.shape[1] + 8), dtype=np.uint8)
    body[:, : packed.shape[1]] = packed
    body[:, packed.shape[1] :] = rep.omega.astype("<u8").view(np.uint8).reshape(-1, 8)
    data = head + tbytes + body.tobytes()
    return data + struct.pack("<Q", checksum64(data))


def record_size(alphabet: Alphabet, length: int) -> int:
    return alphabet.packed_size(length) + 8


def file_size(alphabet: Alphabet, length: int, count: int) -> int:
    n = alphabet.n
    return HEADER.size + n + 4 * (n * (n - 1) // 2) + count * record_size(alphabet, length) + 8


def decode_repset(data: bytes, path="<bytes>", expect_checksum: int | None = None) -> RepSet:
    if len(data) < HEADER.size + 8:
        raise StoreError(path, "truncated file")
    magic, version, n, kind, length, tlen, count = HEADER.unpack_from(data)
    if magic != MAGIC or version != VERSION:
        raise StoreError(path, "not a representative-set file")
    if kind not in _CODE_KIND:
        raise StoreError(path, f"unknown alphabet code {kind}")
    alphabet = Alphabet(n, _CODE_KIND[kind])
    rsize = record_size(alphabet, length)
    expected = HEADER.size + tlen + count * rsize + 8
    if len(data) != expected:
        raise StoreError(path, f"truncated or padded file: {len(data)} bytes, header implies {expected}")
    (stored,) = struct.unpack_from("<Q", data, len(data) - 8)
    actual = checksum64(data[:-8])
    if stored != actual or (expect_checksum is not None and expect_checksum != actual):
        raise StoreError(path, "checksum mismatch")
    try:
        template = Template.decode(data[HEADER.size : HEADER.size + tlen], n)
    except ValueError as exc:
        raise StoreError(path, f"bad template header: {exc}") from None
    body = np.frombuffer(data, dtype=np.uint8, count=count * rsize, offset=HEADER.size + tlen).reshape(count, rsize)
    nbytes = rsize - 8
    try:
        letters = unpack_letters(body[:, :nbytes], length, alphabet)
    except ValueError as exc:
        raise StoreError(path, f"corrupt word record: {exc}") from None
    omega = np.ascontiguousarray(body[:, nbytes:]).view("<u8").reshape(count).astype(np.uint64)
    return RepSet(alphabet, length, template, letters, omega)


def _atomic_write(path: Path, data: bytes):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Store:
    """Directory of representative-set files, one per (level, template)."""

    def __init__(self, root, alphabet: Alphabet, shard_depth: int = 1):
        self.root = Path(root)
        self.alphabet = alphabet
        self.shard_depth = shard_depth

    @staticmethod
    def digest(template: Template) -> str:
        return hashlib.blake2b(template.encode(), digest_size=16).hexdigest()

    def path(self, level: int, template: Template) -> Path:
        d = self.digest(template)
        shards = [d[2 * k : 2 * k + 2] for k in range(self.shard_depth)]
        return self.root.joinpath(f"level_{level:03d}", *shards, d + ".rep")

    def save(self, rep: RepSet) -> tuple[int, int]:
        """Write ``rep``; returns ``(checksum, bytes written)``."""
        data = encode_repset(rep)
        _atomic_write(self.path(rep.length, rep.template), data)
        (cs,) = struct.unpack_from("<Q", data, len(data) - 8)
        return cs, len(data)

    def load(self, level: int, template: Template, expect_checksum: int | None = None) -> RepSet:
        """Stored set, or an empty set when no file exists for ``(level, template)``."""
        path = self.path(level, template)
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            if expect_checksum is not None:
                raise StoreError(path, "file listed in manifest is missing") from None
            return RepSet.empty(self.alphabet, level, template)
        except OSError as exc:
            raise StoreError(path, f"cannot read: {exc}") from None
        rep = decode_repset(data, path, expect_checksum)
        if rep.alphabet != self.alphabet or rep.length != level or rep.template != template:
            raise StoreError(path, "header does not match the requested level/template")
        return rep

    def count(self, level: int, template: Template) -> int:
        """Entry count from the header only (0 for a missing file)."""
        path = self.path(level, template)
        try:
            with open(path, "rb") as fh:
                head = fh.read(HEADER.size)
        except FileNotFoundError:
            return 0
        if len(head) < HEADER.size:
            raise StoreError(path, "truncated file")
        return HEADER.unpack(head)[6]

    def verify(self, level: int, template: Template, checksum: int):
        path = self.path(level, template)
        try:
            data = path.read_bytes()
        except OSError as exc:
            raise StoreError(path, f"cannot read: {exc}") from None
        if len(data) < 8 or checksum64(data[:-8]) != checksum or struct.unpack_from("<Q", data, len(data) - 8)[0] != checksum:
            raise StoreError(path, "checksum mismatch")


# -- manifest ----------------------------------------------------------------------


@dataclass
class TemplateRecord:
    count: int
    omega_sum: int
    checksum: int | None


@dataclass
class RunManifest:
    n: int
    kind: Kind
    mode: str
    run_id: str = ""
    completed_levels: int = -1
    s: list[int] = field(default_factory=list)
    g: list[int] = field(default_factory=list)
    levels: dict[int, dict[str, TemplateRecord]] = field(default_factory=dict)

    FILENAME = "manifest.json"

    def level(self, ell: int) -> dict[str, TemplateRecord]:
        return self.levels.setdefault(ell, {})

    def to_json(self) -> str:
        doc = {
            "run_id": self.run_id,
            "n": self.n,
            "kind": Kind(self.kind).value,
            "mode": self.mode,
            "completed_levels": self.completed_levels,
            "s": self.s,
            "g": self.g,
            "levels": {
                str(ell): {
                    key: [r.count, r.omega_sum, None if r.checksum is None else f"{r.checksum:016x}"]
                    for key, r in recs.items()
                }
                for ell, recs in self.levels.items()
            },
        }
        return json.dumps(doc, sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str, path="<manifest>") -> RunManifest:
        try:
            doc = json.loads(text)
            levels = {
                int(ell): {
                    key: TemplateRecord(int(c), int(o), None if cs is None else int(cs, 16))
                    for key, (c, o, cs) in recs.items()
                }
                for ell, recs in doc["levels"].items()
            }
            return cls(
                n=int(doc["n"]),
                kind=Kind(doc["kind"]),
                mode=doc["mode"],
                run_id=doc.get("run_id", ""),
                completed_levels=int(doc["completed_levels"]),
                s=[int(v) for v in doc["s"]],
                g=[int(v) for v in doc["g"]],
                levels=levels,
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise StoreError(path, f"malformed manifest: {exc}") from None

    def save(self, root):
        _atomic_write(Path(root) / self.FILENAME, self.to_json().encode())

    @classmethod
    def load(cls, root) -> RunManifest | None:
        path = Path(root) / cls.FILENAME
        if not path.exists():
            return None
        return cls.from_json(path.read_text(), path)
