"""Canonical serialization and compact membership store for bicliques.

A biclique is encoded as its left ids ascending, a one-byte side
separator, then its right ids ascending. Ids are packed as fixed-width
big-endian groups of 7-bit bytes so the separator byte (high bit set)
can never collide with id payload bytes; the encoding is injective and
platform-stable, and it decodes back to the biclique.

The store keeps either 64-bit signatures of the canonical bytes
(``HASH64``, compact, collisions astronomically unlikely) or the exact
canonical bytes (``EXACT``, auditable ground truth). Membership answers
never have false negatives in either mode.
"""

from __future__ import annotations

import hashlib
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

from .mbe import Biclique

_ID_BYTES = 5  # 5 * 7 bits: ids up to 2**35 - 1
_MAX_ID = (1 << (7 * _ID_BYTES)) - 1
_SEPARATOR = 0xFF
_PERSON = b"dynbic.sig.v1"  # pins the signature function across runs


class StoreMode(Enum):
    HASH64 = "hash64"
    EXACT = "exact"


class StoreConsistencyError(RuntimeError):
    """The store would stop representing the maintained biclique set."""


def _pack_id(vid: int, out: bytearray) -> None:
    if vid < 0 or vid > _MAX_ID:
        raise ValueError(f"vertex id out of encodable range: {vid}")
    for shift in (28, 21, 14, 7, 0):
        out.append((vid >> shift) & 0x7F)


def canonical_bytes(b: Biclique) -> bytes:
    """Unambiguous byte encoding of a canonical-form biclique."""
    out = bytearray()
    for vid in b.left:
        _pack_id(vid, out)
    out.append(_SEPARATOR)
    for vid in b.right:
        _pack_id(vid, out)
    return bytes(out)


def decode_canonical(data: bytes) -> Biclique:
    """Inverse of :func:`canonical_bytes`; raises ValueError on bad input."""

    def take_ids(chunk: bytes) -> tuple[int, ...]:
        if len(chunk) % _ID_BYTES:
            raise ValueError("truncated id group in canonical bytes")
        ids = []
        for i in range(0, len(chunk), _ID_BYTES):
            vid = 0
            for byte in chunk[i : i + _ID_BYTES]:
                if byte & 0x80:
                    raise ValueError("separator byte inside id payload")
                vid = (vid << 7) | byte
            ids.append(vid)
        return tuple(ids)

    sep = data.find(bytes([_SEPARATOR]))
    if sep < 0 or data.count(bytes([_SEPARATOR])) != 1:
        raise ValueError("canonical bytes need exactly one separator")
    return Biclique(take_ids(data[:sep]), take_ids(data[sep + 1 :]))


def signature64(b: Biclique) -> int:
    """64-bit signature of the canonical form; stable across runs and
    platforms."""
    digest = hashlib.blake2b(
        canonical_bytes(b), digest_size=8, person=_PERSON
    ).digest()
    return int.from_bytes(digest, "big")


class SignatureStore:
    """Membership structure representing the maximal bicliques of a graph.

    Single-writer: apply updates from one thread; reads may interleave
    between committed updates.
    """

    def __init__(self, mode: StoreMode = StoreMode.HASH64):
        self.mode = mode
        self._members: set[int] | set[bytes] = set()

    def _key(self, b: Biclique):
        if self.mode is StoreMode.HASH64:
            return signature64(b)
        return canonical_bytes(b)

    @property
    def count(self) -> int:
        return len(self._members)

    def __len__(self) -> int:
        return len(self._members)

    def contains(self, b: Biclique) -> bool:
        return self._key(b) in self._members

    def insert(self, b: Biclique) -> None:
        key = self._key(b)
        if key in self._members:
            raise StoreConsistencyError(f"double insert of {b}")
        self._members.add(key)

    def remove(self, b: Biclique) -> None:
        key = self._key(b)
        if key not in self._members:
            raise StoreConsistencyError(f"removal of absent member {b}")
        self._members.discard(key)

    def apply_changeset(
        self, new: Iterable[Biclique], subsumed: Iterable[Biclique]
    ) -> None:
        """Remove every subsumed biclique, insert every new one.

        Validates the whole update first: all removals must be present and
        all insertions absent, otherwise nothing is applied.
        """
        gone = [self._key(b) for b in subsumed]
        added = [self._key(b) for b in new]
        gone_set = set(gone)
        if len(gone_set) != len(gone):
            raise StoreConsistencyError("duplicate members in subsumed set")
        added_set = set(added)
        if len(added_set) != len(added):
            raise StoreConsistencyError("duplicate members in new set")
        missing = gone_set - self._members
        if missing:
            raise StoreConsistencyError(
                f"{len(missing)} subsumed member(s) absent from store"
            )
        present = added_set & self._members
        if present:
            raise StoreConsistencyError(
                f"{len(present)} new member(s) already in store"
            )
        self._members -= gone_set
        self._members |= added_set

    def snapshot(self) -> frozenset:
        """Frozen view of the member keys, for equality checks."""
        return frozenset(self._members)

    # -- exact-mode extras --------------------------------------------------

    def iter_bicliques(self) -> Iterator[Biclique]:
        """Decode members back to bicliques (exact mode only)."""
        if self.mode is not StoreMode.EXACT:
            raise StoreConsistencyError("member decoding needs exact mode")
        for data in sorted(self._members):  # type: ignore[arg-type]
            yield decode_canonical(data)

    def dump(self, path: str | Path) -> None:
        """Write one hex-encoded canonical form per line (exact mode only)."""
        if self.mode is not StoreMode.EXACT:
            raise StoreConsistencyError("dump needs exact mode")
        lines = sorted(data.hex() for data in self._members)  # type: ignore[union-attr]
        Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))

    @classmethod
    def load(cls, path: str | Path) -> "SignatureStore":
        """Read a dump back into an exact-mode store."""
        store = cls(StoreMode.EXACT)
        for raw in Path(path).read_text().splitlines():
            raw = raw.strip()
            if not raw:
                continue
            data = bytes.fromhex(raw)
            decode_canonical(data)  # validates
            store._members.add(data)
        return store
