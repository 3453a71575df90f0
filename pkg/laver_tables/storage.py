"""Threshold file storage for Laver tables."""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
import logging
import os
from pathlib import Path
import struct
import tempfile
import zlib

import numpy as np

from .const import (
    LOCK_SUFFIX,
    STORE_CRC_FORMAT,
    STORE_HEADER_FORMAT,
    STORE_MAGIC,
    STORE_THETA_DTYPE,
    STORE_VERSION,
)
from .exceptions import (
    ChecksumMismatchError,
    MagicMismatchError,
    StoreFormatError,
    StoreLockedError,
    TruncatedStoreError,
    VersionMismatchError,
)
from .store import ThresholdStore, scan, validate_thresholds

_LOGGER = logging.getLogger(__name__)

HEADER_SIZE = struct.calcsize(STORE_HEADER_FORMAT)
CRC_SIZE = struct.calcsize(STORE_CRC_FORMAT)
THETA_SIZE = np.dtype(STORE_THETA_DTYPE).itemsize


def encode_store(store: ThresholdStore) -> bytes:
    """Return the LVRT encoding of a store."""
    header = struct.pack(STORE_HEADER_FORMAT, STORE_MAGIC, STORE_VERSION, store.max_p)
    payload = header + store.thetas.astype(STORE_THETA_DTYPE).tobytes()
    return payload + struct.pack(STORE_CRC_FORMAT, zlib.crc32(payload) & 0xFFFFFFFF)


def decode_store(data: bytes) -> ThresholdStore:
    """
    Decode an LVRT byte string.

    Raises:
        TruncatedStoreError: If the data is shorter than announced.
        MagicMismatchError: If the magic is not LVRT.
        VersionMismatchError: If the version is not supported.
        ChecksumMismatchError: If the CRC-32 trailer does not match.
        StoreFormatError: For any other structural problem.

    """
    if len(data) < HEADER_SIZE + CRC_SIZE:
        raise TruncatedStoreError(
            f"Threshold file has {len(data)} bytes, header alone needs "
            f"{HEADER_SIZE + CRC_SIZE}"
        )
    magic, version, max_p = struct.unpack_from(STORE_HEADER_FORMAT, data)
    if magic != STORE_MAGIC:
        raise MagicMismatchError(f"Bad magic {magic!r}, expected {STORE_MAGIC!r}")
    if version != STORE_VERSION:
        raise VersionMismatchError(
            f"Unsupported version {version}, expected {STORE_VERSION}"
        )
    if max_p < 2:
        raise StoreFormatError(f"Stored max_p={max_p} is below 2")
    expected = HEADER_SIZE + THETA_SIZE * (max_p - 1) + CRC_SIZE
    if len(data) < expected:
        raise TruncatedStoreError(
            f"Threshold file has {len(data)} bytes, max_p={max_p} needs {expected}"
        )
    if len(data) > expected:
        raise StoreFormatError(f"{len(data) - expected} trailing bytes after checksum")
    (stored_crc,) = struct.unpack_from(STORE_CRC_FORMAT, data, expected - CRC_SIZE)
    actual_crc = zlib.crc32(data[: expected - CRC_SIZE]) & 0xFFFFFFFF
    if stored_crc != actual_crc:
        raise ChecksumMismatchError(
            f"CRC-32 mismatch: stored {stored_crc:#010x}, computed {actual_crc:#010x}"
        )
    thetas = np.frombuffer(
        data, dtype=STORE_THETA_DTYPE, count=max_p - 1, offset=HEADER_SIZE
    )
    validate_thresholds(thetas)
    return ThresholdStore.from_array(thetas.astype(np.uint32))


def save(store: ThresholdStore, path: Path) -> None:
    """Write a store atomically: a temporary file is renamed over the target."""
    path = Path(path)
    data = encode_store(store)
    handle = tempfile.NamedTemporaryFile(  # noqa: SIM115
        dir=path.parent, prefix=f".{path.name}.", delete=False
    )
    temp_path = Path(handle.name)
    try:
        with handle:
            handle.write(data)
        temp_path.replace(path)
    except BaseException:
        temp_path.unlink(missing_ok=True)
        raise
    _LOGGER.debug("Saved store with max_p=%d to %s", store.max_p, path)


def load(path: Path) -> ThresholdStore:
    """
    Read a store from an LVRT file.

    Raises:
        StoreFormatError: If the file cannot be decoded.
        OSError: If the file cannot be read.

    """
    store = decode_store(Path(path).read_bytes())
    _LOGGER.debug("Loaded store with max_p=%d from %s", store.max_p, path)
    return store


def lock_path_for(path: Path) -> Path:
    """Return the lock file guarding a store path."""
    path = Path(path)
    return path.with_name(path.name + LOCK_SUFFIX)


@contextmanager
def store_lock(path: Path) -> Iterator[Path]:
    """
    Hold the exclusive writer lock of a store file.

    Raises:
        StoreLockedError: If the lock file already exists.

    """
    lock_path = lock_path_for(path)
    try:
        lock_path.touch(exist_ok=False)
    except FileExistsError as err:
        raise StoreLockedError(
            f"{lock_path} exists; another scan is writing {path}"
        ) from err
    try:
        lock_path.write_text(f"{os.getpid()}\n", encoding="utf-8")
        yield lock_path
    finally:
        lock_path.unlink(missing_ok=True)


def scan_to_file(path: Path, max_p: int, resume: bool = False) -> ThresholdStore:
    """
    Scan to max_p under the store lock, checkpointing to path as it goes.

    With resume, an existing file at path is loaded and extended.
    """
    path = Path(path)
    with store_lock(path):
        start = None
        if resume and path.exists():
            start = load(path)
            _LOGGER.info("Resuming from %s at max_p=%d", path, start.max_p)
        store = scan(max_p, start, checkpoint=lambda prefix: save(prefix, path))
        save(store, path)
    return store
