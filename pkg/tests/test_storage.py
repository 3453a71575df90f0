"""Tests for threshold file storage."""

from __future__ import annotations

from pathlib import Path
import struct
import zlib

import pytest

from laver_tables.exceptions import (
    ChecksumMismatchError,
    MagicMismatchError,
    StoreFormatError,
    StoreLockedError,
    TruncatedStoreError,
    VersionMismatchError,
)
from laver_tables.storage import (
    HEADER_SIZE,
    decode_store,
    encode_store,
    load,
    lock_path_for,
    save,
    scan_to_file,
    store_lock,
)
from laver_tables.store import scan


def _with_crc(payload: bytes) -> bytes:
    return payload + struct.pack("<I", zlib.crc32(payload))


class TestEncoding:
    """Tests for the LVRT byte layout."""

    def test_layout(self):
        """Test the header, thresholds and trailer of the store to 18."""
        data = encode_store(scan(18))
        assert data[:4] == b"LVRT"
        assert struct.unpack_from("<IQ", data, 4) == (1, 18)
        assert len(data) == 16 + 4 * 17 + 4
        assert struct.unpack_from("<17I", data, 16) == (
            1, 1, 2, 1, 2, 2, 4, 1, 2, 2, 4, 2, 1, 1, 8, 1, 2,
        )  # fmt: skip
        assert struct.unpack_from("<I", data, len(data) - 4)[0] == zlib.crc32(
            data[:-4]
        )

    def test_round_trip(self, store):
        """Test decoding then re-encoding is byte-identical."""
        data = encode_store(store.prefix(5000))
        decoded = decode_store(data)
        assert decoded == store.prefix(5000)
        assert encode_store(decoded) == data

    def test_empty(self):
        """Test empty data is truncated."""
        with pytest.raises(TruncatedStoreError):
            decode_store(b"")

    def test_magic(self):
        """Test a wrong magic is reported."""
        data = bytearray(encode_store(scan(18)))
        data[0:4] = b"LVRX"
        with pytest.raises(MagicMismatchError):
            decode_store(bytes(data))

    def test_version(self):
        """Test an unknown version is reported."""
        data = encode_store(scan(18))
        payload = data[:4] + struct.pack("<I", 2) + data[8:-4]
        with pytest.raises(VersionMismatchError):
            decode_store(_with_crc(payload))

    def test_truncated(self):
        """Test a cut payload is reported."""
        data = encode_store(scan(18))
        with pytest.raises(TruncatedStoreError):
            decode_store(data[:-8])

    def test_trailing_bytes(self):
        """Test extra bytes after the trailer are rejected."""
        with pytest.raises(StoreFormatError, match="trailing"):
            decode_store(encode_store(scan(18)) + b"\0")

    def test_flipped_byte(self):
        """Test a flipped payload byte fails the checksum."""
        data = bytearray(encode_store(scan(18)))
        data[HEADER_SIZE + 5] ^= 0x01
        with pytest.raises(ChecksumMismatchError):
            decode_store(bytes(data))

    def test_invalid_thresholds(self):
        """Test a well-formed file with a bad power of 2 threshold is rejected."""
        data = encode_store(scan(18))
        offset = HEADER_SIZE + 8
        payload = data[:offset] + struct.pack("<I", 1) + data[offset + 4 : -4]
        with pytest.raises(StoreFormatError, match="p=4"):
            decode_store(_with_crc(payload))


class TestFiles:
    """Tests for save, load and the writer lock."""

    def test_save_and_load(self, tmp_path: Path):
        """Test a saved store loads back equal."""
        path = tmp_path / "thresholds.lvrt"
        store = scan(300)
        save(store, path)
        assert load(path) == store
        assert not list(tmp_path.glob(".thresholds.lvrt.*"))

    def test_failed_save_leaves_no_temp_file(self, tmp_path: Path):
        """Test a failed rename removes the temporary file."""
        target = tmp_path / "thresholds.lvrt"
        target.mkdir()
        with pytest.raises(OSError):
            save(scan(300), target)
        assert target.is_dir()
        assert not list(tmp_path.glob(".thresholds.lvrt.*"))

    def test_load_missing(self, tmp_path: Path):
        """Test a missing file raises OSError."""
        with pytest.raises(OSError):
            load(tmp_path / "missing.lvrt")

    def test_lock(self, tmp_path: Path):
        """Test a held lock blocks a second writer and is released."""
        path = tmp_path / "thresholds.lvrt"
        with store_lock(path) as lock_path:
            assert lock_path == lock_path_for(path)
            assert lock_path.name == "thresholds.lvrt.lock"
            with pytest.raises(StoreLockedError):
                with store_lock(path):
                    pass
        assert not lock_path_for(path).exists()

    def test_scan_to_file(self, tmp_path: Path):
        """Test scanning to a file and resuming it."""
        path = tmp_path / "thresholds.lvrt"
        scan_to_file(path, 500)
        assert load(path).max_p == 500
        resumed = scan_to_file(path, 1500, resume=True)
        assert resumed == scan(1500)
        assert load(path) == resumed
        assert not lock_path_for(path).exists()

    def test_scan_to_locked_file(self, tmp_path: Path):
        """Test a scan refuses to run while the lock is held."""
        path = tmp_path / "thresholds.lvrt"
        lock_path_for(path).touch()
        with pytest.raises(StoreLockedError):
            scan_to_file(path, 100)
        assert not path.exists()
