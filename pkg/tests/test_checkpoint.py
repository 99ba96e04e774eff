"""Checkpoint file format: checksum, roundtrip, and corruption detection."""

import struct

import numpy as np
import pytest

from pancakes.checkpoint import (
    CHECKPOINT_MAGIC,
    CHECKPOINT_VERSION,
    CheckpointError,
    SearchCheckpoint,
    crc32c,
    read_checkpoint,
    write_checkpoint,
)
from pancakes.graphs import GraphKind, PancakeGraph


def make_checkpoint(kind=GraphKind.PLAIN, n=3):
    """A small self-consistent checkpoint: layers 0..1 done, 3 vertices seen."""
    words = (PancakeGraph(kind, n).size + 63) // 64
    visited = np.zeros(words, dtype=np.uint64)
    frontier = np.zeros(words, dtype=np.uint64)
    visited[0] = np.uint64(0b111)  # ranks 0, 1, 2
    frontier[0] = np.uint64(0b110)  # ranks 1, 2
    return SearchCheckpoint(kind, n, 1, (1, 2), visited, frontier)


def refix_crc(blob: bytes) -> bytes:
    """Recompute the trailing checksum after tampering with the body."""
    body = blob[:-4]
    return body + struct.pack("<I", crc32c(body))


class TestCrc32c:
    def test_check_value(self):
        # The standard check value for CRC-32C (Castagnoli).
        assert crc32c(b"123456789") == 0xE3069283

    def test_empty(self):
        assert crc32c(b"") == 0

    def test_incremental(self):
        whole = crc32c(b"pancake graphs")
        part = crc32c(b"pancake")
        assert crc32c(b" graphs", part) == whole

    def test_differs_from_zlib_crc32(self):
        import zlib

        assert crc32c(b"123456789") != zlib.crc32(b"123456789")


class TestRoundtrip:
    def test_plain(self, tmp_path):
        cp = make_checkpoint()
        path = tmp_path / "plain.ckpt"
        write_checkpoint(path, cp)
        got = read_checkpoint(path)
        assert got.kind is GraphKind.PLAIN
        assert got.n == 3
        assert got.completed_layer == 1
        assert got.counts == (1, 2)
        assert np.array_equal(got.visited, cp.visited)
        assert np.array_equal(got.frontier, cp.frontier)
        assert not got.terminal

    def test_burnt_multiword(self, tmp_path):
        kind, n = GraphKind.BURNT, 3  # 48 vertices, still 1 word
        words = (PancakeGraph(kind, n).size + 63) // 64
        visited = np.zeros(words, dtype=np.uint64)
        frontier = np.zeros(words, dtype=np.uint64)
        visited[0] = np.uint64((1 << 4) - 1)
        frontier[0] = np.uint64(0b1000)
        cp = SearchCheckpoint(kind, n, 2, (1, 1, 2), visited, frontier)
        path = tmp_path / "burnt.ckpt"
        write_checkpoint(path, cp)
        got = read_checkpoint(path)
        assert (got.kind, got.n, got.counts) == (kind, 3, (1, 1, 2))

    def test_terminal_flag(self, tmp_path):
        words = (PancakeGraph(GraphKind.PLAIN, 3).size + 63) // 64
        visited = np.full(words, np.uint64(0x3F), dtype=np.uint64)  # all 6 ranks
        frontier = np.zeros(words, dtype=np.uint64)
        cp = SearchCheckpoint(GraphKind.PLAIN, 3, 3, (1, 2, 2, 1), visited, frontier)
        path = tmp_path / "done.ckpt"
        write_checkpoint(path, cp)
        assert read_checkpoint(path).terminal

    def test_graph_property(self):
        cp = make_checkpoint()
        assert cp.graph == PancakeGraph(GraphKind.PLAIN, 3)

    def test_no_stray_tmp_file(self, tmp_path):
        path = tmp_path / "clean.ckpt"
        write_checkpoint(path, make_checkpoint())
        assert [p.name for p in tmp_path.iterdir()] == ["clean.ckpt"]

    def test_wrong_word_count_rejected_on_write(self, tmp_path):
        cp = make_checkpoint()
        bad = SearchCheckpoint(
            cp.kind, cp.n, cp.completed_layer, cp.counts, cp.visited, cp.frontier[:0]
        )
        with pytest.raises(CheckpointError, match="words"):
            write_checkpoint(tmp_path / "bad.ckpt", bad)


class TestCorruptionDetection:
    @pytest.fixture
    def blob(self, tmp_path):
        path = tmp_path / "base.ckpt"
        write_checkpoint(path, make_checkpoint())
        return path.read_bytes()

    def write_blob(self, tmp_path, blob):
        path = tmp_path / "tampered.ckpt"
        path.write_bytes(blob)
        return path

    def test_flipped_byte_fails_checksum(self, tmp_path, blob):
        tampered = bytearray(blob)
        tampered[len(tampered) // 2] ^= 0xFF
        path = self.write_blob(tmp_path, bytes(tampered))
        with pytest.raises(CheckpointError, match="checksum"):
            read_checkpoint(path)

    def test_truncated_file(self, tmp_path, blob):
        path = self.write_blob(tmp_path, blob[:10])
        with pytest.raises(CheckpointError, match="truncated"):
            read_checkpoint(path)

    def test_truncated_body_fails_checksum(self, tmp_path, blob):
        path = self.write_blob(tmp_path, blob[:-12])
        with pytest.raises(CheckpointError):
            read_checkpoint(path)

    def test_bad_magic(self, tmp_path, blob):
        tampered = bytearray(blob)
        tampered[0:4] = b"NOPE"
        path = self.write_blob(tmp_path, refix_crc(bytes(tampered)))
        with pytest.raises(CheckpointError, match="magic"):
            read_checkpoint(path)

    def test_unsupported_version(self, tmp_path, blob):
        tampered = bytearray(blob)
        struct.pack_into("<I", tampered, 4, CHECKPOINT_VERSION + 1)
        path = self.write_blob(tmp_path, refix_crc(bytes(tampered)))
        with pytest.raises(CheckpointError, match="version"):
            read_checkpoint(path)

    def test_unknown_kind_code(self, tmp_path, blob):
        tampered = bytearray(blob)
        tampered[8] = 7
        path = self.write_blob(tmp_path, refix_crc(bytes(tampered)))
        with pytest.raises(CheckpointError, match="kind"):
            read_checkpoint(path)

    def test_mismatched_n_changes_expected_length(self, tmp_path, blob):
        tampered = bytearray(blob)
        tampered[9] = 6  # claims n=6 (720 vertices) but arrays are n=3 sized
        path = self.write_blob(tmp_path, refix_crc(bytes(tampered)))
        with pytest.raises(CheckpointError, match="length"):
            read_checkpoint(path)

    def test_inconsistent_completed_layer(self, tmp_path, blob):
        tampered = bytearray(blob)
        struct.pack_into("<I", tampered, 10, 9)
        path = self.write_blob(tmp_path, refix_crc(bytes(tampered)))
        with pytest.raises(CheckpointError, match="completed_layer"):
            read_checkpoint(path)

    def test_counts_must_match_visited_popcount(self, tmp_path, blob):
        tampered = bytearray(blob)
        header_size = struct.calcsize("<4sIBBII")
        struct.pack_into("<Q", tampered, header_size, 5)  # counts[0]: 1 -> 5
        path = self.write_blob(tmp_path, refix_crc(bytes(tampered)))
        with pytest.raises(CheckpointError, match="popcount"):
            read_checkpoint(path)

    def test_magic_constant(self, blob):
        assert blob[:4] == CHECKPOINT_MAGIC == b"PKLS"
