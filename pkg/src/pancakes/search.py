"""Bitset breadth-first search over pancake graphs.

The visited set and the current frontier are flat bit arrays indexed by
permutation rank — the only representation that scales to the interesting
sizes (BP_8 has ~10.3M vertices but its bitset is 1.3 MB). Each layer is
expanded by scanning the frontier's set bits in blocks, unranking them,
applying every flip with the vectorized kernels, ranking the neighbors, and
setting the bits of previously unseen vertices; the popcount of the merged
result is the next layer count.

Workers partition the frontier into contiguous word spans. Each worker fills
a private candidate bitset and the results are OR-merged single-threaded
between layers, so profiles are bit-identical for every worker count.

Memory is accounted for up front: an operation that would exceed the limit
refuses with the required size instead of thrashing. The default limit is
4 GiB, overridable via the ``PANCAKE_MEM_LIMIT`` environment variable or the
``memory_limit`` argument.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .checkpoint import (
    CheckpointError,
    SearchCheckpoint,
    read_checkpoint,
    write_checkpoint,
)
from .graphs import GraphKind, PancakeGraph
from .perms import Perm, SignedPerm

__all__ = [
    "DEFAULT_MEMORY_LIMIT",
    "MEMORY_LIMIT_ENV",
    "LayerProfile",
    "MemoryLimitError",
    "required_memory",
    "layer_profile",
    "resume",
    "distance",
    "sort_sequence",
]

DEFAULT_MEMORY_LIMIT = 4 << 30
MEMORY_LIMIT_ENV = "PANCAKE_MEM_LIMIT"

_CHUNK = 1 << 18  # ranks processed per kernel call
_BLOCK_WORDS = 1 << 15  # frontier words scanned per extraction


class MemoryLimitError(MemoryError):
    """The search would need more memory than allowed; nothing was allocated."""

    def __init__(self, required: int, limit: int, what: str):
        super().__init__(
            f"{what} needs about {required:,} bytes but the memory limit is "
            f"{limit:,} bytes"
        )
        self.required = required
        self.limit = limit


@dataclass(frozen=True, slots=True)
class LayerProfile:
    """BFS shell sizes from the identity: counts[k] vertices need exactly k flips."""

    kind: GraphKind
    n: int
    counts: tuple[int, ...]
    complete: bool

    @property
    def graph(self) -> PancakeGraph:
        return PancakeGraph(self.kind, self.n)

    @property
    def total_visited(self) -> int:
        return sum(self.counts)

    @property
    def depth(self) -> int:
        """Largest computed layer index (the eccentricity when complete)."""
        return len(self.counts) - 1


class _GraphOps:
    """Kernel bindings for one graph."""

    __slots__ = ("graph", "flips", "unrank_batch", "rank_batch", "flip_batch")

    def __init__(self, graph: PancakeGraph):
        self.graph = graph
        self.flips = list(graph.flip_indices)
        n = graph.n
        if graph.kind is GraphKind.BURNT:
            self.unrank_batch = lambda ranks: K.batch_sunrank(n, ranks)
            self.rank_batch = K.batch_srank
            self.flip_batch = K.batch_signed_flip
        else:
            self.unrank_batch = lambda ranks: K.batch_unrank(n, ranks)
            self.rank_batch = K.batch_rank
            self.flip_batch = K.batch_flip


def resolve_memory_limit(memory_limit: int | None) -> int:
    if memory_limit is not None:
        return int(memory_limit)
    env = os.environ.get(MEMORY_LIMIT_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(
                f"{MEMORY_LIMIT_ENV} must be an integer byte count, got {env!r}"
            ) from None
    return DEFAULT_MEMORY_LIMIT


def required_memory(
    graph: PancakeGraph, *, workers: int = 1, with_layer_map: bool = False
) -> int:
    """Upper estimate of the bytes a search on ``graph`` will allocate."""
    size = graph.size
    word_bytes = 8 * ((size + 63) // 64)
    chunk = min(_CHUNK, size)
    # visited + frontier + merge temp, one candidate bitset per worker
    bitsets = (3 + workers) * word_bytes
    # per-worker batch buffers: two (chunk, n) permutation arrays plus a few
    # int64 rank/test temporaries
    buffers = workers * chunk * (2 * graph.n + 48)
    # frontier extraction temporaries (unpacked bits and rank indices)
    scratch = 4 * size
    layer_map = size if with_layer_map else 0
    return bitsets + buffers + scratch + layer_map


def _check_memory(
    graph: PancakeGraph, limit: int, workers: int, with_layer_map: bool, what: str
) -> None:
    required = required_memory(graph, workers=workers, with_layer_map=with_layer_map)
    if required > limit:
        raise MemoryLimitError(required, limit, what)


def _expand_span(
    ops: _GraphOps,
    visited: np.ndarray,
    frontier: np.ndarray,
    lo: int,
    hi: int,
) -> np.ndarray:
    """Candidate bitset of neighbors of frontier bits in words [lo, hi)."""
    cand = np.zeros_like(visited)
    for block in range(lo, hi, _BLOCK_WORDS):
        top = min(block + _BLOCK_WORDS, hi)
        span = frontier[block:top]
        if not span.any():
            continue
        ranks = K.bitset_extract_ranks(span, word_offset=block)
        for start in range(0, ranks.size, _CHUNK):
            batch = ranks[start : start + _CHUNK]
            perms = ops.unrank_batch(batch)
            for i in ops.flips:
                neighbor_ranks = ops.rank_batch(ops.flip_batch(perms, i))
                fresh = neighbor_ranks[~K.bitset_test(visited, neighbor_ranks)]
                if fresh.size:
                    K.bitset_set(cand, fresh)
    return cand


def _expand_layer(
    ops: _GraphOps, visited: np.ndarray, frontier: np.ndarray, workers: int
) -> np.ndarray:
    """Bitset of the next layer (unvisited neighbors of the frontier)."""
    nwords = visited.shape[0]
    if workers <= 1 or nwords < workers:
        cand = _expand_span(ops, visited, frontier, 0, nwords)
    else:
        bounds = [nwords * w // workers for w in range(workers + 1)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    lambda span: _expand_span(ops, visited, frontier, *span),
                    zip(bounds, bounds[1:]),
                )
            )
        cand = parts[0]
        for part in parts[1:]:
            np.bitwise_or(cand, part, out=cand)
    np.bitwise_and(cand, np.bitwise_not(visited), out=cand)
    return cand


def _initial_state(graph: PancakeGraph):
    visited = K.bitset_alloc(graph.size)
    frontier = K.bitset_alloc(graph.size)
    origin = np.array([0], dtype=np.int64)  # the identity always ranks 0
    K.bitset_set(visited, origin)
    K.bitset_set(frontier, origin)
    return visited, frontier, [1]


def _run_layers(
    graph: PancakeGraph,
    visited: np.ndarray,
    frontier: np.ndarray,
    counts: list[int],
    *,
    workers: int,
    checkpoint_path: str | os.PathLike | None,
    max_layer: int | None,
) -> LayerProfile:
    ops = _GraphOps(graph)

    def save(front: np.ndarray) -> None:
        if checkpoint_path is not None:
            write_checkpoint(
                checkpoint_path,
                SearchCheckpoint(
                    graph.kind,
                    graph.n,
                    len(counts) - 1,
                    tuple(counts),
                    visited,
                    front,
                ),
            )

    while max_layer is None or len(counts) - 1 < max_layer:
        new = _expand_layer(ops, visited, frontier, workers)
        found = K.bitset_popcount(new)
        if found == 0:
            save(new)  # terminal checkpoint: empty frontier
            return LayerProfile(graph.kind, graph.n, tuple(counts), complete=True)
        counts.append(found)
        np.bitwise_or(visited, new, out=visited)
        frontier = new
        save(frontier)
    complete = sum(counts) == graph.size
    return LayerProfile(graph.kind, graph.n, tuple(counts), complete=complete)


def layer_profile(
    graph: PancakeGraph,
    *,
    memory_limit: int | None = None,
    workers: int = 1,
    checkpoint_path: str | os.PathLike | None = None,
    max_layer: int | None = None,
) -> LayerProfile:
    """Count vertices at every distance from the identity.

    Writes a checkpoint after each completed layer when ``checkpoint_path`` is
    given (always starting fresh; use :func:`resume` to continue one).
    ``max_layer`` stops after that many layers, leaving a resumable checkpoint.
    """
    limit = resolve_memory_limit(memory_limit)
    _check_memory(graph, limit, workers, False, f"layer profile of {graph}")
    visited, frontier, counts = _initial_state(graph)
    if checkpoint_path is not None:
        write_checkpoint(
            checkpoint_path,
            SearchCheckpoint(graph.kind, graph.n, 0, (1,), visited, frontier),
        )
    return _run_layers(
        graph,
        visited,
        frontier,
        counts,
        workers=workers,
        checkpoint_path=checkpoint_path,
        max_layer=max_layer,
    )


def resume(
    checkpoint_path: str | os.PathLike,
    *,
    memory_limit: int | None = None,
    workers: int = 1,
    max_layer: int | None = None,
    expect: PancakeGraph | None = None,
) -> LayerProfile:
    """Continue a checkpointed search to completion.

    The final profile is identical to an uninterrupted run. ``expect`` guards
    against resuming a checkpoint for a different graph.
    """
    cp = read_checkpoint(checkpoint_path)
    if expect is not None and (cp.kind, cp.n) != (expect.kind, expect.n):
        raise CheckpointError(
            f"checkpoint is for {cp.graph}, expected {expect}"
        )
    graph = cp.graph
    if cp.terminal:
        return LayerProfile(graph.kind, graph.n, cp.counts, complete=True)
    limit = resolve_memory_limit(memory_limit)
    _check_memory(graph, limit, workers, False, f"resumed layer profile of {graph}")
    return _run_layers(
        graph,
        cp.visited.copy(),
        cp.frontier.copy(),
        list(cp.counts),
        workers=workers,
        checkpoint_path=checkpoint_path,
        max_layer=max_layer,
    )


def distance(
    graph: PancakeGraph,
    target: Perm | SignedPerm,
    *,
    memory_limit: int | None = None,
    workers: int = 1,
) -> int:
    """Minimum number of flips taking ``target`` to the identity (early exit)."""
    target_rank = graph.rank(target)
    if target_rank == 0:
        return 0
    limit = resolve_memory_limit(memory_limit)
    _check_memory(graph, limit, workers, False, f"distance query in {graph}")
    ops = _GraphOps(graph)
    visited, frontier, counts = _initial_state(graph)
    probe = np.array([target_rank], dtype=np.int64)
    layer = 0
    while True:
        new = _expand_layer(ops, visited, frontier, workers)
        if K.bitset_popcount(new) == 0:
            raise AssertionError("target not reached; graph should be connected")
        layer += 1
        if K.bitset_test(new, probe)[0]:
            return layer
        np.bitwise_or(visited, new, out=visited)
        frontier = new


def sort_sequence(
    graph: PancakeGraph,
    target: Perm | SignedPerm,
    *,
    memory_limit: int | None = None,
    workers: int = 1,
) -> tuple[int, ...]:
    """Lexicographically smallest optimal flip sequence sorting ``target``.

    Runs the layered BFS keeping a byte-sized layer number per vertex, then
    descends from ``target`` greedily taking the smallest flip index that
    decreases the layer number.
    """
    target_rank = graph.rank(target)
    if target_rank == 0:
        return ()
    limit = resolve_memory_limit(memory_limit)
    _check_memory(graph, limit, workers, True, f"sort sequence in {graph}")
    ops = _GraphOps(graph)
    visited, frontier, _counts = _initial_state(graph)
    layer_of = np.full(graph.size, 255, dtype=np.uint8)
    layer_of[0] = 0
    layer = 0
    while layer_of[target_rank] == 255:
        new = _expand_layer(ops, visited, frontier, workers)
        if K.bitset_popcount(new) == 0:
            raise AssertionError("target not reached; graph should be connected")
        layer += 1
        if layer > 254:
            raise AssertionError("layer number overflows the byte-sized layer map")
        layer_of[K.bitset_extract_ranks(new)] = layer
        np.bitwise_or(visited, new, out=visited)
        frontier = new
    sequence = []
    current = target
    for depth in range(int(layer_of[target_rank]), 0, -1):
        for i in graph.flip_indices:
            step = graph.apply(current, i)
            if layer_of[graph.rank(step)] == depth - 1:
                sequence.append(i)
                current = step
                break
        else:
            raise AssertionError("no descending neighbor; layer map inconsistent")
    return tuple(sequence)
