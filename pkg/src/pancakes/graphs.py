"""The pancake graph P_n and burnt pancake graph BP_n.

Vertices are permutations (signed permutations for the burnt graph); each
flip index gives one undirected edge, so P_n has degree n-1 (flips 2..n) and
BP_n has degree n (flips 1..n). Neither graph is ever materialized: neighbors
are generated by applying flips, and vertices are addressed by their rank.

The graphs decompose recursively: the vertices sharing a last entry p form a
copy of the one-size-smaller graph, and ``copy_of`` returns that index (for
the burnt graph the sign of the last entry distinguishes 2n copies).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .perms import (
    MAX_N,
    Perm,
    PermError,
    SignedPerm,
    apply_flip,
    apply_signed_flip,
    parse_perm,
    rank,
    srank,
    sunrank,
    unrank,
)

__all__ = ["GraphKind", "PancakeGraph"]


class GraphKind(enum.IntEnum):
    """Which flavor of pancake graph; the integer value is used on disk."""

    PLAIN = 0
    BURNT = 1

    @staticmethod
    def parse(text: str) -> "GraphKind":
        try:
            return GraphKind[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown graph kind {text!r}") from None

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True, slots=True)
class PancakeGraph:
    """P_n (kind=PLAIN) or BP_n (kind=BURNT) for a fixed n."""

    kind: GraphKind
    n: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_N:
            raise PermError(f"n={self.n} out of supported range [1, {MAX_N}]")

    # -- basic shape ------------------------------------------------------

    @property
    def size(self) -> int:
        """Number of vertices: n! or 2^n * n!."""
        f = math.factorial(self.n)
        return f * (1 << self.n) if self.kind is GraphKind.BURNT else f

    @property
    def flip_indices(self) -> range:
        """Valid flip indices in ascending order (r_1 excluded for plain)."""
        return range(1 if self.kind is GraphKind.BURNT else 2, self.n + 1)

    @property
    def degree(self) -> int:
        return len(self.flip_indices)

    @property
    def identity(self) -> Perm | SignedPerm:
        if self.kind is GraphKind.BURNT:
            return SignedPerm.identity(self.n)
        return Perm.identity(self.n)

    # -- vertex operations -------------------------------------------------

    def check_vertex(self, v: Perm | SignedPerm) -> None:
        expected = SignedPerm if self.kind is GraphKind.BURNT else Perm
        if not isinstance(v, expected):
            raise PermError(
                f"{type(v).__name__} is not a vertex of a {self.kind} graph"
            )
        if v.n != self.n:
            raise PermError(f"vertex has n={v.n}, graph has n={self.n}")

    def apply(self, v: Perm | SignedPerm, i: int) -> Perm | SignedPerm:
        self.check_vertex(v)
        if self.kind is GraphKind.BURNT:
            return apply_signed_flip(v, i)
        return apply_flip(v, i)

    def neighbors(self, v: Perm | SignedPerm) -> list[Perm | SignedPerm]:
        """All adjacent vertices, in ascending flip-index order."""
        return [self.apply(v, i) for i in self.flip_indices]

    def copy_of(self, v: Perm | SignedPerm) -> int:
        """Index of the one-size-smaller copy containing ``v``: its last entry.

        Signed (incl. sign) for the burnt graph, so BP_n splits into 2n copies
        of BP_{n-1}; plain P_n splits into n copies of P_{n-1}.
        """
        self.check_vertex(v)
        return v.entries[-1]

    def rank(self, v: Perm | SignedPerm) -> int:
        self.check_vertex(v)
        return srank(v) if self.kind is GraphKind.BURNT else rank(v)

    def unrank(self, r: int) -> Perm | SignedPerm:
        if self.kind is GraphKind.BURNT:
            return sunrank(self.n, r)
        return unrank(self.n, r)

    def parse(self, text: str) -> Perm | SignedPerm:
        v = parse_perm(text)
        self.check_vertex(v)
        return v

    def __str__(self) -> str:
        return f"{'BP' if self.kind is GraphKind.BURNT else 'P'}_{self.n}"
