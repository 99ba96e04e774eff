"""Short-cycle enumeration and classification in pancake graphs.

Every simple cycle of length L through the identity is found by a depth-L DFS
(vertex transitivity makes the identity-rooted census representative of the
whole graph). A cycle is reported by its canonical form: the lexicographically
maximal flip-label sequence over all rotations of either traversal direction.

The known classification results give parameterized label templates for every
cycle of lengths 6-9 (plain) and 8-9 (burnt). ``match_form`` identifies which
template family a canonical form instantiates; ``verify_classification``
machine-checks a classification exhaustively: it enumerates all L-cycles in a
concrete graph and reports any whose form no family produces.

Template label sequences are compared after canonicalization — several
published templates are written in a structurally convenient rotation rather
than the lexicographically maximal one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .graphs import GraphKind, PancakeGraph
from .perms import Perm, SignedPerm, rank, srank

__all__ = [
    "DEFAULT_NODE_BUDGET",
    "Cycle",
    "CycleFamily",
    "FamilyMatch",
    "FamilyTally",
    "CensusReport",
    "UNMATCHED",
    "InfeasibleSizeError",
    "UnsupportedLengthError",
    "canonicalize",
    "enumerate_cycles",
    "families_for",
    "match_form",
    "verify_classification",
]

DEFAULT_NODE_BUDGET = 50_000_000


class UnsupportedLengthError(ValueError):
    """Cycle length outside the supported range for the operation."""


class InfeasibleSizeError(RuntimeError):
    """The estimated search size exceeds the node budget; nothing was run."""


def canonicalize(labels: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically maximal rotation of ``labels`` or of its reversal.

    The label sequence of a cycle is defined up to rotation (choice of start
    vertex) and reversal (traversal direction); the maximum over all 2L
    candidates is the cycle's canonical form.

    >>> canonicalize((2, 3, 2, 3, 2, 3))
    (3, 2, 3, 2, 3, 2)
    >>> canonicalize((4, 1, 4, 1, 4, 1, 4, 1))
    (4, 1, 4, 1, 4, 1, 4, 1)
    """
    t = tuple(labels)
    if not t:
        raise ValueError("empty label sequence")
    length = len(t)
    rev = t[::-1]
    return max(
        max(t[s:] + t[:s] for s in range(length)),
        max(rev[s:] + rev[:s] for s in range(length)),
    )


@dataclass(frozen=True, slots=True)
class Cycle:
    """One simple cycle through the identity.

    ``labels`` is the canonical form; ``ranks`` are the sorted ranks of the
    cycle's vertices (always including 0, the identity).
    """

    labels: tuple[int, ...]
    ranks: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.labels)


@dataclass(frozen=True, slots=True)
class FamilyMatch:
    """A canonical form identified as ``family_id`` at the given parameters."""

    family_id: int
    params: tuple[tuple[str, int], ...]  # (("i", 2), ("k", 4)) — sorted by name


class _Unmatched:
    """Singleton result for a canonical form no family produces."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNMATCHED"


UNMATCHED = _Unmatched()


@dataclass(frozen=True, slots=True)
class CycleFamily:
    """A parameterized canonical-form template, e.g. (k, k-1, k, k-1, k-2, k, 2).

    ``build`` instantiates the label sequence from a parameter dict;
    ``instances(k)`` yields every in-range parameter dict whose largest label
    is exactly ``k`` (the largest label always equals the parameter k, which
    is how matching recovers it from a form).
    """

    id: int
    kind: GraphKind
    length: int
    signature: str
    build: Callable[..., tuple[int, ...]]
    instances: Callable[[int], Iterator[dict[str, int]]]

    def all_instances(self, max_k: int) -> Iterator[dict[str, int]]:
        """Every in-range parameter dict with k up to ``max_k``."""
        for k in range(3, max_k + 1):
            yield from self.instances(k)


def _fixed(k_value: int):
    def gen(k: int):
        if k == k_value:
            yield {}

    return gen


def _k_only(min_k: int):
    def gen(k: int):
        if k >= min_k:
            yield {"k": k}

    return gen


def _i_range(min_k: int, lo, hi):
    """Parameters {i, k}: lo(k) <= i <= hi(k)."""

    def gen(k: int):
        if k >= min_k:
            for i in range(lo(k), hi(k) + 1):
                yield {"i": i, "k": k}

    return gen


def _ij_range(min_k: int, pairs):
    """Parameters {i, j, k}: pairs(k) yields in-range (i, j)."""

    def gen(k: int):
        if k >= min_k:
            for i, j in pairs(k):
                yield {"i": i, "j": j, "k": k}

    return gen


def _pairs_i_lt_j(i_lo, j_hi):
    """(i, j) with i_lo <= i < j <= j_hi(k)."""

    def pairs(k: int):
        top = j_hi(k)
        for i in range(i_lo, top):
            for j in range(i + 1, top + 1):
                yield i, j

    return pairs


def _pairs_i_plus2_j(i_lo, j_hi):
    """(i, j) with i_lo <= i <= j-2 and i+2 <= j <= j_hi(k)."""

    def pairs(k: int):
        top = j_hi(k)
        for i in range(i_lo, top - 1):
            for j in range(i + 2, top + 1):
                yield i, j

    return pairs


def _pairs_sum_bounded(lo, each_hi, sum_hi):
    """(i, j) with lo <= i, j <= each_hi(k) and i + j <= sum_hi(k)."""

    def pairs(k: int):
        top = each_hi(k)
        cap = sum_hi(k)
        for i in range(lo, top + 1):
            for j in range(lo, top + 1):
                if i + j <= cap:
                    yield i, j

    return pairs


_PLAIN = GraphKind.PLAIN
_BURNT = GraphKind.BURNT

FAMILIES: tuple[CycleFamily, ...] = (
    # -- plain 6-cycles ------------------------------------------------------
    CycleFamily(
        1, _PLAIN, 6, "3 2 3 2 3 2",
        lambda: (3, 2, 3, 2, 3, 2),
        _fixed(3),
    ),
    # -- plain 7-cycles ------------------------------------------------------
    CycleFamily(
        2, _PLAIN, 7, "k k-1 k k-1 k-2 k 2",
        lambda k: (k, k - 1, k, k - 1, k - 2, k, 2),
        _k_only(4),
    ),
    # -- plain 8-cycles ------------------------------------------------------
    CycleFamily(
        3, _PLAIN, 8, "k j i j k k-j+i i k-j+i",
        lambda i, j, k: (k, j, i, j, k, k - j + i, i, k - j + i),
        _ij_range(4, _pairs_i_lt_j(2, lambda k: k - 1)),
    ),
    CycleFamily(
        4, _PLAIN, 8, "k k-1 2 k-1 k 2 3 2",
        lambda k: (k, k - 1, 2, k - 1, k, 2, 3, 2),
        _k_only(4),
    ),
    CycleFamily(
        5, _PLAIN, 8, "k k-i k-1 i k k-i k-1 i",
        lambda i, k: (k, k - i, k - 1, i, k, k - i, k - 1, i),
        _i_range(4, lambda k: 2, lambda k: k - 2),
    ),
    CycleFamily(
        6, _PLAIN, 8, "k k-i+1 k i k k-i k-1 i-1",
        lambda i, k: (k, k - i + 1, k, i, k, k - i, k - 1, i - 1),
        _i_range(5, lambda k: 3, lambda k: k - 2),
    ),
    CycleFamily(
        7, _PLAIN, 8, "k k-1 i-1 k k-i+1 k-i k i",
        lambda i, k: (k, k - 1, i - 1, k, k - i + 1, k - i, k, i),
        _i_range(5, lambda k: 3, lambda k: k - 2),
    ),
    CycleFamily(
        8, _PLAIN, 8, "k k-1 k k-i k-i-1 k i i+1",
        lambda i, k: (k, k - 1, k, k - i, k - i - 1, k, i, i + 1),
        _i_range(5, lambda k: 2, lambda k: k - 3),
    ),
    CycleFamily(
        9, _PLAIN, 8, "k k-j+1 k i k k-j+1 k i",
        lambda i, j, k: (k, k - j + 1, k, i, k, k - j + 1, k, i),
        _ij_range(4, _pairs_i_lt_j(2, lambda k: k - 1)),
    ),
    CycleFamily(
        10, _PLAIN, 8, "4 3 4 3 4 3 4 3",
        lambda: (4, 3, 4, 3, 4, 3, 4, 3),
        _fixed(4),
    ),
    # -- plain 9-cycles ------------------------------------------------------
    CycleFamily(
        11, _PLAIN, 9, "k k-1 i k-1 k i i-1 i+1 2",
        lambda i, k: (k, k - 1, i, k - 1, k, i, i - 1, i + 1, 2),
        _i_range(5, lambda k: 3, lambda k: k - 2),
    ),
    CycleFamily(
        12, _PLAIN, 9, "2 k-i+2 k i-2 i-1 i i-1 k k-i+2",
        lambda i, k: (2, k - i + 2, k, i - 2, i - 1, i, i - 1, k, k - i + 2),
        _i_range(5, lambda k: 4, lambda k: k - 1),
    ),
    CycleFamily(
        13, _PLAIN, 9, "k k-i k-1 k-j+i-1 k-j k j-i+1 j i",
        lambda i, j, k: (k, k - i, k - 1, k - j + i - 1, k - j, k, j - i + 1, j, i),
        _ij_range(5, _pairs_i_lt_j(2, lambda k: k - 2)),
    ),
    CycleFamily(
        14, _PLAIN, 9, "k k-1 i i-1 k-1 k i i+1 2",
        lambda i, k: (k, k - 1, i, i - 1, k - 1, k, i, i + 1, 2),
        _i_range(5, lambda k: 3, lambda k: k - 2),
    ),
    CycleFamily(
        15, _PLAIN, 9, "k k-1 k-2 k-1 k-2 k 3 k k-2",
        lambda k: (k, k - 1, k - 2, k - 1, k - 2, k, 3, k, k - 2),
        _k_only(4),
    ),
    CycleFamily(
        16, _PLAIN, 9, "k k-1 k-2 i k 2 k i k-1",
        lambda i, k: (k, k - 1, k - 2, i, k, 2, k, i, k - 1),
        _i_range(5, lambda k: 2, lambda k: k - 3),
    ),
    CycleFamily(
        17, _PLAIN, 9, "k k-j+i k j i k k-j k-i j-i",
        lambda i, j, k: (k, k - j + i, k, j, i, k, k - j, k - i, j - i),
        _ij_range(6, _pairs_i_plus2_j(2, lambda k: k - 2)),
    ),
    CycleFamily(
        18, _PLAIN, 9, "k k-j+i k-j k j i k k-i j-i",
        lambda i, j, k: (k, k - j + i, k - j, k, j, i, k, k - i, j - i),
        _ij_range(6, _pairs_i_plus2_j(2, lambda k: k - 2)),
    ),
    CycleFamily(
        19, _PLAIN, 9, "k k-j+i k-j+1 k j i k k-i+1 j-i+1",
        lambda i, j, k: (k, k - j + i, k - j + 1, k, j, i, k, k - i + 1, j - i + 1),
        _ij_range(4, _pairs_i_lt_j(2, lambda k: k - 1)),
    ),
    CycleFamily(
        20, _PLAIN, 9, "k k-1 k k-1 k k-1 k-3 k 3",
        lambda k: (k, k - 1, k, k - 1, k, k - 1, k - 3, k, 3),
        _k_only(5),
    ),
    # -- burnt 8-cycles ------------------------------------------------------
    CycleFamily(
        23, _BURNT, 8, "k j i j k k-j+i i k-j+i",
        lambda i, j, k: (k, j, i, j, k, k - j + i, i, k - j + i),
        _ij_range(3, _pairs_i_lt_j(1, lambda k: k - 1)),
    ),
    CycleFamily(
        24, _BURNT, 8, "k j k i k j k i",
        lambda i, j, k: (k, j, k, i, k, j, k, i),
        _ij_range(4, _pairs_sum_bounded(2, lambda k: k - 2, lambda k: k)),
    ),
    CycleFamily(
        25, _BURNT, 8, "k i k 1 k i k 1",
        lambda i, k: (k, i, k, 1, k, i, k, 1),
        _i_range(3, lambda k: 2, lambda k: k - 1),
    ),
    CycleFamily(
        26, _BURNT, 8, "k 1 k 1 k 1 k 1",
        lambda k: (k, 1, k, 1, k, 1, k, 1),
        _k_only(2),
    ),
    # -- burnt 9-cycles ------------------------------------------------------
    CycleFamily(
        27, _BURNT, 9, "k k-i k k-j k-i-j k j i+j i",
        lambda i, j, k: (k, k - i, k, k - j, k - i - j, k, j, i + j, i),
        _ij_range(3, _pairs_sum_bounded(1, lambda k: k - 2, lambda k: k - 1)),
    ),
    CycleFamily(
        28, _BURNT, 9, "k i+j i k k-i j k k-j k-i-j",
        lambda i, j, k: (k, i + j, i, k, k - i, j, k, k - j, k - i - j),
        _ij_range(3, _pairs_sum_bounded(1, lambda k: k - 2, lambda k: k - 1)),
    ),
)


def families_for(kind: GraphKind, length: int) -> tuple[CycleFamily, ...]:
    """All template families for this graph kind and cycle length, by id.

    Classifications exist for lengths 6-9 (plain) and 8-9 (burnt); other
    lengths raise UnsupportedLengthError.
    """
    supported = {6, 7, 8, 9} if kind is GraphKind.PLAIN else {8, 9}
    if length not in supported:
        raise UnsupportedLengthError(
            f"no classification for {length}-cycles in {kind} graphs "
            f"(supported: {sorted(supported)})"
        )
    return tuple(
        f for f in FAMILIES if f.kind is kind and f.length == length
    )


def match_form(form: Sequence[int], kind: GraphKind) -> FamilyMatch | _Unmatched:
    """Identify the family template instantiating a canonical form.

    The largest label of any template instance equals its parameter k, so k
    is read off the form and only (i, j) need scanning. Template instances
    are canonicalized before comparison. Returns UNMATCHED if no in-range
    instance of any family reproduces the form.
    """
    f = canonicalize(form)
    families = families_for(kind, len(f))
    k = max(f)
    for family in families:
        for params in family.instances(k):
            if canonicalize(family.build(**params)) == f:
                return FamilyMatch(family.id, tuple(sorted(params.items())))
    return UNMATCHED


def _flip_plain(entries: tuple[int, ...], i: int) -> tuple[int, ...]:
    return entries[i - 1 :: -1] + entries[i:]


def _flip_burnt(entries: tuple[int, ...], i: int) -> tuple[int, ...]:
    return tuple(-e for e in entries[i - 1 :: -1]) + entries[i:]


def _dfs_node_estimate(degree: int, length: int) -> int:
    # After the first step the previous flip is never repeated, so the DFS
    # tree branches by (degree - 1).
    return sum(degree * max(degree - 1, 1) ** (d - 1) for d in range(1, length + 1))


def enumerate_cycles(
    graph: PancakeGraph,
    length: int,
    *,
    node_budget: int | None = None,
) -> list[Cycle]:
    """All simple cycles of exactly ``length`` through the identity, each once.

    Depth-``length`` DFS over flip labels in ascending order, pruning
    revisited vertices; a traversal counts only when it closes at exact depth.
    Each cycle has two identity-rooted traversals (one per direction); the one
    whose first interior vertex has the smaller rank is kept. Output is
    sorted by canonical form, then vertex ranks.
    """
    if not 3 <= length <= 12:
        raise UnsupportedLengthError(
            f"cycle length must be between 3 and 12, got {length}"
        )
    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    estimate = _dfs_node_estimate(graph.degree, length)
    if estimate > budget:
        raise InfeasibleSizeError(
            f"depth-{length} cycle search in {graph} would expand about "
            f"{estimate:,} nodes, exceeding the budget of {budget:,}"
        )

    burnt = graph.kind is GraphKind.BURNT
    flip = _flip_burnt if burnt else _flip_plain
    flips = list(graph.flip_indices)
    identity = tuple(range(1, graph.n + 1))

    def rank_of(entries: tuple[int, ...]) -> int:
        return srank(SignedPerm(entries)) if burnt else rank(Perm(entries))

    found: dict[tuple[tuple[int, ...], tuple[int, ...]], Cycle] = {}
    path: list[tuple[int, ...]] = [identity]
    on_path: set[tuple[int, ...]] = {identity}
    labels: list[int] = []

    def record(closing_label: int) -> None:
        first, last = rank_of(path[1]), rank_of(path[-1])
        if first > last:
            return  # the reverse traversal of a cycle already (or later) kept
        form = canonicalize(labels + [closing_label])
        ranks = tuple(sorted(rank_of(v) for v in path))
        key = (form, ranks)
        if key in found:
            raise AssertionError(
                f"two traversals of distinct cycles collided on {key}"
            )
        found[key] = Cycle(form, ranks)

    def dfs(v: tuple[int, ...]) -> None:
        depth = len(labels)
        previous = labels[-1] if labels else 0
        closing = depth == length - 1
        for i in flips:
            if i == previous:
                continue  # flips are involutions; this undoes the last step
            w = flip(v, i)
            if closing:
                if w == identity:
                    record(i)
                continue
            if w == identity or w in on_path:
                continue
            labels.append(i)
            path.append(w)
            on_path.add(w)
            dfs(w)
            labels.pop()
            path.pop()
            on_path.remove(w)

    if length >= 3 and graph.degree >= 2:
        dfs(identity)
    return sorted(found.values(), key=lambda c: (c.labels, c.ranks))


@dataclass(frozen=True, slots=True)
class FamilyTally:
    """Census results for one family: cycle count and parameter bindings seen."""

    count: int
    instances: tuple[tuple[tuple[str, int], ...], ...]


@dataclass(frozen=True, slots=True)
class CensusReport:
    """Exhaustive classification check of all L-cycles through the identity."""

    kind: GraphKind
    n: int
    length: int
    total: int
    per_family: dict[int, FamilyTally]
    unmatched: tuple[tuple[int, ...], ...]

    @property
    def ok(self) -> bool:
        """True when every enumerated cycle matched some family."""
        return not self.unmatched

    @property
    def matched_total(self) -> int:
        return sum(t.count for t in self.per_family.values())


def _walk_closes_simply(graph: PancakeGraph, form: tuple[int, ...]) -> bool:
    """Apply the labels from the identity: L distinct vertices, then return."""
    v = graph.identity
    seen = {v}
    for label in form[:-1]:
        v = graph.apply(v, label)
        if v in seen:
            return False
        seen.add(v)
    return graph.apply(v, form[-1]) == graph.identity


def verify_classification(
    graph: PancakeGraph,
    length: int,
    *,
    node_budget: int | None = None,
) -> CensusReport:
    """Enumerate every L-cycle through the identity and match each to a family.

    Also re-checks, independently of enumeration bookkeeping, that each
    reported canonical form traces a simple closed walk from the identity.
    A report with ``unmatched`` empty confirms the classification at (g, L).
    """
    cycles = enumerate_cycles(graph, length, node_budget=node_budget)
    match_of: dict[tuple[int, ...], FamilyMatch | _Unmatched] = {}
    for cycle in cycles:
        if cycle.labels not in match_of:
            if not _walk_closes_simply(graph, cycle.labels):
                raise AssertionError(
                    f"canonical form {cycle.labels} does not trace a simple "
                    f"{length}-cycle from the identity in {graph}"
                )
            match_of[cycle.labels] = match_form(cycle.labels, graph.kind)

    counts: dict[int, int] = {}
    instances: dict[int, set] = {}
    unmatched: list[tuple[int, ...]] = []
    for cycle in cycles:
        m = match_of[cycle.labels]
        if m is UNMATCHED:
            unmatched.append(cycle.labels)
        else:
            counts[m.family_id] = counts.get(m.family_id, 0) + 1
            instances.setdefault(m.family_id, set()).add(m.params)

    per_family = {
        fid: FamilyTally(counts[fid], tuple(sorted(instances[fid])))
        for fid in sorted(counts)
    }
    return CensusReport(
        kind=graph.kind,
        n=graph.n,
        length=length,
        total=len(cycles),
        per_family=per_family,
        unmatched=tuple(sorted(unmatched)),
    )
