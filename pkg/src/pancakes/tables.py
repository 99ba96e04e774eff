"""Reference distance-layer counts known from prior exhaustive computation.

``PLAIN_COUNTS[n]`` / ``BURNT_COUNTS[n]`` hold the known values of R_k(n)
(permutations at pancake distance exactly k) and R_k^B(n) (signed variant)
for k = 0, 1, 2, ... as a prefix tuple. A value beyond a row's last entry is
unknown, not zero — explicit zeros inside a row are genuine assertions. The
reference window is 12 columns (k ≤ 11), so rows of graphs whose eccentricity
exceeds 11 are truncated prefixes of the true profile.
"""

from __future__ import annotations

from .graphs import GraphKind

__all__ = [
    "PLAIN_COUNTS",
    "BURNT_COUNTS",
    "KNOWN_COLUMNS",
    "known_counts",
    "cell",
    "column",
]

KNOWN_COLUMNS = 12  # reference data covers k = 0..11

PLAIN_COUNTS: dict[int, tuple[int, ...]] = {
    1: (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    2: (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    3: (1, 2, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    4: (1, 3, 6, 11, 3, 0, 0, 0, 0, 0, 0, 0),
    5: (1, 4, 12, 35, 48, 20, 0, 0, 0, 0, 0, 0),
    6: (1, 5, 20, 79, 199, 281, 133, 2, 0, 0, 0, 0),
    7: (1, 6, 30, 149, 543, 1357, 1903, 1016, 35, 0, 0, 0),
    8: (1, 7, 42, 251, 1191, 4281, 10561, 15011, 8520, 455, 0, 0),
    9: (1, 8, 56, 391, 2278, 10666, 38015, 93585, 132697, 79379, 5804, 0),
    10: (1, 9, 72, 575, 3963, 22825, 106461, 377863, 919365, 1309756, 814678, 73232),
    11: (1, 10, 90, 809, 6429, 43891, 252737, 1174766, 4126515, 9981073, 14250471, 9123648),
    12: (1, 11, 110, 1099, 9883, 77937, 533397, 3064788, 14141929, 49337252, 118420043, 169332213),
    13: (1, 12, 132, 1451, 14556, 130096, 1030505, 7046318, 40309555, 184992275, 639783475, 1525125357),
    14: (1, 13, 156, 1871, 20703, 206681, 1858149, 14721545, 100464346, 572626637),
    15: (1, 14, 182, 2365, 28603, 315305, 3169675, 28528986, 226016576),
    16: (1, 15, 210, 2939, 38559, 465001, 5165641, 52027677, 468966948),
    17: (1, 16, 240, 3599, 50898, 666342, 8102491, 90238067, 911274131),
    18: (1, 17, 272, 4351, 65971, 931561, 12301949, 150044655, 1677036683),
    19: (1, 18, 306, 5201, 84153, 1274671, 18161133, 240665410, 2947991637),
    20: (1, 19, 342, 6155, 105843, 1711585, 26163389, 374193014, 4982872347),
    21: (1, 20, 380, 7219, 131464, 2260236, 36889845, 566212968, 8141208511),
}

BURNT_COUNTS: dict[int, tuple[int, ...]] = {
    1: (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    2: (1, 2, 2, 2, 1, 0, 0, 0, 0, 0, 0, 0),
    3: (1, 3, 6, 12, 18, 6, 2, 0, 0, 0, 0, 0),
    4: (1, 4, 12, 36, 90, 124, 96, 18, 3, 0, 0, 0),
    5: (1, 5, 20, 80, 280, 680, 1214, 1127, 389, 40, 4, 0),
    6: (1, 6, 30, 150, 675, 2340, 6604, 12795, 15519, 6957, 959, 43),
    7: (1, 7, 42, 252, 1386, 6230, 24024, 71568, 159326, 222995, 136301, 21951),
    8: (1, 8, 56, 392, 2548, 14056, 68656, 276136, 901970, 2195663, 3531887, 2743477),
    9: (1, 9, 72, 576, 4320, 28224, 166740, 843822, 3636954, 12675375, 33773653, 60758618),
    10: (1, 10, 90, 810, 6885, 51960, 359928, 2193534, 11738418, 53257425, 198586153),
    11: (1, 11, 110, 1100, 10450, 89430, 710358, 5060220, 32328648, 180577749),
    12: (1, 12, 132, 1452, 15246, 145860, 1306448, 10645866, 79016157),
    13: (1, 13, 156, 1872, 21528, 227656, 2269410, 20812077, 175905015),
    14: (1, 14, 182, 2366, 29575, 342524, 3760484, 38319281, 363216425),
    15: (1, 15, 210, 2940, 39690, 499590, 5988892, 67117596),
    16: (1, 16, 240, 3600, 52200, 709520, 9220512, 112694400),
    17: (1, 17, 272, 4352, 67456, 984640, 13787272, 182483644),
    18: (1, 18, 306, 5202, 85833, 1339056, 20097264, 286341948),
    19: (1, 19, 342, 6156, 107730, 1788774, 28645578),
    20: (1, 20, 380, 7220, 133570, 2351820, 40025856),
    21: (1, 21, 420, 8400, 163800, 3048360, 54942566),
    22: (1, 22, 462, 9702, 198891, 3900820, 74223996),
    23: (1, 23, 506, 11132, 239338, 4934006, 98835968),
    24: (1, 24, 552, 12696, 285660, 6175224, 129896272),
    25: (1, 25, 600, 14400, 338400, 7654400, 168689820),
}


def known_counts(kind: GraphKind) -> dict[int, tuple[int, ...]]:
    """All known rows for one graph family, keyed by n (a fresh dict)."""
    return dict(BURNT_COUNTS if kind is GraphKind.BURNT else PLAIN_COUNTS)


def cell(kind: GraphKind, n: int, k: int) -> int | None:
    """The known value of R_k(n) (or the signed variant), or None if unknown."""
    row = known_counts(kind).get(n)
    if row is None or not 0 <= k < len(row):
        return None
    return row[k]


def column(kind: GraphKind, k: int) -> dict[int, int]:
    """All known values in one k-column, keyed by n."""
    return {
        n: row[k] for n, row in known_counts(kind).items() if 0 <= k < len(row)
    }
