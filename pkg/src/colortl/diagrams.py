"""Crossingless matchings on a strip, their region colorings, and stacking.

A diagram lives in a horizontal strip with m marked points on the bottom edge
(labeled B1..Bm left to right) and k on the top edge (T1..Tk left to right).
Walking the strip boundary clockwise from the bottom-left corner visits
B1..Bm, then the right edge, then Tk..T1.  We number these m+k stops as
*linear positions* 0..N-1 (so B_i sits at position i-1 and T_j at position
m+k-j) and store a matching as the involution ``seq`` of its positions.  In
this order a matching is crossingless exactly when the chords form a balanced
bracket sequence, which makes generation and validation one stack scan.

The *gaps* 0..N between consecutive positions correspond to the boundary
intervals of the strip: gap 0 and gap N are the two halves of the strip's
left region, gap m is its right region, and the rest read off the source and
target color sequences.  A color sequence for a boundary with m points has
m+1 entries (adjacent entries distinct); sequences are plain tuples of color
names here.

Every region of a crossingless diagram touches the boundary, so a coloring of
the regions is forced by the two boundary sequences: the face a gap belongs
to is determined by the innermost chord covering it, and a coloring exists
iff all gaps of each face agree.  Faces are keyed by their smallest gap.

Stacking two diagrams may close loops; ``compose_matchings`` removes them and
reports, for each, the ordered pair (color just inside, color just outside),
read from the glued interface sequence at the loop's leftmost interface
point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

Word = tuple[str, ...]


def check_word(x: Iterable[str]) -> Word:
    """Validate a color sequence: nonempty, adjacent entries distinct."""
    word = tuple(x)
    if not word:
        raise ValueError("color sequence must be nonempty")
    for a, b in zip(word, word[1:]):
        if a == b:
            raise ValueError(f"adjacent repeated color {a!r} in {''.join(word)}")
    return word


# ---------------------------------------------------------------------------
# Bare matchings.


def _label(m: int, k: int, pos: int) -> str:
    return f"B{pos + 1}" if pos < m else f"T{m + k - pos}"


def _position(m: int, k: int, label: str) -> int:
    kind, idx = label[0], int(label[1:])
    if kind == "B":
        if not 1 <= idx <= m:
            raise ValueError(f"label {label} out of range")
        return idx - 1
    if kind == "T":
        if not 1 <= idx <= k:
            raise ValueError(f"label {label} out of range")
        return m + k - idx
    raise ValueError(f"bad point label {label!r}")


def _label_key(label: str) -> tuple[int, int]:
    return (0 if label[0] == "B" else 1, int(label[1:]))


def _is_balanced(seq: tuple[int, ...]) -> bool:
    stack: list[int] = []
    for i, j in enumerate(seq):
        if not 0 <= j < len(seq) or j == i or seq[j] != i:
            return False
        if i < j:
            stack.append(j)
        elif stack.pop() != i:
            return False
    return not stack


@dataclass(frozen=True, slots=True)
class CrossinglessMatching:
    """A crossingless perfect pairing of m bottom and k top points."""

    m: int
    k: int
    seq: tuple[int, ...]

    def __post_init__(self):
        if self.m < 0 or self.k < 0 or self.m + self.k != len(self.seq):
            raise ValueError("inconsistent matching sizes")
        if not _is_balanced(self.seq):
            raise ValueError("pairing is not a crossingless matching")

    @classmethod
    def from_pairs(cls, m: int, k: int, pairs: Iterable[Iterable[str]]) -> "CrossinglessMatching":
        seq = [-1] * (m + k)
        for pair in pairs:
            a, b = tuple(pair)
            pa, pb = _position(m, k, a), _position(m, k, b)
            if seq[pa] != -1 or seq[pb] != -1 or pa == pb:
                raise ValueError("labels are not a perfect pairing")
            seq[pa], seq[pb] = pb, pa
        if -1 in seq:
            raise ValueError("labels are not a perfect pairing")
        return cls(m, k, tuple(seq))

    def pairs(self) -> tuple[tuple[str, str], ...]:
        """Canonical pair list: labels sorted within pairs, pairs sorted."""
        seen = []
        for i, j in enumerate(self.seq):
            if i < j:
                lab = sorted(
                    (_label(self.m, self.k, i), _label(self.m, self.k, j)),
                    key=_label_key,
                )
                seen.append(tuple(lab))
        seen.sort(key=lambda p: (_label_key(p[0]), _label_key(p[1])))
        return tuple(seen)

    def is_identity(self) -> bool:
        n = self.m
        return self.m == self.k and all(self.seq[i] == 2 * n - 1 - i for i in range(2 * n))

    def through_count(self) -> int:
        return sum(1 for i in range(self.m) if self.seq[i] >= self.m)

    def to_json(self) -> dict:
        return {"m": self.m, "k": self.k, "pairs": [list(p) for p in self.pairs()]}

    @classmethod
    def from_json(cls, doc: dict) -> "CrossinglessMatching":
        return cls.from_pairs(int(doc["m"]), int(doc["k"]), doc["pairs"])


@lru_cache(maxsize=None)
def _noncrossing_seqs(n: int) -> tuple[tuple[int, ...], ...]:
    if n % 2:
        return ()
    if n == 0:
        return ((),)
    out = []
    for i in range(n // 2):
        mid = 2 * i + 1
        for inner in _noncrossing_seqs(mid - 1):
            for outer in _noncrossing_seqs(n - mid - 1):
                seq = [0] * n
                seq[0], seq[mid] = mid, 0
                for a, b in enumerate(inner):
                    seq[1 + a] = 1 + b
                for a, b in enumerate(outer):
                    seq[mid + 1 + a] = mid + 1 + b
                out.append(tuple(seq))
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_matchings(m: int, k: int) -> tuple[CrossinglessMatching, ...]:
    """All crossingless matchings of (m, k), in canonical pair-list order."""
    if m < 0 or k < 0:
        raise ValueError("point counts must be nonnegative")
    found = [CrossinglessMatching(m, k, seq) for seq in _noncrossing_seqs(m + k)]
    found.sort(key=lambda d: tuple((_label_key(a), _label_key(b)) for a, b in d.pairs()))
    return tuple(found)


# ---------------------------------------------------------------------------
# Region colorings.


def _gap_color(x: Word, y: Word, m: int, k: int, gap: int) -> str:
    if gap == 0:
        return x[0]
    if gap < m:
        return x[gap]
    if gap == m:
        return x[m]
    if gap < m + k:
        return y[k - gap + m]
    return y[0]


def _innermost_arcs(seq: tuple[int, ...]) -> list[Optional[tuple[int, int]]]:
    """For each gap g in 0..N, the innermost chord covering it (or None)."""
    innermost: list[Optional[tuple[int, int]]] = []
    stack: list[tuple[int, int]] = []
    for g in range(len(seq) + 1):
        innermost.append(stack[-1] if stack else None)
        if g < len(seq):
            if seq[g] > g:
                stack.append((g, seq[g]))
            else:
                stack.pop()
    return innermost


@dataclass(frozen=True, slots=True)
class ColoredMatching:
    """A matching plus the forced consistent coloring of its regions.

    ``region_colors`` maps each region (keyed by its smallest gap) to a color;
    it is derived data and excluded from equality and hashing.
    """

    matching: CrossinglessMatching
    source: Word
    target: Word
    region_colors: tuple[tuple[int, str], ...] = field(compare=False)

    @property
    def m(self) -> int:
        return self.matching.m

    @property
    def k(self) -> int:
        return self.matching.k

    def is_identity(self) -> bool:
        return self.source == self.target and self.matching.is_identity()

    def to_json(self) -> dict:
        return self.matching.to_json()


def color_matching(
    d: CrossinglessMatching, x: Iterable[str], y: Iterable[str]
) -> Optional[ColoredMatching]:
    """The unique forced coloring of d with bottom word x and top word y.

    Returns None when no consistent coloring exists; that is a normal result.
    """
    x, y = check_word(x), check_word(y)
    if len(x) != d.m + 1 or len(y) != d.k + 1:
        raise ValueError("word lengths do not fit the matching")
    if x[0] != y[0] or x[-1] != y[-1]:
        return None
    innermost = _innermost_arcs(d.seq)
    face_color: dict[Optional[tuple[int, int]], str] = {}
    face_min_gap: dict[Optional[tuple[int, int]], int] = {}
    for gap in range(len(d.seq) + 1):
        face = innermost[gap]
        color = _gap_color(x, y, d.m, d.k, gap)
        if face not in face_color:
            face_color[face] = color
            face_min_gap[face] = gap
        elif face_color[face] != color:
            return None
    regions = tuple(sorted((face_min_gap[f], c) for f, c in face_color.items()))
    return ColoredMatching(d, x, y, regions)


@lru_cache(maxsize=None)
def enumerate_colored(x: Word, y: Word) -> tuple[ColoredMatching, ...]:
    """All consistently colorable matchings from x to y, in canonical order."""
    x, y = check_word(x), check_word(y)
    out = []
    for d in enumerate_matchings(len(x) - 1, len(y) - 1):
        colored = color_matching(d, x, y)
        if colored is not None:
            out.append(colored)
    return tuple(out)


# ---------------------------------------------------------------------------
# Elementary diagrams.


def identity_diagram(x: Iterable[str]) -> ColoredMatching:
    x = check_word(x)
    n = len(x) - 1
    seq = tuple(2 * n - 1 - i for i in range(2 * n))
    colored = color_matching(CrossinglessMatching(n, n, seq), x, x)
    assert colored is not None
    return colored


def cap_target(x: Word, p: int) -> Word:
    """The word left after capping points p, p+1 (1-based) of x."""
    if not 1 <= p <= len(x) - 2:
        raise ValueError("cap position out of range")
    if x[p - 1] != x[p + 1]:
        raise ValueError(f"cap at {p} is not color-consistent")
    return x[:p] + x[p + 2:]


def cap_diagram(x: Iterable[str], p: int) -> ColoredMatching:
    """The elementary cap joining points p, p+1 of x; a morphism x -> z."""
    x = check_word(x)
    z = cap_target(x, p)
    m = len(x) - 1
    k = m - 2
    pairs = [(f"B{p}", f"B{p + 1}")]
    for i in range(1, m + 1):
        if i < p:
            pairs.append((f"B{i}", f"T{i}"))
        elif i > p + 1:
            pairs.append((f"B{i}", f"T{i - 2}"))
    colored = color_matching(CrossinglessMatching.from_pairs(m, k, pairs), x, z)
    assert colored is not None
    return colored


def cup_diagram(x: Iterable[str], p: int) -> ColoredMatching:
    """The elementary cup creating points p, p+1 of x; a morphism z -> x."""
    return flip(cap_diagram(x, p))


def e_diagram(x: Iterable[str], p: int) -> ColoredMatching:
    """The cup-over-cap diagram at points p, p+1 of x, in End(x)."""
    x = check_word(x)
    _ = cap_target(x, p)
    m = len(x) - 1
    pairs = [(f"B{p}", f"B{p + 1}"), (f"T{p}", f"T{p + 1}")]
    for i in range(1, m + 1):
        if i != p and i != p + 1:
            pairs.append((f"B{i}", f"T{i}"))
    colored = color_matching(CrossinglessMatching.from_pairs(m, m, pairs), x, x)
    assert colored is not None
    return colored


def valid_cap_positions(x: Word) -> list[int]:
    return [p for p in range(1, len(x) - 1) if x[p - 1] == x[p + 1]]


# ---------------------------------------------------------------------------
# Stacking, flipping, factoring.


@lru_cache(maxsize=300_000)
def compose_matchings(
    top: ColoredMatching, bottom: ColoredMatching
) -> tuple[ColoredMatching, tuple[tuple[str, str], ...]]:
    """Stack ``top`` above ``bottom`` and remove closed loops.

    Returns the composed diagram and, for each removed loop, the pair
    (inside color, outside color) in a deterministic left-to-right order.
    """
    if bottom.target != top.source:
        raise ValueError("stacking interfaces do not match")
    mid = bottom.k
    lower, upper = bottom.matching.seq, top.matching.seq
    L, U = len(lower), len(upper)
    bot, topn = bottom.m, top.k
    result = [-1] * (bot + topn)
    visited = [False] * mid  # interface points in upper coordinates 0..mid-1

    for i in range(len(result)):
        v, side = (i, 0) if i < bot else (i - bot + mid, 1)
        while True:
            if side == 0:
                v = lower[v]
                if v < bot:
                    result[i] = v
                    break
                v = L - v - 1
                visited[v] = True
                side = 1
            else:
                v = upper[v]
                if v >= mid:
                    result[i] = v - mid + bot
                    break
                visited[v] = True
                v = L - v - 1
                side = 0

    loops = []
    for i in range(mid):
        if visited[i]:
            continue
        cycle_min = i
        v = i
        while True:
            visited[v] = True
            nxt = upper[v]
            visited[nxt] = True
            cycle_min = min(cycle_min, v, nxt)
            v = L - lower[L - nxt - 1] - 1
            if visited[v] and v == i:
                break
        j_min = cycle_min + 1  # 1-based leftmost interface point of the loop
        middle = bottom.target
        loops.append((j_min, (middle[j_min], middle[j_min - 1])))
    loops.sort()

    composed = color_matching(
        CrossinglessMatching(bot, topn, tuple(result)), bottom.source, top.target
    )
    assert composed is not None, "stacking consistent diagrams stays consistent"
    return composed, tuple(pair for _, pair in loops)


def flip(d: ColoredMatching) -> ColoredMatching:
    """Turn the diagram upside down, swapping source and target."""
    swapped = []
    for a, b in d.matching.pairs():
        swapped.append(
            (
                ("T" if a[0] == "B" else "B") + a[1:],
                ("T" if b[0] == "B" else "B") + b[1:],
            )
        )
    flipped = CrossinglessMatching.from_pairs(d.k, d.m, swapped)
    colored = color_matching(flipped, d.target, d.source)
    assert colored is not None
    return colored


def is_cap_diagram(d: ColoredMatching) -> bool:
    """True when no two top points are paired together."""
    return all(not (i >= d.m and j >= d.m) for i, j in enumerate(d.matching.seq) if i < j)


def is_cup_diagram(d: ColoredMatching) -> bool:
    """True when no two bottom points are paired together."""
    return all(not (i < d.m and j < d.m) for i, j in enumerate(d.matching.seq) if i < j)


def _middle_word(d: ColoredMatching) -> Word:
    """The color word along the through-strand cut of d."""
    # Peel innermost bottom-bottom pairs off the source word until only
    # through strands remain; what survives is the middle sequence.
    seq = d.matching.seq
    points = list(range(1, d.m + 1))  # 1-based bottom points, current order
    word = list(d.source)
    partner = {}
    for i, j in enumerate(seq):
        if i < j < d.m:
            partner[i + 1] = j + 1
            partner[j + 1] = i + 1
    changed = True
    while changed:
        changed = False
        for idx in range(len(points) - 1):
            a, b = points[idx], points[idx + 1]
            if partner.get(a) == b:
                del points[idx : idx + 2]
                del word[idx + 1 : idx + 3]
                changed = True
                break
    return tuple(word)


def factor(d: ColoredMatching) -> tuple[ColoredMatching, ColoredMatching]:
    """Split d as (cup part S, cap part T) with d = S after T.

    T keeps the bottom-bottom pairs of d and sends the through strands up to
    the middle word z; S keeps the top-top pairs and carries z up to the
    target.
    """
    seq = d.matching.seq
    z = _middle_word(d)
    r = len(z) - 1
    through = sorted(
        (i + 1, d.m + d.k - j) for i, j in enumerate(seq) if i < d.m <= j
    )
    cap_pairs = [(f"B{i + 1}", f"B{j + 1}") for i, j in enumerate(seq) if i < j < d.m]
    cap_pairs += [(f"B{bi}", f"T{a + 1}") for a, (bi, _) in enumerate(through)]
    cup_pairs = [
        (f"T{d.m + d.k - i}", f"T{d.m + d.k - j}")
        for i, j in enumerate(seq)
        if d.m <= i < j
    ]
    cup_pairs += [(f"B{a + 1}", f"T{tj}") for a, (_, tj) in enumerate(through)]
    cap = color_matching(
        CrossinglessMatching.from_pairs(d.m, r, cap_pairs), d.source, z
    )
    cup = color_matching(
        CrossinglessMatching.from_pairs(r, d.k, cup_pairs), z, d.target
    )
    assert cap is not None and cup is not None
    return cup, cap
