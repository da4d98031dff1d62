"""
Permutations of {1, ..., d} for small d.

Points are 1-based in every external format (cycle text, JSON, the
``images`` property). Internally a permutation stores a 0-based tuple of
images, which is what the search code in this package manipulates directly.

Products act right to left: ``compose(p, q)(x) == p(q(x))``.

>>> p = perm_from_cycles([(1, 4, 5), (2, 3)], 5)
>>> p.images
(4, 3, 2, 5, 1)
>>> format_cycles(compose(perm_from_cycles([(1, 2)], 3), perm_from_cycles([(1, 3)], 3)))
'(1 3 2)'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_DEGREE = 64

__all__ = [
    "MAX_DEGREE", "Permutation", "CycleType",
    "perm_from_cycles", "identity", "compose", "conjugate", "inverse",
    "support", "cycle_type", "index", "is_single_cycle", "cycles_of",
    "format_cycles", "parse_cycles", "mask_points", "points_mask",
]


class Permutation:
    """An immutable bijection of {1..d}."""

    __slots__ = ("_img",)

    def __init__(self, images: Sequence[int], *, zero_based: bool = False):
        img = tuple(images) if zero_based else tuple(x - 1 for x in images)
        d = len(img)
        if d < 1:
            raise ValueError("degree must be at least 1")
        if d > MAX_DEGREE:
            raise ValueError(f"degree {d} exceeds the supported maximum {MAX_DEGREE}")
        if sorted(img) != list(range(d)):
            raise ValueError("images do not form a bijection of {1..d}")
        object.__setattr__(self, "_img", img)

    @classmethod
    def _raw(cls, img: tuple[int, ...]) -> "Permutation":
        # trusted constructor for tuples already known to be bijections
        p = object.__new__(cls)
        object.__setattr__(p, "_img", img)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._img)

    @property
    def raw(self) -> tuple[int, ...]:
        """0-based image tuple."""
        return self._img

    def __call__(self, x: int) -> int:
        return self._img[x - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __hash__(self):
        return hash(self._img)

    def __repr__(self):
        return f"Permutation({format_cycles(self)}, degree={self.degree})"

    def __str__(self):
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))


@dataclass(frozen=True, order=True)
class CycleType:
    """Nontrivial cycle lengths, weakly increasing, fixed points omitted."""
    parts: tuple[int, ...]
    degree: int

    @property
    def index(self) -> int:
        return sum(a - 1 for a in self.parts)


def identity(d: int) -> Permutation:
    if d < 1:
        raise ValueError("degree must be at least 1")
    if d > MAX_DEGREE:
        raise ValueError(f"degree {d} exceeds the supported maximum {MAX_DEGREE}")
    return Permutation._raw(tuple(range(d)))


def perm_from_cycles(cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
    """Build the permutation sending each cycle entry to its cyclic successor."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    if degree > MAX_DEGREE:
        raise ValueError(f"degree {degree} exceeds the supported maximum {MAX_DEGREE}")
    img = list(range(degree))
    seen = set()
    for cyc in cycles:
        cyc = list(cyc)
        for x in cyc:
            if not 1 <= x <= degree:
                raise ValueError(f"point {x} out of range 1..{degree}")
            if x in seen:
                raise ValueError(f"point {x} appears more than once")
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return Permutation._raw(tuple(img))


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if len(p._img) != len(q._img):
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return p*q, where q acts first."""
    _check_degrees(p, q)
    pi = p._img
    return Permutation._raw(tuple(pi[x] for x in q._img))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p._img)
    for i, x in enumerate(p._img):
        inv[x] = i
    return Permutation._raw(tuple(inv))


def conjugate(p: Permutation, g: Permutation) -> Permutation:
    """Return g^-1 p g."""
    return compose(inverse(g), compose(p, g))


def support(p: Permutation) -> int:
    """Moved points as a bitmask; bit x-1 stands for point x."""
    mask = 0
    for i, x in enumerate(p._img):
        if i != x:
            mask |= 1 << i
    return mask


def mask_points(mask: int) -> list[int]:
    """1-based points of a support bitmask, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i + 1)
        mask >>= 1
        i += 1
    return out


def points_mask(points: Iterable[int]) -> int:
    mask = 0
    for x in points:
        mask |= 1 << (x - 1)
    return mask


def _raw_cycles(img: Sequence[int]) -> list[list[int]]:
    # 0-based nontrivial cycles, each starting at its least point, ordered by that point
    seen = [False] * len(img)
    out = []
    for start in range(len(img)):
        if seen[start] or img[start] == start:
            continue
        cyc = [start]
        seen[start] = True
        j = img[start]
        while j != start:
            seen[j] = True
            cyc.append(j)
            j = img[j]
        out.append(cyc)
    return out


def cycles_of(p: Permutation) -> list[list[int]]:
    """Nontrivial cycles with 1-based points, each led by its least point."""
    return [[x + 1 for x in c] for c in _raw_cycles(p._img)]


def cycle_type(p: Permutation) -> CycleType:
    return CycleType(tuple(sorted(len(c) for c in _raw_cycles(p._img))), p.degree)


def index(p: Permutation) -> int:
    return cycle_type(p).index


def is_single_cycle(p: Permutation, e: int) -> bool:
    return cycle_type(p).parts == (e,)


def format_cycles(p: Permutation) -> str:
    cycles = cycles_of(p)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse ``(1 4 5)(2 3)``; commas are accepted as separators too.

    Without ``degree`` the largest point mentioned is used.
    """
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty permutation text")
    if _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        pts = [int(tok) for tok in body.replace(",", " ").split()]
        if len(pts) > 1:
            cycles.append(pts)
    if degree is None:
        degree = max((x for c in cycles for x in c), default=1)
    return perm_from_cycles(cycles, degree)
