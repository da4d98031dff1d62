"""
Braid and pure braid group actions on factorization tuples, and orbit search.

Generator ``b_i`` (1-based) replaces (s_i, s_{i+1}) by (s_{i+1}, s_{i+1}^-1 s_i s_{i+1}).
Words are applied left to right. The pure braid generators are

    A_ij = b_{j-1} ... b_{i+1} b_i^2 b_{i+1}^-1 ... b_{j-1}^-1,   1 <= i < j <= n.

Orbits are computed on equivalence classes: every tuple reached is reduced to
its conjugation-class key before the visited-set lookup.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .factorization import class_key_raw, _lexmin_raw
from .perm import Permutation

__all__ = [
    "braid_move", "braid_move_inv", "pure_braid_generator", "pure_braid_generator_inv",
    "pure_braid_word", "apply_letters", "OrbitReport", "OrbitLimitExceeded",
    "pure_braid_orbits", "full_braid_orbits", "adjacent_square_orbits",
]


class OrbitLimitExceeded(RuntimeError):
    pass


def _inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _conj(p, g):
    # g^-1 p g
    gi = _inv(g)
    return tuple(gi[p[g[x]]] for x in range(len(p)))


def _move(t, i):
    # 0-based position i
    a, b = t[i], t[i + 1]
    return t[:i] + (b, _conj(a, b)) + t[i + 2:]


def _move_inv(t, i):
    a, b = t[i], t[i + 1]
    ai = _inv(a)
    return t[:i] + (_conj(b, ai), a) + t[i + 2:]


def _check_pos(n, i):
    if not 1 <= i <= n - 1:
        raise IndexError(f"braid generator index {i} outside 1..{n - 1}")


def pure_braid_word(i: int, j: int) -> list[tuple[int, int]]:
    """A_ij as a list of (generator index, +-1), applied left to right."""
    if not 1 <= i < j:
        raise IndexError(f"need 1 <= i < j, got ({i}, {j})")
    word = [(k, 1) for k in range(j - 1, i, -1)]
    word += [(i, 1), (i, 1)]
    word += [(k, -1) for k in range(i + 1, j)]
    return word


def _apply_word(t, word):
    for k, s in word:
        t = _move(t, k - 1) if s > 0 else _move_inv(t, k - 1)
    return t


def _inverse_word(word):
    return [(k, -s) for k, s in reversed(word)]


def _raw(sigma: Sequence[Permutation]):
    return tuple(p.raw for p in sigma)


def _wrap(t) -> tuple[Permutation, ...]:
    return tuple(Permutation._raw(p) for p in t)


def braid_move(sigma: Sequence[Permutation], i: int) -> tuple[Permutation, ...]:
    _check_pos(len(sigma), i)
    return _wrap(_move(_raw(sigma), i - 1))


def braid_move_inv(sigma: Sequence[Permutation], i: int) -> tuple[Permutation, ...]:
    _check_pos(len(sigma), i)
    return _wrap(_move_inv(_raw(sigma), i - 1))


def pure_braid_generator(sigma: Sequence[Permutation], i: int, j: int) -> tuple[Permutation, ...]:
    if not 1 <= i < j <= len(sigma):
        raise IndexError(f"pure braid generator ({i}, {j}) out of range for length {len(sigma)}")
    return _wrap(_apply_word(_raw(sigma), pure_braid_word(i, j)))


def pure_braid_generator_inv(sigma: Sequence[Permutation], i: int, j: int) -> tuple[Permutation, ...]:
    if not 1 <= i < j <= len(sigma):
        raise IndexError(f"pure braid generator ({i}, {j}) out of range for length {len(sigma)}")
    return _wrap(_apply_word(_raw(sigma), _inverse_word(pure_braid_word(i, j))))


def _parse_letter(letter: str):
    # "A13", "A13^-1", "b2", "b2^-1"
    inv = letter.endswith("^-1")
    body = letter[:-3] if inv else letter
    if body[0] == "A":
        i, j = int(body[1]), int(body[2:])
        word = pure_braid_word(i, j)
    elif body[0] == "b":
        word = [(int(body[1:]), 1)]
    else:
        raise ValueError(f"unknown letter {letter!r}")
    return _inverse_word(word) if inv else word


def apply_letters(sigma: Sequence[Permutation], letters: Iterable[str]) -> tuple[Permutation, ...]:
    """Apply a word written as letters like ``A12``, ``A23^-1`` or ``b1``."""
    t = _raw(sigma)
    for letter in letters:
        t = _apply_word(t, _parse_letter(letter))
    return _wrap(t)


@dataclass
class OrbitReport:
    orbit_count: int
    orbit_sizes: list[int]
    generator_applications: int
    orbits: list[list[int]] = field(default_factory=list)
    witness_paths: dict[int, list[str]] | None = None
    states_visited: int = 0

    def to_json(self) -> dict:
        out = {
            "orbit_count": self.orbit_count,
            "orbit_sizes": self.orbit_sizes,
            "generator_applications": self.generator_applications,
            "states_visited": self.states_visited,
            "orbits": self.orbits,
        }
        if self.witness_paths is not None:
            out["witness_paths"] = {str(k): v for k, v in sorted(self.witness_paths.items())}
        return out


def _key(t, d):
    k = class_key_raw(t, d)
    if k is None:
        k = ("lexmin",) + _lexmin_raw(t, d)
    return k


def _orbits(inputs, generators, witness, limit, dfs=False):
    """Partition ``inputs`` (raw tuples) under the generator words.

    ``generators`` is a list of (letter, word). States outside the input set
    are explored too, so the partition is right even for a partial input.
    """
    if not inputs:
        return OrbitReport(0, [], 0)
    d = len(inputs[0][0])
    index = {}
    for pos, t in enumerate(inputs):
        index.setdefault(_key(t, d), pos)
    owner: dict = {}
    orbits = []
    paths: dict[int, list[str]] = {}
    applications = 0
    for start, t0 in enumerate(inputs):
        k0 = _key(t0, d)
        if k0 in owner:
            continue
        oid = len(orbits)
        members = {index[k0]}
        owner[k0] = oid
        parent = {k0: None}
        frontier = deque([t0])
        while frontier:
            t = frontier.pop() if dfs else frontier.popleft()
            kt = _key(t, d)
            for letter, word in generators:
                u = _apply_word(t, word)
                applications += 1
                ku = _key(u, d)
                if ku in owner:
                    continue
                owner[ku] = oid
                if witness:
                    parent[ku] = (kt, letter)
                if ku in index:
                    members.add(index[ku])
                frontier.append(u)
                if limit is not None and len(owner) > limit:
                    raise OrbitLimitExceeded(f"orbit search exceeded {limit} states")
        orbits.append(sorted(members))
        if witness:
            for m in members:
                word = []
                k = _key(inputs[m], d)
                while parent[k] is not None:
                    k, letter = parent[k]
                    word.append(letter + "^-1")
                paths[m] = word
    sizes = sorted(len(o) for o in orbits)
    return OrbitReport(len(orbits), sizes, applications, orbits,
                       paths if witness else None, len(owner))


def _as_raw(classes) -> list:
    out = []
    for c in classes:
        sigma = getattr(c, "sigma", c)
        out.append(tuple(p.raw if isinstance(p, Permutation) else tuple(p) for p in sigma))
    return out


def pure_braid_orbits(classes, *, witness: bool = False, limit: int | None = None,
                      dfs: bool = False) -> OrbitReport:
    """Orbits of the pure braid group (all A_ij) on the given classes.

    Witness paths, when requested, map each input index to a word taking it
    to the first class of its orbit.
    """
    inputs = _as_raw(classes)
    if not inputs:
        return OrbitReport(0, [], 0)
    n = len(inputs[0])
    gens = [(f"A{i}{j}", pure_braid_word(i, j)) for i in range(1, n) for j in range(i + 1, n + 1)]
    return _orbits(inputs, gens, witness, limit, dfs)


def adjacent_square_orbits(classes, *, limit: int | None = None) -> OrbitReport:
    """Orbits under the adjacent squares b_i^2 only (a subgroup of the pure braids)."""
    inputs = _as_raw(classes)
    if not inputs:
        return OrbitReport(0, [], 0)
    n = len(inputs[0])
    gens = [(f"A{i}{i + 1}", [(i, 1), (i, 1)]) for i in range(1, n)]
    return _orbits(inputs, gens, False, limit)


def full_braid_orbits(classes, *, witness: bool = False, limit: int | None = None) -> OrbitReport:
    """Orbits of the full braid group; classes may mix orderings of e."""
    inputs = _as_raw(classes)
    if not inputs:
        return OrbitReport(0, [], 0)
    n = len(inputs[0])
    gens = [(f"b{i}", [(i, 1)]) for i in range(1, n)]
    return _orbits(inputs, gens, witness, limit)
