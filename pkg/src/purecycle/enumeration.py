"""
Exhaustive enumeration of Hurwitz factorizations up to simultaneous conjugation.

The last entry is normalized to the standard cycle (1 2 ... e_last). The
search then extends the prefix product ``sigma_last * sigma_1 * ... * sigma_j``
one cycle at a time (cyclic rotation keeps the product trivial) and the
second-to-last entry is forced as the inverse of the prefix product.

Cycles are built as chains of transpositions (x1 x2)(x2 x3)...; every step
either merges two cycles of the running product or splits one. A prefix
(together with the inverse of its product) has genus
``(#merges - #orbits joined)`` accumulated over the steps, and the genus of
a prefix can never exceed the genus of the whole factorization. So a step
that merges within an already-touched orbit is only taken while genus
budget remains, and no candidate is ever generated just to be thrown away.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .factorization import Factorization, HurwitzProblem, canonical_form, class_key_raw
from .perm import Permutation

log = logging.getLogger(__name__)

__all__ = [
    "Bounds", "BoundExceeded", "EquivalenceClass",
    "enumerate_classes", "enumerate_raw", "hurwitz_number", "standard_cycle",
]

# reduce the first free entry by the centralizer only when it is this small
_CENTRALIZER_LIMIT = 20000


class BoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Bounds:
    max_degree: int = 8
    max_entries: int = 7
    workers: int = 1

    def check(self, problem: HurwitzProblem) -> None:
        if problem.d > self.max_degree:
            raise BoundExceeded(f"degree {problem.d} exceeds bound {self.max_degree}")
        if problem.length > self.max_entries:
            raise BoundExceeded(f"{problem.length} entries exceed bound {self.max_entries}")


DEFAULT_BOUNDS = Bounds()


@dataclass(frozen=True, order=True)
class EquivalenceClass:
    key: tuple[int, ...]
    canonical: Factorization

    def __init__(self, canonical: Factorization):
        object.__setattr__(self, "canonical", canonical)
        object.__setattr__(self, "key", tuple(x for p in canonical.sigma for x in p.raw))

    @property
    def sigma(self) -> tuple[Permutation, ...]:
        return self.canonical.sigma


def standard_cycle(e: int, d: int) -> tuple[int, ...]:
    """0-based images of (1 2 ... e) in degree d."""
    return tuple(list(range(1, e)) + [0] + list(range(e, d)))


def _extensions(P, orb, e, budget, d):
    """Cycles c of length e with P*c adding at most ``budget`` genus.

    Yields (cycle images, new product, new orbit labels, genus used, index delta).
    P is mutated in place during the walk and restored afterwards.
    """
    used = [False] * d
    seq = []
    out = []

    def same_cycle(Q, a, b):
        x = Q[a]
        while x != a:
            if x == b:
                return True
            x = Q[x]
        return False

    def walk(touched, extra, delta):
        last = seq[-1]
        if len(seq) == e:
            img = list(range(d))
            for a, b in zip(seq, seq[1:] + seq[:1]):
                img[a] = b
            if len(touched) > 1:
                tgt = min(touched)
                new_orb = tuple(tgt if o in touched else o for o in orb)
            else:
                new_orb = orb
            out.append((tuple(img), tuple(P), new_orb, extra, delta))
            return
        x1 = seq[0]
        for y in range(x1 + 1, d):
            if used[y]:
                continue
            oy = orb[y]
            if oy not in touched:
                step_extra, step = 0, 1
            elif same_cycle(P, last, y):
                step_extra, step = 0, -1
            elif extra < budget:
                step_extra, step = 1, 1
            else:
                continue
            used[y] = True
            seq.append(y)
            P[last], P[y] = P[y], P[last]
            new_t = touched if oy in touched else touched | {oy}
            walk(new_t, extra + step_extra, delta + step)
            P[last], P[y] = P[y], P[last]
            seq.pop()
            used[y] = False

    for x1 in range(d - e + 1):
        used[x1] = True
        seq.append(x1)
        walk(frozenset((orb[x1],)), 0, 0)
        seq.pop()
        used[x1] = False
    return out


def _centralizer(fixed: tuple[int, ...], e: int, d: int) -> list[tuple[int, ...]]:
    cyc = list(range(e))
    rest = list(range(e, d))
    elems = []
    for s in range(e):
        for perm in itertools.permutations(rest):
            g = [0] * d
            for i in cyc:
                g[i] = (i + s) % e
            for a, b in zip(rest, perm):
                g[a] = b
            elems.append(tuple(g))
    return elems


def _is_centralizer_min(c: tuple[int, ...], cent: list[tuple[int, ...]]) -> bool:
    d = len(c)
    for g in cent:
        h = [0] * d
        for x in range(d):
            h[g[x]] = g[c[x]]
        if tuple(h) < c:
            return False
    return True


class _Search:
    def __init__(self, problem: HurwitzProblem):
        self.problem = problem
        self.d = problem.d
        self.lengths = problem.lengths
        self.n = len(self.lengths)
        self.fixed = standard_cycle(self.lengths[-1], self.d)
        # index still to be absorbed after the free entry at each level
        self.tail = [sum(x - 1 for x in self.lengths[i + 1:self.n - 1]) for i in range(self.n)]

    def initial(self):
        d, e = self.d, self.lengths[-1]
        orb = tuple(0 if x < e else x for x in range(d))
        return list(self.fixed), orb, 0, e - 1

    def first_level(self, reduce: bool) -> list:
        if self.n <= 2:
            return []
        P, orb, g_used, iota = self.initial()
        cands = self._level_candidates(0, P, orb, g_used, iota)
        if reduce:
            e = self.lengths[-1]
            size = e
            for k in range(2, self.d - e + 1):
                size *= k
            if size <= _CENTRALIZER_LIMIT:
                cent = _centralizer(self.fixed, e, self.d)
                cands = [c for c in cands if _is_centralizer_min(c[0], cent)]
        return cands

    def _level_candidates(self, level, P, orb, g_used, iota):
        e = self.lengths[level]
        budget = self.problem.genus - g_used
        out = []
        for img, newP, new_orb, extra, delta in _extensions(P, orb, e, budget, self.d):
            new_iota = iota + delta
            rem = self.tail[level]
            if new_iota > rem or (new_iota - rem) % 2:
                continue
            if len(set(new_orb)) - 1 > rem:
                continue
            out.append((img, newP, new_orb, g_used + extra, new_iota))
        return out

    def run(self, start: list | None = None) -> Iterator[tuple[tuple[int, ...], ...]]:
        """Yield valid tuples as 0-based image tuples in problem order."""
        d, n = self.d, self.n
        if n == 2:
            P, orb, _, _ = self.initial()
            yield from self._close([], P, orb)
            return
        chosen: list[tuple[int, ...]] = []

        def rec(level, P, orb, g_used, iota):
            if level == n - 2:
                yield from self._close(chosen, P, orb)
                return
            for img, newP, new_orb, g2, iota2 in self._level_candidates(level, list(P), orb, g_used, iota):
                chosen.append(img)
                yield from rec(level + 1, newP, new_orb, g2, iota2)
                chosen.pop()

        if start is None:
            P, orb, g_used, iota = self.initial()
            yield from rec(0, P, orb, g_used, iota)
        else:
            for img, newP, new_orb, g2, iota2 in start:
                chosen.append(img)
                yield from rec(1, newP, new_orb, g2, iota2)
                chosen.pop()

    def _close(self, chosen, P, orb):
        d = self.d
        forced = [0] * d
        for i, x in enumerate(P):
            forced[x] = i
        e = self.lengths[-2]
        moved = [x for x in range(d) if forced[x] != x]
        if len(moved) != e:
            return
        x, steps = forced[moved[0]], 1
        while x != moved[0]:
            x = forced[x]
            steps += 1
        if steps != e:
            return
        touched = {orb[x] for x in moved}
        if len(set(orb)) - len(touched) + 1 != 1:
            return
        yield tuple(chosen) + (tuple(forced), self.fixed)


def enumerate_raw(problem: HurwitzProblem, bounds: Bounds = DEFAULT_BOUNDS) -> Iterator[tuple[Permutation, ...]]:
    """Every valid tuple whose last entry is (1 2 ... e_last)."""
    bounds.check(problem)
    if not problem.satisfies_riemann_hurwitz:
        return
    for raw in _Search(problem).run():
        yield tuple(Permutation._raw(p) for p in raw)


def _collect(problem: HurwitzProblem, start) -> dict:
    found = {}
    d = problem.d
    for raw in _Search(problem).run(start):
        key = class_key_raw(raw, d)
        if key not in found:
            found[key] = raw
    return found


def enumerate_classes(problem: HurwitzProblem, bounds: Bounds = DEFAULT_BOUNDS) -> list[EquivalenceClass]:
    """One canonical representative per equivalence class, sorted."""
    bounds.check(problem)
    if not problem.satisfies_riemann_hurwitz:
        return []
    search = _Search(problem)
    found: dict = {}
    if search.n == 2:
        found = _collect(problem, None)
    else:
        units = search.first_level(reduce=True)
        if bounds.workers > 1 and len(units) > 1:
            chunks = [units[i::bounds.workers] for i in range(bounds.workers)]
            with ProcessPoolExecutor(bounds.workers) as pool:
                for part in pool.map(_collect, [problem] * len(chunks), chunks):
                    for k, v in part.items():
                        found.setdefault(k, v)
        else:
            found = _collect(problem, units)
    classes = []
    for raw in found.values():
        sigma = canonical_form([Permutation._raw(p) for p in raw])
        classes.append(EquivalenceClass(Factorization(problem, sigma)))
    classes.sort()
    log.debug("%s: %d classes", problem, len(classes))
    return classes


def hurwitz_number(problem: HurwitzProblem, bounds: Bounds = DEFAULT_BOUNDS) -> int:
    return len(enumerate_classes(problem, bounds))
