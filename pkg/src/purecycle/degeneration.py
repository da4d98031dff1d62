"""
Index sequences at the nodes of a chain of r-2 lines.

For cycle lengths e_1..e_r the chain carries interior indices e'_2..e'_{r-2},
read in the interleaved order

    e_1, e_2, e'_2, e_3, e'_3, ..., e'_{r-2}, e_{r-1}, e_r

and split into the triples (e_1, e_2, e'_2), (e'_2, e_3, e'_3), ...,
(e'_{r-2}, e_{r-1}, e_r), one per component. A triple (a, b, c) is admissible
when a+b+c is odd and each entry is less than the sum of the other two; its
component then has degree (a+b+c-1)/2, which must not exceed d.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .factorization import HurwitzProblem, Validity

__all__ = [
    "NodeIndexSequence", "is_valid_sequence", "enumerate_sequences", "connect_sequences",
    "constructive_path", "bfs_path", "aspect_degrees", "triples", "NoPath",
]


class NoPath(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class NodeIndexSequence:
    interior: tuple[int, ...]
    problem: HurwitzProblem

    def __init__(self, problem: HurwitzProblem, interior: Sequence[int]):
        object.__setattr__(self, "problem", problem)
        object.__setattr__(self, "interior", tuple(int(x) for x in interior))
        if problem.genus or problem.simple_count:
            raise ValueError("node sequences are defined for genus 0 only")
        if problem.r < 3:
            raise ValueError("need at least three cycle lengths")
        if len(self.interior) != problem.r - 3:
            raise ValueError(f"expected {problem.r - 3} interior indices, got {len(self.interior)}")

    def with_interior(self, interior: Sequence[int]) -> "NodeIndexSequence":
        return NodeIndexSequence(self.problem, interior)

    def __str__(self):
        return "(" + ",".join(map(str, self.interior)) + ")"


def triples(e: Sequence[int], interior: Sequence[int]) -> list[tuple[int, int, int]]:
    r = len(e)
    chain = [e[0]] + list(interior) + [e[r - 1]]
    return [(chain[i], e[i + 1], chain[i + 1]) for i in range(r - 2)]


def _triple_fault(t, d, degree_bound) -> str | None:
    a, b, c = t
    if min(t) < 1:
        return f"index below 1 in {t}"
    if (a + b + c) % 2 == 0:
        return f"parity: {a}+{b}+{c} is even"
    for x, y, z in ((a, b, c), (b, a, c), (c, a, b)):
        if x >= y + z:
            return f"triangle: {x} >= {y}+{z} in {t}"
    if degree_bound and (a + b + c - 1) // 2 > d:
        return f"degree: component {t} has degree {(a + b + c - 1) // 2} > {d}"
    return None


def is_valid_sequence(seq: NodeIndexSequence, *, degree_bound: bool = True) -> Validity:
    """Validity with the first failing triple named."""
    p = seq.problem
    for t in triples(p.e, seq.interior):
        fault = _triple_fault(t, p.d, degree_bound)
        if fault:
            return Validity(False, fault)
    return Validity(True)


def aspect_degrees(seq: NodeIndexSequence) -> list[int]:
    out = []
    for a, b, c in triples(seq.problem.e, seq.interior):
        if (a + b + c) % 2 == 0:
            raise AssertionError(f"component ({a},{b},{c}) has no integral degree")
        out.append((a + b + c - 1) // 2)
    return out


def _next_range(x, b, d, degree_bound):
    """Values y making (x, b, y) admissible, ascending."""
    lo = abs(x - b) + 1
    hi = x + b - 1
    if degree_bound:
        hi = min(hi, 2 * d + 1 - x - b)
    if (x + b + lo) % 2 == 0:
        lo += 1
    return range(max(lo, 1), hi + 1, 2)


def enumerate_sequences(problem: HurwitzProblem, *, degree_bound: bool = True) -> list[NodeIndexSequence]:
    """All admissible interior sequences in lexicographic order."""
    if problem.genus or problem.simple_count:
        raise ValueError("node sequences are defined for genus 0 only")
    e, d, r = problem.e, problem.d, problem.r
    out = []

    def rec(prefix):
        x = prefix[-1] if prefix else e[0]
        i = len(prefix)
        if i == r - 3:
            if _triple_fault((x, e[r - 2], e[r - 1]), d, degree_bound) is None:
                out.append(NodeIndexSequence(problem, prefix))
            return
        for y in _next_range(x, e[i + 1], d, degree_bound):
            assert y <= 2 * d
            rec(prefix + [y])

    rec([])
    return out


def _valid(problem, interior, degree_bound):
    return all(_triple_fault(t, problem.d, degree_bound) is None
               for t in triples(problem.e, interior))


def _raise(problem, cur, i, degree_bound, depth=0):
    """Steps raising cur[i] by 2, first making room further along the chain."""
    if depth > 4 * problem.d:
        return None
    trial = list(cur)
    trial[i] += 2
    if _valid(problem, trial, degree_bound):
        return [tuple(trial)]
    if i + 1 >= len(cur):
        return None
    room = _raise(problem, cur, i + 1, degree_bound, depth + 1)
    if room is None:
        return None
    rest = _raise(problem, room[-1], i, degree_bound, depth + 1)
    return None if rest is None else room + rest


def constructive_path(s1: NodeIndexSequence, s2: NodeIndexSequence, *,
                      degree_bound: bool = True) -> list[NodeIndexSequence] | None:
    """Raise whichever side is lower at the first differing index until they meet.

    Returns the path without ``s1`` and ending at ``s2``, or None when a
    raise is blocked at the end of the chain.
    """
    p = s1.problem
    fwd, back = [s1.interior], [s2.interior]
    while fwd[-1] != back[-1]:
        a, b = fwd[-1], back[-1]
        i = next(j for j in range(len(a)) if a[j] != b[j])
        side = fwd if a[i] < b[i] else back
        steps = _raise(p, side[-1], i, degree_bound)
        if steps is None:
            return None
        side.extend(steps)
        if max(max(fwd[-1]), max(back[-1])) > 2 * p.d + 1:
            return None
    path = fwd[1:] + back[::-1][1:]
    return [s1.with_interior(t) for t in path]


def bfs_path(s1: NodeIndexSequence, s2: NodeIndexSequence, *,
             degree_bound: bool = True) -> list[NodeIndexSequence] | None:
    """Shortest path in the graph of +-2 single-index moves."""
    p = s1.problem
    start, goal = s1.interior, s2.interior
    parent = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            path = []
            while cur != start:
                path.append(cur)
                cur = parent[cur]
            return [s1.with_interior(t) for t in reversed(path)]
        for i in range(len(cur)):
            for step in (-2, 2):
                nxt = cur[:i] + (cur[i] + step,) + cur[i + 1:]
                if nxt not in parent and _valid(p, nxt, degree_bound):
                    parent[nxt] = cur
                    queue.append(nxt)
    return None


def _check_path(s1, path, degree_bound):
    prev = s1.interior
    for t in path:
        diff = [(a, b) for a, b in zip(prev, t.interior) if a != b]
        if len(diff) != 1 or abs(diff[0][0] - diff[0][1]) != 2:
            raise AssertionError(f"step {prev} -> {t.interior} is not a single +-2 move")
        if not _valid(t.problem, t.interior, degree_bound):
            raise AssertionError(f"path passes through invalid {t.interior}")
        prev = t.interior


def connect_sequences(s1: NodeIndexSequence, s2: NodeIndexSequence, *,
                      degree_bound: bool = True, method: str = "auto") -> list[NodeIndexSequence]:
    """A path from s1 to s2 through valid sequences, one +-2 move per step.

    ``method`` is "constructive", "bfs", or "auto" (constructive, then bfs).
    """
    if s1.problem != s2.problem:
        raise ValueError("sequences belong to different problems")
    for s in (s1, s2):
        v = is_valid_sequence(s, degree_bound=degree_bound)
        if not v:
            raise ValueError(f"{s} is not valid: {v.reason}")
    path = None
    if method in ("auto", "constructive"):
        path = constructive_path(s1, s2, degree_bound=degree_bound)
    if path is None and method in ("auto", "bfs"):
        path = bfs_path(s1, s2, degree_bound=degree_bound)
    if path is None:
        raise NoPath(f"no path from {s1} to {s2}")
    _check_path(s1, path, degree_bound)
    if (path[-1].interior if path else s1.interior) != s2.interior:
        raise AssertionError("path does not end at the target")
    return path
