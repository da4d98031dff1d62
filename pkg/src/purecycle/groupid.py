"""
Identification of the permutation group generated by a factorization.

Orders come from a Schreier-Sims stabilizer chain; a plain closure
recomputes the order when it is at most ``CLOSURE_LIMIT`` and the two must
agree. Everything works on 0-based image tuples.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .enumeration import Bounds, DEFAULT_BOUNDS, enumerate_classes
from .factorization import HurwitzProblem
from .perm import Permutation

__all__ = [
    "GroupTag", "GroupClass", "BlockSystem", "NielsenReport", "GroupBoundExceeded",
    "generated_group", "group_order", "closure_order", "is_primitive",
    "nielsen_uniqueness_check", "parity_prediction", "CLOSURE_LIMIT",
]

CLOSURE_LIMIT = 100_000
MAX_GROUP_DEGREE = 10


class GroupBoundExceeded(ValueError):
    pass


class GroupTag(str, enum.Enum):
    CYCLIC = "CYCLIC"
    ALTERNATING = "ALTERNATING"
    SYMMETRIC = "SYMMETRIC"
    S5_IN_S6 = "S5_IN_S6"
    OTHER = "OTHER"


@dataclass(frozen=True)
class GroupClass:
    tag: GroupTag
    degree: int
    order: int
    transitive: bool
    primitive: bool
    doubly_transitive: bool

    @property
    def label(self) -> str:
        if self.tag in (GroupTag.S5_IN_S6, GroupTag.OTHER):
            return self.tag.value
        return f"{self.tag.value}({self.degree})"

    def __str__(self):
        return self.label


def _mul(p, q):
    # p*q, q first
    return tuple(p[x] for x in q)


def _inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _raw_gens(generators) -> tuple[list[tuple[int, ...]], int]:
    gens = [g.raw if isinstance(g, Permutation) else tuple(g) for g in generators]
    if not gens:
        raise ValueError("at least one generator is needed")
    d = len(gens[0])
    if any(len(g) != d for g in gens):
        raise ValueError("generators have different degrees")
    return gens, d


def _transversal(gens, b):
    """Map each point of the orbit of b to an element sending b there."""
    d = len(gens[0]) if gens else 0
    t = {b: tuple(range(d))} if d else {b: ()}
    queue = deque([b])
    while queue:
        x = queue.popleft()
        u = t[x]
        for s in gens:
            y = s[x]
            if y not in t:
                t[y] = _mul(s, u)
                queue.append(y)
    return t


def _stabilizer_chain(gens: list, d: int):
    ident = tuple(range(d))
    gens = [g for g in gens if g != ident]
    base: list[int] = []
    strong: list[list] = []
    trans: list[dict] = []

    def add_base_point(h):
        x = next(i for i in range(d) if h[i] != i)
        base.append(x)
        strong.append([])
        trans.append({x: ident})

    for g in gens:
        if all(g[b] == b for b in base):
            add_base_point(g)
    for lvl in range(len(base)):
        strong[lvl] = [g for g in gens if all(g[b] == b for b in base[:lvl])]
        trans[lvl] = _transversal(strong[lvl], base[lvl])

    def sift(h, start):
        for lvl in range(start, len(base)):
            x = h[base[lvl]]
            if x not in trans[lvl]:
                return h, lvl
            h = _mul(_inv(trans[lvl][x]), h)
        return h, len(base)

    i = len(base) - 1
    while i >= 0:
        restart = False
        for x, ux in list(trans[i].items()):
            for s in strong[i]:
                h = _mul(_inv(trans[i][s[x]]), _mul(s, ux))
                if h == ident:
                    continue
                y, j = sift(h, i + 1)
                if j < len(base) or y != ident:
                    if j == len(base):
                        add_base_point(y)
                    for lvl in range(i + 1, j + 1):
                        strong[lvl].append(y)
                        trans[lvl] = _transversal(strong[lvl], base[lvl])
                    i = j
                    restart = True
                    break
            if restart:
                break
        if not restart:
            i -= 1
    return base, trans


def group_order(generators) -> int:
    """Exact order via a stabilizer chain."""
    gens, d = _raw_gens(generators)
    _, trans = _stabilizer_chain(gens, d)
    return math.prod(len(t) for t in trans)


def _closure(gens, limit):
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = _mul(s, g)
            if h not in seen:
                seen.add(h)
                if len(seen) > limit:
                    return None
                queue.append(h)
    return seen


def closure_order(generators, limit: int = CLOSURE_LIMIT) -> int | None:
    """Order by listing every element, or None past ``limit``."""
    gens, _ = _raw_gens(generators)
    elems = _closure(gens, limit)
    return None if elems is None else len(elems)


def _orbit(gens, start):
    seen = {start}
    queue = [start]
    while queue:
        x = queue.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _minimal_block(gens, d, b):
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(0)
    queue = deque([(0, b)])
    while queue:
        a, c = queue.popleft()
        for g in gens:
            u, v = find(g[a]), find(g[c])
            if u != v:
                parent[v] = u
                queue.append((u, v))
    classes: dict[int, list[int]] = {}
    for x in range(d):
        classes.setdefault(find(x), []).append(x + 1)
    return sorted(classes.values())


class BlockSystem(NamedTuple):
    primitive: bool
    blocks: list[list[int]] | None


def is_primitive(generators) -> BlockSystem:
    """Primitivity of a transitive group, with a nontrivial block system if not."""
    gens, d = _raw_gens(generators)
    if len(_orbit(gens, 0)) != d:
        raise ValueError("group is not transitive")
    for b in range(1, d):
        blocks = _minimal_block(gens, d, b)
        if len(blocks) > 1:
            return BlockSystem(False, blocks)
    return BlockSystem(True, None)


def _doubly_transitive(gens, d) -> bool:
    if d < 2:
        return True
    start = (0, 1)
    seen = {start}
    queue = [start]
    while queue:
        x, y = queue.pop()
        for g in gens:
            p = (g[x], g[y])
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return len(seen) == d * (d - 1)


def _has_full_cycle(gens, d) -> bool:
    for g in _closure(gens, d) or ():
        x, n = g[0], 1
        while x != 0:
            x, n = g[x], n + 1
        if n == d:
            return True
    return False


def generated_group(generators, *, max_degree: int = MAX_GROUP_DEGREE,
                    cross_check: bool = True) -> GroupClass:
    gens, d = _raw_gens(generators)
    if d > max_degree:
        raise GroupBoundExceeded(f"degree {d} exceeds group bound {max_degree}")
    order = group_order(gens)
    if cross_check and order <= CLOSURE_LIMIT:
        plain = closure_order(gens)
        if plain != order:
            raise AssertionError(f"stabilizer chain order {order} but closure gives {plain}")
    transitive = len(_orbit(gens, 0)) == d
    primitive = transitive and is_primitive(gens).primitive
    doubly = transitive and _doubly_transitive(gens, d)
    fact = math.factorial(d)
    if transitive and order == d and _has_full_cycle(gens, d):
        tag = GroupTag.CYCLIC
    elif order == fact:
        tag = GroupTag.SYMMETRIC
    elif d >= 3 and order * 2 == fact:
        tag = GroupTag.ALTERNATING
    elif d == 6 and order == 120 and doubly:
        tag = GroupTag.S5_IN_S6
    else:
        tag = GroupTag.OTHER
    return GroupClass(tag, d, order, transitive, primitive, doubly)


def parity_prediction(problem: HurwitzProblem) -> GroupTag:
    """Expected tag of the monodromy group of a genus-0 pure-cycle problem."""
    if problem.r == 2:
        return GroupTag.CYCLIC
    if problem.r == 3 and problem.d == 6 and sorted(problem.e) == [4, 4, 5]:
        return GroupTag.S5_IN_S6
    if all(x % 2 for x in problem.lengths):
        return GroupTag.ALTERNATING
    return GroupTag.SYMMETRIC


def _parity(p) -> int:
    seen = [False] * len(p)
    swaps = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, n = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        swaps += n - 1
    return swaps % 2


def _cycle_conjugator(a, b):
    """Some g with g a g^-1 = b, for single cycles a, b of equal length."""
    d = len(a)
    sa = next(i for i in range(d) if a[i] != i)
    sb = next(i for i in range(d) if b[i] != i)
    g = [None] * d
    x, y = sa, sb
    while g[x] is None:
        g[x] = y
        x, y = a[x], b[y]
    free_src = [i for i in range(d) if g[i] is None]
    free_dst = sorted(set(range(d)) - {v for v in g if v is not None})
    for s, t in zip(free_src, free_dst):
        g[s] = t
    g = tuple(g)
    assert _mul(_mul(g, a), _inv(g)) == tuple(b)
    return g


def _splits_in_alternating(e: int, d: int) -> bool:
    # an e-cycle class splits in A_d iff its cycle type has distinct odd parts
    return e % 2 == 1 and d - e <= 1


class NielsenReport(NamedTuple):
    ok: bool
    group: GroupClass | None
    class_count: int
    reason: str | None = None


def nielsen_uniqueness_check(problem: HurwitzProblem, bounds: Bounds = DEFAULT_BOUNDS,
                             *, max_degree: int = MAX_GROUP_DEGREE) -> NielsenReport:
    """Whether all classes of ``problem`` fall in a single Nielsen class."""
    classes = enumerate_classes(problem, bounds)
    if not classes:
        return NielsenReport(True, None, 0, "no classes")
    # the closure cross-check costs far more than the chain; run it once per problem
    groups = [generated_group(c.sigma, max_degree=max_degree, cross_check=(i == 0))
              for i, c in enumerate(classes)]
    first = groups[0]
    for c, g in zip(classes, groups):
        if g != first:
            return NielsenReport(False, first, len(classes),
                                 f"class {c.canonical} generates {g}, not {first}")
    if first.tag is GroupTag.SYMMETRIC or len(classes) == 1:
        return NielsenReport(True, first, len(classes))
    if first.tag is not GroupTag.ALTERNATING:
        return NielsenReport(False, first, len(classes),
                             f"several classes generating {first}; no decision procedure")
    d = problem.d
    split = [i for i, e in enumerate(problem.lengths) if _splits_in_alternating(e, d)]
    ref = [p.raw for p in classes[0].sigma]
    for c in classes[1:]:
        labels = {_parity(_cycle_conjugator(ref[i], c.sigma[i].raw)) for i in split}
        if len(labels) > 1:
            return NielsenReport(False, first, len(classes),
                                 f"class {c.canonical} needs conjugators of both parities")
    return NielsenReport(True, first, len(classes))
