"""
Hurwitz problems and factorizations for pure-cycle branching data.

A factorization is an ordered tuple of permutations: one single cycle of
length ``e[i]`` per branch point, followed by ``simple_count``
transpositions, multiplying (right to left) to the identity and generating
a transitive group. Two factorizations are equivalent when one is a
simultaneous conjugate of the other.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .perm import (
    Permutation, compose, cycles_of, format_cycles, inverse, mask_points,
    perm_from_cycles, support, _raw_cycles,
)

__all__ = [
    "HurwitzProblem", "Factorization", "Validity", "ProfileKind", "SupportProfile",
    "PairDecomposition", "OverlapCount",
    "is_hurwitz_factorization", "support_profile", "canonical_form", "class_key",
    "conjugate_all", "product", "cycle_pair_decompose", "overlap_cycle_count",
    "factorization_to_json", "factorization_from_json", "format_tuple", "parse_tuple",
    "genus_zero_problems",
]


@dataclass(frozen=True)
class HurwitzProblem:
    """Branching data (d, e, genus, simple_count).

    ``simple_count`` extra transpositions follow the ``e`` cycles; it is 0
    for the core theory and 3*genus for the higher-genus experiments.
    Pass ``strict=False`` to build a problem violating Riemann-Hurwitz; the
    enumerator then simply finds nothing.
    """
    d: int
    e: tuple[int, ...]
    genus: int = 0
    simple_count: int = 0
    strict: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(int(x) for x in self.e))
        if self.d < 1:
            raise ValueError("d must be at least 1")
        if len(self.e) < 2:
            raise ValueError("need at least two branch cycles (r >= 2)")
        if self.genus < 0 or self.simple_count < 0:
            raise ValueError("genus and simple_count must be nonnegative")
        for x in self.e:
            if not 2 <= x <= self.d:
                raise ValueError(f"cycle length {x} outside 2..{self.d}")
        if self.strict:
            if not self.satisfies_riemann_hurwitz:
                raise ValueError(
                    f"Riemann-Hurwitz fails: 2d-2+2g = {2 * self.d - 2 + 2 * self.genus} "
                    f"but the cycles contribute {self.branch_index}")
            if self.simple_count and self.simple_count != 3 * self.genus:
                raise ValueError("simple_count must equal 3*genus when nonzero")

    @property
    def r(self) -> int:
        return len(self.e)

    @property
    def length(self) -> int:
        """Number of tuple entries, cycles plus transpositions."""
        return len(self.e) + self.simple_count

    @property
    def lengths(self) -> tuple[int, ...]:
        return self.e + (2,) * self.simple_count

    @property
    def branch_index(self) -> int:
        return sum(x - 1 for x in self.e) + self.simple_count

    @property
    def satisfies_riemann_hurwitz(self) -> bool:
        return 2 * self.d - 2 + 2 * self.genus == self.branch_index

    def reordered(self, e: Sequence[int]) -> "HurwitzProblem":
        return HurwitzProblem(self.d, tuple(e), self.genus, self.simple_count, self.strict)

    def __str__(self):
        s = f"d={self.d} e={','.join(map(str, self.e))}"
        if self.genus:
            s += f" genus={self.genus}"
        if self.simple_count:
            s += f" simple={self.simple_count}"
        return s


@dataclass(frozen=True)
class Factorization:
    problem: HurwitzProblem
    sigma: tuple[Permutation, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        if len(self.sigma) != self.problem.length:
            raise ValueError(
                f"expected {self.problem.length} entries, got {len(self.sigma)}")
        for p in self.sigma:
            if p.degree != self.problem.d:
                raise ValueError(f"entry of degree {p.degree} in a degree-{self.problem.d} problem")

    def validity(self) -> "Validity":
        return is_hurwitz_factorization(self.problem, self.sigma)

    def canonical(self) -> "Factorization":
        return Factorization(self.problem, canonical_form(self.sigma))

    def __str__(self):
        return format_tuple(self.sigma)


class Validity(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def product(sigma: Sequence[Permutation]) -> Permutation:
    """sigma[0] * sigma[1] * ... with the last factor acting first."""
    acc = sigma[-1]
    for p in reversed(sigma[:-1]):
        acc = compose(p, acc)
    return acc


def _orbit_count(raw: Sequence[Sequence[int]], d: int) -> int:
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = d
    for img in raw:
        for x, y in enumerate(img):
            a, b = find(x), find(y)
            if a != b:
                parent[a] = b
                comps -= 1
    return comps


def is_hurwitz_factorization(problem: HurwitzProblem, sigma: Sequence[Permutation]) -> Validity:
    """Check cycle classes, trivial product and transitivity, in that order."""
    for p in sigma:
        if p.degree != problem.d:
            raise ValueError(f"degree mismatch: entry of degree {p.degree}, problem degree {problem.d}")
    if len(sigma) != problem.length:
        return Validity(False, f"wrong number of entries: {len(sigma)} != {problem.length}")
    for i, (p, e) in enumerate(zip(sigma, problem.lengths), start=1):
        cyc = _raw_cycles(p.raw)
        if len(cyc) != 1 or len(cyc[0]) != e:
            return Validity(False, f"class mismatch at position {i}: expected a {e}-cycle, got {format_cycles(p)}")
    if not product(sigma).is_identity():
        return Validity(False, "product is not the identity")
    if _orbit_count([p.raw for p in sigma], problem.d) != 1:
        return Validity(False, "not transitive")
    return Validity(True)


class ProfileKind(str, enum.Enum):
    ALL_TWO_PLUS_ONE_QUAD = "ALL_TWO_PLUS_ONE_QUAD"
    ALL_TWO_PLUS_TWO_TRIPLE = "ALL_TWO_PLUS_TWO_TRIPLE"
    OTHER = "OTHER"


class SupportProfile(NamedTuple):
    counts: dict[int, int]
    kind: ProfileKind


def support_profile(sigma: Sequence[Permutation]) -> SupportProfile:
    """Count, for each point, how many entries move it."""
    d = sigma[0].degree
    counts = {x: 0 for x in range(1, d + 1)}
    for p in sigma:
        for x in mask_points(support(p)):
            counts[x] += 1
    extra = sorted(c for c in counts.values() if c != 2)
    if extra == [4]:
        kind = ProfileKind.ALL_TWO_PLUS_ONE_QUAD
    elif extra == [3, 3]:
        kind = ProfileKind.ALL_TWO_PLUS_TWO_TRIPLE
    else:
        kind = ProfileKind.OTHER
    return SupportProfile(counts, kind)


def conjugate_all(sigma: Sequence[Permutation], g: Permutation) -> tuple[Permutation, ...]:
    """Conjugate every entry by g (g^-1 p g)."""
    gi = inverse(g)
    return tuple(compose(gi, compose(p, g)) for p in sigma)


def _lexmin_raw(gens: Sequence[tuple[int, ...]], d: int) -> tuple[int, ...]:
    # Branch and bound over relabelings. Output position (i, y) holds the
    # relabeled image of label y under entry i. Unresolved points sit in
    # cells owning a contiguous range of labels. An image point still in a
    # cell greedily takes that cell's lowest label, which is optimal. When
    # label y has no point yet, the candidates are the points of its cell
    # giving the least value at this position; if those are all fixed by
    # entry i they tie for every position of the entry, so they are kept
    # together as a cell instead of being branched on.
    total = len(gens) * d
    out: list[int] = []
    best: list[int] | None = None

    def individualize(p, lo, lab, pt, cells, cell_of):
        rest = tuple(q for q in cells.pop(lo) if q != p)
        if rest:
            cells[lo + 1] = rest
            for q in rest:
                cell_of[q] = lo + 1
        lab[p] = lo
        pt[lo] = p
        cell_of[p] = -1

    def rec(pos, lab, pt, cells, cell_of):
        nonlocal best
        better = best is None or out < best[:len(out)]
        start = len(out)
        pruned = False
        while pos < total and not pruned:
            i, y = divmod(pos, d)
            g = gens[i]
            if y in cells:
                X = cells[y]
                if len(X) > 1:
                    low, cands = None, []
                    for p in X:
                        z = g[p]
                        if z == p:
                            v = y
                        elif lab[z] >= 0:
                            v = lab[z]
                        elif cell_of[z] == y:
                            v = y + 1
                        else:
                            v = cell_of[z]
                        if low is None or v < low:
                            low, cands = v, [p]
                        elif v == low:
                            cands.append(p)
                    if low == y and len(cands) > 1:
                        k = len(cands)
                        if k < len(X):
                            rest = tuple(q for q in X if q not in cands)
                            cells[y] = tuple(cands)
                            cells[y + k] = rest
                            for q in rest:
                                cell_of[q] = y + k
                        for v in range(y, y + k):
                            if not better:
                                b = best[pos]
                                if v > b:
                                    pruned = True
                                    break
                                if v < b:
                                    better = True
                            out.append(v)
                            pos += 1
                        continue
                    for p in cands:
                        lab2, pt2, cells2, cell_of2 = lab[:], pt[:], dict(cells), cell_of[:]
                        individualize(p, y, lab2, pt2, cells2, cell_of2)
                        rec(pos, lab2, pt2, cells2, cell_of2)
                    break
                individualize(X[0], y, lab, pt, cells, cell_of)
            z = g[pt[y]]
            if lab[z] < 0:
                individualize(z, cell_of[z], lab, pt, cells, cell_of)
            v = lab[z]
            if not better:
                b = best[pos]
                if v > b:
                    break
                if v < b:
                    better = True
            out.append(v)
            pos += 1
        else:
            if not pruned and better:
                best = out[:]
        del out[start:]

    rec(0, [-1] * d, [-1] * d, {0: tuple(range(d))}, [0] * d)
    return tuple(best)


def canonical_form(sigma: Sequence[Permutation]) -> tuple[Permutation, ...]:
    """Lexicographically least simultaneous conjugate.

    Tuples are compared by the concatenation of their one-line images.
    """
    d = sigma[0].degree
    for p in sigma:
        if p.degree != d:
            raise ValueError("entries must share a degree")
    flat = _lexmin_raw([p.raw for p in sigma], d)
    return tuple(Permutation._raw(flat[i * d:(i + 1) * d]) for i in range(len(sigma)))


def class_key_raw(gens: Sequence[tuple[int, ...]], d: int) -> tuple[int, ...] | None:
    """Conjugation-invariant key for a transitive tuple, or None if intransitive.

    For every start point, label points in breadth-first order along the
    generators and relabel the tuple; the least result is kept. This is a
    complete invariant of the simultaneous-conjugacy class, and much cheaper
    than the lexicographic minimum.
    """
    best = None
    for s in range(d):
        lab = [-1] * d
        lab[s] = 0
        order = [s]
        i = 0
        while i < len(order):
            x = order[i]
            for g in gens:
                y = g[x]
                if lab[y] < 0:
                    lab[y] = len(order)
                    order.append(y)
            i += 1
        if len(order) < d:
            return None
        key = tuple(lab[g[order[j]]] for g in gens for j in range(d))
        if best is None or key < best:
            best = key
    return best


def class_key(sigma: Sequence[Permutation]) -> tuple:
    """Hashable key equal for two tuples iff they are simultaneously conjugate."""
    d = sigma[0].degree
    key = class_key_raw([p.raw for p in sigma], d)
    if key is None:
        key = ("lexmin",) + _lexmin_raw([p.raw for p in sigma], d)
    return key


@dataclass(frozen=True)
class PairDecomposition:
    """Words of a cycle pair (sigma, sigma') around their common points.

    ``w[i] + v[i]`` concatenated over i spells sigma starting at anchors[0];
    likewise ``w_prime``/``v_prime`` spell sigma'. ``tau`` is 1-based with
    ``w[i] == reversed(w_prime[tau[i] - 1])``.
    """
    w: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]
    w_prime: tuple[tuple[int, ...], ...]
    v_prime: tuple[tuple[int, ...], ...]
    tau: tuple[int, ...]
    anchors: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.w)


def _single_cycle(p: Permutation, name: str) -> list[int]:
    cyc = cycles_of(p)
    if len(cyc) != 1:
        raise ValueError(f"{name} must be a single cycle, got {format_cycles(p)}")
    return cyc[0]


def _rotate_to(cyc: list[int], start: int) -> list[int]:
    i = cyc.index(start)
    return cyc[i:] + cyc[:i]


def cycle_pair_decompose(s: Permutation, sp: Permutation) -> PairDecomposition:
    """Split two overlapping cycles into anchored words, anchored at the least common point."""
    c = _single_cycle(s, "sigma")
    cp = _single_cycle(sp, "sigma'")
    sup, supp_p = support(s), support(sp)
    if not sup & supp_p:
        raise ValueError("cycles are disjoint")
    prod = compose(s, sp)
    if prod.is_identity():
        raise ValueError("product of the cycles is trivial")
    common = sup & supp_p & support(prod)
    seq = _rotate_to(c, min(mask_points(common)))
    anchor_pos = [i for i, x in enumerate(seq) if common >> (x - 1) & 1]
    anchors = tuple(seq[i] for i in anchor_pos)
    ws, vs = [], []
    for a, b in zip(anchor_pos, anchor_pos[1:] + [len(seq)]):
        seg = seq[a:b]
        j = 1
        while j < len(seg) and supp_p >> (seg[j] - 1) & 1:
            j += 1
        w, v = tuple(seg[:j]), tuple(seg[j:])
        if any(supp_p >> (x - 1) & 1 for x in v):
            raise AssertionError("v word meets the support of sigma'")
        ws.append(w)
        vs.append(v)

    starts = {w[-1]: i for i, w in enumerate(ws)}
    seq_p = _rotate_to(cp, ws[0][-1])
    wps, vps, order = [], [], []
    j = 0
    while j < len(seq_p):
        x = seq_p[j]
        if x in starts:
            i = starts[x]
            rev = tuple(reversed(ws[i]))
            if tuple(seq_p[j:j + len(rev)]) != rev:
                raise AssertionError("reversed w word not contiguous in sigma'")
            wps.append(rev)
            vps.append(())
            order.append(i)
            j += len(rev)
        else:
            vps[-1] = vps[-1] + (x,)
            j += 1
    for v in vps:
        if any(sup >> (x - 1) & 1 for x in v):
            raise AssertionError("v' word meets the support of sigma")
    tau = [0] * len(ws)
    for pos, i in enumerate(order):
        tau[i] = pos + 1
    return PairDecomposition(tuple(ws), tuple(vs), tuple(wps), tuple(vps), tuple(tau), anchors)


class OverlapCount(NamedTuple):
    common: frozenset[int]
    n_cycles: int


def overlap_cycle_count(s: Permutation, sp: Permutation) -> OverlapCount:
    """Common support S of s, s' and s*s', and the number of nontrivial cycles of s*s'."""
    _single_cycle(s, "sigma")
    _single_cycle(sp, "sigma'")
    if not support(s) & support(sp):
        raise ValueError("cycles are disjoint")
    prod = compose(s, sp)
    common = support(s) & support(sp) & support(prod)
    pts = frozenset(mask_points(common))
    if len(pts) > 2:
        raise ValueError(f"common support has {len(pts)} points; at most 2 are allowed")
    return OverlapCount(pts, len(cycles_of(prod)))


def genus_zero_problems(dmax: int, r: int, dmin: int = 2):
    """Every genus-0 problem with r sorted cycle lengths and dmin <= d <= dmax."""
    for d in range(dmin, dmax + 1):
        for e in itertools.combinations_with_replacement(range(2, d + 1), r):
            if sum(x - 1 for x in e) == 2 * d - 2:
                yield HurwitzProblem(d, e)


def format_tuple(sigma: Sequence[Permutation]) -> str:
    return ";".join(format_cycles(p) for p in sigma)


def parse_tuple(text: str, degree: int | None = None) -> tuple[Permutation, ...]:
    """Parse ``(1 2);(1 3);(1 3);(1 2)``. Degree defaults to the largest point."""
    from .perm import parse_cycles
    parts = [t for t in text.split(";") if t.strip()]
    if not parts:
        raise ValueError("empty tuple")
    perms = [parse_cycles(t) for t in parts]
    if degree is None:
        degree = max(max((x for c in cycles_of(p) for x in c), default=1) for p in perms)
    return tuple(perm_from_cycles(cycles_of(p), degree) for p in perms)


def factorization_to_json(f: Factorization) -> dict:
    return {
        "d": f.problem.d,
        "genus": f.problem.genus,
        "e": list(f.problem.e),
        "sigma": [cycles_of(p) for p in f.sigma],
    }


def factorization_from_json(obj: dict) -> Factorization:
    d = int(obj["d"])
    genus = int(obj.get("genus", 0))
    e = tuple(obj["e"])
    sigma = tuple(perm_from_cycles(c, d) for c in obj["sigma"])
    problem = HurwitzProblem(d, e, genus, len(sigma) - len(e))
    return Factorization(problem, sigma)
