import itertools
import random

import pytest

from purecycle.braid import (
    OrbitLimitExceeded, adjacent_square_orbits, apply_letters, braid_move, braid_move_inv,
    full_braid_orbits, pure_braid_generator, pure_braid_generator_inv, pure_braid_orbits,
)
from purecycle.enumeration import enumerate_classes
from purecycle.factorization import (
    HurwitzProblem, genus_zero_problems, is_hurwitz_factorization, product,
)
from purecycle.groupid import _closure
from purecycle.perm import (
    Permutation, compose, conjugate, cycle_type, inverse, perm_from_cycles,
)

RNG_CASES = 10_000


def pc(*cycles, d):
    return perm_from_cycles(cycles, d)


def random_tuple(rng):
    d = rng.randint(2, 8)
    n = rng.randint(2, 6)
    out = []
    for _ in range(n):
        img = list(range(d))
        rng.shuffle(img)
        out.append(Permutation(img, zero_based=True))
    return tuple(out)


T3 = (pc((1, 2), d=3), pc((1, 3), d=3), pc((1, 3), d=3), pc((1, 2), d=3))


def test_move_example():
    t = (pc((1, 2), d=3), pc((2, 3), d=3))
    moved = braid_move(t, 1)
    assert moved == (pc((2, 3), d=3), pc((1, 3), d=3))
    assert braid_move_inv(moved, 1) == t


@pytest.mark.parametrize("i", [1, 2, 3])
def test_move_preserves_product(i):
    moved = braid_move(T3, i)
    assert product(moved).is_identity()
    assert sorted(cycle_type(p) for p in moved) == sorted(cycle_type(p) for p in T3)


@pytest.mark.parametrize("i", [0, 4, -1])
def test_move_index_checked(i):
    with pytest.raises(IndexError):
        braid_move(T3, i)
    with pytest.raises(IndexError):
        braid_move_inv(T3, i)


def test_pure_generator_index_checked():
    with pytest.raises(IndexError):
        pure_braid_generator(T3, 2, 2)
    with pytest.raises(IndexError):
        pure_braid_generator(T3, 1, 5)


def test_moves_invert_each_other_random():
    rng = random.Random(51)
    for _ in range(RNG_CASES):
        t = random_tuple(rng)
        i = rng.randint(1, len(t) - 1)
        assert braid_move_inv(braid_move(t, i), i) == t
        assert braid_move(braid_move_inv(t, i), i) == t


def test_move_product_and_positions_random():
    rng = random.Random(52)
    for _ in range(RNG_CASES):
        t = random_tuple(rng)
        i = rng.randint(1, len(t) - 1)
        moved = braid_move(t, i)
        assert product(moved) == product(t)
        assert all(moved[j] == t[j] for j in range(len(t)) if j not in (i - 1, i))
        assert sorted(cycle_type(p) for p in moved) == sorted(cycle_type(p) for p in t)


def test_square_is_first_pure_generator():
    rng = random.Random(53)
    for _ in range(1000):
        t = random_tuple(rng)
        a, b = t[0], t[1]
        expect_a = conjugate(a, b)
        expect_b = conjugate(compose(inverse(b), compose(inverse(a), compose(b, compose(a, b)))), identity_of(b))
        out = pure_braid_generator(t, 1, 2)
        assert out[:2] == (expect_a, expect_b)
        assert out == braid_move(braid_move(t, 1), 1)


def identity_of(p):
    return Permutation._raw(tuple(range(p.degree)))


def test_pure_generators_random():
    rng = random.Random(54)
    for _ in range(RNG_CASES):
        t = random_tuple(rng)
        n = len(t)
        i = rng.randint(1, n - 1)
        j = rng.randint(i + 1, n)
        out = pure_braid_generator(t, i, j)
        assert [cycle_type(p) for p in out] == [cycle_type(p) for p in t]
        assert product(out) == product(t)
        assert pure_braid_generator_inv(out, i, j) == t


def test_a13_keeps_classes():
    t = (pc((1, 2), d=4), pc((2, 3, 4), d=4), pc((1, 4), d=4))
    out = pure_braid_generator(t, 1, 3)
    assert [cycle_type(p) for p in out] == [cycle_type(p) for p in t]
    assert out[0] != t[0] or out[2] != t[2]


def test_letter_words():
    t = T3
    assert apply_letters(t, ["A12"]) == pure_braid_generator(t, 1, 2)
    assert apply_letters(t, ["A24", "A24^-1"]) == t
    assert apply_letters(t, ["b2"]) == braid_move(t, 2)
    with pytest.raises(ValueError):
        apply_letters(t, ["x1"])


def test_braid_moves_keep_generated_group():
    rng = random.Random(55)
    for problem in genus_zero_problems(5, 4):
        for c in enumerate_classes(problem):
            t = c.sigma
            group = _closure([p.raw for p in t], 10**6)
            for _ in range(5):
                t = braid_move(t, rng.randint(1, 3))
                assert is_hurwitz_factorization(problem.reordered([len_of(p) for p in t]), t)
                assert _closure([p.raw for p in t], 10**6) == group


def len_of(p):
    return max(cycle_type(p).parts)


def test_orbit_four_transpositions():
    classes = enumerate_classes(HurwitzProblem(3, (2, 2, 2, 2)))
    rep = pure_braid_orbits(classes)
    assert rep.orbit_count == 1 and rep.orbit_sizes == [4]
    assert full_braid_orbits(classes).orbit_count == 1


def test_single_class_single_orbit():
    classes = enumerate_classes(HurwitzProblem(5, (3, 4, 4)))
    assert pure_braid_orbits(classes).orbit_sizes == [1]
    assert full_braid_orbits(classes).orbit_sizes == [1]


def test_orbit_two_three_three_four():
    rep = pure_braid_orbits(enumerate_classes(HurwitzProblem(5, (2, 3, 3, 4))))
    assert rep.orbit_count == 1 and rep.orbit_sizes == [8]


def test_full_orbit_merges_orderings():
    problem = HurwitzProblem(5, (2, 3, 3, 4))
    classes = []
    for e in sorted(set(itertools.permutations(problem.e))):
        classes.extend(enumerate_classes(problem.reordered(e)))
    assert len(classes) == 12 * 8
    rep = full_braid_orbits(classes)
    assert rep.orbit_count == 1 and sum(rep.orbit_sizes) == len(classes)


def test_empty_input():
    assert pure_braid_orbits([]).orbit_count == 0


def test_bfs_and_dfs_agree():
    for problem in list(genus_zero_problems(6, 4)) + list(genus_zero_problems(5, 5)):
        classes = enumerate_classes(problem)
        a = pure_braid_orbits(classes)
        b = pure_braid_orbits(classes, dfs=True)
        assert a.orbits == b.orbits
        assert sum(a.orbit_sizes) == len(classes)


def test_witness_paths_reach_base():
    classes = enumerate_classes(HurwitzProblem(5, (2, 3, 3, 4)))
    rep = pure_braid_orbits(classes, witness=True)
    base = classes[rep.orbits[0][0]]
    from purecycle.factorization import class_key
    for i, word in rep.witness_paths.items():
        assert class_key(apply_letters(classes[i].sigma, word)) == class_key(base.sigma)


def test_state_limit():
    classes = enumerate_classes(HurwitzProblem(5, (2, 3, 3, 4)))
    with pytest.raises(OrbitLimitExceeded):
        pure_braid_orbits(classes, limit=3)


def test_single_orbit_sweep():
    problems = list(genus_zero_problems(7, 4)) + list(genus_zero_problems(6, 5))
    for problem in problems:
        classes = enumerate_classes(problem)
        assert pure_braid_orbits(classes).orbit_count == 1, problem
        assert adjacent_square_orbits(classes).orbit_count == 1, problem


def test_adjacent_squares_can_fall_short():
    # six 3-cycles in degree 7: all A_ij connect, the squares b_i^2 alone do not
    classes = enumerate_classes(HurwitzProblem(7, (3,) * 6))
    assert pure_braid_orbits(classes).orbit_count == 1
    assert adjacent_square_orbits(classes).orbit_count == 2
