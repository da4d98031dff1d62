import pytest

from purecycle.enumeration import Bounds, enumerate_classes
from purecycle.explicit import (
    Case, FourPointParams, FourPointProblem, Move, MoveNotApplicable, base_params,
    case_split_counts, formula_number, four_point_classify, four_point_construct,
    four_point_enumerate, four_point_number, four_point_orbit_step, four_point_params,
    four_point_path, three_point_factorization,
)
from purecycle.factorization import (
    Factorization, HurwitzProblem, canonical_form, conjugate_all, genus_zero_problems,
)
from purecycle.perm import cycles_of, perm_from_cycles

FOUR_POINT = [FourPointProblem(p.d, p.e) for p in genus_zero_problems(7, 4)]


def ids(p):
    return f"d{p.d}-" + "-".join(map(str, p.e))


def test_three_point_example():
    f = three_point_factorization(5, 3, 4, 4)
    assert f.validity()
    assert [cycles_of(p) for p in f.sigma] == [[[1, 4, 5]], [[2, 5, 4, 3]], [[1, 2, 3, 4]]]


@pytest.mark.parametrize("d", range(2, 10))
def test_three_point_matches_enumeration(d):
    for problem in genus_zero_problems(d, 3, dmin=d):
        f = three_point_factorization(d, *problem.e)
        assert f.validity(), problem
        classes = enumerate_classes(problem, Bounds(max_degree=9))
        assert [c.sigma for c in classes] == [canonical_form(f.sigma)]


def test_rejects_unsorted_and_non_genus_zero():
    with pytest.raises(ValueError):
        FourPointProblem(5, (3, 2, 3, 4))
    with pytest.raises(ValueError):
        FourPointProblem(5, (2, 2, 3, 4))


def test_example_two_three_three_four():
    problem = FourPointProblem(5, (2, 3, 3, 4))
    assert four_point_number(problem) == 8
    assert case_split_counts(problem) == {Case.I: 6, Case.II: 2}
    assert len(four_point_params(problem)) == 8


def test_out_of_range_parameters():
    problem = FourPointProblem(5, (2, 3, 3, 4))
    with pytest.raises(ValueError):
        four_point_construct(problem, FourPointParams(Case.I, 9, 9))
    with pytest.raises(ValueError):
        four_point_construct(problem, FourPointParams(Case.II, 1, 99))


@pytest.mark.parametrize("problem", FOUR_POINT, ids=ids)
def test_construction_matches_enumeration(problem):
    built = four_point_enumerate(problem)
    for _, f in built:
        assert f.validity(), f
    keys = [canonical_form(f.sigma) for _, f in built]
    assert len(set(keys)) == len(keys)
    assert set(keys) == {c.sigma for c in enumerate_classes(problem.hurwitz)}
    assert len(keys) == four_point_number(problem) == formula_number(problem.hurwitz)


@pytest.mark.parametrize("problem", FOUR_POINT, ids=ids)
def test_case_split(problem):
    params = four_point_params(problem)
    counts = case_split_counts(problem)
    for case in Case:
        assert sum(q.case is case for q in params) == counts[case]


@pytest.mark.parametrize("problem", FOUR_POINT, ids=ids)
def test_classify_round_trip(problem):
    g = perm_from_cycles([tuple(range(1, problem.d + 1))], problem.d)
    for q, f in four_point_enumerate(problem):
        assert four_point_classify(f) == q
        moved = Factorization(f.problem, conjugate_all(f.sigma, g))
        assert four_point_classify(moved) == q


@pytest.mark.parametrize("problem", FOUR_POINT, ids=ids)
def test_moves_land_where_predicted(problem):
    for _, f in four_point_enumerate(problem):
        for move in Move:
            try:
                step = four_point_orbit_step(f, move)
            except MoveNotApplicable:
                continue
            assert step.ok, step


@pytest.mark.parametrize("problem", FOUR_POINT, ids=ids)
def test_every_parameter_reaches_base(problem):
    base = base_params(problem)
    for q in four_point_params(problem):
        steps = four_point_path(problem, q)
        assert (steps[-1].observed if steps else q) == base


def test_cross_then_ell_example():
    problem = FourPointProblem(5, (2, 3, 3, 4))
    steps = four_point_path(problem, FourPointParams(Case.II, 1, 3))
    assert [s.move for s in steps] == [Move.CROSS, Move.ELL, Move.ELL, Move.ELL]


def test_move_not_applicable():
    problem = FourPointProblem(5, (2, 3, 3, 4))
    f = four_point_construct(problem, base_params(problem))
    with pytest.raises(MoveNotApplicable):
        four_point_orbit_step(f, Move.KDOWN)
    with pytest.raises(MoveNotApplicable):
        four_point_orbit_step(f, "CROSS")


def test_classify_rejects_other_shapes():
    f = three_point_factorization(5, 3, 4, 4)
    with pytest.raises(ValueError):
        four_point_classify(f)


def test_formula_gaps():
    assert formula_number(HurwitzProblem(5, (2, 2, 2, 2, 5))) is None
    assert formula_number(HurwitzProblem(3, (2, 3), genus=1, simple_count=3)) is None
    assert formula_number(HurwitzProblem(2, (2, 2))) == 1
