import itertools
import random
from fractions import Fraction

import pytest

import vcsp
from vcsp import lp
from vcsp.lp import Relation


def _make_covering_program() -> lp.LinProgram:
    program = lp.LinProgram()
    program.add_variable("x")
    program.add_variable("y")
    program.set_objective({"x": 1, "y": 1})
    program.add_constraint({"x": 1, "y": 2}, Relation.GE, 2)
    program.add_constraint({"x": 3, "y": 1}, Relation.GE, 3)
    return program


def test_solve_optimal():
    outcome = lp.solve(_make_covering_program())
    assert outcome.is_optimal()
    assert outcome.value == Fraction(7, 5)
    assert outcome.assignment == {"x": Fraction(4, 5), "y": Fraction(3, 5)}


def test_solve_matches_vertex_enumeration():
    # brute force over every pair of tight constraints, bounds included
    rows = [((1, 2), 2), ((3, 1), 3), ((1, 0), 0), ((0, 1), 0)]
    program = _make_covering_program()
    best_value = None

    for ((a1, b1), c1), ((a2, b2), c2) in itertools.combinations(rows, 2):
        determinant = a1 * b2 - a2 * b1

        if determinant == 0:
            continue

        point = {"x": Fraction(c1 * b2 - c2 * b1, determinant)
                 , "y": Fraction(a1 * c2 - a2 * c1, determinant)}

        if lp.check_assignment(program, point):
            value = point["x"] + point["y"]

            if best_value is None or value < best_value:
                best_value = value

    assert lp.solve(program).value == best_value


def test_solve_equality_and_free_variable():
    program = lp.LinProgram()
    program.add_variable("x", free=True)
    program.add_variable("y")
    program.set_objective({"x": 1})
    program.add_constraint({"x": 1, "y": 1}, Relation.EQ, -3)
    program.add_constraint({"y": 1}, Relation.LE, 4)
    outcome = lp.solve(program)
    assert outcome.is_optimal()
    assert outcome.value == -7
    assert outcome.assignment["y"] == 4


def test_solve_infeasible():
    program = lp.LinProgram()
    program.add_variable("x")
    program.add_constraint({"x": 1}, Relation.LE, 1)
    program.add_constraint({"x": 1}, Relation.GE, 2)
    assert lp.solve(program).is_infeasible()


def test_solve_empty_row_infeasible():
    program = lp.LinProgram()
    program.add_variable("x")
    program.add_constraint({}, Relation.EQ, 1)
    assert lp.solve(program).is_infeasible()


def test_solve_unbounded():
    program = lp.LinProgram()
    program.add_variable("x")
    program.set_objective({"x": -1})
    program.add_constraint({"x": 1}, Relation.GE, 1)
    assert lp.solve(program).is_unbounded()


def test_solve_reports_duals():
    program = lp.LinProgram()
    program.add_variable("x")
    program.set_objective({"x": 2})
    program.add_constraint({"x": 1}, Relation.GE, 3)
    outcome = lp.solve(program)
    assert outcome.value == 6
    assert outcome.duals == (Fraction(2),)


def test_pivot_limit():
    context = vcsp.Context(max_pivots=0)

    with pytest.raises(vcsp.ResourceLimitError):
        lp.solve(_make_covering_program(), context=context)


def test_undeclared_variable():
    program = lp.LinProgram()

    with pytest.raises(KeyError):
        program.add_constraint({"x": 1}, Relation.LE, 1)


def test_format_lp():
    text = lp.format_lp(_make_covering_program())
    assert text.startswith("\\ x0 = 'x'\n")
    assert " obj: " in text
    assert "Subject To" in text
    assert text.endswith("End\n")


def _make_random_program(seed: int) -> lp.LinProgram:
    random_ = random.Random(seed)
    number_of_variables = random_.randint(1, 3)
    variable_ids = ["x{}".format(i) for i in range(number_of_variables)]
    program = lp.LinProgram()

    for variable_id in variable_ids:
        program.add_variable(variable_id)

    program.set_objective({variable_id: random_.randint(-3, 3) for variable_id in variable_ids})

    for variable_id in variable_ids:
        program.add_constraint({variable_id: 1}, Relation.LE, random_.randint(1, 5))

    for _ in range(random_.randint(1, 3)):
        relation = random_.choice((Relation.LE, Relation.GE, Relation.GE, Relation.EQ))
        program.add_constraint({variable_id: random_.randint(-3, 3) for variable_id
                                in variable_ids}, relation, random_.randint(-2, 6))

    return program


def _solve_square_system(rows):
    # Gauss-Jordan over Fraction; None when singular
    matrix = [[Fraction(coefficient) for coefficient in coefficients] + [Fraction(rhs)]
              for coefficients, rhs in rows]
    size = len(matrix)

    for column in range(size):
        pivot = next((i for i in range(column, size) if matrix[i][column] != 0), None)

        if pivot is None:
            return None

        matrix[column], matrix[pivot] = matrix[pivot], matrix[column]

        for i in range(size):
            if i != column and matrix[i][column] != 0:
                factor = matrix[i][column] / matrix[column][column]
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], matrix[column])]

    return [matrix[i][size] / matrix[i][i] for i in range(size)]


def _solve_by_vertex_enumeration(program: lp.LinProgram):
    variable_ids = list(program.get_variable_ids())
    rows = [([constraint.coefficients.get(variable_id, 0) for variable_id in variable_ids]
             , constraint.rhs) for constraint in program.get_constraints()]
    rows += [([int(i == j) for j in range(len(variable_ids))], 0)
             for i in range(len(variable_ids))]
    objective = program.get_objective()
    best_value = None

    for tight_rows in itertools.combinations(rows, len(variable_ids)):
        values = _solve_square_system(tight_rows)

        if values is None:
            continue

        point = dict(zip(variable_ids, values))

        if not lp.check_assignment(program, point):
            continue

        value = sum((objective.get(variable_id, 0) * point[variable_id] for variable_id
                     in variable_ids), Fraction(0))

        if best_value is None or value < best_value:
            best_value = value

    return best_value


def test_solve_matches_vertex_enumeration_on_random_programs():
    for seed in range(120):
        program = _make_random_program(seed)
        best_value = _solve_by_vertex_enumeration(program)
        outcome = lp.solve(program)

        if best_value is None:
            assert outcome.is_infeasible(), seed
        else:
            assert outcome.is_optimal(), seed
            assert outcome.value == best_value, seed
            assert lp.check_assignment(program, outcome.assignment), seed


def test_solve_ignores_constraint_order():
    for seed in range(40):
        program = _make_random_program(seed)
        constraints = list(program.get_constraints())
        random.Random(seed).shuffle(constraints)
        shuffled_program = lp.LinProgram()

        for variable_id in program.get_variable_ids():
            shuffled_program.add_variable(variable_id)

        shuffled_program.set_objective(program.get_objective())

        for constraint in constraints:
            shuffled_program.add_constraint(constraint.coefficients, constraint.relation
                                            , constraint.rhs)

        outcome = lp.solve(program)
        shuffled_outcome = lp.solve(shuffled_program)
        assert shuffled_outcome.status is outcome.status, seed
        assert shuffled_outcome.value == outcome.value, seed
