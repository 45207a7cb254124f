__all__ = (
    "Relation",
    "LpStatus",
    "Constraint",
    "LinProgram",
    "LpOutcome",
    "solve",
    "check_assignment",
    "format_lp",
)


import enum
import fractions
import typing

from . import context as context_
from . import errors


Fraction = fractions.Fraction
VariableId = typing.Hashable
Number = typing.Union[int, Fraction]


class Relation(enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class Constraint(typing.NamedTuple):
    coefficients: typing.Dict[VariableId, Fraction]
    relation: Relation
    rhs: Fraction
    name: typing.Optional[str]


class LinProgram:
    def __init__(self) -> None:
        self._variable_ids: typing.List[VariableId] = []
        self._variable_id_2_index: typing.Dict[VariableId, int] = {}
        self._free_variable_ids: typing.Set[VariableId] = set()
        self._objective: typing.Dict[VariableId, Fraction] = {}
        self._constraints: typing.List[Constraint] = []

    def add_variable(self, variable_id: VariableId, free=False) -> None:
        assert variable_id not in self._variable_id_2_index.keys(), repr(variable_id)
        self._variable_id_2_index[variable_id] = len(self._variable_ids)
        self._variable_ids.append(variable_id)

        if free:
            self._free_variable_ids.add(variable_id)

    def has_variable(self, variable_id: VariableId) -> bool:
        return variable_id in self._variable_id_2_index.keys()

    def set_objective(self, coefficients: typing.Mapping[VariableId, Number]) -> None:
        self._objective = self._make_row(coefficients)

    def add_constraint(self, coefficients: typing.Mapping[VariableId, Number], relation: Relation
                       , rhs: Number, name: typing.Optional[str]=None) -> int:
        constraint = Constraint(self._make_row(coefficients), relation, Fraction(rhs), name)
        self._constraints.append(constraint)
        return len(self._constraints) - 1

    def get_variable_ids(self) -> typing.Sequence[VariableId]:
        return self._variable_ids

    def is_free(self, variable_id: VariableId) -> bool:
        return variable_id in self._free_variable_ids

    def get_objective(self) -> typing.Mapping[VariableId, Fraction]:
        return self._objective

    def get_constraints(self) -> typing.Sequence[Constraint]:
        return self._constraints

    def _make_row(self, coefficients: typing.Mapping[VariableId, Number]
                  ) -> typing.Dict[VariableId, Fraction]:
        row = {}

        for variable_id, coefficient in coefficients.items():
            if variable_id not in self._variable_id_2_index.keys():
                raise KeyError("undeclared variable: variable_id={!r}".format(variable_id))

            if coefficient != 0:
                row[variable_id] = Fraction(coefficient)

        return row


class LpOutcome(typing.NamedTuple):
    status: LpStatus
    value: typing.Optional[Fraction]=None
    assignment: typing.Dict[VariableId, Fraction]={}
    duals: typing.Tuple[Fraction, ...]=()

    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL

    def is_infeasible(self) -> bool:
        return self.status is LpStatus.INFEASIBLE

    def is_unbounded(self) -> bool:
        return self.status is LpStatus.UNBOUNDED


def solve(lp: LinProgram, *, context: typing.Optional[context_.Context]=None) -> LpOutcome:
    context = context_.get_context(context)
    tableau = _Tableau(lp, context.get_limits().max_pivots)
    outcome = tableau.run()
    context.get_logger().debug("lp solve: rows={!r} columns={!r} pivots={!r} outcome={!r}"
                               .format(len(lp.get_constraints()), len(lp.get_variable_ids())
                                       , tableau.get_number_of_pivots(), outcome.status.value))
    return outcome


def check_assignment(lp: LinProgram, assignment: typing.Mapping[VariableId, Number]) -> bool:
    for variable_id in lp.get_variable_ids():
        if not lp.is_free(variable_id) and assignment.get(variable_id, 0) < 0:
            return False

    for constraint in lp.get_constraints():
        lhs = sum((coefficient * assignment.get(variable_id, 0) for variable_id, coefficient
                   in constraint.coefficients.items()), Fraction(0))

        if not _RELATION_2_TEST[constraint.relation](lhs, constraint.rhs):
            return False

    return True


def format_lp(lp: LinProgram) -> str:
    variable_names = {variable_id: "x{}".format(i) for i, variable_id
                      in enumerate(lp.get_variable_ids())}
    lines = []

    for variable_id, variable_name in variable_names.items():
        lines.append("\\ {} = {!r}".format(variable_name, variable_id))

    lines.append("Minimize")
    lines.append(" obj: " + _format_row(lp.get_objective(), variable_names))
    lines.append("Subject To")

    for i, constraint in enumerate(lp.get_constraints()):
        name = "c{}".format(i) if constraint.name is None else constraint.name
        lines.append(" {}: {} {} {}".format(name, _format_row(constraint.coefficients
                                                               , variable_names)
                                            , constraint.relation.value, constraint.rhs))

    lines.append("Bounds")

    for variable_id in lp.get_variable_ids():
        if lp.is_free(variable_id):
            lines.append(" {} free".format(variable_names[variable_id]))

    lines.append("End")
    return "\n".join(lines) + "\n"


class _Tableau:
    def __init__(self, lp: LinProgram, max_pivots: int) -> None:
        self._lp = lp
        self._max_pivots = max_pivots
        self._number_of_pivots = 0
        self._column_2_variable: typing.List[typing.Tuple[VariableId, int]] = []
        self._is_artificial: typing.List[bool] = []
        self._rows: typing.List[typing.Dict[int, Fraction]] = []
        self._rhs: typing.List[Fraction] = []
        self._basis: typing.List[int] = []
        self._row_origins: typing.List[typing.Tuple[int, int, int]] = []
        self._is_trivially_infeasible = False
        self._build()

    def get_number_of_pivots(self) -> int:
        return self._number_of_pivots

    def run(self) -> LpOutcome:
        if self._is_trivially_infeasible:
            return LpOutcome(LpStatus.INFEASIBLE)

        phase1_costs = {column: Fraction(1) for column, is_artificial
                        in enumerate(self._is_artificial) if is_artificial}

        if len(phase1_costs) >= 1:
            reduced_costs, objective_value = self._price(phase1_costs)

            if not self._iterate(reduced_costs, objective_value):
                raise AssertionError("unbounded phase one")

            if objective_value[0] != 0:
                return LpOutcome(LpStatus.INFEASIBLE)

            self._drive_out_artificials()

        phase2_costs = {}

        for column, (variable_id, sign) in enumerate(self._column_2_variable):
            if sign != 0:
                cost = self._lp.get_objective().get(variable_id, Fraction(0))

                if cost != 0:
                    phase2_costs[column] = cost * sign

        reduced_costs, objective_value = self._price(phase2_costs)

        if not self._iterate(reduced_costs, objective_value):
            return LpOutcome(LpStatus.UNBOUNDED)

        assignment = {variable_id: Fraction(0) for variable_id in self._lp.get_variable_ids()}

        for row_index, column in enumerate(self._basis):
            variable_id, sign = self._column_2_variable[column]

            if sign != 0:
                assignment[variable_id] += sign * self._rhs[row_index]

        value = sum((coefficient * assignment[variable_id] for variable_id, coefficient
                     in self._lp.get_objective().items()), Fraction(0))
        duals = tuple(-reduced_costs.get(origin_column, Fraction(0)) * row_sign
                      if origin_column >= 0 else Fraction(0)
                      for _, origin_column, row_sign in self._row_origins)
        return LpOutcome(LpStatus.OPTIMAL, value, assignment, duals)

    def _build(self) -> None:
        variable_id_2_columns: typing.Dict[VariableId, typing.List[typing.Tuple[int, int]]] = {}

        for variable_id in self._lp.get_variable_ids():
            columns = [(self._add_column(variable_id, 1), 1)]

            if self._lp.is_free(variable_id):
                columns.append((self._add_column(variable_id, -1), -1))

            variable_id_2_columns[variable_id] = columns

        for constraint_index, constraint in enumerate(self._lp.get_constraints()):
            if len(constraint.coefficients) == 0:
                if not _RELATION_2_TEST[constraint.relation](Fraction(0), constraint.rhs):
                    self._is_trivially_infeasible = True

                self._row_origins.append((constraint_index, -1, 1))
                continue

            row: typing.Dict[int, Fraction] = {}

            for variable_id, coefficient in constraint.coefficients.items():
                for column, sign in variable_id_2_columns[variable_id]:
                    row[column] = coefficient * sign

            rhs = constraint.rhs
            slack_column = -1

            if constraint.relation is Relation.LE:
                slack_column = self._add_column(None, 0)
                row[slack_column] = Fraction(1)
            elif constraint.relation is Relation.GE:
                slack_column = self._add_column(None, 0)
                row[slack_column] = Fraction(-1)

            row_sign = 1

            if rhs < 0:
                row = {column: -value for column, value in row.items()}
                rhs = -rhs
                row_sign = -1

            if slack_column >= 0 and row[slack_column] == 1:
                basic_column = slack_column
            else:
                basic_column = self._add_column(None, 0, is_artificial=True)
                row[basic_column] = Fraction(1)

            self._rows.append(row)
            self._rhs.append(rhs)
            self._basis.append(basic_column)
            self._row_origins.append((constraint_index, basic_column, row_sign))

    def _add_column(self, variable_id: typing.Optional[VariableId], sign: int
                    , is_artificial=False) -> int:
        self._column_2_variable.append((variable_id, sign))
        self._is_artificial.append(is_artificial)
        return len(self._column_2_variable) - 1

    def _price(self, costs: typing.Mapping[int, Fraction]
               ) -> typing.Tuple[typing.Dict[int, Fraction], typing.List[Fraction]]:
        reduced_costs = dict(costs)
        negative_value = Fraction(0)

        for row_index, basic_column in enumerate(self._basis):
            cost = costs.get(basic_column, Fraction(0))

            if cost == 0:
                continue

            for column, value in self._rows[row_index].items():
                reduced_cost = reduced_costs.get(column, Fraction(0)) - cost * value

                if reduced_cost == 0:
                    reduced_costs.pop(column, None)
                else:
                    reduced_costs[column] = reduced_cost

            negative_value -= cost * self._rhs[row_index]

        # reduced_costs of basic columns are zero by construction
        return reduced_costs, [-negative_value]

    def _iterate(self, reduced_costs: typing.Dict[int, Fraction]
                 , objective_value: typing.List[Fraction]) -> bool:
        while True:
            entering_column = -1

            for column, reduced_cost in reduced_costs.items():
                if reduced_cost < 0 and not self._is_artificial[column]:
                    if entering_column < 0 or column < entering_column:
                        entering_column = column

            if entering_column < 0:
                return True

            leaving_row = -1
            best_ratio = Fraction(0)

            for row_index, row in enumerate(self._rows):
                value = row.get(entering_column)

                if value is None or value <= 0:
                    continue

                ratio = self._rhs[row_index] / value

                if leaving_row < 0 or ratio < best_ratio or (ratio == best_ratio \
                    and self._basis[row_index] < self._basis[leaving_row]):
                    leaving_row = row_index
                    best_ratio = ratio

            if leaving_row < 0:
                return False

            self._pivot(leaving_row, entering_column, reduced_costs, objective_value)

    def _drive_out_artificials(self) -> None:
        for row_index, basic_column in enumerate(self._basis):
            if not self._is_artificial[basic_column]:
                continue

            for column in sorted(self._rows[row_index].keys()):
                if not self._is_artificial[column]:
                    self._pivot(row_index, column, {}, [Fraction(0)])
                    break

    def _pivot(self, row_index: int, column: int, reduced_costs: typing.Dict[int, Fraction]
               , objective_value: typing.List[Fraction]) -> None:
        self._number_of_pivots += 1

        if self._number_of_pivots > self._max_pivots:
            raise errors.ResourceLimitError("pivot limit exceeded: max_pivots={!r}"
                                            .format(self._max_pivots))

        pivot_row = self._rows[row_index]
        pivot_value = pivot_row[column]

        if pivot_value != 1:
            pivot_row = {other_column: value / pivot_value for other_column, value
                         in pivot_row.items()}
            self._rows[row_index] = pivot_row
            self._rhs[row_index] /= pivot_value

        pivot_rhs = self._rhs[row_index]

        for other_row_index, other_row in enumerate(self._rows):
            if other_row_index == row_index:
                continue

            factor = other_row.get(column)

            if factor is None:
                continue

            _subtract_multiple(other_row, pivot_row, factor)
            self._rhs[other_row_index] -= factor * pivot_rhs

        factor = reduced_costs.get(column)

        if factor is not None:
            _subtract_multiple(reduced_costs, pivot_row, factor)
            objective_value[0] += factor * pivot_rhs

        self._basis[row_index] = column


def _subtract_multiple(row: typing.Dict[int, Fraction], pivot_row: typing.Dict[int, Fraction]
                       , factor: Fraction) -> None:
    for column, value in pivot_row.items():
        new_value = row.get(column, Fraction(0)) - factor * value

        if new_value == 0:
            row.pop(column, None)
        else:
            row[column] = new_value


def _format_row(row: typing.Mapping[VariableId, Fraction]
                , variable_names: typing.Mapping[VariableId, str]) -> str:
    if len(row) == 0:
        return "0"

    terms = []

    for variable_id, coefficient in row.items():
        sign = "-" if coefficient < 0 else "+"
        terms.append("{} {} {}".format(sign, abs(coefficient), variable_names[variable_id]))

    return " ".join(terms).lstrip("+ ")


_RELATION_2_TEST: typing.Dict[Relation, typing.Callable[[Fraction, Fraction], bool]] = {
    Relation.LE: lambda lhs, rhs: lhs <= rhs,
    Relation.EQ: lambda lhs, rhs: lhs == rhs,
    Relation.GE: lambda lhs, rhs: lhs >= rhs,
}
