__all__ = (
    "IfhDistribution",
    "IfhProgram",
    "Validation",
    "preimage_values",
    "make_variable_id",
    "make_ifh_program",
    "find_ifh",
    "improves",
    "equivalent",
    "validate_ifh",
)


import fractions
import typing

from . import context as context_
from . import errors
from . import extrat
from . import lp
from . import mappings
from .structures import Args, ValuedStructure, check_same_signature


Fraction = fractions.Fraction
ExtRat = extrat.ExtRat
TupleKey = typing.Tuple[str, Args]


class IfhDistribution(typing.NamedTuple):
    entries: typing.Tuple[typing.Tuple[mappings.Mapping, Fraction], ...]

    def get_support(self) -> typing.List[mappings.Mapping]:
        return [mapping for mapping, _ in self.entries]

    def get_total_weight(self) -> Fraction:
        return sum((weight for _, weight in self.entries), Fraction(0))


class IfhProgram(typing.NamedTuple):
    program: lp.LinProgram
    columns: typing.List[mappings.Mapping]
    row_keys: typing.List[TupleKey]


class Validation(typing.NamedTuple):
    ok: bool
    violation: typing.Optional[errors.Error]=None


def preimage_values(structure: ValuedStructure, mapping: mappings.Mapping
                    ) -> typing.Dict[TupleKey, ExtRat]:
    key_2_value: typing.Dict[TupleKey, ExtRat] = {}

    for symbol_name, args, value in structure.iter_positive_tuples():
        key = symbol_name, mapping.apply(args)
        key_2_value[key] = key_2_value.get(key, extrat.ZERO) + value

    return key_2_value


def make_ifh_program(structure1: ValuedStructure, structure2: ValuedStructure
                     , mappings_: typing.Iterable[mappings.Mapping], *, slack=False) -> IfhProgram:
    symbol_name_2_order = {symbol_name: i for i, symbol_name
                           in enumerate(structure2.get_signature().get_names())}
    kept_mappings = []
    columns = []

    for mapping in mappings_:
        coefficients = {}
        is_forced_zero = False

        for key, value in preimage_values(structure1, mapping).items():
            bound = structure2.get_value(*key)

            if bound.is_infinite():
                continue

            if (bound.is_zero() and not slack) or value.is_infinite():
                is_forced_zero = True
                break

            coefficients[key] = value.to_fraction()

        if is_forced_zero:
            continue

        kept_mappings.append(mapping)
        columns.append(coefficients)

    program = lp.LinProgram()
    key_2_row: typing.Dict[TupleKey, typing.Dict[typing.Hashable, Fraction]] = {}

    for mapping, coefficients in zip(kept_mappings, columns):
        variable_id = make_variable_id(mapping)
        program.add_variable(variable_id)

        for key, coefficient in coefficients.items():
            key_2_row.setdefault(key, {})[variable_id] = coefficient

    if slack:
        program.add_variable(_SLACK_VARIABLE_ID)

    row_keys = sorted(key_2_row.keys(), key=lambda key: (symbol_name_2_order[key[0]], key[1]))

    for key in row_keys:
        row = key_2_row[key]

        if slack:
            row[_SLACK_VARIABLE_ID] = Fraction(-1)

        program.add_constraint(row, lp.Relation.LE, structure2.get_value(*key).to_fraction()
                               , name="{}{}".format(key[0], key[1]))

    program.add_constraint({make_variable_id(mapping): 1 for mapping in kept_mappings}
                           , lp.Relation.EQ, 1, name="total")
    return IfhProgram(program, kept_mappings, row_keys)


def find_ifh(structure1: ValuedStructure, structure2: ValuedStructure, *
             , context: typing.Optional[context_.Context]=None
             ) -> typing.Optional[IfhDistribution]:
    context = context_.get_context(context)
    check_same_signature(structure1, structure2)

    try:
        support_mappings = mappings.enumerate_finite_support(structure1, structure2
                                                             , context=context)
    except errors.ResourceLimitError:
        context.get_logger().warning("ifh enumeration too large: falling back to column"
                                     " generation: max_columns={!r}"
                                     .format(context.get_limits().max_columns))
        return _find_ifh_by_column_generation(structure1, structure2, context)

    if len(support_mappings) == 0:
        return None

    ifh_program = make_ifh_program(structure1, structure2, support_mappings)

    if len(ifh_program.columns) == 0:
        return None

    outcome = lp.solve(ifh_program.program, context=context)

    if not outcome.is_optimal():
        return None

    return _make_distribution(ifh_program.columns, outcome.assignment)


def improves(structure1: ValuedStructure, structure2: ValuedStructure, *
             , context: typing.Optional[context_.Context]=None) -> bool:
    return find_ifh(structure1, structure2, context=context) is not None


def equivalent(structure1: ValuedStructure, structure2: ValuedStructure, *
               , context: typing.Optional[context_.Context]=None) -> bool:
    return improves(structure1, structure2, context=context) \
           and improves(structure2, structure1, context=context)


def validate_ifh(structure1: ValuedStructure, structure2: ValuedStructure
                 , distribution: IfhDistribution) -> Validation:
    check_same_signature(structure1, structure2)

    for mapping, weight in distribution.entries:
        if mapping.source != structure1.get_universe() \
           or mapping.target != structure2.get_universe():
            return Validation(False, errors.NotADistributionError("foreign mapping: mapping={!r}"
                                                                  .format(mapping.to_dict())))

        if weight <= 0:
            error = errors.NotADistributionError("non-positive weight: weight={!s}".format(weight))
            return Validation(False, error)

    total_weight = distribution.get_total_weight()

    if total_weight != 1:
        return Validation(False, errors.NotADistributionError("weights do not sum to one:"
                                                              " total_weight={!s}"
                                                              .format(total_weight)))

    key_2_lhs: typing.Dict[TupleKey, ExtRat] = {}

    for mapping, weight in distribution.entries:
        for key, value in preimage_values(structure1, mapping).items():
            key_2_lhs[key] = key_2_lhs.get(key, extrat.ZERO) + ExtRat.from_fraction(weight) * value

    symbol_name_2_order = {symbol_name: i for i, symbol_name
                           in enumerate(structure2.get_signature().get_names())}

    for key in sorted(key_2_lhs.keys(), key=lambda key: (symbol_name_2_order[key[0]], key[1])):
        lhs = key_2_lhs[key]
        rhs = structure2.get_value(*key)

        if rhs.is_finite() and lhs > rhs:
            symbol_name, args = key
            arg_names = tuple(structure2.get_universe()[arg] for arg in args)
            return Validation(False, errors.ConstraintViolationError(symbol_name, arg_names, lhs
                                                                     , rhs))

    return Validation(True)


def _find_ifh_by_column_generation(structure1: ValuedStructure, structure2: ValuedStructure
                                   , context: context_.Context
                                   ) -> typing.Optional[IfhDistribution]:
    logger = context.get_logger()
    first_column = mappings.cheapest_finite_support(structure1, structure2, {}, context=context)

    if first_column is None:
        return None

    columns = [first_column[1]]
    column_set = {first_column[1].images}

    while True:
        ifh_program = make_ifh_program(structure1, structure2, columns, slack=True)
        program = ifh_program.program
        program.set_objective({_SLACK_VARIABLE_ID: 1})
        outcome = lp.solve(program, context=context)
        assert outcome.is_optimal(), repr(outcome.status)
        assert outcome.value is not None
        logger.debug("column generation round: columns={!r} rows={!r} value={!s}"
                     .format(len(columns), len(ifh_program.row_keys), outcome.value))

        if outcome.value == 0:
            return _make_distribution(ifh_program.columns, outcome.assignment)

        prices = {key: -dual for key, dual in zip(ifh_program.row_keys, outcome.duals)
                  if dual != 0}
        total_dual = outcome.duals[-1]
        result = mappings.cheapest_finite_support(structure1, structure2, prices, context=context)
        assert result is not None
        price, column = result

        if price >= total_dual or column.images in column_set:
            return None

        columns.append(column)
        column_set.add(column.images)
        context.check_limit("max_columns", len(columns))


def _make_distribution(mappings_: typing.Iterable[mappings.Mapping]
                       , assignment: typing.Mapping[typing.Hashable, Fraction]) -> IfhDistribution:
    entries = []

    for mapping in mappings_:
        weight = assignment[make_variable_id(mapping)]

        if weight > 0:
            entries.append((mapping, weight))

    return IfhDistribution(tuple(entries))


def make_variable_id(mapping: mappings.Mapping) -> typing.Hashable:
    return "omega", mapping.images


_SLACK_VARIABLE_ID = "u"
