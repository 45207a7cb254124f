__all__ = (
    "Family",
    "SAInstance",
    "SASolution",
    "TightnessCertificate",
    "build_sa",
    "opt_k",
    "integral_solution",
    "check_sa_solution",
    "evaluate",
    "sa_tight_decide",
)


import fractions
import itertools
import typing

from . import context as context_
from . import core
from . import errors
from . import extrat
from . import lp
from . import mappings
from . import structures
from . import width
from .structures import Args, ValuedStructure, check_same_signature


Fraction = fractions.Fraction
ExtRat = extrat.ExtRat
FamilyKey = typing.Tuple[typing.Any, ...]
VariableId = typing.Tuple[FamilyKey, Args]


class Family(typing.NamedTuple):
    elements: Args
    symbol_name: typing.Optional[str]
    args: Args
    value: ExtRat


class SAInstance(typing.NamedTuple):
    level: int
    canonical: bool
    families: typing.Dict[FamilyKey, Family]
    program: lp.LinProgram
    forced_zero: typing.List[VariableId]


class SASolution(typing.NamedTuple):
    values: typing.Dict[VariableId, Fraction]
    value: ExtRat


class TightnessCertificate(typing.NamedTuple):
    answer: bool
    core: core.CoreResult
    twms: int
    decomposition: width.TreeDecomposition
    overlap: int
    overlap_pair: typing.Optional[typing.Tuple[width.OverlapTuple, width.OverlapTuple]]


def build_sa(structure1: ValuedStructure, structure2: ValuedStructure, level: int, *
             , canonical=True, context: typing.Optional[context_.Context]=None) -> SAInstance:
    """Build the level-``level`` Sherali-Adams program of the pair.

    Level-symbol tuples over the same element set share one family when
    ``canonical`` is set; otherwise every tuple of the level symbol gets its
    own family and marginalization is stated for every contained pair.
    """
    context = context_.get_context(context)
    check_same_signature(structure1, structure2)

    if level < 1:
        raise errors.BadParameterError("level below one: level={!r}".format(level))

    families = _make_families(structure1, level, canonical)
    target_size = structure2.get_size()
    number_of_variables = sum(target_size ** len(family.elements) for family
                              in families.values())
    context.check_limit("max_sa_variables", number_of_variables)
    program = lp.LinProgram()
    forced_zero = []
    objective = {}

    for family_key, family in families.items():
        for assignment in itertools.product(range(target_size), repeat=len(family.elements)):
            variable_id = family_key, assignment

            if family.symbol_name is None:
                program.add_variable(variable_id)
                continue

            images = _apply(family, assignment)
            product = family.value * structure2.get_value(family.symbol_name, images)

            if product.is_infinite():
                forced_zero.append(variable_id)
                continue

            program.add_variable(variable_id)

            if not product.is_zero():
                objective[variable_id] = product.to_fraction()

    program.set_objective(objective)

    for family_key, family in families.items():
        program.add_constraint({(family_key, assignment): 1 for assignment
                                in itertools.product(range(target_size)
                                                     , repeat=len(family.elements))
                                if program.has_variable((family_key, assignment))}
                               , lp.Relation.EQ, 1, name="normalize{}".format(family_key))

    if canonical:
        pairs = _iter_canonical_pairs(families, level)
    else:
        pairs = _iter_all_pairs(families, level)

    for small_key, large_key in pairs:
        _add_marginalization(program, families, small_key, large_key, target_size)

    context.get_logger().info("sa built: level={!r} canonical={!r} families={!r} variables={!r}"
                              " forced_zero={!r} constraints={!r}"
                              .format(level, canonical, len(families)
                                      , len(program.get_variable_ids()), len(forced_zero)
                                      , len(program.get_constraints())))
    return SAInstance(level, canonical, families, program, forced_zero)


def opt_k(structure1: ValuedStructure, structure2: ValuedStructure, level: int, *
          , canonical=True, context: typing.Optional[context_.Context]=None
          ) -> typing.Tuple[ExtRat, typing.Optional[SASolution]]:
    instance = build_sa(structure1, structure2, level, canonical=canonical, context=context)
    outcome = lp.solve(instance.program, context=context)

    if outcome.is_infeasible():
        return extrat.INFINITY, None

    assert outcome.is_optimal(), repr(outcome.status)
    assert outcome.value is not None
    value = ExtRat.from_fraction(outcome.value)
    return value, SASolution(dict(outcome.assignment), value)


def integral_solution(instance: SAInstance, mapping: mappings.Mapping
                      ) -> typing.Dict[VariableId, Fraction]:
    values = {}

    for family_key, family in instance.families.items():
        assignment = tuple(mapping.images[element] for element in family.elements)
        values[family_key, assignment] = Fraction(1)

    return values


def check_sa_solution(instance: SAInstance, values: typing.Mapping[VariableId, Fraction]
                      ) -> bool:
    for variable_id in instance.forced_zero:
        if values.get(variable_id, 0) != 0:
            return False

    for variable_id in values.keys():
        if not instance.program.has_variable(variable_id) and values[variable_id] != 0:
            return False

    return lp.check_assignment(instance.program, values)


def evaluate(instance: SAInstance, values: typing.Mapping[VariableId, Fraction]) -> Fraction:
    return sum((coefficient * values.get(variable_id, 0) for variable_id, coefficient
                in instance.program.get_objective().items()), Fraction(0))


def sa_tight_decide(structure: ValuedStructure, level: int, *
                    , context: typing.Optional[context_.Context]=None) -> TightnessCertificate:
    core_result = core.compute_core(structure, context=context)
    twms, decomposition = width.twms(structures.pos(core_result.core), context=context)
    overlap_pair = width.find_overlap_pair(core_result.core)
    overlap = width.overlap(core_result.core)
    answer = twms <= level - 1 and overlap <= level
    return TightnessCertificate(answer, core_result, twms, decomposition, overlap, overlap_pair)


def _make_families(structure: ValuedStructure, level: int, canonical: bool
                   ) -> typing.Dict[FamilyKey, Family]:
    families = {}

    for symbol_name, args, value in structure.iter_positive_tuples():
        families[_TUPLE_TAG, symbol_name, args] = Family(tuple(sorted(set(args))), symbol_name
                                                         , args, value)

    size = structure.get_size()

    if canonical:
        for subset_size in range(1, min(level, size) + 1):
            for elements in itertools.combinations(range(size), subset_size):
                families[_LEVEL_TAG, elements] = Family(elements, None, elements, extrat.ONE)
    else:
        for args in itertools.product(range(size), repeat=level):
            families[_LEVEL_TAG, args] = Family(tuple(sorted(set(args))), None, args
                                                , extrat.ONE)

    return families


def _iter_canonical_pairs(families: typing.Mapping[FamilyKey, Family], level: int
                          ) -> typing.Iterator[typing.Tuple[FamilyKey, FamilyKey]]:
    for family_key, family in families.items():
        if family.symbol_name is not None:
            for subset_size in range(1, min(level, len(family.elements)) + 1):
                for elements in itertools.combinations(family.elements, subset_size):
                    yield (_LEVEL_TAG, elements), family_key
        elif len(family.elements) >= 2:
            for elements in itertools.combinations(family.elements, len(family.elements) - 1):
                yield (_LEVEL_TAG, elements), family_key


def _iter_all_pairs(families: typing.Mapping[FamilyKey, Family], level: int
                    ) -> typing.Iterator[typing.Tuple[FamilyKey, FamilyKey]]:
    for small_key, small_family in families.items():
        if len(small_family.elements) > level:
            continue

        small_elements = set(small_family.elements)

        for large_key, large_family in families.items():
            if large_key != small_key and small_elements <= set(large_family.elements):
                yield small_key, large_key


def _add_marginalization(program: lp.LinProgram, families: typing.Mapping[FamilyKey, Family]
                         , small_key: FamilyKey, large_key: FamilyKey, target_size: int) -> None:
    small_family = families[small_key]
    large_family = families[large_key]
    positions = [large_family.elements.index(element) for element in small_family.elements]
    rows: typing.Dict[Args, typing.Dict[VariableId, int]] = {}

    for assignment in itertools.product(range(target_size), repeat=len(small_family.elements)):
        variable_id = small_key, assignment
        row = rows[assignment] = {}

        if program.has_variable(variable_id):
            row[variable_id] = 1

    for assignment in itertools.product(range(target_size), repeat=len(large_family.elements)):
        variable_id = large_key, assignment

        if program.has_variable(variable_id):
            rows[tuple(assignment[position] for position in positions)][variable_id] = -1

    for row in rows.values():
        if len(row) >= 1:
            program.add_constraint(row, lp.Relation.EQ, 0)


def _apply(family: Family, assignment: Args) -> Args:
    element_2_image = dict(zip(family.elements, assignment))
    return tuple(element_2_image[arg] for arg in family.args)


_TUPLE_TAG = "tuple"
_LEVEL_TAG = "level"
