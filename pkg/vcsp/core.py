__all__ = (
    "CoreResult",
    "CoreWeighting",
    "is_core",
    "is_core_witness",
    "reduction_step",
    "compute_core",
    "image_structure",
    "core_weighting",
    "validate_core_weighting",
    "core_treewidth_decide",
)


import fractions
import itertools
import typing

from . import context as context_
from . import errors
from . import extrat
from . import improvement
from . import lp
from . import mappings
from . import structures
from . import width
from .structures import Args, ValuedStructure


Fraction = fractions.Fraction
ExtRat = extrat.ExtRat


class CoreResult(typing.NamedTuple):
    collapse: mappings.Mapping
    core: ValuedStructure


class CoreWeighting(typing.NamedTuple):
    weights: typing.Dict[typing.Tuple[str, Args], Fraction]

    def get_weight(self, symbol_name: str, args: Args) -> Fraction:
        return self.weights.get((symbol_name, args), Fraction(0))


def is_core(structure: ValuedStructure, *, context: typing.Optional[context_.Context]=None
            ) -> bool:
    return is_core_witness(structure, context=context) is None


def is_core_witness(structure: ValuedStructure, *
                    , context: typing.Optional[context_.Context]=None
                    ) -> typing.Optional[mappings.Mapping]:
    if not _has_finite_tuples(structure):
        if structure.get_size() == 1:
            return None

        return mappings.Mapping(structure.get_universe(), structure.get_universe()
                                , (0,) * structure.get_size())

    return reduction_step(structure, mappings.identity(structure), context=context)


def reduction_step(structure: ValuedStructure, mapping: mappings.Mapping, *
                   , context: typing.Optional[context_.Context]=None
                   ) -> typing.Optional[mappings.Mapping]:
    context = context_.get_context(context)
    reducer = _Reducer(structure, context)
    return reducer.reduce(mappings.image_of(mapping))


def compute_core(structure: ValuedStructure, *, context: typing.Optional[context_.Context]=None
                 ) -> CoreResult:
    context = context_.get_context(context)
    logger = context.get_logger()
    collapse = mappings.identity(structure)

    if _has_finite_tuples(structure):
        reducer = _Reducer(structure, context)

        for step in range(structure.get_size()):
            next_collapse = reducer.reduce(mappings.image_of(collapse))

            if next_collapse is None:
                break

            collapse = next_collapse
            logger.info("core step: step={!r} image_size={!r}"
                        .format(step + 1, len(mappings.image_of(collapse))))
        else:
            raise AssertionError("core computation did not settle")
    elif structure.get_size() >= 2:
        collapse = mappings.Mapping(structure.get_universe(), structure.get_universe()
                                    , (0,) * structure.get_size())

    core = image_structure(structure, collapse)
    logger.info("core done: size={!r} core_size={!r}".format(structure.get_size()
                                                              , core.get_size()))
    return CoreResult(collapse, core)


def image_structure(structure: ValuedStructure, mapping: mappings.Mapping) -> ValuedStructure:
    image = sorted(mappings.image_of(mapping))
    old_index_2_new_index = {old_index: new_index for new_index, old_index in enumerate(image)}
    tables: typing.Dict[str, structures.Table] = {
        symbol_name: structures.Table(extrat.ZERO, {}) for symbol_name
        in structure.get_signature().get_names()
    }

    for (symbol_name, args), value in improvement.preimage_values(structure, mapping).items():
        tables[symbol_name].entries[tuple(old_index_2_new_index[arg] for arg in args)] = value

    universe = [structure.get_universe()[old_index] for old_index in image]
    return ValuedStructure(structure.get_signature(), universe, tables)


def core_weighting(structure: ValuedStructure, *
                   , context: typing.Optional[context_.Context]=None) -> CoreWeighting:
    context = context_.get_context(context)

    if not is_core(structure, context=context):
        raise errors.NotACoreError("not a core: size={!r}".format(structure.get_size()))

    finite_tuples = [(symbol_name, args, value) for symbol_name, args, value
                     in structure.iter_finite_tuples()]
    endomaps = mappings.enumerate_finite_support(structure, structure, context=context)
    non_surjective_endomaps = [endomap for endomap in endomaps
                               if not mappings.is_surjective(endomap)]

    if len(non_surjective_endomaps) == 0:
        return CoreWeighting({(symbol_name, args): Fraction(1) for symbol_name, args, _
                              in finite_tuples})

    program = lp.LinProgram()
    program.add_variable(_GAP_VARIABLE_ID, free=True)

    for symbol_name, args, _ in finite_tuples:
        program.add_variable((symbol_name, args))

    program.add_constraint({_GAP_VARIABLE_ID: 1}, lp.Relation.LE, 1, name="gap")

    for endomap in endomaps:
        key_2_value = improvement.preimage_values(structure, endomap)
        coefficients = {}

        for symbol_name, args, value in finite_tuples:
            preimage_value = key_2_value.get((symbol_name, args), extrat.ZERO)
            assert preimage_value.is_finite()
            coefficients[symbol_name, args] = value.to_fraction() - preimage_value.to_fraction()

        if not mappings.is_surjective(endomap):
            coefficients[_GAP_VARIABLE_ID] = Fraction(1)

        program.add_constraint(coefficients, lp.Relation.LE, 0)

    program.set_objective({_GAP_VARIABLE_ID: -1})
    outcome = lp.solve(program, context=context)
    assert outcome.is_optimal(), repr(outcome.status)
    gap = outcome.assignment[_GAP_VARIABLE_ID]

    if gap <= 0:
        raise errors.NotACoreError("no separating weighting: gap={!s}".format(gap))

    epsilon = gap / (1 + sum((value.to_fraction() for _, _, value in finite_tuples)
                             , Fraction(0)))
    context.get_logger().debug("core weighting: tuples={!r} endomaps={!r} gap={!s}"
                               .format(len(finite_tuples), len(endomaps), gap))
    return CoreWeighting({(symbol_name, args): outcome.assignment[symbol_name, args] + epsilon
                          for symbol_name, args, _ in finite_tuples})


def validate_core_weighting(structure: ValuedStructure, weighting: CoreWeighting, *
                            , context: typing.Optional[context_.Context]=None) -> bool:
    context = context_.get_context(context)
    size = structure.get_size()
    context.check_limit("max_maps", size ** size)
    positive_tuples = list(structure.iter_positive_tuples())

    def weigh(images: typing.Callable[[Args], Args]) -> ExtRat:
        return extrat.sum_of(value * ExtRat.from_fraction(weighting.get_weight(symbol_name
                                                                              , images(args)))
                             for symbol_name, args, value in positive_tuples)

    lhs = weigh(lambda args: args)

    for images in itertools.product(range(size), repeat=size):
        if len(set(images)) == size:
            continue

        rhs = weigh(lambda args: tuple(images[arg] for arg in args))

        if not lhs < rhs:
            return False

    return True


def core_treewidth_decide(structure: ValuedStructure, max_width: int, *
                          , context: typing.Optional[context_.Context]=None
                          ) -> typing.Tuple[bool, int]:
    context = context_.get_context(context)
    core = compute_core(structure, context=context).core
    treewidth, _ = width.treewidth(width.gaifman(structures.pos(core)), context=context)
    return treewidth <= max_width, treewidth


class _Reducer:
    def __init__(self, structure: ValuedStructure, context: context_.Context) -> None:
        self._context = context
        endomaps = mappings.enumerate_finite_support(structure, structure, context=context)
        self._ifh_program = improvement.make_ifh_program(structure, structure, endomaps)

    def reduce(self, image: typing.AbstractSet[int]) -> typing.Optional[mappings.Mapping]:
        candidates = [endomap for endomap in self._ifh_program.columns
                      if mappings.image_of(endomap) < image]

        if len(candidates) == 0:
            return None

        program = self._ifh_program.program
        program.set_objective({improvement.make_variable_id(candidate): -1 for candidate
                               in candidates})
        outcome = lp.solve(program, context=self._context)
        assert outcome.is_optimal(), repr(outcome.status)
        assert outcome.value is not None

        if outcome.value == 0:
            return None

        positive_candidates = [candidate for candidate in candidates
                               if outcome.assignment[improvement.make_variable_id(candidate)] > 0]
        return min(positive_candidates, key=lambda candidate: (len(mappings.image_of(candidate))
                                                               , candidate.images))


def _has_finite_tuples(structure: ValuedStructure) -> bool:
    for _ in structure.iter_finite_tuples():
        return True

    return False


_GAP_VARIABLE_ID = "z1"
