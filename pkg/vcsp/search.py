__all__ = (
    "FixStep",
    "SearchOutcome",
    "search_fix_loop",
    "search_solve",
)


import typing

from . import context as context_
from . import core
from . import errors
from . import extrat
from . import mappings
from . import sherali
from . import structures
from . import width
from .structures import ValuedStructure, check_same_signature


ExtRat = extrat.ExtRat


class FixStep(typing.NamedTuple):
    element: str
    image: str
    value: ExtRat


class SearchOutcome(typing.NamedTuple):
    mapping: mappings.Mapping
    cost: ExtRat
    infinite: bool
    steps: typing.Tuple[FixStep, ...] = ()


def search_fix_loop(structure1: ValuedStructure, structure2: ValuedStructure, level: int, *
                    , context: typing.Optional[context_.Context]=None) -> SearchOutcome:
    """Fix one element at a time while the level-``level`` optimum stays put.

    Every step pins an element of ``structure1`` to a target element through
    a fresh unary symbol, infinite at the element on the left and zero at the
    target element on the right.
    """
    context = context_.get_context(context)
    logger = context.get_logger()
    check_same_signature(structure1, structure2)
    finite_mapping = mappings.find_finite_mapping(structure1, structure2, context=context)

    if finite_mapping is None:
        logger.info("fix loop skipped: reason='no finite mapping'")
        mapping = mappings.Mapping(structure1.get_universe(), structure2.get_universe()
                                   , (0,) * structure1.get_size())
        return SearchOutcome(mapping, extrat.INFINITY, True)

    twms, _ = width.twms(structures.pos(structure1), context=context)
    overlap = width.overlap(structure1)

    if twms > level - 1 or overlap > level:
        raise errors.PreconditionFailedError("level too low: level={!r} twms={!r} overlap={!r}"
                                             .format(level, twms, overlap))

    target_value, _ = sherali.opt_k(structure1, structure2, level, context=context)
    current1 = structure1
    current2 = structure2
    images = []
    steps = []

    for element in range(structure1.get_size()):
        symbol_name = _make_symbol_name(current1.get_signature(), element)
        current1 = structures.with_symbol(current1, symbol_name, 1, extrat.ZERO
                                          , {(element,): extrat.INFINITY})

        for image in range(structure2.get_size()):
            candidate2 = structures.with_symbol(current2, symbol_name, 1, extrat.INFINITY
                                                , {(image,): extrat.ZERO})
            value, _ = sherali.opt_k(current1, candidate2, level, context=context)

            if value == target_value:
                current2 = candidate2
                images.append(image)
                steps.append(FixStep(structure1.get_universe()[element]
                                     , structure2.get_universe()[image], value))
                break
        else:
            raise errors.NoTighteningWitnessError("no value keeps the optimum: element={!r}"
                                                  " target_value={!s}"
                                                  .format(structure1.get_universe()[element]
                                                          , target_value))

        logger.info("fix loop step: element={!r} image={!r} value={!s}"
                    .format(structure1.get_universe()[element]
                            , structure2.get_universe()[images[-1]], target_value))

    mapping = mappings.Mapping(structure1.get_universe(), structure2.get_universe()
                               , tuple(images))
    value = mappings.cost(structure1, structure2, mapping)

    if value != target_value:
        raise errors.NoTighteningWitnessError("relaxation not tight: value={!s}"
                                              " target_value={!s}".format(value, target_value))

    return SearchOutcome(mapping, value, False, tuple(steps))


def search_solve(structure1: ValuedStructure, structure2: ValuedStructure, *
                 , level: typing.Optional[int]=None
                 , context: typing.Optional[context_.Context]=None) -> SearchOutcome:
    check_same_signature(structure1, structure2)
    core_result = core.compute_core(structure1, context=context)

    if level is None:
        twms, _ = width.twms(structures.pos(core_result.core), context=context)
        level = max(twms + 1, width.overlap(core_result.core), 1)

    outcome = search_fix_loop(core_result.core, structure2, level, context=context)
    mapping = mappings.compose(outcome.mapping, core_result.collapse)
    return SearchOutcome(mapping, mappings.cost(structure1, structure2, mapping)
                         , outcome.infinite, outcome.steps)


def _make_symbol_name(signature: structures.Signature, element: int) -> str:
    symbol_name = "fix{}".format(element)

    while signature.has_symbol(symbol_name):
        symbol_name = "_" + symbol_name

    return symbol_name
