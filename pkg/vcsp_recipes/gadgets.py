import fractions
import functools
import itertools
import operator
import typing

import vcsp


Fraction = fractions.Fraction
ExtRat = vcsp.ExtRat
Bits = typing.Tuple[int, ...]
TupleKey = typing.Tuple[str, vcsp.Args]


class GadgetParams(typing.NamedTuple):
    weighting: vcsp.CoreWeighting
    total_weight: Fraction
    delta: ExtRat
    projection: typing.Dict[str, str]
    base: typing.Optional[str] = None
    incident_edges: typing.Optional[typing.Dict[str, typing.Tuple[str, ...]]] = None
    overlap_pair: typing.Optional[typing.Tuple[TupleKey, TupleKey]] = None
    index_sets: typing.Optional[typing.Tuple[vcsp.Args, vcsp.Args]] = None
    pairs: typing.Optional[typing.Tuple[typing.Tuple[TupleKey, TupleKey], ...]] = None

    def get_penalty(self) -> ExtRat:
        if self.delta.is_infinite():
            return vcsp.ONE

        return ExtRat.from_fraction(1 + self.total_weight / self.delta.to_fraction())


class Gadget(typing.NamedTuple):
    structure: vcsp.ValuedStructure
    params: GadgetParams


def gap_instance_treewidth(structure: vcsp.ValuedStructure, level: int, *
                           , context: typing.Optional[vcsp.Context]=None) -> Gadget:
    context = vcsp.get_context(context)
    _check_level(level)
    relational_structure = vcsp.pos(structure)
    twms, _ = vcsp.twms(relational_structure, context=context)

    if twms < level:
        raise vcsp.PreconditionFailedError("twms too small: twms={!r} level={!r}"
                                           .format(twms, level))

    weighting, total_weight, delta = _make_weighting(structure, context)
    graph = vcsp.gaifman(relational_structure)
    universe = structure.get_universe()
    element_2_index = {element: index for index, element in enumerate(universe)}
    incident_edges = {element: tuple(sorted(graph.neighbors(element)
                                            , key=element_2_index.__getitem__))
                      for element in universe}
    base = _find_base(relational_structure, element_2_index, context)
    gadget_size = sum(2 ** max(len(neighbors) - 1, 0) for neighbors in incident_edges.values())
    context.check_limit("max_gadget_elements", gadget_size)
    fibers: typing.Dict[str, typing.List[Bits]] = {}

    for element in universe:
        parity = 1 if element == base else 0
        all_bits = itertools.product((0, 1), repeat=len(incident_edges[element]))
        fibers[element] = [bits for bits in all_bits if sum(bits) % 2 == parity]

    def is_related(symbol_name: str, args: vcsp.Args, bit_vectors: typing.Sequence[Bits]
                   ) -> bool:
        elements = [universe[arg] for arg in args]

        for position1, position2 in itertools.combinations(range(len(elements)), 2):
            element1 = elements[position1]
            element2 = elements[position2]

            if element1 == element2:
                continue

            bit1 = bit_vectors[position1][incident_edges[element1].index(element2)]
            bit2 = bit_vectors[position2][incident_edges[element2].index(element1)]

            if bit1 != bit2:
                return False

        return True

    params = GadgetParams(weighting, total_weight, delta, {}, base=base
                          , incident_edges=incident_edges)
    gadget = _build_gadget(structure, fibers, is_related, params)
    context.get_logger().info("treewidth gadget built: size={!r} gadget_size={!r} base={!r}"
                              .format(structure.get_size(), gadget.structure.get_size(), base))
    return gadget


def gap_instance_overlap(structure: vcsp.ValuedStructure, level: int, *
                         , context: typing.Optional[vcsp.Context]=None) -> Gadget:
    context = vcsp.get_context(context)
    _check_level(level)
    overlap_pair = vcsp.find_overlap_pair(structure)
    overlap = vcsp.overlap(structure)

    if overlap_pair is None or overlap < level + 1:
        raise vcsp.PreconditionFailedError("overlap too small: overlap={!r} level={!r}"
                                           .format(overlap, level))

    positive_keys = [(symbol_name, args) for symbol_name, args, _
                     in structure.iter_positive_tuples()]
    context.check_limit("max_gadget_pairs", len(positive_keys) * (len(positive_keys) - 1))
    pairs = tuple(itertools.permutations(positive_keys, 2))
    context.check_limit("max_gadget_elements", structure.get_size() * 2 ** len(pairs))
    weighting, total_weight, delta = _make_weighting(structure, context)
    (symbol_name_x, args_x), (symbol_name_y, args_y) = overlap_pair
    shared_elements = set(args_x) & set(args_y)
    index_set_x = _find_first_indexes(args_x, shared_elements)
    index_set_y = _find_first_indexes(args_y, shared_elements)
    positive_key_set = set(positive_keys)
    universe = structure.get_universe()
    bit_vectors = list(itertools.product((0, 1), repeat=len(pairs)))
    fibers = {element: bit_vectors for element in universe}

    def is_excluded(symbol_name: str, args: vcsp.Args, bit_vectors2: typing.Sequence[Bits]
                    , overlap_symbol_name: str, index_set: vcsp.Args, side: int
                    , parity: int) -> bool:
        if symbol_name != overlap_symbol_name:
            return False

        if len(set(args[index] for index in index_set)) != len(shared_elements):
            return False

        for i, pair in enumerate(pairs):
            if pair[side] != (symbol_name, args):
                continue

            bit_sum = functools.reduce(operator.xor, (bit_vectors2[index][i] for index
                                                      in index_set), 0)

            if bit_sum == parity:
                return True

        return False

    def is_related(symbol_name: str, args: vcsp.Args, bit_vectors2: typing.Sequence[Bits]
                   ) -> bool:
        assert (symbol_name, args) in positive_key_set

        if is_excluded(symbol_name, args, bit_vectors2, symbol_name_x, index_set_x, 0, 1):
            return False

        if is_excluded(symbol_name, args, bit_vectors2, symbol_name_y, index_set_y, 1, 0):
            return False

        return True

    params = GadgetParams(weighting, total_weight, delta, {}, overlap_pair=overlap_pair
                          , index_sets=(index_set_x, index_set_y), pairs=pairs)
    gadget = _build_gadget(structure, fibers, is_related, params)
    context.get_logger().info("overlap gadget built: size={!r} gadget_size={!r} pairs={!r}"
                              " overlap={!r}".format(structure.get_size()
                                                     , gadget.structure.get_size(), len(pairs)
                                                     , overlap))
    return gadget


def _make_weighting(structure: vcsp.ValuedStructure, context: vcsp.Context
                    ) -> typing.Tuple[vcsp.CoreWeighting, Fraction, ExtRat]:
    if not vcsp.is_core(structure, context=context):
        raise vcsp.PreconditionFailedError("not a core: size={!r}".format(structure.get_size()))

    weighting = vcsp.core_weighting(structure, context=context)
    total_weight = Fraction(0)
    delta = vcsp.INFINITY

    for symbol_name, args, value in structure.iter_positive_tuples():
        if value.is_finite():
            total_weight += value.to_fraction() * weighting.get_weight(symbol_name, args)

        if value < delta:
            delta = value

    return weighting, total_weight, delta


def _find_base(structure: vcsp.RelationalStructure, element_2_index: typing.Mapping[str, int]
               , context: vcsp.Context) -> str:
    best_component = None
    best_width = -1

    for component, width in vcsp.component_twms(structure, context=context):
        if width > best_width:
            best_component = component
            best_width = width

    assert best_component is not None
    return min(best_component, key=element_2_index.__getitem__)


def _find_first_indexes(args: vcsp.Args, elements: typing.AbstractSet[int]) -> vcsp.Args:
    indexes = []
    seen_elements: typing.Set[int] = set()

    for index, arg in enumerate(args):
        if arg in elements and arg not in seen_elements:
            indexes.append(index)
            seen_elements.add(arg)

    return tuple(indexes)


def _build_gadget(structure: vcsp.ValuedStructure, fibers: typing.Mapping[str, typing.List[Bits]]
                  , is_related: typing.Callable[[str, vcsp.Args, typing.Sequence[Bits]], bool]
                  , params: GadgetParams) -> Gadget:
    universe = []
    element_2_lifts: typing.Dict[str, typing.List[str]] = {}

    for element in structure.get_universe():
        lifts = element_2_lifts[element] = []

        for bits in fibers[element]:
            lift = "{}:{}".format(element, "".join(str(bit) for bit in bits))
            universe.append(lift)
            lifts.append(lift)
            params.projection[lift] = element

    lift_2_index = {lift: index for index, lift in enumerate(universe)}
    lift_2_bits = {lift: bits for element in structure.get_universe() for lift, bits
                   in zip(element_2_lifts[element], fibers[element])}
    penalty = params.get_penalty()
    tables = {symbol_name: vcsp.Table(penalty, {}) for symbol_name
              in structure.get_signature().get_names()}

    for symbol_name, args, _ in structure.iter_positive_tuples():
        elements = [structure.get_universe()[arg] for arg in args]
        value = ExtRat.from_fraction(params.weighting.get_weight(symbol_name, args))

        for lifts in itertools.product(*(element_2_lifts[element] for element in elements)):
            bit_vectors = [lift_2_bits[lift] for lift in lifts]

            if is_related(symbol_name, args, bit_vectors):
                tables[symbol_name].entries[tuple(lift_2_index[lift] for lift in lifts)] = value

    gadget_structure = vcsp.ValuedStructure(structure.get_signature(), universe, tables)
    return Gadget(gadget_structure, params)


def _check_level(level: int) -> None:
    if level < 1:
        raise vcsp.BadParameterError("level below one: level={!r}".format(level))
