__all__ = (
    "Mapping",
    "cost",
    "identity",
    "compose",
    "image_of",
    "is_surjective",
    "opt_bruteforce",
    "enumerate_finite_support",
    "is_finite_support",
    "find_finite_mapping",
    "cheapest_finite_support",
    "valued_isomorphic",
)


import collections
import fractions
import typing

from . import context as context_
from . import errors
from . import extrat
from .structures import Args, ValuedStructure, check_same_signature


ExtRat = extrat.ExtRat
Prices = typing.Mapping[typing.Tuple[str, Args], fractions.Fraction]


class Mapping(typing.NamedTuple):
    source: typing.Tuple[str, ...]
    target: typing.Tuple[str, ...]
    images: typing.Tuple[int, ...]

    @classmethod
    def from_dict(cls, source_structure: ValuedStructure, target_structure: ValuedStructure
                  , element_2_image: typing.Mapping[str, str]) -> "Mapping":
        images = []

        for element in source_structure.get_universe():
            image = element_2_image.get(element, None)

            if image is None:
                raise errors.SchemaError("partial mapping: element={!r}".format(element))

            images.append(target_structure.get_index(image))

        for element in element_2_image.keys():
            source_structure.get_index(element)

        return cls(source_structure.get_universe(), target_structure.get_universe()
                   , tuple(images))

    def get_image(self, element: str) -> str:
        try:
            index = self.source.index(element)
        except ValueError:
            raise errors.UnknownElementError("unknown element: element={!r}"
                                             .format(element)) from None

        return self.target[self.images[index]]

    def to_dict(self) -> typing.Dict[str, str]:
        return {element: self.target[image] for element, image in zip(self.source, self.images)}

    def apply(self, args: Args) -> Args:
        return tuple(self.images[arg] for arg in args)


def cost(structure1: ValuedStructure, structure2: ValuedStructure, mapping: Mapping) -> ExtRat:
    check_same_signature(structure1, structure2)
    assert len(mapping.images) == structure1.get_size(), repr(mapping)
    values = []

    for symbol_name, args, value in structure1.iter_positive_tuples():
        product = value * structure2.get_value(symbol_name, mapping.apply(args))

        if product.is_infinite():
            return extrat.INFINITY

        values.append(product)

    return extrat.sum_of(values)


def identity(structure: ValuedStructure) -> Mapping:
    universe = structure.get_universe()
    return Mapping(universe, universe, tuple(range(len(universe))))


def compose(outer: Mapping, inner: Mapping) -> Mapping:
    outer_element_2_index = {element: index for index, element in enumerate(outer.source)}
    images = []

    for image in inner.images:
        element = inner.target[image]
        index = outer_element_2_index.get(element, None)

        if index is None:
            raise errors.UnknownElementError("unknown element: element={!r}".format(element))

        images.append(outer.images[index])

    return Mapping(inner.source, outer.target, tuple(images))


def image_of(mapping: Mapping) -> typing.FrozenSet[int]:
    return frozenset(mapping.images)


def is_surjective(mapping: Mapping) -> bool:
    return len(image_of(mapping)) == len(mapping.target)


def opt_bruteforce(structure1: ValuedStructure, structure2: ValuedStructure, *
                   , context: typing.Optional[context_.Context]=None
                   ) -> typing.Tuple[ExtRat, Mapping]:
    context = context_.get_context(context)
    check_same_signature(structure1, structure2)
    context.check_limit("max_maps", structure2.get_size() ** structure1.get_size())
    terms = []

    for symbol_name, args, value in structure1.iter_positive_tuples():
        terms.append((args, _make_cost_term(structure2, symbol_name, value)))

    order = _order_by_weight(structure1)
    minimizer = _Minimizer(structure1.get_size(), structure2.get_size(), terms, order, None)
    value, images = minimizer.run()

    if images is None:
        images = (0,) * structure1.get_size()

    context.get_logger().debug("bruteforce done: source_size={!r} target_size={!r} nodes={!r}"
                               " value={!r}".format(structure1.get_size(), structure2.get_size()
                                                    , minimizer.get_number_of_nodes()
                                                    , extrat.format(value)))
    return value, Mapping(structure1.get_universe(), structure2.get_universe(), images)


def enumerate_finite_support(structure1: ValuedStructure, structure2: ValuedStructure, *
                             , context: typing.Optional[context_.Context]=None
                             , images: typing.Optional[typing.Collection[int]]=None
                             ) -> typing.List[Mapping]:
    context = context_.get_context(context)
    check_same_signature(structure1, structure2)
    max_columns = context.get_limits().max_columns
    mappings = []

    for images2 in _iter_solutions(structure1.get_size(), structure2.get_size()
                                   , _make_support_constraints(structure1, structure2), images):
        mappings.append(Mapping(structure1.get_universe(), structure2.get_universe(), images2))

        if len(mappings) > max_columns:
            raise errors.ResourceLimitError("too many finite-support mappings: max_columns={!r}"
                                            .format(max_columns))

    mappings.sort(key=lambda mapping: mapping.images)
    return mappings


def is_finite_support(structure1: ValuedStructure, structure2: ValuedStructure
                      , mapping: Mapping) -> bool:
    for symbol_name, args in structure1.iter_infinite_tuples():
        if structure2.get_value(symbol_name, mapping.apply(args)).is_finite():
            return False

    return True


def find_finite_mapping(structure1: ValuedStructure, structure2: ValuedStructure, *
                        , context: typing.Optional[context_.Context]=None
                        ) -> typing.Optional[Mapping]:
    context = context_.get_context(context)
    check_same_signature(structure1, structure2)
    constraints = []

    for symbol_name, args, value in structure1.iter_positive_tuples():
        if value.is_infinite():
            constraints.append((args, _make_test(structure2, symbol_name, ExtRat.is_zero)))
        else:
            constraints.append((args, _make_test(structure2, symbol_name, ExtRat.is_finite)))

    for images in _iter_solutions(structure1.get_size(), structure2.get_size(), constraints
                                  , max_nodes=context.get_limits().max_maps):
        return Mapping(structure1.get_universe(), structure2.get_universe(), images)

    return None


def cheapest_finite_support(structure1: ValuedStructure, structure2: ValuedStructure
                            , prices: Prices, *
                            , context: typing.Optional[context_.Context]=None
                            ) -> typing.Optional[typing.Tuple[fractions.Fraction, Mapping]]:
    """Find a finite-support mapping minimising the priced preimage sum.

    The objective is the sum over finite tuples x of ``structure2`` of
    ``prices[x]`` times the total value ``structure1`` puts on the tuples
    sent onto x. Prices must be nonnegative; absent prices count as zero.
    """
    context = context_.get_context(context)
    terms = []

    for symbol_name, args, value in structure1.iter_positive_tuples():
        if value.is_infinite():
            terms.append((args, _make_support_term(structure2, symbol_name)))
        else:
            terms.append((args, _make_price_term(prices, symbol_name, value.to_fraction())))

    minimizer = _Minimizer(structure1.get_size(), structure2.get_size(), terms
                           , _order_by_weight(structure1), context.get_limits().max_maps)
    value, images = minimizer.run()

    if images is None:
        return None

    return value.to_fraction(), Mapping(structure1.get_universe(), structure2.get_universe()
                                        , images)


def valued_isomorphic(structure1: ValuedStructure, structure2: ValuedStructure
                      ) -> typing.Optional[Mapping]:
    check_same_signature(structure1, structure2)
    size = structure1.get_size()

    if structure2.get_size() != size:
        return None

    if _count_values(structure1) != _count_values(structure2):
        return None

    invariants1 = _make_element_invariants(structure1)
    invariants2 = _make_element_invariants(structure2)
    positions: typing.List[typing.List[typing.Tuple[str, Args, ExtRat]]] \
        = [[] for _ in range(size)]

    for symbol_name, args, value in structure1.iter_positive_tuples():
        positions[max(args)].append((symbol_name, args, value))

    images = [-1] * size
    used = [False] * size

    def do_search(element: int) -> bool:
        if element == size:
            return True

        for image in range(size):
            if used[image] or invariants1[element] != invariants2[image]:
                continue

            images[element] = image

            if all(structure2.get_value(symbol_name, tuple(images[arg] for arg in args)) == value
                   for symbol_name, args, value in positions[element]):
                used[image] = True

                if do_search(element + 1):
                    return True

                used[image] = False

        images[element] = -1
        return False

    if not do_search(0):
        return None

    return Mapping(structure1.get_universe(), structure2.get_universe(), tuple(images))


Term = typing.Tuple[Args, typing.Callable[[Args], ExtRat]]
Test = typing.Tuple[Args, typing.Callable[[Args], bool]]


class _Minimizer:
    def __init__(self, source_size: int, target_size: int, terms: typing.Iterable[Term]
                 , order: typing.Sequence[int], max_nodes: typing.Optional[int]) -> None:
        self._target_size = target_size
        self._order = order
        self._max_nodes = max_nodes
        self._number_of_nodes = 0
        position_of = {element: position for position, element in enumerate(order)}
        self._terms_by_position: typing.List[typing.List[Term]] = [[] for _ in order]

        for args, cost_function in terms:
            position = max(position_of[arg] for arg in args)
            self._terms_by_position[position].append((args, cost_function))

        self._images = [-1] * source_size
        self._best_value = extrat.INFINITY
        self._best_images: typing.Optional[typing.Tuple[int, ...]] = None

    def get_number_of_nodes(self) -> int:
        return self._number_of_nodes

    def run(self) -> typing.Tuple[ExtRat, typing.Optional[typing.Tuple[int, ...]]]:
        self._search(0, extrat.ZERO)
        return self._best_value, self._best_images

    def _search(self, position: int, partial_value: ExtRat) -> None:
        if position == len(self._order):
            self._best_value = partial_value
            self._best_images = tuple(self._images)
            return

        element = self._order[position]

        for image in range(self._target_size):
            self._number_of_nodes += 1

            if self._max_nodes is not None and self._number_of_nodes > self._max_nodes:
                raise errors.ResourceLimitError("search limit exceeded: max_maps={!r}"
                                                .format(self._max_nodes))

            self._images[element] = image
            value = partial_value

            for args, cost_function in self._terms_by_position[position]:
                value = value + cost_function(tuple(self._images[arg] for arg in args))

                if value > self._best_value:
                    break

            if not self._is_beaten(value):
                self._search(position + 1, value)

        self._images[element] = -1

    def _is_beaten(self, value: ExtRat) -> bool:
        if value != self._best_value:
            return value > self._best_value

        if self._best_images is None:
            return True

        # ties go to the lexicographically smallest images; unassigned elements are -1
        for image, best_image in zip(self._images, self._best_images):
            if image != best_image:
                return image > best_image

        return True


def _iter_solutions(source_size: int, target_size: int, tests: typing.Sequence[Test]
                    , allowed_images: typing.Optional[typing.Collection[int]]=None
                    , max_nodes: typing.Optional[int]=None
                    ) -> typing.Iterator[typing.Tuple[int, ...]]:
    order = _order_by_adjacency(source_size, [args for args, _ in tests])
    position_of = {element: position for position, element in enumerate(order)}
    tests_by_position: typing.List[typing.List[Test]] = [[] for _ in order]

    for args, test in tests:
        tests_by_position[max(position_of[arg] for arg in args)].append((args, test))

    if allowed_images is None:
        candidates = list(range(target_size))
    else:
        candidates = sorted(allowed_images)

    images = [-1] * source_size
    number_of_nodes = 0

    def do_search(position: int) -> typing.Iterator[typing.Tuple[int, ...]]:
        nonlocal number_of_nodes

        if position == source_size:
            yield tuple(images)
            return

        element = order[position]

        for image in candidates:
            number_of_nodes += 1

            if max_nodes is not None and number_of_nodes > max_nodes:
                raise errors.ResourceLimitError("search limit exceeded: max_maps={!r}"
                                                .format(max_nodes))

            images[element] = image

            if all(test(tuple(images[arg] for arg in args)) for args, test
                   in tests_by_position[position]):
                yield from do_search(position + 1)

        images[element] = -1

    return do_search(0)


def _order_by_weight(structure: ValuedStructure) -> typing.List[int]:
    weights = [extrat.ZERO] * structure.get_size()

    for _, args, value in structure.iter_positive_tuples():
        for arg in set(args):
            weights[arg] = weights[arg] + value

    return sorted(range(structure.get_size()), key=lambda element: (weights[element], -element)
                  , reverse=True)


def _order_by_adjacency(size: int, scopes: typing.Iterable[Args]) -> typing.List[int]:
    neighbors: typing.List[typing.Set[int]] = [set() for _ in range(size)]

    for args in scopes:
        for arg in args:
            neighbors[arg].update(args)

    for element in range(size):
        neighbors[element].discard(element)

    order: typing.List[int] = []
    ordered: typing.Set[int] = set()

    while len(order) < size:
        element = max((element for element in range(size) if element not in ordered)
                      , key=lambda element: (len(neighbors[element] & ordered)
                                             , len(neighbors[element]), -element))
        order.append(element)
        ordered.add(element)

    return order


def _make_cost_term(structure: ValuedStructure, symbol_name: str, value: ExtRat
                    ) -> typing.Callable[[Args], ExtRat]:
    table = structure.get_table(symbol_name)
    return lambda images: value * table.entries.get(images, table.default)


def _make_support_term(structure: ValuedStructure, symbol_name: str
                       ) -> typing.Callable[[Args], ExtRat]:
    table = structure.get_table(symbol_name)

    def do(images: Args) -> ExtRat:
        if table.entries.get(images, table.default).is_infinite():
            return extrat.ZERO

        return extrat.INFINITY

    return do


def _make_price_term(prices: Prices, symbol_name: str, value: fractions.Fraction
                     ) -> typing.Callable[[Args], ExtRat]:
    def do(images: Args) -> ExtRat:
        price = prices.get((symbol_name, images), None)

        if price is None or price == 0:
            return extrat.ZERO

        return ExtRat.from_fraction(value * price)

    return do


def _make_test(structure: ValuedStructure, symbol_name: str
               , predicate: typing.Callable[[ExtRat], bool]) -> typing.Callable[[Args], bool]:
    table = structure.get_table(symbol_name)
    return lambda images: predicate(table.entries.get(images, table.default))


def _make_support_constraints(structure1: ValuedStructure, structure2: ValuedStructure
                              ) -> typing.List[Test]:
    return [(args, _make_test(structure2, symbol_name, ExtRat.is_infinite)) for symbol_name, args
            in structure1.iter_infinite_tuples()]


def _count_values(structure: ValuedStructure) -> typing.Counter[typing.Tuple[str, ExtRat]]:
    return collections.Counter((symbol_name, value) for symbol_name, _, value
                               in structure.iter_positive_tuples())


def _make_element_invariants(structure: ValuedStructure
                             ) -> typing.List[typing.Counter[typing.Tuple[str, Args, ExtRat]]]:
    invariants: typing.List[typing.Counter[typing.Tuple[str, Args, ExtRat]]] \
        = [collections.Counter() for _ in range(structure.get_size())]

    for symbol_name, args, value in structure.iter_positive_tuples():
        for element in set(args):
            positions = tuple(i for i, arg in enumerate(args) if arg == element)
            invariants[element][symbol_name, positions, value] += 1

    return invariants
