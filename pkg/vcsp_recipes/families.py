import itertools
import random
import typing

import vcsp

from . import paths


ExtRat = vcsp.ExtRat
Entry = typing.Tuple[str, typing.Tuple[str, ...], ExtRat]


def gen_grid(size: int) -> vcsp.ValuedStructure:
    _check_size(size)
    entries = [(_ARC_SYMBOL_NAME, (paths.get_cell_name(cell1), paths.get_cell_name(cell2))
                , vcsp.INFINITY) for cell1, cell2 in paths.iter_arcs(size)]
    return _make_grid_structure(size, {}, entries)


def gen_path(size: int) -> vcsp.ValuedStructure:
    _check_size(size)
    length = 2 * size - 1
    universe = [str(element) for element in range(1, length + 1)]
    entries: typing.List[Entry] = []

    for element in range(1, length):
        entries.append((_ARC_SYMBOL_NAME, (str(element), str(element + 1)), vcsp.INFINITY))

    for element in range(1, length + 1):
        entries.append((_UNARY_SYMBOL_NAME, (str(element),)
                        , ExtRat(min(element, 2 * size - element))))

    return vcsp.ValuedStructure.from_entries(_GRID_SIGNATURE, universe, {}, entries)


def gen_diag_grid(size: int, big_number: int) -> vcsp.ValuedStructure:
    _check_diag_grid(size, big_number)
    unary_values = {cell: 1 for cell in paths.iter_cells(size)}

    for diagonal, values in _make_diagonal_values(size, big_number).items():
        for cell, value in zip(_enumerate_diagonal(diagonal), values):
            unary_values[cell] = value

    entries = [(_ARC_SYMBOL_NAME, (paths.get_cell_name(cell1), paths.get_cell_name(cell2))
                , vcsp.INFINITY) for cell1, cell2 in paths.iter_arcs(size)]
    return _make_grid_structure(size, unary_values, entries)


def gen_finite_variants(kind: str, size: int, big_number: typing.Optional[int]=None
                        ) -> typing.Tuple[vcsp.ValuedStructure, ...]:
    if kind == "diag":
        if big_number is None:
            raise vcsp.BadParameterError("missing big number: kind={!r}".format(kind))

        structure = gen_diag_grid(size, big_number)
        table = structure.get_table(_ARC_SYMBOL_NAME)
        entries = {args: vcsp.ONE for args in table.entries.keys()}
        tables = {_ARC_SYMBOL_NAME: vcsp.Table(table.default, entries)
                  , _UNARY_SYMBOL_NAME: structure.get_table(_UNARY_SYMBOL_NAME)}
        return vcsp.ValuedStructure(_GRID_SIGNATURE, structure.get_universe(), tables),

    if kind == "grid-pair":
        _check_size(size)
        grid_entries = [(_ARC_SYMBOL_NAME, (paths.get_cell_name(cell1)
                                            , paths.get_cell_name(cell2))
                         , ExtRat.from_fraction(weight)) for (cell1, cell2), weight
                        in paths.get_arc_weights(size).items()]
        grid_structure = _make_grid_structure(size, {}, grid_entries)
        path_structure = gen_path(size)
        table = path_structure.get_table(_ARC_SYMBOL_NAME)
        entries = {args: vcsp.ONE for args in table.entries.keys()}
        tables = {_ARC_SYMBOL_NAME: vcsp.Table(table.default, entries)
                  , _UNARY_SYMBOL_NAME: path_structure.get_table(_UNARY_SYMBOL_NAME)}
        path_structure = vcsp.ValuedStructure(_GRID_SIGNATURE, path_structure.get_universe()
                                              , tables)
        return grid_structure, path_structure

    raise vcsp.BadParameterError("unknown kind: kind={!r}".format(kind))


def gen_crisp_clique(size: int) -> vcsp.ValuedStructure:
    if size < 2:
        raise vcsp.BadParameterError("clique below two: size={!r}".format(size))

    universe = [str(element) for element in range(1, size + 1)]
    entries = [(_ARC_SYMBOL_NAME, (element1, element2), vcsp.INFINITY) for element1
               in universe for element2 in universe if element1 != element2]
    signature = vcsp.Signature((vcsp.Symbol(_ARC_SYMBOL_NAME, 2),))
    return vcsp.ValuedStructure.from_entries(signature, universe, {}, entries)


def gen_two_triangles() -> vcsp.ValuedStructure:
    signature = vcsp.Signature((vcsp.Symbol(_TRIANGLE_SYMBOL_NAME, 3),))
    entries = [(_TRIANGLE_SYMBOL_NAME, ("a", "b", "c"), vcsp.INFINITY)
               , (_TRIANGLE_SYMBOL_NAME, ("b", "c", "d"), vcsp.INFINITY)]
    return vcsp.ValuedStructure.from_entries(signature, ("a", "b", "c", "d"), {}, entries)


def gen_random(seed: int, size: int
               , arities: typing.Sequence[typing.Tuple[str, int]]=(("f", 2), ("mu", 1))
               , palette: typing.Optional[typing.Sequence[ExtRat]]=None
               ) -> vcsp.ValuedStructure:
    _check_size(size)

    if palette is None:
        palette = _DEFAULT_PALETTE

    if len(palette) == 0:
        raise vcsp.BadParameterError("empty palette")

    random_ = random.Random(seed)
    signature = vcsp.Signature(vcsp.Symbol(symbol_name, arity) for symbol_name, arity
                               in arities)
    universe = ["v{}".format(element) for element in range(size)]
    tables = {}

    for symbol in signature.get_symbols():
        entries = {}

        for args in itertools.product(range(size), repeat=symbol.arity):
            entries[args] = random_.choice(palette)

        tables[symbol.name] = vcsp.Table(vcsp.ZERO, entries)

    return vcsp.ValuedStructure(signature, universe, tables)


def _make_grid_structure(size: int, unary_values: typing.Mapping[paths.Cell, int]
                         , entries: typing.List[Entry]) -> vcsp.ValuedStructure:
    universe = [paths.get_cell_name(cell) for cell in paths.iter_cells(size)]
    entries = entries + [(_UNARY_SYMBOL_NAME, (paths.get_cell_name(cell),), ExtRat(value))
                         for cell, value in unary_values.items() if value != 1]
    return vcsp.ValuedStructure.from_entries(_GRID_SIGNATURE, universe
                                             , {_UNARY_SYMBOL_NAME: vcsp.ONE}, entries)


def _make_diagonal_values(size: int, big_number: int) -> typing.Dict[int, typing.List[int]]:
    diagonal_2_values = {
        1: [1],
        2: [big_number, 1],
        3: [big_number ** 3, big_number ** 2, big_number ** 4],
    }

    for diagonal in range(4, size + 1):
        diagonal_2_values[diagonal] = [big_number] + [1] * (diagonal - 2) + [big_number]

    return diagonal_2_values


def _enumerate_diagonal(diagonal: int) -> typing.List[paths.Cell]:
    return [(diagonal - offset, 1 + offset) for offset in range(diagonal)]


def _check_size(size: int) -> None:
    if size < 1:
        raise vcsp.BadParameterError("size below one: size={!r}".format(size))


def _check_diag_grid(size: int, big_number: int) -> None:
    if size < 3:
        raise vcsp.BadParameterError("diagonal grid below three: size={!r}".format(size))

    if big_number <= size * size:
        raise vcsp.BadParameterError("big number too small: size={!r} big_number={!r}"
                                     .format(size, big_number))


_ARC_SYMBOL_NAME = "f"
_UNARY_SYMBOL_NAME = "mu"
_TRIANGLE_SYMBOL_NAME = "q"

_GRID_SIGNATURE = vcsp.Signature((vcsp.Symbol(_ARC_SYMBOL_NAME, 2)
                                  , vcsp.Symbol(_UNARY_SYMBOL_NAME, 1)))
_DEFAULT_PALETTE = vcsp.ZERO, vcsp.ONE, ExtRat(2), vcsp.INFINITY
