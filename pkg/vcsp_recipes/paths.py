import fractions
import typing

import vcsp


Fraction = fractions.Fraction
Cell = typing.Tuple[int, int]
Arc = typing.Tuple[Cell, Cell]
Path = typing.Tuple[Cell, ...]


class PathDistribution(typing.NamedTuple):
    size: int
    entries: typing.Tuple[typing.Tuple[Path, Fraction], ...]

    def get_total_weight(self) -> Fraction:
        return sum((weight for _, weight in self.entries), Fraction(0))

    def to_ifh(self, path_structure: vcsp.ValuedStructure, grid_structure: vcsp.ValuedStructure
               ) -> vcsp.IfhDistribution:
        entries = []

        for path, weight in self.entries:
            element_2_image = {element: get_cell_name(cell) for element, cell
                               in zip(path_structure.get_universe(), path)}
            mapping = vcsp.Mapping.from_dict(path_structure, grid_structure, element_2_image)
            entries.append((mapping, weight))

        return vcsp.IfhDistribution(tuple(entries))


def get_cell_name(cell: Cell) -> str:
    return "{},{}".format(*cell)


def get_diagonal(cell: Cell) -> int:
    i, j = cell
    return i + j - 1


def psi(size: int, arc: Arc) -> Fraction:
    (i, j), (i2, j2) = arc

    if not _is_arc(size, arc):
        raise vcsp.BadParameterError("not an arc: size={!r} arc={!r}".format(size, arc))

    if get_diagonal((i2, j2)) <= size:
        if i2 == i:
            return Fraction(j, i + j)
        else:
            return Fraction(i, i + j)
    else:
        if i2 == i:
            return Fraction(size - j2 + 1, 2 * size - i2 - j2 + 1)
        else:
            return Fraction(size - i2 + 1, 2 * size - i2 - j2 + 1)


def iter_out_arcs(size: int, cell: Cell) -> typing.Iterator[Arc]:
    i, j = cell

    if i < size:
        yield cell, (i + 1, j)

    if j < size:
        yield cell, (i, j + 1)


def iter_in_arcs(size: int, cell: Cell) -> typing.Iterator[Arc]:
    i, j = cell

    if i > 1:
        yield (i - 1, j), cell

    if j > 1:
        yield (i, j - 1), cell


def iter_arcs(size: int) -> typing.Iterator[Arc]:
    for cell in iter_cells(size):
        yield from iter_out_arcs(size, cell)


def iter_cells(size: int) -> typing.Iterator[Cell]:
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            yield i, j


def iter_paths(size: int) -> typing.Iterator[Path]:
    def do(path: typing.List[Cell]) -> typing.Iterator[Path]:
        if path[-1] == (size, size):
            yield tuple(path)
            return

        for _, next_cell in iter_out_arcs(size, path[-1]):
            path.append(next_cell)
            yield from do(path)
            path.pop()

    return do([(1, 1)])


def get_path_weight(size: int, path: Path) -> Fraction:
    weight = Fraction(1)

    for arc in zip(path, path[1:]):
        weight *= psi(size, arc)

    return weight


def grid_path_ifh(size: int) -> PathDistribution:
    _check_size(size)
    entries = tuple((path, get_path_weight(size, path)) for path in iter_paths(size))
    return PathDistribution(size, entries)


def get_arc_weights(size: int) -> typing.Dict[Arc, Fraction]:
    _check_size(size)
    forward_sums, backward_sums = _make_path_sums(size)
    return {arc: forward_sums[arc[0]] * psi(size, arc) * backward_sums[arc[1]] for arc
            in iter_arcs(size)}


def get_cell_weights(size: int) -> typing.Dict[Cell, Fraction]:
    _check_size(size)
    forward_sums, backward_sums = _make_path_sums(size)
    return {cell: forward_sums[cell] * backward_sums[cell] for cell in iter_cells(size)}


def _make_path_sums(size: int) -> typing.Tuple[typing.Dict[Cell, Fraction]
                                               , typing.Dict[Cell, Fraction]]:
    cells = sorted(iter_cells(size), key=get_diagonal)
    forward_sums = {}

    for cell in cells:
        if cell == (1, 1):
            forward_sums[cell] = Fraction(1)
        else:
            forward_sums[cell] = sum((forward_sums[arc[0]] * psi(size, arc) for arc
                                      in iter_in_arcs(size, cell)), Fraction(0))

    backward_sums = {}

    for cell in reversed(cells):
        if cell == (size, size):
            backward_sums[cell] = Fraction(1)
        else:
            backward_sums[cell] = sum((psi(size, arc) * backward_sums[arc[1]] for arc
                                       in iter_out_arcs(size, cell)), Fraction(0))

    return forward_sums, backward_sums


def _is_arc(size: int, arc: Arc) -> bool:
    (i, j), (i2, j2) = arc

    if not all(1 <= coordinate <= size for coordinate in (i, j, i2, j2)):
        return False

    return (i2, j2) in ((i + 1, j), (i, j + 1))


def _check_size(size: int) -> None:
    if size < 1:
        raise vcsp.BadParameterError("size below one: size={!r}".format(size))
