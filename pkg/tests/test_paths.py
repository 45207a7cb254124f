from fractions import Fraction

import pytest

import vcsp
import vcsp_recipes
from vcsp_recipes import paths


def test_psi_out_arcs_sum_to_one():
    for size in (2, 3, 4):
        for cell in paths.iter_cells(size):
            if cell == (size, size):
                continue

            assert sum(vcsp_recipes.psi(size, arc) for arc
                       in paths.iter_out_arcs(size, cell)) == 1


def test_psi_rejects_non_arcs():
    with pytest.raises(vcsp.BadParameterError):
        vcsp_recipes.psi(3, ((1, 1), (2, 2)))


def test_grid_path_ifh():
    distribution = vcsp_recipes.grid_path_ifh(3)
    assert len(distribution.entries) == 6
    assert distribution.get_total_weight() == 1
    assert sorted(weight for _, weight in distribution.entries) \
        == sorted([Fraction(1, 3), Fraction(1, 12), Fraction(1, 12), Fraction(1, 3)
                   , Fraction(1, 12), Fraction(1, 12)])
    assert distribution.entries[0] == (((1, 1), (2, 1), (3, 1), (3, 2), (3, 3)), Fraction(1, 3))


def test_cell_weights_are_uniform_per_diagonal():
    for size in (3, 4):
        cell_weights = paths.get_cell_weights(size)

        for cell, weight in cell_weights.items():
            diagonal = paths.get_diagonal(cell)
            length = min(diagonal, 2 * size - diagonal)
            assert weight == Fraction(1, length)


def test_arc_weights_match_paths():
    distribution = vcsp_recipes.grid_path_ifh(3)
    arc_weights = paths.get_arc_weights(3)

    for arc, weight in arc_weights.items():
        assert weight == sum((path_weight for path, path_weight in distribution.entries
                              if arc in zip(path, path[1:])), Fraction(0))


@pytest.mark.parametrize("size", [2, 3, 4])
def test_psi_in_arcs_sum_per_diagonal(size):
    for cell in paths.iter_cells(size):
        diagonal = paths.get_diagonal(cell)
        total = sum((vcsp_recipes.psi(size, arc) for arc in paths.iter_in_arcs(size, cell))
                    , Fraction(0))

        if diagonal <= size:
            assert total == Fraction(diagonal - 1, diagonal)
        else:
            assert total == Fraction(2 * size - diagonal + 1, 2 * size - diagonal)


@pytest.mark.parametrize("size", [2, 3, 4])
def test_grid_path_ifh_validates(size):
    path_structure = vcsp_recipes.gen_path(size)
    grid_structure = vcsp_recipes.gen_grid(size)
    path_distribution = vcsp_recipes.grid_path_ifh(size)
    assert len(path_distribution.entries) == len(list(paths.iter_paths(size)))
    assert path_distribution.get_total_weight() == 1
    distribution = path_distribution.to_ifh(path_structure, grid_structure)
    assert vcsp.validate_ifh(path_structure, grid_structure, distribution).ok
