import pytest

import vcsp
import vcsp_recipes


def test_treewidth_gadget_of_clique():
    clique_structure = vcsp_recipes.gen_crisp_clique(3)
    gadget = vcsp_recipes.gap_instance_treewidth(clique_structure, 1)
    assert gadget.structure.get_size() == 6
    assert gadget.params.base == "1"
    assert gadget.params.get_penalty() == vcsp.ONE
    assert set(gadget.params.projection.values()) == {"1", "2", "3"}
    value, _ = vcsp.opt_k(clique_structure, gadget.structure, 1)
    assert value == vcsp.ZERO
    optimum, _ = vcsp.opt_bruteforce(clique_structure, gadget.structure)
    assert optimum.is_infinite()


def test_treewidth_gadget_of_diag_grid():
    structure = vcsp_recipes.gen_diag_grid(3, 10)
    gadget = vcsp_recipes.gap_instance_treewidth(structure, 2)
    assert gadget.structure.get_size() == 32
    assert gadget.params.base == "1,1"
    assert gadget.params.delta == vcsp.ONE
    assert gadget.params.get_penalty() == vcsp.ExtRat.from_fraction(
        1 + gadget.params.total_weight)


def test_treewidth_gadget_preconditions():
    with pytest.raises(vcsp.PreconditionFailedError):
        vcsp_recipes.gap_instance_treewidth(vcsp_recipes.gen_grid(3), 1)

    with pytest.raises(vcsp.PreconditionFailedError):
        vcsp_recipes.gap_instance_treewidth(vcsp_recipes.gen_crisp_clique(3), 3)

    with pytest.raises(vcsp.BadParameterError):
        vcsp_recipes.gap_instance_treewidth(vcsp_recipes.gen_crisp_clique(3), 0)

    with pytest.raises(vcsp.ResourceLimitError):
        vcsp_recipes.gap_instance_treewidth(vcsp_recipes.gen_crisp_clique(3), 1
                                            , context=vcsp.Context(max_gadget_elements=5))


def test_overlap_gadget_of_two_triangles():
    structure = vcsp_recipes.gen_two_triangles()
    gadget = vcsp_recipes.gap_instance_overlap(structure, 1)
    assert gadget.structure.get_size() == 16
    assert len(gadget.params.pairs) == 2
    assert gadget.params.overlap_pair == (("q", (0, 1, 2)), ("q", (1, 2, 3)))
    assert gadget.params.index_sets == ((1, 2), (0, 1))
    value, _ = vcsp.opt_k(structure, gadget.structure, 1)
    assert value == vcsp.ZERO
    optimum, _ = vcsp.opt_bruteforce(structure, gadget.structure)
    assert optimum.is_infinite()


def test_overlap_gadget_preconditions():
    with pytest.raises(vcsp.PreconditionFailedError):
        vcsp_recipes.gap_instance_overlap(vcsp_recipes.gen_path(3), 1)

    with pytest.raises(vcsp.PreconditionFailedError):
        vcsp_recipes.gap_instance_overlap(vcsp_recipes.gen_two_triangles(), 2)

    with pytest.raises(vcsp.ResourceLimitError):
        vcsp_recipes.gap_instance_overlap(vcsp_recipes.gen_crisp_clique(3), 1)
