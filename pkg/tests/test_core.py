from fractions import Fraction
import random

import pytest

import vcsp
import vcsp_recipes


def test_is_core():
    assert vcsp.is_core(vcsp_recipes.gen_path(3))
    assert vcsp.is_core(vcsp_recipes.gen_crisp_clique(3))
    assert vcsp.is_core(vcsp_recipes.gen_two_triangles())
    assert not vcsp.is_core(vcsp_recipes.gen_grid(3))


def test_is_core_witness():
    grid_structure = vcsp_recipes.gen_grid(3)
    witness = vcsp.is_core_witness(grid_structure)
    assert witness is not None
    assert not vcsp.is_surjective(witness)
    assert vcsp.is_finite_support(grid_structure, grid_structure, witness)
    assert vcsp.is_core_witness(vcsp_recipes.gen_path(3)) is None


def test_compute_core_of_grid():
    grid_structure = vcsp_recipes.gen_grid(3)
    core_result = vcsp.compute_core(grid_structure)
    assert core_result.core.get_size() == 5
    assert vcsp.valued_isomorphic(core_result.core, vcsp_recipes.gen_path(3)) is not None
    assert vcsp.image_of(core_result.collapse) \
        == frozenset(grid_structure.get_index(element) for element
                     in core_result.core.get_universe())
    assert vcsp.equivalent(grid_structure, core_result.core)


def test_compute_core_of_core_is_identity():
    path_structure = vcsp_recipes.gen_path(3)
    core_result = vcsp.compute_core(path_structure)
    assert core_result.collapse == vcsp.identity(path_structure)
    assert core_result.core.has_same_values(path_structure)


def test_compute_core_without_finite_tuples():
    signature = vcsp.Signature((vcsp.Symbol("mu", 1),))
    structure = vcsp.ValuedStructure.from_entries(signature, ("a", "b", "c")
                                                  , {"mu": vcsp.INFINITY}, [])
    core_result = vcsp.compute_core(structure)
    assert core_result.core.get_universe() == ("a",)
    assert core_result.core.lookup("mu", ["a"]).is_infinite()
    assert not vcsp.is_core(structure)


def test_image_structure_sums_values():
    signature = vcsp.Signature((vcsp.Symbol("mu", 1), vcsp.Symbol("f", 2)))
    structure = vcsp.ValuedStructure.from_entries(
        signature, ("a", "b"), {}
        , [("mu", ("a",), vcsp.ExtRat(2)), ("mu", ("b",), vcsp.ExtRat(3))
           , ("f", ("a", "b"), vcsp.INFINITY), ("f", ("b", "a"), vcsp.INFINITY)])
    mapping = vcsp.Mapping.from_dict(structure, structure, {"a": "a", "b": "a"})
    image = vcsp.image_structure(structure, mapping)
    assert image.get_universe() == ("a",)
    assert image.lookup("mu", ["a"]) == vcsp.ExtRat(5)
    assert image.lookup("f", ["a", "a"]).is_infinite()


def test_reduction_step_keeps_optimum(b2):
    grid_structure = vcsp_recipes.gen_grid(3)
    mapping = vcsp.reduction_step(grid_structure, vcsp.identity(grid_structure))
    assert mapping is not None
    value, best_mapping = vcsp.opt_bruteforce(grid_structure, b2)
    assert vcsp.cost(grid_structure, b2, vcsp.compose(best_mapping, mapping)) == value
    assert vcsp.equivalent(grid_structure, vcsp.image_structure(grid_structure, mapping))


@pytest.mark.parametrize("structure", [
    vcsp_recipes.gen_crisp_clique(3),
    vcsp_recipes.gen_path(2),
    vcsp_recipes.gen_path(3),
])
def test_core_weighting(structure):
    weighting = vcsp.core_weighting(structure)
    assert all(weight > 0 for weight in weighting.weights.values())

    for symbol_name, args in structure.iter_infinite_tuples():
        assert weighting.get_weight(symbol_name, args) == 0

    assert vcsp.validate_core_weighting(structure, weighting)


def test_core_weighting_of_non_core():
    with pytest.raises(vcsp.NotACoreError):
        vcsp.core_weighting(vcsp_recipes.gen_grid(3))


def test_validate_core_weighting_rejects():
    path_structure = vcsp_recipes.gen_path(2)
    assert not vcsp.validate_core_weighting(path_structure, vcsp.CoreWeighting({}))
    weights = {("f", (0, 1)): Fraction(1)}
    assert not vcsp.validate_core_weighting(path_structure, vcsp.CoreWeighting(weights))
    clique_structure = vcsp_recipes.gen_crisp_clique(3)
    weights = {(symbol_name, args): Fraction(1) for symbol_name, args, _
               in clique_structure.iter_finite_tuples()}
    assert vcsp.validate_core_weighting(clique_structure, vcsp.CoreWeighting(weights))


def test_core_treewidth_decide():
    assert vcsp.core_treewidth_decide(vcsp_recipes.gen_grid(3), 1) == (True, 1)
    assert vcsp.core_treewidth_decide(vcsp_recipes.gen_crisp_clique(3), 1) == (False, 2)


@pytest.mark.parametrize("size", [2, 3])
def test_core_of_grid_is_path(size):
    core = vcsp.compute_core(vcsp_recipes.gen_grid(size)).core
    assert vcsp.valued_isomorphic(core, vcsp_recipes.gen_path(size)) is not None


@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_paths_are_cores(size):
    assert vcsp.is_core(vcsp_recipes.gen_path(size))


def _make_random_structure(seed):
    return vcsp_recipes.gen_random(seed, 2 + seed % 4
                                   , palette=(vcsp.ZERO, vcsp.ONE, vcsp.INFINITY, vcsp.INFINITY))


def _relabel(structure, seed):
    universe = list(structure.get_universe())
    random.Random(seed).shuffle(universe)
    entries = [(symbol_name, tuple(structure.get_universe()[arg] for arg in args), value)
               for symbol_name, args, value in structure.iter_positive_tuples()]
    return vcsp.ValuedStructure.from_entries(structure.get_signature(), universe, {}, entries)


def test_compute_core_is_idempotent():
    for seed in range(20):
        core = vcsp.compute_core(_make_random_structure(seed)).core
        core_result = vcsp.compute_core(core)
        assert core_result.collapse == vcsp.identity(core)
        assert core_result.core.has_same_values(core)
        assert vcsp.is_core(core)


def test_core_treewidth_is_at_most_treewidth():
    for seed in range(50):
        structure = _make_random_structure(seed)
        core = vcsp.compute_core(structure).core
        treewidth, _ = vcsp.treewidth(vcsp.gaifman(vcsp.pos(structure)))
        core_treewidth, _ = vcsp.treewidth(vcsp.gaifman(vcsp.pos(core)))
        assert core_treewidth <= treewidth
        assert vcsp.core_treewidth_decide(structure, core_treewidth) == (True, core_treewidth)


def test_equivalent_structures_have_isomorphic_cores():
    pairs = [(vcsp_recipes.gen_grid(3), vcsp_recipes.gen_path(3))
             , (vcsp_recipes.gen_grid(2), vcsp_recipes.gen_path(2))]

    for seed in range(15):
        structure = _make_random_structure(seed)
        pairs.append((structure, _relabel(structure, seed)))

    for seed in range(30):
        pairs.append((vcsp_recipes.gen_random(seed, 2, palette=(vcsp.ZERO, vcsp.INFINITY))
                      , vcsp_recipes.gen_random(seed + 1000, 3
                                                , palette=(vcsp.ZERO, vcsp.INFINITY))))

    number_of_equivalent_pairs = 0

    for structure1, structure2 in pairs:
        if not vcsp.equivalent(structure1, structure2):
            continue

        number_of_equivalent_pairs += 1
        core1 = vcsp.compute_core(structure1).core
        core2 = vcsp.compute_core(structure2).core
        assert vcsp.valued_isomorphic(core1, core2) is not None

    assert number_of_equivalent_pairs >= 17
