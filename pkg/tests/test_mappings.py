import itertools

import pytest

import vcsp
import vcsp_recipes
from vcsp import mappings


def test_opt_bruteforce_path_into_b2(b2):
    path_structure = vcsp_recipes.gen_path(3)
    value, mapping = vcsp.opt_bruteforce(path_structure, b2)
    assert value == vcsp.ExtRat(13)
    assert mapping.to_dict() == {"1": "x", "2": "y", "3": "x", "4": "y", "5": "x"}
    assert vcsp.cost(path_structure, b2, mapping) == value


def test_cost_infinite_and_zero_conventions(b2):
    path_structure = vcsp_recipes.gen_path(2)
    mapping = vcsp.Mapping.from_dict(path_structure, b2, {"1": "x", "2": "x", "3": "y"})
    assert vcsp.cost(path_structure, b2, mapping).is_infinite()
    mapping = vcsp.Mapping.from_dict(path_structure, b2, {"1": "y", "2": "x", "3": "y"})
    assert vcsp.cost(path_structure, b2, mapping) == vcsp.ExtRat(1 * 2 + 2 * 1 + 1 * 2)


def test_opt_bruteforce_limit(b2):
    with pytest.raises(vcsp.ResourceLimitError):
        vcsp.opt_bruteforce(vcsp_recipes.gen_path(3), b2, context=vcsp.Context(max_maps=10))


def test_opt_bruteforce_signature_mismatch(b2, k2):
    with pytest.raises(vcsp.SignatureMismatchError):
        vcsp.opt_bruteforce(b2, k2)


def test_mapping_from_dict_errors(b2):
    path_structure = vcsp_recipes.gen_path(2)

    with pytest.raises(vcsp.SchemaError):
        vcsp.Mapping.from_dict(path_structure, b2, {"1": "x", "2": "y"})

    with pytest.raises(vcsp.UnknownElementError):
        vcsp.Mapping.from_dict(path_structure, b2, {"1": "x", "2": "y", "3": "z"})


def test_compose_and_image(b2):
    path_structure = vcsp_recipes.gen_path(2)
    inner = vcsp.Mapping.from_dict(path_structure, path_structure
                                   , {"1": "1", "2": "2", "3": "1"})
    outer = vcsp.Mapping.from_dict(path_structure, b2, {"1": "y", "2": "x", "3": "x"})
    composite = vcsp.compose(outer, inner)
    assert composite.to_dict() == {"1": "y", "2": "x", "3": "y"}
    assert vcsp.image_of(inner) == frozenset([0, 1])
    assert not vcsp.is_surjective(inner)
    assert vcsp.is_surjective(vcsp.identity(path_structure))


def test_enumerate_finite_support():
    path_structure = vcsp_recipes.gen_path(3)
    grid_structure = vcsp_recipes.gen_grid(3)
    support_mappings = vcsp.enumerate_finite_support(path_structure, grid_structure)
    assert len(support_mappings) == 6
    assert support_mappings == sorted(support_mappings, key=lambda mapping: mapping.images)

    for mapping in support_mappings:
        assert vcsp.is_finite_support(path_structure, grid_structure, mapping)
        assert mapping.get_image("1") == "1,1"
        assert mapping.get_image("5") == "3,3"

    with pytest.raises(vcsp.ResourceLimitError):
        vcsp.enumerate_finite_support(path_structure, grid_structure
                                      , context=vcsp.Context(max_columns=5))


def test_find_finite_mapping(b2, k2):
    path_structure = vcsp_recipes.gen_path(3)
    mapping = vcsp.find_finite_mapping(path_structure, b2)
    assert mapping is not None
    assert vcsp.cost(path_structure, b2, mapping).is_finite()
    assert vcsp.find_finite_mapping(vcsp_recipes.gen_crisp_clique(3), k2) is None
    assert vcsp.find_finite_mapping(vcsp_recipes.gen_crisp_clique(2), k2) is not None


def test_cheapest_finite_support():
    path_structure = vcsp_recipes.gen_path(3)
    grid_structure = vcsp_recipes.gen_grid(3)
    # every path crosses the middle diagonal once
    prices = {("mu", (grid_structure.get_index("3,1"),)): 1
              , ("mu", (grid_structure.get_index("2,2"),)): 1}
    result = vcsp.cheapest_finite_support(path_structure, grid_structure, prices)
    assert result is not None
    price, mapping = result
    assert price == 0
    assert mapping.get_image("3") == "1,3"


def test_valued_isomorphic(b2):
    swapped_structure = vcsp.ValuedStructure.from_entries(
        b2.get_signature(), ("p", "q"), {}
        , [("f", ("p", "p"), vcsp.ExtRat(5)), ("f", ("q", "q"), vcsp.ExtRat(5))
           , ("mu", ("p",), vcsp.ExtRat(2)), ("mu", ("q",), vcsp.ONE)])
    mapping = vcsp.valued_isomorphic(b2, swapped_structure)
    assert mapping is not None
    assert mapping.to_dict() == {"x": "q", "y": "p"}
    other_structure = vcsp.restrict(b2, ["x"])
    assert vcsp.valued_isomorphic(b2, other_structure) is None


def test_mapping_apply():
    mapping = mappings.Mapping(("a", "b"), ("u", "v", "w"), (2, 0))
    assert mapping.apply((1, 0, 1)) == (0, 2, 0)


def test_find_finite_mapping_limit(k2):
    clique_structure = vcsp_recipes.gen_crisp_clique(3)

    with pytest.raises(vcsp.ResourceLimitError):
        vcsp.find_finite_mapping(clique_structure, k2, context=vcsp.Context(max_maps=3))

    assert vcsp.find_finite_mapping(clique_structure, k2, context=vcsp.Context(max_maps=10)) \
        is None


def test_opt_bruteforce_breaks_ties_lexicographically(k2):
    palette = (vcsp.ZERO, vcsp.ONE)

    for seed in range(20):
        structure1 = vcsp_recipes.gen_random(seed, 2 + seed % 2, palette=palette)
        structure2 = vcsp_recipes.gen_random(seed + 500, 3, palette=palette)
        costs = {}

        for images in itertools.product(range(structure2.get_size())
                                        , repeat=structure1.get_size()):
            mapping = vcsp.Mapping(structure1.get_universe(), structure2.get_universe(), images)
            costs[images] = vcsp.cost(structure1, structure2, mapping)

        optimum = min(costs.values())
        value, mapping = vcsp.opt_bruteforce(structure1, structure2)
        assert value == optimum
        assert mapping.images == min(images for images, cost in costs.items()
                                     if cost == optimum)

    value, mapping = vcsp.opt_bruteforce(vcsp_recipes.gen_crisp_clique(3), k2)
    assert value.is_infinite()
    assert mapping.images == (0, 0, 0)
