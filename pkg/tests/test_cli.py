import json

import pytest

import vcsp
import vcsp_recipes
from vcsp import cli


@pytest.fixture
def write_structure(tmp_path):
    def do(name, structure):
        file_name = tmp_path / name
        file_name.write_bytes(vcsp.serialize_structure(structure))
        return str(file_name)

    return do


def _run(capsys, *argv):
    exit_status = cli.main(list(argv))
    captured = capsys.readouterr()

    if exit_status == 0 and captured.out.strip() != "":
        return exit_status, json.loads(captured.out)

    return exit_status, captured.err


def test_opt(capsys, write_structure, b2):
    path_file_name = write_structure("path.json", vcsp_recipes.gen_path(3))
    b2_file_name = write_structure("b2.json", b2)
    exit_status, result = _run(capsys, "opt", path_file_name, b2_file_name)
    assert exit_status == 0
    assert result == {"opt": "13", "map": {"1": "x", "2": "y", "3": "x", "4": "y", "5": "x"}}


def test_sa(capsys, write_structure, b2, tmp_path):
    path_file_name = write_structure("path.json", vcsp_recipes.gen_path(3))
    b2_file_name = write_structure("b2.json", b2)
    lp_file_name = str(tmp_path / "sa.lp")
    exit_status, result = _run(capsys, "sa", path_file_name, b2_file_name, "--level", "1"
                               , "--bruteforce", "--dump-lp", lp_file_name)
    assert exit_status == 0
    assert result == {"opt_k": "13", "tight_vs_bruteforce": True}

    with open(lp_file_name) as f:
        assert "Minimize" in f.read()


def test_improves_and_equiv(capsys, write_structure, tmp_path):
    path_file_name = write_structure("path.json", vcsp_recipes.gen_path(3))
    grid_file_name = write_structure("grid.json", vcsp_recipes.gen_grid(3))
    exit_status, result = _run(capsys, "improves", path_file_name, grid_file_name)
    assert exit_status == 0
    assert result["answer"] is True
    witness_file_name = str(tmp_path / "witness.json")

    with open(witness_file_name, "w") as f:
        json.dump(result, f)

    exit_status, result = _run(capsys, "validate-ifh", path_file_name, grid_file_name
                               , witness_file_name)
    assert exit_status == 0
    assert result == {"answer": True, "violation": None}
    exit_status, result = _run(capsys, "equiv", path_file_name, grid_file_name)
    assert exit_status == 0
    assert result["answer"] is True
    assert result["witness_backward"] is not None


def test_core_commands(capsys, write_structure, tmp_path):
    grid_file_name = write_structure("grid.json", vcsp_recipes.gen_grid(3))
    exit_status, result = _run(capsys, "is-core", grid_file_name)
    assert exit_status == 0
    assert result["answer"] is False
    assert len(set(result["witness"].values())) < 9
    core_file_name = str(tmp_path / "core.json")
    exit_status, result = _run(capsys, "core", grid_file_name, "-o", core_file_name)
    assert exit_status == 0
    assert result["core_size"] == 5

    with open(core_file_name, "rb") as f:
        assert vcsp.parse_structure(f.read()).get_size() == 5

    exit_status, result = _run(capsys, "core-weighting", grid_file_name)
    assert exit_status == 4
    assert "NotACoreError" in result
    clique_file_name = write_structure("clique.json", vcsp_recipes.gen_crisp_clique(3))
    exit_status, result = _run(capsys, "core-weighting", clique_file_name)
    assert exit_status == 0
    assert result["valid"] is True


def test_width_commands(capsys, write_structure, tmp_path):
    grid_file_name = write_structure("grid.json", vcsp_recipes.gen_grid(3))
    exit_status, result = _run(capsys, "width", grid_file_name, "--measure", "tw")
    assert exit_status == 0
    assert result["width"] == 3
    exit_status, result = _run(capsys, "width", grid_file_name)
    assert result["measure"] == "twms"
    assert result["width"] == 3
    decomposition_file_name = str(tmp_path / "decomposition.json")

    with open(decomposition_file_name, "w") as f:
        json.dump(result, f)

    exit_status, result = _run(capsys, "validate-decomp", grid_file_name
                               , decomposition_file_name)
    assert exit_status == 0
    assert result["answer"] is True
    assert result["twms"] == 3
    triangles_file_name = write_structure("triangles.json", vcsp_recipes.gen_two_triangles())
    exit_status, result = _run(capsys, "overlap", triangles_file_name)
    assert result == {"overlap": 2, "pair": [{"symbol": "q", "args": ["a", "b", "c"]}
                                             , {"symbol": "q", "args": ["b", "c", "d"]}]}
    exit_status, result = _run(capsys, "core-width", grid_file_name, "--max-width", "1")
    assert result == {"answer": True, "treewidth": 1}


def test_sa_tight(capsys, write_structure):
    clique_file_name = write_structure("clique.json", vcsp_recipes.gen_crisp_clique(3))
    exit_status, result = _run(capsys, "sa-tight", clique_file_name, "--level", "2")
    assert exit_status == 0
    assert result["answer"] is False
    assert result["twms"] == 2
    exit_status, result = _run(capsys, "sa-tight", clique_file_name, "--level", "3")
    assert result["answer"] is True


def test_gap_and_gen(capsys, write_structure, tmp_path):
    clique_file_name = str(tmp_path / "clique.json")
    exit_status, _ = _run(capsys, "gen", "clique", "--n", "3", "-o", clique_file_name)
    assert exit_status == 0
    gadget_file_name = str(tmp_path / "gadget.json")
    exit_status, _ = _run(capsys, "gap", clique_file_name, "--kind", "treewidth", "--level", "1"
                          , "-o", gadget_file_name)
    assert exit_status == 0

    with open(gadget_file_name, "rb") as f:
        assert vcsp.parse_structure(f.read()).get_size() == 6

    exit_status, result = _run(capsys, "gen", "diag", "--n", "3")
    assert exit_status == 2
    assert "BadParameterError" in result
    exit_status, result = _run(capsys, "gap", clique_file_name, "--kind", "overlap", "--level"
                               , "1")
    assert exit_status == 3


def test_search(capsys, write_structure, b2):
    path_file_name = write_structure("path.json", vcsp_recipes.gen_path(3))
    b2_file_name = write_structure("b2.json", b2)
    exit_status, result = _run(capsys, "search", path_file_name, b2_file_name)
    assert exit_status == 0
    assert result["cost"] == "13"
    assert result["infinite"] is False


def test_errors(capsys, write_structure, b2, k2, tmp_path):
    b2_file_name = write_structure("b2.json", b2)
    exit_status, result = _run(capsys, "opt", str(tmp_path / "missing.json"), b2_file_name)
    assert exit_status == 2
    assert "UnreadableInputError" in result
    k2_file_name = write_structure("k2.json", k2)
    exit_status, result = _run(capsys, "opt", b2_file_name, k2_file_name)
    assert exit_status == 2
    assert "SignatureMismatchError" in result
    broken_file_name = tmp_path / "broken.json"
    broken_file_name.write_text("{\"universe\": []}")
    exit_status, _ = _run(capsys, "is-core", str(broken_file_name))
    assert exit_status == 2
    path_file_name = write_structure("path.json", vcsp_recipes.gen_path(3))
    exit_status, _ = _run(capsys, "opt", path_file_name, b2_file_name, "--max-maps", "10")
    assert exit_status == 3
    clique_file_name = write_structure("clique.json", vcsp_recipes.gen_crisp_clique(3))
    exit_status, _ = _run(capsys, "search", clique_file_name, clique_file_name, "--level", "1")
    assert exit_status == 4


def test_unwritable_output(capsys, write_structure, b2, tmp_path):
    output_file_name = str(tmp_path / "missing" / "path.json")
    exit_status, result = _run(capsys, "gen", "path", "--n", "2", "-o", output_file_name)
    assert exit_status == 2
    assert "UnwritableOutputError" in result
    path_file_name = write_structure("path.json", vcsp_recipes.gen_path(2))
    b2_file_name = write_structure("b2.json", b2)
    exit_status, result = _run(capsys, "sa", path_file_name, b2_file_name, "--level", "1"
                               , "--dump-lp", str(tmp_path / "missing" / "sa.lp"))
    assert exit_status == 2
    assert "UnwritableOutputError" in result
