import pytest

import vcsp


@pytest.fixture
def b2() -> vcsp.ValuedStructure:
    """Two elements; loops cost 5 and the unary costs are 1 and 2."""
    signature = vcsp.Signature((vcsp.Symbol("f", 2), vcsp.Symbol("mu", 1)))
    entries = [
        ("f", ("x", "x"), vcsp.ExtRat(5)),
        ("f", ("y", "y"), vcsp.ExtRat(5)),
        ("mu", ("x",), vcsp.ONE),
        ("mu", ("y",), vcsp.ExtRat(2)),
    ]
    return vcsp.ValuedStructure.from_entries(signature, ("x", "y"), {}, entries)


@pytest.fixture
def k2() -> vcsp.ValuedStructure:
    """Two-colouring target: only the off-diagonal pairs are free."""
    signature = vcsp.Signature((vcsp.Symbol("f", 2),))
    entries = [("f", ("x", "y"), vcsp.ZERO), ("f", ("y", "x"), vcsp.ZERO)]
    return vcsp.ValuedStructure.from_entries(signature, ("x", "y"), {"f": vcsp.INFINITY}
                                             , entries)
