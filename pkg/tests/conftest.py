from __future__ import annotations

import pytest

from gorenlab.algebra import build_basis, parse_algebra_source

TWOCYCLE_SRC = """\
algebra twocycle over GF(2)
vertices: 1 2 3
arrows: a: 1 -> 2, b: 2 -> 1, c: 3 -> 2
relations: a*b, b*a
"""

DUAL_SRC = """\
algebra dual over GF(2)
vertices: v
arrows: x: v -> v
relations: x*x
"""

NAK4_SRC = """\
algebra nak4 over GF(2)
vertices: v
arrows: x: v -> v
relations: x*x*x*x
"""

SEMI2_SRC = """\
algebra semi2 over GF(2)
vertices: 1 2
"""

A2_SRC = """\
algebra a2 over GF(2)
vertices: 1 2
arrows: a: 1 -> 2
"""


@pytest.fixture(scope="session")
def twocycle():
    return build_basis(parse_algebra_source(TWOCYCLE_SRC))


@pytest.fixture(scope="session")
def dual_numbers():
    return build_basis(parse_algebra_source(DUAL_SRC))


@pytest.fixture(scope="session")
def nakayama4():
    return build_basis(parse_algebra_source(NAK4_SRC))


@pytest.fixture(scope="session")
def semisimple2():
    return build_basis(parse_algebra_source(SEMI2_SRC))


@pytest.fixture(scope="session")
def a2():
    return build_basis(parse_algebra_source(A2_SRC))
