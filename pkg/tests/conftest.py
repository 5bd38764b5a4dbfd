import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from fanoperiods import DifferentialOperator, LatticePolytope, LaurentPolynomial


@pytest.fixture
def ex1_poly():
    """x + y + 1/(xy), the two-variable mirror of the projective plane."""
    return LaurentPolynomial(2, {(1, 0): 1, (0, 1): 1, (-1, -1): 1})


@pytest.fixture
def ex2_poly():
    """x + xy + y + 1/(xy), the mirror of the first Hirzebruch surface."""
    return LaurentPolynomial(2, {(1, 0): 1, (1, 1): 1, (0, 1): 1, (-1, -1): 1})


@pytest.fixture
def ex4_poly():
    """x + y + 1/x + 1/y + 1/(xy), the degree-7 del Pezzo mirror."""
    return LaurentPolynomial(
        2, {(1, 0): 1, (0, 1): 1, (-1, 0): 1, (0, -1): 1, (-1, -1): 1}
    )


@pytest.fixture
def ex6_poly():
    """The Hodge-Tate puzzle-piece polynomial (not a Minkowski one)."""
    return LaurentPolynomial(
        3,
        {
            (1, 0, 0): 1,
            (0, 1, 0): 1,
            (0, 0, 1): 1,
            (-4, -2, -1): 1,
            (-2, -1, 0): 2,
            (-1, 0, 0): 4,
        },
    )


@pytest.fixture
def p519664():
    return LatticePolytope(
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-2, 0, -1), (-3, -1, -1), (-1, -1, 1)],
        id="519664",
    )


@pytest.fixture
def p2_triangle():
    return LatticePolytope([(1, 0), (0, 1), (-1, -1)])


# The operators as printed, as coefficient grids on t^k D^j.
#
# ex2: the second term is -tD(1 - 17D); the extracted text dropped the
# parenthetical factor (compare ex4, which keeps its "tD(31D - 3)"), and
# the truncated version annihilates nothing -- see the fit tests.
PRINTED_OPERATORS = {
    "ex1": {(0, 2): 1, (3, 2): -27, (3, 1): -81, (3, 0): -54},
    "ex2": {
        (0, 2): 8,
        (1, 2): 17,
        (1, 1): -1,
        (2, 2): -55, (2, 1): -128, (2, 0): -64,
        (3, 2): -360, (3, 1): -936, (3, 0): -564,
        (4, 2): -412, (4, 1): -1000, (4, 0): -588,
        (5, 2): -99, (5, 1): -297, (5, 0): -198,
    },
    "ex4": {
        (0, 2): 7,
        (1, 2): 31, (1, 1): -3,
        (2, 2): -85, (2, 1): -238, (2, 0): -112,
        (3, 2): -716, (3, 1): -1570, (3, 0): -850,
        (4, 2): -1338, (4, 1): -3278, (4, 0): -1940,
        (5, 2): -731, (5, 1): -2193, (5, 0): -1462,
    },
    "ex5_L1": {
        (0, 3): 1,
        (2, 3): -40, (2, 2): -120, (2, 1): -128, (2, 0): -48,
        (4, 3): 144, (4, 2): 864, (4, 1): 1584, (4, 0): 864,
    },
    "ex5_L2": {
        (0, 3): -1,
        (2, 3): 28, (2, 2): 84, (2, 1): 88, (2, 0): 32,
        (4, 3): 128, (4, 2): 768, (4, 1): 1408, (4, 0): 768,
    },
    "ex6": {
        (0, 3): 1,
        (2, 3): -48, (2, 2): -144, (2, 1): -160, (2, 0): -64,
        (4, 3): 512, (4, 2): 3072, (4, 1): 5632, (4, 0): 3072,
    },
}


@pytest.fixture
def printed_operator():
    def get(name):
        return DifferentialOperator(PRINTED_OPERATORS[name])

    return get


@pytest.fixture(scope="session")
def reflexive16():
    """The 16 reflexive polygons, from the brute-force census oracle,
    deduplicated up to unimodular equivalence."""
    from oracles import enumerate_reflexive_polygons

    polygons = [
        LatticePolytope(verts) for verts in enumerate_reflexive_polygons(3)
    ]
    by_class = {}
    for p in polygons:
        by_class.setdefault(p.canonical_key(), p)
    return sorted(by_class.values(), key=lambda p: p.vertices)
