import pytest

from torushom.charmat import CharacteristicMatrix
from torushom.manifold import TorusManifold
from torushom.orbit import CornerComplex
from torushom.posets import SimplicialPoset

# Orbit spaces used throughout the test suite, as vertex/edge data.
# square: boundary of a square, four walls.
# annulus: square outer boundary plus a triangular hole, seven walls in two
#          boundary circles.
# digon: two edges joining the same two vertices.

SQUARE_EDGES = [(5, (1, 2)), (6, (2, 3)), (7, (3, 4)), (8, (1, 4))]
ANNULUS_EDGES = [(8, (1, 2)), (9, (2, 3)), (10, (3, 4)), (11, (1, 4)),
                 (12, (5, 6)), (13, (6, 7)), (14, (5, 7))]


def build_square_poset():
    cells = [{"id": i, "vertices": list(vs)} for i, vs in SQUARE_EDGES]
    return SimplicialPoset([1, 2, 3, 4], cells)


def build_annulus_poset():
    cells = [{"id": i, "vertices": list(vs)} for i, vs in ANNULUS_EDGES]
    return SimplicialPoset(list(range(1, 8)), cells)


def build_digon_poset():
    return SimplicialPoset([1, 2], [{"id": 3, "vertices": [1, 2]},
                                    {"id": 4, "vertices": [1, 2]}])


SQUARE_ROWS = {1: (1, 0), 2: (0, 1), 3: (1, 0), 4: (0, 1)}
ANNULUS_ROWS = {1: (1, 0), 2: (0, 1), 3: (1, 0), 4: (3, 1),
                5: (2, 3), 6: (1, 2), 7: (-3, -5)}
DIGON_ROWS = {1: (1, 0), 2: (0, 1)}


def build_square_charmat(poset=None):
    return CharacteristicMatrix(poset or build_square_poset(), SQUARE_ROWS)


def build_annulus_charmat(poset=None):
    return CharacteristicMatrix(poset or build_annulus_poset(), ANNULUS_ROWS)


def build_digon_charmat(poset=None):
    return CharacteristicMatrix(poset or build_digon_poset(), DIGON_ROWS)


@pytest.fixture
def square_poset():
    return build_square_poset()


@pytest.fixture
def annulus_poset():
    return build_annulus_poset()


@pytest.fixture
def digon_poset():
    return build_digon_poset()


@pytest.fixture
def square_charmat(square_poset):
    return CharacteristicMatrix(square_poset, SQUARE_ROWS)


@pytest.fixture
def annulus_charmat(annulus_poset):
    return CharacteristicMatrix(annulus_poset, ANNULUS_ROWS)


@pytest.fixture
def digon_charmat(digon_poset):
    return CharacteristicMatrix(digon_poset, DIGON_ROWS)

SQUARE_CELLS = [
    {"id": "c0", "dim": 2, "boundary": [[v, 1] for v in range(1, 5)]},
]
ANNULUS_CELLS = [
    {"id": "estar", "dim": 1, "boundary": [[11, 1], [14, 1]]},
    {"id": "c", "dim": 2, "boundary": [[v, 1] for v in range(1, 8)]},
]
DIGON_CELLS = [
    {"id": "c", "dim": 2, "boundary": [[1, 1], [2, 1]]},
]


@pytest.fixture
def square_manifold(square_poset, square_charmat):
    return TorusManifold(CornerComplex(square_poset, SQUARE_CELLS),
                         square_charmat)


@pytest.fixture
def annulus_manifold(annulus_poset, annulus_charmat):
    return TorusManifold(CornerComplex(annulus_poset, ANNULUS_CELLS),
                         annulus_charmat)


@pytest.fixture
def digon_manifold(digon_poset, digon_charmat):
    return TorusManifold(CornerComplex(digon_poset, DIGON_CELLS),
                         digon_charmat)


ANNULUS_GEOMETRY = {
    "classes": [
        {"name": "eta", "kind": "spine", "dim": 1, "support": []},
        {"name": "pt", "kind": "spine", "dim": 0, "support": []},
        {"name": "L", "kind": "diaphragm", "dim": 1, "support": [1, 4, 5, 7]},
        {"name": "Lp", "kind": "diaphragm", "dim": 1, "support": [3, 4, 6, 7]},
        {"name": "Lpp", "kind": "diaphragm", "dim": 1,
         "support": [1, 2, 5, 6]},
    ],
    "pairings": [
        {"left": "eta", "right": "L", "result": [["pt", 1]]},
        {"left": "eta", "right": "eta", "result": []},
    ],
    "disjoint": [["Lp", "Lpp"]],
    "bordism": [
        {"source": "L", "target": "Lp",
         "rows": {"1": [[4, 1], [7, -5]], "2": [[4, -3], [7, 3]]}},
        {"source": "L", "target": "Lpp", "chain": {1: 1, 5: 1}},
    ],
}
