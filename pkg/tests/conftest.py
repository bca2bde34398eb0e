"""Shared fixtures: the three worked examples used throughout the suite."""

import pytest

from gxjoin.graphs import Graph
from gxjoin.groups import dihedral, elementary_abelian, quaternion8
from gxjoin.synth import CayleyScenario
from gxjoin.xjoin import XJoinBlock, XJoinInput


@pytest.fixture(scope="session")
def d6():
    return dihedral(6)


@pytest.fixture(scope="session")
def c3c3():
    return elementary_abelian(3, 2)


@pytest.fixture(scope="session")
def q8():
    return quaternion8()


@pytest.fixture(scope="session")
def c2cubed():
    return elementary_abelian(2, 3)


def make_two_block_input():
    """The two-block join of the 4-vertex base with path and triangle fibers."""
    G = Graph(["1", "2", "3", "4"], [(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)])
    BX = Graph(["a", "b", "c", "d"], [(0, 1), (2, 3)])
    BXp = Graph(["e", "f", "g"], [(0, 1), (0, 2), (1, 2)])
    blocks = (
        XJoinBlock("X", (0, 2), BX, (0, 0, 2, 2)),
        XJoinBlock("Xp", (1, 3), BXp, (1, 3, 3)),
    )
    return XJoinInput(G, blocks)


# the 17 edges of the two-block example, by tagged labels
TWO_BLOCK_EDGES = {
    ("X:a", "X:b"), ("X:c", "X:d"),
    ("Xp:e", "Xp:f"), ("Xp:e", "Xp:g"), ("Xp:f", "Xp:g"),
    ("X:a", "Xp:e"), ("X:b", "Xp:e"), ("X:c", "Xp:e"), ("X:d", "Xp:e"),
    ("X:c", "Xp:f"), ("X:c", "Xp:g"), ("X:d", "Xp:f"), ("X:d", "Xp:g"),
    ("X:a", "Xp:f"), ("X:a", "Xp:g"), ("X:b", "Xp:f"), ("X:b", "Xp:g"),
}


@pytest.fixture(scope="session")
def two_block_input():
    return make_two_block_input()


def make_dihedral_rook_scenario(mode="search"):
    A = dihedral(6)
    C = elementary_abelian(3, 2)
    return CayleyScenario(
        A=A,
        base_connection=frozenset(A.index(n) for n in ("x", "x2", "y")),
        H_gens=(A.index("x"),),
        C=C,
        fiber_connection=frozenset(C.index(n) for n in ("a", "a2", "b", "b2")),
        theta_gen_images={C.index("a"): A.index("x"), C.index("b"): A.identity},
        mode=mode,
    )


def make_cube_quaternion_scenario(mode="theorem"):
    A = elementary_abelian(2, 3)
    C = quaternion8()
    return CayleyScenario(
        A=A,
        base_connection=frozenset(A.index(n) for n in ("a", "b", "c")),
        H_gens=(A.index("a"), A.index("b")),
        C=C,
        fiber_connection=frozenset(C.index(n) for n in ("i", "-i", "j", "-j")),
        theta_gen_images={C.index("i"): A.index("a"), C.index("j"): A.index("b")},
        mode=mode,
    )


@pytest.fixture()
def dihedral_rook_scenario():
    return make_dihedral_rook_scenario()


@pytest.fixture()
def cube_quaternion_scenario():
    return make_cube_quaternion_scenario()
