"""Small named algebras and maps used throughout the tests and the CLI."""
from __future__ import annotations

from functools import lru_cache

from .algebra import FiniteAlgebra, Hom, Variety, product
from . import groups


def trivial_quandle(n: int) -> FiniteAlgebra:
    """``T_n``: ``x ◁ y = x``."""
    return FiniteAlgebra(Variety.QUANDLE, [[x] * n for x in range(n)])


def dihedral_quandle(n: int) -> FiniteAlgebra:
    """``R_n``: ``x ◁ y = 2y - x mod n``."""
    return FiniteAlgebra(Variety.QUANDLE, [[(2 * y - x) % n for y in range(n)] for x in range(n)])


def flip_rack() -> FiniteAlgebra:
    """The two-element rack ``x ◁ y = x + 1 mod 2``."""
    return FiniteAlgebra(Variety.RACK, [[1, 1], [0, 0]])


T1 = trivial_quandle(1)
T2 = trivial_quandle(2)
R3 = dihedral_quandle(3)
R4 = dihedral_quandle(4)


@lru_cache(maxsize=None)
def _p_data():
    fp = product(R3, T2)
    return fp.apex, fp.left, fp.right


def P() -> FiniteAlgebra:
    """``R3 × T2``, with ``(a, b)`` at index ``2a + b``."""
    return _p_data()[0]


def p() -> Hom:
    """The projection ``R3 × T2 -> R3``."""
    return _p_data()[1]


def q() -> Hom:
    """The projection ``R3 × T2 -> T2``."""
    return _p_data()[2]


C1 = groups.cyclic(1)
C2 = groups.cyclic(2)
C4 = groups.cyclic(4)
V4 = groups.direct_product(C2, C2)
S3 = groups.from_permutations([(1, 2, 0), (1, 0, 2)])
Q8 = groups.quaternion()
D4 = groups.from_permutations([(1, 2, 3, 0), (3, 2, 1, 0)])

NAMED = {
    "T1": T1,
    "T2": T2,
    "R3": R3,
    "R4": R4,
    "P": P(),
    "flip": flip_rack(),
    "C1": C1,
    "C2": C2,
    "C4": C4,
    "V4": V4,
    "S3": S3,
    "Q8": Q8,
    "D4": D4,
}
