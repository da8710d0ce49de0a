"""Bundled Gram matrix of the Leech lattice.

Derived from the extended binary Golay code (quadratic-residue construction,
length 23 plus parity) via the standard generator rows {2c}, {4(e_i - e_j)},
(-3, 1, ..., 1), reduced to a basis and rescaled so the form is integral.
The defining properties are re-certified in the test suite: even diagonal,
determinant 1, no vectors of norm 2.
"""

LEECH_GRAM = (
    (6, 2, 3, 2, 3, 3, 3, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 5),
    (2, 4, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 0, 0, 1, 0, 0, 1, 0),
    (3, 2, 4, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 1, 2, 1, 1, 2, 1, 2, 1, 2, 2),
    (2, 2, 2, 4, 2, 2, 2, 2, 2, 2, 1, 2, 1, 1, 0, 0, 0, 1, 1, 1, 0, 1, 1, 0),
    (3, 2, 2, 2, 4, 2, 1, 2, 2, 2, 2, 2, 2, 2, 1, 1, 2, 2, 1, 2, 2, 1, 1, 2),
    (3, 1, 2, 2, 2, 4, 2, 2, 2, 2, 2, 2, 1, 2, 2, 1, 1, 2, 2, 1, 2, 2, 1, 2),
    (3, 2, 2, 2, 1, 2, 4, 2, 2, 2, 2, 2, 1, 1, 2, 2, 1, 1, 2, 2, 1, 2, 2, 2),
    (2, 2, 2, 2, 2, 2, 2, 4, 2, 2, 2, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 0, 0, 0),
    (2, 2, 2, 2, 2, 2, 2, 2, 4, 2, 2, 2, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 0, 0),
    (2, 2, 1, 2, 2, 2, 2, 2, 2, 4, 2, 2, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 0),
    (3, 2, 2, 1, 2, 2, 2, 2, 2, 2, 4, 2, 2, 1, 2, 2, 2, 1, 1, 1, 2, 2, 1, 2),
    (3, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 4, 1, 2, 1, 2, 2, 2, 1, 1, 1, 2, 2, 2),
    (3, 1, 2, 1, 2, 1, 1, 1, 0, 0, 2, 1, 4, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4),
    (3, 1, 2, 1, 2, 2, 1, 0, 1, 0, 1, 2, 2, 4, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4),
    (3, 1, 1, 0, 1, 2, 2, 1, 0, 1, 2, 1, 2, 2, 4, 2, 2, 2, 2, 2, 2, 2, 2, 4),
    (3, 1, 2, 0, 1, 1, 2, 1, 1, 0, 2, 2, 2, 2, 2, 4, 2, 2, 2, 2, 2, 2, 2, 4),
    (3, 1, 1, 0, 2, 1, 1, 0, 1, 1, 2, 2, 2, 2, 2, 2, 4, 2, 2, 2, 2, 2, 2, 4),
    (3, 0, 1, 1, 2, 2, 1, 1, 0, 1, 1, 2, 2, 2, 2, 2, 2, 4, 2, 2, 2, 2, 2, 4),
    (3, 0, 2, 1, 1, 2, 2, 1, 1, 0, 1, 1, 2, 2, 2, 2, 2, 2, 4, 2, 2, 2, 2, 4),
    (3, 1, 1, 1, 2, 1, 2, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 4, 2, 2, 2, 4),
    (3, 0, 2, 0, 2, 2, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 2, 2, 2, 2, 4, 2, 2, 4),
    (3, 0, 1, 1, 1, 2, 2, 0, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4, 2, 4),
    (3, 1, 2, 1, 1, 1, 2, 0, 0, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4, 4),
    (5, 0, 2, 0, 2, 2, 2, 0, 0, 0, 2, 2, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 8),
)
