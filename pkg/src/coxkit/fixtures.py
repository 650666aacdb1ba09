"""Expected values for the bundled ten-generator example.

Every constant the ``example`` command checks lives here, next to the data
files in ``coxkit/data``.
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

EXAMPLE_DIAGRAM = "example_87.cox"
LINK_K = "example_linkK.link"
LINK_L = "example_linkL.link"

# Orders of the parabolic subgroups on S - T and on S - T minus one end node.
ORDERS = {
    "S-T": ("E8", 696729600),
    "S-T-s8": ("E7", 2903040),
    "S-T-s2": ("D7", 322560),
}

# Closure generators over each member of T.
GENERATOR_COUNTS = {"t1": 2160, "t2": 240}

# Two-variable f-polynomial, keyed by (exponent of t1, exponent of t2).
F_TWO_VAR = {
    (1, 7): 276480,
    (1, 6): 967680,
    (1, 5): 1451520,
    (1, 4): 1209600,
    (1, 3): 604800,
    (1, 2): 181440,
    (1, 1): 30240,
    (1, 0): 2160,
    (0, 8): 17280,
    (0, 7): 207360,
    (0, 6): 483840,
    (0, 5): 483840,
    (0, 4): 241920,
    (0, 3): 60480,
    (0, 2): 6720,
    (0, 1): 240,
    (0, 0): 1,
}

# The same polynomial before expansion: each grade (total chain size) is
# 696729600 times a sum of index-weighted monomials.
F_PREFACTOR = 696729600
F_BY_GRADE = {
    8: {(1, 7): Fraction(2, 5040), (0, 8): Fraction(1, 40320)},
    7: {(1, 6): Fraction(1, 720), (0, 7): Fraction(1, 5040) + Fraction(1, 2 * 5040)},
    6: {(1, 5): Fraction(1, 2 * 2 * 120), (0, 6): Fraction(1, 2 * 720)},
    5: {(1, 4): Fraction(1, 24 * 24), (0, 5): Fraction(1, 2 * 6 * 120)},
    4: {(1, 3): Fraction(1, 6 * 192), (0, 4): Fraction(1, 24 * 120)},
    3: {(1, 2): Fraction(1, 2 * 1920), (0, 3): Fraction(1, 6 * 1920)},
    2: {(1, 1): Fraction(1, 23040), (0, 2): Fraction(1, 2 * 51840)},
    1: {(1, 0): Fraction(1, 322560), (0, 1): Fraction(1, 2903040)},
    0: {(0, 0): Fraction(1, 696729600)},
}

# f(t, t), constant term first.
F_DIAGONAL = [1, 2400, 36960, 241920, 846720, 1693440, 1935360, 1175040, 293760]

SIGMA_FAMILY_COUNT = 19

# 1 / closure growth = numerator / (1 + t)^8, constant term first.
INVERSE_GROWTH_NUMERATOR = [1, -2392, 20188, -70504, 107590, -70504, 20188, -2392, 1]
INVERSE_GROWTH_DENOMINATOR_POWER = 8

# Poles of the closure growth series, compared after rounding to two
# significant digits.
POLES = [
    complex(0.41e-3, 0),
    complex(0.24, 0.16),
    complex(0.24, -0.16),
    complex(0.63, 0),
    complex(1.6, 0),
    complex(2.9, 1.9),
    complex(2.9, -1.9),
    complex(2.4e3, 0),
]
POLE_DIGITS = 2

# Distinct real roots of f(t, t).
F_DIAGONAL_REAL_ROOTS = 4

# Link f-polynomials in one variable.
F_LINK_K = [1, 8, 24, 32, 16]  # (1 + 2t)^4
F_LINK_L_AT = Fraction(-1, 2)  # f_L must not vanish here


def data_path(name: str):
    return resources.files("coxkit") / "data" / name


def data_text(name: str) -> str:
    return data_path(name).read_text(encoding="utf-8")
