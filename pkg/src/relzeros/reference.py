"""Published reference values backing the reproduction suites.

Family naming: k4:<case>:<p1>:<p2> is K4 with the case's class-0 edges
replaced by p1 parallel copies and the class-1 edges by p2; k6:<p1>:<p2>
does the same on K6 with two disjoint class-0 triangles.
"""

import math

# Minimum |1 + v| over the zeros of C_G(v), per family and p = 6..15.
# Entries of exactly 1 mean no zero enters the open unit disc around -1
# (the deflated zero root itself sits on the boundary and contributes 1).
TABLE1_MIN_DISC = {
    ("b", "1p"): [1, 0.999765, 0.997818, 0.996996, 0.996734,
                  0.996749, 0.996897, 0.997102, 0.997326, 0.997547],
    ("b", "p1"): [0.998274, 0.997234, 0.997001, 0.997083, 0.997284,
                  0.997519, 0.997753, 0.997971, 0.998169, 0.998345],
    ("d", "1p"): [1, 1, 1, 0.999956, 0.999813,
                  0.999746, 0.999718, 0.999713, 0.999718, 0.999730],
    ("d", "p1"): [1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
}
TABLE1_P_RANGE = range(6, 16)

# First univariate violation in the k4:d:p:1 family.
D_P1_FIRST_VIOLATION = 30

# Named counterexample roots (one of each conjugate pair) and their |1 + v|.
NAMED_ROOTS = {
    ("b", 1, 7): (complex(-0.269253, 0.682304), 0.999765),
    ("b", 6, 1): (complex(-0.405015, 0.801589), 0.998274),
    ("d", 1, 9): (complex(-0.220759, 0.626655), 0.999956),
    ("d", 30, 1): (complex(-0.017476, 0.185846), 0.999946),
}

K6_ROOT = {
    (1, 6): (complex(-0.357514, 0.713815), 0.960375),
}

# Simple-planar construction: v1 is the minimizing root of the base family,
# k the smallest exponent whose k-th root branch enters |1/s + v| < 1/s at
# s = 2, and the final modulus is |1 + s*v_k|.
CONSTRUCTIONS = {
    (11, 1): {
        "v1": complex(-0.140970808664, 0.507062767880),
        "v1_modulus": 0.997518822949,
        "k": 58,
        "vk": complex(-0.000085091565, 0.009193226407),
        "scaled_modulus": 0.999998862173,
    },
    (1, 12): {
        "v1": complex(-0.112358418620, 0.453757934703),
        "v1_modulus": 0.996897106175,
        "k": 36,
        "vk": complex(-0.000172469038, 0.013125252246),
        "scaled_modulus": 0.999999665908,
    },
}
CONSTRUCTION_S = 2

# Violation-region endpoint angles (fractions of a turn) per plane.
ENDPOINT_ANGLES = {
    ("b", "a"): 0.120692,
    ("b", "b"): 0.164868,
    ("d", "a"): 0.110198,
    ("d", "b"): 0.030469,
}
ANALYTIC_CASES = ("a", "c", "e")
HALF_POWER_CASES = ("b", "d")

# Root branches a(b) near b = 0: (hint, kind, leading, subleading).
# Half-power subleadings are the representative with Im >= 0 (case d) or
# larger real part (case b); the partner branch carries the opposite sign.
_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)
BRANCH_EXPANSIONS = {
    "a": [(-1.0, "analytic", -1.0, 5 / 8)],
    "b": [(-1.0, "half-power", -1.0, complex(0.5, 0.0))],
    "c": [(-1 / 3, "analytic", -1 / 3, 1 / 8),
          (-3.0, "analytic", -3.0, 31 / 8)],
    "d": [(-3.0, "half-power", -3.0, complex(0.0, _SQRT3))],
    "e": [(-1.0, "analytic", -1.0, 3 / 4),
          (-3 + 2 * _SQRT2, "analytic", -3 + 2 * _SQRT2, (9 / 16) * (10 - 7 * _SQRT2)),
          (-3 - 2 * _SQRT2, "analytic", -3 - 2 * _SQRT2, (9 / 16) * (10 + 7 * _SQRT2))],
}

# lambda-star expectations: cycles C_n scale as n/2; the 2-vertex bundle
# family pins at 1.  (The n = 1 bundle is a single edge whose only zero is
# v = 0, on the boundary of every disc, so the implementation returns +inf;
# the row is kept as published and reported as a failure.)
LAMBDA_STAR_CYCLES = {n: n / 2 for n in range(3, 11)}
LAMBDA_STAR_BUNDLES = {n: 1.0 for n in range(1, 7)}
