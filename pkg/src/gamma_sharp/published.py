"""Published claims that the discrepancy report is checked against.

Values are transcribed as exact strings. Directions use the convention of
:mod:`gamma_sharp.analysis`: ``GT`` means ``Gamma(x+1) > A(x)``.
"""

from __future__ import annotations

from fractions import Fraction

CONSTANTS = {
    "GOSPER_CF": [
        {"kappa_0": "1/72", "lambda_0": "31/90"},
        {"kappa_1": "5929/32400", "lambda_1": "481937/3735270"},
        {"kappa_2": "76899172249/248039857296", "lambda_2": "7745462509019287/19149278075101482"},
        {
            "kappa_3": "786873417270631211749921/851541507731717527392144",
            "lambda_3": "2098335745817751685364201067279071/30311088872486921466334781589254970",
        },
    ],
    "GOSPER_PRODUCT": [
        {"kappa_0": "-1/144", "lambda_0": "4007/21600"},
        {"kappa_1": "4394/637875", "lambda_1": "130311599/15575040"},
        {"kappa_2": "7894414898425/119793516544", "lambda_2": "-265702682899837009577/34427631789478287360"},
        {
            "kappa_3": "1897560849252106177858465792/77174813342532578267347147395",
            "lambda_3": "30320380455616293004898928163131563244811979/"
            "6134364315672065325746652708240298034227200",
        },
    ],
    "RAMANUJAN_CF": [
        {"a_0": "-11/240", "b_0": "79/154"},
        {"a_1": "459733/711480", "b_1": "-1455925/70798882"},
        {"a_2": "49600874140433/101450127018720", "b_2": "10259108965771635091/19545564575317443762"},
        {
            "a_3": "169085305336152527131511003963/101221579151797375403194730976",
            "b_3": "-6141448535908002711219920016488834171/203275987838924050801436670299517447102",
        },
    ],
    "RAMANUJAN_MIXED": [
        {"kappa_0": "-11/240", "lambda_0": "79/154"},
        {
            "kappa_1": "459733/15523200",
            "lambda_10": "71181889/70798882",
            "lambda_11": "717183502490887/520777318696096",
            "lambda_12": "1118629052995381153799/1958878792277282473920",
        },
    ],
}

# Difference series of the Gosper base (MC = 0), keyed by power of 1/x.
GOSPER_BASE_SERIES = {3: "-1/72", 4: "17/540", 5: "-641/12960"}

# Leading difference coefficients and residual limits x**mu * E -> limit.
LEADING = {
    "RAMANUJAN_BASE": {"order": 5, "coefficient": "11/2880", "limit": "11/11520"},
    "GOSPER_CF(0)": {"order": 5, "coefficient": "5929/1166400", "limit": "5929/4665600"},
}

# theorem id -> (approximant kind, convergence exponent as a function of k)
THEOREMS = {
    1: ("GOSPER_CF", lambda k: 2 * k + 4),
    2: ("GOSPER_PRODUCT", lambda k: 2 * k + 5),
    3: ("RAMANUJAN_CF", lambda k: 2 * k + 6),
    4: ("RAMANUJAN_MIXED1", lambda k: 10),
}

DOMAIN_START = {(2, 0): Fraction(13), (2, 2): Fraction(6)}

# Printed side of Gamma(x+1) relative to the approximant.
DIRECTIONS = {
    (1, 0): "GT", (1, 1): "LT", (1, 2): "GT", (1, 3): "LT",
    (2, 0): "LT", (2, 1): "GT", (2, 2): "LT", (2, 3): "GT",
    (3, 0): "LT", (3, 1): "GT", (3, 2): "LT", (3, 3): "GT",
    (4, 1): "LT",
}

# Printed sign of the second derivative of E(x) - E(x+1) on the domain.
SECOND_DIFFERENCE_SIGN = {
    (1, 0): 1, (1, 1): -1, (1, 2): 1, (1, 3): -1,
    (2, 0): 1, (2, 1): -1, (2, 2): 1, (2, 3): -1,
    (3, 0): -1, (3, 1): 1, (3, 2): -1, (3, 3): 1,
    (4, 1): -1,
}

# Denominator factors displayed next to the second derivatives.
SECOND_DIFFERENCE_FACTORS = {
    (1, 0): ["x", "(1+x)^2", "(31+90x)^2", "(121+90x)^2"],
    (3, 0): ["(79+154x)^2", "(233+154x)^2"],
}


def domain_start(theorem: int, k: int) -> Fraction:
    return DOMAIN_START.get((theorem, k), Fraction(1))


def theorem_depths(theorem: int) -> list[int]:
    return [1] if theorem == 4 else [0, 1, 2, 3]
