import math

import mpmath
import numpy as np
import pytest

BETAS = [1e2, 1e3, 1e4, 1e5, 1e6]

# reference Robin eigenvalues lambda_k(beta), 16 digits; rows k = 1..10.
REF_EIGS = np.array([
    [9.486473204354914, 9.830244232285152, 9.865657743495532, 9.869209628756735, 9.869564922790271],
    [37.947300586356484, 39.320978472148354, 39.462630975538794, 39.47683851502818, 39.47825969116076],
    [85.38668247637567, 88.47220734834096, 88.79091970080098, 88.82288665881923, 88.8260843051117],
    [151.81154366014752, 157.28393857454202, 157.85052392706672, 157.90735406013744, 157.91303876464283],
    [237.23142256188495, 245.75618294799932, 246.64144366523558, 246.73024071899425, 246.73912306975478],
    [341.6583215827787, 353.888954347627, 355.1636789293196, 355.2915466354033, 355.30433722044694],
    [465.1065236769831, 481.6822697315615, 483.41722973644585, 483.5912718093815, 483.6086812167196],
    [607.5923811691522, 629.1361491341754, 631.4020961068547, 631.6294162409495, 631.6521550585727],
    [769.1340834087115, 796.2506156625528, 799.118278063901, 799.4059799301307, 799.4347587460061],
    [949.7514101063597, 983.0256954924237, 986.5657756340526, 986.920962876951, 986.9564922790203],
])
REF_DIRICHLET = [
    9.869604401089359, 39.47841760435743, 88.82643960980423, 157.9136704174297,
    246.7401100272340, 355.3057584392169, 483.6106156533786, 631.6546816697189,
    799.4379564882380, 986.9604401089359,
]


def erfcx_mp(x):
    """``exp(x^2) erfc(x)`` at 40 digits; equals ``E_{1/2}(-x)``."""
    with mpmath.workdps(40):
        return float(mpmath.exp(mpmath.mpf(x) ** 2) * mpmath.erfc(x))


def sin_product_integral(a, b):
    """Closed form of ``int_0^1 sin(a x) sin(b x) dx``."""
    if a == b:
        return 0.5 - math.sin(2 * a) / (4 * a)
    return math.sin(a - b) / (2 * (a - b)) - math.sin(a + b) / (2 * (a + b))


def sin_cos_integral(a, b):
    """Closed form of ``int_0^1 sin(a x) cos(b x) dx``."""
    if a == b:
        return math.sin(a) ** 2 / (2 * a)
    return ((1 - math.cos(a - b)) / (a - b) + (1 - math.cos(a + b)) / (a + b)) / 2


def sin_pi(x):
    return np.sin(np.pi * x)


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
