"""
Evaluating the Mittag-Leffler relaxation E_a(-x)
=================================================

The time factor of every mode is E_a(-lam t^a).  Small arguments go through
the power series, large ones through an integral over a positive density.
"""

import math

import numpy as np
from scipy.special import erfcx

from fracspec import ml, ml_integral, ml_series

# alpha = 1/2 has a closed form, exp(x^2) erfc(x)
for x in (0.1, 1.0, 4.0, 10.0):
    print(f"x={x:5.1f}  ml={ml(0.5, x):.16f}  erfcx={erfcx(x):.16f}")

# both routes agree where they overlap
x = 3.0
print("series  ", ml_series(0.8, x))
print("integral", ml_integral(0.8, x))

# the decay is algebraic, not exponential: compare with 1/(1 + x/Gamma(1+a))
xs = np.logspace(-2, 4, 7)
for a in (0.3, 0.8, 1.0):
    vals = [ml(a, x) for x in xs]
    bound = [1 / (1 + x / math.gamma(1 + a)) for x in xs]
    print(f"a={a}:", " ".join(f"{v:.2e}" for v in vals))
    print("   bound:", " ".join(f"{b:.2e}" for b in bound))
