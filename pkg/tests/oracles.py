"""Reference computations written independently of the package code."""

import itertools
import math
from fractions import Fraction


def brute_force_law(n, a, b, c):
    """White-count law by listing every colour sequence of an n-draw urn (exact)."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    law = [Fraction(0)] * (n + 1)
    for seq in itertools.product("WB", repeat=n):
        w, bl, prob = a, b, Fraction(1)
        for colour in seq:
            if colour == "W":
                prob *= w / (w + bl)
                w += c
            else:
                prob *= bl / (w + bl)
                bl += c
            if prob == 0:
                break
        law[seq.count("W")] += prob
    return law


def special_law(n, x):
    x = Fraction(x)
    return brute_force_law(n, x, 1 - x, -min(x, 1 - x) / (n - 1))


def binomial_law(n, p):
    return [math.comb(n, k) * p ** k * (1 - p) ** (n - k) for k in range(n + 1)]


def x31_closed_form():
    """Smaller root of 3x^2 - 12x + 4 = 0, i.e. the sign change of phi_{3,1}."""
    return 2 - 2 * math.sqrt(6) / 3


def central_difference(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2 * h)
