"""Independent brute-force oracles used by the tests.

Everything here is computed by direct enumeration, separate from the
library's own expansion code paths, so the two sides of each check stay
independent.
"""

from fractions import Fraction
from itertools import combinations
from math import factorial

from chernforge.symfun import RootPoly


def brute_elementary_symmetric(i: int, k: int) -> RootPoly:
    """sigma_i(x_1..x_k) by enumerating all i-element subsets."""
    terms = {}
    for subset in combinations(range(k), i):
        expvec = [0] * k
        for pos in subset:
            expvec[pos] = 1
        terms[tuple(expvec)] = Fraction(1)
    return RootPoly(k, i, terms)


def brute_character_component(j: int, k: int, bound: int) -> RootPoly:
    """Degree-j component of sum_i (e^{x_i} - 1): sum_i x_i^j / j!."""
    terms = {}
    if j <= bound:
        for pos in range(k):
            expvec = [0] * k
            expvec[pos] = j
            terms[tuple(expvec)] = Fraction(1, factorial(j))
    return RootPoly(k, bound, terms)


def brute_total_product(k: int, bound: int) -> RootPoly:
    """prod_i (1 + x_i) truncated at total degree ``bound``."""
    terms = {}
    for size in range(0, min(k, bound) + 1):
        for subset in combinations(range(k), size):
            expvec = [0] * k
            for pos in subset:
                expvec[pos] = 1
            terms[tuple(expvec)] = Fraction(1)
    return RootPoly(k, bound, terms)
