"""Exact graded polynomial algebra over the rationals.

Houses the universal polynomials that turn Chern-character components
into Chern classes, computed through Newton's identities, together with
the inverse conversion, expansion into Chern roots at a finite
truncation, and the total-class sum identity behind the Whitney
formula.  Variables come in two alphabets (``s1, s2, ...`` and a primed
copy) so that the sum identity is a single-ring statement; ``s_i`` and
its primed twin both carry degree ``i``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Optional

# A variable is (alphabet, index) with alphabet 0 for s_i and 1 for the
# primed copy; a monomial is a sorted tuple of (variable, exponent)
# pairs with positive exponents.
Var = tuple[int, int]
Mono = tuple[tuple[Var, int], ...]

ONE_MONO: Mono = ()


def mono_degree(mono: Mono) -> int:
    return sum(var[1] * exp for var, exp in mono)


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for var, exp in b:
        merged[var] = merged.get(var, 0) + exp
    return tuple(sorted(merged.items()))


class GradedPoly:
    """Polynomial with exact rational coefficients in graded variables.

    Stored as a map from canonical monomials to nonzero coefficients, so
    equal polynomials have identical representations.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        clean: dict[Mono, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = coeff
        self.terms = clean

    @classmethod
    def zero(cls) -> "GradedPoly":
        return cls()

    @classmethod
    def const(cls, value) -> "GradedPoly":
        return cls({ONE_MONO: Fraction(value)})

    @classmethod
    def var(cls, index: int, prime: int = 0) -> "GradedPoly":
        if index < 1:
            raise ValueError("variable index must be >= 1")
        if prime not in (0, 1):
            raise ValueError("alphabet must be 0 or 1")
        return cls({(((prime, index), 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono, 0) + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        result = GradedPoly.__new__(GradedPoly)
        result.terms = out
        return result

    def __neg__(self) -> "GradedPoly":
        result = GradedPoly.__new__(GradedPoly)
        result.terms = {m: -c for m, c in self.terms.items()}
        return result

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        return self + (-other)

    def scale(self, value) -> "GradedPoly":
        value = Fraction(value)
        if not value:
            return GradedPoly()
        result = GradedPoly.__new__(GradedPoly)
        result.terms = {m: c * value for m, c in self.terms.items()}
        return result

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return self.mul_trunc(other, None)

    __rmul__ = __mul__

    def mul_trunc(self, other: "GradedPoly", bound: Optional[int]) -> "GradedPoly":
        """Product, dropping monomials of degree above ``bound`` if given."""
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            d1 = mono_degree(m1)
            if bound is not None and d1 > bound:
                continue
            for m2, c2 in other.terms.items():
                if bound is not None and d1 + mono_degree(m2) > bound:
                    continue
                mono = mono_mul(m1, m2)
                acc = out.get(mono, 0) + c1 * c2
                if acc:
                    out[mono] = acc
                else:
                    out.pop(mono, None)
        result = GradedPoly.__new__(GradedPoly)
        result.terms = out
        return result

    def truncate(self, bound: int) -> "GradedPoly":
        return GradedPoly({m: c for m, c in self.terms.items() if mono_degree(m) <= bound})

    def max_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def is_homogeneous(self, degree: int) -> bool:
        return all(mono_degree(m) == degree for m in self.terms)

    def uses_only_unprimed(self) -> bool:
        return all(var[0] == 0 for mono in self.terms for var, _ in mono)

    def substitute(self, table: Callable[[Var], "GradedPoly"],
                   trunc: Optional[int] = None) -> "GradedPoly":
        """Replace each variable by ``table(var)`` and expand.

        Powers of the images are cached per call; ``trunc`` bounds the
        degree of every intermediate product.
        """
        powers: dict[tuple[Var, int], GradedPoly] = {}

        def power(var: Var, exp: int) -> GradedPoly:
            key = (var, exp)
            if key not in powers:
                if exp == 1:
                    powers[key] = table(var)
                else:
                    powers[key] = power(var, exp - 1).mul_trunc(table(var), trunc)
            return powers[key]

        total = GradedPoly()
        for mono, coeff in self.terms.items():
            term = GradedPoly.const(coeff)
            for var, exp in mono:
                term = term.mul_trunc(power(var, exp), trunc)
            total = total + term
        return total

    def to_alphabet(self, prime: int) -> "GradedPoly":
        return self.substitute(lambda var: GradedPoly.var(var[1], prime))

    def render(self) -> str:
        """Debug rendering: sorted monomials in ``a/b*s1^2*s2`` form."""
        if not self.terms:
            return "0"
        def mono_key(mono: Mono):
            return (mono_degree(mono), mono)
        chunks = []
        for mono in sorted(self.terms, key=mono_key):
            coeff = self.terms[mono]
            factors = [str(coeff)]
            for (prime, idx), exp in mono:
                name = f"sp{idx}" if prime else f"s{idx}"
                factors.append(name if exp == 1 else f"{name}^{exp}")
            chunks.append("*".join(factors))
        return " + ".join(chunks)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"GradedPoly({self.render()})"


class RootPoly:
    """Polynomial in root variables x1..xk, truncated at total degree D."""

    __slots__ = ("k", "bound", "terms")

    def __init__(self, k: int, bound: int, terms: Optional[dict] = None):
        self.k = k
        self.bound = bound
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for expvec, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff and sum(expvec) <= bound:
                    clean[expvec] = coeff
        self.terms = clean

    @classmethod
    def const(cls, k: int, bound: int, value) -> "RootPoly":
        return cls(k, bound, {(0,) * k: Fraction(value)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootPoly):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __add__(self, other: "RootPoly") -> "RootPoly":
        out = dict(self.terms)
        for expvec, coeff in other.terms.items():
            acc = out.get(expvec, 0) + coeff
            if acc:
                out[expvec] = acc
            else:
                out.pop(expvec, None)
        result = RootPoly.__new__(RootPoly)
        result.k, result.bound, result.terms = self.k, self.bound, out
        return result

    def __sub__(self, other: "RootPoly") -> "RootPoly":
        negated = RootPoly.__new__(RootPoly)
        negated.k, negated.bound = other.k, other.bound
        negated.terms = {e: -c for e, c in other.terms.items()}
        return self + negated

    def __mul__(self, other: "RootPoly") -> "RootPoly":
        bound = self.bound
        right = [(e2, sum(e2), c2) for e2, c2 in other.terms.items()]
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, d2, c2 in right:
                if d1 + d2 > bound:
                    continue
                expvec = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(expvec, 0) + c1 * c2
                if acc:
                    out[expvec] = acc
                else:
                    out.pop(expvec, None)
        result = RootPoly.__new__(RootPoly)
        result.k, result.bound, result.terms = self.k, bound, out
        return result

    def __repr__(self):
        return f"RootPoly(k={self.k}, bound={self.bound}, {len(self.terms)} terms)"


_SIGMA_CACHE: list[GradedPoly] = [GradedPoly.const(1)]
_POWER_SUM_CACHE: list[GradedPoly] = [GradedPoly.const(0)]


def _power_sum_as_vars(j: int) -> GradedPoly:
    # p_j = j! * s_j since the j'th character component is p_j / j!
    return GradedPoly.var(j).scale(factorial(j))


def _sigma(i: int) -> GradedPoly:
    # Newton's identities solved downward:
    #   sigma_k = (1/k) * sum_{j=1..k} (-1)^{j-1} sigma_{k-j} p_j
    while len(_SIGMA_CACHE) <= i:
        k = len(_SIGMA_CACHE)
        acc = GradedPoly()
        for j in range(1, k + 1):
            term = _SIGMA_CACHE[k - j] * _power_sum_as_vars(j)
            acc = acc + term.scale(Fraction((-1) ** (j - 1), k))
        _SIGMA_CACHE.append(acc)
    return _SIGMA_CACHE[i]


def chern_polynomial(i: int) -> GradedPoly:
    """The degree-i universal polynomial in s1..si.

    Substituting the Chern-character components for the variables gives
    the i'th elementary symmetric function of the Chern roots; the
    computation runs through Newton's identities and is exact.
    """
    if i < 1:
        raise ValueError("chern_polynomial requires i >= 1")
    return _sigma(i)


def _power_sum_in_sigma(j: int) -> GradedPoly:
    # p_k = sigma_1 p_{k-1} - sigma_2 p_{k-2} + ... + (-1)^{k-1} k sigma_k,
    # with the variables s_i now standing for sigma_i.
    while len(_POWER_SUM_CACHE) <= j:
        k = len(_POWER_SUM_CACHE)
        acc = GradedPoly.var(k).scale(Fraction((-1) ** (k - 1) * k))
        for m in range(1, k):
            term = GradedPoly.var(m) * _POWER_SUM_CACHE[k - m]
            acc = acc + term.scale(Fraction((-1) ** (m - 1)))
        _POWER_SUM_CACHE.append(acc)
    return _POWER_SUM_CACHE[j]


def ch_from_chern(j: int) -> GradedPoly:
    """Inverse conversion: the j'th character component in the sigma basis.

    Round-trips with :func:`chern_polynomial`: composing the two
    substitutions is the identity on generators.
    """
    if j < 1:
        raise ValueError("ch_from_chern requires j >= 1")
    return _power_sum_in_sigma(j).scale(Fraction(1, factorial(j)))


def _character_power(j: int, exp: int, k: int, bound: int):
    """(sum_i x_i^j / j!)^exp via multinomials, as integer numerators
    over the fixed denominator j!^exp.

    Every monomial has total degree exactly j*exp, so the whole power
    vanishes under the truncation when j*exp > bound.
    """
    from collections import Counter
    from itertools import combinations_with_replacement

    if j * exp > bound:
        return 1, {}
    denom = factorial(j) ** exp
    base = factorial(exp)
    terms: dict[tuple[int, ...], int] = {}
    for combo in combinations_with_replacement(range(k), exp):
        counts = Counter(combo)
        mult = base
        for c in counts.values():
            mult //= factorial(c)
        expvec = [0] * k
        for pos, c in counts.items():
            expvec[pos] = j * c
        terms[tuple(expvec)] = mult
    return denom, terms


def _int_mul(a, b, bound: int):
    """Product of integer-numerator polynomials with tracked denominators."""
    from operator import add

    da, ta = a
    db, tb = b
    right = [(e2, sum(e2), c2) for e2, c2 in tb.items()]
    out: dict[tuple[int, ...], int] = {}
    for e1, c1 in ta.items():
        d1 = sum(e1)
        for e2, d2, c2 in right:
            if d1 + d2 > bound:
                continue
            expvec = tuple(map(add, e1, e2))
            acc = out.get(expvec, 0) + c1 * c2
            if acc:
                out[expvec] = acc
            else:
                del out[expvec]
    return da * db, out


def expand_in_roots(poly: GradedPoly, k: int, bound: int) -> RootPoly:
    """Expand an unprimed polynomial into k Chern roots, truncated.

    Applies the defining substitution s_j -> sum_i x_i^j / j! and drops
    all monomials of total degree above ``bound``.
    """
    if k < 1:
        raise ValueError("need at least one root variable")
    if not poly.uses_only_unprimed():
        raise ValueError("expand_in_roots is defined on the unprimed alphabet only")
    powers: dict[tuple[int, int], tuple] = {}

    def power(j: int, exp: int):
        key = (j, exp)
        if key not in powers:
            powers[key] = _character_power(j, exp, k, bound)
        return powers[key]

    contributions = []
    for mono, coeff in poly.terms.items():
        if mono_degree(mono) > bound:
            continue
        factors = sorted(((idx, exp) for (prime, idx), exp in mono),
                         key=lambda pair: pair[0] * pair[1])
        term = (1, {(0,) * k: 1})
        for idx, exp in factors:
            term = _int_mul(term, power(idx, exp), bound)
        denom, numerators = term
        contributions.append((coeff / denom, numerators))
    if not contributions:
        return RootPoly(k, bound)
    # accumulate integer numerators over one common denominator and
    # convert to fractions only once at the end
    from math import lcm
    common = lcm(*(scale.denominator for scale, _ in contributions))
    accumulated: dict[tuple[int, ...], int] = {}
    for scale, numerators in contributions:
        factor = scale.numerator * (common // scale.denominator)
        if not factor:
            continue
        for expvec, numerator in numerators.items():
            acc = accumulated.get(expvec, 0) + numerator * factor
            if acc:
                accumulated[expvec] = acc
            else:
                del accumulated[expvec]
    return RootPoly(k, bound,
                    {e: Fraction(v, common) for e, v in accumulated.items()})


def total_chern_truncated(bound: int, alphabet: str = "unprimed") -> GradedPoly:
    """1 + C_1 + ... + C_bound in the requested alphabet.

    ``alphabet`` is one of ``unprimed``, ``primed`` or ``sum``; the last
    substitutes each variable by the sum of its two copies.
    """
    if bound < 0:
        raise ValueError("truncation bound must be >= 0")
    total = GradedPoly.const(1)
    for i in range(1, bound + 1):
        total = total + chern_polynomial(i)
    if alphabet == "unprimed":
        return total
    if alphabet == "primed":
        return total.to_alphabet(1)
    if alphabet == "sum":
        return total.substitute(
            lambda var: GradedPoly.var(var[1], 0) + GradedPoly.var(var[1], 1),
            trunc=bound,
        )
    raise ValueError(f"unknown alphabet {alphabet!r}")


def verify_sum_identity(bound: int) -> tuple[bool, GradedPoly]:
    """Check multiplicativity of the total class up to ``bound``.

    Returns the verdict together with the discrepancy polynomial, which
    is zero exactly when the identity holds at this truncation.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    lhs = total_chern_truncated(bound, "sum")
    rhs = total_chern_truncated(bound, "unprimed").mul_trunc(
        total_chern_truncated(bound, "primed"), bound)
    diff = lhs - rhs
    return diff.is_zero(), diff
