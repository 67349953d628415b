"""Hermitian line bundles with connection data on flat tori.

A line bundle is recorded by an antisymmetric integer matrix (the
harmonic curvature data, Chern-normalized so its entries are the
periods of the curvature over coordinate 2-subtori), rational holonomy
shifts along the coordinate loops, and a real periodic 1-form
perturbing the connection.  Diagonal direct sums of lines stand in for
higher-rank bundles; odd cycles are diagonal unitaries given by
windings and phases, realized as even cycles by a clutching-style
suspension.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from itertools import combinations
from typing import Optional, Sequence

from .forms import EvenForm, TorusForm, chern_transform
from .scalars import GaussRat


def _check_antisymmetric(matrix: tuple[tuple[int, ...], ...], n: int):
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError(f"curvature matrix must be {n}x{n}")
    for j in range(n):
        for l in range(n):
            if matrix[j][l] != -matrix[l][j]:
                raise ValueError("curvature matrix must be antisymmetric")


class LineBundle:
    """Rank-1 hermitian bundle with connection data on T^n."""

    __slots__ = ("n", "K", "theta", "beta", "_curvature")

    def __init__(self, n: int, K: Optional[Sequence[Sequence[int]]] = None,
                 theta: Optional[Sequence] = None,
                 beta: Optional[TorusForm] = None):
        self.n = n
        self.K = tuple(tuple(int(v) for v in row) for row in K) if K is not None \
            else tuple((0,) * n for _ in range(n))
        _check_antisymmetric(self.K, n)
        self.theta = tuple(Fraction(v) for v in theta) if theta is not None \
            else (Fraction(0),) * n
        if len(self.theta) != n:
            raise ValueError(f"holonomy vector must have length {n}")
        self.beta = beta if beta is not None else TorusForm.zero(n)
        if self.beta.n != n or self.beta.has_t:
            raise ValueError("connection perturbation lives on the wrong space")
        if not self.beta.is_zero() and self.beta.degree() != 1:
            raise ValueError("connection perturbation must be a 1-form")
        if not self.beta.is_real():
            raise ValueError("connection perturbation must be real")
        self._curvature = None

    @classmethod
    def flat(cls, n: int, theta: Optional[Sequence] = None) -> "LineBundle":
        return cls(n, theta=theta)

    def harmonic_curvature(self) -> TorusForm:
        """The translation-invariant curvature part sum K_jl dx_j dx_l."""
        form = TorusForm.zero(self.n)
        terms = {}
        for j in range(self.n):
            for l in range(j + 1, self.n):
                if self.K[j][l]:
                    terms[(0, (0,) * self.n, (j + 1, l + 1))] = GaussRat(self.K[j][l])
        return TorusForm(self.n, terms) if terms else form

    def curvature(self) -> TorusForm:
        if self._curvature is None:
            self._curvature = self.harmonic_curvature() + self.beta.d()
        return self._curvature

    def tensor(self, other: "LineBundle") -> "LineBundle":
        if self.n != other.n:
            raise ValueError("tensor product needs equal dimensions")
        K = tuple(tuple(a + b for a, b in zip(r1, r2))
                  for r1, r2 in zip(self.K, other.K))
        theta = tuple(a + b for a, b in zip(self.theta, other.theta))
        return LineBundle(self.n, K, theta, self.beta + other.beta)

    def dual(self) -> "LineBundle":
        K = tuple(tuple(-v for v in row) for row in self.K)
        theta = tuple(-v for v in self.theta)
        return LineBundle(self.n, K, theta, -self.beta)

    def pullback(self, matrix: Sequence[Sequence[int]]) -> "LineBundle":
        """Pullback along x -> A x; rows of A index this bundle's coordinates."""
        rows = [tuple(int(v) for v in row) for row in matrix]
        if len(rows) != self.n:
            raise ValueError("matrix rows must match the bundle dimension")
        m = len(rows[0]) if rows else 0
        K = tuple(
            tuple(
                sum(rows[a][r] * self.K[a][b] * rows[b][s]
                    for a in range(self.n) for b in range(self.n))
                for s in range(m)
            )
            for r in range(m)
        )
        theta = tuple(
            sum(rows[j][l] * self.theta[j] for j in range(self.n)) for l in range(m)
        )
        return LineBundle(m, K, theta, self.beta.pullback(rows))

    def __repr__(self):
        return f"LineBundle(T^{self.n}, K={self.K}, theta={self.theta})"


class DiagBundle:
    """Diagonal direct sum of line bundles; rank equals the line count."""

    __slots__ = ("n", "lines", "_character")

    def __init__(self, lines: Sequence[LineBundle]):
        lines = tuple(lines)
        if not lines:
            raise ValueError("a bundle needs at least one line")
        self.n = lines[0].n
        if any(line.n != self.n for line in lines):
            raise ValueError("all lines must share the torus dimension")
        self.lines = lines
        self._character = None

    @property
    def rank(self) -> int:
        return len(self.lines)

    @classmethod
    def of(cls, *lines: LineBundle) -> "DiagBundle":
        return cls(lines)

    @classmethod
    def trivial(cls, n: int, rank: int = 1) -> "DiagBundle":
        return cls([LineBundle.flat(n) for _ in range(rank)])

    def direct_sum(self, other: "DiagBundle") -> "DiagBundle":
        if self.n != other.n:
            raise ValueError("direct sum needs equal dimensions")
        return DiagBundle(self.lines + other.lines)

    def curvature_forms(self) -> list[TorusForm]:
        return [line.curvature() for line in self.lines]

    def chern_character(self) -> EvenForm:
        """Exponential character form: rank in degree 0, sum of F^k/k! above."""
        if self._character is not None:
            return self._character
        parts: dict[int, TorusForm] = {0: TorusForm.const(self.n, self.rank)}
        for line in self.lines:
            F = line.curvature()
            power = F
            k = 1
            while not power.is_zero() and 2 * k <= self.n:
                contribution = power * Fraction(1, factorial(k))
                parts[2 * k] = parts.get(2 * k, TorusForm.zero(self.n)) + contribution
                k += 1
                power = power.wedge(F)
        parts = {d: f for d, f in parts.items() if not f.is_zero()}
        self._character = EvenForm(self.n, parts)
        return self._character

    def elementary_symmetric_curvature(self, i: int) -> TorusForm:
        """The i'th elementary symmetric polynomial of the line curvatures."""
        if i < 0:
            raise ValueError("index must be >= 0")
        if i == 0:
            return TorusForm.const(self.n, 1)
        total = TorusForm.zero(self.n)
        forms = self.curvature_forms()
        for subset in combinations(range(self.rank), i):
            prod = forms[subset[0]]
            for pos in subset[1:]:
                prod = prod.wedge(forms[pos])
                if prod.is_zero():
                    break
            total = total + prod
        return total

    def chern_form(self, i: int) -> TorusForm:
        """Degree-2i Chern form, computed along two routes and compared.

        Evaluates the universal polynomial on the character form and the
        elementary symmetric polynomial of the line curvatures; a
        disagreement signals a defect and raises.
        """
        if i < 1:
            raise ValueError("index must be >= 1")
        if 2 * i > self.n:
            raise ValueError(f"no {2 * i}-forms on T^{self.n}")
        via_character = chern_transform(self.chern_character(), i)
        via_roots = self.elementary_symmetric_curvature(i)
        if via_character != via_roots:
            raise ArithmeticError(
                f"chern_form route disagreement at i={i}: "
                f"{via_character.to_text()} vs {via_roots.to_text()}"
            )
        return via_roots

    def external_product(self, other: "DiagBundle") -> "DiagBundle":
        """Pairwise external tensor products on the product torus."""
        m, n = self.n, other.n
        left = [[1 if r == s else 0 for s in range(m)] for r in range(m)]
        left_rows = [row + [0] * n for row in left]
        right_rows = [[0] * m + [1 if r == s else 0 for s in range(n)]
                      for r in range(n)]
        lines = []
        for a in self.lines:
            a_pulled = a.pullback(left_rows)
            for b in other.lines:
                lines.append(a_pulled.tensor(b.pullback(right_rows)))
        return DiagBundle(lines)

    def pullback(self, matrix: Sequence[Sequence[int]]) -> "DiagBundle":
        return DiagBundle([line.pullback(matrix) for line in self.lines])

    def __repr__(self):
        return f"DiagBundle(T^{self.n}, rank={self.rank})"


class OddKCycle:
    """Diagonal unitary on T^n: winding vectors plus phase functions.

    Each component stands for the unitary exp(2*pi*i*(<m, x> + phi))
    with an integer winding vector m and a real phase phi that has no
    constant Fourier mode and vanishes at the basepoint.
    """

    __slots__ = ("n", "components")

    def __init__(self, n: int, components: Sequence[tuple]):
        self.n = n
        comps = []
        for winding, phase in components:
            winding = tuple(int(v) for v in winding)
            if len(winding) != n:
                raise ValueError(f"winding vector must have length {n}")
            if phase is None:
                phase = TorusForm.zero(n)
            if phase.n != n or phase.has_t:
                raise ValueError("phase lives on the wrong space")
            if phase.degrees() not in (set(), {0}):
                raise ValueError("phase must be a function")
            if not phase.is_real():
                raise ValueError("phase must be real")
            if any(not any(freq) for (_, freq, _) in phase.terms):
                raise ValueError("phase must have no constant Fourier mode")
            at_zero = sum((c for c in phase.terms.values()), GaussRat())
            if at_zero:
                raise ValueError("phase must vanish at the basepoint")
            comps.append((winding, phase))
        self.components = tuple(comps)

    @classmethod
    def winding(cls, n: int, vector: Sequence[int]) -> "OddKCycle":
        return cls(n, [(tuple(vector), TorusForm.zero(n))])

    def odd_chern_form(self) -> TorusForm:
        """Degree-1 form sum_j (<m_j, dx> + d phi_j)."""
        total = TorusForm.zero(self.n)
        for winding, phase in self.components:
            for l, m_l in enumerate(winding, start=1):
                if m_l:
                    total = total + TorusForm.dx(self.n, l) * m_l
            total = total + phase.d()
        return total

    def suspend(self) -> tuple[DiagBundle, TorusForm]:
        """Realize the cycle on the suspended torus T^(1+n).

        Coordinate 1 of the result is the suspension circle; each
        component becomes a clutching line bundle whose curvature matrix
        couples the circle to the winding vector, and all phase data
        moves into a global correction form.  The sign of the correction
        is pinned by the identity

            int_circle(curvature of (bundle, correction)) = odd Chern form.
        """
        N = self.n + 1
        lines = []
        correction = TorusForm.zero(N)
        for winding, phase in self.components:
            K = [[0] * N for _ in range(N)]
            for l, m_l in enumerate(winding, start=1):
                K[0][l] = m_l
                K[l][0] = -m_l
            lines.append(LineBundle(N, K))
            for (m, freq, idx), coeff in phase.terms.items():
                term = TorusForm.single(N, -coeff, freq=(0,) + freq, idx=(1,))
                correction = correction + term
        return DiagBundle(lines), correction

    def __repr__(self):
        return f"OddKCycle(T^{self.n}, {len(self.components)} components)"
