"""Hankel-type determinants of deformed polynomials and their positivity."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exact import ZERO, ExactScalar, I, NotRealError, as_scalar
from .gauss import integrate_gaussian
from .hermite import GMatrix, deformed_sum
from .polyring import SparsePoly
from .report import ScaledExact

__all__ = [
    "HankelSpec",
    "ExactMatrix",
    "hankel_matrix",
    "exact_determinant",
    "positivity_check",
    "oracle_delta",
]


@dataclass(frozen=True)
class HankelSpec:
    g: GMatrix
    N: int
    s: int
    x0: Fraction
    y0: Fraction

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError("N must be at least 1")
        if self.s < 0:
            raise ValueError("s must be nonnegative")
        object.__setattr__(self, "x0", Fraction(self.x0))
        object.__setattr__(self, "y0", Fraction(self.y0))

    @property
    def z(self) -> ExactScalar:
        return ExactScalar(self.x0, self.y0)

    def validate(self) -> None:
        if not self.g.is_hermitian_pair():
            raise ValueError(f"g = {self.g} violates g12 = conj(g21), g22 = conj(g11)")


@dataclass(frozen=True)
class ExactMatrix:
    """Square matrix whose entries all carry the same power of pi."""

    entries: tuple[tuple[ExactScalar, ...], ...]
    pi_power: int = 0

    @property
    def size(self) -> int:
        return len(self.entries)

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(tuple(zip(*self.entries)), self.pi_power)


def hankel_matrix(spec: HankelSpec) -> ExactMatrix:
    """Entries (-i)^(m+n+2s) pi H^g_{m+s,n+s}(iz, i conj z), 0 <= m, n < N."""
    spec.validate()
    z = spec.z
    point = {"z1": I * z, "z2": I * z.conjugate()}
    minus_i = -I
    rows = []
    for m in range(spec.N):
        row = []
        for n in range(spec.N):
            val = deformed_sum(spec.g, m + spec.s, n + spec.s).evaluate(point)
            row.append(minus_i ** (m + n + 2 * spec.s) * val)
        rows.append(tuple(row))
    return ExactMatrix(tuple(rows), 1)


def exact_determinant(M: ExactMatrix) -> ScaledExact:
    """Gaussian elimination over Q(i, sqrt2), first nonzero pivot in each column."""
    n = M.size
    rows = [list(r) for r in M.entries]
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    det = ExactScalar(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return ScaledExact(ZERO)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        p = rows[col][col]
        det = det * p
        inv = p.inverse()
        for r in range(col + 1, n):
            f = rows[r][col]
            if not f:
                continue
            f = f * inv
            rows[r] = [a - f * b if j > col else ZERO for j, (a, b) in enumerate(zip(rows[r], rows[col]))]
    return ScaledExact(det, n * M.pi_power)


def positivity_check(spec: HankelSpec) -> tuple[ScaledExact, bool]:
    value = exact_determinant(hankel_matrix(spec))
    if not value.coeff.is_real():
        raise NotRealError(f"determinant {value} has a nonzero imaginary part")
    return value, value.coeff.sign() > 0


def oracle_delta(spec: HankelSpec) -> ScaledExact:
    """Brute-force integral of prod |U_k|^(2s) prod_{j<k} |U_j - U_k|^2 over N shifted Gaussians, / N!."""
    spec.validate()
    if spec.N not in (1, 2) or spec.s not in (0, 1):
        raise ValueError("oracle_delta supports N in {1, 2} and s in {0, 1}")
    g = spec.g
    names = [("r1", "s1"), ("r2", "s2")][: spec.N]
    us = []
    for rn, sn in names:
        r, s = SparsePoly.var(rn), SparsePoly.var(sn)
        zeta, zeta_bar = r + s.scale(I), r - s.scale(I)
        us.append(zeta.scale(g.g11) + zeta_bar.scale(g.g21))

    def abs2(p: SparsePoly) -> SparsePoly:
        # integration variables are real, so conjugating coefficients conjugates the value
        return p * p.conjugate()

    integrand = SparsePoly.constant(1)
    for u in us:
        integrand = integrand * abs2(u) ** spec.s
    for j in range(spec.N):
        for k in range(j + 1, spec.N):
            integrand = integrand * abs2(us[j] - us[k])
    shift = {}
    x0, y0 = as_scalar(spec.x0), as_scalar(spec.y0)
    for rn, sn in names:
        shift[rn] = SparsePoly.var(rn) + x0
        shift[sn] = SparsePoly.var(sn) + y0
    integrand = integrand.substitute(shift)
    variables = [v for pair in names for v in pair]
    value = integrate_gaussian(integrand, variables, normalized=False)
    return value / factorial(spec.N)
