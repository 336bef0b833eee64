"""Exact Gaussian integrals of polynomials and the integral identities built on them.

All integrands here are polynomial times Gaussian, so the moment method
gives exact values; pi is carried symbolically in :class:`ScaledExact`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .exact import SQRT2, ZERO, ExactScalar, GaussianRational, I, as_scalar
from .hermite import GMatrix, complex_hermite, deformation_matrix, deformed_sum, diagonal_poly, real_hermite
from .polyring import SparsePoly, var_index
from .report import ScaledExact, VerificationReport

__all__ = [
    "gaussian_moment",
    "integrate_gaussian",
    "diagonal_conjugate",
    "OrthResult",
    "orthogonality_condition",
    "verify_orthogonality",
    "orthogonality_report",
    "moment_rep_rhs",
    "verify_moment_rep",
    "wigner_rhs",
    "verify_wigner",
    "verify_wigner_deformed",
    "translation_lhs",
    "translation_rhs",
    "verify_translation",
]


@lru_cache(maxsize=None)
def gaussian_moment(k: int) -> Fraction:
    """Integral of t**k exp(-t**2) dt / sqrt(pi)."""
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    if k % 2:
        return Fraction(0)
    p = k // 2
    return Fraction(factorial(2 * p), 4 ** p * factorial(p))


def integrate_gaussian(p: SparsePoly, variables: Sequence[str], normalized: bool = True) -> ScaledExact:
    """Integrate p against exp(-sum v**2) over the listed variables.

    With ``normalized`` each variable's measure is divided by sqrt(pi).
    Otherwise the variable count must be even so the pi power is integral.
    """
    if not normalized and len(variables) % 2:
        raise ValueError("unnormalized integration needs an even number of variables")
    idx = [var_index(v) for v in variables]
    if len(set(idx)) != len(idx):
        raise ValueError("integration variables must be distinct")
    foreign = p.variables() - set(variables)
    if foreign:
        raise ValueError(f"integrand has unsubstituted variables: {sorted(foreign)}")
    total = ZERO
    for e, c in p.items():
        w = Fraction(1)
        for k in idx:
            w *= gaussian_moment(e[k])
            if not w:
                break
        if w:
            total = total + c * w
    return ScaledExact(total, 0 if normalized else len(variables) // 2)


def diagonal_conjugate(p: SparsePoly) -> SparsePoly:
    """Polynomial whose diagonal values are the conjugates of p(z, conj z)."""
    foreign = p.variables() - {"z1", "z2"}
    if foreign:
        raise ValueError(f"diagonal_conjugate expects only z1, z2; found {sorted(foreign)}")
    return p.conjugate().swap_variables("z1", "z2")


# ---- orthogonality ------------------------------------------------------


@dataclass(frozen=True)
class OrthResult:
    is_orthogonal_family: bool
    lambda1: ExactScalar | None = None
    lambda2: ExactScalar | None = None


def orthogonality_condition(g: GMatrix, h: GMatrix) -> OrthResult:
    """The families for g and h are orthogonal iff h* g is diagonal."""
    prod = h.adjoint() @ g
    if prod.g12 or prod.g21:
        return OrthResult(False)
    return OrthResult(True, prod.g11, prod.g22)


@lru_cache(maxsize=4096)
def _diag_deformed(g: GMatrix, m: int, n: int) -> SparsePoly:
    return diagonal_poly(deformed_sum(g, m, n))


@lru_cache(maxsize=4096)
def _diag_conj_deformed(g: GMatrix, m: int, n: int) -> SparsePoly:
    return diagonal_poly(diagonal_conjugate(deformed_sum(g, m, n)))


def verify_orthogonality(g: GMatrix, h: GMatrix, m: int, n: int, p: int, q: int) -> ScaledExact:
    """Integral of H^g_{m,n} conj(H^h_{p,q}) against exp(-|z|^2) dx dy / pi."""
    integrand = _diag_deformed(g, m, n) * _diag_conj_deformed(h, p, q)
    return integrate_gaussian(integrand, ("x", "y"), normalized=True)


def orthogonality_report(g: GMatrix, h: GMatrix, m: int, n: int, p: int, q: int, params: dict) -> VerificationReport:
    cond = orthogonality_condition(g, h)
    if not cond.is_orthogonal_family:
        raise ValueError("expected value is only defined when h* g is diagonal")
    lhs = verify_orthogonality(g, h, m, n, p, q)
    rhs = ZERO
    if (m, n) == (p, q):
        rhs = factorial(m) * factorial(n) * cond.lambda1 ** m * cond.lambda2 ** n
    return VerificationReport.compare("orthogonality", params, lhs, ScaledExact(rhs))


# ---- moment representation ---------------------------------------------


def moment_rep_rhs(g: GMatrix, m: int, n: int, x0, y0) -> ExactScalar:
    """i^(m+n) times the normalized Gaussian average of the linear-form product around z."""
    r, s = SparsePoly.var("r1"), SparsePoly.var("s1")
    zeta = r + s.scale(I)
    zeta_bar = r - s.scale(I)
    first = zeta.scale(g.g11) + zeta_bar.scale(g.g21)
    second = zeta.scale(g.g12) + zeta_bar.scale(g.g22)
    integrand = first ** m * second ** n
    shifted = integrand.substitute({"r1": r + as_scalar(x0), "s1": s + as_scalar(y0)})
    value = integrate_gaussian(shifted, ("r1", "s1"), normalized=True)
    return value.coeff * I ** (m + n)


def verify_moment_rep(g: GMatrix, m: int, n: int, x0, y0, params: dict | None = None) -> VerificationReport:
    x0, y0 = as_scalar(x0), as_scalar(y0)
    z = x0 + I * y0
    zb = x0 - I * y0
    lhs = deformed_sum(g, m, n).evaluate({"z1": I * z, "z2": I * zb})
    rhs = moment_rep_rhs(g, m, n, x0, y0)
    if params is None:
        params = {"g": str(g), "m": m, "n": n, "x0": str(x0), "y0": str(y0)}
    return VerificationReport.compare("moment-representation", params, lhs, rhs)


# ---- real-Hermite integral representation ---------------------------------


def _as_point(z) -> ExactScalar:
    if isinstance(z, GaussianRational):
        return z.to_scalar()
    return as_scalar(z)


def wigner_rhs(m: int, n: int, a, z) -> ExactScalar:
    """(-1)^n 2^{-(m+n)/2} * integral of exp(-(u+a)^2) H_m(u+b) H_n(u+c) du/sqrt(pi).

    b = a + z/sqrt2 and c = a - conj(z)/sqrt2.  The substitution u = t - a
    turns the weight into exp(-t^2).
    """
    a, z = as_scalar(a), _as_point(z)
    inv_sqrt2 = SQRT2.inverse()
    b = a + z * inv_sqrt2
    c = a - z.conjugate() * inv_sqrt2
    t = SparsePoly.var("t")
    hm = real_hermite(m).substitute({"x": t + (-a + b)})
    hn = real_hermite(n).substitute({"x": t + (-a + c)})
    integral = integrate_gaussian(hm * hn, ("t",), normalized=True).coeff
    return (-1) ** n * integral * SQRT2 ** (-(m + n))


def verify_wigner(m: int, n: int, a, z, params: dict | None = None) -> VerificationReport:
    z = _as_point(z)
    rhs = wigner_rhs(m, n, a, z)
    lhs = complex_hermite(m, n).evaluate({"z1": z, "z2": z.conjugate()})
    if params is None:
        params = {"m": m, "n": n, "a": str(as_scalar(a)), "z": str(z)}
    return VerificationReport.compare(
        "wigner-integral", params, lhs, rhs, checks={"radical_zero": not rhs.has_radical()}
    )


def verify_wigner_deformed(g: GMatrix, k: int, L: int, a, z, params: dict | None = None) -> VerificationReport:
    """Deformed variant: sum_r M(g,L)_{rk} times the term-wise integral for (r, L-r)."""
    if not 0 <= k <= L:
        raise IndexError(f"need 0 <= k <= L, got k={k}, L={L}")
    z = _as_point(z)
    M = deformation_matrix(g, L)
    rhs = ZERO
    radical_free = True
    for r in range(L + 1):
        if not M[r, k]:
            continue
        term = wigner_rhs(r, L - r, a, z)
        radical_free = radical_free and not term.has_radical()
        rhs = rhs + M[r, k] * term
    lhs = deformed_sum(g, k, L - k).evaluate({"z1": z, "z2": z.conjugate()})
    if params is None:
        params = {"g": str(g), "k": k, "L": L, "a": str(as_scalar(a)), "z": str(z)}
    return VerificationReport.compare(
        "wigner-integral-deformed", params, lhs, rhs, checks={"radical_zero": radical_free}
    )


# ---- translation identity --------------------------------------------------


def translation_lhs(m: int, n: int, p: int, q: int, a) -> ScaledExact:
    """Integral of H_{m,n}(z+a, conj(z+a)) H_{p,q}(z-a, conj(z-a)) exp(-|z|^2) dx dy."""
    a = _as_point(a)
    x, y = SparsePoly.var("x"), SparsePoly.var("y")
    z, zb = x + y.scale(I), x - y.scale(I)
    plus = complex_hermite(m, n).substitute({"z1": z + a, "z2": zb + a.conjugate()})
    minus = complex_hermite(p, q).substitute({"z1": z - a, "z2": zb - a.conjugate()})
    return integrate_gaussian(plus * minus, ("x", "y"), normalized=False)


def translation_rhs(m: int, n: int, p: int, q: int, a, transpose_second: bool = False) -> ScaledExact:
    """(-1)^(p+q) pi H_{m,q}(a, conj a) H_{p,n}(a, conj a).

    ``transpose_second`` uses H_{n,p} for the second factor instead.  The
    generating function gives H_{p,n}; the two differ unless H_{p,n}(a, conj a)
    is real, so the transposed form only holds for special a (e.g. real a).
    """
    a = _as_point(a)
    pt = {"z1": a, "z2": a.conjugate()}
    first = complex_hermite(m, q).evaluate(pt)
    second = (complex_hermite(n, p) if transpose_second else complex_hermite(p, n)).evaluate(pt)
    return ScaledExact((-1) ** (p + q) * first * second, 1)


def verify_translation(
    m: int, n: int, p: int, q: int, a, params: dict | None = None, transpose_second: bool = False
) -> VerificationReport:
    lhs = translation_lhs(m, n, p, q, a)
    rhs = translation_rhs(m, n, p, q, a, transpose_second)
    if params is None:
        params = {"m": m, "n": n, "p": p, "q": q, "a": str(_as_point(a))}
    return VerificationReport.compare("translation", params, lhs, rhs)

