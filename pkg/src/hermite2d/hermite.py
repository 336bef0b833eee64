"""Real, complex and deformed complex Hermite polynomials.

Every deformed family member can be built several independent ways
(Rodrigues operator, binomial double sum, operator sandwich, basis-change
matrix, generating-function series); agreement between the routes is the
main correctness check of this package.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exact import ONE, ZERO, ExactScalar, I, as_scalar
from .polyring import AffineMap, SparsePoly, series_exp

__all__ = [
    "GMatrix",
    "DeformationMatrix",
    "TEST_G_SET",
    "G_SET_VERSION",
    "real_hermite",
    "real_hermite_rodrigues",
    "complex_hermite",
    "complex_hermite_operator",
    "deformed_rodrigues",
    "deformed_sum",
    "sandwich_route",
    "deformation_matrix",
    "deformed_via_matrix",
    "gf_table",
    "real_basis_matrix",
    "complex_to_real_expand",
    "hermite_at_zero",
    "diagonal_poly",
]

Z1 = SparsePoly.var("z1")
Z2 = SparsePoly.var("z2")
X = SparsePoly.var("x")
Y = SparsePoly.var("y")


@dataclass(frozen=True)
class GMatrix:
    """2x2 deformation matrix ``((g11, g12), (g21, g22))``."""

    g11: ExactScalar
    g12: ExactScalar
    g21: ExactScalar
    g22: ExactScalar

    def __post_init__(self) -> None:
        for name in ("g11", "g12", "g21", "g22"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))

    @classmethod
    def identity(cls) -> GMatrix:
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def swap(cls) -> GMatrix:
        return cls(ZERO, ONE, ONE, ZERO)

    @classmethod
    def diag(cls, a, b) -> GMatrix:
        return cls(a, ZERO, ZERO, b)

    @classmethod
    def parse(cls, text: str) -> GMatrix:
        """Parse the row-major form ``"a,b;c,d"``."""
        rows = text.split(";")
        if len(rows) != 2:
            raise ValueError(f"g matrix {text!r}: expected two rows separated by ';'")
        entries = []
        for row in rows:
            cols = row.split(",")
            if len(cols) != 2:
                raise ValueError(f"g matrix {text!r}: expected two entries in row {row!r}")
            entries.extend(as_scalar(c.strip()) for c in cols)
        return cls(*entries)

    def rows(self) -> tuple[tuple[ExactScalar, ExactScalar], tuple[ExactScalar, ExactScalar]]:
        return ((self.g11, self.g12), (self.g21, self.g22))

    def __str__(self) -> str:
        return f"{self.g11},{self.g12};{self.g21},{self.g22}"

    def to_json_obj(self) -> list[list[str]]:
        return [[str(self.g11), str(self.g12)], [str(self.g21), str(self.g22)]]

    def det(self) -> ExactScalar:
        return self.g11 * self.g22 - self.g12 * self.g21

    def adjoint(self) -> GMatrix:
        """Conjugate transpose."""
        return GMatrix(self.g11.conjugate(), self.g21.conjugate(), self.g12.conjugate(), self.g22.conjugate())

    def inverse(self) -> GMatrix:
        d = self.det()
        if not d:
            raise ZeroDivisionError(f"g matrix {self} is singular")
        inv = d.inverse()
        return GMatrix(self.g22 * inv, -self.g12 * inv, -self.g21 * inv, self.g11 * inv)

    def __matmul__(self, other: GMatrix) -> GMatrix:
        a, b = self, other
        return GMatrix(
            a.g11 * b.g11 + a.g12 * b.g21,
            a.g11 * b.g12 + a.g12 * b.g22,
            a.g21 * b.g11 + a.g22 * b.g21,
            a.g21 * b.g12 + a.g22 * b.g22,
        )

    def is_hermitian_pair(self) -> bool:
        return self.g12 == self.g21.conjugate() and self.g22 == self.g11.conjugate()


G_SET_VERSION = "1"

# Fixed matrices for the route-equality and orthogonality sweeps. Do not
# reorder or edit without bumping G_SET_VERSION.
TEST_G_SET: tuple[tuple[str, GMatrix], ...] = (
    ("identity", GMatrix.identity()),
    ("swap", GMatrix.swap()),
    ("diagonal", GMatrix.diag(2, 3)),
    ("upper", GMatrix(1, 1, 0, 1)),
    ("hermitian-pair", GMatrix(ExactScalar(1, 1), ExactScalar(Fraction(1, 2), -1), ExactScalar(Fraction(1, 2), 1), ExactScalar(1, -1))),
)


@dataclass(frozen=True)
class DeformationMatrix:
    """Square basis-change matrix of size L+1, indexed ``entries[r][k]``."""

    L: int
    entries: tuple[tuple[ExactScalar, ...], ...]
    kind: str  # "M(g,L)" or "M(L)"
    g: GMatrix | None = None

    def __post_init__(self) -> None:
        n = self.L + 1
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError(f"matrix must be {n}x{n}")

    def __getitem__(self, rk: tuple[int, int]) -> ExactScalar:
        r, k = rk
        return self.entries[r][k]

    def column(self, k: int) -> list[ExactScalar]:
        return [row[k] for row in self.entries]

    def to_json_obj(self) -> dict:
        obj: dict = {"kind": self.kind, "L": self.L}
        if self.g is not None:
            obj["g"] = self.g.to_json_obj()
        obj["entries"] = [[str(c) for c in row] for row in self.entries]
        return obj


# ---- real Hermite -----------------------------------------------------


@lru_cache(maxsize=None)
def real_hermite(n: int, var: str = "x") -> SparsePoly:
    """Physicists' Hermite polynomial via H_{n+1} = 2x H_n - 2n H_{n-1}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    v = SparsePoly.var(var)
    prev, cur = SparsePoly.constant(1), v.scale(2)
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, v * cur * 2 - prev.scale(2 * k)
    return cur


def real_hermite_rodrigues(n: int, var: str = "x") -> SparsePoly:
    """Hermite polynomial from the Rodrigues form: n applications of Q -> 2xQ - Q'."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    v = SparsePoly.var(var)
    q = SparsePoly.constant(1)
    for _ in range(n):
        q = v * q * 2 - q.diff(var)
    return q


# ---- undeformed complex Hermite ----------------------------------------


@lru_cache(maxsize=None)
def complex_hermite(m: int, n: int) -> SparsePoly:
    """H_{m,n}(z1, z2) from its explicit finite sum."""
    if m < 0 or n < 0:
        raise ValueError("indices must be nonnegative")
    terms = {}
    for k in range(min(m, n) + 1):
        c = (-1) ** k * factorial(k) * comb(m, k) * comb(n, k)
        e = (m - k, n - k) + (0,) * 9
        terms[e] = ExactScalar(c)
    return SparsePoly(terms)


def complex_hermite_operator(m: int, n: int) -> SparsePoly:
    """H_{m,n} by applying (z2 - d/dz1) n times and then (z1 - d/dz2) m times to 1."""
    if m < 0 or n < 0:
        raise ValueError("indices must be nonnegative")
    p = SparsePoly.constant(1)
    for _ in range(n):
        p = Z2 * p - p.diff("z1")
    for _ in range(m):
        p = Z1 * p - p.diff("z2")
    return p


def hermite_at_zero(m: int, n: int) -> ExactScalar:
    return complex_hermite(m, n).constant_term()


# ---- deformed family ---------------------------------------------------


def _linear_forms(g: GMatrix) -> tuple[SparsePoly, SparsePoly]:
    first = Z1.scale(g.g11) + Z2.scale(g.g21)
    second = Z1.scale(g.g12) + Z2.scale(g.g22)
    return first, second


def deformed_rodrigues(g: GMatrix, m: int, n: int) -> SparsePoly:
    """exp(-d1 d2) applied to (g11 z1 + g21 z2)^m (g12 z1 + g22 z2)^n."""
    first, second = _linear_forms(g)
    return (first ** m * second ** n).mixed_exp(-1, "z1", "z2")


@lru_cache(maxsize=None)
def deformed_sum(g: GMatrix, m: int, n: int) -> SparsePoly:
    """Deformed polynomial as a binomial double sum over undeformed ones."""
    if m < 0 or n < 0:
        raise ValueError("indices must be nonnegative")
    out = SparsePoly()
    for j in range(m + 1):
        a = comb(m, j) * g.g11 ** j * g.g21 ** (m - j)
        if not a:
            continue
        for k in range(n + 1):
            c = a * comb(n, k) * g.g12 ** k * g.g22 ** (n - k)
            if c:
                out = out + complex_hermite(j + k, m + n - j - k).scale(c)
    return out


def sandwich_route(g: GMatrix, m: int, n: int) -> SparsePoly:
    """exp(-d1 d2) S_g exp(d1 d2) H_{m,n}, with S_g the linear change of variables."""
    lifted = complex_hermite(m, n).mixed_exp(1, "z1", "z2")
    first, second = _linear_forms(g)
    moved = AffineMap.from_polys({"z1": first, "z2": second})(lifted)
    return moved.mixed_exp(-1, "z1", "z2")


@lru_cache(maxsize=None)
def deformation_matrix(g: GMatrix, L: int) -> DeformationMatrix:
    """M(g, L): column k holds the undeformed coordinates of H^g_{k, L-k}."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    rows = []
    for r in range(L + 1):
        row = []
        for k in range(L + 1):
            total = ZERO
            for q in range(max(0, r + k - L), min(r, k) + 1):
                # ExactScalar ** 0 is ONE, which gives 0**0 = 1
                total = total + (
                    comb(k, q) * comb(L - k, r - q)
                    * g.g11 ** q * g.g21 ** (k - q) * g.g12 ** (r - q) * g.g22 ** (L - k + q - r)
                )
            row.append(total)
        rows.append(tuple(row))
    return DeformationMatrix(L, tuple(rows), "M(g,L)", g)


def deformed_via_matrix(g: GMatrix, k: int, L: int) -> SparsePoly:
    if not 0 <= k <= L:
        raise IndexError(f"need 0 <= k <= L, got k={k}, L={L}")
    M = deformation_matrix(g, L)
    out = SparsePoly()
    for r in range(L + 1):
        out = out + complex_hermite(r, L - r).scale(M[r, k])
    return out


def gf_table(g: GMatrix, D: int) -> dict[tuple[int, int], SparsePoly]:
    """Read H^g_{m,n}, m+n <= D, off the expanded exponential generating function."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    u, v = SparsePoly.var("u"), SparsePoly.var("v")
    a = u.scale(g.g11) + v.scale(g.g12)
    b = u.scale(g.g21) + v.scale(g.g22)
    exponent = a * Z1 + b * Z2 - a * b
    series = series_exp(exponent, ("u", "v"), D)
    table = {}
    for m in range(D + 1):
        for n in range(D + 1 - m):
            coeff = series.coefficient_of({"u": m, "v": n})
            table[(m, n)] = coeff.scale(factorial(m) * factorial(n))
    return table


# ---- real basis --------------------------------------------------------


@lru_cache(maxsize=None)
def real_basis_matrix(L: int) -> DeformationMatrix:
    """M(L): column m holds the H_r(x) H_{L-r}(y) coordinates of H_{m, L-m}(z, conj z)."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    scale = Fraction(1, 2 ** L)
    rows = []
    for r in range(L + 1):
        row = []
        for m in range(L + 1):
            s = 0
            for k in range(max(0, r + m - L), min(r, m) + 1):
                s += (-1) ** (L - m - r + k) * comb(m, k) * comb(L - m, r - k)
            row.append(ExactScalar(s * scale) * I ** (L - r))
        rows.append(tuple(row))
    return DeformationMatrix(L, tuple(rows), "M(L)")


def diagonal_poly(p: SparsePoly) -> SparsePoly:
    """Substitute z1 = x + iy, z2 = x - iy."""
    return p.substitute({"z1": X + Y.scale(I), "z2": X - Y.scale(I)})


def _hermite_basis_solve(p: SparsePoly) -> dict[tuple[int, int], ExactScalar]:
    # descending-degree elimination against H_a(x) H_b(y), leading coefficient 2^(a+b)
    remaining = p
    out: dict[tuple[int, int], ExactScalar] = {}
    ix, iy = 4, 5
    while remaining:
        e, c = remaining.leading_term()
        if any(k for j, k in enumerate(e) if j not in (ix, iy)):
            raise ValueError("expected a polynomial in x and y only")
        a, b = e[ix], e[iy]
        w = c * Fraction(1, 2 ** (a + b))
        out[(a, b)] = w
        remaining = remaining - (real_hermite(a, "x") * real_hermite(b, "y")).scale(w)
    return out


def complex_to_real_expand(m: int, n: int) -> list[ExactScalar]:
    """Coordinates of H_{m,n}(x+iy, x-iy) on H_r(x) H_{L-r}(y), r = 0..L."""
    L = m + n
    coords = _hermite_basis_solve(diagonal_poly(complex_hermite(m, n)))
    stray = [ab for ab in coords if sum(ab) != L]
    if stray:
        raise ArithmeticError(f"H_{{{m},{n}}} has components outside degree {L}: {stray}")
    return [coords.get((r, L - r), ZERO) for r in range(L + 1)]
