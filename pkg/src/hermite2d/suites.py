"""Named verification suites driven by the ``verify`` command.

Each suite expands a :class:`RunConfig` into a deterministic list of
picklable cases; :func:`run_case` turns one case into report records.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Sequence

from .determinants import HankelSpec, oracle_delta, positivity_check
from .exact import ZERO, ExactScalar, as_scalar
from .gauss import (
    orthogonality_condition,
    orthogonality_report,
    verify_moment_rep,
    verify_orthogonality,
    verify_translation,
    verify_wigner,
    verify_wigner_deformed,
)
from .hermite import (
    TEST_G_SET,
    GMatrix,
    complex_hermite,
    complex_hermite_operator,
    complex_to_real_expand,
    deformed_rodrigues,
    deformed_sum,
    deformed_via_matrix,
    gf_table,
    real_basis_matrix,
    real_hermite,
    real_hermite_rodrigues,
    sandwich_route,
)
from .report import ScaledExact, VerificationReport

__all__ = ["SUITES", "SUITE_DEFAULTS", "RunConfig", "build_cases", "run_case", "run_suite"]

DEFAULT_POINTS: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction(0), Fraction(0)),
    (Fraction(1, 2), Fraction(1, 3)),
    (Fraction(-2), Fraction(3, 5)),
)
DETERMINANT_POINTS: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction(0), Fraction(0)),
    (Fraction(1, 2), Fraction(1, 3)),
    (Fraction(-1), Fraction(2)),
    (Fraction(3, 4), Fraction(-5, 7)),
    (Fraction(2), Fraction(0)),
)
WIGNER_A = ("0", "1/2", "1/3i")
WIGNER_Z = ("1+i", "1/3+1/5i", "-2+1/2i")
TRANSLATION_A = ("0", "1", "1+i", "1/2-1/3i")
WITNESS_H = GMatrix(1, 1, 0, 1)

# Index bound used by each suite when no max degree is configured.
SUITE_DEFAULTS: dict[str, int] = {
    "gf": 6,
    "rodrigues-routes": 6,
    "swap": 6,
    "orthogonality": 5,
    "orthogonality-condition": 2,
    "moment-rep": 4,
    "wigner": 5,
    "wigner-deformed": 4,
    "translation": 3,
    "real-basis": 8,
    "gram": 8,
    "determinants": 4,
    "determinant-oracle": 2,
    "real-hermite": 12,
    "at-zero": 8,
}
SUITES: tuple[str, ...] = tuple(SUITE_DEFAULTS)


@dataclass
class RunConfig:
    max_degree: int | None = None
    g_set: Sequence[tuple[str, GMatrix]] = TEST_G_SET
    points: Sequence[tuple[Fraction, Fraction]] | None = None
    det_N: int = 4
    det_s: int = 2
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.max_degree is not None and self.max_degree < 0:
            raise ValueError(f"max degree must be >= 0, got {self.max_degree}")
        if self.det_N < 1 or self.det_s < 0:
            raise ValueError("determinant sweep needs N >= 1 and s >= 0")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    def bound(self, suite: str) -> int:
        return SUITE_DEFAULTS[suite] if self.max_degree is None else self.max_degree


def _pt(p: tuple[Fraction, Fraction]) -> str:
    return str(ExactScalar(p[0], p[1]))


def _hermitian(g_set) -> list[tuple[str, GMatrix]]:
    return [(name, g) for name, g in g_set if g.is_hermitian_pair()]


def build_cases(suite: str, cfg: RunConfig) -> list[tuple]:
    """Expand a suite into cases; every case is a tuple of plain values."""
    d = cfg.bound(suite)
    gs = [(name, str(g)) for name, g in cfg.g_set]
    rng = range(d + 1)
    if suite == "gf":
        return [(suite, name, g, d) for name, g in gs]
    if suite == "rodrigues-routes":
        return [(suite, name, g, m, n) for name, g in gs for m in rng for n in rng]
    if suite == "swap":
        return [(suite, m, n) for m in rng for n in rng]
    if suite == "orthogonality":
        cases = [(suite, "identity", str(GMatrix.identity()), "identity", m, n, d) for m in rng for n in rng]
        dg = d if cfg.max_degree is not None else d - 1
        for name, g in gs:
            cases += [(suite, name, g, "adjoint-inverse", m, n, dg) for m in range(dg + 1) for n in range(dg + 1)]
        return cases
    if suite == "orthogonality-condition":
        return [(suite, "condition", name, g) for name, g in gs] + [(suite, "witness", "identity", str(GMatrix.identity()), d)]
    if suite == "moment-rep":
        pts = cfg.points or DEFAULT_POINTS
        return [(suite, name, g, m, n, _pt(p)) for name, g in gs for m in rng for n in rng for p in pts]
    if suite == "wigner":
        return [(suite, m, n, a, z) for m in rng for n in rng for a in WIGNER_A for z in WIGNER_Z]
    if suite == "wigner-deformed":
        return [
            (suite, name, g, k, L, a, z)
            for name, g in gs
            for L in rng
            for k in range(L + 1)
            for a in WIGNER_A
            for z in WIGNER_Z
        ]
    if suite == "translation":
        return [(suite, m, n, p, q, a) for m in rng for n in rng for p in rng for q in rng for a in TRANSLATION_A]
    if suite in ("real-basis", "gram"):
        return [(suite, L) for L in rng]
    if suite == "determinants":
        pts = cfg.points or DETERMINANT_POINTS
        return [
            (suite, name, str(g), n_, s, _pt(p))
            for name, g in _hermitian(cfg.g_set)
            for n_ in range(1, cfg.det_N + 1)
            for s in range(cfg.det_s + 1)
            for p in pts
        ]
    if suite == "determinant-oracle":
        pts = cfg.points or DETERMINANT_POINTS
        return [
            (suite, name, str(g), n_, s, _pt(p))
            for name, g in _hermitian(cfg.g_set)
            for n_ in (1, 2)
            for s in (0, 1)
            for p in pts
        ]
    if suite == "real-hermite":
        return [(suite, n) for n in rng]
    if suite == "at-zero":
        return [(suite, m, n) for m in rng for n in rng]
    raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")


# ---- case runners -------------------------------------------------------


def _poly_report(identity: str, params: dict, lhs, rhs, checks: dict | None = None) -> VerificationReport:
    return VerificationReport.compare(identity, params, lhs, rhs, checks)


def _run_gf(name: str, g: str, d: int) -> list[VerificationReport]:
    gm = GMatrix.parse(g)
    table = gf_table(gm, 2 * d)
    out = []
    for m in range(d + 1):
        for n in range(d + 1):
            params = {"g_name": name, "g": g, "m": m, "n": n}
            out.append(_poly_report("generating-function", params, table[(m, n)], deformed_sum(gm, m, n)))
    return out


def _run_routes(name: str, g: str, m: int, n: int) -> list[VerificationReport]:
    gm = GMatrix.parse(g)
    ref = deformed_sum(gm, m, n)
    checks = {
        "sandwich": sandwich_route(gm, m, n) == ref,
        "matrix": deformed_via_matrix(gm, m, m + n) == ref,
    }
    if gm == GMatrix.identity():
        checks["explicit_sum"] = complex_hermite(m, n) == ref
        checks["creation_operator"] = complex_hermite_operator(m, n) == ref
    params = {"g_name": name, "g": g, "m": m, "n": n}
    return [_poly_report("construction-routes", params, deformed_rodrigues(gm, m, n), ref, checks)]


def _run_orth(name: str, g: str, hkind: str, m: int, n: int, d: int) -> list[VerificationReport]:
    gm = GMatrix.parse(g)
    h = gm if hkind == "identity" else gm.adjoint().inverse()
    out = []
    for p in range(d + 1):
        for q in range(d + 1):
            params = {"g_name": name, "g": g, "h": str(h), "m": m, "n": n, "p": p, "q": q}
            out.append(orthogonality_report(gm, h, m, n, p, q, params))
    return out


def _run_condition(kind: str, name: str, g: str, d: int = 2) -> list[VerificationReport]:
    gm = GMatrix.parse(g)
    if kind == "condition":
        h = gm.adjoint().inverse()
        cond = orthogonality_condition(gm, h)
        params = {"g_name": name, "g": g, "h": str(h)}
        return [
            VerificationReport.compare(
                "orthogonality-condition",
                params,
                "diagonal" if cond.is_orthogonal_family else "not diagonal",
                "diagonal",
                checks={"unit_lambdas": cond.is_orthogonal_family and cond.lambda1 == 1 and cond.lambda2 == 1},
            )
        ]
    h = WITNESS_H
    cond = orthogonality_condition(gm, h)
    nonzero = []
    for m in range(d + 1):
        for n in range(d + 1):
            for p in range(d + 1):
                for q in range(d + 1):
                    if (m, n) != (p, q):
                        v = verify_orthogonality(gm, h, m, n, p, q)
                        if not v.is_zero():
                            nonzero.append(((m, n, p, q), v))
    params = {"g": g, "h": str(h), "max_index": d}
    first = nonzero[0] if nonzero else None
    return [
        VerificationReport(
            "non-orthogonal-witness",
            params,
            "none" if first is None else f"{list(first[0])}: {first[1]}",
            "some cross term != 0",
            0,
            bool(nonzero) and not cond.is_orthogonal_family,
            {"nonzero_cross_terms": len(nonzero)},
        )
    ]


def _run_moment(name: str, g: str, m: int, n: int, point: str) -> list[VerificationReport]:
    gm = GMatrix.parse(g)
    z = as_scalar(point)
    x0, y0 = z.real_part, z.imag_part
    params = {"g_name": name, "g": g, "m": m, "n": n, "z": point}
    return [verify_moment_rep(gm, m, n, x0, y0, params)]


def _run_wigner(m: int, n: int, a: str, z: str) -> list[VerificationReport]:
    return [verify_wigner(m, n, as_scalar(a), as_scalar(z), {"m": m, "n": n, "a": a, "z": z})]


def _run_wigner_def(name: str, g: str, k: int, L: int, a: str, z: str) -> list[VerificationReport]:
    params = {"g_name": name, "g": g, "k": k, "L": L, "a": a, "z": z}
    return [verify_wigner_deformed(GMatrix.parse(g), k, L, as_scalar(a), as_scalar(z), params)]


def _run_translation(m: int, n: int, p: int, q: int, a: str) -> list[VerificationReport]:
    params = {"m": m, "n": n, "p": p, "q": q, "a": a}
    rep = verify_translation(m, n, p, q, as_scalar(a), params)
    if as_scalar(a) == 0:
        # at a = 0 the same integral is the orthogonality value pi * m! n! [m=q][n=p]
        expected = factorial(m) * factorial(n) if (m, n) == (q, p) else 0
        ok = ScaledExact(rep.lhs, rep.pi_power) == ScaledExact(expected, 1)
        rep.extra["orthogonality_slice"] = ok
        rep.passed = rep.passed and ok
    return [rep]


def _run_real_basis(L: int) -> list[VerificationReport]:
    M = real_basis_matrix(L)
    out = []
    for m in range(L + 1):
        coords = complex_to_real_expand(m, L - m)
        col = M.column(m)
        params = {"L": L, "m": m}
        out.append(
            VerificationReport.compare(
                "real-basis-change", params, "[" + ",".join(map(str, coords)) + "]", "[" + ",".join(map(str, col)) + "]"
            )
        )
    return out


def _run_gram(L: int) -> list[VerificationReport]:
    M = real_basis_matrix(L)
    weights = [2 ** L * factorial(r) * factorial(L - r) for r in range(L + 1)]
    out = []
    for m in range(L + 1):
        for mp in range(L + 1):
            total = ZERO
            for r in range(L + 1):
                total = total + M[r, m] * M[r, mp].conjugate() * weights[r]
            expected = factorial(m) * factorial(L - m) if m == mp else 0
            out.append(VerificationReport.compare("gram", {"L": L, "m": m, "m2": mp}, total, as_scalar(expected)))
    return out


def _spec(g: str, N: int, s: int, point: str) -> HankelSpec:
    z = as_scalar(point)
    x0, y0 = z.real_part, z.imag_part
    return HankelSpec(GMatrix.parse(g), N, s, x0.components()[0], y0.components()[0])


def _run_det(name: str, g: str, N: int, s: int, point: str) -> list[VerificationReport]:
    value, positive = positivity_check(_spec(g, N, s, point))
    params = {"g_name": name, "g": g, "N": N, "s": s, "z": point}
    return [
        VerificationReport("determinant-positivity", params, value.coeff, "> 0", value.pi_power, positive and value.pi_power == N)
    ]


def _run_oracle(name: str, g: str, N: int, s: int, point: str) -> list[VerificationReport]:
    spec = _spec(g, N, s, point)
    value, _ = positivity_check(spec)
    params = {"g_name": name, "g": g, "N": N, "s": s, "z": point}
    return [VerificationReport.compare("determinant-oracle", params, value, oracle_delta(spec))]


def _run_real_hermite(n: int) -> list[VerificationReport]:
    rec = real_hermite(n)
    checks = {"leading_coefficient": rec.coeff(x=n) == 2 ** n}
    return [VerificationReport.compare("real-hermite", {"n": n}, rec, real_hermite_rodrigues(n), checks)]


def _run_at_zero(m: int, n: int) -> list[VerificationReport]:
    expected = (-1) ** n * factorial(n) if m == n else 0
    value = complex_hermite(m, n).evaluate({"z1": 0, "z2": 0})
    return [VerificationReport.compare("value-at-origin", {"m": m, "n": n}, value, as_scalar(expected))]


def _run_swap(m: int, n: int) -> list[VerificationReport]:
    return [
        VerificationReport.compare(
            "swap", {"m": m, "n": n}, deformed_sum(GMatrix.swap(), m, n), complex_hermite(n, m)
        )
    ]


_RUNNERS: dict[str, Callable[..., list[VerificationReport]]] = {
    "gf": _run_gf,
    "rodrigues-routes": _run_routes,
    "swap": _run_swap,
    "orthogonality": _run_orth,
    "orthogonality-condition": _run_condition,
    "moment-rep": _run_moment,
    "wigner": _run_wigner,
    "wigner-deformed": _run_wigner_def,
    "translation": _run_translation,
    "real-basis": _run_real_basis,
    "gram": _run_gram,
    "determinants": _run_det,
    "determinant-oracle": _run_oracle,
    "real-hermite": _run_real_hermite,
    "at-zero": _run_at_zero,
}


def run_case(case: tuple) -> list[str]:
    """Run one case; returns serialized JSON lines so workers ship plain strings."""
    suite, *args = case
    return [r.to_json() for r in _RUNNERS[suite](*args)]


def _passed(line: str) -> bool:
    return json.loads(line)["pass"] is True


def run_suite(suites: Iterable[str], cfg: RunConfig) -> tuple[list[str], int, int]:
    """Run suites in order; returns (json lines, passed, failed)."""
    cases: list[tuple] = []
    for s in suites:
        cases.extend(build_cases(s, cfg))
    if cfg.jobs == 1 or len(cases) < 2:
        results = map(run_case, cases)
        lines = [line for batch in results for line in batch]
    else:
        chunk = max(1, len(cases) // (cfg.jobs * 8))
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            lines = [line for batch in pool.map(run_case, cases, chunksize=chunk) for line in batch]
    passed = sum(1 for line in lines if _passed(line))
    return lines, passed, len(lines) - passed


def default_jobs() -> int:
    return os.cpu_count() or 1

