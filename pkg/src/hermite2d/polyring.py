"""Sparse multivariate polynomials over Q(i, sqrt2) in a fixed variable alphabet."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .exact import ONE, ZERO, ExactScalar, as_scalar, parse_scalar

__all__ = [
    "VARIABLES",
    "NVARS",
    "UnknownVariableError",
    "UnboundVariableError",
    "SparsePoly",
    "AffineMap",
    "series_mul",
    "series_exp",
]

VARIABLES: tuple[str, ...] = ("z1", "z2", "u", "v", "x", "y", "t", "r1", "s1", "r2", "s2")
NVARS = len(VARIABLES)
_INDEX = {name: k for k, name in enumerate(VARIABLES)}
_ZERO_EXP = (0,) * NVARS

Exponent = tuple[int, ...]
ScalarLike = Union[ExactScalar, int, Fraction]


class UnknownVariableError(KeyError):
    pass


class UnboundVariableError(KeyError):
    pass


def var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise UnknownVariableError(f"unknown variable {name!r}; alphabet is {', '.join(VARIABLES)}") from None


def _exp_from(assign: Mapping[str, int]) -> Exponent:
    e = [0] * NVARS
    for name, k in assign.items():
        if k < 0:
            raise ValueError(f"negative exponent for {name}")
        e[var_index(name)] = k
    return tuple(e)


def _grlex_key(e: Exponent) -> tuple[int, Exponent]:
    return (sum(e), e)


class SparsePoly:
    """Polynomial as a map from exponent vectors to nonzero coefficients.

    Instances are treated as immutable; every operation returns a new one.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, ExactScalar] | None = None) -> None:
        clean: dict[Exponent, ExactScalar] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != NVARS:
                    raise ValueError(f"exponent vector must have length {NVARS}")
                c = as_scalar(c)
                if c:
                    clean[tuple(e)] = c
        self._terms = clean

    @classmethod
    def _wrap(cls, terms: dict[Exponent, ExactScalar]) -> SparsePoly:
        # terms must already be zero-free
        obj = object.__new__(cls)
        obj._terms = terms
        return obj

    # ---- constructors ---------------------------------------------

    @classmethod
    def constant(cls, c: ScalarLike) -> SparsePoly:
        c = as_scalar(c)
        return cls._wrap({_ZERO_EXP: c} if c else {})

    @classmethod
    def var(cls, name: str) -> SparsePoly:
        return cls._wrap({_exp_from({name: 1}): ONE})

    @classmethod
    def monomial(cls, coeff: ScalarLike = 1, **exps: int) -> SparsePoly:
        c = as_scalar(coeff)
        return cls._wrap({_exp_from(exps): c} if c else {})

    @classmethod
    def linear(cls, pairs: Iterable[tuple[str, ScalarLike]], const: ScalarLike = 0) -> SparsePoly:
        out = cls.constant(const)
        for name, c in pairs:
            out = out + cls.monomial(c, **{name: 1})
        return out

    # ---- inspection -----------------------------------------------

    @property
    def terms(self) -> dict[Exponent, ExactScalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, name: str) -> int:
        k = var_index(name)
        if not self._terms:
            return -1
        return max(e[k] for e in self._terms)

    def variables(self) -> set[str]:
        used = set()
        for e in self._terms:
            for k, p in enumerate(e):
                if p:
                    used.add(VARIABLES[k])
        return used

    def coeff(self, **exps: int) -> ExactScalar:
        return self._terms.get(_exp_from(exps), ZERO)

    def constant_term(self) -> ExactScalar:
        return self._terms.get(_ZERO_EXP, ZERO)

    def leading_term(self) -> tuple[Exponent, ExactScalar]:
        e = max(self._terms, key=_grlex_key)
        return e, self._terms[e]

    def sorted_terms(self) -> list[tuple[Exponent, ExactScalar]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    # ---- ring operations -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SparsePoly):
            return self._terms == other._terms
        if isinstance(other, (ExactScalar, int, Fraction)):
            return self._terms == SparsePoly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: object) -> SparsePoly:
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        if len(o._terms) > len(self._terms):
            big, small = o._terms, self._terms
        else:
            big, small = self._terms, o._terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return SparsePoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> SparsePoly:
        return SparsePoly._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> SparsePoly:
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> SparsePoly:
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c: ScalarLike) -> SparsePoly:
        c = as_scalar(c)
        if not c:
            return SparsePoly._wrap({})
        return SparsePoly._wrap({e: v * c for e, v in self._terms.items()})

    def __mul__(self, other: object) -> SparsePoly:
        if isinstance(other, (ExactScalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return _mul_terms(self._terms, other._terms, None, 0)

    def __rmul__(self, other: object) -> SparsePoly:
        if isinstance(other, (ExactScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> SparsePoly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial power requires a nonnegative integer exponent")
        result = SparsePoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ---- calculus and substitution ---------------------------------

    def diff(self, name: str, times: int = 1) -> SparsePoly:
        """Formal partial derivative, applied ``times`` times."""
        k = var_index(name)
        out: dict[Exponent, ExactScalar] = {}
        for e, c in self._terms.items():
            p = e[k]
            if p < times:
                continue
            falling = 1
            for j in range(times):
                falling *= p - j
            ne = e[:k] + (p - times,) + e[k + 1:]
            out[ne] = c * falling
        return SparsePoly._wrap(out)

    def substitute(self, images: Mapping[str, SparsePoly | ScalarLike]) -> SparsePoly:
        """Simultaneous substitution of polynomials for variables.

        Every image is computed from the original polynomial; unmapped
        variables are left alone.
        """
        idx = {var_index(name): _coerce_poly(img) for name, img in images.items()}
        powers: dict[tuple[int, int], SparsePoly] = {}

        def power(k: int, p: int) -> SparsePoly:
            key = (k, p)
            if key not in powers:
                powers[key] = idx[k] if p == 1 else power(k, p - 1) * idx[k]
            return powers[key]

        acc: dict[Exponent, ExactScalar] = {}
        for e, c in self._terms.items():
            kept = list(e)
            factor = None
            for k in idx:
                p = e[k]
                if p:
                    kept[k] = 0
                    factor = power(k, p) if factor is None else factor * power(k, p)
            mono = SparsePoly._wrap({tuple(kept): c})
            piece = mono if factor is None else mono * factor
            for pe, pc in piece._terms.items():
                s = acc.get(pe)
                acc[pe] = pc if s is None else s + pc
        return SparsePoly._wrap({e: c for e, c in acc.items() if c})

    def mixed_exp(self, c: ScalarLike, va: str, vb: str) -> SparsePoly:
        """Apply exp(c * d/d va * d/d vb); the series stops after finitely many terms."""
        c = as_scalar(c)
        stop = min(self.degree_in(va), self.degree_in(vb))
        out = self
        term = self
        for k in range(1, stop + 1):
            term = term.diff(va).diff(vb).scale(c / k)
            out = out + term
        return out

    def coefficient_of(self, assign: Mapping[str, int]) -> SparsePoly:
        """Coefficient polynomial of the given monomial in the assigned variables."""
        ks = [(var_index(n), p) for n, p in assign.items()]
        out: dict[Exponent, ExactScalar] = {}
        for e, c in self._terms.items():
            if all(e[k] == p for k, p in ks):
                ne = list(e)
                for k, _ in ks:
                    ne[k] = 0
                out[tuple(ne)] = c
        return SparsePoly._wrap(out)

    def conjugate(self) -> SparsePoly:
        """Conjugate every coefficient; exponents unchanged."""
        return SparsePoly._wrap({e: c.conjugate() for e, c in self._terms.items()})

    def swap_variables(self, a: str, b: str) -> SparsePoly:
        ka, kb = var_index(a), var_index(b)
        out = {}
        for e, c in self._terms.items():
            ne = list(e)
            ne[ka], ne[kb] = e[kb], e[ka]
            out[tuple(ne)] = c
        return SparsePoly._wrap(out)

    # ---- evaluation ------------------------------------------------

    def _check_bound(self, point: Mapping[str, object]) -> None:
        missing = self.variables() - set(point)
        if missing:
            raise UnboundVariableError(f"unassigned variables: {', '.join(sorted(missing, key=var_index))}")

    def evaluate(self, point: Mapping[str, ScalarLike]) -> ExactScalar:
        self._check_bound(point)
        vals = {var_index(n): as_scalar(v) for n, v in point.items()}
        cache: dict[tuple[int, int], ExactScalar] = {}
        total = ZERO
        for e, c in self._terms.items():
            term = c
            for k, p in enumerate(e):
                if p:
                    key = (k, p)
                    if key not in cache:
                        cache[key] = vals[k] ** p
                    term = term * cache[key]
            total = total + term
        return total

    def evaluate_float(self, point: Mapping[str, complex]) -> complex:
        """Floating evaluation, nested Horner in alphabet order."""
        self._check_bound(point)
        vals = [complex(point[n]) if n in point else 0j for n in VARIABLES]
        items = [(e, complex(c)) for e, c in self._terms.items()]
        if not items:
            return 0j
        return _horner(items, 0, vals)

    # ---- text and JSON ---------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                VARIABLES[k] if p == 1 else f"{VARIABLES[k]}^{p}" for k, p in enumerate(e) if p
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                if any(ch in cs[1:] for ch in "+-") or "√" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        text = parts[0]
        for p in parts[1:]:
            text += p if p.startswith("-") else "+" + p
        return text

    def __repr__(self) -> str:
        return f"SparsePoly({str(self)!r})"

    def to_json_obj(self) -> dict:
        return {
            "terms": [
                {"exp": {VARIABLES[k]: p for k, p in enumerate(e) if p}, "coeff": str(c)}
                for e, c in self.sorted_terms()
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), ensure_ascii=False, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> SparsePoly:
        terms: dict[Exponent, ExactScalar] = {}
        for t in obj["terms"]:
            e = _exp_from(t.get("exp", {}))
            terms[e] = terms.get(e, ZERO) + parse_scalar(t["coeff"])
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> SparsePoly:
        return cls.from_json_obj(json.loads(text))


def _coerce_poly(x: object) -> SparsePoly | None:
    if isinstance(x, SparsePoly):
        return x
    if isinstance(x, (ExactScalar, int, Fraction)):
        return SparsePoly.constant(x)
    return None


def _mul_terms(
    a: Mapping[Exponent, ExactScalar],
    b: Mapping[Exponent, ExactScalar],
    mask: tuple[int, ...] | None,
    bound: int,
) -> SparsePoly:
    acc: dict[Exponent, ExactScalar] = {}
    if mask is None:
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = acc.get(e)
                acc[e] = ca * cb if s is None else s + ca * cb
    else:
        bd = [(eb, cb, sum(eb[k] for k in mask)) for eb, cb in b.items()]
        for ea, ca in a.items():
            da = sum(ea[k] for k in mask)
            if da > bound:
                continue
            for eb, cb, db in bd:
                if da + db > bound:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                s = acc.get(e)
                acc[e] = ca * cb if s is None else s + ca * cb
    return SparsePoly._wrap({e: c for e, c in acc.items() if c})


def _horner(items: list[tuple[Exponent, complex]], k: int, vals: list[complex]) -> complex:
    if k == NVARS:
        return sum(c for _, c in items)
    groups: dict[int, list] = {}
    for e, c in items:
        groups.setdefault(e[k], []).append((e, c))
    top = max(groups)
    acc = 0j
    for p in range(top, -1, -1):
        acc = acc * vals[k]
        if p in groups:
            acc += _horner(groups[p], k + 1, vals)
    return acc


class AffineMap:
    """Substitution sending variables to affine-linear forms.

    ``AffineMap({"z1": [("x", 1), ("y", I)]}, constants={"z1": a})``
    maps z1 to x + i*y + a.
    """

    def __init__(
        self,
        forms: Mapping[str, Iterable[tuple[str, ScalarLike]]],
        constants: Mapping[str, ScalarLike] | None = None,
    ) -> None:
        constants = constants or {}
        self.images: dict[str, SparsePoly] = {}
        for name in set(forms) | set(constants):
            var_index(name)
            pairs = list(forms.get(name, ()))
            for target, _ in pairs:
                var_index(target)
            self.images[name] = SparsePoly.linear(pairs, constants.get(name, 0))

    @classmethod
    def from_polys(cls, images: Mapping[str, SparsePoly]) -> AffineMap:
        obj = cls({})
        for name, img in images.items():
            var_index(name)
            if img.degree() > 1:
                raise ValueError(f"image of {name} is not affine: {img}")
            obj.images[name] = img
        return obj

    def __call__(self, p: SparsePoly) -> SparsePoly:
        return p.substitute(self.images)


def _mask(svars: Iterable[str]) -> tuple[int, ...]:
    return tuple(sorted(var_index(n) for n in svars))


def series_mul(p: SparsePoly, q: SparsePoly, svars: Iterable[str], D: int) -> SparsePoly:
    """Product truncated to total degree <= D in the series variables."""
    if D < 0:
        raise ValueError("truncation degree must be nonnegative")
    return _mul_terms(p._terms, q._terms, _mask(svars), D)


def series_exp(p: SparsePoly, svars: Iterable[str], D: int) -> SparsePoly:
    """exp(p) as a series in ``svars``, truncated at total degree D.

    ``p`` must have no term that is constant in the series variables.
    """
    if D < 0:
        raise ValueError("truncation degree must be nonnegative")
    mask = _mask(svars)
    for e in p._terms:
        if sum(e[k] for k in mask) == 0:
            raise ValueError("series_exp needs every term to involve a series variable")
    out = SparsePoly.constant(1)
    term = out
    for k in range(1, D + 1):
        term = _mul_terms(term._terms, p._terms, mask, D).scale(Fraction(1, k))
        if term.is_zero():
            break
        out = out + term
    return out
