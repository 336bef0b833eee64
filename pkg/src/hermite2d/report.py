from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .exact import ExactScalar, as_scalar

__all__ = ["ScaledExact", "VerificationReport"]


@dataclass(frozen=True)
class ScaledExact:
    """The value ``coeff * pi**pi_power``; zero always carries pi_power 0."""

    coeff: ExactScalar
    pi_power: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", as_scalar(self.coeff))
        if not self.coeff:
            object.__setattr__(self, "pi_power", 0)

    def __mul__(self, other: object) -> ScaledExact:
        if isinstance(other, ScaledExact):
            return ScaledExact(self.coeff * other.coeff, self.pi_power + other.pi_power)
        try:
            c = as_scalar(other)
        except TypeError:
            return NotImplemented
        return ScaledExact(self.coeff * c, self.pi_power)

    __rmul__ = __mul__

    def __add__(self, other: ScaledExact) -> ScaledExact:
        if not isinstance(other, ScaledExact):
            return NotImplemented
        if not other.coeff:
            return self
        if not self.coeff:
            return other
        if self.pi_power != other.pi_power:
            raise ValueError("cannot add values carrying different powers of pi")
        return ScaledExact(self.coeff + other.coeff, self.pi_power)

    def __truediv__(self, other: object) -> ScaledExact:
        return ScaledExact(self.coeff / as_scalar(other), self.pi_power)

    def is_zero(self) -> bool:
        return not self.coeff

    def __str__(self) -> str:
        if self.pi_power == 0:
            return str(self.coeff)
        pi = "π" if self.pi_power == 1 else f"π^{self.pi_power}"
        if self.coeff == 1:
            return pi
        return f"({self.coeff})*{pi}"


@dataclass
class VerificationReport:
    """One checked identity instance."""

    identity: str
    params: dict[str, Any]
    lhs: Any
    rhs: Any
    pi_power: int = 0
    passed: bool = False
    extra: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def compare(
        cls,
        identity: str,
        params: dict[str, Any],
        lhs: Any,
        rhs: Any,
        checks: dict[str, bool] | None = None,
    ) -> VerificationReport:
        """Exact comparison; ScaledExact operands must also agree in pi power.

        ``checks`` are side conditions that are reported and must all hold.
        """
        extra: dict[str, Any] = dict(checks or {})
        pi_power = 0
        if isinstance(lhs, ScaledExact) or isinstance(rhs, ScaledExact):
            lhs = lhs if isinstance(lhs, ScaledExact) else ScaledExact(lhs)
            rhs = rhs if isinstance(rhs, ScaledExact) else ScaledExact(rhs)
            passed = lhs == rhs
            pi_power = rhs.pi_power
            if lhs.pi_power != rhs.pi_power:
                extra["lhs_pi_power"] = lhs.pi_power
            lhs, rhs = lhs.coeff, rhs.coeff
        else:
            passed = lhs == rhs
        ok = passed and all((checks or {}).values())
        return cls(identity, params, lhs, rhs, pi_power, bool(ok), extra)

    def to_json_obj(self) -> dict[str, Any]:
        obj: dict[str, Any] = {
            "identity": self.identity,
            "params": self.params,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "pi_power": self.pi_power,
            "pass": self.passed,
        }
        for k, v in self.extra.items():
            obj[k] = v
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), ensure_ascii=False, separators=(",", ":"))
