"""Coefficient rings: the integers, the rationals and prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Coeff:
    """A coefficient selector.

    ``kind`` is one of ``"Z"``, ``"Q"`` or ``"Zp"``; ``p`` is only
    meaningful for ``"Zp"``.
    """

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zp"):
            raise ValueError(f"unsupported coefficient ring {self.kind!r}")
        if self.kind == "Zp" and not is_prime(self.p):
            raise ValueError(f"Z/p needs a prime p, got {self.p}")

    @classmethod
    def parse(cls, text: str) -> "Coeff":
        """Parse ``Z``, ``Q``, ``Z2``, ``Z/3`` or ``Zp:5``."""
        t = text.strip().replace(" ", "")
        if t in ("Z", "ZZ"):
            return cls("Z")
        if t in ("Q", "QQ"):
            return cls("Q")
        for prefix in ("Zp:", "Z/", "GF", "F", "Z"):
            if t.startswith(prefix) and t[len(prefix):].isdigit():
                return cls("Zp", int(t[len(prefix):]))
        raise ValueError(f"cannot parse coefficient ring {text!r}")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def __str__(self):
        return f"Z{self.p}" if self.kind == "Zp" else self.kind

    # field arithmetic; only valid when is_field

    def convert(self, x):
        if self.kind == "Q":
            return Fraction(x)
        if self.kind == "Zp":
            return int(x) % self.p
        return int(x)

    def inv(self, x):
        if self.kind == "Q":
            return 1 / Fraction(x)
        if self.kind == "Zp":
            return pow(int(x), -1, self.p)
        raise ZeroDivisionError("the integers are not a field")

    def norm(self, x):
        """Reduce a value to canonical form (mod p for prime fields)."""
        if self.kind == "Zp":
            return x % self.p
        return x


ZZ = Coeff("Z")
QQ = Coeff("Q")


def GF(p: int) -> Coeff:
    return Coeff("Zp", p)
