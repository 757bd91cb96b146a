"""Finitely generated abelian groups graded by degree or bidegree."""

from __future__ import annotations

from math import gcd
from typing import Iterable, NamedTuple


def invariant_factors(values: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors (all > 1, each dividing the next) of a direct sum
    of cyclic groups Z/v for the given values.  Values 0 and ±1 are dropped.
    """
    a = sorted(abs(v) for v in values if abs(v) > 1)
    # pairwise (gcd, lcm) replacement until the chain property holds
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(a[i], a[j])
            a[i], a[j] = g, a[i] * a[j] // g
    return tuple(v for v in a if v > 1)


class Group(NamedTuple):
    rank: int
    torsion: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        return self.format()

    def format(self, ring: str = "Z") -> str:
        parts = []
        if self.rank == 1:
            parts.append(ring)
        elif self.rank > 1:
            parts.append(f"{ring}^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def _key_sort(k):
    return (0, k, ()) if isinstance(k, int) else (1, 0, tuple(k))


class CohomologyResult:
    """Degree (or bidegree) -> Group.  Zero groups are never stored, so two
    results compare equal exactly when they agree in every degree.
    """

    def __init__(self, groups=None, coeff: str = "Z"):
        self.coeff = coeff
        self.groups: dict = {}
        for k, g in (groups or {}).items():
            self.add(k, *g)

    def add(self, key, rank: int, torsion=()):
        old = self.groups.get(key, Group(0, ()))
        g = Group(old.rank + rank, invariant_factors(old.torsion + tuple(torsion)))
        if g.is_zero:
            self.groups.pop(key, None)
        else:
            self.groups[key] = g

    def __getitem__(self, key) -> Group:
        return self.groups.get(key, Group(0, ()))

    def __eq__(self, other):
        if not isinstance(other, CohomologyResult):
            return NotImplemented
        return self.groups == other.groups

    def __repr__(self):
        ring = "Z" if self.coeff == "Z" else ("Q" if self.coeff == "Q" else f"F{self.coeff[1:]}")
        body = ", ".join(f"{k}: {self.groups[k].format(ring)}" for k in self.degrees())
        return f"CohomologyResult({{{body}}}, coeff={self.coeff})"

    def degrees(self) -> list:
        return sorted(self.groups, key=_key_sort)

    def ranks(self) -> dict:
        return {k: self.groups[k].rank for k in self.degrees()}

    def total_rank(self) -> int:
        return sum(g.rank for g in self.groups.values())

    def direct_sum(self, other: "CohomologyResult", shift=0) -> "CohomologyResult":
        out = CohomologyResult(self.groups, self.coeff)
        for k, g in other.groups.items():
            out.add(_shift(k, shift), g.rank, g.torsion)
        return out

    def shifted(self, shift) -> "CohomologyResult":
        return CohomologyResult({_shift(k, shift): g for k, g in self.groups.items()}, self.coeff)

    def collapse(self) -> "CohomologyResult":
        """Bigraded -> graded by total degree deg1 + deg2."""
        out = CohomologyResult(coeff=self.coeff)
        for k, g in self.groups.items():
            out.add(k if isinstance(k, int) else sum(k), g.rank, g.torsion)
        return out

    def restrict(self, pred) -> "CohomologyResult":
        return CohomologyResult({k: g for k, g in self.groups.items() if pred(k)}, self.coeff)

    def euler_characteristic(self) -> int:
        return sum(-g.rank if (k if isinstance(k, int) else sum(k)) % 2 else g.rank
                   for k, g in self.groups.items())

    def poincare(self, bigraded: bool = False) -> str:
        """Poincare polynomial of the free part; t marks total degree, and in
        the bigraded form s marks deg1."""
        terms = []
        for k in self.degrees():
            r = self.groups[k].rank
            if not r:
                continue
            if isinstance(k, int):
                mono = _pow("t", k)
            else:
                mono = "*".join(x for x in (_pow("s", k[0]), _pow("t", k[1])) if x != "1") or "1"
            terms.append(mono if r == 1 else (f"{r}" if mono == "1" else f"{r}*{mono}"))
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> list:
        return [{"degree": list(k) if not isinstance(k, int) else k,
                 "rank": self.groups[k].rank,
                 "torsion": list(self.groups[k].torsion)} for k in self.degrees()]

    @classmethod
    def from_json(cls, rows, coeff="Z") -> "CohomologyResult":
        out = cls(coeff=coeff)
        for row in rows:
            k = row["degree"]
            out.add(tuple(k) if isinstance(k, list) else k, row["rank"], row["torsion"])
        return out


def _shift(k, s):
    if isinstance(k, int):
        return k + s
    if isinstance(s, int):
        raise ValueError("cannot shift a bidegree by an integer")
    return tuple(a + b for a, b in zip(k, s))


def _pow(var, e):
    if e == 0:
        return "1"
    return var if e == 1 else f"{var}^{e}"
