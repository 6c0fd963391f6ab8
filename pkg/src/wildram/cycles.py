"""Formal cycles on the cotangent bundle.

Cycles are kept symbolic: a list of labelled components (zero section,
conormal bundles of intersections of tame components, images of the line
bundles cut out by characteristic forms) with exact rational coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .curves import Curve, contact_order
from .errors import IntegralityViolation, PreconditionError
from .ff_algebra import PerfPoly, check_prime, is_p_power
from .ramification import CharForm, RamificationReport

ZERO_SECTION, CONORMAL, LINE_IMAGE = "zero_section", "conormal", "line_image"


@dataclass(frozen=True)
class Component:
    name: str
    slope: Fraction
    form: CharForm | None = None

    @property
    def wild(self) -> bool:
        return self.slope > 1


@dataclass(frozen=True)
class SNCSheafData:
    """Ramification data of a sheaf on X along a divisor D_1 + ... + D_h.

    ``meets`` lists pairs of component names that intersect; it is geometric
    input and is only consulted for tame strata.
    """

    p: int
    dim: int
    components: tuple
    rank: int = 1
    meets: frozenset = frozenset()

    def __post_init__(self):
        check_prime(self.p)
        if self.dim < 1:
            raise PreconditionError("dimension must be positive")
        if self.rank < 1:
            raise PreconditionError("rank must be positive")
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise PreconditionError("component names must be distinct")
        comps = tuple(Component(c.name, Fraction(c.slope), c.form) for c in self.components)
        object.__setattr__(self, "components", comps)
        for c in comps:
            if c.slope < 1:
                raise PreconditionError(f"slope of {c.name} must be >= 1")
            if c.form is not None and not c.wild:
                raise PreconditionError(f"tame component {c.name} cannot carry a form")
        pairs = frozenset(frozenset(m) for m in self.meets)
        for pair in pairs:
            if len(pair) != 2 or not pair <= set(names):
                raise PreconditionError(f"bad intersection pair {sorted(pair)}")
        object.__setattr__(self, "meets", pairs)

    @classmethod
    def from_reports(cls, dim: int, reports, rank: int = 1, meets=()) -> "SNCSheafData":
        reports = list(reports)
        if not reports:
            raise PreconditionError("need at least one component")
        p = reports[0].character.p
        comps = []
        for rep in reports:
            if not isinstance(rep, RamificationReport) or rep.character.p != p:
                raise PreconditionError("reports must share the characteristic")
            comps.append(Component(rep.character.component, Fraction(rep.slope_r), rep.form))
        return cls(p, dim, tuple(comps), rank, frozenset(meets))

    def wild_components(self):
        return [c for c in self.components if c.wild]

    def tame_components(self):
        return [c for c in self.components if not c.wild]


@dataclass(frozen=True)
class TotalDimDivisor:
    coefficients: dict = field(hash=False)

    def __getitem__(self, name: str) -> Fraction:
        return self.coefficients.get(name, Fraction(0))

    def to_dict(self) -> dict:
        return {k: str(v) for k, v in sorted(self.coefficients.items())}


def total_dimension_divisor(s: SNCSheafData) -> TotalDimDivisor:
    coeffs = {}
    for c in s.components:
        v = c.slope * s.rank
        if v.denominator != 1 or v < 0:
            raise IntegralityViolation(f"total dimension coefficient {v} along {c.name} is not a nonnegative integer")
        coeffs[c.name] = v
    return TotalDimDivisor(coeffs)


@dataclass(frozen=True)
class CycleComponent:
    kind: str
    support: tuple
    coeff: Fraction
    form: CharForm | None = None

    @property
    def depth(self) -> int:
        return self.form.radicial_depth if self.form else 0

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "support": list(self.support),
            "coeff": {"num": str(self.coeff.numerator), "den": str(self.coeff.denominator)},
        }
        if self.form is not None:
            out["form"] = self.form.fingerprint()
        return out


@dataclass(frozen=True)
class CotangentCycle:
    p: int
    dim: int
    components: tuple

    def coefficient(self, kind: str, support=()) -> Fraction:
        support = tuple(sorted(support))
        return sum((c.coeff for c in self.components if c.kind == kind and tuple(sorted(c.support)) == support), Fraction(0))

    def to_dict(self) -> dict:
        return {"p": self.p, "dim": self.dim, "components": [c.to_dict() for c in self.components]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _tame_strata(s: SNCSheafData):
    tame = [c.name for c in s.tame_components()]
    for k in range(0, min(len(tame), s.dim) + 1):
        for I in combinations(tame, k):
            if all(frozenset(pair) in s.meets for pair in combinations(I, 2)):
                yield I


def characteristic_cycle(s: SNCSheafData) -> CotangentCycle:
    sign = -1 if s.dim % 2 else 1
    comps = []
    for I in _tame_strata(s):
        kind = ZERO_SECTION if not I else CONORMAL
        comps.append(CycleComponent(kind, I, Fraction(sign * s.rank)))
    for c in s.wild_components():
        if c.form is None:
            raise PreconditionError(f"wild component {c.name} has no characteristic form")
        n = c.form.radicial_depth
        coeff = sign * c.slope * s.rank / Fraction(s.p) ** (n * (s.dim - 1))
        # on a curve the line cut out by the form is the conormal fibre itself
        kind = CONORMAL if s.dim == 1 else LINE_IMAGE
        comps.append(CycleComponent(kind, (c.name,), coeff, c.form))
    return CotangentCycle(s.p, s.dim, tuple(comps))


@dataclass(frozen=True)
class IntegralityReport:
    denominators: tuple
    p_power_denominators: bool
    conjecture_holds: bool

    def to_dict(self) -> dict:
        return {
            "denominators": list(self.denominators),
            "p_power_denominators": self.p_power_denominators,
            "integral_coefficients": self.conjecture_holds,
        }


def check_integrality(c: CotangentCycle) -> IntegralityReport:
    """Hard check: denominators are powers of p.  Soft observation: whether
    every coefficient is an integer."""
    dens = tuple(sorted({x.coeff.denominator for x in c.components}))
    bad = [d for d in dens if not is_p_power(d, c.p)]
    if bad:
        raise IntegralityViolation(f"cycle denominators {bad} are not powers of {c.p}")
    return IntegralityReport(dens, True, dens in ((), (1,)))


def curve_intersection(dt: TotalDimDivisor, curve: Curve, equations: Mapping[str, PerfPoly] | None = None) -> int:
    """(DT, C) at t = 0: sum of coefficient times ord_t of the component
    equation along the curve.  By default every component is x = 0."""
    if equations is None:
        equations = {name: PerfPoly.var("x", curve.p) for name in dt.coefficients}
    total = Fraction(0)
    for name, coeff in dt.coefficients.items():
        if coeff:
            total += coeff * contact_order(curve, equations[name])
    if total.denominator != 1:
        raise IntegralityViolation(f"intersection number {total} is not an integer")
    return int(total)

