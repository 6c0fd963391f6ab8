"""Affine dilatation charts.

The ring of a dilatation of Spec A along V(I) inside V(t) is A[I/t]; we
present it by new variables T_i with relations t*T_i = g_i.  The chart used
for ramification bounds at slope r along x = 0 is

    k[x, y, u, v][1/s],  s = 1 + u*x^(r-1),

with x' = x*s and y' = y + v*x^r.  Elements of the chart ring are written
numerator / (x^N * s^k) and are regular exactly when x^N divides the
numerator (s is a unit congruent to 1 mod x).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import PreconditionError, UnregisteredUnit
from .ff_algebra import PerfPoly, check_prime


@dataclass(frozen=True)
class ChartRing:
    poly_vars: tuple
    laurent_vars: tuple
    units: tuple  # PerfPoly denominators allowed
    boundary: str = "x"
    p: int = 2

    def __post_init__(self):
        for s in self.units:
            if s.p != self.p:
                raise PreconditionError("unit over the wrong characteristic")
            mod_x = s.evaluate({self.boundary: 0})
            if not mod_x.is_constant() or mod_x.constant_term() == 0:
                raise PreconditionError(f"{s} is not a unit near {self.boundary} = 0")

    def unit_name(self, s: PerfPoly) -> str:
        i = self.units.index(s)
        return "s" if i == 0 else f"s{i}"


@dataclass(frozen=True)
class ChartElem:
    """numerator / (x^x_pole * prod unit^k), canonicalized so that x does not
    divide the numerator while x_pole > 0."""

    numerator: PerfPoly
    x_pole: int = 0
    unit_powers: tuple = ()  # ((unit PerfPoly, k), ...)
    boundary: str = "x"

    def __post_init__(self):
        num, pole = self.numerator, self.x_pole
        if not num.is_integral():
            raise PreconditionError("chart numerators must have integer exponents")
        x = self.boundary
        if num.is_zero():
            object.__setattr__(self, "x_pole", 0)
            object.__setattr__(self, "unit_powers", ())
            return
        low = int(num.min_degree(x))
        if low < 0:
            num = num * PerfPoly.mono(num.p, {x: -low})
            pole -= low
        shift = min(pole, int(num.min_degree(x)))
        if shift > 0:
            num = num * PerfPoly.mono(num.p, {x: -shift})
            pole -= shift
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "x_pole", pole)
        object.__setattr__(self, "unit_powers", tuple((u, k) for u, k in self.unit_powers if k))

    def mod_boundary(self) -> PerfPoly:
        """Reduction modulo x; only defined for regular elements."""
        if self.x_pole:
            raise PreconditionError("element has a pole along the boundary")
        return self.numerator.evaluate({self.boundary: 0})

    def to_text(self, chart: ChartRing | None = None) -> str:
        text = f"({self.numerator})"
        if self.x_pole:
            text += f"/{self.boundary}^{self.x_pole}"
        for i, (u, k) in enumerate(self.unit_powers):
            name = chart.unit_name(u) if chart else ("s" if i == 0 else f"s{i}")
            text += f"/{name}^{k}"
        return text


def is_regular_on_chart(chart: ChartRing, e: ChartElem) -> bool:
    for u, _ in e.unit_powers:
        if u not in chart.units:
            raise UnregisteredUnit(f"denominator {u} is not a unit of the chart")
    if e.x_pole:
        return False
    allowed_negative = set(chart.laurent_vars)
    for m, _ in e.numerator.items():
        for v, exp in m:
            if exp < 0 and v not in allowed_negative:
                return False
    return True


@dataclass(frozen=True)
class DilatationPresentation:
    base_vars: tuple
    t: PerfPoly
    gens: tuple
    new_vars: tuple
    relations: tuple
    laurent_vars: tuple = ()

    def check_substitution(self) -> bool:
        """Each relation a*T_i + b vanishes at T_i = g_i/t, i.e. a*g_i + b*t == 0."""
        for T, g, rel in zip(self.new_vars, self.gens, self.relations):
            a = rel.coefficient(T, 1)
            b = rel.select(lambda d, T=T: T not in d)
            if rel.degree(T) > 1 or not (a * g + b * self.t).is_zero():
                return False
        return True

    def to_json(self) -> str:
        return json.dumps(
            {
                "base_vars": list(self.base_vars),
                "t": str(self.t),
                "gens": [str(g) for g in self.gens],
                "new_vars": list(self.new_vars),
                "laurent_vars": list(self.laurent_vars),
                "relations": [str(r) for r in self.relations],
                "p": self.t.p,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "DilatationPresentation":
        d = json.loads(text)
        p = d["p"]
        parse = lambda s: PerfPoly.parse(s, p)  # noqa: E731
        return cls(
            base_vars=tuple(d["base_vars"]),
            t=parse(d["t"]),
            gens=tuple(parse(g) for g in d["gens"]),
            new_vars=tuple(d["new_vars"]),
            relations=tuple(parse(r) for r in d["relations"]),
            laurent_vars=tuple(d.get("laurent_vars", ())),
        )


def dilate_affine(base_vars, t: PerfPoly, ideal_gens, new_vars=None) -> DilatationPresentation:
    """Presentation A[T_1..T_m]/(t*T_i - g_i) of the dilatation A[I/t]."""
    if t.is_zero():
        raise PreconditionError("the divisor equation t must be nonzero")
    gens = tuple(ideal_gens)
    if not gens:
        raise PreconditionError("the ideal needs at least one generator")
    if new_vars is None:
        new_vars = tuple(f"T{i + 1}" for i in range(len(gens)))
    if len(new_vars) != len(gens):
        raise PreconditionError("one new variable per generator")
    rels = tuple(t * PerfPoly.var(T, t.p) - g for T, g in zip(new_vars, gens))
    pres = DilatationPresentation(tuple(base_vars), t, gens, tuple(new_vars), rels)
    assert pres.check_substitution()
    return pres


@dataclass(frozen=True)
class P1RChart:
    """The chart of the slope-r dilatation of X x X along the diagonal."""

    ring: ChartRing
    r: int
    substitution: dict = field(hash=False, compare=False)

    @property
    def unit(self) -> PerfPoly:
        return self.ring.units[0]

    @property
    def boundary_twist(self) -> int:
        # u = (x' - x) / x^r: tangent directions are twisted by O(-r D)
        return -self.r


def chart_P1R(p: int, r: int) -> P1RChart:
    check_prime(p)
    if r < 2:
        raise PreconditionError(f"slope {r} < 2 has no wild chart")
    x, y, u, v = (PerfPoly.var(n, p) for n in "xyuv")
    xr = PerfPoly.mono(p, {"x": r})
    s = 1 + u * PerfPoly.mono(p, {"x": r - 1})
    ring = ChartRing(("x", "y", "u", "v"), (), (s,), "x", p)
    subst = {"x'": x + u * xr, "y'": y + v * xr}
    return P1RChart(ring, r, subst)


def p1r_presentation(p: int, r: int) -> DilatationPresentation:
    """Dilatation of Spec k[x,y,x',y'] along the diagonal inside x^r = 0."""
    q = lambda s: PerfPoly.parse(s, p)  # noqa: E731
    return dilate_affine(("x", "y", "x'", "y'"), q(f"x^{r}"), (q("x' - x"), q("y' - y")), ("u", "v"))


def tilde_X_M_chart(m: int, p: int = 2) -> DilatationPresentation:
    """Chart Spec k[T,S,U^(+-1)]/(T - U*S^m) mapping to the base by T -> U*S^m."""
    if m < 1:
        raise PreconditionError("multiplicity m must be >= 1")
    T = PerfPoly.var("T", p)
    rel = T - PerfPoly.mono(p, {"U": 1, "S": m})
    return DilatationPresentation(("T",), T, (), ("S",), (rel,), ("U",))


def boundary_multiplicity(pres: DilatationPresentation, divisor_var: str = "T", new_boundary: str = "S") -> int:
    """Order along the new boundary of the pulled-back divisor equation."""
    (rel,) = pres.relations
    image = PerfPoly.var(divisor_var, rel.p) - rel
    return int(image.min_degree(new_boundary))


def pullback_difference(chart: P1RChart, f: PerfPoly) -> ChartElem:
    """f(x', y') - f(x, y) as an element of the chart ring.

    f must be a Laurent polynomial in x with polynomial coefficients in y.
    Writing f = F / x^B, the difference is
    (F(x', y') - F(x, y) * s^B) / (x^B * s^B).
    """
    p = f.p
    x, y = "x", "y"
    if chart.ring.p != p:
        raise PreconditionError("chart and function over different characteristics")
    extra = set(f.variables) - {x, y}
    if extra:
        raise PreconditionError(f"unexpected variables {sorted(extra)}")
    if not f.is_integral() or f.min_degree(y) < 0:
        raise PreconditionError("f must be a Laurent polynomial in x over F_p[y]")
    B = max(0, -int(f.min_degree(x)))
    F = f * PerfPoly.mono(p, {x: B})
    s = chart.unit
    moved = F.subs({x: chart.substitution["x'"], y: chart.substitution["y'"]})
    num = moved - F * s**B
    return ChartElem(num, B, ((s, B),), x)
