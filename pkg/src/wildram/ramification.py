"""Ramification of rank-1 Artin-Schreier characters t^p - t = f along x = 0.

The slope r is the least integer r >= 2 for which

    f(x + u*x^r, y + v*x^r) - f(x, y)

is regular on the chart k[x, y, u, v][1/(1 + u*x^(r-1))].  Reducing that
difference modulo x gives an Artin-Schreier polynomial in (u, v) whose
reduced form alpha*u + beta*v is the characteristic form, with u and v
standing for dx/x^r and dy/x^r.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .dilatation import ChartElem, chart_P1R, is_regular_on_chart, pullback_difference
from .errors import (
    DegenerateForm,
    InvariantError,
    NonLinearForm,
    PreconditionError,
    TameInput,
)
from .ff_algebra import (
    PerfPoly,
    artin_schreier_reduce,
    check_prime,
    is_fp_linear,
    linear_coefficients,
    univariate_gcd,
)

logger = logging.getLogger(__name__)

BOUNDARY, TRANSVERSE = "x", "y"


@dataclass(frozen=True)
class ASCharacter:
    p: int
    f: PerfPoly
    component: str = "D"

    def __post_init__(self):
        check_prime(self.p)
        if self.f.p != self.p:
            raise PreconditionError("f is defined over a different characteristic")
        extra = set(self.f.variables) - {BOUNDARY, TRANSVERSE}
        if extra:
            raise PreconditionError(f"f may only involve x and y, found {sorted(extra)}")
        if not self.f.is_integral() or self.f.min_degree(TRANSVERSE) < 0:
            raise PreconditionError("f must be a Laurent polynomial in x with coefficients in F_p[y]")

    @classmethod
    def parse(cls, p: int, text: str, component: str = "D") -> "ASCharacter":
        return cls(p, PerfPoly.parse(text, p), component)


@dataclass(frozen=True)
class CharForm:
    """alpha*dx/x^r + beta*dy/x^r over the p^-n radicial cover of the boundary."""

    p: int
    slope_r: int
    alpha: PerfPoly
    beta: PerfPoly
    radicial_depth: int
    degenerate_locus: PerfPoly
    component: str = "D"
    stripped_constant: PerfPoly | None = None

    @property
    def twist(self) -> tuple:
        """The form is a section of Omega^1 twisted by O(r*D)."""
        return (self.slope_r, self.component)

    def at(self, y0: int) -> tuple[int, int]:
        try:
            return (self.alpha.value_at({TRANSVERSE: y0}), self.beta.value_at({TRANSVERSE: y0}))
        except ZeroDivisionError:
            raise DegenerateForm(f"characteristic form has a pole at y = {y0}") from None

    def is_degenerate_at(self, y0: int) -> bool:
        return self.at(y0) == (0, 0)

    def fingerprint(self) -> dict:
        return {"alpha": str(self.alpha), "beta": str(self.beta), "depth": self.radicial_depth}

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "slope_r": self.slope_r,
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "radicial_depth": self.radicial_depth,
            "degenerate_locus": str(self.degenerate_locus),
            "twist": f"{self.slope_r}*{self.component}",
            "stripped_constant": str(self.stripped_constant) if self.stripped_constant else "0",
        }


@dataclass(frozen=True)
class RamificationReport:
    character: ASCharacter
    reduced_f: PerfPoly
    slope_r: int
    swan: int
    dimtot: int
    form: CharForm | None  # None marks the tame/unramified case
    bounded_witness: ChartElem | None
    witness_mod_x: PerfPoly | None

    @property
    def wild(self) -> bool:
        return self.form is not None

    def to_dict(self) -> dict:
        return {
            "p": self.character.p,
            "f": str(self.character.f),
            "component": self.character.component,
            "reduced_f": str(self.reduced_f),
            "slope_r": self.slope_r,
            "swan": self.swan,
            "dimtot": self.dimtot,
            "form": self.form.to_dict() if self.form else "tame",
            "bounded_witness": self.bounded_witness.to_text() if self.bounded_witness else None,
            "witness_mod_x": str(self.witness_mod_x) if self.witness_mod_x is not None else None,
        }


def _as_character(ch) -> ASCharacter:
    if isinstance(ch, ASCharacter):
        return ch
    raise TypeError(f"expected ASCharacter, got {type(ch).__name__}")


def _reduce_monomial(m: tuple, p: int) -> tuple:
    d = dict(m)
    while True:
        a = d.get(TRANSVERSE, Fraction(0))
        b = -d.get(BOUNDARY, Fraction(0))
        if b > 0 and b.numerator % p == 0 and a.numerator % p == 0:
            d = {v: e / p for v, e in d.items()}
        else:
            return tuple(sorted(d.items()))


def reduce_f(ch: ASCharacter) -> PerfPoly:
    """Replace c*y^a/x^b (b > 0, p | a, p | b) by c*y^(a/p)/x^(b/p) until no
    such term remains.  The map is F_p-linear, so it kills the pole part of
    every g^p - g."""
    ch = _as_character(ch)
    p = ch.p
    acc: dict = {}
    for m, c in ch.f.items():
        m = _reduce_monomial(m, p)
        acc[m] = (acc.get(m, 0) + c) % p
    return PerfPoly(p, {m: c for m, c in acc.items() if c})


def pole_order(f: PerfPoly) -> int:
    return max(0, -int(f.min_degree(BOUNDARY)))


def delta(f: PerfPoly, r: int) -> ChartElem:
    """f(x', y') - f(x, y) on the slope-r chart."""
    return pullback_difference(chart_P1R(f.p, r), f)


def bounded_by(f: PerfPoly, r: int) -> bool:
    chart = chart_P1R(f.p, r)
    return is_regular_on_chart(chart.ring, pullback_difference(chart, f))


def slope(ch: ASCharacter) -> int:
    """Least r >= 2 with a regular difference on the slope-r chart; 1 when the
    reduced function has no pole along x = 0."""
    f = reduce_f(ch)
    B = pole_order(f)
    if B == 0:
        return 1
    for r in range(2, B + 2):
        if bounded_by(f, r):
            return r
    raise InvariantError(f"no slope <= {B + 1} found for {f}; arithmetic bug")


def _form_from_witness(p: int, r: int, psi: PerfPoly, component: str) -> CharForm:
    uv = ("u", "v")
    const = psi.select(lambda d: "u" not in d and "v" not in d)
    if const:
        logger.debug("stripping (u,v)-constant part %s of the witness", const)
    reduced = artin_schreier_reduce(psi - const, uv)
    if not is_fp_linear(reduced, uv):
        raise NonLinearForm(f"reduced witness {reduced} is not F_p-linear in (u, v)")
    coeffs, _ = linear_coefficients(reduced, uv)
    alpha, beta = coeffs["u"], coeffs["v"]
    if alpha.is_zero() and beta.is_zero():
        raise InvariantError("characteristic form vanishes at the minimal slope")
    depth = max(alpha.radicial_depth(), beta.radicial_depth())
    locus = _degenerate_locus(alpha, beta, depth)
    return CharForm(p, r, alpha, beta, depth, locus, component, const or None)


def _degenerate_locus(alpha: PerfPoly, beta: PerfPoly, depth: int) -> PerfPoly:
    # common zeros of alpha and beta; raising to p^depth lands in F_p[y]
    a, b = alpha.frobenius(depth), beta.frobenius(depth)
    for q in (a, b):
        if set(q.variables) - {TRANSVERSE}:
            raise InvariantError(f"form coefficient {q} involves more than y")
    if a.min_degree(TRANSVERSE) < 0 or b.min_degree(TRANSVERSE) < 0:
        raise DegenerateForm("form coefficients have poles along the boundary")
    return univariate_gcd(a, b, TRANSVERSE)


def char_form(ch: ASCharacter) -> CharForm:
    return analyze(ch).form or _raise_tame(ch)


def _raise_tame(ch):
    raise TameInput(f"{ch.f} has slope 1; there is no characteristic form")


def swan_and_dimtot(ch: ASCharacter) -> tuple[int, int]:
    rep = analyze(ch)
    return rep.swan, rep.dimtot


def analyze(ch: ASCharacter) -> RamificationReport:
    ch = _as_character(ch)
    f = reduce_f(ch)
    swan = pole_order(f)
    r = slope(ch)
    if r == 1:
        return RamificationReport(ch, f, 1, 0, 1, None, None, None)
    witness = delta(f, r)
    psi = witness.mod_boundary()
    form = _form_from_witness(ch.p, r, psi, ch.component)
    if swan not in (r - 1, r):
        raise InvariantError(f"swan {swan} incompatible with dimtot {r}")
    return RamificationReport(ch, f, r, swan, r, form, witness, psi)


def noncharacteristic_curve_test(form: CharForm, tangent: tuple[int, int], y0: int) -> bool:
    """Does the form pair nontrivially with a tangent vector (dx, dy) at the
    boundary point y = y0?  Values in F_p; p-th roots are trivial there."""
    dx, dy = (c % form.p for c in tangent)
    if dx == 0 and dy == 0:
        raise PreconditionError("tangent vector must be nonzero")
    if dx == 0:
        raise PreconditionError("curve must be transversal to the boundary (dx != 0)")
    a, b = form.at(y0)
    return (a * dx + b * dy) % form.p != 0
