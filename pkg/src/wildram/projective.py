"""Charts of P^2 along the line at infinity.

A polynomial f(x, y) on A^2 = {z != 0} is moved to two charts that together
cover the line L = {z = 0}:

* the main chart  (X, Y) = (z/x, y/x): x = 1/X, y = Y/X, covering L minus [0:1:0];
* the pencil chart (X, Y) = (z/y, x/y): x = Y/X, y = 1/X, covering L minus [1:0:0].

In both the boundary is X = 0.  Results are renamed back to (x, y) so the
ramification engine can be applied unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateForm, InvariantError, PreconditionError, TameInput
from .ff_algebra import PerfPoly
from .ramification import ASCharacter, CharForm, RamificationReport, analyze


def _check_affine(f: PerfPoly):
    extra = set(f.variables) - {"x", "y"}
    if extra:
        raise PreconditionError(f"f may only involve x and y, found {sorted(extra)}")
    if not f.is_integral() or f.min_degree("x") < 0 or f.min_degree("y") < 0:
        raise PreconditionError("f must be a polynomial on A^2")


def main_chart(f: PerfPoly) -> PerfPoly:
    _check_affine(f)
    p = f.p
    X = PerfPoly.var("x", p)
    return f.subs({"x": X.inverse_monomial(), "y": PerfPoly.var("y", p) / X})


def pencil_chart(f: PerfPoly) -> PerfPoly:
    _check_affine(f)
    p = f.p
    X = PerfPoly.var("x", p)
    return f.subs({"x": PerfPoly.var("y", p) / X, "y": X.inverse_monomial()})


def transform_differential(a: PerfPoly, b: PerfPoly) -> tuple[PerfPoly, PerfPoly]:
    """Pull a*dx + b*dy back to the main chart; returns (A, B) with the form
    equal to A*dX + B*dY.

    Uses dx = -dX/X^2 and dy = dY/X - Y*dX/X^2.  Coefficients may carry
    fractional exponents as long as they are monomial-substitutable.
    """
    p = a.p
    X, Y = PerfPoly.var("x", p), PerfPoly.var("y", p)
    sub = {"x": X.inverse_monomial(), "y": Y / X}
    a2, b2 = a.subs(sub), b.subs(sub)
    inv_X2 = PerfPoly.mono(p, {"x": -2})
    A = -a2 * inv_X2 - b2 * Y * inv_X2
    B = b2 * X.inverse_monomial()
    return A, B


def leading_form(A: PerfPoly, B: PerfPoly, r: int) -> tuple[PerfPoly, PerfPoly]:
    """(X^r * A, X^r * B) restricted to X = 0, i.e. the form seen as a
    section of Omega^1(r*L) along L."""
    p = A.p
    out = []
    for q in (A, B):
        q = q * PerfPoly.mono(p, {"x": r})
        if q and q.min_degree("x") < 0:
            raise PreconditionError(f"form has a pole of order > {r} along the boundary")
        out.append(q.select(lambda d: d.get("x", 0) == 0))
    return out[0], out[1]


def naive_form(f: PerfPoly, r: int) -> tuple[PerfPoly, PerfPoly]:
    """Leading part of d(f) in the main chart at twist r."""
    g = main_chart(f)
    return leading_form(g.derivative("x"), g.derivative("y"), r)


@dataclass(frozen=True)
class LineAtInfinity:
    """Ramification of t^p - t = f along L, assembled from both charts."""

    f: PerfPoly
    main: RamificationReport
    pencil: RamificationReport

    @property
    def slope(self) -> int:
        return self.main.slope_r

    @property
    def form(self) -> CharForm | None:
        return self.main.form

    @property
    def totally_wild(self) -> bool:
        return self.main.wild

    def degenerate_points(self) -> list[str]:
        """Points of L (over the algebraic closure) where the form vanishes."""
        bad = []
        if not self.main.wild:
            return ["generic point"]
        locus = self.main.form.degenerate_locus
        if not locus.is_constant():
            bad.append(f"main chart zeros of {locus}")
        if self.pencil.form is None or self.pencil.form.is_degenerate_at(0):
            bad.append("[0:1:0]")
        return bad

    @property
    def non_degenerate(self) -> bool:
        return not self.degenerate_points()

    def require_non_degenerate(self):
        if not self.totally_wild:
            raise TameInput(f"{self.f} is not wildly ramified along the line at infinity")
        bad = self.degenerate_points()
        if bad:
            raise DegenerateForm(f"characteristic form of {self.f} degenerates at: {', '.join(bad)}")


def line_at_infinity(p: int, f: PerfPoly | str) -> LineAtInfinity:
    if isinstance(f, str):
        f = PerfPoly.parse(f, p)
    main = analyze(ASCharacter(p, main_chart(f), "L"))
    pencil = analyze(ASCharacter(p, pencil_chart(f), "L"))
    if main.slope_r != pencil.slope_r:
        raise InvariantError("slope differs between the two charts of L")
    return LineAtInfinity(f, main, pencil)
