"""Restriction of a character to a curve through the boundary.

This is a separate one-variable code path (plain dicts of t-exponents)
that shares nothing with the two-variable chart machinery, so that it can
check it: the pulled-back function is Artin-Schreier reduced over F_p and
its total dimension is found by the one-variable dilatation criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import PreconditionError, TruncationInstability
from .ff_algebra import PerfPoly
from .ramification import ASCharacter


@dataclass(frozen=True)
class Curve:
    """t -> (x(t), y(t)) with polynomial coordinates over F_p."""

    p: int
    x: dict  # exponent -> coefficient
    y: dict

    @classmethod
    def parse(cls, p: int, x: str, y: str, params: dict | None = None) -> "Curve":
        params = {k: int(v) % p for k, v in (params or {}).items()}
        return cls(p, _to_series(PerfPoly.parse(x, p), params), _to_series(PerfPoly.parse(y, p), params))

    @property
    def contact(self) -> int:
        """ord_t x(t)."""
        if not self.x:
            raise PreconditionError("x(t) vanishes identically: curve lies in the boundary")
        return min(self.x)

    @property
    def base_point(self) -> int:
        return self.y.get(0, 0)

    @property
    def tangent(self) -> tuple[int, int]:
        return (self.x.get(1, 0), self.y.get(1, 0))


def _to_series(q: PerfPoly, params: dict) -> dict:
    q = q.evaluate(params)
    extra = set(q.variables) - {"t"}
    if extra:
        raise PreconditionError(f"undeclared curve parameters {sorted(extra)}")
    out = {}
    for m, c in q.items():
        d = dict(m)
        e = d.get("t", 0)
        if e.denominator != 1 or e < 0:
            raise PreconditionError("curve coordinates must be polynomials in t")
        out[int(e)] = c
    return out


# -- truncated power series over F_p, as {exponent: coeff} -------------------


def _mul(a: dict, b: dict, p: int, prec: int) -> dict:
    out: dict = {}
    for i, c in a.items():
        for j, d in b.items():
            k = i + j
            if k < prec:
                out[k] = (out.get(k, 0) + c * d) % p
    return {k: c for k, c in out.items() if c}


def _pow(a: dict, n: int, p: int, prec: int) -> dict:
    out = {0: 1}
    for _ in range(n):
        out = _mul(out, a, p, prec)
    return out


def _inverse_unit(w: dict, p: int, prec: int) -> dict:
    """1/w for a power series with w(0) != 0, modulo t^prec."""
    w0 = w.get(0, 0)
    if w0 == 0:
        raise PreconditionError("not a unit")
    inv0 = pow(w0, -1, p)
    out = {0: inv0}
    for k in range(1, prec):
        s = sum(w.get(j, 0) * out.get(k - j, 0) for j in range(1, k + 1)) % p
        c = (-s * inv0) % p
        if c:
            out[k] = c
    return out


def pullback_pole_part(ch: ASCharacter, curve: Curve, prec: int) -> dict:
    """Terms of f(x(t), y(t)) with negative t-exponent, computed with every
    unit inverse truncated at relative order prec."""
    p = ch.p
    e = curve.contact
    w = {k - e: c for k, c in curve.x.items()}  # x = t^e * w
    w_inv = _inverse_unit(w, p, prec)
    out: dict = {}
    for m, c in ch.f.items():
        d = dict(m)
        a = int(d.get("y", 0))
        b = int(d.get("x", 0))
        shift = e * b
        ypart = _pow(curve.y, a, p, prec + max(0, -shift) + 1) if a else {0: 1}
        xpart = _pow(w_inv, -b, p, prec) if b < 0 else _pow(w, b, p, prec)
        term = _mul(xpart, ypart, p, prec)
        for k, v in term.items():
            kk = k + shift
            if kk < 0:
                out[kk] = (out.get(kk, 0) + c * v) % p
    return {k: v for k, v in out.items() if v}


def reduce_one_variable(pole: dict, p: int) -> dict:
    """Artin-Schreier reduction over F_p: c*t^(-b) with p | b becomes c*t^(-b/p)."""
    out: dict = {}
    for k, c in pole.items():
        while k % p == 0:
            k //= p
        out[k] = (out.get(k, 0) + c) % p
    return {k: c for k, c in out.items() if c}


def _binom_neg(b: int, k: int, p: int) -> int:
    # binom(-b, k) = (-1)^k binom(b + k - 1, k)
    return ((-1) ** k * comb(b + k - 1, k)) % p


def one_variable_slope(pole: dict, p: int) -> int:
    """Least r >= 2 such that g(t + u t^r) - g(t) has no negative t-power;
    1 if g has no pole."""
    if not pole:
        return 1
    B = -min(pole)
    for r in range(2, B + 2):
        diff: dict = {}
        for k, c in pole.items():
            b = -k
            # t^-b ((1 + u t^(r-1))^-b - 1) = sum_{j>=1} binom(-b, j) u^j t^(j(r-1) - b)
            for j in range(1, b + 1):
                texp = j * (r - 1) - b
                if texp >= 0:
                    break
                coeff = _binom_neg(b, j, p) * c % p
                if coeff:
                    diff[(texp, j)] = (diff.get((texp, j), 0) + coeff) % p
        if not any(diff.values()):
            return r
    raise AssertionError("one-variable slope search exceeded its bound")


@dataclass(frozen=True)
class Restriction:
    dimtot: int
    contact: int
    reduced_pole: dict
    precision: int


def restrict_to_curve(ch: ASCharacter, curve: Curve, prec: int | None = None) -> Restriction:
    """Total dimension at t = 0 of the character pulled back along the curve,
    and the contact order e = ord_t x(t)."""
    if curve.p != ch.p:
        raise PreconditionError("curve and character over different characteristics")
    e = curve.contact
    B = max(0, -int(ch.f.min_degree("x")))
    if prec is None:
        prec = e * B + 1
    if prec < 1:
        raise PreconditionError("truncation order must be positive")
    first = pullback_pole_part(ch, curve, prec)
    second = pullback_pole_part(ch, curve, 2 * prec)
    if first != second:
        raise TruncationInstability(f"pole part changes between orders {prec} and {2 * prec}")
    reduced = reduce_one_variable(first, ch.p)
    return Restriction(one_variable_slope(reduced, ch.p), e, reduced, prec)


def contact_order(curve: Curve, equation: PerfPoly) -> int:
    """ord_t of equation(x(t), y(t)); the equation must be a polynomial in x, y."""
    if equation.p != curve.p:
        raise PreconditionError("equation and curve over different characteristics")
    extra = set(equation.variables) - {"x", "y"}
    if extra or not equation.is_integral() or equation.min_degree("x") < 0 or equation.min_degree("y") < 0:
        raise PreconditionError("component equation must be a polynomial in x and y")
    p = curve.p
    deg = int(max(equation.degree("x"), 0) * max(curve.x, default=0) + max(equation.degree("y"), 0) * max(curve.y, default=0)) + 1
    total: dict = {}
    for m, c in equation.items():
        d = dict(m)
        term = _mul(_pow(curve.x, int(d.get("x", 0)), p, deg), _pow(curve.y, int(d.get("y", 0)), p, deg), p, deg)
        for k, v in term.items():
            total[k] = (total.get(k, 0) + c * v) % p
    total = {k: v for k, v in total.items() if v}
    if not total:
        raise PreconditionError("curve is contained in the component (infinite contact)")
    return min(total)
