"""Intersection numbers on model surfaces and Euler characteristics of
Artin-Schreier sheaves.

The surface formula used here is

    chi_c(U, F) = rank * (chi_top(X) + (K + R).R)

for a sheaf totally wildly ramified and non-degenerate along D = X - U
with total-dimension divisor R.  ``fibration_oracle`` recomputes chi_c on
A^2 by projecting to a line and summing Grothendieck-Ogg-Shafarevich
counts over strata; it shares no code with the cotangent computation.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import InvariantError, NonStratifiable, ParseError, PreconditionError, TameInput
from .ff_algebra import PerfPoly, check_prime, is_p_power
from .projective import line_at_infinity

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    matrix: tuple  # rows of the intersection form in the Picard basis
    K: tuple
    chi_top: int

    def __post_init__(self):
        n = len(self.matrix)
        if n == 0 or any(len(row) != n for row in self.matrix):
            raise PreconditionError("intersection matrix must be square and nonempty")
        if any(self.matrix[i][j] != self.matrix[j][i] for i in range(n) for j in range(n)):
            raise PreconditionError("intersection matrix must be symmetric")
        if len(self.K) != n:
            raise PreconditionError("canonical class has the wrong length")

    @property
    def picard_rank(self) -> int:
        return len(self.matrix)

    @property
    def canonical(self) -> "DivisorClass":
        return DivisorClass(self.K)

    @classmethod
    def from_dict(cls, d: dict) -> "SurfaceModel":
        try:
            return cls(
                str(d["name"]),
                tuple(tuple(int(v) for v in row) for row in d["matrix"]),
                tuple(int(v) for v in d["K"]),
                int(d["chi_top"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"incomplete surface model: {exc}") from None

    @classmethod
    def from_toml(cls, text: str) -> "SurfaceModel":
        try:
            d = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ParseError(f"bad surface TOML: {exc}") from None
        return cls.from_dict(d.get("surface", d))

    def to_dict(self) -> dict:
        return {"name": self.name, "matrix": [list(r) for r in self.matrix], "K": list(self.K), "chi_top": self.chi_top}


P2 = SurfaceModel("P2", ((1,),), (-3,), 3)
P1xP1 = SurfaceModel("P1xP1", ((0, 1), (1, 0)), (-2, -2), 4)
MODELS = {"p2": P2, "p1xp1": P1xP1}


@dataclass(frozen=True)
class DivisorClass:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if len(other.coeffs) != len(self.coeffs):
            raise PreconditionError("divisor classes of different lengths")
        return DivisorClass(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __rmul__(self, k) -> "DivisorClass":
        return DivisorClass(k * a for a in self.coeffs)

    def __neg__(self):
        return (-1) * self


def intersect(m: SurfaceModel, a: DivisorClass, b: DivisorClass) -> Fraction:
    n = m.picard_rank
    if len(a.coeffs) != n or len(b.coeffs) != n:
        raise PreconditionError(f"{m.name} has Picard rank {n}")
    return sum((a.coeffs[i] * m.matrix[i][j] * b.coeffs[j] for i in range(n) for j in range(n)), Fraction(0))


def euler_number(m: SurfaceModel, rank: int, R: DivisorClass, totally_wild: bool) -> int:
    """chi_c(U, F) from the total-dimension divisor R."""
    if not totally_wild:
        raise TameInput("the surface formula needs every boundary component wildly ramified")
    if rank < 1:
        raise PreconditionError("rank must be positive")
    value = rank * (m.chi_top + intersect(m, m.canonical + R, R))
    if value.denominator != 1:
        raise InvariantError(f"Euler number {value} is not an integer")
    return int(value)


def covering_euler(m: SurfaceModel, p: int, chi_c_U) -> int:
    """chi(Y) for the degree-p cover: chi_top plus chi_c(U, L_chi) summed over
    the p - 1 nontrivial characters.  An int is shared by all of them."""
    check_prime(p)
    values = [chi_c_U] * (p - 1) if isinstance(chi_c_U, int) else list(chi_c_U)
    if len(values) != p - 1:
        raise PreconditionError(f"need {p - 1} character values")
    return m.chi_top + sum(values)


def gos_curve(rank: int, chi_c_open: int, swans) -> int:
    return rank * chi_c_open - sum(swans)


# -- the P^2 pipeline --------------------------------------------------------


@dataclass(frozen=True)
class EulerReport:
    p: int
    f: str
    slope: int
    chi_c: int
    chi_Y: int
    per_character: tuple

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "surface": "P2",
            "R": f"{self.slope}*H",
            "chi_c": self.chi_c,
            "chi_Y": self.chi_Y,
            "per_character": list(self.per_character),
        }


def euler_p2(p: int, f: PerfPoly | str) -> EulerReport:
    """chi_c(A^2, L_f) and chi(Y) for t^p - t = f on A^2 inside P^2."""
    if isinstance(f, str):
        f = PerfPoly.parse(f, p)
    values, slope = [], None
    for a in range(1, p):
        line = line_at_infinity(p, a * f)
        line.require_non_degenerate()
        slope = line.slope
        values.append(euler_number(P2, 1, DivisorClass((line.slope,)), True))
    return EulerReport(p, str(f), slope, values[0], covering_euler(P2, p, values), tuple(values))


# -- fibration oracle --------------------------------------------------------


def _prime_to_p_part(e: Fraction, p: int) -> int:
    num, den = e.numerator, e.denominator
    if not is_p_power(den, p):
        raise PreconditionError(f"exponent {e} is not in Z[1/p]")
    while num % p == 0:
        num //= p
    return num


def swan_at_infinity(b: PerfPoly, var: str) -> int:
    """Swan conductor at infinity of t^p - t = b(var) on the affine line; b
    may carry p-power-denominator exponents."""
    p = b.p
    acc: dict = {}
    for m, c in b.items():
        e = dict(m).get(var, Fraction(0))
        if e < 0:
            raise PreconditionError("fibre function must be polynomial")
        if e == 0:
            continue
        k = _prime_to_p_part(e, p)
        acc[k] = (acc.get(k, 0) + c) % p
    live = [k for k, c in acc.items() if c]
    return max(live, default=0)


def _reduce_in(f: PerfPoly, fiber: str) -> dict:
    """{j: b_j} with f ~ sum b_j * fiber^j and p not dividing j > 0."""
    p = f.p
    acc: dict = {}
    for j, coeff in f.split(fiber).items():
        if j.denominator != 1 or j < 0:
            raise PreconditionError("f must be a polynomial in the fibre variable")
        j, k = int(j), 0
        while j and j % p == 0:
            j //= p
            k += 1
        part = coeff.pth_root(k)
        acc[j] = acc.get(j, PerfPoly(p)) + part
    return {j: b for j, b in acc.items() if b}


def _distinct_roots(b: PerfPoly, var: str) -> int:
    """Number of distinct roots over the algebraic closure of F_p.

    Exponents are first scaled by p^depth, which is a bijection on points."""
    p = b.p
    scale = p ** b.radicial_depth()
    w = sympy.Symbol("w")
    expr = sum(c * w ** int(dict(m).get(var, 0) * scale) for m, c in b.items())
    poly = sympy.Poly(expr, w, modulus=p)
    if poly.is_zero:
        raise PreconditionError("coefficient vanishes identically")
    return sympy.Poly(sympy.sqf_part(poly), w, modulus=p).degree()


def fibration_oracle(p: int, f: PerfPoly | str, direction: str = "x") -> int:
    """chi_c(A^2, L_f) by fibering over the `direction` axis.

    Fibres are affine lines in the other variable; after reducing f in the
    fibre variable, f ~ b_0 + b_1*y + ... with p not dividing the degrees.
    Generic fibres are acyclic exactly when the top degree is <= 1, which is
    the supported range.
    """
    check_prime(p)
    if isinstance(f, str):
        f = PerfPoly.parse(f, p)
    if direction not in ("x", "y"):
        raise PreconditionError("direction must be x or y")
    fiber = "y" if direction == "x" else "x"
    extra = set(f.variables) - {"x", "y"}
    if extra:
        raise PreconditionError(f"unexpected variables {sorted(extra)}")
    red = _reduce_in(f, fiber)
    J = max(red, default=0)
    if J >= 2:
        raise NonStratifiable(f"generic fibres carry a character of Swan conductor {J}; not acyclic")
    if J == 1:
        b1 = red[1]
        if set(b1.variables) - {direction}:
            raise InvariantError("fibre coefficient depends on the fibre variable")
        # b_1(c) != 0: fibre is A^1 with Swan 1 at infinity, chi_c = 0
        # b_1(c) == 0: constant character on A^1, chi_c = 1
        generic = gos_curve(1, 1, [1])
        special = gos_curve(1, 1, [0])
        roots = _distinct_roots(b1, direction) if not b1.is_constant() else 0
        return generic * (1 - roots) + special * roots
    b0 = red.get(0, PerfPoly(p))
    # every fibre is a constant character: chi_c = chi_c(A^1, L_{b0}) * chi_c(A^1)
    return gos_curve(1, 1, [swan_at_infinity(b0, direction)])
