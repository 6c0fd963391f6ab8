"""Exact arithmetic over F_p and its perfection.

``PerfPoly`` is a sparse Laurent polynomial over F_p whose exponents are
rationals with p-power denominators, so that p-th roots always exist:
``q.pth_root(1) ** p == q``.  Coefficients are plain ints in ``range(p)``;
since F_p is fixed by Frobenius, taking roots only touches exponents.

``TwistedPoly`` models the non-commutative ring A[F] with F*a = a^p*F, and
``artin_schreier_reduce`` computes the normal form of a polynomial modulo
the relation c*m^p ~ c*m.

Text syntax (parsed by ``PerfPoly.parse``, produced by ``str``)::

    2*u*y^(1/3) + v + x^(-2)*y
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import CharacteristicMismatch, ParseError, PreconditionError

Monomial = tuple  # tuple[tuple[str, Fraction], ...], sorted by variable name


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise PreconditionError(f"characteristic must be a prime, got {p!r}")
    return p


def p_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class FpElem:
    """An element of the prime field F_p."""

    value: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        if not 0 <= self.value < self.p:
            raise ValueError(f"{self.value} is not a reduced residue mod {self.p}")

    @classmethod
    def of(cls, value: int, p: int) -> "FpElem":
        return cls(value % p, p)

    def _other(self, other):
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise CharacteristicMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FpElem.of(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FpElem.of(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FpElem.of(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FpElem.of(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem.of(-self.value, self.p)

    def inverse(self) -> "FpElem":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FpElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self * FpElem.of(o, self.p).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElem(pow(self.value, n, self.p), self.p)

    def frobenius(self) -> "FpElem":
        return self

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class PerfExp:
    """The exponent num / p**pdepth, normalized so that p does not divide num
    unless pdepth == 0."""

    num: int
    pdepth: int
    p: int

    def __post_init__(self):
        if self.pdepth < 0:
            raise ValueError("pdepth must be nonnegative")
        if self.pdepth > 0 and self.num % self.p == 0:
            raise ValueError("PerfExp not normalized")

    @classmethod
    def from_fraction(cls, q, p: int) -> "PerfExp":
        q = Fraction(q)
        if not is_p_power(q.denominator, p):
            raise ValueError(f"exponent {q} has a denominator prime to {p}")
        depth = 0 if q.denominator == 1 else p_valuation(q.denominator, p)
        return cls(q.numerator, depth, p)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.p**self.pdepth)


def _check_exponent(e: Fraction, p: int) -> Fraction:
    if not is_p_power(e.denominator, p):
        raise PreconditionError(f"exponent {e} has a denominator prime to p={p}")
    return e


def _normalize_monomial(items, p: int) -> Monomial:
    acc: dict[str, Fraction] = {}
    for var, e in items:
        acc[var] = acc.get(var, Fraction(0)) + Fraction(e)
    return tuple((v, _check_exponent(e, p)) for v, e in sorted(acc.items()) if e != 0)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for v, e in b:
        s = acc.get(v, 0) + e
        if s:
            acc[v] = s
        else:
            del acc[v]
    return tuple(sorted(acc.items()))


def _mono_scale(a: Monomial, factor: Fraction) -> Monomial:
    return tuple((v, e * factor) for v, e in a)


class PerfPoly:
    """Sparse Laurent polynomial over F_p with exponents in Z[1/p].

    Instances are immutable and hashable.  Arithmetic with Python ints
    coerces the int into F_p.
    """

    __slots__ = ("p", "_terms", "_hash")

    def __init__(self, p: int, terms: Mapping | Iterable = (), *, _raw: bool = False):
        self.p = p
        if _raw:
            self._terms = terms
        else:
            check_prime(p)
            items = terms.items() if isinstance(terms, Mapping) else terms
            acc: dict[Monomial, int] = {}
            for mono, c in items:
                mono = _normalize_monomial(mono, p)
                acc[mono] = (acc.get(mono, 0) + int(c)) % p
            self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c: int, p: int) -> "PerfPoly":
        return cls(p, {(): c})

    @classmethod
    def var(cls, name: str, p: int) -> "PerfPoly":
        return cls(p, {((name, Fraction(1)),): 1})

    @classmethod
    def mono(cls, p: int, exps: Mapping[str, object], coeff: int = 1) -> "PerfPoly":
        return cls(p, {tuple((v, Fraction(e)) for v, e in exps.items()): coeff})

    @classmethod
    def parse(cls, text: str, p: int) -> "PerfPoly":
        return _Parser(text, check_prime(p)).parse()

    def _new(self, terms: dict) -> "PerfPoly":
        return PerfPoly(self.p, {m: c for m, c in terms.items() if c}, _raw=True)

    def _coerce(self, other) -> "PerfPoly":
        if isinstance(other, PerfPoly):
            if other.p != self.p:
                raise CharacteristicMismatch(f"characteristics {self.p} and {other.p}")
            return other
        if isinstance(other, FpElem):
            other = other.value
        if isinstance(other, int):
            return PerfPoly.const(other, self.p)
        return NotImplemented

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def variables(self) -> tuple:
        return tuple(sorted({v for m in self._terms for v, _ in m}))

    def constant_term(self) -> int:
        return self._terms.get((), 0)

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_integral(self) -> bool:
        """True if every exponent is an integer."""
        return all(e.denominator == 1 for m in self._terms for _, e in m)

    def radicial_depth(self) -> int:
        depth = 0
        for m in self._terms:
            for _, e in m:
                if e.denominator != 1:
                    depth = max(depth, p_valuation(e.denominator, self.p))
        return depth

    def degree(self, var: str) -> Fraction:
        """Largest exponent of ``var`` (0 for the zero polynomial)."""
        return max((dict(m).get(var, Fraction(0)) for m in self._terms), default=Fraction(0))

    def min_degree(self, var: str) -> Fraction:
        return min((dict(m).get(var, Fraction(0)) for m in self._terms), default=Fraction(0))

    def split(self, var: str) -> dict:
        """Map exponent of ``var`` -> coefficient PerfPoly free of ``var``."""
        out: dict[Fraction, dict] = {}
        for m, c in self._terms.items():
            d = dict(m)
            e = d.pop(var, Fraction(0))
            out.setdefault(e, {})[tuple(sorted(d.items()))] = c
        return {e: self._new(t) for e, t in out.items()}

    def coefficient(self, var: str, exp=0) -> "PerfPoly":
        return self.split(var).get(Fraction(exp), PerfPoly(self.p, {}, _raw=True))

    def select(self, predicate) -> "PerfPoly":
        """Sub-polynomial of the terms whose monomial dict satisfies ``predicate``."""
        return self._new({m: c for m, c in self._terms.items() if predicate(dict(m))})

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        p = self.p
        for m, c in other._terms.items():
            acc[m] = (acc.get(m, 0) + c) % p
        return self._new(acc)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return self._new({m: (-c) % p for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        acc: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                acc[m] = (acc.get(m, 0) + c1 * c2) % p
        return self._new(acc)

    __rmul__ = __mul__

    def inverse_monomial(self) -> "PerfPoly":
        if not self.is_monomial():
            raise ZeroDivisionError("only monomials are invertible")
        ((m, c),) = self._terms.items()
        return self._new({_mono_scale(m, Fraction(-1)): pow(c, -1, self.p)})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse_monomial()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return self.monomial_power(n)
        if n < 0:
            return self.inverse_monomial() ** (-n)
        result = PerfPoly.const(1, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monomial_power(self, e) -> "PerfPoly":
        """Raise a monomial to a rational power with p-power denominator."""
        e = Fraction(e)
        if not self.is_monomial():
            raise PreconditionError("rational powers are defined for monomials only")
        ((m, c),) = self._terms.items()
        if e.denominator != 1:
            _check_exponent(e, self.p)
            # c^(1/p) = c in F_p
            cc = pow(c, e.numerator, self.p) if e.numerator >= 0 else pow(pow(c, -1, self.p), -e.numerator, self.p)
        else:
            cc = pow(c, int(e), self.p) if e >= 0 else pow(pow(c, -1, self.p), -int(e), self.p)
        return PerfPoly(self.p, {_mono_scale(m, e): cc})

    def frobenius(self, k: int = 1) -> "PerfPoly":
        """q -> q^(p^k); exact because (a+b)^p = a^p + b^p and c^p = c."""
        factor = Fraction(self.p**k)
        return self._new({_mono_scale(m, factor): c for m, c in self._terms.items()})

    def pth_root(self, k: int = 1) -> "PerfPoly":
        if k < 0:
            raise ValueError("k must be nonnegative")
        factor = Fraction(1, self.p**k)
        return self._new({_mono_scale(m, factor): c for m, c in self._terms.items()})

    def derivative(self, var: str) -> "PerfPoly":
        acc: dict = {}
        p = self.p
        for m, c in self._terms.items():
            d = dict(m)
            e = d.get(var, Fraction(0))
            if e == 0:
                continue
            if e.denominator != 1:
                raise PreconditionError("derivative of a fractional power is undefined")
            coeff = (c * int(e)) % p
            if not coeff:
                continue
            if e == 1:
                del d[var]
            else:
                d[var] = e - 1
            key = tuple(sorted(d.items()))
            acc[key] = (acc.get(key, 0) + coeff) % p
        return self._new(acc)

    def subs(self, values: Mapping[str, "PerfPoly | int"]) -> "PerfPoly":
        """Substitute polynomials for variables.

        Integer exponents may be arbitrary when the substituted value is a
        monomial; otherwise they must be nonnegative.  Fractional exponents
        require a monomial value.
        """
        vals = {v: self._coerce(q) for v, q in values.items()}
        cache: dict = {}

        def power(var, e):
            key = (var, e)
            if key not in cache:
                q = vals[var]
                if e.denominator == 1 and (e >= 0 or q.is_monomial()):
                    cache[key] = q ** int(e)
                elif q.is_monomial():
                    cache[key] = q.monomial_power(e)
                elif q.is_zero():
                    raise ZeroDivisionError(f"{var} -> 0 with exponent {e}")
                else:
                    raise PreconditionError(f"cannot raise non-monomial to power {e}")
            return cache[key]

        result = self._new({})
        for m, c in self._terms.items():
            rest = []
            term = PerfPoly.const(c, self.p)
            for v, e in m:
                if v in vals:
                    term = term * power(v, e)
                else:
                    rest.append((v, e))
            if rest:
                term = term * PerfPoly(self.p, {tuple(rest): 1}, _raw=True)
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, int]) -> "PerfPoly":
        """Evaluate variables at elements of F_p.

        Frobenius is the identity on F_p, so a^(n/p^k) = a^n there.
        """
        p = self.p
        acc: dict = {}
        for m, c in self._terms.items():
            rest = []
            val = c
            for v, e in m:
                if v in point:
                    a = point[v] % p
                    n = e.numerator
                    if a == 0:
                        if n < 0:
                            raise ZeroDivisionError(f"pole of {v} at 0")
                        val = 0
                    else:
                        val = val * pow(a, n % (p - 1), p) % p
                else:
                    rest.append((v, e))
            key = tuple(rest)
            acc[key] = (acc.get(key, 0) + val) % p
        return self._new(acc)

    def value_at(self, point: Mapping[str, int]) -> int:
        q = self.evaluate(point)
        if not q.is_constant():
            raise PreconditionError(f"free variables {q.variables} remain after evaluation")
        return q.constant_term()

    # comparison / printing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, FpElem)):
            other = PerfPoly.const(int(other), self.p)
        if not isinstance(other, PerfPoly):
            return NotImplemented
        return self.p == other.p and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda mc: _mono_key(mc[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(_term_text(m, c) for m, c in self.sorted_terms())

    def __repr__(self):
        return f"PerfPoly(p={self.p}, {str(self)!r})"


def _mono_key(m: Monomial):
    # total degree first, then lexicographic on (variable, exponent)
    return (sum(e for _, e in m), tuple((v, -e) for v, e in m))


def _exp_text(e: Fraction) -> str:
    if e == 1:
        return ""
    if e.denominator == 1 and e > 0:
        return f"^{e.numerator}"
    if e.denominator == 1:
        return f"^({e.numerator})"
    return f"^({e.numerator}/{e.denominator})"


def _term_text(m: Monomial, c: int) -> str:
    factors = [f"{v}{_exp_text(e)}" for v, e in m]
    if c != 1 or not factors:
        factors.insert(0, str(c))
    return "*".join(factors)


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\S))")


class _Parser:
    def __init__(self, text: str, p: int):
        self.text = text
        self.p = p
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"cannot tokenize {text[pos:]!r}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("name", name))
            else:
                if op not in "+-*/^()":
                    raise ParseError(f"unexpected character {op!r} in {self.text!r}")
                self.tokens.append(("op", op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or kind} at token {self.i} in {self.text!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> PerfPoly:
        if not self.tokens:
            raise ParseError("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input in {self.text!r}")
        return result

    def expr(self) -> PerfPoly:
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> PerfPoly:
        acc = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_monomial():
                    raise ParseError(f"division by non-monomial {rhs} in {self.text!r}")
                acc = acc / rhs
        return acc

    def unary(self) -> PerfPoly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> PerfPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = self.exponent()
            try:
                if e.denominator == 1 and (e >= 0 or base.is_monomial()):
                    return base ** int(e)
                return base.monomial_power(e)
            except (PreconditionError, ZeroDivisionError) as exc:
                raise ParseError(f"bad power in {self.text!r}: {exc}") from None
        return base

    def atom(self) -> PerfPoly:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return PerfPoly.const(val, self.p)
        if kind == "name":
            self.take()
            return PerfPoly.var(val, self.p)
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")

    # exponents are evaluated as exact rationals
    def exponent(self) -> Fraction:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return Fraction(val)
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.exponent()
        if (kind, val) == ("op", "("):
            self.take()
            e = self._rat_expr()
            self.take("op", ")")
            return e
        raise ParseError(f"bad exponent in {self.text!r}")

    def _rat_expr(self) -> Fraction:
        acc = self._rat_term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self._rat_term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _rat_term(self) -> Fraction:
        acc = self._rat_unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self._rat_unary()
            if op == "/" and rhs == 0:
                raise ParseError("division by zero in exponent")
            acc = acc * rhs if op == "*" else acc / rhs
        return acc

    def _rat_unary(self) -> Fraction:
        if self.peek() == ("op", "-"):
            self.take()
            return -self._rat_unary()
        kind, val = self.peek()
        if kind == "num":
            self.take()
            base = Fraction(val)
        elif (kind, val) == ("op", "("):
            self.take()
            base = self._rat_expr()
            self.take("op", ")")
        else:
            raise ParseError(f"bad exponent token {val!r} in {self.text!r}")
        if self.peek() == ("op", "^"):
            self.take()
            k = self._rat_unary()
            if k.denominator != 1:
                raise ParseError("fractional power inside an exponent")
            base = base ** int(k)
        return base


# ---------------------------------------------------------------------------
# Artin-Schreier reduction


def pth_root(q: PerfPoly, k: int = 1) -> PerfPoly:
    return q.pth_root(k)


def _active_degree(m: Monomial, active) -> Fraction:
    return sum((e for v, e in m if v in active), Fraction(0))


def artin_schreier_reduce(psi: PerfPoly, active_vars: Iterable[str]) -> PerfPoly:
    """Normal form of ``psi`` modulo c*m^p ~ c*m for monomials m of positive
    degree in ``active_vars``.

    A term is replaced by its p-th root while its active exponents are all
    integers divisible by p; terms constant in the active variables are kept.
    """
    active = frozenset(active_vars)
    p = psi.p
    inv = Fraction(1, p)
    acc: dict = {}
    for m, c in psi.items():
        while True:
            act = [e for v, e in m if v in active]
            if not act or sum(act) <= 0:
                break
            if all(e.denominator == 1 and e.numerator % p == 0 for e in act):
                m = _mono_scale(m, inv)
            else:
                break
        acc[m] = (acc.get(m, 0) + c) % p
    return PerfPoly(p, {m: c for m, c in acc.items() if c}, _raw=True)


def is_fp_linear(psi: PerfPoly, active_vars: Iterable[str]) -> bool:
    """True if each term of positive active degree is (coefficient) * (one
    active variable to the first power)."""
    active = frozenset(active_vars)
    for m, _ in psi.items():
        act = [(v, e) for v, e in m if v in active]
        if not act:
            continue
        if len(act) != 1 or act[0][1] != 1:
            return False
    return True


def linear_coefficients(psi: PerfPoly, active_vars: Iterable[str]) -> tuple[dict, PerfPoly]:
    """Split an F_p-linear ``psi`` into {var: coefficient} and the part
    constant in the active variables."""
    active = tuple(active_vars)
    if not is_fp_linear(psi, active):
        raise PreconditionError(f"{psi} is not linear in {active}")
    coeffs = {v: psi.coefficient(v, 1) for v in active}
    const = psi.select(lambda d: not any(v in d for v in active))
    return coeffs, const


def dual_injectivity_test(forms: Mapping[tuple, PerfPoly], p: int, k: int | None = None) -> bool:
    """Given linear forms indexed by the nonzero characters of (Z/p)^k, check
    additivity and report whether every nonzero character has a nonzero form."""
    check_prime(p)
    if not forms:
        raise PreconditionError("no forms given")
    if k is None:
        k = len(next(iter(forms)))
    chars = [c for c in itertools.product(range(p), repeat=k) if any(c)]
    norm = {tuple(x % p for x in chi): f for chi, f in forms.items()}
    missing = [c for c in chars if c not in norm]
    if missing:
        raise PreconditionError(f"forms missing for characters {missing[:3]}")
    zero = PerfPoly(p, {})
    get = lambda c: zero if not any(c) else norm[c]  # noqa: E731
    for a in chars:
        for b in chars:
            s = tuple((x + y) % p for x, y in zip(a, b))
            if get(s) != get(a) + get(b):
                raise PreconditionError(f"forms are not additive at {a} + {b}")
    return all(not norm[c].is_zero() for c in chars)


# ---------------------------------------------------------------------------
# twisted polynomial ring A[F]


class TwistedPoly:
    """sum_n a_n F^n with F * a = a^p * F."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs: Iterable[PerfPoly], p: int | None = None):
        coeffs = list(coeffs)
        if p is None:
            if not coeffs:
                raise ValueError("p required for the zero twisted polynomial")
            p = coeffs[0].p
        for a in coeffs:
            if a.p != p:
                raise CharacteristicMismatch(f"coefficient over F_{a.p} in A[F] over F_{p}")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.p = p
        self.coeffs = tuple(coeffs)

    @classmethod
    def frob(cls, p: int) -> "TwistedPoly":
        return cls([PerfPoly(p, {}), PerfPoly.const(1, p)], p)

    @classmethod
    def scalar(cls, a: PerfPoly) -> "TwistedPoly":
        return cls([a], a.p)

    def _coerce(self, other):
        if isinstance(other, TwistedPoly):
            if other.p != self.p:
                raise CharacteristicMismatch(f"A[F] over F_{self.p} vs F_{other.p}")
            return other
        if isinstance(other, int):
            other = PerfPoly.const(other, self.p)
        if isinstance(other, PerfPoly):
            return TwistedPoly.scalar(other) if other.p == self.p else _raise_mismatch(self.p, other.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        zero = PerfPoly(self.p, {})
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = other.coeffs + (zero,) * (n - len(other.coeffs))
        return TwistedPoly([x + y for x, y in zip(a, b)], self.p)

    __radd__ = __add__

    def __neg__(self):
        return TwistedPoly([-a for a in self.coeffs], self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return twisted_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return twisted_mul(other, self)

    def __eq__(self, other):
        if not isinstance(other, TwistedPoly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def apply(self, z: PerfPoly) -> PerfPoly:
        """Evaluate as the additive operator z -> sum a_n z^(p^n)."""
        out = PerfPoly(self.p, {})
        for n, a in enumerate(self.coeffs):
            out = out + a * z.frobenius(n)
        return out

    def normal_form(self) -> PerfPoly:
        return normal_form_mod_F_minus_1(self)

    def __repr__(self):
        parts = [f"({a})*F^{n}" for n, a in enumerate(self.coeffs) if a]
        return "TwistedPoly(" + (" + ".join(parts) or "0") + ")"


def _raise_mismatch(p, q):
    raise CharacteristicMismatch(f"A[F] over F_{p} vs coefficient over F_{q}")


def twisted_mul(a: TwistedPoly, b: TwistedPoly) -> TwistedPoly:
    """(a F^m)(b F^n) = a * b^(p^m) F^(m+n)."""
    if a.p != b.p:
        raise CharacteristicMismatch(f"A[F] over F_{a.p} vs F_{b.p}")
    p = a.p
    if not a.coeffs or not b.coeffs:
        return TwistedPoly([], p)
    out = [PerfPoly(p, {}) for _ in range(len(a.coeffs) + len(b.coeffs) - 1)]
    for m, am in enumerate(a.coeffs):
        if am.is_zero():
            continue
        for n, bn in enumerate(b.coeffs):
            out[m + n] = out[m + n] + am * bn.frobenius(m)
    return TwistedPoly(out, p)


def normal_form_mod_F_minus_1(t: TwistedPoly) -> PerfPoly:
    """Image of t in A[F]/(F-1)A[F], identified with the perfection of A:
    sum_n a_n F^n -> sum_n a_n^(1/p^n)."""
    out = PerfPoly(t.p, {})
    for n, a in enumerate(t.coeffs):
        out = out + a.pth_root(n)
    return out


# ---------------------------------------------------------------------------
# univariate helpers over F_p (dense coefficient lists, low degree first)


def to_dense(q: PerfPoly, var: str) -> list[int]:
    if not q.is_integral() or any(v != var for v in q.variables):
        raise PreconditionError(f"{q} is not an integral polynomial in {var}")
    if q.min_degree(var) < 0:
        raise PreconditionError(f"{q} has negative powers of {var}")
    out = [0] * (int(q.degree(var)) + 1)
    for m, c in q.items():
        out[int(dict(m).get(var, 0))] = c
    return _trim(out)


def from_dense(coeffs: list[int], var: str, p: int) -> PerfPoly:
    return PerfPoly(p, {((var, Fraction(i)),) if i else (): c for i, c in enumerate(coeffs) if c % p})


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def dense_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd in F_p[t]."""
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        # a mod b
        inv = pow(b[-1], -1, p)
        a = a[:]
        while len(a) >= len(b) and a:
            q = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - q * c) % p
            _trim(a)
        a, b = b, a
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def univariate_gcd(a: PerfPoly, b: PerfPoly, var: str) -> PerfPoly:
    return from_dense(dense_gcd(to_dense(a, var), to_dense(b, var), a.p), var, a.p)
