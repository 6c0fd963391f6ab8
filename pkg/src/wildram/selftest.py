"""Table of reference examples with published values, run by ``wildram selftest``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cycles import CONORMAL, LINE_IMAGE, ZERO_SECTION, SNCSheafData, characteristic_cycle, check_integrality
from .errors import WildramError
from .intersection import euler_p2
from .projective import line_at_infinity
from .ramification import ASCharacter, analyze


@dataclass
class Row:
    name: str
    expected: str
    got: str
    ok: bool


def _form(rep):
    return (str(rep.form.alpha), str(rep.form.beta), rep.form.radicial_depth)


def _inverse_power_rows():
    for p in (2, 3, 5):
        for n in range(1, 8):
            if n % p == 0:
                continue
            rep = analyze(ASCharacter.parse(p, f"1/x^{n}"))
            want = (n + 1, n, (str(-n % p), "0", 0))
            got = (rep.slope_r, rep.swan, _form(rep))
            yield Row(f"p={p} f=1/x^{n}", str(want), str(got), got == want)


def _linear_y_rows():
    for p in (2, 3):
        for n in range(p, 10, p):
            rep = analyze(ASCharacter.parse(p, f"y/x^{n}"))
            if p == n == 2:
                want = (2, ("y^(1/2)", "1", 1))
            else:
                want = (n, ("0", str(-1 % p), 0))
            got = (rep.slope_r, _form(rep))
            yield Row(f"p={p} f=y/x^{n}", str(want), str(got), got == want)


def _plane_rows():
    line = line_at_infinity(2, "x*y")
    got = (line.slope, _form(line.main))
    want = (2, ("y^(1/2)", "1", 1))
    yield Row("p=2 f=x*y: slope and form on the line at infinity", str(want), str(got), got == want)
    rep = euler_p2(2, "x*y")
    got, want = (rep.chi_c, rep.chi_Y), (1, 4)
    yield Row("p=2 f=x*y: chi_c(U) and chi(Y)", str(want), str(got), got == want)


def _cycle_rows():
    for n in (1, 2, 4):
        rep = analyze(ASCharacter.parse(3, f"1/x^{n}"))
        cyc = characteristic_cycle(SNCSheafData.from_reports(1, [rep]))
        got = (cyc.coefficient(ZERO_SECTION), cyc.coefficient(CONORMAL, ("D",)))
        want = (Fraction(-1), Fraction(-rep.dimtot))
        yield Row(f"curve cycle p=3 f=1/x^{n}", str(want), str(got), got == want and rep.dimtot == n + 1)
    rep = analyze(ASCharacter.parse(2, "y/x^2"))
    cyc = characteristic_cycle(SNCSheafData.from_reports(2, [rep]))
    got = (cyc.coefficient(ZERO_SECTION), cyc.coefficient(LINE_IMAGE, ("D",)), check_integrality(cyc).conjecture_holds)
    want = (Fraction(1), Fraction(1), True)
    yield Row("surface cycle p=2 f=y/x^2", str(want), str(got), got == want)


def run_all() -> list[Row]:
    rows = []
    for gen in (_inverse_power_rows, _linear_y_rows, _plane_rows, _cycle_rows):
        try:
            rows.extend(gen())
        except WildramError as exc:
            rows.append(Row(gen.__name__.strip("_"), "no error", f"{type(exc).__name__}: {exc}", False))
    return rows
