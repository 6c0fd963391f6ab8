import json
import random
from fractions import Fraction

import pytest

from oracles import random_character_text
from wildram.cycles import (
    CONORMAL,
    LINE_IMAGE,
    ZERO_SECTION,
    Component,
    CotangentCycle,
    CycleComponent,
    SNCSheafData,
    characteristic_cycle,
    check_integrality,
    total_dimension_divisor,
)
from wildram.errors import IntegralityViolation, PreconditionError
from wildram.ramification import ASCharacter, analyze


def rep(p, f, comp="D"):
    return analyze(ASCharacter.parse(p, f, comp))


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (3, 4), (2, 3), (5, 6)])
def test_curve_cycle_coefficient_is_dimtot(p, n):
    r = rep(p, f"1/x^{n}")
    cyc = characteristic_cycle(SNCSheafData.from_reports(1, [r]))
    assert cyc.coefficient(ZERO_SECTION) == -1
    assert cyc.coefficient(CONORMAL, ("D",)) == -r.dimtot == -(n + 1)


def test_surface_cycle_radicial_division():
    cyc = characteristic_cycle(SNCSheafData.from_reports(2, [rep(2, "y/x^2")]))
    assert cyc.coefficient(ZERO_SECTION) == 1
    assert cyc.coefficient(LINE_IMAGE, ("D",)) == 1
    assert check_integrality(cyc).conjecture_holds


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (3, 6)])
def test_surface_cycle_depth_zero(p, n):
    cyc = characteristic_cycle(SNCSheafData.from_reports(2, [rep(p, f"y/x^{n}")]))
    assert cyc.coefficient(ZERO_SECTION) == 1
    assert cyc.coefficient(LINE_IMAGE, ("D",)) == n


def test_threefold_sign():
    cyc = characteristic_cycle(SNCSheafData.from_reports(3, [rep(3, "1/x^2")]))
    assert cyc.coefficient(ZERO_SECTION) == -1
    assert cyc.coefficient(LINE_IMAGE, ("D",)) == -3


def test_soft_flag_on_synthetic_cycle():
    cyc = CotangentCycle(2, 2, (CycleComponent(ZERO_SECTION, (), Fraction(1)), CycleComponent(LINE_IMAGE, ("D",), Fraction(3, 2))))
    report = check_integrality(cyc)
    assert report.p_power_denominators and not report.conjecture_holds
    assert report.denominators == (1, 2)


def test_tame_strata_use_meets():
    comps = (Component("A", 1), Component("B", 1), Component("W", 3, rep(3, "1/x^2", "W").form))
    s = SNCSheafData(3, 2, comps, 1, [("A", "B")])
    cyc = characteristic_cycle(s)
    assert cyc.coefficient(CONORMAL, ("A", "B")) == 1
    assert cyc.coefficient(CONORMAL, ("A",)) == 1
    assert cyc.coefficient(LINE_IMAGE, ("W",)) == 3
    disjoint = characteristic_cycle(SNCSheafData(3, 2, comps, 1))
    assert disjoint.coefficient(CONORMAL, ("A", "B")) == 0


def test_rank_scales_everything():
    s = SNCSheafData.from_reports(2, [rep(3, "y/x^3")], rank=2)
    cyc = characteristic_cycle(s)
    assert cyc.coefficient(ZERO_SECTION) == 2
    assert cyc.coefficient(LINE_IMAGE, ("D",)) == 6
    assert total_dimension_divisor(s)["D"] == 6


def test_validation():
    with pytest.raises(PreconditionError):
        SNCSheafData(2, 2, (Component("A", 1), Component("A", 2)))
    with pytest.raises(PreconditionError):
        SNCSheafData(2, 2, (Component("A", Fraction(1, 2)),))
    with pytest.raises(PreconditionError):
        SNCSheafData(2, 2, (Component("A", 1),), meets=[("A", "Z")])
    with pytest.raises(PreconditionError):
        characteristic_cycle(SNCSheafData(2, 2, (Component("A", 2),)))
    with pytest.raises(IntegralityViolation):
        total_dimension_divisor(SNCSheafData(2, 2, (Component("A", Fraction(5, 2)),)))


def test_non_p_power_denominator_is_rejected():
    form = rep(3, "1/x").form
    bad = SNCSheafData(3, 2, (Component("D", Fraction(7, 2), form),))
    with pytest.raises(IntegralityViolation):
        check_integrality(characteristic_cycle(bad))


def test_json_is_deterministic():
    s = SNCSheafData.from_reports(2, [rep(2, "y/x^2")])
    a, b = characteristic_cycle(s).to_json(), characteristic_cycle(s).to_json()
    assert a == b
    d = json.loads(a)
    assert d["components"][1]["coeff"] == {"num": "1", "den": "1"}


def test_corpus_integrality():
    rng = random.Random(2)
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        r = rep(p, random_character_text(rng, p))
        for dim in (1, 2, 3):
            s = SNCSheafData.from_reports(dim, [r])
            assert all(v.denominator == 1 for v in total_dimension_divisor(s).coefficients.values())
            check_integrality(characteristic_cycle(s))
