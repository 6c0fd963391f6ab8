import random

import pytest

from oracles import random_character_text, random_transversal_curve
from wildram.curves import (
    Curve,
    contact_order,
    one_variable_slope,
    reduce_one_variable,
    restrict_to_curve,
)
from wildram.cycles import SNCSheafData, curve_intersection, total_dimension_divisor
from wildram.errors import PreconditionError
from wildram.ff_algebra import PerfPoly
from wildram.ramification import ASCharacter, analyze, noncharacteristic_curve_test


def test_curve_parsing_and_invariants():
    c = Curve.parse(3, "t^2 + t^3", "1 + a*t", {"a": 2})
    assert c.contact == 2 and c.base_point == 1 and c.tangent == (0, 2)
    with pytest.raises(PreconditionError):
        Curve.parse(3, "t", "b*t")
    with pytest.raises(PreconditionError):
        Curve.parse(3, "0", "t").contact


def test_one_variable_reduction_and_slope():
    assert reduce_one_variable({-4: 1}, 2) == {-1: 1}
    assert reduce_one_variable({-2: 1, -1: 1}, 2) == {}
    assert one_variable_slope({}, 3) == 1
    assert one_variable_slope({-1: 1}, 3) == 2
    assert one_variable_slope({-5: 2, -1: 1}, 3) == 6


@pytest.mark.parametrize(
    "p,f,x,y,dimtot",
    [
        (2, "y/x^2", "t", "t", 2),
        (2, "y/x^2", "t", "0", 1),
        (2, "y/x^2", "t^2", "t", 4),
        (2, "y/x^2", "t + t^2", "1 + t", 1),
        (3, "1/x^4", "t", "0", 5),
        (5, "1/x^2", "t^3", "0", 7),
    ],
)
def test_restriction_examples(p, f, x, y, dimtot):
    res = restrict_to_curve(ASCharacter.parse(p, f), Curve.parse(p, x, y))
    assert res.dimtot == dimtot


def test_contact_order():
    c = Curve.parse(3, "t^2", "t + t^4")
    assert contact_order(c, PerfPoly.parse("x", 3)) == 2
    assert contact_order(c, PerfPoly.parse("y^2 - x", 3)) == 5
    with pytest.raises(PreconditionError):
        contact_order(Curve.parse(3, "t^2", "t"), PerfPoly.parse("y^2 - x", 3))


def _dichotomy_case(rng):
    while True:
        p = rng.choice([2, 3, 5])
        ch = ASCharacter.parse(p, random_character_text(rng, p))
        rep = analyze(ch)
        if not rep.wild:
            continue
        curve = Curve.parse(p, *random_transversal_curve(rng, p))
        if rep.form.is_degenerate_at(curve.base_point):
            continue
        return ch, rep, curve


def test_conductor_intersection_dichotomy():
    rng = random.Random(11)
    strict = 0
    for _ in range(150):
        ch, rep, curve = _dichotomy_case(rng)
        restricted = restrict_to_curve(ch, curve).dimtot
        dt = total_dimension_divisor(SNCSheafData.from_reports(2, [rep]))
        bound = curve_intersection(dt, curve)
        assert restricted <= bound
        nc = noncharacteristic_curve_test(rep.form, curve.tangent, curve.base_point)
        assert (restricted == bound) == nc, (str(ch.f), curve)
        strict += restricted < bound
    assert strict > 0


def test_inequality_for_higher_contact():
    rng = random.Random(5)
    for _ in range(100):
        p = rng.choice([2, 3])
        ch = ASCharacter.parse(p, random_character_text(rng, p))
        rep = analyze(ch)
        e = rng.randint(2, 3)
        curve = Curve.parse(p, f"t^{e} + t^{e + 1}", f"{rng.randrange(p)} + t")
        assert restrict_to_curve(ch, curve).dimtot <= rep.dimtot * e
