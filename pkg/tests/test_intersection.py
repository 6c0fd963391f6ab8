import pytest

from wildram.errors import DegenerateForm, InvariantError, NonStratifiable, ParseError, PreconditionError, TameInput
from wildram.ff_algebra import PerfPoly
from wildram.intersection import (
    MODELS,
    P1xP1,
    P2,
    DivisorClass,
    SurfaceModel,
    covering_euler,
    euler_number,
    euler_p2,
    fibration_oracle,
    gos_curve,
    intersect,
    swan_at_infinity,
)

QUADRATICS = ["x*y", "x*y + x^2", "x*y + y^2 + x", "x*y + x^2 + y^2 + y + 1", "x*y + y", "x*y + x^2 + x + y"]


def test_intersection_numbers():
    H = DivisorClass((1,))
    assert intersect(P2, H, H) == 1
    assert intersect(P2, P2.canonical, 3 * H) == -9
    a, b = DivisorClass((1, 0)), DivisorClass((0, 1))
    assert intersect(P1xP1, a, a) == 0 and intersect(P1xP1, a, b) == 1
    with pytest.raises(PreconditionError):
        intersect(P2, a, b)


@pytest.mark.parametrize("r", range(2, 8))
def test_p2_formula(r):
    assert euler_number(P2, 1, DivisorClass((r,)), True) == 3 + (r - 3) * r


def test_other_models():
    assert euler_number(P2, 1, DivisorClass((3,)), True) == 3
    assert euler_number(P1xP1, 1, DivisorClass((2, 3)), True) == 6
    assert euler_number(P1xP1, 2, DivisorClass((2, 2)), True) == 8
    with pytest.raises(TameInput):
        euler_number(P2, 1, DivisorClass((2,)), False)
    with pytest.raises(InvariantError):
        euler_number(P2, 1, DivisorClass(("1/2",)), True)


def test_model_io():
    text = '[surface]\nname = "P2"\nmatrix = [[1]]\nK = [-3]\nchi_top = 3\n'
    assert SurfaceModel.from_toml(text) == P2
    assert SurfaceModel.from_dict(P1xP1.to_dict()) == P1xP1
    assert set(MODELS) == {"p2", "p1xp1"}
    with pytest.raises(ParseError):
        SurfaceModel.from_toml("[surface]\nname = 1")
    with pytest.raises(PreconditionError):
        SurfaceModel("bad", ((0, 1), (2, 0)), (0, 0), 4)


def test_covering_and_curves():
    assert covering_euler(P2, 2, 1) == 4
    assert covering_euler(P2, 3, [1, 2]) == 6
    with pytest.raises(PreconditionError):
        covering_euler(P2, 3, [1])
    # A^1 with a Swan-2 character at infinity
    assert gos_curve(1, 1, [2]) == -1


def test_xy_pipeline():
    rep = euler_p2(2, "x*y")
    assert (rep.slope, rep.chi_c, rep.chi_Y) == (2, 1, 4)
    assert rep.to_dict()["R"] == "2*H"


def test_degenerate_inputs_are_refused():
    # form vanishes at [0:1:0]; the surface formula would give 7
    with pytest.raises(DegenerateForm):
        euler_p2(2, "x^3*y")
    assert fibration_oracle(2, "x^3*y") == 1
    with pytest.raises(DegenerateForm):
        euler_p2(3, "x*y")


@pytest.mark.parametrize("f", QUADRATICS)
def test_oracle_agreement(f):
    assert euler_p2(2, f).chi_c == fibration_oracle(2, f) == fibration_oracle(2, f, "y")


def test_fibration_oracle_simple_cases():
    assert fibration_oracle(2, "1") == 1
    assert fibration_oracle(2, "x") == 0
    assert fibration_oracle(3, "x^2") == -1
    assert fibration_oracle(2, "x^2 + x^3") == -2
    with pytest.raises(NonStratifiable):
        fibration_oracle(3, "x*y^2")
    with pytest.raises(PreconditionError):
        fibration_oracle(3, "x*z")


def test_swan_at_infinity():
    p = 3
    assert swan_at_infinity(PerfPoly.parse("x^9 + x^2", p), "x") == 2
    assert swan_at_infinity(PerfPoly.parse("x^(1/3)", p), "x") == 1
    assert swan_at_infinity(PerfPoly.parse("x^3 - x", p), "x") == 0
    with pytest.raises(PreconditionError):
        swan_at_infinity(PerfPoly.parse("1/x", p), "x")
