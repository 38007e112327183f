import random
from fractions import Fraction

import pytest

from ratspectrum.parser import ParseError, parse_pencil, parse_poly, parse_ring
from ratspectrum.polyring import MultiPoly, PolyRing
from ratspectrum.ring import GF, QQ, ZZ


def _xy(names=("X1", "X2")):
    R = PolyRing(QQ, names)
    return R, R.gens()


def test_examples():
    R, (X, Y) = _xy()
    assert parse_poly("X^2 + Y^2 - 1").poly == X**2 + Y**2 - 1
    assert parse_poly("3x^2y - 2", variables=("x", "y")).poly.terms == {(2, 1): 3, (0, 0): -2}
    with pytest.raises(ParseError) as exc:
        parse_poly("X^2 + ")
    assert exc.value.offset == 6


def test_precedence():
    R, (X, Y) = _xy()
    assert parse_poly("-X^2", min_vars=2).poly == -(X**2)
    assert parse_poly("2*X^2*3 + Y", min_vars=2).poly == 6 * X**2 + Y
    assert parse_poly("(X + Y)^2 - X*Y").poly == X**2 + X * Y + Y**2
    assert parse_poly("X - Y - 1").poly == X - Y - 1
    assert parse_poly("X/2 + 3/4", min_vars=2).poly == Fraction(1, 2) * X + Fraction(3, 4)
    assert parse_poly("2(x+1)y").poly == 2 * X * Y + 2 * Y
    assert parse_poly("0.5x", min_vars=2).poly == Fraction(1, 2) * X


def test_errors():
    with pytest.raises(ParseError) as exc:
        parse_poly("X + W")
    assert exc.value.offset == 4
    with pytest.raises(ParseError):
        parse_poly("x + q", variables=("x", "y"))
    with pytest.raises(ParseError):
        parse_poly("X / Y")
    with pytest.raises(ParseError):
        parse_poly("X^-1")
    with pytest.raises(ParseError):
        parse_poly("X $ Y")
    with pytest.raises(ParseError):
        parse_poly("X/2", ring="Z")
    with pytest.raises(ParseError):
        parse_poly("X/7", ring="Fp:7")
    with pytest.raises(ParseError):
        parse_poly("")


def test_rings():
    assert parse_poly("X/3", ring="Fp:7").poly.terms == {(1,): GF(7)(5)}
    assert parse_poly("2X", ring="Z").poly.ring is ZZ
    assert str(parse_ring("QZ:2")) == "QZ:2"
    with pytest.raises(ValueError):
        parse_ring("Fp:8")
    with pytest.raises(ValueError):
        parse_ring("R")


def test_parameters():
    [f, g] = parse_pencil(["X^2 + Z*Y", "1"], ring="QZ:1")
    assert f.poly.ring.domain.names == ("Z1",)
    assert f.poly.nvars == 2
    [f] = parse_pencil(["x*z"], ring="QZ:1", split=False)
    assert f.variables == ("X1", "X2", "Z1")


def test_pencil_shares_variables():
    f, g = parse_pencil(["X", "Z"])
    assert f.variables == g.variables == ("X1", "X2", "X3")


def _random_poly(rng):
    names = ("X1", "X2", "X3")
    terms = {}
    for _ in range(rng.randint(1, 6)):
        e = tuple(rng.randint(0, 3) for _ in names)
        terms[e] = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
    return MultiPoly(QQ, names, terms)


def test_round_trip():
    rng = random.Random(2)
    for _ in range(100):
        P = _random_poly(rng)
        text = P.to_text()
        Q = parse_poly(text, min_vars=3).poly
        assert Q == P, text
