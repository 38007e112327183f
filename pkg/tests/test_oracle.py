import random

import pytest

from conftest import field_xy, random_bivariate
from ratspectrum.binaryforms import ProjPoint
from ratspectrum.errors import PreconditionError
from ratspectrum.oracle import _divides, _ext, _poly_to_ext, brute_force_absolutely_reducible, oracle_spectrum
from ratspectrum.polyring import divides, MultiPoly
from ratspectrum.ring import GF


def _verify(P, w):
    F = _ext(w.p, w.k)
    assert _divides(w.factor, _poly_to_ext(P, F), F)
    deg = max(i + j for i, j in w.factor)
    assert 1 <= deg < P.total_degree()


def test_examples():
    R, X, Y = field_xy(5)
    w = brute_force_absolutely_reducible(X**2 + Y**2, 1)
    assert w.reducible and w.text == "X + 2*Y"
    # the witness lives in the base field: check with ordinary trial division
    K = GF(5)
    factor = MultiPoly(K, R.names, {e: _ext(5, 1).vec(c)[0] for e, c in w.factor.items()})
    assert divides(factor, X**2 + Y**2)
    w = brute_force_absolutely_reducible(X**2, 1)
    assert w.reducible and w.text == "X"
    R, X, Y = field_xy(7)
    assert not brute_force_absolutely_reducible(X * Y - 1, 2).reducible


def test_extension_witness():
    R, X, Y = field_xy(7)
    # 3 is not a square mod 7, so the factors need F_49
    assert not brute_force_absolutely_reducible(X**2 - 3 * Y**2, 1).reducible
    w = brute_force_absolutely_reducible(X**2 - 3 * Y**2, 2)
    assert w.reducible and w.k == 2
    _verify(X**2 - 3 * Y**2, w)


def test_oracle_spectrum_examples():
    R, X, Y = field_xy(7)
    K = GF(7)
    assert oracle_spectrum(X * Y, R(1)) == {ProjPoint.make(0, 1, K), ProjPoint.make(1, 0, K)}
    R, X, Y = field_xy(5)
    K = GF(5)
    assert oracle_spectrum(X**2 + Y**2, R(1)) == {ProjPoint.make(0, 1, K), ProjPoint.make(1, 0, K)}
    with pytest.raises(PreconditionError):
        oracle_spectrum(X + Y, X + Y)


def test_ranges_guarded():
    R, X, Y = field_xy(17)
    with pytest.raises(PreconditionError):
        brute_force_absolutely_reducible(X**2 + Y, 2)


def test_completeness_on_products():
    rng = random.Random(13)
    for _ in range(25):
        p = rng.choice([7, 11, 13])
        K = GF(p)
        a = random_bivariate(K, 1, rng)
        b = random_bivariate(K, rng.choice([1, 2]), rng)
        P = a * b
        w = brute_force_absolutely_reducible(P, P.total_degree())
        assert w.reducible
        _verify(P, w)


def test_no_dependency_on_criterion_modules():
    import ratspectrum.oracle as mod

    src = open(mod.__file__).read()
    assert "noether" not in src and "spectrum" not in src.replace("oracle_spectrum", "")
