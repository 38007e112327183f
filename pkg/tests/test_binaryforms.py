import random
from fractions import Fraction

import pytest

from ratspectrum.binaryforms import BinaryForm, ProjPoint, form_gcd, proj_roots
from ratspectrum.errors import InfiniteSpectrumError, PreconditionError
from ratspectrum.ring import GF, QQ, ZZ


def F(ring, *coeffs):
    """Form with coefficients c_0..c_D of U^i V^(D-i)."""
    return BinaryForm(ring, len(coeffs) - 1, coeffs)


U_Q = F(QQ, 0, 1)
V_Q = F(QQ, 1, 0)


def _mul(a, b):
    out = [a.ring.zero] * (a.degree + b.degree + 1)
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            out[i + j] += x * y
    return BinaryForm(a.ring, a.degree + b.degree, out)


def _random_form(K, D, rng):
    return BinaryForm(K, D, [K(rng.randrange(-5, 6) if K is QQ else rng.randrange(K.p))
                             for _ in range(D + 1)])


def test_form_gcd_examples():
    U2V = F(QQ, 0, 0, 1, 0)  # U^2 V
    UV2 = F(QQ, 0, 1, 0, 0)  # U V^2
    g = form_gcd([U2V, UV2])
    assert g.degree == 2 and g.coeffs == (0, 1, 0)
    a = F(QQ, -1, 0, 1)  # U^2 - V^2
    b = F(QQ, 1, -2, 1)  # (U - V)^2
    g = form_gcd([a, b])
    assert g.degree == 1 and g.coeffs == (-1, 1)
    z = form_gcd([BinaryForm.zero(QQ, 3), BinaryForm.zero(QQ, 3)])
    assert z.is_zero() and z.degree == 3


def test_form_gcd_empty_list():
    with pytest.raises(PreconditionError):
        form_gcd([])


def test_to_text():
    assert F(QQ, -1, 1).to_text() == "U - V"
    assert F(QQ, 0, 1, 0).to_text() == "U*V"


@pytest.mark.parametrize("K", [QQ, GF(7), GF(101)])
def test_form_gcd_divides_and_is_scale_invariant(K):
    rng = random.Random(5)
    for _ in range(40):
        c = _random_form(K, rng.randint(0, 2), rng)
        if c.is_zero():
            continue
        a = _mul(c, _random_form(K, rng.randint(0, 3), rng))
        b = _mul(c, _random_form(K, rng.randint(0, 3), rng))
        if a.is_zero() or b.is_zero():
            continue
        g = form_gcd([a, b])
        assert g.divides(a) and g.divides(b)
        assert c.divides(g)
        s = K(rng.choice([2, 3, -1]))
        a2 = BinaryForm(K, a.degree, [s * x for x in a.coeffs])
        g2 = form_gcd([a2, b])
        assert g2.coeffs == g.coeffs


def test_proj_roots_examples():
    r = proj_roots(F(QQ, 0, 1, 0))
    assert r.roots == [ProjPoint.make(0, 1), ProjPoint.make(1, 0)]
    r = proj_roots(F(QQ, 1, 0, 1))
    assert r.roots == [] and r.cofactor_degree == 2
    K = GF(5)
    r = proj_roots(F(K, 1, 0, 1))
    assert r.roots == [ProjPoint.make(2, 1, K), ProjPoint.make(3, 1, K)]


def test_proj_roots_zero_form():
    with pytest.raises(InfiniteSpectrumError, match="spectrum is infinite"):
        proj_roots(BinaryForm.zero(QQ, 2))


def test_proj_roots_rational():
    # (2U - 3V)(U + V)(U^2 + 1 V^2) V
    f = _mul(_mul(_mul(F(QQ, -3, 2), F(QQ, 1, 1)), F(QQ, 1, 0, 1)), V_Q)
    r = proj_roots(f)
    assert r.roots == [ProjPoint.make(-1, 1), ProjPoint.make(Fraction(3, 2), 1),
                       ProjPoint.make(1, 0)]
    assert r.cofactor_degree == 2
    for pt in r.roots:
        assert f.evaluate(pt.lam, pt.mu) == 0


@pytest.mark.parametrize("p", [2, 7, 13, 97, 1009])
def test_proj_roots_matches_exhaustive_evaluation(p):
    K = GF(p)
    rng = random.Random(p)
    for _ in range(30):
        f = _random_form(K, rng.randint(1, 5), rng)
        if f.is_zero():
            continue
        pts = [ProjPoint.make(x, 1, K) for x in range(p)] + [ProjPoint.make(1, 0, K)]
        expected = [pt for pt in pts if f.evaluate(pt.lam, pt.mu) == 0]
        assert proj_roots(f).roots == sorted(expected, key=ProjPoint.sort_key)


def test_proj_point_normalization():
    assert ProjPoint.make(4, 2) == ProjPoint.make(2, 1)
    assert ProjPoint.make(-3, 0) == ProjPoint.make(1, 0)
    with pytest.raises(PreconditionError):
        ProjPoint.make(0, 0)


def test_json_round_shape():
    j = F(ZZ, 4, 2, -6).to_json()
    assert j["degree"] == 2 and j["ring"] == "Z"
    assert len(j["coefficients"]) == 3
