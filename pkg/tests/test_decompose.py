import random

import pytest

from conftest import field_xy, random_bivariate, random_composite
from ratspectrum.decompose import char_guard, is_composite
from ratspectrum.errors import GuardError, PreconditionError
from ratspectrum.noether import pencil_matrix
from ratspectrum.polyring import PolyRing, RationalFunction, multipoly_gcd
from ratspectrum.ring import GF, QQ, bareiss_det
from ratspectrum.spectrum import check_pencil, spect_poly


def test_char_guard_examples():
    assert char_guard(0, 2) == "ok"
    assert char_guard(5, 2) == "ok"
    assert char_guard(3, 2) == "criterion_only"
    assert char_guard(2, 2) == "blocked"
    assert char_guard(GF(7), 3) == "criterion_only"
    assert char_guard(QQ, 5) == "ok"


def test_examples(QXY):
    R, X, Y = QXY
    v = is_composite((X * Y, R(1)))
    assert not v.composite and v.witness_form is not None and not v.witness_form.is_zero()
    v = is_composite(RationalFunction(X**2 * Y**2, R(1)))
    assert v.composite and v.witness_form is None
    assert v.to_json()["witness"] == "all minors vanish"
    v = is_composite((X**2 + Y, R(1)))
    assert not v.composite


def test_rejections(QXY):
    R, X, Y = QXY
    R1 = PolyRing(QQ, ["X"])
    (x,) = R1.gens()
    with pytest.raises(PreconditionError):
        is_composite((x**2, R1(1)))
    R3 = PolyRing(QQ, ["X", "Y", "Z"])
    X3, Y3, Z3 = R3.gens()
    with pytest.raises(PreconditionError, match="bertini_reduce"):
        is_composite((X3 + Y3 * Z3, R3(1)))
    with pytest.raises(PreconditionError):
        is_composite((R(3), R(1)))
    Rp, Xp, Yp = field_xy(2)
    with pytest.raises(GuardError):
        is_composite((Xp**2 + Yp, Rp(1)))


def _check_witness(f, g, verdict, rng, K):
    ff, gg, d = check_pencil(f, g)
    pm = pencil_matrix(ff, gg, d)
    rows = list(verdict.witness_index)
    assert len(rows) == pm.ncols
    w = verdict.witness_form
    for _ in range(3):
        lam = K(rng.randint(-20, 20)) if K is QQ else K(rng.randrange(K.p))
        mu = K(rng.randint(1, 20)) if K is QQ else K(rng.randrange(1, K.p))
        M = pm.at(lam, mu)
        det = bareiss_det([M[i] for i in rows], lambda a, b: a / b)
        assert w.evaluate(lam, mu) == det


def test_witnesses_verify(QXY):
    rng = random.Random(31)
    R, X, Y = QXY
    for f, g in [(X * Y, R(1)), (X**2 + Y, R(1)), (X**2 + Y**2, R(1)), (X**2 - Y, X + 1)]:
        v = is_composite((f, g))
        assert not v.composite
        _check_witness(f, g, v, rng, QQ)
    for _ in range(8):
        p = rng.choice([7, 11, 13])
        K = GF(p)
        f = random_bivariate(K, 2, rng)
        g = random_bivariate(K, rng.randint(0, 2), rng)
        if not multipoly_gcd(f, g).is_constant():
            continue
        v = is_composite((f, g))
        if not v.composite:
            _check_witness(f, g, v, rng, K)


def test_composition_closure(QXY):
    # deg h = 1 here keeps the pencils at d = 2; the acceptance suite covers deg h = 2
    rng = random.Random(77)
    R, X, Y = QXY
    for _ in range(15):
        f, g = random_composite(rng, R, max_h_degree=1)
        assert is_composite((f, g)).composite
        assert spect_poly(f, g).spect.is_zero()


def test_verdict_json_and_modes(QXY):
    R, X, Y = QXY
    j = is_composite((X * Y + X, R(1)), mode="mc", seed=9).to_json()
    assert j["mode"] == "mc" and j["seed"] == 9 and not j["composite"]
    assert "witness_form" in j and "witness_index" in j
    assert is_composite((X * Y, R(1))).descent_note.startswith("composite over the base field")
