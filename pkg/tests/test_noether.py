import random

import pytest

from conftest import NAMES, field_xy, random_bivariate
from ratspectrum.binaryforms import BinaryForm
from ratspectrum.errors import DegeneratePencilError, GuardError, PreconditionError
from ratspectrum.noether import (
    determinantal_divisor,
    is_absolutely_irreducible,
    noether_minors,
    pencil_matrix,
    pencil_rank,
    pivot_minor,
    ruppert_system,
    shear,
)
from ratspectrum.oracle import brute_force_absolutely_reducible
from ratspectrum.polyring import MultiPoly, PolyRing, linear_change
from ratspectrum.ring import GF, QQ, bareiss_det, rank_over_field


def test_ruppert_examples(QXY):
    R, X, Y = QXY
    S = ruppert_system(X * Y - 1, 1, 1)
    assert (S.nrows, S.ncols) == (4, 2)
    assert S.has_trivial_kernel()
    S = ruppert_system(X * Y, 1, 1)
    assert S.rank() == 1


@pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (3, 3), (4, 4), (2, 3), (3, 2)])
def test_ruppert_dimensions(QXY, m, n):
    R, X, Y = QXY
    S = ruppert_system(X**m + Y**n + 1, m, n)
    assert S.nrows == (2 * m) * (2 * n)
    assert S.ncols == m * (n + 1) + (m + 1) * (n - 1)


def test_ruppert_pencil_sizes(QXY):
    R, X, Y = QXY
    for d, shape in [(2, (16, 9)), (3, (36, 20)), (4, (64, 35))]:
        pm = pencil_matrix(X**d + Y**d + X, R(1))
        assert (pm.nrows, pm.ncols) == shape
        assert pm.ncols == 2 * d * d + d - 1


def test_zero_matrix_only_for_zero_polynomial(QXY):
    R, X, Y = QXY
    Z = ruppert_system(R(0), 2, 2)
    assert all(x == 0 for row in Z.matrix for x in row)
    for c in (1, -3):
        S = ruppert_system(R(c), 2, 2)
        assert any(x != 0 for row in S.matrix for x in row)
        assert not S.has_trivial_kernel()


def test_entries_are_linear_in_coefficients(QXY):
    R, X, Y = QXY
    P1, P2 = X**2 + 3 * Y, X * Y - 2
    A = ruppert_system(P1, 2, 2).matrix
    B = ruppert_system(P2, 2, 2).matrix
    C = ruppert_system(2 * P1 - P2, 2, 2).matrix
    assert C == [[2 * a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def test_guard():
    R, X, Y = field_xy(2)
    with pytest.raises(GuardError, match="characteristic too small"):
        ruppert_system(X**2 + Y**2 + 1, 2, 2)


def test_is_absolutely_irreducible_examples(QXY):
    R, X, Y = QXY
    assert is_absolutely_irreducible(X**2 + Y**2 - 1, 2)
    assert not is_absolutely_irreducible(X**2 + Y**2, 2)
    assert not is_absolutely_irreducible(X**2 + Y, 3)
    with pytest.raises(PreconditionError):
        is_absolutely_irreducible(R(0), 2)


def test_irreducibility_matches_oracle():
    rng = random.Random(99)
    for _ in range(60):
        p = rng.choice([7, 11, 13])
        d = rng.choice([2, 3])
        K = GF(p)
        P = random_bivariate(K, d, rng)
        if rng.random() < 0.3:
            P = random_bivariate(K, 1, rng) * random_bivariate(K, d - 1, rng)
        expect = not brute_force_absolutely_reducible(P, P.total_degree()).reducible
        assert is_absolutely_irreducible(P, P.total_degree()) == expect


def test_shear_invariance():
    rng = random.Random(8)
    for _ in range(10):
        p = rng.choice([7, 11, 13])
        K = GF(p)
        P = random_bivariate(K, rng.choice([2, 3]), rng)
        base = is_absolutely_irreducible(P)
        for _ in range(10):
            while True:
                A = [[K(rng.randrange(p)) for _ in range(2)] for _ in range(2)]
                if A[0][0] * A[1][1] - A[0][1] * A[1][0]:
                    break
            assert is_absolutely_irreducible(linear_change(P, A, None, NAMES)) == base


def test_noether_minor_examples(QXY):
    R, X, Y = QXY
    ms = noether_minors(pencil_matrix(X * Y, R(1)))
    g = ms.gcd(QQ)
    # vanishes at (0:1); (1:0) is the degree drop and handled by spectrum
    assert not g.is_zero()
    assert g.evaluate(0, 1) == 0
    for lam in (1, 2, -3):
        assert g.evaluate(lam, 1) != 0
    ms = noether_minors(pencil_matrix(X**2 * Y**2, R(1)))
    assert ms.all_vanish and ms.gcd(QQ).is_zero()
    with pytest.raises(DegeneratePencilError):
        pencil_matrix(R(1), R(1))


def test_pencil_matrix_specializes_to_ruppert_matrix():
    rng = random.Random(21)
    for _ in range(10):
        p = rng.choice([7, 11, 13])
        K = GF(p)
        f = random_bivariate(K, 2, rng)
        g = random_bivariate(K, rng.randint(0, 2), rng)
        pm = pencil_matrix(f, g, 2)
        v1, v2 = pm.directions
        for _ in range(3):
            lam, mu = K(rng.randrange(p)), K(rng.randrange(p))
            if not lam and not mu:
                continue
            member = shear(f * mu - g * lam, v1, v2)
            assert pm.at(lam, mu) == ruppert_system(member, 2, 2, 2).matrix


def test_minor_specialization_commutes():
    rng = random.Random(5)
    checked = 0
    for _ in range(12):
        p = rng.choice([7, 11, 13])
        K = GF(p)
        f = random_bivariate(K, 2, rng)
        g = random_bivariate(K, rng.randint(0, 2), rng)
        pm = pencil_matrix(f, g, 2)
        if pencil_rank(pm) < pm.ncols:
            continue
        order = list(range(pm.nrows))
        rng.shuffle(order)
        rows_used, minor = pivot_minor(pm.poly_rows(), pm.ncols, order)
        form = BinaryForm.from_unipoly(minor, pm.ncols)
        for _ in range(3):
            lam, mu = K(rng.randrange(p)), K(rng.randrange(1, p))
            M = pm.at(lam, mu)
            sub = [M[i] for i in rows_used]
            assert form.evaluate(lam, mu) == bareiss_det(sub, lambda a, b: a / b)
        checked += 1
    assert checked >= 5


def test_minor_degrees_and_locus(QXY):
    R, X, Y = QXY
    for f in (X * Y, X**2 + Y**2, X**2 + Y):
        pm = pencil_matrix(f, R(1))
        ms = noether_minors(pm)
        for form in ms.forms():
            assert form.degree <= pm.ncols
        D = determinantal_divisor(pm)
        g = ms.gcd(QQ)
        # the collected minors vanish where all maximal minors vanish
        for lam in range(-3, 4):
            assert (g.evaluate(lam, 1) == 0) == (D(QQ(lam)) == 0)
        assert g.radical().degree <= 2 * 2 - 1


def test_mc_mode_is_deterministic(QXY):
    R, X, Y = QXY
    pm = pencil_matrix(X**2 + Y**2 + X, R(1))
    a = noether_minors(pm, mode="mc", seed=4)
    b = noether_minors(pm, mode="mc", seed=4)
    assert [f.coeffs for f in a.forms()] == [f.coeffs for f in b.forms()]
