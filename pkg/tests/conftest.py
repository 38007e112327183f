"""Shared fixtures and random generators for the test suite."""

import random

import pytest

from ratspectrum.polyring import MultiPoly, PolyRing, multipoly_gcd
from ratspectrum.ring import GF, QQ, ZZ

NAMES = ("X", "Y")


def random_bivariate(K, d, rng, density=0.6, force_degree=True):
    """Random polynomial in X, Y over the prime field K with total degree d."""
    terms = {}
    for i in range(d + 1):
        for j in range(d + 1 - i):
            if rng.random() < density:
                terms[(i, j)] = rng.randrange(K.p)
    if force_degree:
        i = rng.randrange(d + 1)
        terms[(i, d - i)] = rng.randrange(1, K.p)
    return MultiPoly(K, NAMES, terms)


def random_int_bivariate(d, H, rng, density=0.7):
    """Random integer polynomial of total degree exactly d and height <= H."""
    terms = {}
    for i in range(d + 1):
        for j in range(d + 1 - i):
            if rng.random() < density:
                terms[(i, j)] = rng.randint(-H, H)
    i = rng.randrange(d + 1)
    terms[(i, d - i)] = rng.choice([c for c in range(-H, H + 1) if c])
    return MultiPoly(ZZ, NAMES, terms)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def QXY():
    R = PolyRing(QQ, NAMES)
    X, Y = R.gens()
    return R, X, Y


@pytest.fixture
def ZXY():
    R = PolyRing(ZZ, NAMES)
    X, Y = R.gens()
    return R, X, Y


def field_xy(p):
    R = PolyRing(GF(p), NAMES)
    X, Y = R.gens()
    return R, X, Y


def random_composite(rng, R, max_h_degree=2):
    """(f, g) with f/g = u(h1/h2), deg u = 2, deg h <= 2, over R = Q[X, Y]."""
    X, Y = R.gens()
    monos = [R(1), X, Y, X * X, X * Y, Y * Y]
    while True:
        dh = rng.randint(1, max_h_degree)
        h1 = sum((rng.randint(-3, 3) * m for m in monos if m.total_degree() <= dh), R(0))
        h2 = R(1) if rng.random() < 0.5 else sum(
            (rng.randint(-3, 3) * m for m in monos if m.total_degree() <= dh), R(0))
        if h1.total_degree() < 1 or not h2 or not multipoly_gcd(h1, h2).is_constant():
            continue
        if h2.total_degree() < 1 and h1.is_constant():
            continue
        a, b, c = (rng.randint(-3, 3) for _ in range(3))
        a2, b2, c2 = (rng.randint(-3, 3) for _ in range(3))
        if rng.random() < 0.5:
            a2, b2, c2 = 0, 0, 1
        f = a * h1 * h1 + b * h1 * h2 + c * h2 * h2
        g = a2 * h1 * h1 + b2 * h1 * h2 + c2 * h2 * h2
        if not f or not g or (f.is_constant() and g.is_constant()):
            continue
        # u must be a reduced quotient of degree 2
        if (a * b2 - a2 * b) * (b * c2 - b2 * c) - (a * c2 - a2 * c) ** 2 == 0:
            continue
        if max(abs(a), abs(a2)) == 0 or not multipoly_gcd(f, g).is_constant():
            continue
        return f, g


# -- acceptance reporting --------------------------------------------------------

CRITERIA: dict = {}


def record_criterion(number, ok, detail=""):
    """Remember a criterion outcome and print its line right away."""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    CRITERIA[number] = line
    print(line, flush=True)
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for key in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[key])
