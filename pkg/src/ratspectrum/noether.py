"""Ruppert's linear system and the reducibility forms of a pencil.

For a bivariate P with bidegree bounds (m, n) the map

    (g, h) -> P*g_Y - g*P_Y - P*h_X + h*P_X,   deg g <= (m-1, n), deg h <= (m, n-2)

has a nonzero kernel exactly when P is reducible over the algebraic closure,
provided P has bidegree exactly (m, n).  To make total degree d visible we
shear the variables so that both X^d and Y^d occur in P and use (m, n) = (d, d);
a drop in total degree then shows up as a drop in the Y-degree, which also
creates a kernel vector (g, h) = (P_X, P_Y).

The map is linear in P, so for the pencil V*f - U*g the matrix is
V*M(f) - U*M(g).  Its maximal minors are binary forms in (U, V); their gcd
vanishes exactly on the reducible members (after discarding the at most two
parameters at which the chosen shear fails, which callers re-test directly).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .binaryforms import BinaryForm, ProjPoint, form_gcd
from .errors import DegeneratePencilError, GuardError, ImplementationError, PreconditionError
from .polyring import MultiPoly, PolyRing, linear_change
from .ring import QQ, ZZ, FractionField, Frac, PrimeField, UniPoly, field_of, rank_over_field, upoly_radical

__all__ = [
    "RuppertSystem",
    "PencilMatrix",
    "MinorSet",
    "ruppert_system",
    "is_absolutely_irreducible",
    "pencil_matrix",
    "pencil_rank",
    "determinantal_divisor",
    "pivot_minor",
    "noether_minors",
    "check_noether_guard",
    "shear_directions",
    "shear",
]


# ---------------------------------------------------------------------------
# Guards and coefficient fields
# ---------------------------------------------------------------------------


def check_noether_guard(field, d: int) -> None:
    p = field.characteristic
    if p and p <= d * (d - 1):
        raise GuardError(
            f"characteristic too small for Noether criterion (p = {p}, need p > {d * (d - 1)})"
        )


def _as_field_poly(P: MultiPoly) -> MultiPoly:
    K = field_of(P.ring)
    return P if K is P.ring else P.change_ring(K)


def _bivariate(P: MultiPoly) -> None:
    if P.nvars != 2:
        raise PreconditionError(f"expected a bivariate polynomial, got {P.nvars} variables")


# ---------------------------------------------------------------------------
# The Ruppert matrix
# ---------------------------------------------------------------------------


def _graded_lex(mx: int, my: int) -> list[tuple[int, int]]:
    mons = [(i, j) for i in range(mx + 1) for j in range(my + 1)]
    mons.sort(key=lambda e: (e[0] + e[1], -e[0]))
    return mons


def _ruppert_layout(m: int, n: int):
    rows = _graded_lex(2 * m - 1, 2 * n - 1)
    g_unknowns = _graded_lex(m - 1, n) if m >= 1 else []
    h_unknowns = _graded_lex(m, n - 2) if n >= 2 else []
    cols = [("g", e) for e in g_unknowns] + [("h", e) for e in h_unknowns]
    return rows, cols


def _ruppert_matrix(terms: dict, K, m: int, n: int, rows, cols) -> list[list]:
    index = {e: r for r, e in enumerate(rows)}
    M = [[K.zero] * len(cols) for _ in rows]
    for c, (kind, (a, b)) in enumerate(cols):
        for (i, j), coef in terms.items():
            if kind == "g":
                # P*d/dY(X^a Y^b) - X^a Y^b * dP/dY
                k = b - j
                e = (a + i, b + j - 1)
            else:
                # -P*d/dX(X^a Y^b) + X^a Y^b * dP/dX
                k = i - a
                e = (a + i - 1, b + j)
            if k and e[0] >= 0 and e[1] >= 0:
                r = index[e]
                M[r][c] = M[r][c] + coef * k
    return M


@dataclass
class RuppertSystem:
    """Matrix of Ruppert's map for ``P`` with bidegree bounds ``(m, n)``."""

    P: MultiPoly
    m: int
    n: int
    matrix: list
    row_monomials: list
    unknowns: list

    @property
    def nrows(self) -> int:
        return len(self.row_monomials)

    @property
    def ncols(self) -> int:
        return len(self.unknowns)

    def rank(self) -> int:
        return rank_over_field(self.matrix, field_of(self.P.ring)) if self.ncols else 0

    def has_trivial_kernel(self) -> bool:
        return self.rank() == self.ncols

    def to_json(self) -> dict:
        from .binaryforms import coeff_to_json

        return {
            "m": self.m,
            "n": self.n,
            "rows": [list(e) for e in self.row_monomials],
            "unknowns": [[k, list(e)] for k, e in self.unknowns],
            "matrix": [[coeff_to_json(x) for x in r] for r in self.matrix],
        }


def ruppert_system(P: MultiPoly, m: int, n: int, d_guard: int | None = None) -> RuppertSystem:
    """Build Ruppert's matrix for a bivariate ``P`` over a field."""
    _bivariate(P)
    P = _as_field_poly(P)
    if m < 1 or n < 1:
        raise PreconditionError("bidegree bounds must be positive")
    if P.degree_in(0) > m or P.degree_in(1) > n:
        raise PreconditionError("bidegree bounds below the degrees of P")
    d = d_guard if d_guard is not None else max(P.total_degree(), 0)
    check_noether_guard(P.ring, d)
    rows, cols = _ruppert_layout(m, n)
    M = _ruppert_matrix(P.terms, P.ring, m, n, rows, cols)
    return RuppertSystem(P, m, n, M, rows, cols)


# ---------------------------------------------------------------------------
# Shears
# ---------------------------------------------------------------------------


def _directions(K):
    """Points of P^1 in a fixed order: (1,0), (0,1), (1,1), (1,2), ..."""
    yield (1, 0)
    yield (0, 1)
    p = K.characteristic
    c = 1
    while not p or c < p:
        yield (1, c)
        c += 1


def _top_value(top: dict, v) -> object:
    acc = 0
    for (i, j), c in top.items():
        acc = c * (v[0] ** i) * (v[1] ** j) + acc
    return acc


def shear_directions(tops: Sequence[dict], K, limit: int = 4096):
    """First two directions v with some top form nonzero at v (for each listed group).

    ``tops`` is a list of top-degree parts; a direction is accepted when at
    least one of them is nonzero there.
    """
    found = []
    for count, v in enumerate(_directions(K)):
        if count > limit:
            break
        if any(_top_value(t, v) for t in tops):
            found.append(v)
            if len(found) == 2:
                return found[0], found[1]
    raise GuardError("no admissible shear direction in the base field")


def shear(P: MultiPoly, v1, v2) -> MultiPoly:
    """Substitute (X, Y) = X'*v1 + Y'*v2."""
    A = [[v1[0], v2[0]], [v1[1], v2[1]]]
    return linear_change(P, A, None, P.names)


def _top(P: MultiPoly, d: int) -> dict:
    return {e: c for e, c in P.terms.items() if e[0] + e[1] == d}


def is_absolutely_irreducible(P: MultiPoly, d: int | None = None) -> bool:
    """True iff P is irreducible over the algebraic closure and has total degree d."""
    _bivariate(P)
    P = _as_field_poly(P)
    if not P:
        raise PreconditionError("zero polynomial")
    if d is None:
        d = P.total_degree()
    if d < 2:
        raise PreconditionError("degree bound must be at least 2")
    if P.total_degree() > d:
        raise PreconditionError("degree bound below actual degree")
    check_noether_guard(P.ring, d)
    if P.total_degree() < d:
        return False
    v1, v2 = shear_directions([_top(P, d)], P.ring)
    Q = shear(P, v1, v2)
    return ruppert_system(Q, d, d, d).has_trivial_kernel()


# ---------------------------------------------------------------------------
# The pencil matrix V*M(f) - U*M(g)
# ---------------------------------------------------------------------------


@dataclass
class PencilMatrix:
    """Ruppert matrix of the pencil V*f - U*g after a fixed shear.

    ``Mf`` and ``Mg`` hold the coefficient matrices so that the entry at
    (U, V) is V*Mf - U*Mg.  ``bad_points`` are the parameters where the shear
    does not give the member full bidegree (d, d); only there can a rank
    drop be unrelated to reducibility.
    """

    f: MultiPoly
    g: MultiPoly
    d: int
    field: object
    directions: tuple
    Mf: list
    Mg: list
    row_monomials: list
    unknowns: list
    bad_points: list = dc_field(default_factory=list)

    @property
    def nrows(self) -> int:
        return len(self.row_monomials)

    @property
    def ncols(self) -> int:
        return len(self.unknowns)

    def at(self, lam, mu) -> list[list]:
        K = self.field
        lam, mu = K(lam), K(mu)
        return [
            [mu * a - lam * b for a, b in zip(ra, rb)] for ra, rb in zip(self.Mf, self.Mg)
        ]

    def poly_rows(self) -> list[list[UniPoly]]:
        """Dehomogenized entries Mf - t*Mg with t = U/V."""
        K = self.field
        return [
            [UniPoly(K, [a, -b]) for a, b in zip(ra, rb)] for ra, rb in zip(self.Mf, self.Mg)
        ]

    def rank_at(self, lam, mu) -> int:
        return rank_over_field(self.at(lam, mu), self.field)

    def entry_form(self, i: int, j: int) -> BinaryForm:
        return BinaryForm(self.field, 1, [self.Mf[i][j], -self.Mg[i][j]])


def _clear_parameter_denominators(f: MultiPoly, g: MultiPoly):
    """Scale f, g by a common element of K[Z] so every coefficient is a polynomial."""
    K = f.ring
    from .polyring import exquo, multipoly_gcd

    den = None
    for c in list(f.terms.values()) + list(g.terms.values()):
        if den is None:
            den = c.den
        else:
            h = multipoly_gcd(den, c.den)
            den = exquo(den * c.den, h)
    if den is None or den == K.domain.one:
        return f, g
    L = K(den)
    return f * L, g * L


def pencil_matrix(f: MultiPoly, g: MultiPoly, d: int | None = None) -> PencilMatrix:
    """Build the symbolic Ruppert matrix of V*f - U*g with bidegree bounds (d, d)."""
    _bivariate(f)
    _bivariate(g)
    if f.names != g.names:
        raise PreconditionError("f and g use different variables")
    f, g = _as_field_poly(f), _as_field_poly(g)
    if f.ring != g.ring:
        raise PreconditionError("f and g have different coefficient rings")
    K = f.ring
    if f.is_constant() and g.is_constant():
        raise DegeneratePencilError("degenerate pencil: f and g are both constant")
    if d is None:
        d = max(f.total_degree(), g.total_degree())
    if d < max(f.total_degree(), g.total_degree()):
        raise PreconditionError("degree bound below actual degree")
    check_noether_guard(K, d)
    if isinstance(K, FractionField):
        f, g = _clear_parameter_denominators(f, g)
    Fd, Gd = _top(f, d), _top(g, d)
    v1, v2 = shear_directions([Fd, Gd], K)
    fs, gs = shear(f, v1, v2), shear(g, v1, v2)
    rows, cols = _ruppert_layout(d, d)
    Mf = _ruppert_matrix(fs.terms, K, d, d, rows, cols)
    Mg = _ruppert_matrix(gs.terms, K, d, d, rows, cols)
    bad = []
    for v in (v1, v2):
        a, b = K(_top_value(Fd, v)), K(_top_value(Gd, v))
        # member mu*f - lam*g loses X'^d or Y'^d where mu*a - lam*b = 0
        pt = ProjPoint.make(a, b, K)
        if pt not in bad:
            bad.append(pt)
    return PencilMatrix(f, g, d, K, (v1, v2), Mf, Mg, rows, cols, bad)


# ---------------------------------------------------------------------------
# Elimination over K[t]
# ---------------------------------------------------------------------------


def _triangularize(rows: list[list[UniPoly]], ncols: int):
    """Unimodular row reduction over K[t]; returns (rank, diagonal pivots).

    Each column is cleared with a Euclidean remainder sequence, so the product
    of the pivots equals the gcd of the maximal minors whenever the rank is
    full.
    """
    rows = [list(r) for r in rows]
    pivots = []
    top = 0
    for col in range(ncols):
        while True:
            cand = [i for i in range(top, len(rows)) if rows[i][col]]
            if not cand:
                break
            piv = min(cand, key=lambda i: (rows[i][col].degree, i))
            rows[top], rows[piv] = rows[piv], rows[top]
            prow = rows[top]
            pe = prow[col]
            done = True
            for i in range(top + 1, len(rows)):
                e = rows[i][col]
                if not e:
                    continue
                q = e // pe
                if q:
                    ri = rows[i]
                    rows[i] = [ri[j] - q * prow[j] if prow[j] else ri[j] for j in range(ncols)]
                if rows[i][col]:
                    done = False
            if done:
                break
        if top < len(rows) and rows[top][col]:
            pivots.append(rows[top][col])
            top += 1
    return top, pivots


def determinantal_divisor(pm: PencilMatrix) -> UniPoly:
    """Monic gcd (in t = U/V) of all maximal minors; the zero polynomial if rank < ncols."""
    K = pm.field
    if K is QQ and _rank_by_evaluation(pm) < pm.ncols:
        # cheap exact rank first; elimination over QQ[t] is costly
        return UniPoly(K, [])
    rank, pivots = _triangularize(pm.poly_rows(), pm.ncols)
    if rank < pm.ncols:
        return UniPoly(K, [])
    D = UniPoly(K, [1])
    for p in pivots:
        D = D * p
    return D.monic()


def _eval_param(c, z):
    """Evaluate an element of QQ(Z) at z (raises ZeroDivisionError at poles)."""
    num = c.num.evaluate(z)
    den = c.den.evaluate(z)
    return Fraction(num) / Fraction(den)


def _rank_param_point(pm: PencilMatrix, t0, z) -> int:
    M = [
        [_eval_param(a, z) - t0 * _eval_param(b, z) for a, b in zip(ra, rb)]
        for ra, rb in zip(pm.Mf, pm.Mg)
    ]
    return rank_over_field(M, QQ)


def pencil_rank(pm: PencilMatrix, exact: bool = True, seed: int = 0) -> int:
    """Rank of the pencil matrix over K(t).

    Exact mode: over QQ by evaluation at enough points of t, over F_p and
    QQ(Z) by elimination over K[t].  mc mode takes the best of two random
    evaluations (a lower bound).
    """
    K = pm.field
    N = pm.ncols
    if exact:
        if K is QQ:
            return _rank_by_evaluation(pm)
        return _triangularize(pm.poly_rows(), N)[0]
    rng = random.Random(seed)
    r = 0
    for _ in range(2):
        if isinstance(K, FractionField):
            z = [Fraction(rng.randrange(1, 2**20)) for _ in K.domain.names]
            try:
                r = max(r, _rank_param_point(pm, Fraction(rng.randrange(1, 2**20)), z))
            except ZeroDivisionError:
                continue
        else:
            r = max(r, pm.rank_at(_random_element(K, rng), 1))
    return r


def _rank_by_evaluation(pm: PencilMatrix) -> int:
    """Exact rank over QQ(t) from ranks at t = 0, 1, 2, ...

    Entries are linear in t, so a nonzero (r+1)-minor has degree <= r+1 and
    cannot vanish at r+2 distinct points: rank <= r there certifies rank <= r.
    """
    N = pm.ncols
    r, below = 0, 0
    t0 = 0
    while below < r + 2:
        rr = pm.rank_at(t0, 1)
        if rr > r:
            r = rr
            if r == N:
                return r
        below += 1
        t0 += 1
    return r


def _random_element(K, rng: random.Random):
    if isinstance(K, PrimeField):
        return K(rng.randrange(K.p))
    return K(rng.randrange(1, 2**20))


# ---------------------------------------------------------------------------
# Individual maximal minors
# ---------------------------------------------------------------------------


def pivot_minor(rows: list[list[UniPoly]], ncols: int, order: Sequence[int]):
    """Fraction-free elimination over K[t] in the given row order.

    Returns ``(row_indices, minor)`` where ``row_indices`` is the sorted tuple
    of the rows used as pivots and ``minor`` the determinant of that
    submatrix (rows in increasing order), or ``None`` if the rank is not full.
    """
    work = [list(rows[i]) for i in order]
    idx = list(order)
    prev = None
    n = len(work)
    for k in range(ncols):
        piv = next((i for i in range(k, n) if work[i][k]), None)
        if piv is None:
            return None
        work[k], work[piv] = work[piv], work[k]
        idx[k], idx[piv] = idx[piv], idx[k]
        akk = work[k][k]
        rk = work[k]
        for i in range(k + 1, n):
            ri = work[i]
            aik = ri[k]
            for j in range(k + 1, ncols):
                v = akk * ri[j] - aik * rk[j] if aik else akk * ri[j]
                ri[j] = v.exquo(prev) if prev is not None else v
            ri[k] = akk * 0
        prev = akk
    minor = work[ncols - 1][ncols - 1]
    chosen = idx[:ncols]
    # sign of the permutation sorting the pivot order
    inversions = sum(1 for a, b in itertools.combinations(chosen, 2) if a > b)
    if inversions % 2:
        minor = -minor
    return tuple(sorted(chosen)), minor


@dataclass
class MinorSet:
    """Maximal minors of a pencil matrix, each a binary form of degree ncols."""

    minors: list
    ncols: int
    generic_rank: int
    mode: str
    seed: int
    caveat: str = ""

    @property
    def all_vanish(self) -> bool:
        return self.generic_rank < self.ncols

    def forms(self) -> list[BinaryForm]:
        return [m for _, m in self.minors]

    def gcd(self, field) -> BinaryForm:
        if self.all_vanish or not self.minors:
            return BinaryForm.zero(field, self.ncols)
        return form_gcd(self.forms())


def _locus_key(D: UniPoly, at_infinity: bool):
    rad = upoly_radical(D) if D.degree > 0 else UniPoly(D.field, [1])
    return tuple(rad.coeffs), at_infinity


def noether_minors(
    pm: PencilMatrix,
    mode: str = "exact",
    seed: int = 0,
    stabilization_k: int = 8,
    max_minors: int = 512,
) -> MinorSet:
    """Maximal minors of the pencil matrix as binary forms.

    Minors are produced from seeded row orders by fraction-free elimination
    over K[t] (the pivot rows of each run form a nonsingular submatrix).

    exact: stop once the common vanishing locus of the collected minors equals
    that of all maximal minors (known from the determinantal divisor).
    monte_carlo: stop once the running gcd is unchanged for
    ``stabilization_k`` consecutive new nonzero minors.
    """
    if mode not in ("exact", "mc", "monte_carlo"):
        raise PreconditionError(f"unknown mode {mode!r}")
    K = pm.field
    N = pm.ncols
    rank = pencil_rank(pm, exact=(mode == "exact"), seed=seed)
    if rank == 0:
        raise DegeneratePencilError("all specializations have rank 0")
    if rank < N:
        caveat = "" if mode == "exact" else "generic rank estimated at random points"
        return MinorSet([], N, rank, "exact" if mode == "exact" else "mc", seed, caveat)
    rows = pm.poly_rows()
    rng = random.Random(seed)
    order = list(range(pm.nrows))
    target = None
    if mode == "exact":
        D = determinantal_divisor(pm)
        target = _locus_key(D, pm.rank_at(1, 0) < N)
    seen: dict = {}
    minors: list = []
    running = None
    stable = 0
    attempts = 0
    while attempts < max_minors:
        attempts += 1
        res = pivot_minor(rows, N, order)
        rng.shuffle(order)
        if res is None:
            raise ImplementationError("full-rank pencil matrix produced no pivot minor")
        key, m = res
        if key in seen:
            if mode != "exact":
                stable += 1
                if stable >= stabilization_k:
                    break
            continue
        form = BinaryForm.from_unipoly(m, N)
        seen[key] = form
        minors.append((key, form))
        new = form if running is None else form_gcd([running, form])
        if mode == "exact":
            running = new
            inf = running.v_multiplicity > 0
            if _locus_key(running.dehomogenize(), inf) == target:
                return MinorSet(minors, N, rank, "exact", seed)
        else:
            if running is not None and new == running:
                stable += 1
            else:
                stable = 0
            running = new
            if stable >= stabilization_k:
                break
    if mode == "exact":
        raise ImplementationError("minor enumeration did not reach the determinantal locus")
    return MinorSet(
        minors,
        N,
        rank,
        "mc",
        seed,
        f"running gcd stable for {stabilization_k} consecutive minors; not a certificate",
    )
