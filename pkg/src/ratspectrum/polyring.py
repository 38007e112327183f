"""Sparse multivariate polynomials over an exact coefficient ring.

A polynomial is a map from exponent tuples to nonzero coefficients.  The
monomial order is lexicographic in the declared variable order everywhere
(leading terms, monic normalization, division).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from .errors import PreconditionError, RatSpectrumError
from .ring import QQ, ZZ, FractionField, Frac, ModInt, UniPoly, field_of

__all__ = [
    "MultiPoly",
    "PolyRing",
    "RationalFunction",
    "default_names",
    "homogenize",
    "measures",
    "linear_change",
    "multipoly_gcd",
    "exquo",
]

Exponent = tuple


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"X{i + 1}" for i in range(n))


class MultiPoly:
    __slots__ = ("ring", "names", "terms")

    def __init__(self, ring, names: Sequence[str], terms: dict | None = None):
        self.ring = ring
        self.names = tuple(names)
        n = len(self.names)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise PreconditionError(f"exponent {e} does not match {n} variables")
            c = ring(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, names, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.names = names
        obj.terms = terms
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, ring, names, c):
        n = len(names)
        return cls(ring, names, {(0,) * n: c})

    @classmethod
    def var(cls, ring, names, i: int):
        e = [0] * len(names)
        e[i] = 1
        return cls(ring, names, {tuple(e): ring.one})

    def gens(self):
        return [MultiPoly.var(self.ring, self.names, i) for i in range(self.nvars)]

    # -- basic queries -----------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, self.ring.zero)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def leading_monomial(self) -> Exponent:
        return max(self.terms)

    def lc(self):
        if not self.terms:
            return self.ring.zero
        return self.terms[max(self.terms)]

    def homogeneous_part(self, k: int) -> "MultiPoly":
        return MultiPoly._raw(
            self.ring, self.names, {e: c for e, c in self.terms.items() if sum(e) == k}
        )

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    # -- arithmetic ----------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.names != self.names or other.ring != self.ring:
                raise PreconditionError("polynomials live in different rings")
            return other
        c = self.ring(other)
        if not c:
            return MultiPoly._raw(self.ring, self.names, {})
        return MultiPoly._raw(self.ring, self.names, {(0,) * self.nvars: c})

    def __add__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, PreconditionError):
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly._raw(self.ring, self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.ring, self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, PreconditionError):
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                c = self.ring(other)
            except (TypeError, PreconditionError):
                return NotImplemented
            if not c:
                return MultiPoly._raw(self.ring, self.names, {})
            out = {}
            for e, x in self.terms.items():
                v = x * c
                if v:
                    out[e] = v
            return MultiPoly._raw(self.ring, self.names, out)
        o = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly._raw(self.ring, self.names, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PreconditionError("negative power of a polynomial")
        result = MultiPoly.const(self.ring, self.names, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        # division by a scalar only
        if isinstance(other, MultiPoly):
            return exquo(self, other)
        inv = self.ring.one / self.ring(other)
        return self * inv

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.names == other.names and self.terms == other.terms
        if not self.terms:
            return not other
        return self.is_constant() and self.constant_value() == other

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    # -- calculus and evaluation -------------------------------------------

    def derivative(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                v = c * e[i]
                if v:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        return MultiPoly._raw(self.ring, self.names, out)

    def evaluate(self, point: Sequence):
        """Value at ``point`` (one entry per variable); entries may be any ring values."""
        if len(point) != self.nvars:
            raise PreconditionError("evaluation point dimension mismatch")
        acc = None
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            acc = t if acc is None else acc + t
        return self.ring.zero if acc is None else acc

    def partial_evaluate(self, values: dict[int, object]) -> "MultiPoly":
        """Substitute constants for the variables in ``values``; keeps the variable list."""
        out: dict = {}
        for e, c in self.terms.items():
            v = c
            ne = list(e)
            for i, x in values.items():
                if e[i]:
                    v = v * self.ring(x) ** e[i]
                ne[i] = 0
            ne = tuple(ne)
            out[ne] = out[ne] + v if ne in out else v
        return MultiPoly(self.ring, self.names, out)

    def map_coeffs(self, fn, ring) -> "MultiPoly":
        return MultiPoly(ring, self.names, {e: fn(c) for e, c in self.terms.items()})

    def change_ring(self, ring) -> "MultiPoly":
        return self.map_coeffs(ring, ring)

    def rename(self, names: Sequence[str]) -> "MultiPoly":
        if len(names) != self.nvars:
            raise PreconditionError("wrong number of variable names")
        return MultiPoly._raw(self.ring, tuple(names), dict(self.terms))

    def coeff(self, e: Exponent):
        return self.terms.get(tuple(e), self.ring.zero)

    # -- text --------------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.names, e) if k
            )
            cs = _coeff_text(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mono:
                body = mono if cs == "1" else f"{_wrap(cs)}*{mono}"
            else:
                body = _wrap(cs)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r}, vars={list(self.names)})"


def _coeff_text(c) -> str:
    if isinstance(c, ModInt):
        return str(c.v)
    if isinstance(c, MultiPoly):
        return f"({c.to_text()})"
    return str(c)


def _wrap(s: str) -> str:
    if any(ch in s for ch in "+ ") and not (s.startswith("(") and s.endswith(")")):
        return f"({s})"
    return s


# ---------------------------------------------------------------------------
# Polynomial ring objects
# ---------------------------------------------------------------------------


class PolyRing:
    """``coeff_ring[names...]`` as a ring object usable as a coefficient domain."""

    is_field = False

    def __init__(self, coeff_ring, names: Sequence[str]):
        self.coeff_ring = coeff_ring
        self.names = tuple(names)
        self.characteristic = coeff_ring.characteristic
        self.zero = MultiPoly._raw(coeff_ring, self.names, {})
        self.one = MultiPoly.const(coeff_ring, self.names, 1)

    @property
    def name(self):
        return f"{getattr(self.coeff_ring, 'name', self.coeff_ring)}[{','.join(self.names)}]"

    def __call__(self, x):
        if isinstance(x, MultiPoly):
            if x.names != self.names:
                raise PreconditionError("polynomial has different variables")
            if x.ring != self.coeff_ring:
                return x.change_ring(self.coeff_ring)
            return x
        return MultiPoly.const(self.coeff_ring, self.names, x)

    def gens(self):
        return [MultiPoly.var(self.coeff_ring, self.names, i) for i in range(len(self.names))]

    def gcd(self, a, b):
        return multipoly_gcd(a, b)

    def exquo(self, a, b):
        return exquo(a, b)

    def normal_factor(self, a):
        # unit of the base coefficient ring that normalizes ``a``
        c = a
        while isinstance(c, MultiPoly):
            c = c.lc()
        ring = self.coeff_ring
        while isinstance(ring, PolyRing):
            ring = ring.coeff_ring
        if ring.is_field:
            return c
        return ring.normal_factor(c)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.names == self.names
            and other.coeff_ring == self.coeff_ring
        )

    def __hash__(self):
        return hash(("PolyRing", self.coeff_ring, self.names))

    def __repr__(self):
        return f"PolyRing({self.coeff_ring!r}, {list(self.names)})"


@lru_cache(maxsize=None)
def _polyring(coeff_ring, names):
    return PolyRing(coeff_ring, names)


# ---------------------------------------------------------------------------
# Division and gcd
# ---------------------------------------------------------------------------


def _coeff_exquo(ring, a, b):
    if ring.is_field:
        return a / b
    return ring.exquo(a, b)


def exquo(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Exact quotient f/g (lex division); raises if g does not divide f."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    lt = max(g.terms)
    lcg = g.terms[lt]
    rem = dict(f.terms)
    q: dict = {}
    gterms = list(g.terms.items())
    while rem:
        m = max(rem)
        e = tuple(a - b for a, b in zip(m, lt))
        if any(x < 0 for x in e):
            raise RatSpectrumError("polynomial is not divisible")
        c = _coeff_exquo(ring, rem[m], lcg)
        q[e] = c
        for ge, gc in gterms:
            k = tuple(a + b for a, b in zip(e, ge))
            v = rem.get(k)
            v = -(c * gc) if v is None else v - c * gc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return MultiPoly._raw(ring, f.names, q)


def divides(g: MultiPoly, f: MultiPoly) -> bool:
    try:
        exquo(f, g)
    except RatSpectrumError:
        return False
    return True


def _base_ring(ring):
    while isinstance(ring, PolyRing):
        ring = ring.coeff_ring
    return ring


def _normalize(f: MultiPoly) -> MultiPoly:
    """Canonical associate: monic over fields, positive leading coefficient over ZZ."""
    if not f:
        return f
    c = f.lc()
    while isinstance(c, MultiPoly):
        c = c.lc()
    base = _base_ring(f.ring)
    if base.is_field:
        if c == base.one:
            return f
        inv = base.one / c
        return _scale_deep(f, inv)
    if base.normal_factor(c) == -1:
        return -f
    return f


def _scale_deep(f: MultiPoly, s) -> MultiPoly:
    if isinstance(f.ring, PolyRing):
        return MultiPoly._raw(f.ring, f.names, {e: _scale_deep(c, s) for e, c in f.terms.items()})
    return MultiPoly._raw(f.ring, f.names, {e: c * s for e, c in f.terms.items()})


def _to_univariate(f: MultiPoly):
    """Split off the first variable: dict degree -> coefficient in ring[rest]."""
    if f.nvars == 1:
        return {e[0]: c for e, c in f.terms.items()}, f.ring
    rest = f.names[1:]
    R = _polyring(f.ring, rest)
    out: dict = {}
    for e, c in f.terms.items():
        out.setdefault(e[0], {})[e[1:]] = c
    return {k: MultiPoly._raw(f.ring, rest, v) for k, v in out.items()}, R


def _from_univariate(u: dict, f_like: MultiPoly) -> MultiPoly:
    terms = {}
    if f_like.nvars == 1:
        for k, c in u.items():
            if c:
                terms[(k,)] = c
    else:
        for k, c in u.items():
            for e, v in c.terms.items():
                terms[(k,) + e] = v
    return MultiPoly._raw(f_like.ring, f_like.names, terms)


def _udeg(u: dict) -> int:
    return max(u) if u else -1


def _domain_gcd(D, a, b):
    if D.is_field:
        return D.one if (a or b) else D.zero
    g = D.gcd(a, b)
    return g


def _content(u: dict, D):
    c = D.zero
    for v in u.values():
        c = _domain_gcd(D, c, v)
        if c == D.one:
            break
    return c


def _prem(F: dict, G: dict, D) -> dict:
    dg = _udeg(G)
    lcg = G[dg]
    R = dict(F)
    while R and _udeg(R) >= dg:
        dr = _udeg(R)
        lr = R[dr]
        shift = dr - dg
        R = {k: v * lcg for k, v in R.items()}
        for k, v in G.items():
            kk = k + shift
            val = R.get(kk, D.zero) - lr * v
            if val:
                R[kk] = val
            else:
                R.pop(kk, None)
    return R


def _ugcd(F: dict, G: dict, D) -> dict:
    """gcd of two univariate polynomials (dict form) over a gcd domain or field."""
    if not F:
        F, G = G, F
    if not G:
        return dict(F)
    if D.is_field:
        while G:
            dg = _udeg(G)
            inv = D.one / G[dg]
            R = dict(F)
            while R and _udeg(R) >= dg:
                dr = _udeg(R)
                c = R[dr] * inv
                for k, v in G.items():
                    kk = k + dr - dg
                    val = R.get(kk, D.zero) - c * v
                    if val:
                        R[kk] = val
                    else:
                        R.pop(kk, None)
            F, G = G, R
        inv = D.one / F[_udeg(F)]
        return {k: v * inv for k, v in F.items()}
    cF, cG = _content(F, D), _content(G, D)
    c = _domain_gcd(D, cF, cG)
    F = {k: D.exquo(v, cF) for k, v in F.items()}
    G = {k: D.exquo(v, cG) for k, v in G.items()}
    if _udeg(F) < _udeg(G):
        F, G = G, F
    while G and _udeg(G) > 0:
        R = _prem(F, G, D)
        if not R:
            break
        cR = _content(R, D)
        F, G = G, {k: D.exquo(v, cR) for k, v in R.items()}
    if G and _udeg(G) == 0:
        return {0: c}
    cG = _content(G, D)
    return {k: D.exquo(v, cG) * c for k, v in G.items()}


def multipoly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """gcd of two polynomials in the same ring.

    Recursive content/primitive-part reduction on the first variable.  The
    result is monic (lex) over a field and primitive with positive leading
    coefficient over ZZ.
    """
    if f.names != g.names:
        raise PreconditionError("gcd of polynomials in different rings")
    if not f:
        return _normalize(g)
    if not g:
        return _normalize(f)
    if f.nvars == 0:
        base = f.ring
        if base.is_field:
            return MultiPoly.const(base, f.names, 1)
        return MultiPoly.const(base, f.names, base.gcd(f.constant_value(), g.constant_value()))
    # strip common monomial factors first: cheap and keeps recursion small
    mf = [min(e[i] for e in f.terms) for i in range(f.nvars)]
    mg = [min(e[i] for e in g.terms) for i in range(f.nvars)]
    m = tuple(min(a, b) for a, b in zip(mf, mg))
    if any(mf):
        f = MultiPoly._raw(f.ring, f.names, {tuple(a - b for a, b in zip(e, mf)): c for e, c in f.terms.items()})
    if any(mg):
        g = MultiPoly._raw(g.ring, g.names, {tuple(a - b for a, b in zip(e, mg)): c for e, c in g.terms.items()})
    if f.is_constant() or g.is_constant():
        base = f.ring
        if base.is_field:
            core = MultiPoly.const(base, f.names, 1)
        else:
            cf = reduce(base.gcd, f.terms.values(), 0) if not isinstance(base, PolyRing) else None
            cg = reduce(base.gcd, g.terms.values(), 0) if not isinstance(base, PolyRing) else None
            if cf is None:
                core = _gcd_recursive(f, g)
            else:
                core = MultiPoly.const(base, f.names, base.gcd(cf, cg))
    else:
        core = _gcd_recursive(f, g)
    mono = MultiPoly._raw(f.ring, f.names, {m: f.ring.one})
    return _normalize(core * mono)


def _gcd_recursive(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    F, D = _to_univariate(f)
    G, _ = _to_univariate(g)
    return _from_univariate(_ugcd(F, G, D), f)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def homogenize(f: MultiPoly, d: int, new_var: str = "X0") -> MultiPoly:
    """Degree-``d`` homogenization; the new variable is placed first."""
    if d < f.total_degree():
        raise PreconditionError("degree bound below actual degree")
    names = (new_var,) + f.names
    return MultiPoly._raw(f.ring, names, {(d - sum(e),) + e: c for e, c in f.terms.items()})


def measures(f: MultiPoly) -> tuple[int, int, int]:
    """(height, one-norm, total degree) of an integer polynomial."""
    vals = []
    for c in f.terms.values():
        c = Fraction(c)
        if c.denominator != 1:
            raise PreconditionError("measures need integer coefficients")
        vals.append(abs(c.numerator))
    if not vals:
        return 0, 0, -1
    return max(vals), sum(vals), f.total_degree()


def linear_change(
    f: MultiPoly,
    A: Sequence[Sequence],
    b: Sequence | None = None,
    new_names: Sequence[str] | None = None,
) -> MultiPoly:
    """Substitute X_i -> sum_j A[i][j] * Y_j + b[i]; the result lives in ``len(A[0])`` variables."""
    n = f.nvars
    if len(A) != n:
        raise PreconditionError(f"substitution matrix has {len(A)} rows, expected {n}")
    k = len(A[0]) if n else 0
    if any(len(row) != k for row in A):
        raise PreconditionError("ragged substitution matrix")
    if b is None:
        b = [0] * n
    if len(b) != n:
        raise PreconditionError("shift vector dimension mismatch")
    names = tuple(new_names) if new_names is not None else default_names(k)
    if len(names) != k:
        raise PreconditionError("wrong number of new variable names")
    ring = f.ring
    ys = [MultiPoly.var(ring, names, j) for j in range(k)]
    forms = []
    for i in range(n):
        L = MultiPoly.const(ring, names, b[i])
        for j in range(k):
            if A[i][j]:
                L = L + ys[j] * A[i][j]
        forms.append(L)
    powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.const(ring, names, 1)} for _ in range(n)]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = power(i, e - 1) * forms[i]
        return cache[e]

    acc = MultiPoly._raw(ring, names, {})
    for e, c in f.terms.items():
        t = MultiPoly.const(ring, names, c)
        for i, ei in enumerate(e):
            if ei:
                t = t * power(i, ei)
        acc = acc + t
    return acc


class RationalFunction:
    """Reduced quotient f/g; the common factor is divided out on construction."""

    __slots__ = ("num", "den")

    def __init__(self, f: MultiPoly, g: MultiPoly, *, reduce_gcd: bool = True):
        if f.names != g.names:
            raise PreconditionError("numerator and denominator use different variables")
        if not g:
            raise PreconditionError("denominator is zero")
        if f.ring != g.ring:
            raise PreconditionError("numerator and denominator over different rings")
        if reduce_gcd:
            h = multipoly_gcd(f, g)
            if not h.is_constant():
                f = exquo(f, h)
                g = exquo(g, h)
            elif not f.ring.is_field and h.constant_value() != 1:
                f = exquo(f, h)
                g = exquo(g, h)
        self.num = f
        self.den = g

    @property
    def names(self):
        return self.num.names

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @property
    def ring(self):
        return self.num.ring

    @property
    def degree(self) -> int:
        return max(self.num.total_degree(), self.den.total_degree())

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction(({self.num})/({self.den}))"


def to_field(f: MultiPoly) -> MultiPoly:
    """View ``f`` over the fraction field of its coefficient ring."""
    F = field_of(f.ring)
    if F is f.ring:
        return f
    return f.change_ring(F)


def clear_denominators(f: MultiPoly) -> MultiPoly:
    """Primitive integer multiple of a polynomial over QQ (positive leading coefficient)."""
    vals = [Fraction(c) for c in f.terms.values()]
    if not vals:
        return MultiPoly(ZZ, f.names, {})
    den = math.lcm(*(v.denominator for v in vals))
    ints = {e: int(Fraction(c) * den) for e, c in f.terms.items()}
    g = reduce(math.gcd, ints.values())
    if ints[max(ints)] < 0:
        g = -g
    return MultiPoly(ZZ, f.names, {e: v // g for e, v in ints.items()})


def param_field(names: Sequence[str]) -> FractionField:
    """QQ(Z1, ..., Zs) for the given parameter names."""
    return _param_field(tuple(names))


@lru_cache(maxsize=None)
def _param_field(names):
    return FractionField(_polyring(QQ, names))


def split_parameters(f: MultiPoly, main: Sequence[str], params: Sequence[str]) -> MultiPoly:
    """Reinterpret f in QQ[main + params] as a polynomial in ``main`` over QQ(params)."""
    K = param_field(params)
    R = K.domain
    idx_main = [f.names.index(v) for v in main]
    idx_par = [f.names.index(v) for v in params]
    buckets: dict = {}
    for e, c in f.terms.items():
        em = tuple(e[i] for i in idx_main)
        ep = tuple(e[i] for i in idx_par)
        buckets.setdefault(em, {})[ep] = buckets.setdefault(em, {}).get(ep, 0) + Fraction(c)
    terms = {em: Frac(K, MultiPoly(QQ, R.names, cs)) for em, cs in buckets.items()}
    return MultiPoly(K, tuple(main), terms)


def evaluate_parameters_in(f: MultiPoly, z: Sequence) -> MultiPoly:
    """Apply Z -> z to a polynomial over QQ(Z); raises if a denominator vanishes."""
    K = f.ring
    out = {}
    for e, c in f.terms.items():
        den = c.den.evaluate([Fraction(x) for x in z])
        if not den:
            raise PreconditionError("evaluation point is a pole of a coefficient")
        out[e] = Fraction(c.num.evaluate([Fraction(x) for x in z])) / Fraction(den)
    return MultiPoly(QQ, f.names, out)


def as_unipoly(f: MultiPoly, field=None) -> UniPoly:
    """Univariate MultiPoly -> dense UniPoly."""
    if f.nvars != 1:
        raise PreconditionError("not a univariate polynomial")
    field = field or f.ring
    deg = f.total_degree()
    cs = [field.zero] * (deg + 1)
    for (k,), c in f.terms.items():
        cs[k] = field(c)
    return UniPoly(field, cs)
