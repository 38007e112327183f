"""Exact coefficient rings and the dense linear algebra built on them.

Elements are plain Python values wherever possible: ``int`` for ZZ and
``fractions.Fraction`` for QQ.  Prime-field elements are ``ModInt`` and
fraction-field elements are ``Frac``; both support the usual operators so
generic code can be written once with ``+ - * /``.

A ring object exposes ``zero``, ``one``, ``__call__`` (coercion),
``is_field`` and ``characteristic``.  Non-field domains additionally expose
``gcd``, ``exquo`` and ``normal_factor`` (the unit dividing an element into
its canonical associate).
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import PreconditionError, RatSpectrumError

__all__ = [
    "ZZ",
    "QQ",
    "GF",
    "ModInt",
    "PrimeField",
    "FractionField",
    "Frac",
    "UniPoly",
    "is_probable_prime",
    "probable_prime_above",
    "primes_below",
    "rank_over_field",
    "bareiss_det",
    "rational_reconstruction",
    "field_of",
]


# ---------------------------------------------------------------------------
# ZZ and QQ
# ---------------------------------------------------------------------------


class IntegerRing:
    name = "Z"
    is_field = False
    characteristic = 0
    zero = 0
    one = 1

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise PreconditionError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def gcd(self, a, b):
        return math.gcd(a, b)

    def exquo(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise RatSpectrumError(f"{a} is not divisible by {b}")
        return q

    def normal_factor(self, a):
        return -1 if a < 0 else 1

    def __repr__(self):
        return "ZZ"

    def __reduce__(self):
        return "ZZ"


class RationalField:
    name = "Q"
    is_field = True
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, ModInt):
            raise PreconditionError("cannot lift a residue class to QQ")
        return Fraction(x)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return "QQ"


ZZ = IntegerRing()
QQ = RationalField()


# ---------------------------------------------------------------------------
# Prime fields
# ---------------------------------------------------------------------------


class ModInt:
    """Residue class modulo a prime ``p``, stored as its canonical value in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int | None:
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise PreconditionError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return ModInt(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return ModInt(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return ModInt(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return ModInt(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


class PrimeField:
    """The field with ``p`` elements; ``p`` is checked to be a probable prime."""

    is_field = True

    def __init__(self, p: int):
        if p < 2 or not is_probable_prime(p):
            raise PreconditionError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = ModInt(0, p)
        self.one = ModInt(1, p)
        self.name = f"Fp:{p}"

    def __call__(self, x):
        if isinstance(x, ModInt):
            if x.p != self.p:
                raise PreconditionError(f"element of F_{x.p} given to F_{self.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise PreconditionError(f"{x} has no image in F_{self.p}")
            return ModInt(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return ModInt(int(x), self.p)

    def elements(self):
        return (ModInt(i, self.p) for i in range(self.p))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


@lru_cache(maxsize=256)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------------------
# Fraction fields of gcd domains
# ---------------------------------------------------------------------------


class Frac:
    """Element ``num/den`` of a fraction field, kept reduced with normalized denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: "FractionField", num, den=None, *, reduced=False):
        dom = field.domain
        if den is None:
            den = dom.one
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if not num:
                num, den = dom.zero, dom.one
            else:
                g = dom.gcd(num, den)
                if g != dom.one:
                    num = dom.exquo(num, g)
                    den = dom.exquo(den, g)
                u = dom.normal_factor(den)
                if u != 1:
                    inv = 1 / u if not isinstance(u, int) else Fraction(1, u)
                    num = num * inv
                    den = den * inv
        self.field = field
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, Frac):
            return other
        try:
            return self.field(other)
        except (TypeError, PreconditionError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Frac(self.field, self.num + o.num, self.den)
        return Frac(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Frac(self.field, -self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return self.field.zero
        return Frac(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero in fraction field")
        return Frac(self.field, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            return (self.field.one / self) ** (-e)
        return Frac(self.field, self.num**e, self.den**e, reduced=True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        if self.den == self.field.domain.one:
            return f"{self.num}"
        return f"({self.num})/({self.den})"


class FractionField:
    """Fraction field of a gcd domain (``PolyRing`` over QQ, ``UniPoly`` rings, ...)."""

    is_field = True

    def __init__(self, domain):
        self.domain = domain
        self.characteristic = domain.characteristic
        self.zero = Frac(self, domain.zero, domain.one, reduced=True)
        self.one = Frac(self, domain.one, domain.one, reduced=True)

    @property
    def name(self):
        return f"Frac({getattr(self.domain, 'name', self.domain)})"

    def __call__(self, x):
        if isinstance(x, Frac):
            if x.field != self:
                raise PreconditionError("element of a different fraction field")
            return x
        return Frac(self, self.domain(x))

    def __eq__(self, other):
        return isinstance(other, FractionField) and other.domain == self.domain

    def __hash__(self):
        return hash(("Frac", self.domain))

    def __repr__(self):
        return f"FractionField({self.domain!r})"


def field_of(ring):
    """Smallest field containing ``ring`` (identity on fields)."""
    if ring.is_field:
        return ring
    if ring is ZZ:
        return QQ
    return FractionField(ring)


# ---------------------------------------------------------------------------
# Dense univariate polynomials over a field
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense polynomial over a field; ``coeffs[i]`` is the coefficient of t**i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = cs

    @classmethod
    def _raw(cls, field, cs: list):
        while cs and not cs[-1]:
            cs.pop()
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = cs
        return obj

    @classmethod
    def monomial(cls, field, c, k: int):
        return cls._raw(field, [field.zero] * k + [field(c)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return not other
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly(self.field, [other])

    def __add__(self, other):
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = self.field(other)
            if not c:
                return UniPoly._raw(self.field, [])
            return UniPoly._raw(self.field, [x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw(self.field, [])
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly._raw(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = UniPoly(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "UniPoly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return UniPoly._raw(self.field, []), UniPoly._raw(self.field, r)
        inv = self.field.one / other.coeffs[-1]
        q = [self.field.zero] * (len(r) - db)
        bc = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv
            q[k] = c
            if c:
                for j in range(db + 1):
                    r[k + j] = r[k + j] - c * bc[j]
        return UniPoly._raw(self.field, q), UniPoly._raw(self.field, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other):
        q, r = divmod(self, other)
        if r:
            raise RatSpectrumError("inexact polynomial division")
        return q

    def monic(self):
        if not self.coeffs:
            return self
        return self * (self.field.one / self.coeffs[-1])

    def derivative(self):
        return UniPoly._raw(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_coeffs(self, fn, field):
        return UniPoly(field, [fn(c) for c in self.coeffs])

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            terms.append(f"({c})*t^{i}" if i else f"({c})")
        return " + ".join(terms)


def upoly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic()


def upoly_powmod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    result = UniPoly(base.field, [1]) % mod
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def _pth_root(f: UniPoly) -> UniPoly:
    p = f.field.characteristic
    return UniPoly._raw(f.field, [f.coeffs[i] for i in range(0, len(f.coeffs), p)])


def upoly_radical(f: UniPoly) -> UniPoly:
    """Product of the distinct monic irreducible factors of ``f`` (perfect fields)."""
    if f.degree <= 0:
        return UniPoly(f.field, [1])
    df = f.derivative()
    if not df:
        # only possible in characteristic p: f is a p-th power
        return upoly_radical(_pth_root(f))
    g = upoly_gcd(f, df)
    r1 = f.exquo(g).monic()
    rest = g
    while True:
        c = upoly_gcd(rest, r1)
        if c.degree <= 0:
            break
        rest = rest.exquo(c)
    if rest.degree <= 0:
        return r1
    return (r1 * upoly_radical(rest)).monic()


def upoly_roots_fp(f: UniPoly, rng: random.Random | None = None) -> list:
    """Distinct roots in F_p of a nonzero polynomial over F_p (Cantor-Zassenhaus split)."""
    field = f.field
    p = field.characteristic
    if f.degree <= 0:
        return []
    f = f.monic()
    t = UniPoly(field, [0, 1])
    if p <= 64:
        return [x for x in field.elements() if not f(x)]
    # product of the distinct linear factors
    g = upoly_gcd(f, upoly_powmod(t, p, f) - t)
    rng = rng or random.Random(0)
    roots: list = []
    stack = [g]
    while stack:
        h = stack.pop()
        if h.degree <= 0:
            continue
        if h.degree == 1:
            roots.append(-h.coeffs[0] / h.coeffs[1])
            continue
        while True:
            a = field(rng.randrange(p))
            s = upoly_gcd(h, upoly_powmod(t + a, (p - 1) // 2, h) - 1)
            if 0 < s.degree < h.degree:
                stack.append(s)
                stack.append(h.exquo(s))
                break
    return sorted(roots, key=int)


def upoly_ddf_degrees(f: UniPoly) -> list[int]:
    """Degrees of the irreducible factors of a squarefree monic ``f`` over F_p."""
    field = f.field
    p = field.characteristic
    t = UniPoly(field, [0, 1])
    degrees: list[int] = []
    h = t
    i = 0
    f = f.monic()
    while f.degree >= 2 * (i + 1):
        i += 1
        h = upoly_powmod(h, p, f)
        g = upoly_gcd(f, h - t)
        if g.degree > 0:
            degrees.extend([i] * (g.degree // i))
            f = f.exquo(g).monic()
            h = h % f if f.degree > 0 else h
    if f.degree > 0:
        degrees.append(f.degree)
    return sorted(degrees)


# ---------------------------------------------------------------------------
# Primes
# ---------------------------------------------------------------------------


def primes_below(n: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if n < 3:
        return []
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n, i)))
    return [i for i in range(n) if sieve[i]]


_SMALL_PRIMES = primes_below(1000)


def is_probable_prime(n: int, rounds: int = 40, seed: int = 0) -> bool:
    """Miller-Rabin with ``rounds`` bases drawn from a generator seeded by ``seed``."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(seed)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def probable_prime_above(lower_bound: int, rng_seed: int = 0) -> int:
    """Smallest probable prime strictly greater than ``lower_bound``."""
    n = max(2, lower_bound + 1)
    for _ in range(10**6):
        if is_probable_prime(n, seed=rng_seed):
            return n
        n += 1
    raise RatSpectrumError(f"no probable prime found in 10**6 candidates above {lower_bound}")


# ---------------------------------------------------------------------------
# Linear algebra
# ---------------------------------------------------------------------------


def _infer_field(M):
    for row in M:
        for x in row:
            if isinstance(x, ModInt):
                return GF(x.p)
            if isinstance(x, Frac):
                return x.field
            if isinstance(x, UniPoly):
                raise PreconditionError("entries must be field elements, not polynomials")
    return QQ


def _rank_int(rows: list[list[int]]) -> int:
    # Bareiss elimination; every division is exact
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        a = pr[col]
        for i in range(rank + 1, len(rows)):
            ri = rows[i]
            b = ri[col]
            rows[i] = [(a * ri[j] - b * pr[j]) // prev for j in range(ncols)]
        prev = a
        rank += 1
        if rank == len(rows):
            break
    return rank


def _rank_mod(rows: list[list[int]], p: int) -> int:
    rows = [[x % p for x in r] for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        inv = pow(pr[col], -1, p)
        pr = [x * inv % p for x in pr]
        rows[rank] = pr
        for i in range(rank + 1, len(rows)):
            c = rows[i][col]
            if c:
                ri = rows[i]
                rows[i] = [(ri[j] - c * pr[j]) % p for j in range(ncols)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _rank_generic(rows: list[list], field) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        inv = field.one / pr[col]
        for i in range(rank + 1, len(rows)):
            c = rows[i][col]
            if c:
                f = c * inv
                ri = rows[i]
                rows[i] = [ri[j] - f * pr[j] if pr[j] else ri[j] for j in range(ncols)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank_over_field(M: Sequence[Sequence], field=None) -> int:
    """Exact rank of a rectangular matrix over QQ, F_p or a fraction field.

    Over QQ the rows are cleared of denominators and reduced with Bareiss'
    fraction-free elimination; over F_p the residues are eliminated as raw
    integers.
    """
    if not M or not len(M[0]):
        return 0
    field = field or _infer_field(M)
    if field is QQ or field is ZZ:
        rows = []
        for r in M:
            fr = [Fraction(x) for x in r]
            den = math.lcm(*(x.denominator for x in fr)) if fr else 1
            rows.append([int(x * den) for x in fr])
        return _rank_int(rows)
    if isinstance(field, PrimeField):
        return _rank_mod([[int(field(x)) for x in r] for r in M], field.p)
    return _rank_generic([[field(x) for x in r] for r in M], field)


def bareiss_det(M: Sequence[Sequence], exquo=None):
    """Fraction-free determinant over an integral domain.

    ``exquo(a, b)`` performs the exact divisions; it defaults to ``//`` for
    integers and to ``/`` otherwise (fields).
    """
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    if any(len(r) != n for r in A):
        raise PreconditionError("determinant of a non-square matrix")
    if exquo is None:
        sample = next((x for r in A for x in r if x), 0)
        if isinstance(sample, int):
            exquo = lambda a, b: a // b  # noqa: E731
        elif isinstance(sample, UniPoly):
            exquo = lambda a, b: a.exquo(b)  # noqa: E731
        else:
            exquo = lambda a, b: a / b  # noqa: E731
    sign = 1
    prev = None
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return A[0][0] * 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                v = akk * row_i[j] - aik * row_k[j]
                row_i[j] = exquo(v, prev) if prev is not None else v
            row_i[k] = akk * 0
        prev = akk
    det = A[n - 1][n - 1]
    return det if sign == 1 else -det


def rational_reconstruction(a: int, m: int, num_bound: int, den_bound: int) -> Fraction | None:
    """Recover n/d = a (mod m) with |n| <= num_bound, 0 < d <= den_bound, if it exists."""
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > den_bound:
        return None
    if (r1 - a * s1) % m:
        return None
    return Fraction(r1, s1)
