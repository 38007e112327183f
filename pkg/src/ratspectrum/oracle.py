"""Brute-force ground truth for absolute reducibility over small finite fields.

Nothing here uses the Ruppert machinery.  A polynomial over F_p is tested by
enumerating every candidate factor of degree e <= deg/2 over F_{p^k} for
k = 1..K_max and trial-dividing.  Candidates are normalized so that their top
homogeneous part is monic (lex, X > Y); a candidate is only divided out when
its top part divides the top part of P, which every true factor satisfies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .binaryforms import ProjPoint
from .errors import PreconditionError
from .polyring import MultiPoly, multipoly_gcd
from .ring import GF, PrimeField, UniPoly, upoly_ddf_degrees

__all__ = [
    "ExtField",
    "FactorWitness",
    "brute_force_absolutely_reducible",
    "oracle_spectrum",
]


class ExtField:
    """F_{p^k} = F_p[t]/(m) with m the lexicographically first monic irreducible.

    Elements are stored as discrete logarithms to a fixed generator, with
    ``q - 1`` standing for zero; addition uses a Zech logarithm table.  The
    polynomial-basis vector of an element is available through ``vec``.
    """

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k
        self.q = q = p**k
        self.Z = q - 1
        self.modulus = _first_irreducible(p, k)
        vecs = list(itertools.product(range(p), repeat=k))
        gen, exp = _find_generator(p, k, self.modulus, vecs)
        self.generator = gen
        self.exp = exp  # log -> vector
        self.log = {v: i for i, v in enumerate(exp)}
        self.log[(0,) * k] = self.Z
        self.zech = [self.Z] * (q - 1)
        one = exp[0]
        for i, v in enumerate(exp):
            s = tuple((a + b) % p for a, b in zip(v, one))
            self.zech[i] = self.log[s]
        self.minus_one = self.log[tuple((-x) % p for x in one)]
        # enumeration order: lex on coefficient vectors (constant term first)
        self.elements = [self.log[v] for v in vecs]

    def from_int(self, c: int) -> int:
        v = [0] * self.k
        v[0] = c % self.p
        return self.log[tuple(v)]

    def add(self, a: int, b: int) -> int:
        Z = self.Z
        if a == Z:
            return b
        if b == Z:
            return a
        z = self.zech[(b - a) % Z]
        return Z if z == Z else (a + z) % Z

    def mul(self, a: int, b: int) -> int:
        Z = self.Z
        if a == Z or b == Z:
            return Z
        return (a + b) % Z

    def neg(self, a: int) -> int:
        return a if a == self.Z else (a + self.minus_one) % self.Z

    def inv(self, a: int) -> int:
        if a == self.Z:
            raise ZeroDivisionError("inverse of zero")
        return (-a) % self.Z

    def vec(self, a: int) -> tuple:
        return (0,) * self.k if a == self.Z else self.exp[a]

    def text(self, a: int) -> str:
        v = self.vec(a)
        if self.k == 1:
            return str(v[0])
        terms = [
            (str(c) if i == 0 else (f"{c}*a" if i == 1 else f"{c}*a^{i}")) for i, c in enumerate(v) if c
        ]
        if len(terms) == 1 and not any(v[1:]):
            return terms[0]
        return "(" + " + ".join(terms) + ")" if terms else "0"


def _first_irreducible(p: int, k: int) -> tuple:
    """Coefficients (low to high, monic) of the lex-first irreducible of degree k."""
    K = GF(p)
    if k == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=k):
        coeffs = tail[::-1]  # tail lists c_{k-1}, ..., c_0
        poly = UniPoly(K, list(coeffs) + [1])
        if coeffs[0] == 0:
            continue
        if upoly_ddf_degrees(poly) == [k]:
            return tuple(coeffs) + (1,)
    raise PreconditionError(f"no irreducible polynomial of degree {k} over F_{p}")


def _vec_mul(a, b, p, modulus):
    k = len(a)
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for i in range(2 * k - 2, k - 1, -1):
        c = prod[i]
        if c:
            for j in range(k + 1):
                prod[i - k + j] = (prod[i - k + j] - c * modulus[j]) % p
    return tuple(prod[:k])


def _find_generator(p, k, modulus, vecs):
    q = p**k
    one = tuple([1] + [0] * (k - 1))
    for cand in vecs[1:]:
        seq = [one]
        x = cand
        while x != one:
            seq.append(x)
            x = _vec_mul(x, cand, p, modulus)
            if len(seq) > q:
                break
        if len(seq) == q - 1:
            return cand, seq
    raise PreconditionError("no generator found")


@lru_cache(maxsize=None)
def _ext(p: int, k: int) -> ExtField:
    return ExtField(p, k)


@dataclass
class FactorWitness:
    """Outcome of the exhaustive search; ``factor`` is None when nothing was found."""

    p: int
    k: int
    k_max: int
    factor: dict | None = None
    modulus: tuple | None = None
    text: str = ""

    @property
    def reducible(self) -> bool:
        return self.factor is not None


# -- bivariate polynomials over ExtField as dicts {(i, j): log} --------------


def _poly_to_ext(P: MultiPoly, F: ExtField) -> dict:
    return {e: F.from_int(int(c)) for e, c in P.terms.items()}


def _graded_key(e):
    return (e[0] + e[1], e[0])


def _divides(Q: dict, P: dict, F: ExtField) -> bool:
    """Trial division of P by Q (graded lex, Q with monic leading term)."""
    lt = max(Q, key=_graded_key)
    inv = F.inv(Q[lt])
    R = dict(P)
    Z = F.Z
    while R:
        m = max(R, key=_graded_key)
        if m[0] < lt[0] or m[1] < lt[1]:
            return False
        c = F.mul(R[m], inv)
        s = (m[0] - lt[0], m[1] - lt[1])
        for e, qc in Q.items():
            t = (e[0] + s[0], e[1] + s[1])
            v = F.add(R.get(t, Z), F.neg(F.mul(c, qc)))
            if v == Z:
                R.pop(t, None)
            else:
                R[t] = v
    return True


def _form_divides(top_q: list, top_p: list, F: ExtField) -> bool:
    """Divisibility of binary forms given by coefficient lists c_i of X^i Y^(deg-i)."""
    Z = F.Z
    dq = max(i for i, c in enumerate(top_q) if c != Z)
    dp = max(i for i, c in enumerate(top_p) if c != Z)
    if len(top_q) - 1 - dq > len(top_p) - 1 - dp:
        return False
    if dq > dp:
        return False
    r = list(top_p[: dp + 1])
    inv = F.inv(top_q[dq])
    for i in range(dp, dq - 1, -1):
        c = r[i]
        if c == Z:
            continue
        c = F.mul(c, inv)
        for j in range(dq + 1):
            r[i - dq + j] = F.add(r[i - dq + j], F.neg(F.mul(c, top_q[j])))
    return all(x == Z for x in r[:dq])


def _top_forms(e: int, F: ExtField):
    """Homogeneous degree-e forms with monic lex-leading coefficient.

    Yields coefficient lists c_0..c_e of X^i Y^(e-i).
    """
    one = F.from_int(1)
    for lead in range(e, -1, -1):
        for rest in itertools.product(F.elements, repeat=lead):
            yield list(rest) + [one] + [F.Z] * (e - lead)


def brute_force_absolutely_reducible(P: MultiPoly, K_max: int) -> FactorWitness:
    """Exhaustive factor search for a bivariate P over F_p in F_{p^k}, k <= K_max."""
    if not isinstance(P.ring, PrimeField) or P.nvars != 2:
        raise PreconditionError("oracle needs a bivariate polynomial over F_p")
    if not P:
        raise PreconditionError("zero polynomial")
    p = P.ring.p
    D = P.total_degree()
    if p > 13:
        raise PreconditionError("oracle limited to p <= 13")
    if D > 4:
        raise PreconditionError("oracle limited to degree <= 4")
    if K_max < 1 or K_max > max(D, 1):
        raise PreconditionError("K_max must satisfy 1 <= K_max <= deg P")
    for k in range(1, K_max + 1):
        F = _ext(p, k)
        PP = _poly_to_ext(P, F)
        top_p = [PP.get((i, D - i), F.Z) for i in range(D + 1)]
        for e in range(1, D // 2 + 1):
            lower = [(i, j) for s in range(e) for i in range(s, -1, -1) for j in [s - i]]
            for top in _top_forms(e, F):
                if not _form_divides(top, top_p, F):
                    continue
                base = {(i, e - i): c for i, c in enumerate(top) if c != F.Z}
                for vals in itertools.product(F.elements, repeat=len(lower)):
                    Q = dict(base)
                    for mono, c in zip(lower, vals):
                        if c != F.Z:
                            Q[mono] = c
                    if _divides(Q, PP, F):
                        return FactorWitness(p, k, K_max, Q, F.modulus, _witness_text(Q, F))
    return FactorWitness(p, K_max, K_max)


def _witness_text(Q: dict, F: ExtField) -> str:
    parts = []
    for (i, j) in sorted(Q, key=_graded_key, reverse=True):
        mono = "*".join(m for m in (
            ("X" if i == 1 else f"X^{i}") if i else "",
            ("Y" if j == 1 else f"Y^{j}") if j else "",
        ) if m)
        c = F.text(Q[(i, j)])
        parts.append(mono if (c == "1" and mono) else (f"{c}*{mono}" if mono else c))
    return " + ".join(parts)


def oracle_spectrum(f: MultiPoly, g: MultiPoly) -> set:
    """Members of the pencil over P^1(F_p) that are reducible or drop degree."""
    if not isinstance(f.ring, PrimeField) or f.ring != g.ring:
        raise PreconditionError("oracle_spectrum needs f, g over the same F_p")
    if f.nvars != 2 or g.nvars != 2 or f.names != g.names:
        raise PreconditionError("oracle_spectrum needs bivariate f, g in the same variables")
    K = f.ring
    p = K.p
    d = max(f.total_degree(), g.total_degree())
    if p > 13 or d > 3:
        raise PreconditionError("oracle limited to p <= 13 and d <= 3")
    if not f or not g or not multipoly_gcd(f, g).is_constant():
        raise PreconditionError("f and g must be coprime (reduced pencil)")
    if d < 1:
        raise PreconditionError("degenerate pencil")
    out = set()
    points = [ProjPoint.make(x, 1, K) for x in K.elements()] + [ProjPoint.make(1, 0, K)]
    for pt in points:
        member = f * pt.mu - g * pt.lam
        if member.total_degree() < d:
            out.add(pt)
            continue
        if d >= 2 and brute_force_absolutely_reducible(member, d).reducible:
            out.add(pt)
    return out
