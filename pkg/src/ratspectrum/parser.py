"""Polynomial expression parser for the command line.

Grammar (precedence from loose to tight)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/' | <juxtaposition>) unary)*
    unary   := ('-' | '+') unary | power
    power   := primary ('^' INT)?
    primary := INT | DECIMAL | NAME | '(' expr ')'

Division is only by nonzero constants.  Juxtaposition ("3x^2y", "2(x+1)")
multiplies.  Names are a letter followed by optional digits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import RatSpectrumError
from .polyring import MultiPoly, split_parameters
from .ring import QQ, ZZ, GF, PrimeField, is_probable_prime

__all__ = ["ParseError", "RingSpec", "ParsedInput", "parse_ring", "parse_poly", "parse_pencil",
           "resolve_name"]


class ParseError(RatSpectrumError, ValueError):
    """Syntax or resolution error; ``offset`` is the 0-based position in the source."""

    def __init__(self, message: str, offset: int, source: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.source = source


@dataclass(frozen=True)
class RingSpec:
    kind: str  # "Z", "Q", "Fp" or "QZ"
    p: int = 0
    s: int = 0

    @property
    def coeff_ring(self):
        if self.kind == "Z":
            return ZZ
        if self.kind == "Fp":
            return GF(self.p)
        return QQ

    @property
    def params(self) -> tuple:
        return tuple(f"Z{i}" for i in range(1, self.s + 1))

    def __str__(self):
        if self.kind == "Fp":
            return f"Fp:{self.p}"
        if self.kind == "QZ":
            return f"QZ:{self.s}"
        return self.kind


def parse_ring(text: str) -> RingSpec:
    """'Z', 'Q', 'Fp:<p>' or 'QZ:<s>'."""
    t = text.strip()
    if t in ("Z", "Q"):
        return RingSpec(t)
    m = re.fullmatch(r"Fp:(\d+)", t)
    if m:
        p = int(m.group(1))
        if p < 2 or not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        return RingSpec("Fp", p=p)
    m = re.fullmatch(r"QZ:(\d+)", t)
    if m and int(m.group(1)) >= 1:
        return RingSpec("QZ", s=int(m.group(1)))
    raise ValueError(f"unknown ring {text!r}; expected Z, Q, Fp:<p> or QZ:<s>")


_ALIASES = {"x": "X1", "y": "X2", "z": "X3", "X": "X1", "Y": "X2", "Z": "X3"}

_TOKEN = re.compile(r"(\d+\.\d*|\d*\.\d+|\d+)|([A-Za-z]\d*)|(.)")


def resolve_name(name: str, ring: RingSpec, declared=None) -> str:
    """Canonical variable name: X<i>, Z<j> (parameters) or a declared name."""
    if declared is not None:
        if name in declared:
            return name
        alias = _ALIASES.get(name)
        if alias in declared:
            return alias
        return ""
    if ring.kind == "QZ" and name in ("Z", "z") and ring.s >= 1:
        return "Z1"
    if re.fullmatch(r"Z\d+", name) and ring.kind == "QZ":
        return name if 1 <= int(name[1:]) <= ring.s else ""
    if re.fullmatch(r"X[1-9]\d*", name):
        return name
    return _ALIASES.get(name, "")


def _tokenize(text: str):
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    # builds an expression tree of tuples; resolution happens afterwards

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            node = (op, node, self.term())
        return node

    def _starts_primary(self, tok):
        return tok[0] == "name" or tok[:2] == ("op", "(")

    def term(self):
        node = self.unary()
        while True:
            tok = self.peek()
            if tok[:2] in (("op", "*"), ("op", "/")):
                self.take()
                node = (tok[1], node, self.unary(), tok[2])
            elif self._starts_primary(tok):
                node = ("*", node, self.power())
            elif tok[0] == "num":
                self.error("number cannot follow an expression without an operator")
            else:
                return node

    def unary(self):
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        if tok[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.peek()
            if tok[0] != "num" or not tok[1].isdigit():
                self.error("exponent must be a nonnegative integer")
            self.take()
            return ("^", base, int(tok[1]))
        return base

    def primary(self):
        tok = self.take()
        if tok[0] == "num":
            return ("num", Fraction(tok[1]))
        if tok[0] == "name":
            return ("var", tok[1], tok[2])
        if tok[:2] == ("op", "("):
            node = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return node
        if tok[0] == "end":
            raise ParseError("unexpected end of input", tok[2], self.text)
        raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)


def _collect_vars(node, out):
    if node[0] == "var":
        out.append((node[1], node[2]))
    elif node[0] in ("+", "-", "*", "/"):
        _collect_vars(node[1], out)
        _collect_vars(node[2], out)
    elif node[0] in ("neg", "^"):
        _collect_vars(node[1], out)


def _evaluate(node, names, mapping, text):
    kind = node[0]
    if kind == "num":
        return MultiPoly.const(QQ, names, node[1])
    if kind == "var":
        return MultiPoly.var(QQ, names, names.index(mapping[node[1]]))
    if kind == "neg":
        return -_evaluate(node[1], names, mapping, text)
    if kind == "^":
        return _evaluate(node[1], names, mapping, text) ** node[2]
    a = _evaluate(node[1], names, mapping, text)
    b = _evaluate(node[2], names, mapping, text)
    if kind == "+":
        return a + b
    if kind == "-":
        return a - b
    if kind == "*":
        return a * b
    if not b.is_constant() or not b:
        raise ParseError("division only by a nonzero constant", node[3], text)
    return a * (Fraction(1) / Fraction(b.constant_value()))


@dataclass
class ParsedInput:
    source: str
    variables: tuple
    ring: RingSpec
    poly: MultiPoly


def _syntax(text: str):
    tree = _Parser(text).parse()
    found: list = []
    _collect_vars(tree, found)
    return tree, found


def _canonical_names(used: set, ring: RingSpec, min_vars: int) -> tuple:
    idx = [int(v[1:]) for v in used if v.startswith("X")]
    n = max(idx + [min_vars])
    names = tuple(f"X{i}" for i in range(1, n + 1))
    if ring.kind == "QZ":
        names = names + ring.params
    return names


def _to_ring(P: MultiPoly, ring: RingSpec, text: str) -> MultiPoly:
    if ring.kind == "Z":
        if any(Fraction(c).denominator != 1 for c in P.terms.values()):
            raise ParseError("coefficient not in Z", 0, text)
        return P.change_ring(ZZ)
    if ring.kind == "Fp":
        K = ring.coeff_ring
        for c in P.terms.values():
            if Fraction(c).denominator % ring.p == 0:
                raise ParseError(f"coefficient {c} not defined mod {ring.p}", 0, text)
        return MultiPoly(K, P.names, {e: K(Fraction(c).numerator) / K(Fraction(c).denominator)
                                      for e, c in P.terms.items()})
    return P


def parse_pencil(texts, ring: RingSpec | str = "Q", variables=None, min_vars: int = 2,
                 split: bool = True) -> list[ParsedInput]:
    """Parse several polynomials into one common variable set.

    With ``variables`` given, only those names (and their single-letter
    aliases) are accepted.  In QZ mode with ``split`` the result lives over
    Q(Z1, ..., Zs).
    """
    if isinstance(ring, str):
        ring = parse_ring(ring)
    trees = []
    used: set = set()
    declared = tuple(variables) if variables is not None else None
    for text in texts:
        tree, found = _syntax(text)
        mapping = {}
        for name, off in found:
            canon = resolve_name(name, ring, declared)
            if not canon:
                raise ParseError(f"unknown variable {name!r}", off, text)
            mapping[name] = canon
            used.add(canon)
        trees.append((text, tree, mapping))
    if declared is not None:
        names = declared + (ring.params if ring.kind == "QZ" else ())
    else:
        names = _canonical_names({u for u in used if not u.startswith("Z")}, ring, min_vars)
    out = []
    for text, tree, mapping in trees:
        P = _to_ring(_evaluate(tree, names, mapping, text), ring, text)
        if ring.kind == "QZ" and split:
            main = [v for v in names if v not in ring.params]
            P = split_parameters(P, main, ring.params)
        out.append(ParsedInput(text, tuple(names), ring, P))
    return out


def parse_poly(text: str, ring: RingSpec | str = "Q", variables=None, min_vars: int = 1,
               split: bool = False) -> ParsedInput:
    """Parse one polynomial; see parse_pencil."""
    return parse_pencil([text], ring, variables, min_vars, split)[0]


def field_is_prime(ring: RingSpec) -> bool:
    return isinstance(ring.coeff_ring, PrimeField)
