"""Exact multivariate polynomial arithmetic over Q.

Polynomials are sparse maps from exponent tuples to nonzero Fractions,
canonical by construction: equal polynomials have equal term maps. All
arithmetic is exact; there is no floating point anywhere.
"""

from fractions import Fraction
from math import inf
import re

from .errors import (ParseError, RingMismatchError, UnknownVariableError,
                     ZeroPolynomialError)
from .lexer import TokenStream, tokenize

_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


class Ring:
    """A polynomial ring Q[x1, ..., xp], identified by its variable names."""

    __slots__ = ("variables",)

    characteristic = 0

    def __init__(self, variables):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a ring needs at least one variable")
        seen = set()
        for v in variables:
            if not _NAME_RE.match(v):
                raise ValueError(f"invalid variable name {v!r}")
            if v in seen:
                raise ValueError(f"duplicate variable name {v!r}")
            seen.add(v)
        self.variables = variables

    @property
    def nvars(self):
        return len(self.variables)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, q):
        q = Fraction(q)
        if q == 0:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: q})

    def variable(self, name):
        try:
            i = self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(name) from None
        expts = [0] * self.nvars
        expts[i] = 1
        return Polynomial(self, {tuple(expts): Fraction(1)})

    def gens(self):
        return tuple(self.variable(v) for v in self.variables)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return f"Q[{','.join(self.variables)}]"


# ---------------------------------------------------------------------------
# monomials: plain exponent tuples

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))

def mono_divides(a, b):
    """True iff x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))

def mono_div(a, b):
    """Exponent vector of x^a / x^b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))

def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))

def mono_degree(a):
    return sum(a)


class MonomialOrder:
    """A global monomial order: degrevlex, lex, or a block elimination order.

    The elimination order compares the first *block* exponents by degrevlex
    and breaks ties by degrevlex on the rest; so the first block of
    variables is eliminated.
    """

    __slots__ = ("kind", "block", "_keys")

    def __init__(self, kind, block=0):
        if kind not in ("degrevlex", "lex", "elim"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "elim" and block < 1:
            raise ValueError("elimination order needs a positive block size")
        self.kind = kind
        self.block = block
        self._keys = {}

    def key(self, expts):
        """Sort key; larger key = larger monomial."""
        k = self._keys.get(expts)
        if k is None:
            k = self._compute_key(expts)
            self._keys[expts] = k
        return k

    def _compute_key(self, expts):
        if self.kind == "lex":
            return expts
        if self.kind == "degrevlex":
            return _drl_key(expts)
        head, tail = expts[: self.block], expts[self.block:]
        return (_drl_key(head), _drl_key(tail))

    def __repr__(self):
        if self.kind == "elim":
            return f"elim({self.block})"
        return self.kind


def _drl_key(expts):
    return (sum(expts), tuple(-e for e in reversed(expts)))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")

def elimination_order(block):
    return MonomialOrder("elim", block)


# ---------------------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms, _canonical=False):
        self.ring = ring
        if _canonical:
            self.terms = terms
        else:
            self.terms = {m: Fraction(c) for m, c in terms.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring, {}, _canonical=True)

    # -- predicates and views ------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(mono_degree(m) == 0 for m in self.terms)

    def constant_term(self):
        """Coefficient of the unit monomial, i.e. the value at the origin."""
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def is_unit_local(self):
        """True iff invertible in the localization at the origin."""
        return self.constant_term() != 0

    def degree(self):
        """Total degree; -inf for the zero polynomial."""
        if not self.terms:
            return -inf
        return max(mono_degree(m) for m in self.terms)

    def order_at_origin(self):
        """Smallest total degree among terms; inf for the zero polynomial."""
        if not self.terms:
            return inf
        return min(mono_degree(m) for m in self.terms)

    def leading_term(self, order=DEGREVLEX):
        """The maximal (monomial, coefficient) pair under *order*."""
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic ----------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(
                f"operands in different rings {self.ring} and {other.ring}")

    def __add__(self, other):
        other = self._coerce(other)
        self._check_ring(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        return Polynomial(self.ring, res, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        self._check_ring(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) - c
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        return Polynomial(self.ring, res, _canonical=True)

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()},
                          _canonical=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_ring(other)
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                elif m in res:
                    del res[m]
        return Polynomial(self.ring, res, _canonical=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __radd__(self, other):
        return self + other

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, q):
        q = Fraction(q)
        if q == 0:
            return Polynomial.zero(self.ring)
        return Polynomial(self.ring,
                          {m: c * q for m, c in self.terms.items()},
                          _canonical=True)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def monic(self, order=DEGREVLEX):
        """Divide by the leading coefficient under *order*."""
        _, c = self.leading_term(order)
        return self if c == 1 else self.scale(Fraction(1) / c)

    def mul_term(self, mono, coeff):
        """Multiply by coeff * x^mono."""
        if coeff == 0:
            return Polynomial.zero(self.ring)
        return Polynomial(self.ring,
                          {mono_mul(m, mono): c * coeff
                           for m, c in self.terms.items()},
                          _canonical=True)

    def partial_derivative(self, i):
        res = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                dm = list(m)
                dm[i] = e - 1
                res[tuple(dm)] = c * e
        return Polynomial(self.ring, res, _canonical=True)

    def truncate(self, order):
        """Drop all terms of total degree above *order* (the jet at 0)."""
        return Polynomial(self.ring,
                          {m: c for m, c in self.terms.items()
                           if mono_degree(m) <= order},
                          _canonical=True)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- text ----------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"<{format_polynomial(self)}>"


def try_exact_divide(p, d):
    """Quotient q with q*d = p exactly, or None when d does not divide p.

    Division of the zero polynomial yields zero. Raises ZeroDivisionError
    for a zero divisor d.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p._check_ring(d)
    if p.is_zero():
        return Polynomial.zero(p.ring)
    lead_m, lead_c = d.leading_term(DEGREVLEX)
    quotient = {}
    rem = p
    while not rem.is_zero():
        m, c = rem.leading_term(DEGREVLEX)
        if not mono_divides(lead_m, m):
            return None
        qm = mono_div(m, lead_m)
        qc = c / lead_c
        quotient[qm] = qc
        rem = rem - d.mul_term(qm, qc)
    return Polynomial(p.ring, quotient)


# ---------------------------------------------------------------------------
# canonical printing: terms in descending degrevlex, '^' unspaced, single
# space around binary +/-. The output re-parses to the same polynomial.

def format_polynomial(p):
    if p.is_zero():
        return "0"
    names = p.ring.variables
    monos = sorted(p.terms, key=DEGREVLEX.key, reverse=True)
    pieces = []
    for m in monos:
        c = p.terms[m]
        body = _format_term(abs(c), m, names)
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append((" + " if c > 0 else " - ") + body)
    return "".join(pieces)


def _format_term(coeff, mono, names):
    factors = []
    for name, e in zip(names, mono):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    if not factors:
        return str(coeff)
    body = "*".join(factors)
    if coeff == 1:
        return body
    return f"{coeff}*{body}"


# ---------------------------------------------------------------------------
# expression parsing (grammar owned by the problem-file format; '+ - * ^',
# rational literals a/b, parentheses, leading sign)

def parse_polynomial(text, ring):
    """Parse an expression into a canonical Polynomial.

    Raises ParseError (with position and expected token) on bad syntax and
    UnknownVariableError for identifiers outside the ring.
    """
    stream = TokenStream(tokenize(text))
    p = parse_expression(stream, ring)
    tok = stream.current
    if tok.kind != "end":
        raise ParseError(f"unexpected trailing input at '{tok.value}'",
                         tok.position, tok.line, tok.column)
    return p


def parse_expression(stream, ring):
    """Parse one expression from a token stream (shared with the CLI)."""
    sign = 1
    if stream.at("+", "-"):
        if stream.advance().kind == "-":
            sign = -1
    result = _parse_product(stream, ring)
    if sign < 0:
        result = -result
    while stream.at("+", "-"):
        op = stream.advance().kind
        rhs = _parse_product(stream, ring)
        result = result + rhs if op == "+" else result - rhs
    return result


def _parse_product(stream, ring):
    result = _parse_power(stream, ring)
    while stream.at("*"):
        stream.advance()
        result = result * _parse_power(stream, ring)
    return result


def _parse_power(stream, ring):
    base = _parse_atom(stream, ring)
    if stream.at("^"):
        stream.advance()
        tok = stream.expect("number", "a non-negative integer exponent")
        if tok.value.denominator != 1 or tok.value < 0:
            raise ParseError("exponent must be a non-negative integer",
                             tok.position, tok.line, tok.column)
        return base ** int(tok.value)
    return base


def _parse_atom(stream, ring):
    tok = stream.current
    if tok.kind == "number":
        stream.advance()
        return ring.constant(tok.value)
    if tok.kind == "name":
        stream.advance()
        if tok.value not in ring.variables:
            raise UnknownVariableError(tok.value, tok.position,
                                       tok.line, tok.column)
        return ring.variable(tok.value)
    if tok.kind == "(":
        stream.advance()
        inner = parse_expression(stream, ring)
        stream.expect(")")
        return inner
    if tok.kind == "-":
        stream.advance()
        return -_parse_atom(stream, ring)
    raise ParseError(
        f"expected a number, variable or '(', found '{tok.value}'"
        if tok.kind != "end" else "unexpected end of input",
        tok.position, tok.line, tok.column)
