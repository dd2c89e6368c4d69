"""The localization of Q[x1..xp] at the origin.

Elements are polynomial fractions whose denominator does not vanish at 0.
Ideal membership in the local ring reduces to a polynomial computation:
f lies in J R_(m) iff the quotient (J : f) contains a unit, and the unit
found this way turns every local membership into an exact polynomial
identity u*f = sum(c_i * g_i).
"""

import itertools
from fractions import Fraction
from math import inf

from .errors import InternalInvariantViolation, ParseError
from .groebner import (DEFAULT_LIMITS, Ideal, ideal_intersection,
                       ideal_product, ideal_quotient, ideal_sum,
                       member_with_certificate, poly_gcd)
from .lexer import TokenStream, tokenize
from .polyring import DEGREVLEX, Polynomial, parse_expression, try_exact_divide

# fractions are gcd-reduced lazily, only past this many stored terms
REDUCE_THRESHOLD = 60


class LocalElement:
    """A fraction num/den with den a unit of the local ring (den(0) != 0).

    Normalized so that den(0) = 1. Equality is cross-multiplied polynomial
    equality; gcd reduction happens lazily and never changes the class.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        ring = num.ring
        if den is None:
            den = ring.one()
        c = den.constant_term()
        if c == 0:
            raise ValueError(f"denominator {den} vanishes at the origin")
        if num.is_zero():
            num, den = num, ring.one()
        else:
            if c != 1:
                inv = Fraction(1) / c
                num, den = num.scale(inv), den.scale(inv)
            if (len(num.terms) + len(den.terms) > REDUCE_THRESHOLD
                    and not den.is_constant()):
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = try_exact_divide(num, g)
                    den = try_exact_divide(den, g)
                    inv = Fraction(1) / den.constant_term()
                    num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    @classmethod
    def coerce(cls, value, ring):
        if isinstance(value, LocalElement):
            return value
        if isinstance(value, Polynomial):
            return cls(value)
        if isinstance(value, (int, Fraction)):
            return cls(ring.constant(value))
        raise TypeError(f"cannot interpret {value!r} as a local ring element")

    def is_zero(self):
        return self.num.is_zero()

    def is_unit(self):
        return self.num.constant_term() != 0

    def is_polynomial(self):
        return self.den.is_constant()

    def constant_value(self):
        return self.num.constant_term() / self.den.constant_term()

    def order_at_origin(self):
        return self.num.order_at_origin()

    def _pair(self, other):
        return LocalElement.coerce(other, self.ring)

    def __add__(self, other):
        other = self._pair(other)
        return LocalElement(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._pair(other)
        return LocalElement(self.num * other.den - other.num * self.den,
                            self.den * other.den)

    def __rsub__(self, other):
        return self._pair(other) - self

    def __neg__(self):
        return LocalElement(-self.num, self.den)

    def __mul__(self, other):
        other = self._pair(other)
        return LocalElement(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._pair(other)
        if not other.is_unit():
            raise ZeroDivisionError(
                f"{other} is not invertible in the local ring")
        return LocalElement(self.num * other.den, self.den * other.num)

    def inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError(
                f"{self} is not invertible in the local ring")
        return LocalElement(self.den, self.num)

    def __eq__(self, other):
        try:
            other = self._pair(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __str__(self):
        if self.den.is_constant():
            scaled = self.num.scale(Fraction(1) / self.den.constant_term())
            return str(scaled)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"<{self}>"


def parse_local_element(text, ring):
    """Parse 'expr' or 'expr / expr' (denominator a unit) into a LocalElement."""
    stream = TokenStream(tokenize(text))
    num = parse_expression(stream, ring)
    den = None
    if stream.at("/"):
        stream.advance()
        den = parse_expression(stream, ring)
    tok = stream.current
    if tok.kind != "end":
        raise ParseError(f"unexpected trailing input at '{tok.value}'",
                         tok.position, tok.line, tok.column)
    if den is None:
        return LocalElement(num)
    return LocalElement(num, den)


class LocalCertificate:
    """Witness for f in J R_(m): unit * cleared(f) = sum(c_i * g_i) exactly."""

    __slots__ = ("member", "cleared", "unit", "generators", "coefficients")

    def __init__(self, member, cleared, unit, generators, coefficients):
        self.member = member
        self.cleared = cleared
        self.unit = unit
        self.generators = tuple(generators)
        self.coefficients = tuple(coefficients)

    def verify(self):
        lhs = self.unit * self.cleared
        rhs = Polynomial.zero(self.cleared.ring)
        for c, g in zip(self.coefficients, self.generators):
            rhs = rhs + c * g
        return lhs == rhs and self.unit.constant_term() != 0


class LocalIdeal:
    """An ideal of the local ring, held by polynomial generators.

    Denominators of LocalElement generators are cleared on construction;
    this does not change the ideal since denominators are units.
    """

    __slots__ = ("ideal",)

    def __init__(self, ring, generators):
        cleared = []
        for g in generators:
            if isinstance(g, LocalElement):
                cleared.append(g.num)
            elif isinstance(g, (int, Fraction)):
                cleared.append(ring.constant(g))
            else:
                cleared.append(g)
        self.ideal = Ideal(ring, cleared)

    @classmethod
    def _wrap(cls, ideal):
        obj = cls.__new__(cls)
        obj.ideal = ideal
        return obj

    @property
    def ring(self):
        return self.ideal.ring

    @property
    def generators(self):
        return self.ideal.generators

    def is_zero(self):
        return self.ideal.is_zero()

    def is_proper(self):
        """True iff the ideal misses every unit, i.e. all generators are in m."""
        return all(g.constant_term() == 0 for g in self.generators)

    def local_member(self, f, limits=None):
        """Certificate for f in J R_(m), or None.

        Clears the denominator, then decides membership through the quotient
        (J : f'): f' belongs locally iff some reduced-basis element of the
        quotient has nonzero constant term, and that element is the unit of
        the returned identity.
        """
        f = LocalElement.coerce(f, self.ring)
        cleared = f.num
        one = self.ring.one()
        if cleared.is_zero():
            zero = Polynomial.zero(self.ring)
            return LocalCertificate(f, cleared, one, self.generators,
                                    [zero] * len(self.generators))
        if self.is_zero():
            return None
        # fast path: plain polynomial membership gives unit 1
        cert = member_with_certificate(cleared, self.ideal, DEGREVLEX, limits)
        if cert is not None:
            return LocalCertificate(f, cleared, one, self.generators,
                                    cert.coefficients)
        quotient = ideal_quotient(self.ideal, cleared, limits)
        unit = None
        for q in quotient.groebner(DEGREVLEX, limits).elements:
            if q.constant_term() != 0:
                unit = q
                break
        if unit is None:
            return None
        cert = member_with_certificate(unit * cleared, self.ideal,
                                       DEGREVLEX, limits)
        if cert is None:
            raise InternalInvariantViolation(
                "quotient produced a unit but the product is not a member")
        return LocalCertificate(f, cleared, unit, self.generators,
                                cert.coefficients)

    def __repr__(self):
        return repr(self.ideal)


def local_sum(one, two):
    return LocalIdeal._wrap(ideal_sum(one.ideal, two.ideal))


def local_product(one, two):
    return LocalIdeal._wrap(ideal_product(one.ideal, two.ideal))


def local_intersection(one, two, limits=None):
    return LocalIdeal._wrap(ideal_intersection(one.ideal, two.ideal, limits))


def local_power(ideal, k):
    if k < 0:
        raise ValueError("ideal power needs k >= 0")
    result = LocalIdeal(ideal.ring, [ideal.ring.one()])
    for _ in range(k):
        result = local_product(result, ideal)
    return result


def local_ideal_contains(inner, outer, limits=None):
    """True iff inner is a subset of outer in the local ring."""
    return all(outer.local_member(g, limits) is not None
               for g in inner.generators)


def local_ideal_equal(one, two, limits=None):
    return (local_ideal_contains(one, two, limits)
            and local_ideal_contains(two, one, limits))


def mutually_prime(one, two, limits=None):
    """Decide J1 cap J2 = J1 * J2 in the local ring.

    Returns (True, None) or (False, witness) where the witness is a
    generator of the intersection that is not locally in the product.
    The inclusion product <= intersection always holds and is asserted.
    """
    meet = local_intersection(one, two, limits)
    prod = local_product(one, two)
    for g in prod.generators:
        if meet.local_member(g, limits) is None:
            raise InternalInvariantViolation(
                "product generator escaped the intersection")
    for g in meet.generators:
        if prod.local_member(g, limits) is None:
            return False, g
    return True, None


def ideal_order(ideal):
    """The m-adic order: max p with J <= m^p; inf for the zero ideal.

    Equals the minimal vanishing order among polynomial generators.
    """
    if ideal.is_zero():
        return inf
    return min(g.order_at_origin() for g in ideal.generators)


def contains_power_of_maximal_ideal(ideal, up_to, limits=None):
    """Smallest k <= up_to with every degree-k monomial in J, else None.

    Membership is tested in the polynomial ring, which is sufficient (though
    not necessary) for the local inclusion m^k <= J R_(m).
    """
    if up_to < 0:
        raise ValueError("bound must be non-negative")
    if ideal.is_zero():
        return None
    ring = ideal.ring
    gb = ideal.ideal.groebner(DEGREVLEX, limits)
    nvars = ring.nvars
    for k in range(up_to + 1):
        ok = True
        for combo in itertools.combinations_with_replacement(range(nvars), k):
            expts = [0] * nvars
            for i in combo:
                expts[i] += 1
            mono = Polynomial(ring, {tuple(expts): Fraction(1)})
            if not gb.normal_form(mono).is_zero():
                ok = False
                break
        if ok:
            return k
    return None


def local_divide(elem, f, limits=None):
    """Exact division of a local element by a polynomial, or None.

    Succeeds iff elem/f still lies in the local ring; unit factors of f
    are absorbed into the denominator.
    """
    if f.is_zero():
        raise ZeroDivisionError("local division by zero")
    elem = LocalElement.coerce(elem, f.ring)
    if elem.is_zero():
        return LocalElement(Polynomial.zero(f.ring))
    q = try_exact_divide(elem.num, f)
    if q is not None:
        return LocalElement(q, elem.den)
    cert = LocalIdeal(f.ring, [f]).local_member(elem.num, limits)
    if cert is None:
        return None
    return LocalElement(cert.coefficients[0], cert.unit * elem.den)
