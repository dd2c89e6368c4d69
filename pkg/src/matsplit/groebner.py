"""Buchberger's algorithm with cofactor tracking, and derived ideal operations.

Every Groebner basis element carries a cofactor row expressing it as an
exact combination of the original generators, so ideal membership always
comes with a checkable certificate. Computations are deterministic for a
fixed input and monomial order: the normal selection strategy (smallest
lcm first) with the product and chain criteria.
"""

import heapq
from fractions import Fraction

from .errors import InternalInvariantViolation, ResourceBoundExceeded
from .polyring import (DEGREVLEX, Polynomial, Ring, elimination_order,
                       mono_div, mono_divides, mono_lcm, mono_mul)


class Limits:
    """Caps on a basis computation; exceeding either raises ResourceBoundExceeded."""

    __slots__ = ("max_pairs", "max_basis")

    def __init__(self, max_pairs=10000, max_basis=2000):
        self.max_pairs = max_pairs
        self.max_basis = max_basis


DEFAULT_LIMITS = Limits()


def division(p, divisors, order=DEGREVLEX):
    """Multivariate division: p = sum(q_i * d_i) + r.

    No term of r is divisible by the leading term of any divisor. Divisors
    are tried in list order, which makes the result deterministic.
    """
    ring = p.ring
    leads = []
    for d in divisors:
        leads.append(None if d.is_zero() else d.leading_term(order))
    quotients = [{} for _ in divisors]
    remainder = {}
    work = p
    while not work.is_zero():
        m, c = work.leading_term(order)
        for i, lead in enumerate(leads):
            if lead is not None and mono_divides(lead[0], m):
                qm = mono_div(m, lead[0])
                qc = c / lead[1]
                quotients[i][qm] = quotients[i].get(qm, 0) + qc
                work = work - divisors[i].mul_term(qm, qc)
                break
        else:
            remainder[m] = c
            work = work - Polynomial(ring, {m: c})
    return ([Polynomial(ring, q) for q in quotients],
            Polynomial(ring, remainder))


class GroebnerBasis:
    """A reduced Groebner basis together with cofactors over the generators.

    elements[i] == sum_j cofactors[i][j] * generators[j], exactly.
    """

    __slots__ = ("ring", "order", "elements", "cofactors", "generators")

    def __init__(self, ring, order, elements, cofactors, generators):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)
        self.cofactors = tuple(tuple(row) for row in cofactors)
        self.generators = tuple(generators)

    def normal_form(self, p):
        _, r = division(p, self.elements, self.order)
        return r

    def reduce_with_quotients(self, p):
        return division(p, self.elements, self.order)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


class Ideal:
    """Finitely generated ideal of a polynomial ring.

    Zero generators are dropped; the zero ideal keeps the single generator 0.
    The Groebner cache is write-once per monomial order.
    """

    __slots__ = ("ring", "generators", "_gb_cache")

    def __init__(self, ring, generators):
        gens = []
        for g in generators:
            if isinstance(g, (int, Fraction)):
                g = ring.constant(g)
            if g.ring != ring:
                raise ValueError("generator outside the ideal's ring")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens) if gens else (Polynomial.zero(ring),)
        self._gb_cache = {}

    def is_zero(self):
        return len(self.generators) == 1 and self.generators[0].is_zero()

    def groebner(self, order=DEGREVLEX, limits=None):
        key = (order.kind, order.block)
        cached = self._gb_cache.get(key)
        if cached is not None:
            return cached
        if self.is_zero():
            zero = Polynomial.zero(self.ring)
            gb = GroebnerBasis(self.ring, order, [zero],
                               [[zero]], self.generators)
        else:
            elements, cofactors = buchberger(self.generators, order, limits)
            gb = GroebnerBasis(self.ring, order, elements, cofactors,
                               self.generators)
        self._gb_cache[key] = gb
        return gb

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def buchberger(generators, order=DEGREVLEX, limits=None):
    """Reduced Groebner basis of the nonzero generators, with cofactors.

    Returns (elements, cofactor_rows); rows are indexed against the input
    list. Raises ResourceBoundExceeded past the configured caps.
    """
    limits = limits or DEFAULT_LIMITS
    ring = generators[0].ring
    zero = Polynomial.zero(ring)
    basis = []
    rows = []
    for idx, g in enumerate(generators):
        if g.is_zero():
            continue
        basis.append(g)
        row = [zero] * len(generators)
        row[idx] = ring.one()
        rows.append(row)
    if not basis:
        raise ValueError("buchberger needs at least one nonzero generator")

    leads = [g.leading_term(order) for g in basis]
    heap = []
    pending = set()

    def push_pairs(j):
        for i in range(j):
            lcm = mono_lcm(leads[i][0], leads[j][0])
            heapq.heappush(heap, (sum(lcm), order.key(lcm), i, j))
            pending.add((i, j))

    for j in range(len(basis)):
        push_pairs(j)

    processed = 0
    while heap:
        _, lcm_key, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        processed += 1
        if processed > limits.max_pairs:
            raise ResourceBoundExceeded(
                f"S-pair limit {limits.max_pairs} exceeded")
        lt_i, lt_j = leads[i], leads[j]
        lcm = mono_lcm(lt_i[0], lt_j[0])
        # product criterion: coprime leading monomials
        if lcm == mono_mul(lt_i[0], lt_j[0]):
            continue
        # chain criterion
        if _chain_criterion(i, j, lcm, leads, pending):
            continue
        mi, mj = mono_div(lcm, lt_i[0]), mono_div(lcm, lt_j[0])
        ci, cj = 1 / lt_i[1], 1 / lt_j[1]
        s_poly = basis[i].mul_term(mi, ci) - basis[j].mul_term(mj, cj)
        s_row = [a.mul_term(mi, ci) - b.mul_term(mj, cj)
                 for a, b in zip(rows[i], rows[j])]
        quotients, r = division(s_poly, basis, order)
        if r.is_zero():
            continue
        for k, q in enumerate(quotients):
            if not q.is_zero():
                s_row = [a - q * b for a, b in zip(s_row, rows[k])]
        basis.append(r)
        rows.append(s_row)
        leads.append(r.leading_term(order))
        if len(basis) > limits.max_basis:
            raise ResourceBoundExceeded(
                f"basis size limit {limits.max_basis} exceeded")
        push_pairs(len(basis) - 1)

    return _reduce_basis(basis, rows, order)


def _chain_criterion(i, j, lcm, leads, pending):
    for k in range(len(leads)):
        if k == i or k == j:
            continue
        if not mono_divides(leads[k][0], lcm):
            continue
        pik = (i, k) if i < k else (k, i)
        pjk = (j, k) if j < k else (k, j)
        if pik not in pending and pjk not in pending:
            return True
    return False


def _reduce_basis(basis, rows, order):
    # minimize: drop elements whose leading term another element divides
    by_lead = sorted(range(len(basis)),
                     key=lambda k: order.key(basis[k].leading_term(order)[0]))
    kept = []
    for k in by_lead:
        lt = basis[k].leading_term(order)[0]
        if any(mono_divides(basis[x].leading_term(order)[0], lt)
               for x in kept):
            continue
        kept.append(k)

    # tail-reduce against the other kept elements, updating cofactors
    polys = [basis[k] for k in kept]
    crows = [list(rows[k]) for k in kept]
    for pos in range(len(polys)):
        others = polys[:pos] + polys[pos + 1:]
        quotients, r = division(polys[pos], others, order)
        if r.is_zero():
            raise InternalInvariantViolation("minimized element reduced to zero")
        row = crows[pos]
        other_rows = crows[:pos] + crows[pos + 1:]
        for q, orow in zip(quotients, other_rows):
            if not q.is_zero():
                row = [a - q * b for a, b in zip(row, orow)]
        lc = r.leading_term(order)[1]
        inv = Fraction(1) / lc
        polys[pos] = r.scale(inv)
        crows[pos] = [c.scale(inv) for c in row]

    pairs = sorted(zip(polys, crows),
                   key=lambda e: order.key(e[0].leading_term(order)[0]))
    return [p for p, _ in pairs], [r for _, r in pairs]


class MembershipCertificate:
    """Witness that member = sum(coefficients[i] * generators[i]) exactly."""

    __slots__ = ("member", "generators", "coefficients")

    def __init__(self, member, generators, coefficients):
        self.member = member
        self.generators = tuple(generators)
        self.coefficients = tuple(coefficients)

    def combination(self):
        acc = Polynomial.zero(self.member.ring)
        for c, g in zip(self.coefficients, self.generators):
            acc = acc + c * g
        return acc

    def verify(self):
        return self.combination() == self.member


def member_with_certificate(p, ideal, order=DEGREVLEX, limits=None):
    """Certificate for p in the ideal, or None if p is not a member."""
    if p.is_zero():
        zero = Polynomial.zero(p.ring)
        return MembershipCertificate(p, ideal.generators,
                                     [zero] * len(ideal.generators))
    if ideal.is_zero():
        return None
    gb = ideal.groebner(order, limits)
    quotients, r = gb.reduce_with_quotients(p)
    if not r.is_zero():
        return None
    coeffs = [Polynomial.zero(p.ring)] * len(ideal.generators)
    for q, row in zip(quotients, gb.cofactors):
        if q.is_zero():
            continue
        coeffs = [c + q * rc for c, rc in zip(coeffs, row)]
    cert = MembershipCertificate(p, ideal.generators, coeffs)
    if not cert.verify():
        raise InternalInvariantViolation("membership certificate failed to verify")
    return cert


def normal_form(p, gb):
    return gb.normal_form(p)


# ---------------------------------------------------------------------------
# derived ideal operations

def ideal_sum(one, two):
    _same_ring(one, two)
    if one.is_zero():
        return two
    if two.is_zero():
        return one
    return Ideal(one.ring, one.generators + two.generators)


def ideal_product(one, two):
    _same_ring(one, two)
    gens = [g * h for g in one.generators for h in two.generators]
    return Ideal(one.ring, gens)


def ideal_intersection(one, two, limits=None):
    """I cap J via a tag variable: generators t*g_i, (1-t)*h_j, eliminate t."""
    _same_ring(one, two)
    ring = one.ring
    if one.is_zero() or two.is_zero():
        return Ideal(ring, [])
    aux = _fresh_variable(ring)
    ext = Ring((aux,) + ring.variables)
    t = ext.variable(aux)
    one_minus_t = ext.one() - t
    gens = [t * _lift(g, ext) for g in one.generators]
    gens += [one_minus_t * _lift(h, ext) for h in two.generators]
    gb = Ideal(ext, gens).groebner(elimination_order(1), limits)
    kept = [_project(g, ring) for g in gb.elements
            if all(m[0] == 0 for m in g.terms)]
    return Ideal(ring, kept)


def ideal_quotient(ideal, f, limits=None):
    """(I : f) = { g : g*f in I }, computed as (1/f) * (I cap (f))."""
    if f.is_zero():
        raise ZeroDivisionError("quotient by the zero polynomial")
    if ideal.is_zero():
        return Ideal(ideal.ring, [])
    from .polyring import try_exact_divide
    meet = ideal_intersection(ideal, Ideal(ideal.ring, [f]), limits)
    gens = []
    for k in meet.generators:
        if k.is_zero():
            continue
        q = try_exact_divide(k, f)
        if q is None:
            raise InternalInvariantViolation(
                "intersection generator not divisible in ideal quotient")
        gens.append(q)
    return Ideal(ideal.ring, gens)


def poly_lcm(f, g, limits=None):
    """Monic generator of (f) cap (g)."""
    if f.is_zero() or g.is_zero():
        raise ValueError("lcm of zero polynomial")
    meet = ideal_intersection(Ideal(f.ring, [f]), Ideal(g.ring, [g]), limits)
    gb = meet.groebner(DEGREVLEX, limits)
    if len(gb.elements) != 1:
        raise InternalInvariantViolation(
            "intersection of principal ideals is not principal")
    return gb.elements[0]


def poly_gcd(f, g, limits=None):
    """Monic gcd, computed as f*g / lcm(f, g)."""
    from .polyring import try_exact_divide
    lcm = poly_lcm(f, g, limits)
    q = try_exact_divide(f * g, lcm)
    if q is None:
        raise InternalInvariantViolation("f*g not divisible by lcm(f, g)")
    return q.monic()


def _same_ring(one, two):
    if one.ring != two.ring:
        raise ValueError("ideals live in different rings")


def _fresh_variable(ring):
    if "t" not in ring.variables:
        return "t"
    k = 0
    while f"t{k}" in ring.variables:
        k += 1
    return f"t{k}"


def _lift(p, ext):
    return Polynomial(ext, {(0,) + m: c for m, c in p.terms.items()},
                      _canonical=True)


def _project(p, ring):
    return Polynomial(ring, {m[1:]: c for m, c in p.terms.items()},
                      _canonical=True)


# ---------------------------------------------------------------------------
# syzygies via Groebner bases of submodules of a free module
#
# Module monomials are (monomial, component) pairs ordered position-over-term:
# smaller component wins, degrevlex inside a component. Stacking the m value
# rows above n bookkeeping rows makes the order an elimination order for the
# bookkeeping block.

def _vec_leading(vec, order):
    for i, p in enumerate(vec):
        if not p.is_zero():
            m, c = p.leading_term(order)
            return i, m, c
    return None


def _vec_is_zero(vec):
    return all(p.is_zero() for p in vec)


def _vec_sub_scaled(vec, other, mono, coeff):
    return [a - b.mul_term(mono, coeff) for a, b in zip(vec, other)]


def module_normal_form(vec, basis, order=DEGREVLEX):
    """Remainder of a free-module element under division by basis vectors."""
    ring = vec[0].ring
    zero = Polynomial.zero(ring)
    leads = [_vec_leading(b, order) for b in basis]
    result = [zero] * len(vec)
    work = list(vec)
    while True:
        lead = _vec_leading(work, order)
        if lead is None:
            return result
        comp, m, c = lead
        for b, bl in zip(basis, leads):
            if bl is not None and bl[0] == comp and mono_divides(bl[1], m):
                work = _vec_sub_scaled(work, b, mono_div(m, bl[1]), c / bl[2])
                break
        else:
            term = Polynomial(ring, {m: c})
            result[comp] = result[comp] + term
            work[comp] = work[comp] - term


def _module_groebner(vectors, order, limits):
    limits = limits or DEFAULT_LIMITS
    basis = [list(v) for v in vectors if not _vec_is_zero(v)]
    leads = [_vec_leading(b, order) for b in basis]
    heap = []

    def push_pairs(j):
        cj, mj, _ = leads[j]
        for i in range(j):
            ci, mi, _ = leads[i]
            if ci != cj:
                continue
            lcm = mono_lcm(mi, mj)
            heapq.heappush(heap, (sum(lcm), order.key(lcm), ci, i, j))

    for j in range(len(basis)):
        push_pairs(j)

    processed = 0
    while heap:
        _, _, _, i, j = heapq.heappop(heap)
        processed += 1
        if processed > limits.max_pairs:
            raise ResourceBoundExceeded(
                f"module S-pair limit {limits.max_pairs} exceeded")
        _, mi, ci = leads[i]
        _, mj, cj = leads[j]
        lcm = mono_lcm(mi, mj)
        s = _vec_sub_scaled(
            [p.mul_term(mono_div(lcm, mi), 1 / ci) for p in basis[i]],
            basis[j], mono_div(lcm, mj), 1 / cj)
        r = module_normal_form(s, basis, order)
        if _vec_is_zero(r):
            continue
        basis.append(r)
        leads.append(_vec_leading(r, order))
        if len(basis) > limits.max_basis:
            raise ResourceBoundExceeded(
                f"module basis size limit {limits.max_basis} exceeded")
        push_pairs(len(basis) - 1)
    return basis


def syzygies(columns, order=DEGREVLEX, limits=None):
    """Generators of { v in R^n : sum_j v[j] * columns[j] = 0 }.

    Each column is a list of polynomials of common length m. The result is
    a list of length-n polynomial vectors; each annihilates the columns
    exactly, and together they generate the full syzygy module.
    """
    if not columns:
        return []
    m = len(columns[0])
    n = len(columns)
    ring = columns[0][0].ring
    zero = Polynomial.zero(ring)
    one = ring.one()
    for col in columns:
        if len(col) != m:
            raise ValueError("columns of unequal length")
        for p in col:
            if p.ring != ring:
                raise ValueError("column entries in different rings")
    vectors = []
    for j, col in enumerate(columns):
        tag = [zero] * n
        tag[j] = one
        vectors.append(list(col) + tag)
    basis = _module_groebner(vectors, order, limits)
    out = []
    for vec in basis:
        if all(p.is_zero() for p in vec[:m]):
            tail = vec[m:]
            lead = _vec_leading(tail, order)
            inv = 1 / lead[2]
            out.append([p.scale(inv) for p in tail])
    out.sort(key=lambda v: [(p.is_zero(), sorted(p.terms.items())) for p in v])
    return out
