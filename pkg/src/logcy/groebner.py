"""Buchberger's algorithm, normal forms, weighted Hilbert functions, and the
Jacobian smoothness certificate.

Pair selection is the normal strategy (smallest lcm in the active order, ties
by pair index); both the coprime-leading-term and the chain criterion are
applied.  The same division and S-polynomial routines optionally carry
cofactor traces so that a unit found in an ideal comes with an explicit
combination over the input generators, replayable exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InputError, UnsupportedStructureError
from .poly import Polynomial, WeightedOrder, unit_order


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_quot(a, b):
    return tuple(x - y for x, y in zip(a, b))


class _Traced:
    """A polynomial with cofactors over the original generator list."""

    __slots__ = ("poly", "cofactors")

    def __init__(self, poly, cofactors):
        self.poly = poly
        self.cofactors = cofactors

    def sub_term_mul(self, other, exps, coeff):
        shifted = other.poly.mul_term(exps, coeff)
        poly = self.poly - shifted
        cof = None
        if self.cofactors is not None:
            cof = [a - b.mul_term(exps, coeff)
                   for a, b in zip(self.cofactors, other.cofactors)]
        return _Traced(poly, cof)

    def scale(self, coeff):
        cof = None
        if self.cofactors is not None:
            cof = [c.scale(coeff) for c in self.cofactors]
        return _Traced(self.poly.scale(coeff), cof)


def _reduce(traced, basis, order):
    """Full division: returns the traced remainder, no term of which is
    divisible by any basis leading term."""
    field = traced.poly.field
    rem_terms = {}
    work = traced
    while work.poly.terms:
        exps, coeff = work.poly.leading(order)
        hit = None
        for g in basis:
            g_exps, g_coeff = g.poly.leading(order)
            if _mono_divides(g_exps, exps):
                hit = (g, g_exps, g_coeff)
                break
        if hit is None:
            rem_terms[exps] = coeff
            stripped = Polynomial(work.poly.vars, field,
                                  {e: c for e, c in work.poly.terms.items() if e != exps})
            work = _Traced(stripped, work.cofactors)
        else:
            g, g_exps, g_coeff = hit
            factor = field.mul(coeff, field.invert(g_coeff))
            work = work.sub_term_mul(g, _mono_quot(exps, g_exps), factor)
    remainder = Polynomial(traced.poly.vars, field, rem_terms)
    return _Traced(remainder, work.cofactors)


def _s_polynomial(f, g, order):
    f_exps, f_coeff = f.poly.leading(order)
    g_exps, g_coeff = g.poly.leading(order)
    field = f.poly.field
    lcm = _mono_lcm(f_exps, g_exps)
    left = _Traced(f.poly.mul_term(_mono_quot(lcm, f_exps), field.invert(f_coeff)),
                   None if f.cofactors is None else
                   [c.mul_term(_mono_quot(lcm, f_exps), field.invert(f_coeff))
                    for c in f.cofactors])
    return left.sub_term_mul(g, _mono_quot(lcm, g_exps), field.invert(g_coeff))


def _buchberger(gens, order, with_trace):
    field = gens[0].field
    variables = gens[0].vars
    unit = Polynomial.constant(variables, 1, field)
    zero = Polynomial.zero(variables, field)

    basis = []
    for idx, g in enumerate(gens):
        if g.is_zero():
            continue
        cof = None
        if with_trace:
            cof = [unit if j == idx else zero for j in range(len(gens))]
        basis.append(_Traced(g, cof))
    if not basis:
        return []

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def lcm_key(pair):
        i, j = pair
        lcm = _mono_lcm(basis[i].poly.leading(order)[0], basis[j].poly.leading(order)[0])
        return (order.key(lcm), pair)

    while pairs:
        i, j = min(pairs, key=lcm_key)
        pairs.discard((i, j))
        lt_i = basis[i].poly.leading(order)[0]
        lt_j = basis[j].poly.leading(order)[0]
        lcm = _mono_lcm(lt_i, lt_j)
        # coprime leading terms: S-polynomial reduces to zero
        if lcm == tuple(a + b for a, b in zip(lt_i, lt_j)):
            continue
        # chain criterion: an already-processed third element divides the lcm
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if not _mono_divides(basis[k].poly.leading(order)[0], lcm):
                continue
            if (tuple(sorted((i, k))) not in pairs
                    and tuple(sorted((j, k))) not in pairs):
                skip = True
                break
        if skip:
            continue
        remainder = _reduce(_s_polynomial(basis[i], basis[j], order), basis, order)
        if remainder.poly.is_zero():
            continue
        new_index = len(basis)
        basis.append(remainder)
        pairs.update((idx, new_index) for idx in range(new_index))

    return _minimal_reduced(basis, order, with_trace)


def _minimal_reduced(basis, order, with_trace):
    # drop elements whose leading term another element divides
    kept = []
    leads = [g.poly.leading(order)[0] for g in basis]
    for i, g in enumerate(basis):
        lt = leads[i]
        redundant = False
        for j, other in enumerate(leads):
            if i == j:
                continue
            if _mono_divides(other, lt) and (other != lt or j < i):
                redundant = True
                break
        if not redundant:
            kept.append(g)
    # interreduce and normalize to monic leading coefficients
    reduced = []
    for idx, g in enumerate(kept):
        others = kept[:idx] + kept[idx + 1:]
        rem = _reduce(g, others, order) if others else g
        if rem.poly.is_zero():
            continue
        field = rem.poly.field
        lc = rem.poly.leading(order)[1]
        reduced.append(rem.scale(field.invert(lc)))
    reduced.sort(key=lambda g: order.key(g.poly.leading(order)[0]), reverse=True)
    return reduced


def groebner_basis(gens, order: WeightedOrder, with_trace=False):
    """Reduced Groebner basis of the ideal generated by gens.

    With with_trace=True also returns, per basis element, the cofactor list
    expressing it as a combination of the input generators.
    """
    gens = list(gens)
    if not gens:
        return ([], []) if with_trace else []
    field = gens[0].field
    if not field.is_field:
        raise UnsupportedStructureError(
            f"Groebner bases require a field coefficient ring, not {field.name}")
    for g in gens[1:]:
        if g.vars != gens[0].vars or g.field != field:
            raise InputError("generators live in different rings")
    traced = _buchberger(gens, order, with_trace)
    if with_trace:
        return [t.poly for t in traced], [list(t.cofactors) for t in traced]
    return [t.poly for t in traced]


def reduce_modulo(f: Polynomial, basis, order: WeightedOrder) -> Polynomial:
    """Remainder of f under full division by an arbitrary polynomial list."""
    live = [_Traced(g, None) for g in basis if not g.is_zero()]
    if not live:
        return f
    return _reduce(_Traced(f, None), live, order).poly


def is_groebner(basis, order: WeightedOrder) -> bool:
    """Check that every S-polynomial of the basis reduces to zero."""
    basis = [g for g in basis if not g.is_zero()]
    for i, j in combinations(range(len(basis)), 2):
        s = _s_polynomial(_Traced(basis[i], None), _Traced(basis[j], None), order)
        if not reduce_modulo(s.poly, basis, order).is_zero():
            return False
    return True


class Ideal:
    """A generator list with a cached reduced Groebner basis per order."""

    def __init__(self, gens, variables=None, field=None):
        gens = tuple(gens)
        if gens:
            variables = gens[0].vars
            field = gens[0].field
            for g in gens:
                if g.vars != variables or g.field != field:
                    raise InputError("generators live in different rings")
        elif variables is None or field is None:
            raise InputError("the zero ideal needs explicit variables and field")
        self.gens = gens
        self.vars = tuple(variables)
        self.field = field
        self._cache = {}

    def groebner(self, order: WeightedOrder):
        cached = self._cache.get(order)
        if cached is None:
            cached = groebner_basis(self.gens, order)
            self._cache[order] = cached
        return cached

    def normal_form(self, f: Polynomial, order: WeightedOrder) -> Polynomial:
        if f.vars != self.vars or f.field != self.field:
            raise InputError("polynomial lives in a different ring than the ideal")
        return reduce_modulo(f, self.groebner(order), order)

    def contains(self, f: Polynomial, order: WeightedOrder) -> bool:
        return self.normal_form(f, order).is_zero()

    def is_unit_ideal(self, order: WeightedOrder) -> bool:
        basis = self.groebner(order)
        return len(basis) == 1 and basis[0].total_degree() == 0

    def __repr__(self):
        return f"Ideal({[g.to_string() for g in self.gens]})"


def normal_form(f: Polynomial, ideal: Ideal, order: WeightedOrder) -> Polynomial:
    return ideal.normal_form(f, order)


def ideal_membership(f: Polynomial, ideal: Ideal, order: WeightedOrder) -> bool:
    return ideal.contains(f, order)


def ideals_equal(first: Ideal, second: Ideal, order: WeightedOrder) -> bool:
    """Mutual membership of generators."""
    return (all(second.contains(g, order) for g in first.gens)
            and all(first.contains(g, order) for g in second.gens))


def hilbert_function_up_to(ideal: Ideal, order: WeightedOrder, bound) -> dict:
    """Counts of standard monomials per weight level up to the bound.

    Keys are all weight values realized by ambient monomials of weight at
    most the bound, so empty graded pieces report 0 rather than vanishing
    from the map.  For inhomogeneous ideals this is filtration-level
    counting: the w entry is dim F_w / F_{w-1} of the quotient.
    """
    bound = Fraction(bound)
    weights = order.weights
    if len(weights) != len(ideal.vars):
        raise InputError("order weight count does not match the variable count")
    basis = ideal.groebner(order)
    leads = [g.leading(order)[0] for g in basis]
    counts = {}
    nvars = len(weights)

    def walk(idx, exps, weight):
        if idx == nvars:
            counts.setdefault(weight, 0)
            if not any(_mono_divides(l, exps) for l in leads):
                counts[weight] += 1
            return
        e = 0
        while weight + weights[idx] * e <= bound:
            walk(idx + 1, exps + (e,), weight + weights[idx] * e)
            e += 1

    walk(0, (), Fraction(0))
    return counts


@dataclass(frozen=True)
class SmoothnessCertificate:
    """An explicit combination sum(cofactor_i * generator_i) = 1."""

    generators: tuple
    cofactors: tuple

    def replay(self) -> Polynomial:
        variables = self.generators[0].vars
        field = self.generators[0].field
        total = Polynomial.zero(variables, field)
        for g, c in zip(self.generators, self.cofactors):
            total = total + g * c
        return total


def _determinant(matrix):
    """Exact determinant of a square matrix of polynomials (Laplace expansion)."""
    n = len(matrix)
    if n == 0:
        raise InputError("determinant of an empty matrix")
    if n == 1:
        return matrix[0][0]
    variables = matrix[0][0].vars
    field = matrix[0][0].field
    total = Polynomial.zero(variables, field)
    for col in range(n):
        entry = matrix[0][col]
        if entry.is_zero():
            continue
        minor = [[row[c] for c in range(n) if c != col] for row in matrix[1:]]
        term = entry * _determinant(minor)
        total = total + term if col % 2 == 0 else total - term
    return total


def jacobian_smooth(ideal: Ideal, expected_codim: int, order: WeightedOrder | None = None):
    """Jacobian criterion for a complete-intersection presentation.

    Returns (True, certificate) when 1 lies in the ideal generated by the
    relations together with all c x c minors of their Jacobian matrix, i.e.
    the singular locus is empty over the algebraic closure.  (False, None)
    means "not verified smooth"; no claim of an actual singularity is made.
    """
    if len(ideal.gens) != expected_codim:
        raise UnsupportedStructureError(
            f"expected {expected_codim} generators for a codimension-{expected_codim} "
            f"complete intersection, got {len(ideal.gens)}")
    if not ideal.field.is_field:
        raise UnsupportedStructureError("the Jacobian criterion needs field coefficients")
    order = order or unit_order(len(ideal.vars))
    jac = [[g.derivative(v) for v in ideal.vars] for g in ideal.gens]
    minors = []
    for cols in combinations(range(len(ideal.vars)), expected_codim):
        sub = [[row[c] for c in cols] for row in jac]
        det = _determinant(sub)
        if not det.is_zero():
            minors.append(det)
    augmented = list(ideal.gens) + minors
    basis, traces = groebner_basis(augmented, order, with_trace=True)
    if len(basis) == 1 and basis[0].total_degree() == 0:
        # basis[0] is monic, hence exactly 1
        cert = SmoothnessCertificate(tuple(augmented), tuple(traces[0]))
        if not (cert.replay() - Polynomial.constant(ideal.vars, 1, ideal.field)).is_zero():
            raise InputError("internal error: smoothness certificate failed to replay")
        return True, cert
    return False, None
