"""The theta-basis ring of a divisor configuration.

Basis symbols are pairs (v, c): a multiplicity vector indexing a nonempty
stratum (and satisfying the exact pole-order constraint) together with a
connected component of that stratum.  The product of two basis symbols sums
the multiplicity vectors and collects the components of the deeper stratum
whose restrictions match both factors; products leaving the basis set
truncate to zero.  Classical Stanley-Reisner presentations of simplicial
complexes live here as well.
"""

import re
from fractions import Fraction

from .complexes import SimplicialComplex
from .errors import InputError
from .fields import QQ
from .poly import Polynomial
from .rees import WeightedPresentation
from .stratum import DivisorConfiguration


class ThetaBasisElement:
    """One basis symbol: multiplicity vector plus stratum component."""

    __slots__ = ("v", "component")

    def __init__(self, config: DivisorConfiguration, v, component):
        v = config.check_vector(v)
        if not config.in_basis(v):
            raise InputError(f"vector {v} does not index a basis element")
        comps = config.components(DivisorConfiguration.support(v))
        if component not in comps:
            raise InputError(f"{component} is not a component of stratum "
                             f"{sorted(DivisorConfiguration.support(v))}")
        self.v = v
        self.component = component

    @classmethod
    def _unchecked(cls, v, component):
        # internal fast path for symbols produced by validated arithmetic
        obj = object.__new__(cls)
        obj.v = v
        obj.component = component
        return obj

    def key(self, config: DivisorConfiguration):
        return (config.weight(self.v), self.v, self.component)

    def __eq__(self, other):
        return (isinstance(other, ThetaBasisElement)
                and other.v == self.v and other.component == self.component)

    def __hash__(self):
        return hash((self.v, self.component))

    def __repr__(self):
        return f"theta[{','.join(map(str, self.v))};{self.component}]"


class ThetaElement:
    """Finite linear combination of basis symbols over Q or F_p."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field=QQ, coeffs=None):
        self.field = field
        clean = {}
        if coeffs:
            for elem, c in coeffs.items():
                if not field.is_zero(c):
                    clean[elem] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, field=QQ):
        return cls(field, {})

    @classmethod
    def basis(cls, elem: ThetaBasisElement, field=QQ):
        return cls(field, {elem: field.one})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        if other.field != self.field:
            raise InputError("field tags differ")
        out = dict(self.coeffs)
        for elem, c in other.coeffs.items():
            s = self.field.add(out.get(elem, self.field.zero), c)
            if self.field.is_zero(s):
                out.pop(elem, None)
            else:
                out[elem] = s
        return ThetaElement(self.field, out)

    def scale(self, coeff):
        if self.field.is_zero(coeff):
            return ThetaElement.zero(self.field)
        return ThetaElement(self.field,
                            {e: self.field.mul(c, coeff) for e, c in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, ThetaElement) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.field, frozenset(self.coeffs.items())))

    def sorted_terms(self, config: DivisorConfiguration):
        return sorted(self.coeffs.items(), key=lambda item: item[0].key(config))

    def to_json(self, config: DivisorConfiguration) -> list:
        return [
            {"v": list(elem.v), "component": elem.component, "coeff": self.field.fmt(c)}
            for elem, c in self.sorted_terms(config)
        ]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"{self.field.fmt(c)}*{elem!r}" for elem, c in
                 sorted(self.coeffs.items(), key=lambda kv: (kv[0].v, kv[0].component))]
        return " + ".join(parts)


def multiply_basis(config: DivisorConfiguration, x: ThetaBasisElement,
                   y: ThetaBasisElement, field=QQ) -> ThetaElement:
    """Product of two basis symbols.

    The result is supported on the components of the summed-multiplicity
    stratum restricting to both factors' components; it is zero when the sum
    leaves the basis set.
    """
    total = tuple(a + b for a, b in zip(x.v, y.v))
    if not config.in_basis(total):
        return ThetaElement.zero(field)
    support = DivisorConfiguration.support(total)
    to_x = config.component_map(support, DivisorConfiguration.support(x.v))
    to_y = config.component_map(support, DivisorConfiguration.support(y.v))
    out = {}
    for comp in config.components(support):
        if to_x[comp] == x.component and to_y[comp] == y.component:
            out[ThetaBasisElement._unchecked(total, comp)] = field.one
    return ThetaElement(field, out)


def multiply(config: DivisorConfiguration, f: ThetaElement, g: ThetaElement) -> ThetaElement:
    """Bilinear extension of the basis product."""
    if f.field != g.field:
        raise InputError("field tags differ")
    field = f.field
    result = ThetaElement.zero(field)
    for ex, cx in f.coeffs.items():
        for ey, cy in g.coeffs.items():
            prod = multiply_basis(config, ex, ey, field)
            result = result + prod.scale(field.mul(cx, cy))
    return result


def unit_element(config: DivisorConfiguration, field=QQ) -> ThetaElement:
    zero_vec = (0,) * config.k
    comp = config.components(frozenset())[0]
    return ThetaElement.basis(ThetaBasisElement(config, zero_vec, comp), field)


def graded_dimension(config: DivisorConfiguration, weight_bound) -> dict:
    """Count of basis symbols per weight level up to the bound.

    Keys are every weight value realized by a nonnegative multiplicity vector
    within the bound, so levels with no basis symbols report zero.
    """
    bound = Fraction(weight_bound)
    if bound < 0:
        raise InputError("the weight bound must be nonnegative")
    counts = {}
    k = config.k

    def walk(idx, vec, weight):
        if idx == k:
            counts.setdefault(weight, 0)
            if config.in_basis(vec):
                counts[weight] += len(config.components(DivisorConfiguration.support(vec)))
            return
        m = 0
        while weight + config.kappa[idx] * m <= bound:
            walk(idx + 1, vec + (m,), weight + config.kappa[idx] * m)
            m += 1

    walk(0, (), Fraction(0))
    return counts


def theta_basis_up_to(config: DivisorConfiguration, weight_bound) -> list:
    """All basis symbols with weight at most the bound, in canonical order."""
    bound = Fraction(weight_bound)
    out = []
    k = config.k

    def walk(idx, vec, weight):
        if idx == k:
            if config.in_basis(vec):
                for comp in config.components(DivisorConfiguration.support(vec)):
                    out.append(ThetaBasisElement(config, vec, comp))
            return
        m = 0
        while weight + config.kappa[idx] * m <= bound:
            walk(idx + 1, vec + (m,), weight + config.kappa[idx] * m)
            m += 1

    walk(0, (), Fraction(0))
    out.sort(key=lambda e: e.key(config))
    return out


def sr_presentation(cx: SimplicialComplex, weights=None, field=QQ) -> WeightedPresentation:
    """Stanley-Reisner presentation: one variable per vertex, the squarefree
    monomials on minimal non-faces as relations.

    Weights default to 1 on every vertex and may be overridden (e.g. by ample
    weights).  The full simplex yields the zero ideal.
    """
    if cx.is_void:
        raise InputError("the void complex has no Stanley-Reisner presentation")
    verts = cx.vertices
    names = tuple(f"x{v}" for v in verts)
    if weights is None:
        weights = [Fraction(1)] * len(verts)
    weights = [Fraction(w) for w in weights]
    if len(weights) != len(verts):
        raise InputError("one weight per vertex is required")
    relations = []
    for nonface in _minimal_nonfaces(cx):
        exps = tuple(1 if v in nonface else 0 for v in verts)
        relations.append(Polynomial.monomial(names, exps, field.one, field))
    return WeightedPresentation(names, weights, relations, field)


def _minimal_nonfaces(cx: SimplicialComplex):
    from itertools import combinations
    verts = cx.vertices
    minimal = []
    for size in range(1, len(verts) + 1):
        for subset in combinations(verts, size):
            fs = frozenset(subset)
            if fs in cx.faces:
                continue
            if all(fs - {v} in cx.faces for v in fs):
                minimal.append(fs)
    return sorted(minimal, key=lambda f: (len(f), sorted(f)))


_THETA_TERM = re.compile(
    r"^\s*(?:(?P<coeff>[+-]?\d+)\s*\*\s*)?theta\[(?P<vec>[-\d,\s]*)(?:;(?P<comp>\d+))?\]\s*$")


def parse_theta_expression(text: str, config: DivisorConfiguration, field=QQ) -> ThetaElement:
    """Parse expressions like "theta[1,0,0;0] + 2*theta[0,1,0]".

    The component may be omitted when the indexed stratum is connected.
    Terms are joined by "+"; coefficients are integers.
    """
    result = ThetaElement.zero(field)
    text = text.strip()
    if not text:
        raise InputError("empty theta expression")
    if text == "0":
        return result
    for raw in text.split("+"):
        match = _THETA_TERM.match(raw)
        if not match:
            raise InputError(f"malformed theta term {raw.strip()!r}")
        coeff = int(match.group("coeff") or 1)
        vec_text = match.group("vec").strip()
        vec = tuple(int(x) for x in vec_text.split(",")) if vec_text else ()
        if len(vec) != config.k:
            raise InputError(f"theta vector {vec} has length {len(vec)}, expected {config.k}")
        comp_text = match.group("comp")
        if comp_text is None:
            comps = config.components(DivisorConfiguration.support(vec))
            if len(comps) != 1:
                raise InputError(
                    f"stratum {sorted(DivisorConfiguration.support(vec))} has "
                    f"{len(comps)} components; specify one as theta[...;c]")
            component = comps[0]
        else:
            component = int(comp_text)
        elem = ThetaBasisElement(config, vec, component)
        result = result + ThetaElement(field, {elem: field.from_int(coeff)})
    return result
