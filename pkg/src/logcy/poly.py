"""Sparse multivariate polynomials over exact coefficient rings.

A polynomial is a dict from exponent tuples to nonzero coefficients, tied to
a fixed tuple of variable names and a coefficient ring from fields.py.
Monomial comparisons go through WeightedOrder: positive rational weights
ordered by weighted degree with a graded-lexicographic tiebreak, so every
order used here is a total order refining the weight filtration.
"""

from fractions import Fraction

from .errors import InputError
from .fields import QQ, LaurentParameterRing
from .rationals import format_rational


class WeightedOrder:
    """Monomial order: weighted degree first, then total degree, then lex."""

    __slots__ = ("weights",)

    def __init__(self, weights):
        self.weights = tuple(Fraction(w) for w in weights)
        if any(w <= 0 for w in self.weights):
            raise InputError("monomial order weights must be positive")

    def weighted_degree(self, exps) -> Fraction:
        return sum((w * e for w, e in zip(self.weights, exps)), Fraction(0))

    def key(self, exps):
        return (self.weighted_degree(exps), sum(exps), exps)

    def __eq__(self, other):
        return isinstance(other, WeightedOrder) and other.weights == self.weights

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        return f"WeightedOrder({[format_rational(w) for w in self.weights]})"


def unit_order(nvars: int) -> WeightedOrder:
    return WeightedOrder((Fraction(1),) * nvars)


class Polynomial:
    """Immutable sparse polynomial over a fixed variable tuple."""

    __slots__ = ("vars", "field", "terms")

    def __init__(self, variables, field, terms=None):
        self.vars = tuple(variables)
        self.field = field
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != len(self.vars):
                    raise InputError("exponent tuple length does not match variable count")
                if any(e < 0 for e in exps):
                    raise InputError("polynomial exponents must be nonnegative")
                if not field.is_zero(coeff):
                    clean[exps] = field.add(clean.get(exps, field.zero), coeff)
        self.terms = {e: c for e, c in clean.items() if not field.is_zero(c)}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, variables, field=QQ):
        return cls(variables, field, {})

    @classmethod
    def constant(cls, variables, value, field=QQ):
        coeff = field.from_fraction(value) if isinstance(value, (int, Fraction)) else value
        return cls(variables, field, {(0,) * len(tuple(variables)): coeff})

    @classmethod
    def variable(cls, variables, name, field=QQ):
        variables = tuple(variables)
        if name not in variables:
            raise InputError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, field, {exps: field.one})

    @classmethod
    def monomial(cls, variables, exps, coeff, field=QQ):
        return cls(variables, field, {tuple(exps): coeff})

    # -- ring operations --------------------------------------------------------

    def _check_same_ring(self, other):
        if self.vars != other.vars or self.field != other.field:
            raise InputError("polynomials live in different rings")

    def __add__(self, other):
        self._check_same_ring(other)
        field = self.field
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = field.add(out.get(exps, field.zero), c)
            if field.is_zero(s):
                out.pop(exps, None)
            else:
                out[exps] = s
        return Polynomial(self.vars, field, out)

    def __neg__(self):
        field = self.field
        return Polynomial(self.vars, field, {e: field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_same_ring(other)
        field = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                s = field.add(out.get(exps, field.zero), field.mul(c1, c2))
                if field.is_zero(s):
                    out.pop(exps, None)
                else:
                    out[exps] = s
        return Polynomial(self.vars, field, out)

    def __pow__(self, n):
        if n < 0:
            raise InputError("negative polynomial powers are not defined")
        out = Polynomial.constant(self.vars, 1, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale(self, coeff):
        field = self.field
        if field.is_zero(coeff):
            return Polynomial.zero(self.vars, field)
        return Polynomial(self.vars, field,
                          {e: field.mul(c, coeff) for e, c in self.terms.items()})

    def mul_term(self, exps, coeff):
        """Multiply by a single term coeff * x^exps."""
        field = self.field
        if field.is_zero(coeff):
            return Polynomial.zero(self.vars, field)
        exps = tuple(exps)
        return Polynomial(self.vars, field,
                          {tuple(a + b for a, b in zip(e, exps)): field.mul(c, coeff)
                           for e, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and other.vars == self.vars
                and other.field == self.field and other.terms == self.terms)

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.keys()))))

    def __bool__(self):
        return bool(self.terms)

    # -- structure --------------------------------------------------------------

    def leading(self, order: WeightedOrder):
        """(exponent tuple, coefficient) of the order-largest term."""
        if not self.terms:
            raise InputError("the zero polynomial has no leading term")
        exps = max(self.terms, key=order.key)
        return exps, self.terms[exps]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def weighted_degree(self, order: WeightedOrder) -> Fraction:
        if not self.terms:
            raise InputError("the zero polynomial has no weighted degree")
        return max(order.weighted_degree(e) for e in self.terms)

    def top_weight_form(self, order: WeightedOrder) -> "Polynomial":
        """Sum of the terms of maximal weighted degree."""
        top = self.weighted_degree(order)
        return Polynomial(self.vars, self.field,
                          {e: c for e, c in self.terms.items()
                           if order.weighted_degree(e) == top})

    def derivative(self, name) -> "Polynomial":
        if name not in self.vars:
            raise InputError(f"unknown variable {name!r}")
        idx = self.vars.index(name)
        field = self.field
        out = {}
        for exps, c in self.terms.items():
            e = exps[idx]
            if e == 0:
                continue
            new = list(exps)
            new[idx] = e - 1
            coeff = field.mul(c, field.from_int(e))
            if not field.is_zero(coeff):
                out[tuple(new)] = coeff
        return Polynomial(self.vars, field, out)

    def substitute(self, mapping: dict) -> "Polynomial":
        """Compose with variable -> Polynomial assignments.

        Unmapped variables are carried through unchanged.  All image
        polynomials must live in a common ring, which also hosts the result.
        """
        images = dict(mapping)
        target = None
        for img in images.values():
            if target is None:
                target = (img.vars, img.field)
            elif (img.vars, img.field) != target:
                raise InputError("substitution images live in different rings")
        if target is None:
            target = (self.vars, self.field)
        tvars, tfield = target
        if tfield != self.field:
            raise InputError("substitution cannot change the coefficient ring")
        for name in self.vars:
            if name not in images:
                images[name] = Polynomial.variable(tvars, name, tfield)
        result = Polynomial.zero(tvars, tfield)
        # cache powers per variable to keep repeated exponents cheap
        powers = {name: {0: Polynomial.constant(tvars, 1, tfield)} for name in self.vars}
        for exps, coeff in sorted(self.terms.items()):
            term = Polynomial.constant(tvars, 1, tfield).scale(coeff)
            for name, e in zip(self.vars, exps):
                cache = powers[name]
                while e not in cache:
                    m = max(cache)
                    cache[m + 1] = cache[m] * images[name]
                term = term * cache[e]
            result = result + term
        return result

    def change_variables(self, new_vars) -> "Polynomial":
        """Reinterpret over a different variable tuple, matching by name.

        Variables dropped from the tuple must not occur in any term.
        """
        new_vars = tuple(new_vars)
        positions = []
        for name in self.vars:
            positions.append(new_vars.index(name) if name in new_vars else None)
        out = {}
        for exps, c in self.terms.items():
            new = [0] * len(new_vars)
            for pos, e in zip(positions, exps):
                if pos is None:
                    if e != 0:
                        raise InputError("cannot drop a variable that still occurs")
                else:
                    new[pos] = e
            out[tuple(new)] = c
        return Polynomial(new_vars, self.field, out)

    # -- printing ----------------------------------------------------------------

    def to_string(self, order: WeightedOrder | None = None) -> str:
        if not self.terms:
            return "0"
        order = order or unit_order(len(self.vars))
        pieces = []
        for exps in sorted(self.terms, key=order.key, reverse=True):
            coeff = self.terms[exps]
            factors = []
            for name, e in zip(self.vars, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cstr = self.field.fmt(coeff)
            if factors and cstr == "1":
                pieces.append("*".join(factors))
            elif factors and cstr == "-1":
                pieces.append("-" + "*".join(factors))
            elif factors:
                pieces.append(cstr + "*" + "*".join(factors))
            else:
                pieces.append(cstr)
        text = " + ".join(pieces)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


# -- parsing ---------------------------------------------------------------------


class _Parser:
    """Recursive descent for:  expr := term (+|- term)*, term := factor (* factor)*,
    factor := atom (^ INT)*, atom := rational | name | ( expr ) | - factor."""

    def __init__(self, text, variables, field):
        self.text = text
        self.vars = tuple(variables)
        self.field = field
        self.tokens = self._lex(text)
        self.pos = 0

    @staticmethod
    def _lex(text):
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(("num", int(text[i:j])))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                tokens.append(("name", text[i:j]))
                i = j
            elif ch in "+-*^()/":
                tokens.append((ch, ch))
                i += 1
            else:
                raise InputError(f"unexpected character {ch!r} in polynomial at position {i}")
        tokens.append(("end", None))
        return tokens

    def _peek(self):
        return self.tokens[self.pos][0]

    def _next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        poly = self._expr()
        if self._peek() != "end":
            raise InputError(f"trailing input in polynomial: {self.tokens[self.pos]}")
        return poly

    def _expr(self):
        if self._peek() == "-":
            self._next()
            poly = -self._term()
        else:
            poly = self._term()
        while self._peek() in ("+", "-"):
            op, _ = self._next()
            rhs = self._term()
            poly = poly + rhs if op == "+" else poly - rhs
        return poly

    def _term(self):
        poly = self._factor()
        while self._peek() == "*":
            self._next()
            poly = poly * self._factor()
        return poly

    def _factor(self):
        if self._peek() == "-":
            self._next()
            return -self._factor()
        base = self._atom()
        while self._peek() == "^":
            self._next()
            kind, value = self._next()
            if kind != "num":
                raise InputError("exponent must be a nonnegative integer")
            base = base ** value
        return base

    def _atom(self):
        kind, value = self._next()
        if kind == "num":
            numer = value
            if self._peek() == "/":
                self._next()
                kind2, denom = self._next()
                if kind2 != "num" or denom == 0:
                    raise InputError("malformed rational literal")
                return Polynomial.constant(self.vars, Fraction(numer, denom), self.field)
            return Polynomial.constant(self.vars, Fraction(numer), self.field)
        if kind == "name":
            if value in self.vars:
                return Polynomial.variable(self.vars, value, self.field)
            if isinstance(self.field, LaurentParameterRing) and value in self.field.params:
                return Polynomial(self.vars, self.field,
                                  {(0,) * len(self.vars): self.field.parameter(value)})
            raise InputError(f"unknown variable {value!r}")
        if kind == "(":
            poly = self._expr()
            kind2, _ = self._next()
            if kind2 != ")":
                raise InputError("unbalanced parentheses")
            return poly
        raise InputError(f"unexpected token {value!r} in polynomial")


def parse_polynomial(text: str, variables, field=QQ) -> Polynomial:
    """Parse the documented grammar: rationals, names, + - * ^ and parentheses."""
    return _Parser(text, variables, field).parse()
