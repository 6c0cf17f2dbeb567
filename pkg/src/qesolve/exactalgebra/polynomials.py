"""Exact polynomial arithmetic over arbitrary-precision integers.

Two representations:

* ``UniPoly`` -- dense univariate polynomials, coefficients lowest degree
  first.  This is where secular polynomials, Sturm chains and square-free
  parts live.
* ``MultiPoly`` -- sparse multivariate polynomials, a map from exponent
  vectors to coefficients.  Tail conditions and kernel-coefficient
  polynomials live here.

Coefficients are Python ints in canonical objects (Python ints never
overflow).  ``fractions.Fraction`` coefficients are accepted transiently by
the same arithmetic; callers normalize with ``primitive_part`` /
``clear_denominators`` before anything is published.

The canonical text form is sign-explicit, descending powers, ``^`` for
exponents and ``*`` for products, e.g. ``s^10 - 27*s^7 + 27*s^4 - 729*s``.
``parse_unipoly``/``parse_multipoly`` round-trip it bit-exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd


class ExactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


# ---------------------------------------------------------------------------
# univariate


class UniPoly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``var^k``."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs):
        self.var = var
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors

    @classmethod
    def zero(cls, var="x"):
        return cls(var, ())

    @classmethod
    def const(cls, c, var="x"):
        return cls(var, (c,))

    @classmethod
    def x(cls, var="x"):
        return cls(var, (0, 1))

    @classmethod
    def from_roots(cls, roots, var="x"):
        p = cls.const(1, var)
        for r in roots:
            p = p * cls(var, (-r, 1))
        return p

    # -- basic queries

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.var == other.var
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- ring operations

    def _check(self, other):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other, self.var)
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.var, [self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.var, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return UniPoly.const(other, self.var) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly(self.var, [c * other for c in self.coeffs])
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = UniPoly.const(1, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def exact_div(self, other):
        """Quotient self/other, or raise ExactDivisionError."""
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other, self.var)
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return UniPoly.zero(self.var)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            raise ExactDivisionError("degree of divisor exceeds dividend")
        q = [0] * (dq + 1)
        lc = other.lc
        for k in range(dq, -1, -1):
            head = rem[k + other.degree]
            if head == 0:
                continue
            c = Fraction(head, lc) if head % lc else head // lc
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ExactDivisionError("non-divisible leading coefficient")
                c = c.numerator
            q[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
        if any(rem):
            raise ExactDivisionError("nonzero remainder in exact division")
        return UniPoly(self.var, q)

    def divmod_fraction(self, other):
        """Quotient and remainder over the rationals."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 1)
        lc = Fraction(other.lc)
        while len(rem) >= len(other.coeffs) and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < len(other.coeffs):
                break
            k = len(rem) - len(other.coeffs)
            c = rem[-1] / lc
            q[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
            rem.pop()
        return UniPoly(self.var, q), UniPoly(self.var, rem)

    # -- calculus/structure

    def derivative(self):
        return UniPoly(self.var, [k * c for k, c in enumerate(self.coeffs)][1:])

    def content(self):
        """Positive gcd of the integer coefficients (0 for the zero poly)."""
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
            if g == 1:
                return 1
        return g

    def primitive_part(self):
        """Content-free copy with positive leading coefficient."""
        if self.is_zero():
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return UniPoly(self.var, [c // g for c in self.coeffs])

    def clear_denominators(self):
        """Scale Fraction coefficients to a primitive integer polynomial."""
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        return UniPoly(self.var, ints).primitive_part()

    def eval(self, x):
        """Horner evaluation; works for int, Fraction, float, Surd, ..."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_neg(self):
        """p(-x)."""
        return UniPoly(self.var,
                       [(-c if k % 2 else c) for k, c in enumerate(self.coeffs)])

    def compose(self, inner):
        """p(inner(x)) for a UniPoly inner."""
        acc = UniPoly.zero(inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly.const(c, inner.var)
        return acc

    def shift_mul_x(self, k):
        """p * var^k."""
        if self.is_zero():
            return self
        return UniPoly(self.var, (0,) * k + self.coeffs)

    def rename(self, var):
        return UniPoly(var, self.coeffs)

    def monic_fraction(self):
        """Monic copy over the rationals."""
        lc = Fraction(self.lc)
        return UniPoly(self.var, [Fraction(c) / lc for c in self.coeffs])

    # -- text

    def __str__(self):
        return format_terms(
            [((k,), c) for k, c in enumerate(self.coeffs) if c != 0],
            (self.var,),
        )

    def __repr__(self):
        return f"UniPoly({self.var!r}, {self.coeffs!r})"

    def to_multi(self, variables):
        """Embed into a MultiPoly over ``variables`` (must contain self.var)."""
        idx = variables.index(self.var)
        terms = {}
        for k, c in enumerate(self.coeffs):
            if c:
                e = [0] * len(variables)
                e[idx] = k
                terms[tuple(e)] = c
        return MultiPoly(tuple(variables), terms)


# ---------------------------------------------------------------------------
# multivariate


def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MultiPoly:
    """Sparse multivariate polynomial: map exponent-vector -> coefficient.

    Invariants: no zero coefficients are stored and every exponent vector has
    one entry per variable.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if c == 0:
                    continue
                if len(e) != n:
                    raise ValueError("exponent vector length mismatch")
                clean[tuple(e)] = c
        self.terms = clean

    # -- constructors

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def const(cls, c, variables):
        if c == 0:
            return cls.zero(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name, variables):
        e = [0] * len(variables)
        e[tuple(variables).index(name)] = 1
        return cls(variables, {tuple(e): 1})

    # -- queries

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if name not in self.vars:
            return 0
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def with_variables(self, new_vars):
        """Re-embed over another variable tuple (dropped variables must not
        occur; new variables get exponent zero)."""
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        pos = []
        for i, v in enumerate(self.vars):
            if v in new_vars:
                pos.append((i, new_vars.index(v)))
            elif any(e[i] for e in self.terms):
                raise ValueError(f"variable {v!r} still occurs")
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, j in pos:
                ne[j] = e[i]
            out[tuple(ne)] = out.get(tuple(ne), 0) + c
        return MultiPoly(new_vars, out)

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), 0)

    # -- arithmetic

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.vars)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return MultiPoly.const(other, self.vars) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if other == 0:
                return MultiPoly.zero(self.vars)
            return MultiPoly(self.vars,
                             {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MultiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def exact_div(self, other):
        """Exact multivariate division (single-divisor); grevlex lead terms."""
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.vars)
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        lead_e = max(other.terms, key=_grevlex_key)
        lead_c = other.terms[lead_e]
        rem = dict(self.terms)
        q = {}
        while rem:
            e = max(rem, key=_grevlex_key)
            diff = tuple(a - b for a, b in zip(e, lead_e))
            if any(d < 0 for d in diff):
                raise ExactDivisionError("monomial not divisible")
            c = rem[e]
            if isinstance(c, int) and isinstance(lead_c, int):
                if c % lead_c:
                    raise ExactDivisionError("coefficient not divisible")
                qc = c // lead_c
            else:
                qc = c / lead_c  # field coefficients: always exact
            q[diff] = qc
            for e2, c2 in other.terms.items():
                tgt = tuple(a + b for a, b in zip(diff, e2))
                s = rem.get(tgt, 0) - qc * c2
                if s == 0:
                    rem.pop(tgt, None)
                else:
                    rem[tgt] = s
        return MultiPoly(self.vars, q)

    # -- structure

    def content(self):
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(c))
            if g == 1:
                return 1
        return g

    def primitive_part(self):
        if self.is_zero():
            return self
        g = self.content()
        lead = self.terms[max(self.terms, key=_grevlex_key)]
        if lead < 0:
            g = -g
        return MultiPoly(self.vars, {e: c // g for e, c in self.terms.items()})

    def clear_denominators(self):
        if self.is_zero():
            return self
        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        return MultiPoly(self.vars,
                         {e: int(c * den) for e, c in self.terms.items()}
                         ).primitive_part()

    def eval(self, values):
        """Evaluate with ``values`` a mapping var -> number (all vars bound)."""
        vals = [values[v] for v in self.vars]
        acc = 0
        for e, c in self.terms.items():
            term = c
            for base, k in zip(vals, e):
                if k:
                    term = term * base ** k
            acc = acc + term
        return acc

    def substitute(self, binding):
        """Substitute a subset of variables by exact numbers.

        Returns a MultiPoly over the remaining variables (coefficients may be
        Fractions or Surds when the bound values are).
        """
        keep = [i for i, v in enumerate(self.vars) if v not in binding]
        new_vars = tuple(self.vars[i] for i in keep)
        out = {}
        for e, c in self.terms.items():
            term = c
            for i, v in enumerate(self.vars):
                if v in binding and e[i]:
                    term = term * binding[v] ** e[i]
            ne = tuple(e[i] for i in keep)
            s = out.get(ne, 0) + term
            if s == 0:
                out.pop(ne, None)
            else:
                out[ne] = s
        return MultiPoly(new_vars, out)

    def as_unipoly_in(self, name):
        """View as a dense univariate polynomial in ``name`` whose
        coefficients are MultiPolys in the remaining variables."""
        i = self.vars.index(name)
        rest = tuple(v for v in self.vars if v != name)
        d = self.degree_in(name)
        coeffs = [dict() for _ in range(max(d + 1, 0))]
        for e, c in self.terms.items():
            ne = tuple(e[j] for j in range(len(self.vars)) if j != i)
            coeffs[e[i]][ne] = c
        return [MultiPoly(rest, t) for t in coeffs]

    @classmethod
    def from_unipoly_coeffs(cls, name, coeffs, position="prepend"):
        """Inverse of ``as_unipoly_in``: coefficients are MultiPolys without
        ``name``; rebuilds a MultiPoly including it (at original position the
        caller must re-order; here name is appended last)."""
        if not coeffs:
            raise ValueError("empty coefficient list")
        rest = coeffs[0].vars
        variables = rest + (name,)
        terms = {}
        for k, p in enumerate(coeffs):
            for e, c in p.terms.items():
                terms[e + (k,)] = c
        return cls(variables, terms)

    def to_unipoly(self, var=None):
        """Convert a (at most) univariate MultiPoly to UniPoly."""
        live = [v for i, v in enumerate(self.vars)
                if any(e[i] for e in self.terms)]
        if len(live) > 1:
            raise ValueError("polynomial is not univariate")
        name = var or (live[0] if live else (self.vars[0] if self.vars else "x"))
        if not live:
            return UniPoly(name, (self.constant_value(),))
        i = self.vars.index(live[0])
        out = [0] * (self.degree_in(live[0]) + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return UniPoly(name, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grevlex_key(t[0]),
                      reverse=True)

    def __str__(self):
        return format_terms(self.sorted_terms(), self.vars)

    def __repr__(self):
        return f"MultiPoly({self.vars!r}, {self.terms!r})"


# ---------------------------------------------------------------------------
# canonical text form


def format_terms(terms, variables):
    """Render (exponent-vector, coefficient) pairs in canonical text form."""
    items = sorted(terms, key=lambda t: _grevlex_key(t[0]), reverse=True)
    if not items:
        return "0"
    parts = []
    for e, c in items:
        factors = []
        for v, k in zip(variables, e):
            if k == 1:
                factors.append(v)
            elif k > 1:
                factors.append(f"{v}^{k}")
        mag = abs(c)
        if factors and mag == 1:
            body = "*".join(factors)
        elif factors:
            body = "*".join([str(mag)] + factors)
        else:
            body = str(mag)
        neg = c < 0
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<body>[A-Za-z0-9_^*\s]+?)\s*(?=[+-]|$)")
_FACTOR_RE = re.compile(
    r"^(?:(?P<coeff>\d+)|(?P<var>[A-Za-z_][A-Za-z0-9_]*)(?:\^(?P<exp>\d+))?)$")


def _parse_terms(text, variables):
    vmap = {v: i for i, v in enumerate(variables)}
    terms = {}
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or not m.group("body").strip():
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        if not first and m.group("sign") is None:
            raise ValueError("missing sign between terms")
        sign = -1 if m.group("sign") == "-" else 1
        coeff = 1
        exps = [0] * len(variables)
        for raw in m.group("body").split("*"):
            fm = _FACTOR_RE.match(raw.strip())
            if not fm:
                raise ValueError(f"bad factor {raw!r}")
            if fm.group("coeff") is not None:
                coeff *= int(fm.group("coeff"))
            else:
                name = fm.group("var")
                if name not in vmap:
                    raise ValueError(f"unknown variable {name!r}")
                exps[vmap[name]] += int(fm.group("exp") or 1)
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + sign * coeff
        pos = m.end()
        first = False
    return {e: c for e, c in terms.items() if c != 0}


def parse_unipoly(text, var):
    """Parse canonical text into a UniPoly over ``var``."""
    terms = _parse_terms(text, (var,))
    if not terms:
        return UniPoly.zero(var)
    out = [0] * (max(e[0] for e in terms) + 1)
    for e, c in terms.items():
        out[e[0]] = c
    return UniPoly(var, out)


def parse_multipoly(text, variables):
    """Parse canonical text into a MultiPoly over ``variables``."""
    return MultiPoly(tuple(variables), _parse_terms(text, tuple(variables)))
