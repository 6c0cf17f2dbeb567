"""Fraction-free Euclidean tools: subresultant PRS, resultants, gcds,
square-free parts, and Bareiss determinants.

The subresultant polynomial remainder sequence is the elimination primitive:
all divisions it performs are exact over the coefficient ring (integers, or
multivariate integer polynomials when eliminating one variable from a
MultiPoly pair).
"""

from __future__ import annotations

from fractions import Fraction

from .polynomials import ExactDivisionError, MultiPoly, UniPoly


# ---------------------------------------------------------------------------
# generic coefficient-ring helpers (int | Fraction | Surd | MultiPoly)


def _is_zero(c):
    if isinstance(c, MultiPoly):
        return c.is_zero()
    return c == 0


def _exact_div(a, b):
    if isinstance(a, MultiPoly) or isinstance(b, MultiPoly):
        if not isinstance(a, MultiPoly):
            a = MultiPoly.const(a, b.vars)
        return a.exact_div(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ExactDivisionError(f"{a} not divisible by {b}")
        return q
    return a / b


def _strip(c):
    while c and _is_zero(c[-1]):
        c.pop()
    return c


def prem(f, g):
    """Pseudo-remainder lc(g)^(deg f - deg g + 1) * f mod g.

    ``f`` and ``g`` are coefficient lists, lowest degree first, over any
    commutative ring.  deg f >= deg g >= 0 required.
    """
    dg = len(g) - 1
    lg = g[-1]
    e = len(f) - len(g) + 1
    r = list(f)
    while len(r) - 1 >= dg and r:
        lead = r[-1]
        d = len(r) - 1 - dg
        r = [lg * c for c in r[:-1]]
        for j in range(dg):
            r[d + j] = r[d + j] - lead * g[j]
        e -= 1
        _strip(r)
        if not r:
            break
    if e > 0 and r:
        mult = lg ** e
        r = [mult * c for c in r]
    return r


def subresultant_prs(f, g):
    """Subresultant PRS of two coefficient lists (lowest degree first).

    Returns the full sequence; every division performed is exact over the
    coefficient ring.  Requires deg f >= deg g >= 1.
    """
    seq = [list(f), list(g)]
    a, b = list(f), list(g)
    gg = 1
    h = 1
    while len(b) > 1:
        delta = len(a) - len(b)
        r = prem(a, b)
        if not r:
            return seq
        divisor = gg * (h ** delta) if delta else gg
        if isinstance(divisor, int) and divisor in (1, -1):
            r = [c * divisor for c in r] if divisor == -1 else r
        else:
            r = [_exact_div(c, divisor) for c in r]
        seq.append(r)
        a, b = b, r
        gg = a[-1]
        if delta >= 1:
            h = _exact_div(gg ** delta, h ** (delta - 1))
    return seq


def resultant_lists(f, g):
    """Resultant of two coefficient lists over an integral domain.

    Subresultant PRS with sign tracking; exact including sign (checked
    against the Sylvester determinant in the test suite).
    """
    if not f or not g:
        return 0
    df, dg = len(f) - 1, len(g) - 1
    if df == 0 and dg == 0:
        return 1
    if df == 0:
        return f[0] ** dg
    if dg == 0:
        return g[0] ** df
    a, b = list(f), list(g)
    s = 1
    if df < dg:
        a, b = b, a
        if (df * dg) % 2:
            s = -s
    gg = 1
    h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = prem(a, b)
        if not r:
            return b[0] * 0  # nonconstant common factor: resultant is zero
        divisor = gg * (h ** delta) if delta else gg
        if isinstance(divisor, int) and divisor == 1:
            pass
        else:
            r = [_exact_div(c, divisor) for c in r]
        a, b = b, r
        gg = a[-1]
        if delta >= 1:
            h = _exact_div(gg ** delta, h ** (delta - 1))
        if len(b) == 1:
            da = len(a) - 1
            res = _exact_div(b[0] ** da, h ** (da - 1)) if da >= 1 else b[0]
            return res * s if s < 0 else res


def sylvester_matrix(f, g):
    """Sylvester matrix of two coefficient lists (lowest degree first)."""
    df, dg = len(f) - 1, len(g) - 1
    n = df + dg
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(dg):
        rows.append([0] * i + fr + [0] * (n - df - 1 - i))
    for i in range(df):
        rows.append([0] * i + gr + [0] * (n - dg - 1 - i))
    return rows


def sylvester_resultant_lists(f, g):
    """Resultant via Bareiss on the Sylvester matrix (independent oracle)."""
    if not f or not g:
        return 0
    if len(f) == 1 and len(g) == 1:
        return 1
    if len(f) == 1:
        return f[0] ** (len(g) - 1)
    if len(g) == 1:
        return g[0] ** (len(f) - 1)
    return det_exact(sylvester_matrix(f, g))


# ---------------------------------------------------------------------------
# UniPoly layer


def gcd_unipoly(f: UniPoly, g: UniPoly) -> UniPoly:
    """Primitive gcd over the integers, leading coefficient positive."""
    if f.is_zero():
        return g.primitive_part()
    if g.is_zero():
        return f.primitive_part()
    a = f.primitive_part()
    b = g.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        if b.degree == 0:
            return UniPoly.const(1, f.var)
        r = prem(list(a.coeffs), list(b.coeffs))
        a = b
        b = UniPoly(f.var, r).primitive_part()
    return a.primitive_part()


def squarefree_part(f: UniPoly) -> UniPoly:
    """Same roots as ``f`` with multiplicity one; primitive, lc > 0."""
    if f.is_zero():
        raise ValueError("square-free part of the zero polynomial")
    fp = f.primitive_part()
    if fp.degree <= 1:
        return fp
    g = gcd_unipoly(fp, fp.derivative())
    if g.degree == 0:
        return fp
    return fp.exact_div(g).primitive_part()


def squarefree_decomposition(f: UniPoly):
    """Yun's algorithm: list of (factor, multiplicity) with factors primitive.

    The product of factor^multiplicity times the content reproduces ``f``.
    """
    if f.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    fp = f.primitive_part()
    out = []
    if fp.degree == 0:
        return out
    g = gcd_unipoly(fp, fp.derivative())
    if g.degree == 0:
        return [(fp, 1)]
    w = fp.exact_div(g)
    y = fp.derivative().exact_div(g)
    z = y - w.derivative()
    m = 1
    while not z.is_zero():
        h = gcd_unipoly(w, z)
        if h.degree > 0:
            out.append((h.primitive_part(), m))
        w = w.exact_div(h)
        y = z.exact_div(h)
        z = y - w.derivative()
        m += 1
    if w.degree > 0:
        out.append((w.primitive_part(), m))
    return out


def resultant_unipoly(f: UniPoly, g: UniPoly):
    """Integer resultant of two univariate integer polynomials."""
    return resultant_lists(list(f.coeffs), list(g.coeffs))


# ---------------------------------------------------------------------------
# MultiPoly layer


class DegenerateElimination(ValueError):
    """A resultant input was constant in (or free of) the eliminated
    variable, or the resultant vanished identically."""


def resultant_multipoly(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Subresultant-PRS resultant eliminating ``var`` from f and g.

    The result is a MultiPoly in the remaining variables; it vanishes at
    every common root of f and g.
    """
    if f.is_zero() or g.is_zero():
        raise DegenerateElimination("resultant of a zero polynomial")
    if f.degree_in(var) <= 0 or g.degree_in(var) <= 0:
        raise DegenerateElimination(
            f"input constant in eliminated variable {var!r}")
    fc = f.as_unipoly_in(var)
    gc = g.as_unipoly_in(var)
    res = resultant_lists(fc, gc)
    if isinstance(res, int):
        rest = tuple(v for v in f.vars if v != var)
        return MultiPoly.const(res, rest)
    return res


def _mp_normalize(p: MultiPoly) -> MultiPoly:
    coeffs = list(p.terms.values())
    if not coeffs:
        return p
    if all(isinstance(c, int) for c in coeffs):
        return p.primitive_part()
    if all(isinstance(c, (int, Fraction)) for c in coeffs):
        return p.clear_denominators()
    lead = max(p.terms, key=lambda e: (sum(e), tuple(-x for x in reversed(e))))
    lc = p.terms[lead]
    return MultiPoly(p.vars, {e: c / lc for e, c in p.terms.items()})


def multipoly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Multivariate gcd (primitive-PRS with recursive contents), normalized.

    Over integer coefficients this is the honest gcd including integer
    content; over field coefficients (Fraction/Surd) it is monic-normalized
    and determined up to units, with exact divisibility guaranteed.
    """
    if a.vars != b.vars:
        raise ValueError("variable universe mismatch")
    if a.is_zero():
        return _mp_normalize(b)
    if b.is_zero():
        return _mp_normalize(a)
    live = [v for v in a.vars if a.degree_in(v) > 0 or b.degree_in(v) > 0]
    if not live:
        ca, cb = a.constant_value(), b.constant_value()
        if isinstance(ca, int) and isinstance(cb, int):
            from math import gcd as _gcd
            return MultiPoly.const(_gcd(ca, cb), a.vars)
        return MultiPoly.const(1, a.vars)

    v = live[0]

    def content(coeffs):
        c = None
        for q in coeffs:
            if q.is_zero():
                continue
            c = q if c is None else multipoly_gcd(c, q)
        return c

    fa, fb = a.as_unipoly_in(v), b.as_unipoly_in(v)
    ca, cb = content(fa), content(fb)
    pa = [q.exact_div(ca) for q in fa]
    pb = [q.exact_div(cb) for q in fb]
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while True:
        r = prem(pa, pb)
        while r and _is_zero(r[-1]):
            r.pop()
        if not r:
            break
        pa, pb = pb, _mp_coeff_strip(r)
    if len(pb) == 1:
        g_v = [MultiPoly.const(1, ca.vars)]
    else:
        gc = content(pb)
        g_v = [q.exact_div(gc) for q in pb]
    g = MultiPoly.from_unipoly_coeffs(v, g_v)
    cg = multipoly_gcd(ca, cb)
    total = g * cg.with_variables(g.vars)
    return _mp_normalize(total.with_variables(a.vars))


def _mp_coeff_strip(coeffs):
    """Integer-content strip of a unipoly-in-v coefficient list."""
    ints = all(isinstance(c, int) or (isinstance(c, MultiPoly) and
               all(isinstance(x, int) for x in c.terms.values()))
               for c in coeffs)
    if not ints:
        return coeffs
    from math import gcd as _gcd
    g = 0
    for c in coeffs:
        for x in c.terms.values():
            g = _gcd(g, abs(x))
        if g == 1:
            return coeffs
    if g <= 1:
        return coeffs
    return [c.exact_div(g) for c in coeffs]


# ---------------------------------------------------------------------------
# exact determinants


def bareiss_det_int(rows):
    """Fraction-free Bareiss determinant of a square integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_exact(rows):
    """Exact determinant; Bareiss over ints, otherwise fraction-free with
    exact ring division (works for Fraction, Surd and MultiPoly entries)."""
    n = len(rows)
    if n == 0:
        return 1
    if all(isinstance(c, int) for r in rows for c in r):
        return bareiss_det_int(rows)
    a = [list(r) for r in rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                z = a[0][0] * 0
                return z
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else _exact_div(num, prev)
            a[i][k] = a[i][k] * 0
        prev = a[k][k]
    out = a[n - 1][n - 1]
    return out if sign > 0 else out * -1
