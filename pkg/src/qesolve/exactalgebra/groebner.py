"""Buchberger's algorithm (graded reverse lexicographic order) and the
minimal polynomial of a variable in the quotient algebra.

This is the second, exactness-certifying elimination path: the monic
generator of I ∩ Q[pivot] is read off as the minimal polynomial of the
multiplication-by-pivot operator acting on 1 in Q[vars]/I (Krylov sequence
plus exact Gaussian elimination).  Coefficient arithmetic inside Buchberger
is fraction-free over the integers with content stripping.
"""

from __future__ import annotations

import time
from fractions import Fraction
from math import gcd

from .polynomials import MultiPoly, UniPoly


class GuardExceeded(RuntimeError):
    """A cost guard (size ceiling or time budget) was hit."""


class NotZeroDimensional(RuntimeError):
    """The ideal has a positive-dimensional component (or the basis does
    not certify finiteness)."""


def _key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lead(p):
    return max(p, key=_key)


def _content_signed(p, lead):
    g = 0
    for c in p.values():
        g = gcd(g, abs(c))
        if g == 1:
            break
    if p[lead] < 0:
        g = -g
    return g


def _primitive(p):
    if not p:
        return p
    lm = _lead(p)
    g = _content_signed(p, lm)
    if g == 1:
        return p
    return {e: c // g for e, c in p.items()}


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub_mul(p, cp, q, cq, shift):
    """cp*p - cq*x^shift*q, in place on a copy of p."""
    out = {e: c * cp for e, c in p.items()}
    for e, c in q.items():
        tgt = tuple(x + s for x, s in zip(e, shift))
        s = out.get(tgt, 0) - cq * c
        if s == 0:
            out.pop(tgt, None)
        else:
            out[tgt] = s
    return out


def _reduce(p, basis, deadline=None):
    """Full fraction-free reduction of p modulo basis; primitive result."""
    p = dict(p)
    leads = [(g[0], g[1], g[2]) for g in basis]
    done = []
    while p:
        if deadline is not None and time.monotonic() > deadline:
            raise GuardExceeded("time budget exceeded during reduction")
        m = _lead(p)
        c = p[m]
        hit = None
        for le, lc, q in leads:
            if _divides(le, m):
                hit = (le, lc, q)
                break
        if hit is None:
            done.append((m, c))
            del p[m]
            continue
        le, lc, q = hit
        g = gcd(c, lc)
        cp, cq = lc // g, c // g
        shift = tuple(x - y for x, y in zip(m, le))
        if cp != 1:
            p = {e: cc * cp for e, cc in p.items()}
            done = [(e, cc * cp) for e, cc in done]
            c = c * cp
        for e, cc in q.items():
            tgt = tuple(x + s for x, s in zip(e, shift))
            s = p.get(tgt, 0) - cq * cc
            if s == 0:
                p.pop(tgt, None)
            else:
                p[tgt] = s
        # m cancels by construction
        p.pop(m, None)
    return _primitive(dict(done))


def _spoly(f, g):
    lf, lg = _lead(f), _lead(g)
    cf, cg = f[lf], g[lg]
    lcmm = tuple(max(a, b) for a, b in zip(lf, lg))
    d = gcd(cf, cg)
    sf = tuple(a - b for a, b in zip(lcmm, lf))
    sg = tuple(a - b for a, b in zip(lcmm, lg))
    return _sub_mul(
        {tuple(x + s for x, s in zip(e, sf)): c for e, c in f.items()},
        cg // d,
        g, cf // d, sg)


def buchberger(gens: list[dict], deadline=None, max_basis=600) -> list[dict]:
    """Reduced Groebner basis (grevlex) of integer-coefficient term dicts."""
    basis = []
    for p in gens:
        p = _primitive({e: c for e, c in p.items() if c})
        if p:
            basis.append(p)
    basis.sort(key=lambda p: _key(_lead(p)))
    work = [(_lead(p), p[_lead(p)], p) for p in basis]
    pairs = {(i, j) for i in range(len(work)) for j in range(i + 1, len(work))}

    def lcm_of(i, j):
        return tuple(max(a, b) for a, b in zip(work[i][0], work[j][0]))

    while pairs:
        if deadline is not None and time.monotonic() > deadline:
            raise GuardExceeded("time budget exceeded in Buchberger loop")
        i, j = min(pairs, key=lambda ij: (_key(lcm_of(*ij)), ij))
        pairs.discard((i, j))
        li, lj = work[i][0], work[j][0]
        L = tuple(max(a, b) for a, b in zip(li, lj))
        # product criterion
        if all(a + b == c for a, b, c in zip(li, lj, L)):
            continue
        # chain criterion
        skip = False
        for k in range(len(work)):
            if k in (i, j):
                continue
            if _divides(work[k][0], L):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s = _spoly(work[i][2], work[j][2])
        r = _reduce(s, work, deadline)
        if not r:
            continue
        if len(work) >= max_basis:
            raise GuardExceeded(f"basis size exceeded {max_basis}")
        idx = len(work)
        work.append((_lead(r), r[_lead(r)], r))
        for k in range(idx):
            pairs.add((k, idx))

    # inter-reduce: drop redundant leads, then reduce each element by the rest
    polys = sorted((g[2] for g in work), key=lambda p: _key(_lead(p)))
    keep = []
    for i, p in enumerate(polys):
        lm = _lead(p)
        redundant = any(
            j != i and _divides(_lead(q), lm)
            and (_key(_lead(q)) < _key(lm) or (_lead(q) == lm and j < i))
            for j, q in enumerate(polys))
        if not redundant:
            keep.append(p)
    final = []
    for i, p in enumerate(keep):
        rest = [(_lead(q), q[_lead(q)], q) for j, q in enumerate(keep) if j != i]
        q = _reduce(p, rest, deadline) if rest else _primitive(p)
        final.append(q if q else p)
    final.sort(key=lambda p: _key(_lead(p)))
    return final


def quotient_basis(gb: list[dict], nvars: int, cap: int = 4000):
    """Monomial basis of the quotient algebra, or raise NotZeroDimensional."""
    leads = [_lead(p) for p in gb]
    caps = []
    for i in range(nvars):
        pure = [e[i] for e in leads if all(x == 0 for j, x in enumerate(e) if j != i)]
        if not pure:
            raise NotZeroDimensional(f"no pure power of variable {i} in lead ideal")
        caps.append(min(pure))
    mons = []

    def rec(prefix):
        if len(prefix) == nvars:
            e = tuple(prefix)
            if not any(_divides(le, e) for le in leads):
                mons.append(e)
                if len(mons) > cap:
                    raise GuardExceeded(f"quotient dimension exceeds {cap}")
            return
        for k in range(caps[len(prefix)]):
            rec(prefix + [k])

    rec([])
    mons.sort(key=_key)
    return mons


def _nf_fraction(p, gb_monic, deadline=None):
    """Normal form of a Fraction term-dict modulo a monic GB."""
    p = {e: Fraction(c) for e, c in p.items() if c}
    out = {}
    while p:
        if deadline is not None and time.monotonic() > deadline:
            raise GuardExceeded("time budget exceeded during normal form")
        m = _lead(p)
        c = p.pop(m)
        hit = None
        for le, q in gb_monic:
            if _divides(le, m):
                hit = (le, q)
                break
        if hit is None:
            out[m] = out.get(m, 0) + c
            continue
        le, q = hit
        shift = tuple(x - y for x, y in zip(m, le))
        for e, cc in q.items():
            if e == le:
                continue
            tgt = tuple(x + s for x, s in zip(e, shift))
            s = p.get(tgt, 0) - c * cc
            if s == 0:
                p.pop(tgt, None)
            else:
                p[tgt] = s
    return {e: c for e, c in out.items() if c}


class QuotientAlgebra:
    """Q[vars]/I for a zero-dimensional ideal: a reduced Groebner basis
    computed once, reusable for minimal polynomials of several variables."""

    def __init__(self, polys: list[MultiPoly], deadline=None,
                 dim_cap: int = 4000):
        if not polys:
            raise ValueError("empty generating set")
        self.variables = polys[0].vars
        gens = [dict(p.terms) for p in polys if not p.is_zero()]
        if not gens:
            raise ValueError("all generators are zero")
        self.gb = buchberger(gens, deadline=deadline)
        self.trivial = any(_lead(p) == (0,) * len(self.variables)
                           for p in self.gb)
        if self.trivial:
            self.dimension = 0
            self.gb_monic = []
            return
        mons = quotient_basis(self.gb, len(self.variables), cap=dim_cap)
        self.dimension = len(mons)
        gbm = []
        for p in self.gb:
            lm = _lead(p)
            lc = Fraction(p[lm])
            gbm.append((lm, {e: Fraction(c) / lc for e, c in p.items()}))
        self.gb_monic = gbm

    def minimal_polynomial(self, var: str, deadline=None) -> UniPoly:
        """Primitive integer generator of I ∩ Q[var] (constant 1 when the
        ideal is the whole ring)."""
        if self.trivial:
            return UniPoly.const(1, var)
        return _krylov_minpoly(self.gb_monic, self.variables, var,
                               self.dimension, deadline)


def _krylov_minpoly(gbm, variables, var, dim, deadline=None):
    vi = variables.index(var)
    one = (0,) * len(variables)
    xvar = tuple(1 if i == vi else 0 for i in range(len(variables)))
    rows = []  # (pivot monomial, vector dict, combo dict power->Fraction)
    v = _nf_fraction({one: Fraction(1)}, gbm, deadline)
    k = 0
    while True:
        if deadline is not None and time.monotonic() > deadline:
            raise GuardExceeded("time budget exceeded in Krylov loop")
        vec = dict(v)
        combo = {k: Fraction(1)}
        for piv, rvec, rcombo in rows:
            c = vec.get(piv)
            if not c:
                continue
            for e, cc in rvec.items():
                s = vec.get(e, Fraction(0)) - c * cc
                if s == 0:
                    vec.pop(e, None)
                else:
                    vec[e] = s
            for dgr, cc in rcombo.items():
                s = combo.get(dgr, Fraction(0)) - c * cc
                if s == 0:
                    combo.pop(dgr, None)
                else:
                    combo[dgr] = s
        if not vec:
            coeffs = [Fraction(0)] * (k + 1)
            for dgr, c in combo.items():
                coeffs[dgr] = c
            return UniPoly(var, coeffs).clear_denominators()
        piv = _lead(vec)
        c = vec[piv]
        vec = {e: cc / c for e, cc in vec.items()}
        combo = {d: cc / c for d, cc in combo.items()}
        rows.append((piv, vec, combo))
        if k + 1 > dim + 1:
            raise NotZeroDimensional(
                "Krylov sequence exceeded quotient dimension")
        v = _nf_fraction(
            {tuple(e[i] + xvar[i] for i in range(len(variables))): c
             for e, c in v.items()}, gbm, deadline)
        k += 1


def minimal_polynomial_of_var(polys: list[MultiPoly], var: str,
                              deadline=None, dim_cap: int = 4000):
    """Exact generator of I ∩ Q[var]; returns (poly, quotient dimension)."""
    alg = QuotientAlgebra(polys, deadline=deadline, dim_cap=dim_cap)
    return alg.minimal_polynomial(var, deadline=deadline), alg.dimension
