"""Exact real-root location: Sturm chains, isolating intervals,
rational-root enumeration and the AlgebraicReal representation.

An AlgebraicReal is a square-free integer polynomial together with a
rational isolating interval whose endpoints are not roots; that pins down
one real algebraic number exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import intfactor
from .euclidean import gcd_unipoly, squarefree_part
from .polynomials import UniPoly


def _sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def cauchy_root_bound(f: UniPoly) -> Fraction:
    """All real roots of f lie strictly inside (-B, B)."""
    if f.is_zero():
        raise ValueError("root bound of zero polynomial")
    lc = abs(f.lc)
    m = max(abs(c) for c in f.coeffs[:-1]) if f.degree > 0 else 0
    return 1 + Fraction(m, lc)


def _signed_primitive(f: UniPoly) -> UniPoly:
    """Divide by the positive content only (keeps the sign of every value)."""
    if f.is_zero():
        return f
    den = 1
    for c in f.coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return UniPoly(f.var, [c // g for c in ints])


def sturm_chain(f: UniPoly) -> list[UniPoly]:
    """Sturm chain of a square-free polynomial (signs preserved exactly)."""
    chain = [_signed_primitive(f), _signed_primitive(f.derivative())]
    while chain[-1].degree > 0:
        _, rem = chain[-2].divmod_fraction(chain[-1])
        if rem.is_zero():
            raise ValueError("input was not square-free")
        chain.append(_signed_primitive(-rem))
    return chain


def _variations(signs) -> int:
    out = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            out += 1
        prev = s
    return out


def _var_at(chain, x: Fraction) -> int:
    return _variations([_sign(p.eval(x)) for p in chain])


def _var_at_inf(chain, positive: bool) -> int:
    signs = []
    for p in chain:
        if p.is_zero():
            signs.append(0)
        elif positive:
            signs.append(_sign(p.lc))
        else:
            signs.append(_sign(p.lc) * (-1 if p.degree % 2 else 1))
    return _variations(signs)


def count_real_roots(f: UniPoly) -> int:
    """Number of distinct real roots of a square-free polynomial."""
    if f.degree <= 0:
        return 0
    chain = sturm_chain(f)
    return _var_at_inf(chain, False) - _var_at_inf(chain, True)


def isolate_real_roots(f: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, one distinct real root each.

    ``f`` must be square-free.  Interval endpoints are never roots.
    """
    if f.degree <= 0:
        return []
    chain = sturm_chain(f)
    bound = cauchy_root_bound(f)
    lo, hi = -bound, bound
    # the bound is strict, so the endpoints are not roots
    total = _var_at(chain, lo) - _var_at(chain, hi)
    out: list[tuple[Fraction, Fraction]] = []

    def split(lo, hi, vlo, vhi):
        n = vlo - vhi
        if n == 0:
            return
        if n == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        if f.eval(mid) == 0:
            # midpoint hit a root; f has at most deg(f) roots, so one of
            # deg(f)+1 equispaced interior points is root-free
            d = f.degree
            for j in range(1, d + 2):
                cand = lo + (hi - lo) * Fraction(j, d + 2)
                if f.eval(cand) != 0:
                    mid = cand
                    break
        vm = _var_at(chain, mid)
        split(lo, mid, vlo, vm)
        split(mid, hi, vm, vhi)

    split(lo, hi, _var_at(chain, lo), _var_at(chain, hi))
    assert len(out) == total
    return sorted(out)


@dataclass(frozen=True)
class AlgebraicReal:
    """A real algebraic number: square-free defining polynomial plus a
    rational isolating interval (endpoints are not roots)."""

    poly: UniPoly
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        slo = _sign(self.poly.eval(self.lo))
        shi = _sign(self.poly.eval(self.hi))
        if slo == 0 or shi == 0 or slo == shi:
            raise ValueError("interval does not isolate a sign change")

    @property
    def sign_lo(self) -> int:
        return _sign(self.poly.eval(self.lo))

    def refined(self, times: int = 1) -> "AlgebraicReal":
        """Bisect the isolating interval ``times`` times."""
        lo, hi = self.lo, self.hi
        slo = _sign(self.poly.eval(lo))
        for _ in range(times):
            mid = (lo + hi) / 2
            sm = _sign(self.poly.eval(mid))
            if sm == 0:
                # the root itself is the midpoint; shrink symmetrically
                # (the quarter points stay inside, so they are not roots)
                quarter = (hi - lo) / 4
                lo, hi = mid - quarter, mid + quarter
                continue
            if sm == slo:
                lo = mid
            else:
                hi = mid
        return AlgebraicReal(self.poly, lo, hi)

    def refined_below(self, width: Fraction) -> "AlgebraicReal":
        a = self
        while a.hi - a.lo >= width:
            a = a.refined()
        return a

    def contains(self, q: Fraction) -> bool:
        return self.lo < q < self.hi

    def equals_rational(self, q) -> bool:
        q = Fraction(q)
        return self.contains(q) and self.poly.eval(q) == 0

    def __float__(self) -> float:
        a = self.refined_below(Fraction(1, 10 ** 17))
        return float((a.lo + a.hi) / 2)

    def same_root(self, other: "AlgebraicReal") -> bool:
        if self.hi <= other.lo or other.hi <= self.lo:
            return False
        g = gcd_unipoly(self.poly, other.poly.rename(self.poly.var))
        if g.degree == 0:
            return False
        a, b = self, other
        # refine until either disjoint or g changes sign on the overlap
        for _ in range(256):
            lo = max(a.lo, b.lo)
            hi = min(a.hi, b.hi)
            if lo >= hi:
                return False
            if _sign(g.eval(lo)) * _sign(g.eval(hi)) < 0:
                return True
            a, b = a.refined(2), b.refined(2)
        raise RuntimeError("same_root failed to separate intervals")

    def __str__(self):
        return f"root of {self.poly} in ({self.lo}, {self.hi})"


def sturm_isolate(f: UniPoly) -> list[AlgebraicReal]:
    """One AlgebraicReal per distinct real root of a square-free ``f``."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    fp = f.primitive_part()
    if gcd_unipoly(fp, fp.derivative()).degree > 0:
        raise ValueError("polynomial is not square-free")
    return [AlgebraicReal(fp, lo, hi) for lo, hi in isolate_real_roots(fp)]


def rational_roots(f: UniPoly) -> list[Fraction]:
    """All rational roots with multiplicity (each repeated), sorted.

    Divisor enumeration over trailing/leading coefficients, pruned by the
    Cauchy root bound; every candidate is verified by exact evaluation and
    multiplicities come from exact deflation.
    """
    if f.is_zero():
        raise ValueError("rational roots of the zero polynomial")
    out: list[Fraction] = []
    coeffs = list(f.coeffs)
    k = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        k += 1
    out.extend([Fraction(0)] * k)
    g = UniPoly(f.var, coeffs).primitive_part()
    if g.degree >= 1:
        bound = cauchy_root_bound(g)
        a0 = abs(g.coeffs[0])
        an = abs(g.lc)
        num_cap = int(bound * an) + 1  # |p/q| <= bound and q <= an
        nums = intfactor.divisors_up_to(intfactor.factorize(a0), num_cap)
        dens = intfactor.divisors_up_to(intfactor.factorize(an), an)
        seen = set()
        for q in dens:
            for p in nums:
                if Fraction(p, q) > bound:
                    break
                if gcd(p, q) != 1:
                    continue
                for c in (Fraction(p, q), Fraction(-p, q)):
                    if c in seen:
                        continue
                    seen.add(c)
                    if g.eval(c) != 0:
                        continue
                    lin = UniPoly(f.var, (-c.numerator, c.denominator))
                    h = g
                    while True:
                        quo, rem = h.divmod_fraction(lin)
                        if not rem.is_zero():
                            break
                        out.append(c)
                        h = quo.clear_denominators()
                        if h.degree <= 0:
                            break
    return sorted(out)


def algebraic_is_root(a: AlgebraicReal, f: UniPoly) -> bool:
    """True iff f(a) = 0 exactly (gcd with the defining polynomial plus an
    interval sign check)."""
    if f.is_zero():
        return True
    g = gcd_unipoly(f.rename(a.poly.var), a.poly)
    if g.degree <= 0:
        return False
    return _sign(g.eval(a.lo)) * _sign(g.eval(a.hi)) < 0
