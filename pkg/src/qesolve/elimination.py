"""Reduction of the trap system to tail conditions, elimination to a
univariate secular polynomial, exact real-solution recovery, kernel
vectors, and the all-minors oracle.

Pipeline: forward substitution determines the kernel coefficients
p_0..p_{N-1} as polynomials in s_1..s_q (p_0 = 1); the q leftover rows are
the tail conditions.  Elimination runs two exact paths and reconciles them:

* a subresultant-PRS resultant tree (ascending-subscript elimination
  order), which certifies a *multiple* of the secular polynomial, and
* the minimal polynomial of the pivot in the quotient algebra (Buchberger
  + Krylov), which is the exact generator of the elimination ideal.

The generator must divide the resultant candidate; the quotient is the
extraneous factor and is logged in the provenance.  Real roots are found
by rational enumeration plus Sturm isolation; irrational roots are
identified in quadratic fields by bounded gcd search, and completions are
solved recursively with exact back-substitution filtering.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd, isqrt

from .exactalgebra import (
    AlgebraicReal,
    DegenerateElimination,
    GuardExceeded,
    MultiPoly,
    UniPoly,
    det_exact,
    gcd_unipoly,
    minimal_polynomial_of_var,
    rational_roots,
    resultant_multipoly,
    squarefree_decomposition,
    squarefree_part,
    sturm_isolate,
)
from .exactalgebra.euclidean import multipoly_gcd
from .exactalgebra.fieldpoly import fsign
from .exactalgebra.groebner import NotZeroDimensional, QuotientAlgebra
from .exactalgebra.quadfield import Surd
from .magyari import TrapMatrix, default_pivot

DEFAULT_GUARD_N = {0: 64, 1: 12, 2: 12, 3: 12, 4: 6, 5: 6}


def guard_limit(q: int, override: int | None = None) -> int:
    if override is not None:
        return override
    return DEFAULT_GUARD_N.get(q, 6)


# ---------------------------------------------------------------------------
# forward substitution


@dataclass(frozen=True)
class TailSystem:
    """Tail conditions T_1..T_q plus factorial-scaled kernel polynomials.

    ``scaled_kernel[n]`` is n! * p_n (integer coefficients, p_0 = 1);
    ``conditions`` are the primitive integer tail rows N-1..N+q-2.
    """

    q: int
    n_states: int
    variables: tuple
    scaled_kernel: tuple
    conditions: tuple
    condition_scales: tuple  # exact positive rational multipliers removed

    def kernel_values(self, binding: dict) -> list:
        """p_0..p_{N-1} evaluated exactly at a symbol binding."""
        out = []
        for n, poly in enumerate(self.scaled_kernel):
            v = poly.eval(binding)
            f = factorial(n)
            out.append(v / f if f > 1 else v * Fraction(1))
        return out

    def residuals(self, binding: dict) -> list:
        return [c.eval(binding) for c in self.conditions]


def forward_substitute(trap: TrapMatrix) -> TailSystem:
    """Solve rows 0..N-2 for p_1..p_{N-1} and emit the q tail rows."""
    q, n_states = trap.q, trap.n_states
    names = trap.variables
    ptilde = [MultiPoly.const(1, names)]
    svars = [MultiPoly.var(v, names) for v in names]
    for n in range(n_states - 1):
        # (n+1) p_{n+1} + sum_j s_j p_{n+1-j} + (N-1-(n-q)) p_{n-q} = 0
        acc = MultiPoly.zero(names)
        for j in range(1, min(q, n + 1) + 1):
            scale = factorial(n) // factorial(n + 1 - j)
            acc = acc + svars[j - 1] * ptilde[n + 1 - j] * scale
        if n >= q:
            scale = factorial(n) // factorial(n - q)
            acc = acc + ptilde[n - q] * ((n_states - 1 - (n - q)) * scale)
        ptilde.append(-acc)
    conditions = []
    scales = []
    nrows = n_states + q - 1
    for n in range(n_states - 1, nrows):
        acc_terms = {}
        acc = None
        for m in range(n_states):
            e = trap.entry(n, m)
            if e == 0:
                continue
            coeff = Fraction(1, factorial(m))
            term = ptilde[m] * coeff
            term = term * MultiPoly.var(e, names) if isinstance(e, str) \
                else term * e
            acc = term if acc is None else acc + term
        if acc is None:
            acc = MultiPoly.zero(names)
        prim = acc.clear_denominators()
        # record the exact multiplier prim = scale * acc
        scale = _ratio_of(prim, acc)
        conditions.append(prim)
        scales.append(scale)
    return TailSystem(q, n_states, names, tuple(ptilde), tuple(conditions),
                      tuple(scales))


def _ratio_of(prim: MultiPoly, raw: MultiPoly) -> Fraction:
    for e, c in prim.terms.items():
        rc = raw.terms.get(e)
        if rc:
            return Fraction(c) / Fraction(rc)
    return Fraction(1)


# ---------------------------------------------------------------------------
# elimination


@dataclass(frozen=True)
class SecularPoly:
    """Univariate secular polynomial in the pivot variable plus provenance.

    ``poly`` is primitive, square-free, positive leading coefficient.
    ``generator`` (when the quotient-algebra path ran) is the exact monic
    generator of the elimination ideal, scaled primitive.
    """

    poly: UniPoly
    pivot: str
    provenance: tuple
    multiplicities: tuple = ()     # ((factor text, multiplicity), ...)
    exact: bool = True             # False when only the resultant path ran

    def to_record(self) -> dict:
        return {
            "pivot": self.pivot,
            "secular": str(self.poly),
            "degree": self.poly.degree,
            "exact_generator": self.exact,
            "square_free_factors": [
                {"factor": t, "multiplicity": m} for t, m in self.multiplicities],
            "provenance": list(self.provenance),
        }


def _normalize(p: MultiPoly) -> MultiPoly:
    coeffs = list(p.terms.values())
    if all(isinstance(c, int) for c in coeffs):
        return p.primitive_part()
    if all(isinstance(c, (int, Fraction)) for c in coeffs):
        return p.clear_denominators()
    # surd coefficients: make the grevlex-leading coefficient one
    lead = max(p.terms, key=lambda e: (sum(e), tuple(-x for x in reversed(e))))
    lc = p.terms[lead]
    return MultiPoly(p.vars, {e: c / lc for e, c in p.terms.items()})


class _VarietySplit(Exception):
    """A pair of conditions shares a factor in the eliminated variable:
    V(f, g) = V(h) ∪ V(f/h, g/h).  Carries the two branch systems."""

    def __init__(self, pair, branch_a, branch_b):
        super().__init__("common factor during elimination")
        self.pair = pair
        self.branch_a = branch_a
        self.branch_b = branch_b


def _resultant_tree(conditions, variables, pivot, log):
    """Iterated resultants eliminating all non-pivot variables (ascending
    order); returns the list of final univariate polynomials in the pivot.

    Raises _VarietySplit when a pair shares a factor in the eliminated
    variable (identically vanishing resultant)."""
    active = tuple(variables)
    cur = [p.with_variables(active) for p in conditions if not p.is_zero()]
    order = [v for v in variables if v != pivot]
    for v in order:
        withv = [p for p in cur if p.degree_in(v) > 0]
        without = [p for p in cur if p.degree_in(v) <= 0]
        if withv and len(withv) == 1:
            log.append(f"eliminate {v}: single condition contained it; dropped"
                       " (projection keeps a superset of solutions)")
            withv = []
        new = []
        if withv:
            withv.sort(key=lambda p: (p.degree_in(v), p.total_degree(),
                                      len(p.terms)))
            base = withv[0]
            log.append(
                f"eliminate {v}: base condition deg_{v}={base.degree_in(v)},"
                f" paired against {len(withv) - 1} other(s)")
            for other in withv[1:]:
                r = resultant_multipoly(base, other, v)
                if r.is_zero():
                    h = multipoly_gcd(base, other)
                    rest = [p for p in cur if p is not base and p is not other]
                    branch_a = rest + [h]
                    branch_b = rest + [base.exact_div(h), other.exact_div(h)]
                    raise _VarietySplit((base, other), branch_a, branch_b)
                new.append(_normalize(r))
        active = tuple(x for x in active if x != v)
        cur = [p.with_variables(active) for p in without + new]
    out = []
    for p in cur:
        live = [v for v in variables if p.degree_in(v) > 0]
        if live and live != [pivot]:
            raise DegenerateElimination(
                f"elimination left variables {live} in {p}")
        out.append(p)
    return out


def eliminate(tails: TailSystem, pivot: str | None = None,
              guard_n: int | None = None, time_budget: float | None = None,
              method: str = "auto") -> SecularPoly:
    """Reduce the tail system to one univariate secular polynomial.

    ``method``: "auto" runs the resultant tree and the quotient-algebra
    generator and reconciles them; "resultant" skips the generator (the
    output may then contain extraneous factors and is flagged inexact);
    "groebner" runs only the generator path.
    """
    q = tails.q
    if q < 1:
        raise ValueError("elimination needs q >= 1")
    limit = guard_limit(q, guard_n)
    if tails.n_states > limit:
        raise GuardExceeded(
            f"N={tails.n_states} exceeds elimination guard {limit} for q={q}"
            " (override with guard_n or QES_GUARD_OVERRIDE=1)")
    pivot = pivot or default_pivot(q)
    if pivot not in tails.variables:
        raise ValueError(f"unknown pivot {pivot!r}")
    deadline = None if time_budget is None else time.monotonic() + time_budget
    log = [f"pivot {pivot}; elimination order "
           f"{[v for v in tails.variables if v != pivot]}"]

    if method == "auto" and q >= 4:
        # the resultant tree is uneconomical beyond three variables; the
        # quotient-algebra generator alone is exact
        method = "groebner"
        log.append("auto: resultant tree skipped for q >= 4")
    candidate = None
    if q == 1:
        candidate = tails.conditions[0].to_unipoly(pivot).primitive_part()
        log.append("q=1: tail condition is already univariate")
    elif method in ("auto", "resultant"):
        try:
            finals = _resultant_tree(list(tails.conditions), tails.variables,
                                     pivot, log)
        except _VarietySplit as split:
            raise DegenerateElimination(
                "identically-zero resultant for the condition pair "
                f"({split.pair[0]}, {split.pair[1]})") from split
        g = None
        for p in finals:
            u = p.to_unipoly(pivot) if p.vars else UniPoly.const(
                p.constant_value(), pivot)
            u = UniPoly(pivot, u.coeffs)
            g = u if g is None else gcd_unipoly(g, u)
        if g is None or g.is_zero():
            raise DegenerateElimination("resultant tree produced no conditions")
        candidate = g.primitive_part()
        log.append(f"resultant-tree candidate degree {candidate.degree}")

    generator = None
    if method in ("auto", "groebner") and q >= 1:
        if q == 1:
            generator = candidate
        else:
            generator, dim = minimal_polynomial_of_var(
                list(tails.conditions), pivot, deadline=deadline)
            log.append(f"quotient-algebra generator degree {generator.degree}"
                       f" (quotient dimension {dim})")

    if generator is not None:
        decomp = squarefree_decomposition(generator)
        reported = UniPoly.const(1, pivot)
        for f, m in decomp:
            reported = reported * f
        reported = reported.primitive_part()
        mults = tuple((str(f), m) for f, m in decomp)
        if any(m > 1 for _, m in decomp):
            log.append("generator carried repeated factors; reported the"
                       " square-free part")
        if candidate is not None and method == "auto" and q >= 2:
            cand_sf = squarefree_part(candidate)
            try:
                extra = cand_sf.exact_div(reported).primitive_part()
            except Exception as exc:  # divisibility is a hard invariant
                raise AssertionError(
                    "generator does not divide the resultant candidate: "
                    f"{reported} vs {cand_sf}") from exc
            if extra.degree > 0:
                log.append(f"extraneous resultant factor removed: {extra}")
            else:
                log.append("resultant candidate matched the generator")
        return SecularPoly(reported, pivot, tuple(log), mults, exact=True)

    reported = squarefree_part(candidate)
    if reported != candidate.primitive_part():
        log.append("square part removed from the resultant candidate")
    log.append("inexact path: extraneous pivot values possible;"
               " solutions are filtered by back-substitution")
    mults = tuple((str(f), m) for f, m in squarefree_decomposition(candidate))
    return SecularPoly(reported, pivot, tuple(log), mults, exact=False)


# ---------------------------------------------------------------------------
# real solutions


@dataclass(frozen=True)
class SolutionTuple:
    """A complete real solution: exact coordinates (Fraction or Surd) in
    trap-variable order plus its kernel vector."""

    variables: tuple
    values: tuple
    kernel: tuple
    integer_kernel: bool

    def values_map(self) -> dict:
        return dict(zip(self.variables, self.values))

    def is_rational(self) -> bool:
        return all(not isinstance(v, Surd) for v in self.values)

    def sort_key(self):
        return tuple(float(v) for v in self.values)

    def coordinate_text(self) -> list:
        return [str(v) for v in self.values]

    def to_record(self) -> dict:
        return {
            "values": self.coordinate_text(),
            "kernel": [str(c) for c in self.kernel],
            "integer_kernel": self.integer_kernel,
        }


class EffectiveNTooLarge(ValueError):
    """The kernel vector ends with p_{N-1} = 0 (instance degenerates)."""


def _perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def _quadratic_roots_as_surds(u: int, v: int):
    """Real roots of x^2 + u x + v with irrational square-free-kernel disc."""
    disc = u * u - 4 * v
    k = 1
    d = disc
    f = 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            k *= f
        f += 1
    # disc = k^2 * d with d square-free
    lo = Surd(Fraction(-u, 2), Fraction(-k, 2), d)
    hi = Surd(Fraction(-u, 2), Fraction(k, 2), d)
    return lo, hi


def _match_quadratics(secular: UniPoly, intervals):
    """Identify isolated irrational roots as quadratic surds when possible.

    Returns (matches, leftovers): matches is a list of (Surd, interval).
    Bounded search: monic x^2+ux+v with |u| <= 2R, |v| <= R^2+1 where R
    bounds the isolated real roots.
    """
    if not intervals:
        return [], []
    rmax = Fraction(0)
    tight = [a.refined(4) for a in intervals]
    for a in tight:
        rmax = max(rmax, abs(a.lo), abs(a.hi))
    ubound = int(2 * rmax) + 1
    vbound = int(rmax * rmax) + 1
    matches = []
    remaining = list(tight)
    for u in range(-ubound, ubound + 1):
        if not remaining:
            break
        for v in range(-vbound, vbound + 1):
            disc = u * u - 4 * v
            if disc <= 0 or _perfect_square(disc):
                continue
            g = UniPoly(secular.var, (v, u, 1))
            d = gcd_unipoly(secular, g)
            if d.degree != 2 or d != g:
                continue
            r_lo, r_hi = _quadratic_roots_as_surds(u, v)
            for root in (r_lo, r_hi):
                blo, bhi = root.bounds(25)
                for a in list(remaining):
                    if a.lo <= blo and bhi <= a.hi:
                        matches.append((root, a))
                        remaining.remove(a)
                        break
            if not remaining:
                break
    return matches, remaining


def _real_roots_exact(f: UniPoly, notes: list) -> list:
    """Rational and quadratic-surd real roots of an integer polynomial.

    Uses the square-free part; any isolated real root not identified in a
    quadratic field is recorded in ``notes`` (and not returned)."""
    if f.degree < 1:
        return []
    sf = squarefree_part(f)
    rr = sorted(set(rational_roots(sf)))
    roots: list = list(rr)
    intervals = [a for a in sturm_isolate(sf)
                 if not any(a.equals_rational(r) for r in rr)]
    matches, leftover = _match_quadratics(sf, intervals)
    roots.extend(m[0] for m in matches)
    for a in leftover:
        notes.append(f"real root of {sf} in ({a.lo}, {a.hi}) is not"
                     " representable in a supported quadratic field")
    return roots


_COMBO_CAP = 4096


def _completions_for_pivot(tails: TailSystem, pivot: str, root, notes: list,
                           deadline=None) -> list:
    """All real solution assignments extending one exact pivot root.

    Rational roots are substituted directly; quadratic surds are handled by
    adjoining the defining quadratic, so the quotient algebra stays over
    the integers either way.  Candidate values for the remaining
    coordinates come from their minimal polynomials in that quotient; the
    (small) Cartesian product is filtered by exact residual evaluation."""
    rest = tuple(v for v in tails.variables if v != pivot)
    base = {pivot: root}
    if not rest:
        res = tails.residuals(base)
        return [base] if all(fsign(r) == 0 for r in res) else []
    if isinstance(root, Surd):
        dpoly = root.minimal_polynomial(pivot).to_multi(tails.variables)
        gens = list(tails.conditions) + [dpoly]
    else:
        gens = []
        inconsistent = False
        for c in tails.conditions:
            sub = c.substitute({pivot: Fraction(root)}).clear_denominators()
            if sub.is_zero():
                continue
            if sub.is_constant():
                inconsistent = True
                break
            gens.append(sub)
        if inconsistent:
            return []
        if not gens:
            notes.append(f"pivot {root}: completion system is empty"
                         " (positive-dimensional); skipped")
            return []
    try:
        alg = QuotientAlgebra(gens, deadline=deadline)
    except NotZeroDimensional as exc:
        notes.append(f"pivot {root}: completion not zero-dimensional ({exc})")
        return []
    if alg.trivial:
        return []
    cand_per_var = []
    total = 1
    for v in rest:
        mp = alg.minimal_polynomial(v, deadline=deadline)
        vals = _real_roots_exact(mp, notes)
        if not vals:
            return []  # some coordinate admits no real value
        cand_per_var.append(vals)
        total *= len(vals)
    if total > _COMBO_CAP:
        notes.append(f"pivot {root}: {total} candidate combinations exceed"
                     f" the cap {_COMBO_CAP}; completion skipped")
        return []
    out = []
    for combo in itertools.product(*cand_per_var):
        binding = dict(base)
        binding.update(zip(rest, combo))
        try:
            res = tails.residuals(binding)
        except ValueError:
            continue  # mixed quadratic fields cannot cancel exactly
        if all(fsign(r) == 0 for r in res):
            out.append(binding)
    return out


@dataclass(frozen=True)
class SolutionReport:
    tuples: tuple
    notes: tuple

    def to_record(self) -> dict:
        return {
            "tuples": [t.to_record() for t in self.tuples],
            "notes": list(self.notes),
        }


def real_solutions(tails: TailSystem, secular: SecularPoly) -> SolutionReport:
    """Complete every real pivot root to full exact solution tuples.

    Rational fast path, Sturm isolation, quadratic-field identification;
    tuples survive only if every tail condition vanishes exactly.  Pivot
    roots with no real completion are recorded in the notes.
    """
    pivot = secular.pivot
    notes: list = []
    sec = secular.poly
    if sec.degree < 1:
        return SolutionReport((), ("secular polynomial is constant",))
    pivot_roots: list = []
    rr = sorted(set(rational_roots(sec)))
    pivot_roots.extend(rr)
    intervals = [a for a in sturm_isolate(sec)
                 if not any(a.equals_rational(r) for r in rr)]
    matches, leftover = _match_quadratics(sec, intervals)
    pivot_roots.extend(m[0] for m in matches)
    for a in leftover:
        notes.append(f"pivot root in ({a.lo}, {a.hi}) lies outside the"
                     " supported quadratic fields; no completion attempted")
    tuples = []
    for root in pivot_roots:
        survivors = _completions_for_pivot(tails, pivot, root, notes)
        if not survivors:
            notes.append(f"pivot root {root}: complex completion only")
            continue
        for full in survivors:
            values = tuple(full[v] for v in tails.variables)
            kern, is_int = _kernel_from_tails(tails, full, notes)
            tuples.append(SolutionTuple(tails.variables, values, kern, is_int))
    tuples.sort(key=lambda t: t.sort_key())
    return SolutionReport(tuple(tuples), tuple(notes))


# ---------------------------------------------------------------------------
# kernel vectors and the minors oracle


def _kernel_from_tails(tails: TailSystem, binding: dict, notes: list):
    p = tails.kernel_values(binding)
    if fsign(p[-1]) == 0:
        notes.append(f"tuple {[str(binding[v]) for v in tails.variables]}:"
                     " p_{N-1} = 0 (effective N too large)")
    if all(isinstance(c, (int, Fraction)) for c in p):
        den = 1
        for c in p:
            c = Fraction(c)
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(Fraction(c) * den) for c in p]
        g = 0
        for c in ints:
            g = gcd(g, abs(c))
        ints = [c // g for c in ints]
        if ints[0] < 0:
            ints = [-c for c in ints]
        return tuple(ints), True
    return tuple(p), False


def kernel_vector(trap: TrapMatrix, values) -> tuple:
    """Normalized kernel vector at an exact solution tuple.

    Rational tuples give integers with gcd 1 and p_0 > 0; quadratic-surd
    tuples keep exact field elements with p_0 = 1.  Raises ValueError if
    the tuple does not solve the system, EffectiveNTooLarge if p_{N-1}=0.
    """
    tails = forward_substitute(trap)
    binding = values if isinstance(values, dict) else dict(
        zip(trap.variables, values))
    res = tails.residuals(binding)
    if any(fsign(r) != 0 for r in res):
        raise ValueError("tuple does not satisfy the tail conditions")
    notes: list = []
    kern, is_int = _kernel_from_tails(tails, binding, notes)
    if notes:
        raise EffectiveNTooLarge(notes[0])
    # exact annihilation, row by row
    ncols = trap.shape[1]
    pvals = tails.kernel_values(binding)
    for n in range(trap.shape[0]):
        acc = 0
        for m in range(ncols):
            e = trap.entry(n, m)
            coef = binding[e] if isinstance(e, str) else e
            acc = acc + coef * pvals[m]
        if fsign(acc) != 0:
            raise AssertionError(f"row {n} residual nonzero: {acc}")
    return kern


def brute_force_check(trap: TrapMatrix, values, n_limit: int = 8) -> bool:
    """Independent oracle: every N x N minor of the trap matrix vanishes.

    Fraction-free determinant expansion; guarded at N <= n_limit.
    """
    if trap.n_states > n_limit:
        raise GuardExceeded(
            f"minor oracle refused: N={trap.n_states} exceeds limit {n_limit}")
    binding = values if isinstance(values, dict) else dict(
        zip(trap.variables, values))
    numeric = trap.evaluate(binding)
    nrows, ncols = trap.shape
    if nrows < ncols:
        return True  # wide systems always have kernels
    for rows in itertools.combinations(range(nrows), ncols):
        sub = [numeric[r] for r in rows]
        if fsign(_det_any(sub)) != 0:
            return False
    return True


def _det_any(rows):
    if all(isinstance(c, int) for r in rows for c in r):
        return det_exact(rows)
    conv = [[Fraction(c) if isinstance(c, int) else c for c in r]
            for r in rows]
    return det_exact(conv)


def trap_determinant(trap: TrapMatrix) -> UniPoly:
    """Symbolic determinant of the square (q=1) trap matrix via
    fraction-free expansion; independent cross-check of the tail condition."""
    if trap.q != 1:
        raise ValueError("determinant defined for the square q=1 system")
    rows = [[trap.entry_poly(n, m) for m in range(trap.shape[1])]
            for n in range(trap.shape[0])]
    det = det_exact(rows)
    return det.to_unipoly(trap.variables[0])
