"""Construction of the physical problem: even polynomial potentials of
degree 4q+2, their two coupling parameterizations, the full banded
solvability system at finite dimension D, the large-D rescaling, and the
leading-order banded "trap" matrix with symbols s_1..s_q.

Conventions (0-based row index n throughout):

* radial operator  -d^2/dr^2 + l(l+1)/r^2 + V(r),  l = L + (D-3)/2;
* V(r) = sum_k g_k r^(2k+2), k = 0..2q, with g_2q = gamma^2 > 0;
* generator form  V = U + r^2 W^2 with W = sum alpha_j r^(2j) and
  U = sum G_k r^(2k+2).  The sextic family (q = 1) historically carries an
  extra alpha_0^2 inside its quadratic slot (g_0 = 2 alpha_0^2 + G_0); the
  general map for q >= 2 is the plain expansion.  Both are invertible and
  agree on the physical couplings.
* After the bottom-row constraint fixes g_{q-1}, the lowest band of the
  (N+q-1) x N system is 4 gamma (N+q-n-1).
* Rescaling h_n = p_n / mu^n with mu = (D/(2 gamma))^(1/(q+1)) and
  tau = 2D/mu = 4 gamma mu^q balances the extreme bands and sends the
  system to the integer/symbol trap matrix as D -> infinity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exactalgebra import MultiPoly


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _sqrt_fraction(x: Fraction):
    """Exact square root of a rational, or None."""
    x = _fr(x)
    if x < 0:
        return None
    from math import isqrt
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# potentials and coupling maps


@dataclass(frozen=True)
class PotentialSpec:
    """Even polynomial potential of degree 4q+2 in one of two equivalent
    parameterizations: couplings g_0..g_2q, or generators alpha_0..alpha_q
    plus G_0..G_{q-1}."""

    q: int
    couplings: tuple | None = None   # g_0..g_2q
    alphas: tuple | None = None      # alpha_0..alpha_q
    gees: tuple | None = None        # G_0..G_{q-1}

    def __post_init__(self):
        if self.q < 0:
            raise ValueError("q must be >= 0")
        if self.couplings is not None:
            cs = tuple(_fr(c) for c in self.couplings)
            if len(cs) != 2 * self.q + 1:
                raise ValueError("couplings must have length 2q+1")
            if cs[-1] <= 0:
                raise ValueError("g_2q must be positive (normalizability)")
            object.__setattr__(self, "couplings", cs)
        if self.alphas is not None:
            al = tuple(_fr(a) for a in self.alphas)
            if len(al) != self.q + 1:
                raise ValueError("alphas must have length q+1")
            if al[-1] <= 0:
                raise ValueError("alpha_q must be positive")
            object.__setattr__(self, "alphas", al)
            gs = tuple(_fr(g) for g in (self.gees or (0,) * self.q))
            if len(gs) != self.q:
                raise ValueError("G list must have length q")
            object.__setattr__(self, "gees", gs)
        if self.couplings is None and self.alphas is None:
            raise ValueError("need either couplings or generator parameters")

    @property
    def gamma(self) -> Fraction:
        if self.alphas is not None:
            return self.alphas[-1]
        g = _sqrt_fraction(self.couplings[-1])
        if g is None:
            raise ValueError("g_2q is not an exact rational square")
        return g

    def coupling(self, k: int) -> Fraction:
        """g_k for 0 <= k <= 2q (computing from generators if needed)."""
        if self.couplings is not None:
            return self.couplings[k]
        return coupling_map(self).couplings[k]


def _alpha_square_sum(alphas, k) -> Fraction:
    """sum_{i+j=k} alpha_i alpha_j (indices clipped to 0..q)."""
    q = len(alphas) - 1
    total = Fraction(0)
    for i in range(max(0, k - q), min(k, q) + 1):
        total += alphas[i] * alphas[k - i]
    return total


def coupling_map(p: PotentialSpec) -> PotentialSpec:
    """Convert to the other parameterization; round-trip is the identity.

    For q = 1 the sextic convention applies: g_0 = 2 alpha_0^2 + G_0.
    For q >= 2: g_k = G_k + sum_{i+j=k} alpha_i alpha_j (k < q) and
    g_k = sum_{i+j=k} alpha_i alpha_j (k >= q).
    """
    q = p.q
    sextic_extra = (lambda k: p.alphas is not None and q == 1 and k == 0)
    if p.alphas is not None:
        al = p.alphas
        gs = []
        for k in range(2 * q + 1):
            g = _alpha_square_sum(al, k)
            if k < q:
                g += p.gees[k]
            if q == 1 and k == 0:
                g += al[0] * al[0]
            gs.append(g)
        return PotentialSpec(q, couplings=tuple(gs))
    # invert: top couplings give alphas, the rest give G
    cs = p.couplings
    gamma = p.gamma
    al = [Fraction(0)] * (q + 1)
    al[q] = gamma
    for m in range(2 * q - 1, q - 1, -1):
        # solve 2 al[m-q] al[q] = cs[m] - (products not involving index m-q)
        j = m - q
        partial = Fraction(0)
        for i in range(max(0, m - q), min(m, q) + 1):
            if i == j or m - i == j:
                continue
            partial += al[i] * al[m - i]
        al[j] = (cs[m] - partial) / (2 * al[q])
    gees = []
    for k in range(q):
        g = cs[k] - _alpha_square_sum(al, k)
        if q == 1 and k == 0:
            g -= al[0] * al[0]
        gees.append(g)
    return PotentialSpec(q, alphas=tuple(al), gees=tuple(gees))


def sextic_constraint(alpha0, alpha1, n_states: int, ell) -> Fraction:
    """Quasi-exact solvability constraint for the sextic family (q = 1):
    the G_0 making an N-plet of polynomial bound states exact."""
    if n_states < 1:
        raise ValueError("N must be >= 1")
    a0, a1, ell = _fr(alpha0), _fr(alpha1), _fr(ell)
    return -a0 * a0 - a1 * (4 * n_states + 2 * ell + 1)


def constrained_g_top(alphas, n_states: int, ell) -> Fraction:
    """The bottom-row constraint solved for g_{q-1} (any q >= 1):
    g_{q-1} = sum_{i+j=q-1} alpha_i alpha_j - alpha_q (4N + 2q + 2 ell - 1).
    """
    q = len(alphas) - 1
    if q < 1:
        raise ValueError("q must be >= 1")
    al = tuple(_fr(a) for a in alphas)
    ell = _fr(ell)
    return _alpha_square_sum(al, q - 1) - al[q] * (4 * n_states + 2 * q + 2 * ell - 1)


# ---------------------------------------------------------------------------
# problem instance


@dataclass(frozen=True)
class QesSystem:
    """A QES problem instance: potential, multiplet size N, angular integer
    L, and dimension D (a Fraction, or None to keep D symbolic)."""

    potential: PotentialSpec
    n_states: int
    angular_l: int = 0
    dimension: Fraction | None = None

    def __post_init__(self):
        if self.n_states < 1:
            raise ValueError("N must be >= 1")
        if self.angular_l < 0:
            raise ValueError("L must be >= 0")
        if self.dimension is not None:
            object.__setattr__(self, "dimension", _fr(self.dimension))

    @property
    def q(self) -> int:
        return self.potential.q

    @property
    def ell(self) -> Fraction:
        if self.dimension is None:
            raise ValueError("symbolic D: ell not numeric")
        return self.angular_l + (self.dimension - 3) / 2

    def to_record(self) -> dict:
        pot = self.potential
        rec = {
            "q": self.q,
            "N": self.n_states,
            "L": self.angular_l,
            "D": None if self.dimension is None else str(self.dimension),
        }
        if pot.couplings is not None:
            rec["couplings"] = [str(c) for c in pot.couplings]
        if pot.alphas is not None:
            rec["alphas"] = [str(a) for a in pot.alphas]
            rec["G"] = [str(g) for g in pot.gees]
        return rec

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)

    @classmethod
    def from_record(cls, rec: dict) -> "QesSystem":
        pot = PotentialSpec(
            rec["q"],
            couplings=tuple(Fraction(c) for c in rec["couplings"])
            if "couplings" in rec else None,
            alphas=tuple(Fraction(a) for a in rec["alphas"])
            if "alphas" in rec else None,
            gees=tuple(Fraction(g) for g in rec["G"]) if "G" in rec else None,
        )
        d = rec.get("D")
        return cls(pot, rec["N"], rec.get("L", 0),
                   None if d is None else Fraction(d))


# ---------------------------------------------------------------------------
# full finite-D matrix


def _coupling_symbol(k: int) -> str:
    return f"g{k}" if k >= 0 else "gm1"


@dataclass(frozen=True)
class FullMatrix:
    """The (N+q-1) x N banded system at finite D, after the bottom-row
    constraint.  Entries are MultiPolys in D and the free couplings
    g_{-1}..g_{q-2} with rational coefficients (alphas are numeric)."""

    q: int
    n_states: int
    angular_l: int
    variables: tuple
    rows: tuple  # tuple of tuples of MultiPoly

    @property
    def shape(self):
        return (self.n_states + self.q - 1, self.n_states)

    def evaluate(self, dimension, free_couplings) -> list[list[Fraction]]:
        """Numeric rows; free_couplings lists g_{-1}..g_{q-2}."""
        binding = {"D": _fr(dimension)}
        for k in range(-1, self.q - 1):
            binding[_coupling_symbol(k)] = _fr(free_couplings[k + 1])
        out = []
        for row in self.rows:
            out.append([Fraction(p.eval(binding)) for p in row])
        return out


def build_full_matrix(sys: QesSystem) -> FullMatrix:
    """Banded matrix rows n = 0..N+q-2 with the constraint already applied:

    C_n = (2n+2)(2n+2L+D) on the superdiagonal,
    B_n = -g_{-1} - alpha_0 (4n+2L+D) on the diagonal,
    A_n^(k) = -g_{k-1} - alpha_k (4n+2L+D-2k) + sum_{i+j=k-1} alpha_i alpha_j,
    A_n^(q) = 4 gamma (N+q-n-1).
    """
    if sys.n_states < 1:
        raise ValueError("N must be >= 1")
    pot = sys.potential
    if pot.alphas is None:
        pot = coupling_map(pot)
    q, n_states, big_l = sys.q, sys.n_states, sys.angular_l
    al = pot.alphas
    gamma = al[-1]
    variables = ("D",) + tuple(_coupling_symbol(k) for k in range(-1, q - 1))

    def sym(name):
        return MultiPoly.var(name, variables)

    def const(c):
        return MultiPoly.const(_fr(c), variables)

    d_sym = sym("D")
    nrows, ncols = n_states + q - 1, n_states
    rows = []
    for n in range(nrows):
        row = [MultiPoly.zero(variables)] * ncols
        if n + 1 <= ncols - 1:
            row[n + 1] = (d_sym + const(2 * n + 2 * big_l)) * const(2 * n + 2)
        if q >= 1 and 0 <= n <= ncols - 1:
            row[n] = (-sym("gm1")
                      - (d_sym + const(4 * n + 2 * big_l)) * const(al[0]))
        for k in range(1, q):
            m = n - k
            if 0 <= m <= ncols - 1:
                row[m] = (-sym(_coupling_symbol(k - 1))
                          - (d_sym + const(4 * n + 2 * big_l - 2 * k)) * const(al[k])
                          + const(_alpha_square_sum(al, k - 1)))
        if q >= 1 and 0 <= n - q <= ncols - 1:
            row[n - q] = const(4 * gamma * (n_states + q - n - 1))
        if q == 0 and 0 <= n <= ncols - 1:
            # bottom-row constraint at q=0 fixes the energy itself:
            # B_n -> 4 gamma (N-1-n) with gamma = alpha_0
            row[n] = const(4 * gamma * (n_states - 1 - n))
        rows.append(tuple(row))
    return FullMatrix(q, n_states, big_l, variables, tuple(rows))


def lowest_band_value(q: int, n_states: int, gamma, n: int) -> Fraction:
    """A_n^(q) after the constraint; vanishes at n = N+q-1."""
    return 4 * _fr(gamma) * (n_states + q - n - 1)


# ---------------------------------------------------------------------------
# large-D scaling: formal monomials 2^a gamma^b D^c


@dataclass(frozen=True)
class PowerMonomial:
    """2^a * gamma^b * D^c with rational exponents."""

    two: Fraction
    gamma: Fraction
    dim: Fraction

    def __mul__(self, other):
        return PowerMonomial(self.two + other.two, self.gamma + other.gamma,
                             self.dim + other.dim)

    def __truediv__(self, other):
        return PowerMonomial(self.two - other.two, self.gamma - other.gamma,
                             self.dim - other.dim)

    def __pow__(self, k):
        k = _fr(k)
        return PowerMonomial(self.two * k, self.gamma * k, self.dim * k)

    def is_one(self):
        return self.two == 0 and self.gamma == 0 and self.dim == 0

    def eval(self, dimension, gamma):
        """Exact Fraction when the combined root is exact, else float."""
        r = 1
        for e in (self.two, self.gamma, self.dim):
            d = e.denominator
            from math import gcd as _gcd
            r = r * d // _gcd(r, d)
        base = (Fraction(2) ** int(self.two * r)
                * _fr(gamma) ** int(self.gamma * r)
                * _fr(dimension) ** int(self.dim * r))
        exact = _rational_power(base, Fraction(1, r))
        if exact is not None:
            return exact
        return float(base) ** (1.0 / r)

    def __str__(self):
        parts = []
        for name, e in (("2", self.two), ("gamma", self.gamma), ("D", self.dim)):
            if e != 0:
                parts.append(f"{name}^({e})")
        return "*".join(parts) if parts else "1"


def _rational_power(base: Fraction, expo: Fraction):
    """base**expo as an exact Fraction, or None."""
    if base == 0:
        return Fraction(0) if expo > 0 else None
    if base < 0:
        return None
    num, den = expo.numerator, expo.denominator

    def root(n: int, k: int):
        if k == 1:
            return n
        lo, hi = 0, max(n, 1)
        while lo <= hi:
            mid = (lo + hi) // 2
            p = mid ** k
            if p == n:
                return mid
            if p < n:
                lo = mid + 1
            else:
                hi = mid - 1
        return None

    rn = root(base.numerator, den)
    rd = root(base.denominator, den)
    if rn is None or rd is None:
        return None
    r = Fraction(rn, rd)
    return r ** num if num >= 0 else Fraction(1) / (r ** (-num))


@dataclass(frozen=True)
class ScalingParams:
    """mu = (D/(2 gamma))^(1/(q+1)), tau = (2^(q+2) D^q gamma)^(1/(q+1)),
    kept as formal monomials so 2D/mu = tau = 4 gamma mu^q is an identity."""

    q: int
    mu: PowerMonomial
    tau: PowerMonomial

    def identity_residuals(self):
        """(2D/mu) / tau and tau / (4 gamma mu^q); both must be 1."""
        two_d = PowerMonomial(Fraction(1), Fraction(0), Fraction(1))
        four_gamma = PowerMonomial(Fraction(2), Fraction(1), Fraction(0))
        r1 = two_d / self.mu / self.tau
        r2 = self.tau / (four_gamma * self.mu ** self.q)
        return r1, r2


def scaling(q: int) -> ScalingParams:
    if q < 0:
        raise ValueError("q must be >= 0")
    p = Fraction(1, q + 1)
    mu = PowerMonomial(-p, -p, p)
    tau = PowerMonomial((q + 2) * p, p, q * p)
    return ScalingParams(q, mu, tau)


def scaling_values(q: int, dimension, gamma):
    """Numeric (mu, tau) for D > 0, gamma > 0; exact Fractions when the
    (q+1)-th roots are exact, floats otherwise."""
    if _fr(gamma) <= 0:
        raise ValueError("gamma must be positive")
    if _fr(dimension) <= 0:
        raise ValueError("D must be positive")
    s = scaling(q)
    return s.mu.eval(dimension, gamma), s.tau.eval(dimension, gamma)


def reparam_couplings(svals, dimension, gamma, alphas):
    """Replace energy and low couplings by s_1..s_q:
    g_{k-2} = -alpha_{k-1} D - (tau/mu^(k-1)) s_k,  k = 1..q.

    Returns [g_{-1}, g_0, ..., g_{q-2}]; energy is E = -g_{-1}.  Values are
    exact Fractions when the scaling monomials evaluate exactly.
    """
    q = len(svals)
    if len(alphas) < q:
        raise ValueError("need alphas up to index q-1")
    s = scaling(q)
    out = []
    for k in range(1, q + 1):
        mono = s.tau / s.mu ** (k - 1)
        coef = mono.eval(dimension, gamma)
        val = -_fr(alphas[k - 1]) * _fr(dimension) - coef * _fr(svals[k - 1])
        out.append(val)
    return out


def constrained_couplings(q: int, alphas, n_states: int, ell):
    """Full coupling list g_0..g_2q with g_{q-1} fixed by the constraint
    and the upper couplings from the generator map (free G's zero)."""
    al = tuple(_fr(a) for a in alphas)
    gs = []
    for k in range(2 * q + 1):
        g = _alpha_square_sum(al, k)
        if q == 1 and k == 0:
            g += al[0] * al[0]
        gs.append(g)
    if q >= 1:
        gs[q - 1] = constrained_g_top(al, n_states, ell)
    return gs


# ---------------------------------------------------------------------------
# leading-order trap matrix


_TRAP_NAMES = {1: ("s",), 2: ("s", "t"), 3: ("r", "s", "t")}


def trap_variable_names(q: int) -> tuple:
    if q == 0:
        return ()
    if q in _TRAP_NAMES:
        return _TRAP_NAMES[q]
    return tuple(f"s{k}" for k in range(1, q + 1))


def default_pivot(q: int) -> str:
    names = trap_variable_names(q)
    if q in (1, 2):
        return names[0]
    return names[-1]


@dataclass(frozen=True)
class TrapMatrix:
    """Leading-order (N+q-1) x N banded system over symbols s_1..s_q.

    entry(n, m) = n+1 on the superdiagonal (m = n+1, n <= N-2),
    s_{n-m+1} on bands 0..q-1, N-1-m on band q, otherwise zero.
    """

    q: int
    n_states: int

    def __post_init__(self):
        if self.q < 0 or self.n_states < 1:
            raise ValueError("need q >= 0 and N >= 1")

    @property
    def shape(self):
        return (self.n_states + self.q - 1, self.n_states)

    @property
    def variables(self) -> tuple:
        return trap_variable_names(self.q)

    def entry(self, n: int, m: int):
        """Integer, or a variable name string for the symbol bands."""
        nrows, ncols = self.shape
        if not (0 <= n < nrows and 0 <= m < ncols):
            raise IndexError("entry outside matrix")
        if m == n + 1:
            return n + 1
        d = n - m
        if 0 <= d <= self.q - 1:
            return self.variables[d]
        if d == self.q:
            return self.n_states - 1 - m
        return 0

    def entry_poly(self, n: int, m: int) -> MultiPoly:
        e = self.entry(n, m)
        if isinstance(e, str):
            return MultiPoly.var(e, self.variables)
        return MultiPoly.const(e, self.variables)

    def row_polys(self, n: int) -> list:
        return [self.entry_poly(n, m) for m in range(self.shape[1])]

    def evaluate(self, values: dict) -> list[list]:
        """Numeric matrix at a symbol binding {name: value}."""
        nrows, ncols = self.shape
        out = []
        for n in range(nrows):
            row = []
            for m in range(ncols):
                e = self.entry(n, m)
                row.append(values[e] if isinstance(e, str) else e)
            out.append(row)
        return out

    def __str__(self):
        nrows, ncols = self.shape
        return "\n".join(
            " ".join(str(self.entry(n, m)) for m in range(ncols))
            for n in range(nrows))


def build_trap(q: int, n_states: int) -> TrapMatrix:
    return TrapMatrix(q, n_states)


# ---------------------------------------------------------------------------
# leading-order consistency of the rescaling


@dataclass(frozen=True)
class BandReport:
    band: str                  # "super", "diag", "sub1".., "integer"
    kept: str                  # surviving trap entry (as text)
    discarded: list            # [(monomial text, coefficient text)]
    max_dim_exponent: Fraction | None  # largest D-exponent among discarded


def leading_order_consistency(q: int, n_states: int, angular_l: int = 0):
    """Symbolic check that scaled full-matrix rows converge to the trap rows.

    Substitutes h_n = p_n/mu^n and the coupling reparameterization into row
    n, divides by tau, and splits every band coefficient into the exact trap
    entry plus terms carrying negative powers of D.  Returns a list of
    BandReport; all max_dim_exponent values are negative (or None when a
    band is exact).
    """
    if q < 0 or n_states < 1:
        raise ValueError("need q >= 0 and N >= 1")
    names = trap_variable_names(q)
    asym = tuple(f"a{i}" for i in range(q + 1))
    symbols = asym + names
    trap = build_trap(q, n_states)

    def sym(name):
        return MultiPoly.var(name, symbols)

    def const(c):
        return MultiPoly.const(c, symbols)

    scal = scaling(q)
    one = PowerMonomial(Fraction(0), Fraction(0), Fraction(0))
    dpow = PowerMonomial(Fraction(0), Fraction(0), Fraction(1))
    reports = []
    nrows, ncols = trap.shape
    big_l = angular_l

    def classify(band_name, terms, n, m):
        """terms: dict PowerMonomial -> MultiPoly; compare with trap."""
        e = trap.entry(n, m)
        expected = sym(e) if isinstance(e, str) else const(e)
        kept = terms.get(one, MultiPoly.zero(symbols))
        if kept != expected:
            raise AssertionError(
                f"band {band_name} row {n}: leading term {kept} != {expected}")
        discarded = [(str(mono), str(p)) for mono, p in sorted(
            terms.items(), key=lambda t: t[0].dim, reverse=True)
            if not mono.is_one() and not p.is_zero()]
        exps = [mono.dim for mono, p in terms.items()
                if not mono.is_one() and not p.is_zero()]
        for e in exps:
            if e >= 0:
                raise AssertionError(
                    f"band {band_name} row {n}: non-vanishing correction D^{e}")
        reports.append(BandReport(band_name, str(expected), discarded,
                                  max(exps) if exps else None))

    for n in range(nrows):
        # superdiagonal: C_n/(tau*mu) = (n+1) + (n+1)(2n+2L)/D
        if n + 1 <= ncols - 1:
            terms = {
                one: const(n + 1),
                dpow ** -1: const((n + 1) * (2 * n + 2 * big_l)),
            }
            classify("super", terms, n, n + 1)
        # diagonal: B_n/tau = s_1 - a0(4n+2L)/tau
        if q >= 1 and 0 <= n <= ncols - 1:
            terms = {
                one: sym(names[0]),
                one / scal.tau: const(-(4 * n + 2 * big_l)) * sym(asym[0]),
            }
            classify("diag", terms, n, n)
        # bands k = 1..q-1: A_n^(k) mu^k / tau
        for k in range(1, q):
            m = n - k
            if 0 <= m <= ncols - 1:
                corr = const(-(4 * n + 2 * big_l - 2 * k)) * sym(asym[k])
                for i in range(max(0, k - 1 - q), min(k - 1, q) + 1):
                    corr = corr + sym(asym[i]) * sym(asym[k - 1 - i])
                terms = {
                    one: sym(names[k]),
                    scal.mu ** k / scal.tau: corr,
                }
                classify(f"sub{k}", terms, n, m)
        # integer band: A_n^(q) mu^q / tau = N+q-1-n exactly
        if q >= 0 and 0 <= n - q <= ncols - 1:
            terms = {one: const(n_states + q - 1 - n)}
            classify("integer", terms, n, n - q)
    return reports
