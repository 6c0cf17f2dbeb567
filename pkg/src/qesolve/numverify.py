"""Independent floating-point check of the exact construction: discretize
the radial operator -d^2/dr^2 + l(l+1)/r^2 + V(r) with central differences
and Dirichlet ends, extract the lowest eigenvalues by bisection on Sturm
counts of the tridiagonal characteristic sequence, Richardson-extrapolate,
and compare with the leading-order energy predictions at large D.

This is the only module that leaves exact arithmetic.  Everything is
deterministic: fixed grids, fixed bisection tolerances, no randomness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .magyari import constrained_couplings, scaling_values


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid on (r_min, r_max) with ``count`` interior points and
    Dirichlet boundary values at both ends."""

    r_min: float
    r_max: float
    count: int

    def __post_init__(self):
        if self.count < 3:
            raise ValueError("need at least 3 interior points")
        if not (0 <= self.r_min < self.r_max):
            raise ValueError("need 0 <= r_min < r_max")

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.count + 1)

    def points(self) -> list:
        h = self.h
        return [self.r_min + (i + 1) * h for i in range(self.count)]

    def refined(self) -> "RadialGrid":
        """Same endpoints, half the spacing."""
        return RadialGrid(self.r_min, self.r_max, 2 * self.count + 1)


def _sturm_count(diag, esq, x) -> int:
    """Number of eigenvalues of the symmetric tridiagonal matrix below x."""
    count = 0
    q = diag[0] - x
    if q < 0:
        count += 1
    tiny = 1e-300
    for i in range(1, len(diag)):
        if q == 0.0:
            q = tiny
        q = diag[i] - x - esq[i - 1] / q
        if q < 0:
            count += 1
    return count


def tridiag_lowest_eigenvalues(diag, off, m, tol=1e-11) -> list:
    """Lowest m eigenvalues by bisection on the Sturm count."""
    n = len(diag)
    if m > n:
        raise ValueError("asked for more eigenvalues than matrix size")
    esq = [e * e for e in off]
    lo = min(diag[i] - (abs(off[i - 1]) if i else 0.0)
             - (abs(off[i]) if i < n - 1 else 0.0) for i in range(n))
    hi = max(diag[i] + (abs(off[i - 1]) if i else 0.0)
             + (abs(off[i]) if i < n - 1 else 0.0) for i in range(n))
    out = []
    for k in range(1, m + 1):
        a, b = lo, hi
        for _ in range(200):
            mid = 0.5 * (a + b)
            if _sturm_count(diag, esq, mid) >= k:
                b = mid
            else:
                a = mid
            if b - a <= tol * max(1.0, abs(mid)):
                break
        out.append(0.5 * (a + b))
    return out


def _tridiag_solve(diag, off, sigma, rhs) -> list:
    """Thomas solve of (T - sigma I) x = rhs."""
    n = len(diag)
    c = [0.0] * n
    d = [0.0] * n
    denom = diag[0] - sigma
    c[0] = off[0] / denom if n > 1 else 0.0
    d[0] = rhs[0] / denom
    for i in range(1, n):
        denom = diag[i] - sigma - off[i - 1] * c[i - 1]
        if denom == 0.0:
            denom = 1e-300
        if i < n - 1:
            c[i] = off[i] / denom
        d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / denom
    x = [0.0] * n
    x[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x


def ground_state_vector(diag, off, eigenvalue) -> list:
    """Inverse iteration for the eigenvector at an isolated eigenvalue."""
    n = len(diag)
    x = [1.0] * n
    sigma = eigenvalue + 1e-8 * max(1.0, abs(eigenvalue))
    for _ in range(4):
        x = _tridiag_solve(diag, off, sigma, x)
        nrm = max(abs(v) for v in x)
        x = [v / nrm for v in x]
    return x


@dataclass(frozen=True)
class NumericSpectrum:
    """Richardson-extrapolated lowest eigenvalues with error bounds."""

    values: tuple
    bounds: tuple
    coarse_values: tuple
    fine_values: tuple
    h: float
    count: int
    richardson_ok: bool

    def to_record(self) -> dict:
        return {
            "values": list(self.values),
            "bounds": list(self.bounds),
            "h": self.h,
            "points": self.count,
            "richardson_ok": self.richardson_ok,
        }


def radial_eigensolve(potential, ell, grid: RadialGrid, m: int,
                      richardson: bool = True) -> NumericSpectrum:
    """Lowest m eigenvalues of -d^2/dr^2 + l(l+1)/r^2 + V(r) on the grid.

    ``potential`` is a callable r -> V(r).  With ``richardson`` the grid is
    refined once (h -> h/2) and eigenvalues are extrapolated; the reported
    bound is |E_h - E_{h/2}| / 3 per level (the h^2 model's leftover).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    ll1 = float(ell) * (float(ell) + 1.0)

    def solve(g: RadialGrid):
        h = g.h
        inv_h2 = 1.0 / (h * h)
        diag = []
        for r in g.points():
            diag.append(2.0 * inv_h2 + (ll1 / (r * r) if ll1 else 0.0)
                        + potential(r))
        off = [-inv_h2] * (g.count - 1)
        return tridiag_lowest_eigenvalues(diag, off, m)

    coarse = solve(grid)
    if not richardson:
        return NumericSpectrum(tuple(coarse), tuple(float("inf"),) * m,
                               tuple(coarse), tuple(coarse), grid.h, m, False)
    fine = solve(grid.refined())
    extrap = [(4 * f - c) / 3 for c, f in zip(coarse, fine)]
    bounds = [abs(f - c) / 3 for c, f in zip(coarse, fine)]
    ok = all(b < max(1e-6, 1e-8 * abs(v)) or abs(c - f) < abs(c) * 0.05
             for c, f, v, b in zip(coarse, fine, extrap, bounds))
    return NumericSpectrum(tuple(extrap), tuple(bounds), tuple(coarse),
                           tuple(fine), grid.h, m, ok)


# ---------------------------------------------------------------------------
# benchmarks


@dataclass(frozen=True)
class HarmonicBenchmark:
    numeric: tuple
    exact: tuple          # omega (4n + 2l + 3)
    alternative: tuple    # omega (2n + l + 3/2)
    max_rel_err: float
    convention: str

    def to_record(self) -> dict:
        return {
            "numeric": list(self.numeric),
            "exact_4n": list(self.exact),
            "alt_2n": list(self.alternative),
            "max_rel_err": self.max_rel_err,
            "convention": self.convention,
        }


def harmonic_benchmark(omega: float = 1.0, ell: int = 0, levels: int = 3,
                       r_max: float = 12.0, points: int = 2400
                       ) -> HarmonicBenchmark:
    """Radial harmonic oscillator; also settles the spectrum convention:
    the discretized operator matches omega(4n + 2l + 3)."""
    grid = RadialGrid(0.0, r_max, points)
    spec = radial_eigensolve(lambda r: omega * omega * r * r, ell, grid,
                             levels)
    exact = tuple(omega * (4 * n + 2 * ell + 3) for n in range(levels))
    alt = tuple(omega * (2 * n + ell + 1.5) for n in range(levels))
    err = max(abs(v - e) / e for v, e in zip(spec.values, exact))
    err_alt = max(abs(v - e) / e for v, e in zip(spec.values, alt))
    convention = "E = omega(4n+2l+3)" if err < err_alt else \
        "E = omega(2n+l+3/2)"
    return HarmonicBenchmark(spec.values, exact, alt, err, convention)


def particle_in_box_levels(width: float, levels: int, points: int = 2000
                           ) -> tuple:
    grid = RadialGrid(0.0, width, points)
    spec = radial_eigensolve(lambda r: 0.0, 0, grid, levels)
    return spec.values


# ---------------------------------------------------------------------------
# effective potential and large-D window placement


def effective_potential(couplings, ell):
    """Callable and its first two derivatives, all analytic."""
    gs = [float(g) for g in couplings]
    ll1 = float(ell) * (float(ell) + 1.0)

    def f(r):
        acc = ll1 / (r * r)
        p = r * r
        for g in gs:
            acc += g * p
            p *= r * r
        return acc

    def fp(r):
        acc = -2.0 * ll1 / r ** 3
        for k, g in enumerate(gs):
            acc += (2 * k + 2) * g * r ** (2 * k + 1)
        return acc

    def fpp(r):
        acc = 6.0 * ll1 / r ** 4
        for k, g in enumerate(gs):
            acc += (2 * k + 2) * (2 * k + 1) * g * r ** (2 * k)
        return acc

    return f, fp, fpp


def effective_minimum(couplings, ell) -> float:
    """Location of the outer minimum (derivative sign change bracket)."""
    _, fp, _ = effective_potential(couplings, ell)
    lo = 1e-4
    while fp(lo) > 0:
        lo /= 4.0
        if lo < 1e-30:
            raise ValueError("no centrifugal barrier found")
    hi = max(1.0, 2 * lo)
    while fp(hi) < 0:
        hi *= 2.0
        if hi > 1e12:
            raise ValueError("effective potential has no outer minimum")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if fp(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def window_grid(couplings, ell, width_sigmas: float = 40.0,
                points_per_sigma: float = 40.0) -> RadialGrid:
    """Grid centered on the effective-potential minimum, sized in local
    oscillator lengths sigma = (V''(R)/2)^(-1/4)."""
    _, _, fpp = effective_potential(couplings, ell)
    rstar = effective_minimum(couplings, ell)
    sigma = (fpp(rstar) / 2.0) ** -0.25
    w = min(width_sigmas * sigma, 0.85 * rstar)
    count = max(int(2 * w / sigma * points_per_sigma), 400)
    return RadialGrid(rstar - w, rstar + w, count)


# ---------------------------------------------------------------------------
# large-D trend


@dataclass(frozen=True)
class TrendRow:
    dimension: Fraction
    s_value: Fraction
    predicted: float
    numeric: float
    rel_err: float
    abs_err: float
    bound: float
    second_nearest_gap: float

    def to_record(self) -> dict:
        return {
            "D": str(self.dimension),
            "s": str(self.s_value),
            "predicted": self.predicted,
            "numeric": self.numeric,
            "rel_err": self.rel_err,
            "abs_err": self.abs_err,
            "bound": self.bound,
            "second_nearest_gap": self.second_nearest_gap,
        }


@dataclass(frozen=True)
class TrendReport:
    rows: tuple
    monotone: bool

    def to_record(self) -> dict:
        return {"rows": [r.to_record() for r in self.rows],
                "monotone_decreasing": self.monotone}

    def to_csv(self) -> str:
        lines = ["D,s,predicted,numeric,rel_err,abs_err,bound,second_gap"]
        for r in self.rows:
            lines.append(
                f"{r.dimension},{r.s_value},{r.predicted!r},{r.numeric!r},"
                f"{r.rel_err!r},{r.abs_err!r},{r.bound!r},"
                f"{r.second_nearest_gap!r}")
        return "\n".join(lines) + "\n"


def sextic_trend(alpha0, alpha1, n_states: int, dims, svalues,
                 angular_l: int = 0, levels: int = 6,
                 width_sigmas: float = 40.0, flip_sign: bool = False
                 ) -> TrendReport:
    """Leading-order q=1 energies against the numeric spectrum across D.

    For each D builds the constrained sextic couplings, solves numerically
    in a window around the effective minimum, and compares the prediction
    E = alpha_0 D + tau sqrt-scale s to the nearest eigenvalue.  The trend
    passes when the relative error decreases monotonically along ``dims``
    for every s.  ``flip_sign`` negates s in the prediction (negative
    control: the error then grows in absolute terms).
    """
    alpha0, alpha1 = Fraction(alpha0), Fraction(alpha1)
    gamma = alpha1
    rows = []
    for dim in dims:
        dim = Fraction(dim)
        ell = angular_l + (dim - 3) / 2
        gs = constrained_couplings(1, (alpha0, alpha1), n_states, ell)
        grid = window_grid(gs, ell, width_sigmas=width_sigmas)
        spec = radial_eigensolve(
            lambda r, _g=[float(g) for g in gs]:
                _g[0] * r ** 2 + _g[1] * r ** 4 + _g[2] * r ** 6,
            ell, grid, levels)
        _, tau = scaling_values(1, dim, gamma)
        for s in svalues:
            s = Fraction(s)
            s_used = -s if flip_sign else s
            predicted = float(alpha0) * float(dim) + float(tau) * float(s_used)
            # the level a prediction is *for* is located by the true value;
            # with flip_sign the wrong-sign prediction is still held against
            # that level (negative control)
            anchor = float(alpha0) * float(dim) + float(tau) * float(s)
            nearest = min(spec.values, key=lambda v: abs(v - anchor))
            idx = spec.values.index(nearest)
            diffs = sorted(abs(v - predicted) for v in spec.values)
            rows.append(TrendRow(
                dim, s, predicted, nearest,
                abs(nearest - predicted) / abs(nearest),
                abs(nearest - predicted),
                spec.bounds[idx],
                diffs[1] - diffs[0] if len(diffs) > 1 else float("inf")))
    monotone = True
    for s in {r.s_value for r in rows}:
        errs = [r.rel_err for r in rows if r.s_value == s]
        monotone = monotone and all(a > b for a, b in zip(errs, errs[1:]))
    return TrendReport(tuple(rows), monotone)


def q0_trend(omega, dims, angular_l: int = 0) -> TrendReport:
    """Leading-order harmonic energy 2 omega^2 R^2 + 2 omega against the
    numeric ground state; the deviation shrinks as D grows."""
    omega = Fraction(omega)
    rows = []
    for dim in dims:
        dim = Fraction(dim)
        ell = angular_l + (dim - 3) / 2
        gs = [omega * omega]
        grid = window_grid(gs, ell)
        spec = radial_eigensolve(
            lambda r, _w=float(omega): _w * _w * r * r, ell, grid, 2)
        rbig = (float(ell) * (float(ell) + 1) / float(omega) ** 2) ** 0.25
        predicted = 2 * float(omega) ** 2 * rbig ** 2 + 2 * float(omega)
        numeric = spec.values[0]
        rows.append(TrendRow(
            dim, Fraction(0), predicted, numeric,
            abs(numeric - predicted) / abs(numeric),
            abs(numeric - predicted), spec.bounds[0], float("inf")))
    errs = [r.rel_err for r in rows]
    return TrendReport(tuple(rows), all(a > b for a, b in zip(errs, errs[1:])))
