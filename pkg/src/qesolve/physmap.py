"""Mapping between dimensionless solution tuples and physical spectra:
potential evaluation, the change-of-variable potential catalog, and
energy/coupling tables for solved instances.

Energies come from E = -g_{-1} with g_{k-2} = -alpha_{k-1} D -
(tau/mu^(k-1)) s_k; for the sextic family this is the familiar
E = (g_1/(2 sqrt(g_2))) D + (64 g_2)^(1/4) sqrt(D) s (the two prefactor
forms agree identically, see ``q1_prefactor_identity``).

Note on the generator identity: V - U - r^2 W^2 vanishes identically for
q >= 2; at q = 1 the sextic coupling convention leaves exactly
alpha_0^2 r^2 (its quadratic slot absorbs an extra alpha_0^2), and the
identity check below accounts for that.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .magyari import (
    PotentialSpec,
    PowerMonomial,
    QesSystem,
    coupling_map,
    reparam_couplings,
    scaling,
)


def _fr(x):
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# potentials


def potential_eval(p: PotentialSpec, r) -> Fraction:
    """V(r) = sum_k g_k r^(2k+2) for r > 0 (exact for rational r)."""
    r = _fr(r)
    if r <= 0:
        raise ValueError("potential evaluated at r > 0 only")
    gs = p.couplings if p.couplings is not None else coupling_map(p).couplings
    r2 = r * r
    acc = Fraction(0)
    power = r2
    for g in gs:
        acc += g * power
        power *= r2
    return acc


def generator_identity_residual(p: PotentialSpec) -> list:
    """Coefficients (in powers of r^2, starting at r^2) of
    V - U - r^2 W^2.  Zero list for q >= 2; [alpha_0^2] for q = 1."""
    if p.alphas is None:
        p = coupling_map(p)
    q = p.q
    al, gees = p.alphas, p.gees
    gs = coupling_map(PotentialSpec(q, alphas=al, gees=gees)).couplings
    out = []
    for k in range(2 * q + 1):
        w2 = Fraction(0)
        for i in range(max(0, k - q), min(k, q) + 1):
            w2 += al[i] * al[k - i]
        u = gees[k] if k < q else Fraction(0)
        out.append(gs[k] - u - w2)
    while out and out[-1] == 0:
        out.pop()
    return out


@dataclass(frozen=True)
class PotentialFamily:
    """One power-law change-of-variable image of the canonical potential:
    exponent list delta(j) = 2(j+1)/k - 2, j = 0..2q+1, constant terms
    merged away."""

    q: int
    k: int
    exponents: tuple

    @property
    def max_exponent(self) -> Fraction:
        return max(self.exponents)

    def slots(self) -> list:
        letters = "abcdefghijklmn"
        return [f"{letters[i]} r^{e}" for i, e in enumerate(self.exponents)]


def potential_catalog(q: int, k: int) -> PotentialFamily:
    """The k-th equivalent potential family, k = 1..2q+2."""
    if not 1 <= k <= 2 * q + 2:
        raise ValueError(f"k must lie in 1..{2 * q + 2}")
    exps = []
    for j in range(2 * q + 2):
        delta = Fraction(2 * (j + 1), k) - 2
        if delta != 0:
            exps.append(delta)
    return PotentialFamily(q, k, tuple(exps))


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class SpectrumEntry:
    label: tuple            # (j,) or (j, k) style level index
    svalues: tuple          # s_1..s_q (exact)
    energy: object          # Fraction when scaling is exact, else float
    couplings: tuple        # g_{-1}..g_{q-2}

    def to_record(self) -> dict:
        return {
            "level": list(self.label),
            "s": [str(v) for v in self.svalues],
            "energy": _num_record(self.energy),
            "couplings": [_num_record(c) for c in self.couplings],
        }


def _num_record(x):
    if isinstance(x, Fraction):
        return str(x)
    return float(x)


@dataclass(frozen=True)
class PhysicalSpectrum:
    q: int
    n_states: int
    dimension: Fraction
    gamma: Fraction
    alphas: tuple
    entries: tuple

    def to_record(self) -> dict:
        return {
            "q": self.q,
            "N": self.n_states,
            "D": str(self.dimension),
            "gamma": str(self.gamma),
            "alphas": [str(a) for a in self.alphas],
            "entries": [e.to_record() for e in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "N", "D", "level", "s_tuple", "energy", "couplings"])
        for e in self.entries:
            w.writerow([
                self.q, self.n_states, str(self.dimension),
                ";".join(map(str, e.label)),
                ";".join(str(v) for v in e.svalues),
                _num_record(e.energy),
                ";".join(str(_num_record(c)) for c in e.couplings),
            ])
        return buf.getvalue()


def spectrum_from_tuples(sys: QesSystem, tuples) -> PhysicalSpectrum:
    """Physical energies and couplings for solved dimensionless tuples.

    ``tuples`` are (s_1..s_q) value sequences (Fractions; Surds are
    evaluated through floats since the scaling is irrational anyway).
    """
    if sys.dimension is None:
        raise ValueError("numeric D required")
    pot = sys.potential if sys.potential.alphas is not None \
        else coupling_map(sys.potential)
    gamma = pot.gamma
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    entries = []
    for j, tup in enumerate(tuples, start=1):
        svals = tuple(tup)
        num = [v if isinstance(v, Fraction) else _surd_or_float(v)
               for v in svals]
        cs = reparam_couplings(num, sys.dimension, gamma, pot.alphas)
        energy = -cs[0]
        entries.append(SpectrumEntry((j,), svals, energy, tuple(cs)))
    entries.sort(key=lambda e: float(e.energy))
    entries = tuple(
        SpectrumEntry((j,), e.svalues, e.energy, e.couplings)
        for j, e in enumerate(entries, start=1))
    return PhysicalSpectrum(sys.q, sys.n_states, sys.dimension, gamma,
                            pot.alphas, entries)


def _surd_or_float(v):
    try:
        return v.rational_value()
    except (AttributeError, ValueError):
        return float(v)


def q1_energy_display(g1, g2, dimension, s) -> float:
    """The sextic energy in display form
    E = (g_1/(2 sqrt(g_2))) D + (64 g_2)^(1/4) sqrt(D) s."""
    g1, g2, d = float(g1), float(g2), float(dimension)
    return g1 / (2 * g2 ** 0.5) * d + (64 * g2) ** 0.25 * d ** 0.5 * float(s)


def q1_prefactor_identity() -> bool:
    """(64 g_2)^(1/4) sqrt(D) equals tau(D) at q = 1, as formal monomials
    in 2, gamma, D (g_2 = gamma^2)."""
    # (64 gamma^2)^(1/4) D^(1/2) = 2^(3/2) gamma^(1/2) D^(1/2)
    display = PowerMonomial(Fraction(3, 2), Fraction(1, 2), Fraction(1, 2))
    return display == scaling(1).tau
