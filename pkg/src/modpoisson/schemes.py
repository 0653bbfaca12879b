"""Signed approximation measures of order r and their manipulations.

The order-r scheme attached to a rate lam and residue coefficients
b_1..b_r is the signed measure nu with Fourier transform

    exp(lam (e^{i xi} - 1)) * (1 + sum_{s<=r} b_s (e^{i xi} - 1)^s),

evaluated pointwise through the explicit double sum

    nu(k) = sum_{0<=t<=s<=r} (-1)^(s-t) C(s,t) b_s Po_lam(k - t),

with b_0 = 1.  Order 0 is the Poisson law itself; consecutive orders
differ by a Poisson-Charlier polynomial term; negative mass can be
swept into a genuine probability distribution by `rectify_positive`;
and expectations against nu can be taken under the plain Poisson law
after a forward-difference transform of the integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .models import Pmf
from .symfunc import (Alphabet, ResidueCoeffs, power_sums_finite,
                      power_sums_infinite, virtual_residue_coeffs)

__all__ = [
    "SignedMeasure",
    "poisson_pmf",
    "scheme_measure",
    "charlier_delta",
    "derived_scheme",
    "rectify_positive",
    "expect_via_scheme",
]

#: Poisson support is extended until masses drop below this ...
_POINTWISE_CUTOFF = 1e-18
#: ... and the missing tail is below this, so truncation error is invisible
#: against the 1e-10 normalization contract.
_TAIL_CUTOFF = 1e-15


@dataclass(frozen=True)
class SignedMeasure:
    """Real-valued mass function on N with unit total."""

    offset: int
    masses: tuple
    total: float = 0.0

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError("offset must be >= 0")
        if not self.masses:
            raise ValueError("empty measure")
        object.__setattr__(self, "total", math.fsum(self.masses))
        if abs(self.total - 1.0) > 1e-10:
            raise ValueError(f"signed masses sum to {self.total!r}, not 1")

    def mass(self, k: int) -> float:
        j = k - self.offset
        return self.masses[j] if 0 <= j < len(self.masses) else 0.0

    def support(self) -> range:
        return range(self.offset, self.offset + len(self.masses))


def poisson_pmf(lam: float) -> Pmf:
    """Po(lam) on a support wide enough that the discarded tail is < 1e-15.

    Past k > lam the masses decay geometrically with ratio lam/(k+1), so
    sum_{j>k} m_j <= m_k * ratio / (1 - ratio) bounds the missing tail.
    """
    lam = float(lam)
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    log_lam = math.log(lam)
    masses = []
    k = 0
    while True:
        masses.append(math.exp(k * log_lam - lam - math.lgamma(k + 1)))
        if k > lam and masses[-1] < _POINTWISE_CUTOFF:
            ratio = lam / (k + 1.0)
            if masses[-1] * ratio / (1.0 - ratio) < _TAIL_CUTOFF:
                break
        k += 1
        if k > 10 ** 6:
            raise RuntimeError("Poisson support ran away")
    return Pmf(0, tuple(masses))


def scheme_measure(rc: ResidueCoeffs) -> SignedMeasure:
    """The order-r signed measure for rate rc.lam and coefficients rc.b.

    The double sum is regrouped by the shift t:
    nu(k) = sum_t w_t Po(k - t) with w_t = sum_{s>=t} (-1)^(s-t) C(s,t) b_s.
    """
    nu0 = np.asarray(poisson_pmf(rc.lam).masses)
    r = rc.order
    b = (1.0,) + tuple(rc.b)
    shift_weights = [
        math.fsum((-1) ** (s - t) * math.comb(s, t) * b[s] for s in range(t, r + 1))
        for t in range(r + 1)
    ]
    out = np.zeros(len(nu0) + r)
    for t, w in enumerate(shift_weights):
        out[t: t + len(nu0)] += w * nu0
    measure = SignedMeasure(0, tuple(out.tolist()))
    if abs(measure.total - 1.0) > 1e-10:
        raise AssertionError(f"scheme total {measure.total!r} violates normalization")
    return measure


def charlier_delta(lam: float, s: int, b_next: float, k: int) -> float:
    """Pointwise difference nu^(s+1)(k) - nu^(s)(k) for coefficient b_{s+1}.

    Equals b_{s+1} Po_lam(k) * sum_{l<=min(s+1,k)} (-1)^(s+1-l) C(s+1,l)
    k! lam^-l / (k-l)!; the falling factorial is accumulated as a product
    of (k-j)/lam ratios so nothing overflows near k ~ lam ~ 100.
    """
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    if s < 0 or k < 0:
        raise ValueError("need s >= 0 and k >= 0")
    nu_k = math.exp(k * math.log(lam) - lam - math.lgamma(k + 1))
    terms = []
    falling = 1.0
    for l in range(0, min(s + 1, k) + 1):
        if l > 0:
            falling *= (k - (l - 1)) / lam
        terms.append((-1) ** (s + 1 - l) * math.comb(s + 1, l) * falling)
    return b_next * nu_k * math.fsum(terms)


def derived_scheme(lam: float, limiting_alphabet: Alphabet, r: int) -> SignedMeasure:
    """Order-r scheme built from the limiting alphabet's residue coefficients."""
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    if r < 0:
        raise ValueError("r must be >= 0")
    if limiting_alphabet.kind == "finite":
        if not limiting_alphabet.weights:
            return scheme_measure(ResidueCoeffs(lam, (0.0,) * r))
        ps = power_sums_finite(limiting_alphabet.weights, max(2, r))
    else:
        ps = power_sums_infinite(limiting_alphabet, max(2, r))
    return scheme_measure(virtual_residue_coeffs(ps, r, lam))


def rectify_positive(nu: SignedMeasure) -> Pmf:
    """Sweep the negative mass of nu into the smallest feasible point.

    With beta the total negative mass, the result vanishes below the
    smallest N whose cumulative positive mass alpha_N exceeds beta, carries
    alpha_N - beta at N, and keeps max(0, nu) above N.  Total variation to
    any probability measure never increases.
    """
    beta = -math.fsum(m for m in nu.masses if m < 0.0)
    masses = list(nu.masses)
    if beta == 0.0:
        return Pmf.from_masses(nu.offset, masses)
    positives = []
    alpha = None
    big_n = None
    for j, m in enumerate(masses):
        if m > 0.0:
            positives.append(m)
            if math.fsum(positives) > beta:
                big_n = j
                alpha = math.fsum(positives)
                break
    if big_n is None:
        raise AssertionError("no feasible sweep point; input total was not 1")
    out = [0.0] * len(masses)
    out[big_n] = alpha - beta
    for j in range(big_n + 1, len(masses)):
        out[j] = max(0.0, masses[j])
    return Pmf.from_masses(nu.offset, out)


def expect_via_scheme(f, rc: ResidueCoeffs) -> float:
    """sum_k nu^(r)(k) f(k), evaluated as a plain Poisson expectation.

    Uses g(k) = f(k) + sum_s b_s (forward_difference^s f)(k) and
    E nu^(r)[f] = E Po(lam)[g], so only Poisson masses are ever needed.
    """
    nu0 = poisson_pmf(rc.lam)
    size = len(nu0.masses)
    r = rc.order
    values = np.array([float(f(k)) for k in range(size + r)])
    g = values[:size].copy()
    diff = values
    for s in range(1, r + 1):
        diff = diff[1:] - diff[:-1]
        g = g + rc.b[s - 1] * diff[:size]
    return math.fsum(np.asarray(nu0.masses) * g)
