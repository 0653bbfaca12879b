"""Symmetric-function specializations of weight alphabets.

The objects of interest are the power sums p_k = sum_i (a_i)^k of an
alphabet A of weights in [0, 1] (finite, or infinite with square-summable
tail), the elementary symmetric values e_k recovered from them through the
Newton identities, and the "virtual" specialization A' that keeps
p_{k>=2}(A) but forces p_1 = 0.  The numbers e_s(A') are exactly the
coefficients b_s of the expansion of

    prod_i (1 + a_i*z) * exp(-a_i*z)

in powers of z, i.e. the deconvolution residue of a Bernoulli-type model
once the first-order (Poisson) part has been divided out.  Those
coefficients drive the signed approximation schemes in `schemes`.

Infinite alphabets are never enumerated: their power sums are evaluated
through zeta-type series with analytic tail corrections, to the tolerance
carried by the alphabet.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from ._arith import irreducible_count, mobius, prime_power_base, primes_up_to

__all__ = [
    "Alphabet",
    "PowerSums",
    "ResidueCoeffs",
    "ToleranceError",
    "power_sums_finite",
    "power_sums_infinite",
    "elementary_from_power",
    "power_from_elementary",
    "virtual_residue_coeffs",
    "residue_series_eval",
    "residue_product_eval",
    "stirling2",
    "stirling2_elementary_bridge",
]

ALPHABET_KINDS = ("finite", "ewens_limit", "harmonic", "omega_limit", "fq_limit")

#: double-precision floor for the tail-corrected series below
_MIN_TOLERANCE = 1e-13


class ToleranceError(ValueError):
    """A requested tail tolerance cannot be met with the configured cutoffs."""


@dataclass(frozen=True)
class Alphabet:
    """A weight alphabet: finite list or one of the named infinite families.

    kinds:
      finite       explicit weights in [0, 1]
      ewens_limit  {theta/(theta+n-1), n >= 1}
      harmonic     {1/n, n >= 1}
      omega_limit  harmonic together with {1/p, p prime}
      fq_limit     harmonic together with {q^-deg(P), P monic irreducible}
    """

    kind: str
    weights: tuple = ()
    theta: float = 0.0
    q: int = 0
    tolerance: float = 1e-12

    def __post_init__(self):
        if self.kind not in ALPHABET_KINDS:
            raise ValueError(f"unknown alphabet kind {self.kind!r}")
        if not (0.0 < self.tolerance):
            raise ValueError("tolerance must be positive")
        if self.kind == "finite":
            for w in self.weights:
                if not (0.0 <= w <= 1.0):
                    raise ValueError(f"finite weights must lie in [0, 1], got {w}")
        elif self.kind == "ewens_limit":
            if not self.theta > 0.0:
                raise ValueError("ewens_limit needs theta > 0")
        elif self.kind == "fq_limit":
            if prime_power_base(self.q) is None:
                raise ValueError("fq_limit needs a prime power q >= 2")

    @classmethod
    def finite(cls, weights, tolerance=1e-12):
        return cls("finite", weights=tuple(float(w) for w in weights), tolerance=tolerance)

    @classmethod
    def ewens_limit(cls, theta, tolerance=1e-12):
        return cls("ewens_limit", theta=float(theta), tolerance=tolerance)

    @classmethod
    def harmonic(cls, tolerance=1e-12):
        return cls("harmonic", tolerance=tolerance)

    @classmethod
    def omega_limit(cls, tolerance=1e-12):
        return cls("omega_limit", tolerance=tolerance)

    @classmethod
    def fq_limit(cls, q, tolerance=1e-12):
        return cls("fq_limit", q=int(q), tolerance=tolerance)


@dataclass(frozen=True)
class PowerSums:
    """Values p_1..p_K of the Newton power sums of some alphabet.

    For the infinite kinds p_1 diverges and is stored as +inf; only the
    virtual specialization (p_1 := 0) is ever consumed downstream.
    """

    values: tuple

    def __post_init__(self):
        if len(self.values) < 2:
            raise ValueError("power sums must extend at least to k = 2")

    @property
    def kmax(self) -> int:
        return len(self.values)

    @property
    def sigma2(self) -> float:
        """Second power sum, the sigma^2 of the alphabet."""
        return self.values[1]

    def p(self, k: int) -> float:
        if not 1 <= k <= self.kmax:
            raise ValueError(f"p_{k} not available (kmax={self.kmax})")
        return self.values[k - 1]


@dataclass(frozen=True)
class ResidueCoeffs:
    """Poisson rate plus residue expansion coefficients b_1..b_r.

    Virtual-alphabet constructors always emit b_1 = 0; a nonzero b_1 is
    accepted everywhere (no automatic recentering of lam, which would also
    change the higher coefficients).
    """

    lam: float
    b: tuple = ()

    def __post_init__(self):
        if not self.lam > 0.0:
            raise ValueError("lam must be positive")

    @property
    def order(self) -> int:
        return len(self.b)


def power_sums_finite(weights, kmax: int) -> PowerSums:
    """p_k = sum_i weights_i^k for k = 1..kmax, compensated summation."""
    weights = tuple(float(w) for w in weights)
    if not weights:
        raise ValueError("empty weight list")
    if kmax < 2:
        raise ValueError("kmax must be >= 2")
    vals = tuple(math.fsum(w ** k for w in weights) for k in range(1, kmax + 1))
    return PowerSums(vals)


def power_sums_infinite(alphabet: Alphabet, kmax: int) -> PowerSums:
    """Tail-corrected power sums of one of the infinite alphabet families.

    harmonic:     p_k = zeta(k)
    ewens_limit:  p_k = theta^k * hurwitz_zeta(k, theta)
    omega_limit:  p_k = zeta(k) + prime_zeta(k)
    fq_limit:     p_k = zeta(k) + sum_m I_q(m) q^(-k m)

    p_1 is divergent for all of these and reported as +inf.
    """
    if alphabet.kind == "finite":
        raise ValueError("power_sums_infinite needs an infinite alphabet kind")
    if kmax < 2:
        raise ValueError("kmax must be >= 2")
    if alphabet.tolerance < _MIN_TOLERANCE:
        raise ToleranceError(
            f"tolerance {alphabet.tolerance:g} is below the double-precision "
            f"floor {_MIN_TOLERANCE:g} of the tail-corrected series"
        )
    vals = [math.inf]
    for k in range(2, kmax + 1):
        vals.append(_infinite_power_sum(alphabet, k))
    return PowerSums(tuple(vals))


def _infinite_power_sum(alphabet: Alphabet, k: int) -> float:
    tol = alphabet.tolerance
    if alphabet.kind == "harmonic":
        return zeta(k)
    if alphabet.kind == "ewens_limit":
        th = alphabet.theta
        return th ** k * zeta(k, th)
    if alphabet.kind == "omega_limit":
        return zeta(k) + prime_zeta(k, tol)
    if alphabet.kind == "fq_limit":
        return zeta(k) + _fq_degree_series(alphabet.q, k, tol)
    raise AssertionError(alphabet.kind)


@lru_cache(maxsize=8192)
def zeta(s: float, a: float = 1.0) -> float:
    """Hurwitz zeta(s, a) = sum_{j>=0} (a+j)^-s for s >= 2, a > 0.

    Partial sum plus integral tail plus the first two Euler-Maclaurin
    corrections; the remainder is O(s^3 (a+N)^(-s-3)), far below 1e-13 for
    the cutoffs used here.
    """
    if s < 2:
        raise ValueError("zeta tail scheme needs s >= 2")
    if s >= 10:
        n_terms = 100
    elif s >= 6:
        n_terms = 1000
    else:
        n_terms = 10000
    partial = math.fsum((a + j) ** (-s) for j in range(n_terms))
    t = a + n_terms
    tail = t ** (1 - s) / (s - 1) + 0.5 * t ** (-s) + s / 12.0 * t ** (-s - 1)
    return partial + tail


def prime_zeta(s: float, tol: float = 1e-13) -> float:
    """prime_zeta(s) = sum_p p^-s via the Moebius-zeta identity.

    P(s) = sum_{m>=1} mu(m)/m * log zeta(s m); the terms decay like
    2^(-s m), so the truncation is geometric.
    """
    if s < 2:
        raise ValueError("prime zeta evaluated for s >= 2 only")
    total = 0.0
    for m in range(1, 600):
        sm = s * m
        if sm > 1070:  # 2^-sm underflows; remaining terms are below 1e-300
            return total
        log_z = math.log(zeta(sm)) if sm < 55 else 2.0 ** (-sm) * (1.0 + 2.0 ** (-sm))
        mu = mobius(m)
        if mu:
            total += mu / m * log_z
        if log_z / m < tol / 10.0:
            return total
    raise ToleranceError(f"prime zeta({s}) did not reach tolerance {tol:g}")


def _fq_degree_series(q: int, k: int, tol: float) -> float:
    """sum_{m>=1} I_q(m) q^(-k m), truncated on a geometric tail bound."""
    ratio = float(q) ** (1 - k)
    total = 0.0
    for m in range(1, 2000):
        total += irreducible_count(q, m) * float(q) ** (-k * m)
        # I_q(j) <= q^j / j, so the tail past m is below the geometric bound
        tail_bound = ratio ** (m + 1) / ((m + 1) * (1.0 - ratio))
        if tail_bound < tol / 10.0:
            return total
    raise ToleranceError(f"fq power-sum series (q={q}, k={k}) did not reach {tol:g}")


def _newton_elementary(p, rmax: int):
    """e_0..e_rmax from p_1..p_rmax via k e_k = sum_i (-1)^(i-1) p_i e_(k-i)."""
    e = [0.0] * (rmax + 1)
    e[0] = 1.0
    for k in range(1, rmax + 1):
        e[k] = math.fsum((-1) ** (i - 1) * p[i - 1] * e[k - i] for i in range(1, k + 1)) / k
    return e


def elementary_from_power(ps: PowerSums, rmax: int):
    """Elementary symmetric values e_0..e_rmax by the Newton recursion.

    The recursion is the O(r^2) form of the partition-sum change of basis
    encoded by E(z) = exp(-P(-z)).
    """
    if rmax > ps.kmax:
        raise ValueError(f"rmax={rmax} exceeds available power sums (kmax={ps.kmax})")
    p = ps.values[:rmax]
    if any(not math.isfinite(v) for v in p):
        raise ValueError("power sums must be finite; use virtual_residue_coeffs "
                         "for infinite alphabets (p_1 -> 0)")
    return _newton_elementary(p, rmax)


def power_from_elementary(e, kmax: int):
    """Inverse Newton recursion: recover p_1..p_kmax from e_0..e_kmax."""
    if len(e) < kmax + 1:
        raise ValueError("need e_0..e_kmax")
    p = [0.0] * kmax
    for k in range(1, kmax + 1):
        acc = math.fsum((-1) ** (i - 1) * p[i - 1] * e[k - i] for i in range(1, k))
        p[k - 1] = (-1) ** (k - 1) * (k * e[k] - acc)
    return p


def virtual_residue_coeffs(ps: PowerSums, rmax: int, lam: float) -> ResidueCoeffs:
    """Residue coefficients b_s = e_s(A') of the specialization with p_1 = 0.

    b_1 = 0 by construction; b_2 = -p_2/2, b_3 = p_3/3,
    b_4 = p_2^2/8 - p_4/4, and so on through the Newton recursion.
    """
    if rmax > ps.kmax:
        raise ValueError(f"rmax={rmax} exceeds available power sums (kmax={ps.kmax})")
    p = (0.0,) + tuple(ps.values[1:rmax])
    e = _newton_elementary(p, rmax)
    return ResidueCoeffs(lam=float(lam), b=tuple(e[1:]))


def residue_series_eval(rc: ResidueCoeffs, z) -> complex:
    """1 + sum_{s=1}^r b_s z^s, Horner evaluation."""
    z = complex(z)
    acc = 0.0 + 0.0j
    for b in reversed(rc.b):
        acc = acc * z + b
    return 1.0 + z * acc


# --- residue evaluated from the product form -------------------------------

def _zeta_tail(k: int, start: int) -> float:
    """sum_{n > start} n^-k"""
    return zeta(k, float(start + 1))


def residue_product_eval(alphabet: Alphabet, z, tolerance=None) -> complex:
    """E(A', z) = prod_i (1 + a_i z) exp(-a_i z) over the whole alphabet.

    Finite alphabets use the literal product.  Infinite ones split off a
    head of large weights (so that |z| * max tail weight <= 1/2), take the
    literal product over the head, and exponentiate the log-series

        sum_{k>=2} (-1)^(k-1) p_k(tail) z^k / k

    of the remaining tail, whose power sums are the tail-corrected full
    sums minus the head contributions.
    """
    tol = alphabet.tolerance if tolerance is None else tolerance
    z = complex(z)
    if alphabet.kind == "finite":
        prod = 1.0 + 0.0j
        for a in alphabet.weights:
            prod *= (1.0 + a * z) * cmath.exp(-a * z)
        return prod
    if z == 0:
        return 1.0 + 0.0j

    az = abs(z)
    head, tail_power = _split_head(alphabet, az)
    prod = 1.0 + 0.0j
    for a, count in head:
        factor = (1.0 + a * z) * cmath.exp(-a * z)
        prod *= factor ** count if count > 1 else factor

    # log-series of the tail; terms decay at least like 2^-k
    series = 0.0 + 0.0j
    p2_tail = tail_power(2)
    for k in range(2, 600):
        pk_tail = tail_power(k)
        term = (-1) ** (k - 1) * pk_tail * z ** k / k
        series += term
        # remaining terms are below p2_tail * (|z|/2)^... geometric with ratio <= 1/2
        bound = p2_tail * az * az * 0.5 ** (k - 1) / (k + 1) * 2.0
        if bound < tol / 10.0 and k >= 4:
            break
    else:
        raise ToleranceError("residue product log-series did not converge")
    return prod * cmath.exp(series)


def _split_head(alphabet: Alphabet, az: float):
    """Head weights (with multiplicities) and a tail power-sum evaluator.

    The head is chosen so every remaining weight a satisfies a * az <= 1/2,
    which makes the tail log-series geometrically convergent.
    """
    tol = alphabet.tolerance
    if alphabet.kind == "harmonic":
        n0 = max(1, math.ceil(2.0 * az))
        if n0 > 10 ** 6:
            raise ToleranceError(f"divergent tail request: |z| = {az:g} is too large")
        head = [(1.0 / n, 1) for n in range(1, n0 + 1)]
        tail = lambda k: _zeta_tail(k, n0)
        return head, tail
    if alphabet.kind == "ewens_limit":
        th = alphabet.theta
        n0 = max(1, math.ceil(2.0 * th * az))
        if n0 > 10 ** 6:
            raise ToleranceError(f"divergent tail request: |z| = {az:g} is too large")
        head = [(th / (th + n - 1.0), 1) for n in range(1, n0 + 1)]
        tail = lambda k: th ** k * zeta(k, th + n0)
        return head, tail
    if alphabet.kind == "omega_limit":
        n0 = max(2, math.ceil(2.0 * az))
        if n0 > 10 ** 6:
            raise ToleranceError(f"divergent tail request: |z| = {az:g} is too large")
        head_primes = primes_up_to(n0)
        head = [(1.0 / n, 1) for n in range(1, n0 + 1)]
        head += [(1.0 / p, 1) for p in head_primes]
        tail = lambda k: (_zeta_tail(k, n0)
                          + prime_zeta(k, tol)
                          - math.fsum(p ** float(-k) for p in head_primes))
        return head, tail
    if alphabet.kind == "fq_limit":
        q = alphabet.q
        n0 = max(1, math.ceil(2.0 * az))
        m0 = 0
        while float(q) ** (m0 + 1) < 2.0 * az:
            m0 += 1
        if n0 > 10 ** 6 or m0 > 60:
            raise ToleranceError(f"divergent tail request: |z| = {az:g} is too large")
        head = [(1.0 / n, 1) for n in range(1, n0 + 1)]
        head += [(float(q) ** (-m), irreducible_count(q, m)) for m in range(1, m0 + 1)]

        def tail(k, _q=q, _n0=n0, _m0=m0):
            deg_side = _fq_degree_series(_q, k, tol)
            deg_head = math.fsum(irreducible_count(_q, m) * float(_q) ** (-k * m)
                                 for m in range(1, _m0 + 1))
            return _zeta_tail(k, _n0) + deg_side - deg_head

        return head, tail
    raise AssertionError(alphabet.kind)


# --- moment bridge ----------------------------------------------------------

@lru_cache(maxsize=None)
def stirling2(k: int, l: int) -> int:
    """Stirling set-partition number: partitions of {1..k} into l blocks."""
    if k == l == 0:
        return 1
    if k == 0 or l == 0 or l > k:
        return 0
    return l * stirling2(k - 1, l) + stirling2(k - 1, l - 1)


def stirling2_elementary_bridge(moments):
    """Recover e_1..e_r of the weights from raw moments of a Bernoulli sum.

    Inverts the unitriangular system M_k = sum_l l! S(k, l) e_l, where
    S(k, l) counts set partitions.  This is what makes order-r schemes
    computable from the first r moments of data alone.
    """
    moments = [float(m) for m in moments]
    r = len(moments)
    e = [0.0] * (r + 1)
    for k in range(1, r + 1):
        acc = math.fsum(math.factorial(l) * stirling2(k, l) * e[l] for l in range(1, k))
        e[k] = (moments[k - 1] - acc) / math.factorial(k)
    return e[1:]
