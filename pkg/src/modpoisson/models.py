"""Exact finite-support distributions for the four model families.

Every model is computed exactly (dynamic programming over floats with
compensated totals, or big-integer / rational polynomial recursions) and
exposed as a plain mass function:

  bernoulli_sum        X = sum of independent Be(p_i)
  weighted_perm        number of cycles under cycle-weighted permutation
                       measures, pgf h_n(w Theta) / h_n(Theta)
  ewens                the constant-weight special case theta_k = theta
  fq_poly              number of distinct irreducible factors of a uniform
                       monic degree-n polynomial over F_q
  omega                number of distinct prime divisors of a uniform
                       integer in {1..N}

plus the mod-Poisson rate lam_n of each family and the empirical residue
(ratio of the model pgf to the Poisson pgf), which is what the rate checks
measure against the limiting product form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._arith import irreducible_count, mobius, prime_power_base
from .symfunc import Alphabet, ToleranceError

__all__ = [
    "EULER_GAMMA",
    "Pmf",
    "RationalPmf",
    "ModelSpec",
    "bernoulli_sum_pmf",
    "weighted_perm_cycle_pmf",
    "weighted_perm_normalization",
    "ewens_cycle_pmf",
    "gauss_irreducible_count",
    "fq_factor_pmf",
    "omega_values",
    "omega_pmf",
    "model_lambda",
    "gamma_theta",
    "r_q",
    "empirical_residue",
]

EULER_GAMMA = 0.5772156649015329

#: masses this small are pure float underflow noise and may be trimmed
_UNDERFLOW = 1e-320


@dataclass(frozen=True)
class Pmf:
    """Probability mass function on a contiguous integer window.

    masses[j] is the probability of offset + j; the window edges carry
    nonzero mass.  total is the compensated sum and must be 1 within 1e-10
    (truncation of sub-1e-300 tails keeps it far inside that).
    """

    offset: int
    masses: tuple
    total: float = 0.0

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError("offset must be >= 0")
        if not self.masses:
            raise ValueError("empty mass function")
        if any(m < 0.0 for m in self.masses):
            raise ValueError("negative mass in a Pmf")
        object.__setattr__(self, "total", math.fsum(self.masses))
        if abs(self.total - 1.0) > 1e-10:
            raise ValueError(f"masses sum to {self.total!r}, not 1")

    @classmethod
    def from_masses(cls, offset, masses):
        """Build a Pmf, trimming zero (or underflow-level) edges."""
        masses = list(masses)
        lo, hi = 0, len(masses)
        while lo < hi - 1 and masses[lo] <= _UNDERFLOW:
            lo += 1
        while hi - 1 > lo and masses[hi - 1] <= _UNDERFLOW:
            hi -= 1
        return cls(offset + lo, tuple(masses[lo:hi]))

    def mass(self, k: int) -> float:
        j = k - self.offset
        return self.masses[j] if 0 <= j < len(self.masses) else 0.0

    def support(self) -> range:
        return range(self.offset, self.offset + len(self.masses))

    def mean(self) -> float:
        return math.fsum(k * m for k, m in zip(self.support(), self.masses))

    def variance(self) -> float:
        mu = self.mean()
        return math.fsum((k - mu) ** 2 * m for k, m in zip(self.support(), self.masses))


@dataclass(frozen=True)
class RationalPmf:
    """Exact-rational mass function; totals exactly 1."""

    offset: int
    masses: tuple  # of Fraction

    def __post_init__(self):
        if sum(self.masses, Fraction(0)) != 1:
            raise ValueError("rational masses must sum to exactly 1")
        if any(m < 0 for m in self.masses):
            raise ValueError("negative mass")

    def mass(self, k: int) -> Fraction:
        j = k - self.offset
        return self.masses[j] if 0 <= j < len(self.masses) else Fraction(0)

    def support(self) -> range:
        return range(self.offset, self.offset + len(self.masses))

    @property
    def total(self) -> float:
        return 1.0  # exact by construction

    def to_float(self) -> Pmf:
        return Pmf.from_masses(self.offset, [float(m) for m in self.masses])


def _trim_rational(offset, masses):
    lo, hi = 0, len(masses)
    while lo < hi - 1 and masses[lo] == 0:
        lo += 1
    while hi - 1 > lo and masses[hi - 1] == 0:
        hi -= 1
    return RationalPmf(offset + lo, tuple(masses[lo:hi]))


# --- Bernoulli convolutions -------------------------------------------------

def _bernoulli_fold_float(weights, shift=0):
    """Windowed exact float convolution of independent Bernoulli factors.

    The active window keeps every mass above the subnormal floor; edge
    entries below 1e-320 are pure underflow and are trimmed as the window
    slides, which is what makes 10^6-fold convolutions linear-time.
    """
    buf = np.zeros(512)
    buf[0] = 1.0
    offset, hi = shift, 1
    for i, p in enumerate(weights):
        p = float(p)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"Bernoulli weight {p} outside [0, 1]")
        if hi + 1 > len(buf):
            buf = np.concatenate([buf, np.zeros(len(buf))])
        carried = p * buf[:hi]
        buf[:hi] *= 1.0 - p
        buf[1:hi + 1] += carried
        hi += 1
        if (i & 255) == 255:
            window = np.nonzero(buf[:hi] > _UNDERFLOW)[0]
            lo, h = int(window[0]), int(window[-1]) + 1
            if lo > 0:
                buf[: h - lo] = buf[lo:h]
                buf[h - lo: hi] = 0.0
                offset += lo
                hi = h - lo
            else:
                hi = h
    return Pmf.from_masses(offset, buf[:hi].tolist())


def bernoulli_sum_pmf(weights, rational: bool = False):
    """Distribution of sum_i Be(p_i) by exact convolution from delta_0.

    Degenerate weights are allowed: p = 1 is a deterministic shift and
    p = 0 a no-op.  rational=True runs the same fold over Fractions.
    """
    weights = list(weights)
    if rational:
        masses = [Fraction(1)]
        for p in weights:
            p = Fraction(p)
            if not 0 <= p <= 1:
                raise ValueError(f"Bernoulli weight {p} outside [0, 1]")
            stay = [m * (1 - p) for m in masses] + [Fraction(0)]
            for j, m in enumerate(masses):
                stay[j + 1] += m * p
            masses = stay
        return _trim_rational(0, masses)
    if not weights:
        return Pmf(0, (1.0,))
    return _bernoulli_fold_float(weights)


# --- weighted permutations ---------------------------------------------------

def _homogeneous_polynomials(theta_seq, n, rational):
    """h_m(w Theta) for m = 0..n as coefficient lists in w.

    Newton-type recursion m h_m = sum_{k=1}^m (w theta_k) h_{m-k}; each term
    shifts the lower polynomial by one power of w.
    """
    zero = Fraction(0) if rational else 0.0
    one = Fraction(1) if rational else 1.0
    theta = [Fraction(t) if rational else float(t) for t in theta_seq]
    if any(t <= 0 for t in theta):
        raise ValueError("cycle weights theta_k must be positive")
    if len(theta) < n:
        raise ValueError(f"need theta_1..theta_{n}")
    hs = [[one]]
    for m in range(1, n + 1):
        coeffs = [zero] * (m + 1)
        for k in range(1, m + 1):
            tk = theta[k - 1]
            lower = hs[m - k]
            for j, c in enumerate(lower):
                coeffs[j + 1] += tk * c
        inv = Fraction(1, m) if rational else 1.0 / m
        hs.append([c * inv for c in coeffs])
    return hs


def weighted_perm_cycle_pmf(theta_seq, n: int, rational: bool = False):
    """Cycle-count distribution under the weight prod_k theta_k^{m_k}.

    pmf(j) = [w^j] h_n(w Theta) / h_n(Theta).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    hs = _homogeneous_polynomials(theta_seq, n, rational)
    coeffs = hs[n]
    norm = sum(coeffs[1:], coeffs[0])
    if rational:
        return _trim_rational(0, [c / norm for c in coeffs])
    return Pmf.from_masses(0, [c / norm for c in coeffs])


def weighted_perm_normalization(theta_seq, n: int, rational: bool = False):
    """h_n(Theta), the partition function of the weighted measure."""
    hs = _homogeneous_polynomials(theta_seq, n, rational)
    return sum(hs[n][1:], hs[n][0])


def ewens_cycle_pmf(theta, n: int, rational: bool = False):
    """Cycle-count distribution under the constant-weight (Ewens) measure.

    The pgf factors exactly as w * prod_{i=1}^{n-1} E[w^Be(theta/(theta+i))],
    so the generic h_n recursion is replaced by a linear-time Bernoulli
    fold (agreement with weighted_perm_cycle_pmf at constant theta is part
    of the test suite).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if rational:
        th = Fraction(theta)
        if th <= 0:
            raise ValueError("theta must be positive")
        inner = bernoulli_sum_pmf([th / (th + i) for i in range(1, n)], rational=True)
        return RationalPmf(inner.offset + 1, inner.masses)
    th = float(theta)
    if th <= 0:
        raise ValueError("theta must be positive")
    if n == 1:
        return Pmf(1, (1.0,))
    return _bernoulli_fold_float((th / (th + i) for i in range(1, n)), shift=1)


# --- polynomials over finite fields ------------------------------------------

def gauss_irreducible_count(q: int, n: int) -> int:
    """Exact count of monic irreducible degree-n polynomials over F_q."""
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    return irreducible_count(q, n)


def _one_minus_power_poly(k):
    """Coefficients of 1 - (1-w)^k in w (degree k, zero constant term)."""
    return [0] + [(-1) ** (j + 1) * math.comb(k, j) for j in range(1, k + 1)]


def fq_factor_pmf(q: int, n: int, rational: bool = False):
    """Distribution of the number of distinct irreducible factors over F_q.

    Builds the integer-coefficient polynomials
    L_m(w) = sum_{k|m} (m/k) I_q(m/k) (1 - (1-w)^k), runs the recursion
    m f_m = sum_k L_k f_{m-k} in exact rationals, checks the count identity
    f_n(1) = q^n, and normalizes.
    """
    if prime_power_base(q) is None:
        raise ValueError("q must be a prime power >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    ls = [None]
    for m in range(1, n + 1):
        lm = [0] * (m + 1)
        for k in range(1, m + 1):
            if m % k == 0:
                scale = (m // k) * irreducible_count(q, m // k)
                for j, c in enumerate(_one_minus_power_poly(k)):
                    lm[j] += scale * c
        ls.append(lm)
    fs = [[Fraction(1)]]
    for m in range(1, n + 1):
        coeffs = [Fraction(0)] * (m + 1)
        for k in range(1, m + 1):
            lk, lower = ls[k], fs[m - k]
            for i, a in enumerate(lk):
                if a:
                    for j, b in enumerate(lower):
                        coeffs[i + j] += a * b
        fs.append([c / m for c in coeffs])
    total = sum(fs[n], Fraction(0))
    if total != q ** n:
        raise AssertionError(f"count identity f_n(1) = q^n failed: {total} != {q ** n}")
    masses = [c / total for c in fs[n]]
    exact = _trim_rational(0, masses)
    return exact if rational else exact.to_float()


# --- distinct prime divisors --------------------------------------------------

def omega_values(n_max: int) -> np.ndarray:
    """omega(k) for k = 0..n_max (index 0 unused; omega(1) = 0)."""
    counts = np.zeros(n_max + 1, dtype=np.uint8)
    if n_max >= 2:
        is_prime = np.ones(n_max + 1, dtype=bool)
        is_prime[:2] = False
        for p in range(2, int(n_max ** 0.5) + 1):
            if is_prime[p]:
                is_prime[p * p:: p] = False
        for p in np.nonzero(is_prime)[0]:
            counts[p::p] += 1
    return counts


def omega_pmf(n_max: int, memory_max: int = 10 ** 8) -> Pmf:
    """Distribution of the number of distinct prime divisors of a uniform
    integer in {1..n_max}, by sieve."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > memory_max:
        raise ValueError(f"n_max={n_max} exceeds the sieve memory budget {memory_max}")
    counts = np.bincount(omega_values(n_max)[1:])
    return Pmf.from_masses(0, (counts / float(n_max)).tolist())


# --- mod-Poisson parameters ---------------------------------------------------

@lru_cache(maxsize=1024)
def gamma_theta(theta: float, tolerance: float = 1e-12) -> float:
    """gamma_theta = sum_{n>=1} theta/(n+theta-1) - theta log(1+1/n).

    Partial sum with the analytic integral tail and two Euler-Maclaurin
    corrections; gamma_1 is the Euler-Mascheroni constant.
    """
    theta = float(theta)
    if theta <= 0.0:
        raise ValueError("theta must be positive")
    if tolerance < 1e-13:
        raise ToleranceError("gamma_theta floor is 1e-13 in double precision")
    n_terms = 100000

    def term(x):
        # (x-1) + theta, never x + theta - 1: exact for integer x-1
        return theta / ((x - 1.0) + theta) - theta * math.log1p(1.0 / x)

    partial = math.fsum(term(n) for n in range(1, n_terms + 1))
    nn = float(n_terms)
    tail_int = -theta * (1.0 + math.log1p((theta - 2.0) / (nn + 1.0))
                         - nn * math.log1p(1.0 / nn))
    f_n = term(nn)
    fp_n = theta * (-1.0 / ((nn - 1.0) + theta) ** 2 + 1.0 / (nn * (nn + 1.0)))
    return partial + tail_int - f_n / 2.0 - fp_n / 12.0


@lru_cache(maxsize=1024)
def r_q(q: int, tolerance: float = 1e-12) -> float:
    """R_q = sum_{k>=2} mu(k)/k * log(1/(1 - q^(1-k))); terms decay like q^(1-k)."""
    if q < 2:
        raise ValueError("q must be >= 2")
    total = 0.0
    for k in range(2, 2000):
        x = float(q) ** (1 - k)
        if x == 0.0:
            return total
        magnitude = -math.log1p(-x) / k
        mu = mobius(k)
        if mu:
            total += mu * magnitude
        if magnitude < tolerance / 10.0:
            return total
    raise ToleranceError(f"r_q({q}) did not reach tolerance {tolerance:g}")


def empirical_residue(pmf, lam: float, w) -> complex:
    """(sum_k pmf(k) w^k) * exp(-lam (w-1)): the model's Fourier ratio."""
    w = complex(w)
    acc = 0.0 + 0.0j
    for m in reversed(pmf.masses):
        acc = acc * w + m
    if pmf.offset:
        acc *= w ** pmf.offset
    return acc * cmath.exp(-lam * (w - 1.0))


# --- declarative model specs ---------------------------------------------------

_FAMILIES = ("bernoulli_sum", "ewens", "weighted_perm", "fq_poly", "omega")


@dataclass(frozen=True)
class ModelSpec:
    """One model family plus its size parameter, CLI- and report-friendly."""

    family: str
    weights: tuple = ()
    theta: float = 0.0
    theta_seq: tuple = ()
    n: int = 0
    q: int = 0
    big_n: int = 0
    log_singularity: tuple = ()  # (theta, K) supplied for weighted_perm rates

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown model family {self.family!r}")
        if self.family == "bernoulli_sum":
            if not all(0.0 <= w <= 1.0 for w in self.weights):
                raise ValueError("weights must lie in [0, 1]")
        elif self.family == "ewens":
            if self.theta <= 0 or self.n < 1:
                raise ValueError("ewens needs theta > 0 and n >= 1")
        elif self.family == "weighted_perm":
            if self.n < 1 or len(self.theta_seq) < self.n:
                raise ValueError("weighted_perm needs theta_1..theta_n")
        elif self.family == "fq_poly":
            if prime_power_base(self.q) is None or self.n < 1:
                raise ValueError("fq_poly needs a prime power q >= 2 and n >= 1")
        elif self.family == "omega":
            if self.big_n < 1:
                raise ValueError("omega needs N >= 1")

    @classmethod
    def bernoulli(cls, weights):
        return cls("bernoulli_sum", weights=tuple(float(w) for w in weights))

    @classmethod
    def ewens(cls, theta, n):
        return cls("ewens", theta=float(theta), n=int(n))

    @classmethod
    def weighted_perm(cls, theta_seq, n, log_singularity=()):
        return cls("weighted_perm", theta_seq=tuple(float(t) for t in theta_seq),
                   n=int(n), log_singularity=tuple(log_singularity))

    @classmethod
    def fq_poly(cls, q, n):
        return cls("fq_poly", q=int(q), n=int(n))

    @classmethod
    def omega(cls, big_n):
        return cls("omega", big_n=int(big_n))

    def size(self) -> int:
        if self.family == "bernoulli_sum":
            return len(self.weights)
        if self.family == "omega":
            return self.big_n
        return self.n

    def describe(self) -> str:
        # comma-free so the description stays a single CSV field
        if self.family == "bernoulli_sum":
            return f"bernoulli_sum(n={len(self.weights)})"
        if self.family == "ewens":
            return f"ewens(theta={self.theta:g};n={self.n})"
        if self.family == "weighted_perm":
            return f"weighted_perm(n={self.n})"
        if self.family == "fq_poly":
            return f"fq_poly(q={self.q};n={self.n})"
        return f"omega(N={self.big_n})"

    def pmf(self, rational: bool = False):
        if self.family == "bernoulli_sum":
            return bernoulli_sum_pmf(self.weights, rational=rational)
        if self.family == "ewens":
            return ewens_cycle_pmf(self.theta, self.n, rational=rational)
        if self.family == "weighted_perm":
            return weighted_perm_cycle_pmf(self.theta_seq, self.n, rational=rational)
        if self.family == "fq_poly":
            return fq_factor_pmf(self.q, self.n, rational=rational)
        if rational:
            raise ValueError("omega model has no rational mode")
        return omega_pmf(self.big_n)

    def limiting_alphabet(self, tolerance: float = 1e-12):
        """The limiting weight alphabet of the family, when one is certified."""
        if self.family == "bernoulli_sum":
            return Alphabet.finite(self.weights, tolerance)
        if self.family == "ewens":
            return Alphabet.ewens_limit(self.theta, tolerance)
        if self.family == "fq_poly":
            return Alphabet.fq_limit(self.q, tolerance)
        if self.family == "omega":
            return Alphabet.omega_limit(tolerance)
        raise ValueError("weighted_perm has no certified limiting alphabet; "
                         "supply one explicitly")


def model_lambda(spec: ModelSpec, tolerance: float = 1e-12) -> float:
    """The mod-Poisson rate lam_n of the family.

    bernoulli_sum: sum p_i.           ewens: theta log n + gamma_theta.
    weighted_perm: theta log n + K + gamma_theta with user-supplied
    (theta, K).                       fq_poly: log n + R_q + gamma.
    omega: log log N + gamma.
    """
    if spec.family == "bernoulli_sum":
        if not spec.weights:
            raise ValueError("bernoulli_sum rate needs at least one weight")
        return math.fsum(spec.weights)
    if spec.family == "ewens":
        return spec.theta * math.log(spec.n) + gamma_theta(spec.theta, tolerance)
    if spec.family == "weighted_perm":
        if len(spec.log_singularity) != 2:
            raise ValueError("weighted_perm needs a user-supplied (theta, K) pair: "
                             "the library does not locate the singularity of "
                             "the weight generating series")
        th, big_k = spec.log_singularity
        return th * math.log(spec.n) + big_k + gamma_theta(th, tolerance)
    if spec.family == "fq_poly":
        return math.log(spec.n) + r_q(spec.q, tolerance) + EULER_GAMMA
    return math.log(math.log(spec.big_n)) + EULER_GAMMA
