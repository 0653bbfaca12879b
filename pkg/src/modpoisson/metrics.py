"""Distances between mass functions and the total-variation bounds.

The bound constants are fixed at C = 570, D = 4 (so eps = 4 tau / sqrt(lam)
and eta = 4 sqrt(e) sigma / sqrt(lam)); no attempt is made to sharpen the
universal constants.  Rows whose preconditions fail are reported as
inapplicable (holds = None) rather than raised, so parameter sweeps never
abort.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import schemes, symfunc
from .models import ModelSpec, model_lambda

__all__ = [
    "InapplicableBoundError",
    "BoundReport",
    "CSV_HEADER",
    "total_variation",
    "kolmogorov",
    "lecam_bound",
    "chen_stein_bound",
    "theorem_a_bound",
    "theorem_b_bound",
    "corollary_bound",
    "theorem_c_bound",
    "two_step_bound",
    "verify_bounds",
]

#: absolute slack granted when deciding `holds` (float-level, not statistical)
HOLDS_SLACK = 1e-12

CSV_HEADER = "model,family,n,r,lambda,sigma2,tv,bound,name,holds,slack"


class InapplicableBoundError(ValueError):
    """A bound's precondition fails for these parameters."""


def _check_normalized(m):
    if abs(m.total - 1.0) > 1e-6:
        raise ValueError(f"measure total is {m.total!r}, not 1")


def _aligned(a, b):
    lo = min(a.offset, b.offset)
    hi = max(a.offset + len(a.masses), b.offset + len(b.masses))
    size = hi - lo
    xs = [0.0] * size
    ys = [0.0] * size
    xs[a.offset - lo: a.offset - lo + len(a.masses)] = list(a.masses)
    ys[b.offset - lo: b.offset - lo + len(b.masses)] = list(b.masses)
    return xs, ys


def total_variation(a, b) -> float:
    """(1/2) sum_k |a(k) - b(k)| over the union of supports.

    The sub-1e-15 truncation tails of both inputs are added as a
    conservative correction.
    """
    _check_normalized(a)
    _check_normalized(b)
    xs, ys = _aligned(a, b)
    core = 0.5 * math.fsum(abs(x - y) for x, y in zip(xs, ys))
    return core + 0.5 * (abs(1.0 - a.total) + abs(1.0 - b.total))


def kolmogorov(a, b) -> float:
    """max_k |CDF_a(k) - CDF_b(k)|."""
    _check_normalized(a)
    _check_normalized(b)
    xs, ys = _aligned(a, b)
    worst = 0.0
    ca = cb = 0.0
    for x, y in zip(xs, ys):
        ca += x
        cb += y
        worst = max(worst, abs(ca - cb))
    return worst


# --- closed-form bounds -------------------------------------------------------

def lecam_bound(weights) -> float:
    """sum p_i^2: the classical Le Cam bound on d_TV to Po(sum p_i)."""
    return math.fsum(float(p) ** 2 for p in weights)


def chen_stein_bound(weights) -> float:
    """(1 - e^-lam)/lam * sum p_i^2, the Chen-Stein sharpening of Le Cam."""
    weights = [float(p) for p in weights]
    if not weights:
        raise ValueError("chen_stein_bound needs at least one weight")
    lam = math.fsum(weights)
    if lam <= 0.0:
        raise ValueError("chen_stein_bound needs lam > 0")
    return -math.expm1(-lam) / lam * math.fsum(p * p for p in weights)


def theorem_a_bound(lam: float, tau: float, r: int) -> float:
    """570 * eps^(r+1) with eps = 4 tau / sqrt(lam); needs eps < 1."""
    eps = 4.0 * tau / math.sqrt(lam)
    if eps >= 1.0:
        raise InapplicableBoundError(f"eps = {eps:g} >= 1: bound inapplicable")
    return 570.0 * eps ** (r + 1)


def theorem_b_bound(lam: float, sigma2: float, r: int) -> float:
    """570 * eta^(r+1) with eta = 4 sqrt(e) sigma / sqrt(lam); needs lam > 16 e sigma^2."""
    if lam <= 16.0 * math.e * sigma2:
        raise InapplicableBoundError(
            f"lam = {lam:g} <= 16 e sigma^2 = {16.0 * math.e * sigma2:g}")
    eta = 4.0 * math.sqrt(math.e * sigma2 / lam)
    return 570.0 * eta ** (r + 1)


def corollary_bound(lam: float, sigma2: float, r: int, tail_rn: float) -> float:
    """Derived-scheme bound: theorem-B term plus the truncation penalty
    (r^2 + (2 lam + 1) r) * (sum_{s=2}^r (2 sigma)^(s-2)) * tail_rn."""
    base = theorem_b_bound(lam, sigma2, r)
    sigma = math.sqrt(sigma2)
    geo = math.fsum((2.0 * sigma) ** (s - 2) for s in range(2, r + 1))
    return base + (r * r + (2.0 * lam + 1.0) * r) * geo * tail_rn


def theorem_c_bound(lam: float, sigma2: float, r: int, eps_n: float, rho: float) -> float:
    """Derived-scheme bound under an eps_n-uniform residue approximation on
    a disc of radius rho > 1: theorem-B term + eps_n (rho/(rho-1) + lam)."""
    if rho <= 1.0:
        raise InapplicableBoundError("rho must exceed 1")
    if math.sqrt(lam) <= 4.0 * math.sqrt(math.e * sigma2):
        raise InapplicableBoundError("needs sqrt(lam) > 4 sqrt(e) sigma")
    eta = 4.0 * math.sqrt(math.e * sigma2 / lam)
    return 570.0 * eta ** (r + 1) + eps_n * (rho / (rho - 1.0) + lam)


def two_step_bound(psi_diff_sup: float, psi_prime_diff_sup: float, lam: float) -> float:
    """TV bound from sup-norms of a residue difference and its derivative:
    |psi - chi|/2 + pi/(2 sqrt 3) (|psi' - chi'| + lam |psi - chi|)."""
    if psi_diff_sup < 0.0 or psi_prime_diff_sup < 0.0 or lam < 0.0:
        raise ValueError("two_step_bound needs nonnegative inputs")
    return (psi_diff_sup / 2.0
            + math.pi / (2.0 * math.sqrt(3.0))
            * (psi_prime_diff_sup + lam * psi_diff_sup))


# --- verification reports -----------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    """One (model, r, bound) verification row."""

    model: str
    family: str
    n: int
    r: int
    lam: float
    sigma2: float
    tau: float
    tv: float
    bound: float
    name: str
    holds: bool
    slack: float

    @classmethod
    def build(cls, spec, r, lam, sigma2, tv, bound, name):
        holds = slack = None
        if bound is not None:
            holds = tv <= bound + HOLDS_SLACK
            slack = bound / tv if tv > 0.0 else math.inf
        return cls(model=spec.describe(), family=spec.family, n=spec.size(), r=r,
                   lam=lam, sigma2=sigma2, tau=math.sqrt(math.e * sigma2),
                   tv=tv, bound=bound, name=name, holds=holds, slack=slack)


KNOWN_BOUNDS = ("theorem-a", "theorem-b", "corollary", "theorem-c",
                "chen-stein", "lecam")


def verify_bounds(spec: ModelSpec, r_list, which=("theorem-b",),
                  tolerance: float = 1e-12, eps_n=None, rho: float = 2.0,
                  tail_rn=None):
    """Measure d_TV(model, scheme) against each requested bound.

    Bernoulli sums use the standard scheme from their finite weights; the
    ewens / fq_poly / omega families use the derived scheme from their
    limiting alphabet.  chen-stein and lecam always refer to the order-0
    scheme and emit a single row each.  Rows with failing preconditions
    are emitted with holds = None instead of raising.
    """
    unknown = [name for name in which if name not in KNOWN_BOUNDS]
    if unknown:
        raise ValueError(f"unknown bound names: {unknown}")
    r_list = list(r_list)
    if any(r < 0 for r in r_list):
        raise ValueError("scheme orders must be >= 0")
    if spec.family == "weighted_perm":
        raise ValueError("weighted_perm sweeps are not supported: no certified "
                         "limiting alphabet")

    pmf = spec.pmf()
    lam = model_lambda(spec, tolerance)
    alphabet = spec.limiting_alphabet(tolerance)
    if spec.family == "bernoulli_sum":
        sigma2 = lecam_bound(spec.weights)
    else:
        sigma2 = symfunc.power_sums_infinite(alphabet, 2).sigma2

    def scheme_for(r):
        if spec.family == "bernoulli_sum":
            ps = symfunc.power_sums_finite(spec.weights, max(2, r))
            return schemes.scheme_measure(symfunc.virtual_residue_coeffs(ps, r, lam))
        return schemes.derived_scheme(lam, alphabet, r)

    tv_cache = {}

    def tv_for(r):
        if r not in tv_cache:
            tv_cache[r] = total_variation(pmf, scheme_for(r))
        return tv_cache[r]

    def guarded(fn, *args):
        try:
            return fn(*args)
        except InapplicableBoundError:
            return None

    reports = []
    for name in which:
        if name in ("chen-stein", "lecam"):
            if spec.family != "bernoulli_sum":
                reports.append(BoundReport.build(spec, 0, lam, sigma2, tv_for(0),
                                                 None, name))
                continue
            bound = (chen_stein_bound(spec.weights) if name == "chen-stein"
                     else lecam_bound(spec.weights))
            reports.append(BoundReport.build(spec, 0, lam, sigma2, tv_for(0),
                                             bound, name))
            continue
        for r in r_list:
            if r < 1:
                bound = None  # order-0 scheme: the theorems need r >= 1
            elif name == "theorem-a":
                bound = guarded(theorem_a_bound, lam, math.sqrt(math.e * sigma2), r)
            elif name == "theorem-b":
                bound = guarded(theorem_b_bound, lam, sigma2, r)
            elif name == "corollary":
                rn = _default_tail(spec) if tail_rn is None else tail_rn
                bound = None if rn is None else guarded(corollary_bound, lam, sigma2, r, rn)
            else:  # theorem-c
                bound = (None if eps_n is None
                         else guarded(theorem_c_bound, lam, sigma2, r, eps_n, rho))
            reports.append(BoundReport.build(spec, r, lam, sigma2, tv_for(r),
                                             bound, name))
    return reports


def _default_tail(spec):
    """Tail r_n = sum_{i>n} a_i^2 of the limiting alphabet, when it applies."""
    if spec.family == "ewens":
        th = spec.theta
        return th * th * symfunc.zeta(2, th + spec.n)
    return None
