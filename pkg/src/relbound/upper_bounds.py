"""Converse bounds: LP-based distance bounds, straight lines, and the envelope.

All bounds are upper bounds on the reliability exponent in bits. The
spectrum bound only exists for crossover exactly 1/2 and odd q.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .channel import (
    INF,
    bhattacharyya,
    capacity,
    cycle_constants,
    entropy_h,
    entropy_h_inv,
)
from .classical import (
    RHO_CAP,
    _rate_at_rho,
    binary_divergence,
    eps_rho,
    expurgated_exponent,
    expurgated_is_exact,
    random_coding_exponent,
    sphere_packing_exponent,
)
from .lower_bounds import lower_bound_even, lower_bound_q5
from .solvers import bisect_root, golden_min

# below this crossover the binary-reduction anchor improves sphere packing
LP2_ANCHOR_GATE = 0.5 - math.sqrt(3.0) / 4.0


class LP2Point(NamedTuple):
    """Minimizing pair of the second binary LP bound and its objective."""

    alpha: float
    beta: float
    objective: float


def _lp2_alpha_for(beta, r):
    target = 1.0 - r + entropy_h(2.0, beta)
    return 0.5 if target >= 1.0 else entropy_h_inv(2.0, target)


def delta_lp2_point(r, printed_constraint=False):
    """Second linear-programming distance bound for binary codes at rate r.

    Minimizes 2(a(1-a) - b(1-b)) / (1 + 2 sqrt(b(1-b))) over
    0 <= b <= a <= 1/2 with the feasibility set h2(a) - h2(b) >= 1 - r,
    which pins the endpoints delta_lp2(0) = 1/2 and delta_lp2(1) = 0.
    The flag keeps the opposite (degenerate) constraint direction
    available: there the diagonal a = b is always feasible and the
    minimum is identically 0.
    """
    if not -1e-12 <= r <= 1.0 + 1e-12:
        raise ValueError(f"binary rate must lie in [0, 1], got {r}")
    r = min(max(r, 0.0), 1.0)
    if printed_constraint:
        b = entropy_h_inv(2.0, r / 2.0)
        return LP2Point(alpha=b, beta=b, objective=0.0)
    if r == 0.0:
        return LP2Point(alpha=0.5, beta=0.0, objective=0.5)
    beta_max = entropy_h_inv(2.0, r)

    def objective(beta):
        alpha = _lp2_alpha_for(beta, r)
        num = alpha * (1.0 - alpha) - beta * (1.0 - beta)
        return 2.0 * num / (1.0 + 2.0 * math.sqrt(beta * (1.0 - beta)))

    beta, value = golden_min(objective, 0.0, beta_max, tol=1e-10)
    return LP2Point(alpha=_lp2_alpha_for(beta, r), beta=beta, objective=value)


def delta_lp2(r, printed_constraint=False):
    """Objective value of delta_lp2_point."""
    return delta_lp2_point(r, printed_constraint=printed_constraint).objective


def binary_reduction_bound(ch, r):
    """Upper bound via a pairwise-confusable subcode: delta_lp2 shifted and scaled."""
    shift = math.log2(ch.q / 2)
    if r <= shift:
        raise ValueError(f"rate must exceed log2(q/2) = {shift}, got {r}")
    alpha = bhattacharyya(ch.epsilon)
    return delta_lp2(min(r - shift, 1.0)) * math.log2(1.0 / alpha)


def lp1_rate(q_prime, delta):
    """First linear-programming rate bound for distance delta, alphabet q' > 1.

    q' need not be an integer; the argument of the entropy is clipped
    against roundoff at the endpoints.
    """
    dmax = (q_prime - 1.0) / q_prime
    if not -1e-12 <= delta <= dmax + 1e-12:
        raise ValueError(f"distance must lie in [0, {dmax}], got {delta}")
    delta = min(max(delta, 0.0), dmax)
    arg = (
        (q_prime - 1.0)
        - (q_prime - 2.0) * delta
        - 2.0 * math.sqrt((q_prime - 1.0) * delta * (1.0 - delta))
    ) / q_prime
    return entropy_h(q_prime, min(max(arg, 0.0), 1.0))


def min_distance_bound(ch, r):
    """Distance-driven converse for odd q above the cycle Lovasz rate.

    Solves r = log2(theta) + lp1_rate(q', d) for the largest admissible
    normalized distance d and charges it log2(1/eps) per unit.
    """
    if ch.q % 2 == 0:
        raise ValueError("the distance bound applies to odd alphabet sizes only")
    cc = cycle_constants(ch)
    ltheta = math.log2(cc.theta)
    top = math.log2(ch.q)
    if not ltheta < r <= top + 1e-12:
        raise ValueError(f"rate must lie in (log2 theta, log2 q] = ({ltheta}, {top}], got {r}")
    delta = _lp1_distance(cc.q_prime, min(r, top) - ltheta)
    return delta * math.log2(1.0 / ch.epsilon)


def _lp1_distance(q_prime, rate):
    """Inverse of lp1_rate: the distance where the LP rate equals `rate`."""
    dmax = (q_prime - 1.0) / q_prime
    if rate >= math.log2(q_prime):
        return 0.0
    if rate <= 0.0:
        return dmax
    return bisect_root(lambda d: lp1_rate(q_prime, d) - rate, 0.0, dmax)


def epsilon_power_bound(ch, r):
    """log2(1/eps): every code above the Lovasz rate errs at least eps^n."""
    if ch.q % 2 == 0:
        raise ValueError("this bound applies to odd alphabet sizes only")
    ltheta = math.log2(cycle_constants(ch).theta)
    if r <= ltheta:
        raise ValueError(f"rate must exceed log2 theta = {ltheta}, got {r}")
    return math.log2(1.0 / ch.epsilon)


@dataclass(frozen=True)
class StraightLine:
    """Chord from a low-rate anchor to its tangency point on the sphere-packing curve.

    The affine value is a bound only between the endpoints, so value(r)
    reports inf outside [r1, r2] and pointwise-min envelopes ignore it
    there.
    """

    r1: float
    e1: float
    r2: float
    e2: float
    slope: float

    def value(self, r):
        if r < self.r1 - 1e-12 or r > self.r2 + 1e-12:
            return INF
        return self.e1 + self.slope * (r - self.r1)


def straight_line_bound(anchor_rate, anchor_exponent, ch):
    """Tangent chord from (anchor_rate, anchor_exponent) to the sphere-packing curve.

    The tangency slope is the parametric -rho, so the defect
    E_sp(rho) - E1 + rho (R_rho - R1) is driven to zero by bisection.
    Raises when the anchor sits above the whole curve (no tangency).
    """
    if not math.isfinite(anchor_exponent) or anchor_exponent <= 0:
        raise ValueError(f"anchor exponent must be finite positive, got {anchor_exponent}")
    c = capacity(ch)
    if anchor_rate >= c:
        raise ValueError(f"anchor rate must lie below capacity {c}, got {anchor_rate}")
    eps = ch.epsilon

    def defect(rho):
        rate = _rate_at_rho(ch, rho)
        expo = binary_divergence(eps_rho(eps, rho), eps)
        return expo - anchor_exponent + rho * (rate - anchor_rate)

    if anchor_rate >= _rate_at_rho(ch, RHO_CAP):
        # anchor inside the curve's domain: tangency must come before it
        rho_hi = bisect_root(lambda t: _rate_at_rho(ch, t) - anchor_rate, 0.0, RHO_CAP)
        gap = defect(rho_hi)
        if gap < -1e-9 * max(1.0, anchor_exponent):
            raise ValueError("anchor lies above the sphere-packing curve, no tangency")
        if gap <= 0.0:
            # anchor sits on the curve: the segment degenerates to its tangent
            rho2 = rho_hi
            r2 = _rate_at_rho(ch, rho2)
            e2 = binary_divergence(eps_rho(eps, rho2), eps)
            return StraightLine(anchor_rate, anchor_exponent, r2, e2, -rho2)
    else:
        rho_hi = 1.0
        while defect(rho_hi) <= 0:
            rho_hi *= 2.0
            if rho_hi > RHO_CAP:
                raise ValueError("no tangency found below the slope cap")
    rho2 = bisect_root(defect, 0.0, rho_hi)
    r2 = _rate_at_rho(ch, rho2)
    e2 = binary_divergence(eps_rho(eps, rho2), eps)
    return StraightLine(anchor_rate, anchor_exponent, r2, e2, -rho2)


@lru_cache(maxsize=None)
def theta_anchored_line(ch):
    """Straight line from (log2 theta, log2(1/eps)), odd q."""
    if ch.q % 2 == 0:
        raise ValueError("the theta-anchored line applies to odd alphabet sizes only")
    ltheta = math.log2(cycle_constants(ch).theta)
    return straight_line_bound(ltheta, math.log2(1.0 / ch.epsilon), ch)


@lru_cache(maxsize=None)
def lp2_anchored_line(ch):
    """Straight line from the binary-reduction anchor at log2(q/2).

    Only exists when the anchor (1/2) log2(1/alpha) undercuts the
    sphere-packing limit, i.e. for eps below 1/2 - sqrt(3)/4.
    """
    if ch.epsilon >= LP2_ANCHOR_GATE:
        raise ValueError(
            f"anchor needs eps < 1/2 - sqrt(3)/4 = {LP2_ANCHOR_GATE:.6f}, got {ch.epsilon}"
        )
    anchor = 0.5 * math.log2(1.0 / bhattacharyya(ch.epsilon))
    return straight_line_bound(math.log2(ch.q / 2), anchor, ch)


def _h3_vec(x):
    out = np.zeros_like(x)
    pos = (x > 0) & (x < 1)
    xv = x[pos]
    out[pos] = xv - xv * np.log2(xv) - (1 - xv) * np.log2(1 - xv)
    out[x >= 1] = 1.0
    return out


class SpectrumBoundPoint(NamedTuple):
    """Achieving (distance, radius) pair of the spectrum converse."""

    delta: float
    tau: float
    s: float
    value: float


def spectrum_half_point(q, r, coarse=512, refinements=2):
    """Spectrum-driven converse for odd q at crossover exactly 1/2.

    Either the code has small distance, or it has exponentially many
    neighbors at some scaled radius tau; the bound is the max-min of the
    two effects over the admissible (distance, radius) box, evaluated on
    an adaptively refined grid. Degenerates to the distance cap s when
    the box is empty.
    """
    if q % 2 == 0:
        raise ValueError("the spectrum bound applies to odd alphabet sizes only")
    theta = q * math.cos(math.pi / q) / (1.0 + math.cos(math.pi / q))
    q_prime = q / theta
    ltheta = math.log2(theta)
    top = math.log2(q) - 1.0
    if not ltheta < r < top:
        raise ValueError(f"rate must lie in (log2 theta, log2 q - 1) = ({ltheta}, {top}), got {r}")
    s = _lp1_distance(q_prime, r - ltheta)
    delta_lo = entropy_h_inv(3.0, math.log2(q) - r)
    if delta_lo >= s:
        return SpectrumBoundPoint(delta=s, tau=s, s=s, value=s)

    lq = math.log2(q)

    def best_on(d_lo, d_hi, t_lo, t_hi, pts):
        d = np.linspace(d_lo, d_hi, pts)
        t = np.linspace(t_lo, t_hi, pts)
        dd, tt = np.meshgrid(d, t, indexing="ij")
        inner = np.minimum(r - (lq - _h3_vec(tt)), dd / 2.0)
        val = np.minimum(dd, tt - inner)
        val[tt < dd] = -INF
        k = int(np.argmax(val))
        i, j = divmod(k, pts)
        return float(val[i, j]), float(dd[i, j]), float(tt[i, j]), d[1] - d[0] if pts > 1 else 0.0

    value, bd, bt, spacing = best_on(delta_lo, s, delta_lo, s, coarse)
    for _ in range(refinements):
        d_lo = max(delta_lo, bd - 2 * spacing)
        d_hi = min(s, bd + 2 * spacing)
        t_lo = max(delta_lo, bt - 2 * spacing)
        t_hi = min(s, bt + 2 * spacing)
        value, bd, bt, spacing = best_on(d_lo, d_hi, t_lo, t_hi, 65)
    return SpectrumBoundPoint(delta=bd, tau=bt, s=s, value=value)


def spectrum_half_bound(q, r, coarse=512, refinements=2):
    """Value of spectrum_half_point."""
    return spectrum_half_point(q, r, coarse=coarse, refinements=refinements).value


def envelope(ch, r, which="both"):
    """Pointwise best upper and lower envelopes over the applicable bounds.

    Uppers: sphere packing, the binary reduction above log2(q/2), and
    for odd q the distance bound, both straight lines, and at eps = 1/2
    the spectrum bound. Lowers: random coding, the expurgated bound
    where it is exact, and the coset-ensemble bounds on their domains.
    """
    if which not in ("both", "lower", "upper"):
        raise ValueError(f"selector must be 'both', 'lower' or 'upper', got {which}")
    c = capacity(ch)
    if not 0.0 < r <= c + 1e-12:
        raise ValueError(f"rate must lie in (0, C] = (0, {c}], got {r}")
    r = min(r, c)
    q = ch.q
    shift = math.log2(q / 2)

    uppers = [sphere_packing_exponent(ch, r)]
    if r > shift:
        uppers.append(binary_reduction_bound(ch, r))
    if q % 2 == 1:
        ltheta = math.log2(cycle_constants(ch).theta)
        if r > ltheta:
            uppers.append(min_distance_bound(ch, r))
        if ch.epsilon == 0.5 and ltheta < r < math.log2(q) - 1.0:
            uppers.append(spectrum_half_bound(q, r))
        uppers.append(theta_anchored_line(ch).value(r))
        if ch.epsilon < LP2_ANCHOR_GATE:
            uppers.append(lp2_anchored_line(ch).value(r))

    lowers = [random_coding_exponent(ch, r)]
    if expurgated_is_exact(q):
        lowers.append(expurgated_exponent(ch, r))
    if q % 2 == 0 and r > shift:
        lowers.append(lower_bound_even(ch, r))
    if q == 5 and r >= 0.5 * math.log2(5.0):
        lowers.append(lower_bound_q5(ch.epsilon, r))

    lo = max(lowers)
    up = min(uppers)
    if which == "lower":
        return lo
    if which == "upper":
        return up
    return lo, up
