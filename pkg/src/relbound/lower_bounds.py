"""Achievability bounds from coset ensembles over zero-error codes.

The even-q bound is a rate-shifted copy of the BSC expurgated exponent;
the q = 5 bound rides on the two-letter zero-error code and the weight
spectrum of random linear codes over Z_5.
"""

import math
from typing import NamedTuple

from .channel import bhattacharyya, capacity, entropy_h, gv_delta
from .classical import bsc_expurgated_exponent, expurgated_junction_rate
from .codes import build_coset_code, code_weights

ZERO_EXPONENT = -math.inf


class SpectrumExponent(NamedTuple):
    """Asymptotic growth rate of a weight class, -inf marking a zero count."""

    rate: float
    delta: float
    exponent: float

    @property
    def is_zero(self):
        return self.exponent == ZERO_EXPONENT


def binary_gv_spectrum_exponent(rate, delta):
    """Spectrum growth r - 1 + h2(delta) of good binary linear codes.

    Weight classes below the distance guarantee are empty (-inf marker).
    """
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"binary rate must lie in [0, 1], got {rate}")
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"normalized weight must lie in [0, 1], got {delta}")
    if delta < gv_delta(2.0, rate) - 1e-12:
        return SpectrumExponent(rate, delta, ZERO_EXPONENT)
    return SpectrumExponent(rate, delta, rate - 1.0 + entropy_h(2.0, delta))


def q5_gv_spectrum_exponent(rate, delta):
    """Spectrum growth r - log2(5) + h2(delta) + 2 delta over Z_5."""
    if not 0.0 <= rate <= math.log2(5.0) + 1e-12:
        raise ValueError(f"rate must lie in [0, log2 5], got {rate}")
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"normalized weight must lie in [0, 1], got {delta}")
    if delta < gv_delta(5.0, rate) - 1e-12:
        return SpectrumExponent(rate, delta, ZERO_EXPONENT)
    expo = rate - math.log2(5.0) + entropy_h(2.0, delta) + 2.0 * delta
    return SpectrumExponent(rate, delta, expo)


def junction_rate_even(epsilon, q):
    """Rate where the even-q coset bound departs from its slope -1 line."""
    if q % 2 != 0 or q < 4:
        raise ValueError(f"need an even alphabet size >= 4, got {q}")
    return math.log2(q / 2) + expurgated_junction_rate(epsilon, 2)


def lower_bound_even(ch, r):
    """Coset-ensemble achievability bound for even q.

    Exactly the BSC expurgated exponent shifted right by log2(q/2).
    Valid for log2(q/2) < r <= capacity.
    """
    if ch.q % 2 != 0:
        raise ValueError(f"this bound needs an even alphabet size, got {ch.q}")
    shift = math.log2(ch.q / 2)
    c = capacity(ch)
    if not shift < r <= c + 1e-12:
        raise ValueError(f"rate must lie in (log2(q/2), C] = ({shift}, {c}], got {r}")
    return bsc_expurgated_exponent(ch.epsilon, min(r, c) - shift)


def junction_rate_q5(epsilon):
    """Rate where the q=5 coset bound meets its slope -1 line.

    log2(5) - h5(1 - 1/(1+2 alpha)^2) / 2, always above log2(sqrt 5).
    """
    alpha = bhattacharyya(epsilon)
    x = 1.0 - 1.0 / (1.0 + 2.0 * alpha) ** 2
    return math.log2(5.0) - 0.5 * entropy_h(5.0, x)


def lower_bound_q5(epsilon, r):
    """Coset-ensemble achievability bound for the five-letter channel.

    Below the junction the exponent is driven by the distance guarantee
    of random linear codes over Z_5; above it the slope -1 line of the
    expurgated bound takes over. Clamped at zero past the line's zero
    crossing, where an exponent bound says nothing.
    """
    log5 = math.log2(5.0)
    lo = 0.5 * log5
    c = log5 - entropy_h(2.0, epsilon)
    if not lo - 1e-12 <= r <= c + 1e-12:
        raise ValueError(f"rate must lie in [log2 sqrt5, C] = [{lo}, {c}], got {r}")
    r = min(max(r, lo), c)
    alpha = bhattacharyya(epsilon)
    if r >= junction_rate_q5(epsilon):
        return max(math.log2(5.0 / (1.0 + 2.0 * alpha)) - r, 0.0)
    delta = gv_delta(5.0, 2.0 * r - log5)
    return -0.5 * delta * math.log2(alpha * (1.0 + alpha))


class CosetSpectrumCheck(NamedTuple):
    """Outcome of the A_z = 2^z B_z verification for one coset code."""

    ok: bool
    table: dict  # finite z -> (a_z, b_z) integer counts


def coset_spectrum_check(c2, q):
    """Verify A_z = 2^z B_z between a linear binary code and its coset lift.

    A_z is taken from the weights of the lifted code (valid because a
    linear c2 makes the lift linear over Z_q); B_z is the Hamming weight
    count of c2. Linearity of c2 is checked by closure.
    """
    words = set(c2.words)
    for a in c2.words:
        for b in c2.words:
            if tuple((x + y) % 2 for x, y in zip(a, b)) not in words:
                raise ValueError("the binary code is not linear (closure fails)")
    lifted = build_coset_code(c2, q)
    weights = code_weights(lifted)
    a_counts = {}
    for w in weights:
        if math.isfinite(w):
            z = int(w)
            if z > 0:
                a_counts[z] = a_counts.get(z, 0) + 1
    b_counts = {}
    for w in code_weights(c2):
        z = int(w)
        if z > 0:
            b_counts[z] = b_counts.get(z, 0) + 1
    table = {}
    ok = True
    for z in sorted(set(a_counts) | set(b_counts)):
        az = a_counts.get(z, 0)
        bz = b_counts.get(z, 0)
        table[z] = (az, bz)
        if az != (2**z) * bz:
            ok = False
    return CosetSpectrumCheck(ok, table)
