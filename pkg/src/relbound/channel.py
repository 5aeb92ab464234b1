"""Cyclic-shift channel model, semidistance, entropy utilities and cycle constants.

Everything here is pure and immutable, so concurrent use needs no locking.
Rates and exponents are in bits throughout; the extended distance uses
math.inf as a first-class value.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .solvers import bisect_root

INF = math.inf


@dataclass(frozen=True)
class Channel:
    """A q-ary cyclic-shift channel.

    Input x is received as x with probability 1 - epsilon and as
    x + 1 mod q with probability epsilon. Requires q >= 4 and
    0 < epsilon <= 1/2.
    """

    q: int
    epsilon: float

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 4:
            raise ValueError(f"alphabet size must be an integer >= 4, got {self.q}")
        if not 0.0 < self.epsilon <= 0.5:
            raise ValueError(f"crossover must satisfy 0 < eps <= 1/2, got {self.epsilon}")


def transition_prob(ch, y, x):
    """W(y|x): 1 - eps on the diagonal, eps one step up mod q, else 0."""
    q = ch.q
    if not (0 <= x < q and 0 <= y < q):
        raise ValueError(f"symbols must lie in 0..{q - 1}, got x={x}, y={y}")
    if y == x:
        return 1.0 - ch.epsilon
    if y == (x + 1) % q:
        return ch.epsilon
    return 0.0


def bhattacharyya(epsilon):
    """sqrt(eps(1-eps)), the pairwise distinguishability coefficient."""
    if not 0.0 < epsilon <= 0.5:
        raise ValueError(f"crossover must satisfy 0 < eps <= 1/2, got {epsilon}")
    return math.sqrt(epsilon * (1.0 - epsilon))


def symbol_distance(a, b, q):
    """Per-symbol semidistance: 0 if equal, 1 if cyclically adjacent, inf otherwise."""
    d = (a - b) % q
    if d == 0:
        return 0
    if d == 1 or d == q - 1:
        return 1
    return INF


def semidistance(w1, w2, q):
    """Coordinatewise sum of symbol distances, saturating at inf."""
    if len(w1) != len(w2):
        raise ValueError(f"length mismatch: {len(w1)} vs {len(w2)}")
    total = 0
    for a, b in zip(w1, w2):
        d = symbol_distance(int(a), int(b), q)
        if d == INF:
            return INF
        total += d
    return total


def pairwise_error_bound(ch, w1, w2):
    """Bhattacharyya bound alpha^d on confusing w1 with w2 (alpha^inf = 0)."""
    d = semidistance(w1, w2, ch.q)
    if d == INF:
        return 0.0
    return bhattacharyya(ch.epsilon) ** d


def entropy_h(q_prime, x):
    """x log2(q'-1) - x log2 x - (1-x) log2(1-x), with 0 log 0 = 0.

    q' may be non-integral but must exceed 1.
    """
    if q_prime <= 1.0:
        raise ValueError(f"alphabet parameter must exceed 1, got {q_prime}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"argument must lie in [0, 1], got {x}")
    out = 0.0
    if 0.0 < x:
        out += x * math.log2(q_prime - 1.0) - x * math.log2(x)
    if x < 1.0:
        out -= (1.0 - x) * math.log2(1.0 - x)
    return out


def entropy_h_inv(q_prime, y):
    """Inverse of entropy_h on the rising branch [0, (q'-1)/q'].

    Bisection to absolute tolerance 1e-12.
    """
    top = math.log2(q_prime)
    if not -1e-12 <= y <= top + 1e-12:
        raise ValueError(f"value must lie in [0, log2(q')] = [0, {top}], got {y}")
    xmax = (q_prime - 1.0) / q_prime
    if y <= 0.0:
        return 0.0
    if y >= top:
        return xmax
    return bisect_root(lambda x: entropy_h(q_prime, x) - y, 0.0, xmax)


def gv_delta(q_prime, rate):
    """Distance guaranteed at rate `rate` over a q'-ary alphabet.

    Solves rate = log2(q') - h_{q'}(delta) on delta in [0, (q'-1)/q'];
    rate 0 maps to (q'-1)/q'.
    """
    top = math.log2(q_prime)
    if not -1e-12 <= rate <= top + 1e-12:
        raise ValueError(f"rate must lie in [0, log2(q')] = [0, {top}], got {rate}")
    return entropy_h_inv(q_prime, top - max(rate, 0.0))


def capacity(ch):
    """log2 q - h2(eps), in bits per channel use."""
    return math.log2(ch.q) - entropy_h(2.0, ch.epsilon)


def theta_cycle(q):
    """Lovasz number of the q-cycle: q/2 for even q, q cos(pi/q)/(1+cos(pi/q)) for odd."""
    if q < 4:
        raise ValueError(f"cycle must have at least 4 vertices, got {q}")
    if q % 2 == 0:
        return q / 2.0
    c = math.cos(math.pi / q)
    return q * c / (1.0 + c)


class CycleConstants(NamedTuple):
    """Per-channel constants shared by the expurgated machinery.

    phi is 1/(2 cos(pi/q)) for odd q; for even q the analogous ratio
    (q - theta)/(2 theta) equals 1/2 exactly and is stored here so that
    rho_bar = log(alpha)/log(phi) holds for every parity.
    """

    theta: float
    phi: float
    q_prime: float
    rho_bar: float


@lru_cache(maxsize=None)
def cycle_constants(ch):
    theta = theta_cycle(ch.q)
    if ch.q % 2 == 0:
        phi = 0.5
    else:
        phi = 1.0 / (2.0 * math.cos(math.pi / ch.q))
    alpha = bhattacharyya(ch.epsilon)
    rho_bar = math.log(alpha) / math.log(phi)
    return CycleConstants(theta=theta, phi=phi, q_prime=ch.q / theta, rho_bar=rho_bar)


class ZeroErrorCapacity(NamedTuple):
    """Zero-error capacity, exact or bracketed.

    For even q and q = 5 the value is exact (lower == upper). For odd
    q >= 7 only a bracket is returned and callers must pick a side
    explicitly; the problem is open there.
    """

    lower: float
    upper: float
    exact: bool

    @property
    def value(self):
        if not self.exact:
            raise ValueError("zero-error capacity is only bracketed for this channel")
        return self.lower


def zero_error_capacity(ch):
    """Exact log2(q/2) for even q and log2(sqrt(5)) for q = 5; bracket otherwise.

    The odd-q lower end log2((q-1)/2) comes from the independent set
    {0, 2, ..., q-3}; the upper end is log2 of the cycle's Lovasz number.
    """
    q = ch.q
    if q % 2 == 0:
        v = math.log2(q / 2)
        return ZeroErrorCapacity(v, v, True)
    if q == 5:
        v = 0.5 * math.log2(5.0)
        return ZeroErrorCapacity(v, v, True)
    return ZeroErrorCapacity(math.log2((q - 1) / 2), math.log2(theta_cycle(q)), False)
