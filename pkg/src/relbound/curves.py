"""Named bound curves on rate grids, with CSV emission and parsing.

The CSV schema is one row per (curve, grid point):
R,bound,value,q,epsilon,params with 17 significant digits, inf spelled
"inf", and params as semicolon-joined key=value pairs. Parsing the
emitted text reproduces the curves exactly.
"""

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .channel import INF, Channel, cycle_constants
from .classical import (
    expurgated_exponent,
    expurgated_is_exact,
    random_coding_exponent,
    sphere_packing_exponent,
)
from .lower_bounds import lower_bound_even, lower_bound_q5
from .solvers import pmap
from .upper_bounds import (
    LP2_ANCHOR_GATE,
    binary_reduction_bound,
    envelope,
    lp2_anchored_line,
    min_distance_bound,
    spectrum_half_bound,
    theta_anchored_line,
)


@dataclass(frozen=True)
class BoundCurve:
    """One named bound sampled on a strictly increasing rate grid."""

    name: str
    points: tuple
    channel: Channel
    params: tuple = ()

    def __post_init__(self):
        rates = [p[0] for p in self.points]
        if any(b <= a for a, b in zip(rates, rates[1:])):
            raise ValueError(f"rates must be strictly increasing in curve {self.name}")

    @property
    def rates(self):
        return [p[0] for p in self.points]

    @property
    def values(self):
        return [p[1] for p in self.points]


class BoundSpec(NamedTuple):
    name: str
    kind: str  # "lower" or "upper"
    requires: str  # human-readable precondition
    applies: Callable  # Channel -> bool
    evaluate: Callable  # (Channel, float) -> float
    params: Callable  # Channel -> dict


def _no_params(ch):
    return {}


def _coset_even(ch, r):
    shift = math.log2(ch.q / 2)
    if r <= shift:
        # zero-error communication exists at and below log2(q/2)
        return INF
    return lower_bound_even(ch, r)


def _coset_q5(ch, r):
    lo = 0.5 * math.log2(5.0)
    if r < lo:
        return INF
    return lower_bound_q5(ch.epsilon, r)


def _binary_reduction(ch, r):
    if r <= math.log2(ch.q / 2):
        return INF
    return binary_reduction_bound(ch, r)


def _min_distance(ch, r):
    if r <= math.log2(cycle_constants(ch).theta):
        return INF
    return min_distance_bound(ch, r)


def _spectrum_half(ch, r):
    if not math.log2(cycle_constants(ch).theta) < r < math.log2(ch.q) - 1.0:
        return INF
    return spectrum_half_bound(ch.q, r)


def _expurgated_params(ch):
    return {"exact": "true" if expurgated_is_exact(ch.q) else "false"}


def _line_params(line):
    return {"r1": format_value(line.r1), "r2": format_value(line.r2)}


BOUNDS = {
    "random_coding": BoundSpec(
        "random_coding", "lower", "always applicable",
        lambda ch: True, random_coding_exponent, _no_params,
    ),
    "sphere_packing": BoundSpec(
        "sphere_packing", "upper", "always applicable",
        lambda ch: True, sphere_packing_exponent, _no_params,
    ),
    "expurgated": BoundSpec(
        "expurgated", "lower", "always applicable (upper bound on itself for odd q >= 7)",
        lambda ch: True, expurgated_exponent, _expurgated_params,
    ),
    "coset_even": BoundSpec(
        "coset_even", "lower", "requires even q",
        lambda ch: ch.q % 2 == 0, _coset_even, _no_params,
    ),
    "coset_q5": BoundSpec(
        "coset_q5", "lower", "requires q = 5",
        lambda ch: ch.q == 5, _coset_q5, _no_params,
    ),
    "binary_reduction": BoundSpec(
        "binary_reduction", "upper", "always applicable above log2(q/2)",
        lambda ch: True, _binary_reduction, _no_params,
    ),
    "min_distance": BoundSpec(
        "min_distance", "upper", "requires odd q",
        lambda ch: ch.q % 2 == 1, _min_distance, _no_params,
    ),
    "spectrum_half": BoundSpec(
        "spectrum_half", "upper", "requires odd q and eps = 1/2",
        lambda ch: ch.q % 2 == 1 and ch.epsilon == 0.5, _spectrum_half, _no_params,
    ),
    "straight_line_theta": BoundSpec(
        "straight_line_theta", "upper", "requires odd q",
        lambda ch: ch.q % 2 == 1,
        lambda ch, r: theta_anchored_line(ch).value(r),
        lambda ch: _line_params(theta_anchored_line(ch)),
    ),
    "straight_line_lp2": BoundSpec(
        "straight_line_lp2", "upper",
        f"requires eps < 1/2 - sqrt(3)/4 = {LP2_ANCHOR_GATE:.6f}",
        lambda ch: ch.epsilon < LP2_ANCHOR_GATE,
        lambda ch, r: lp2_anchored_line(ch).value(r),
        lambda ch: _line_params(lp2_anchored_line(ch)),
    ),
    "envelope_lower": BoundSpec(
        "envelope_lower", "lower", "always applicable",
        lambda ch: True, lambda ch, r: envelope(ch, r, "lower"), _no_params,
    ),
    "envelope_upper": BoundSpec(
        "envelope_upper", "upper", "always applicable",
        lambda ch: True, lambda ch, r: envelope(ch, r, "upper"), _no_params,
    ),
}

# "all" leaves the envelopes out; they duplicate the other curves
ALL_SELECTABLE = [n for n in BOUNDS if not n.startswith("envelope")]


def applicable_bounds(ch):
    return [n for n in ALL_SELECTABLE if BOUNDS[n].applies(ch)]


def resolve_selection(ch, selector):
    """Expand a --bounds selector, refusing inapplicable explicit picks."""
    if selector in ("all", "", None):
        return applicable_bounds(ch)
    names = [s.strip() for s in selector.split(",") if s.strip()]
    for n in names:
        if n not in BOUNDS:
            raise ValueError(f"unknown bound {n!r}; known: {', '.join(BOUNDS)}")
        spec = BOUNDS[n]
        if not spec.applies(ch):
            raise ValueError(
                f"bound {n!r} is not applicable to q={ch.q}, eps={ch.epsilon}: {spec.requires}"
            )
    return names


def rate_grid(r_min, r_max, points):
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points}")
    if not r_min < r_max:
        raise ValueError(f"need r_min < r_max, got {r_min} >= {r_max}")
    return np.linspace(r_min, r_max, points)


def evaluate_curve(ch, name, grid, workers=None):
    spec = BOUNDS[name]
    vals = pmap(lambda r: spec.evaluate(ch, float(r)), grid, workers=workers)
    pts = tuple((float(r), float(v)) for r, v in zip(grid, vals))
    return BoundCurve(name=name, points=pts, channel=ch, params=tuple(sorted(spec.params(ch).items())))


def evaluate_curves(ch, names, grid, workers=None):
    return [evaluate_curve(ch, n, grid, workers=workers) for n in names]


def format_value(x):
    if x == INF:
        return "inf"
    return f"{x:.17g}"


def _parse_value(s):
    return INF if s == "inf" else float(s)


def curves_to_csv(curves):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["R", "bound", "value", "q", "epsilon", "params"])
    for c in curves:
        params = ";".join(f"{k}={v}" for k, v in c.params)
        for r, v in c.points:
            w.writerow(
                [format_value(r), c.name, format_value(v), c.channel.q,
                 format_value(c.channel.epsilon), params]
            )
    return buf.getvalue()


def csv_to_curves(text):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["R", "bound", "value", "q", "epsilon", "params"]:
        raise ValueError("missing or malformed CSV header")
    order = []
    grouped = {}
    for i, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 6:
            raise ValueError(f"row {i}: expected 6 columns, got {len(row)}")
        r, name, value, q, eps, params = row
        key = (name, int(q), _parse_value(eps), params)
        if key not in grouped:
            order.append(key)
            grouped[key] = []
        grouped[key].append((_parse_value(r), _parse_value(value)))
    out = []
    for key in order:
        name, q, eps, params = key
        pstr = tuple(tuple(kv.split("=", 1)) for kv in params.split(";") if kv)
        out.append(
            BoundCurve(
                name=name,
                points=tuple(grouped[key]),
                channel=Channel(q, eps),
                params=pstr,
            )
        )
    return out
