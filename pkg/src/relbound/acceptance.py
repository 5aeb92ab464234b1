"""Named acceptance checks runnable from the CLI and from pytest.

Each check returns a CheckResult with one line per measured quantity so
the verify command can print measured-vs-expected detail. Checks are
deterministic for a fixed seed.
"""

import math
import time
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from . import channel as chn
from . import classical as cls
from . import codes as cod
from . import lower_bounds as lob
from . import oracle as orc
from . import upper_bounds as upb
from .channel import Channel


@dataclass
class CheckResult:
    name: str
    passed: bool
    lines: list = field(default_factory=list)
    seconds: float = 0.0


class _Recorder:
    def __init__(self):
        self.lines = []
        self.ok = True

    def expect(self, label, measured, expected, tol):
        good = abs(measured - expected) <= tol
        self.ok &= good
        self.lines.append(
            f"{'PASS' if good else 'FAIL'} {label}: measured {measured!r}, "
            f"expected {expected!r} (tol {tol:g})"
        )

    def require(self, label, condition, detail=""):
        self.ok &= bool(condition)
        suffix = f": {detail}" if detail else ""
        self.lines.append(f"{'PASS' if condition else 'FAIL'} {label}{suffix}")


def check_theta(seed=0):
    rec = _Recorder()
    rec.expect("theta_cycle(5) = sqrt(5)", chn.theta_cycle(5), math.sqrt(5.0), 1e-12)
    rec.require(
        "theta_cycle(4) = 2 exactly",
        chn.theta_cycle(4) == 2.0,
        f"measured {chn.theta_cycle(4)!r}",
    )
    c0 = chn.zero_error_capacity(Channel(6, 0.5))
    rec.expect("zero_error_capacity(q=6) = log2(3)", c0.value, math.log2(3.0), 1e-12)
    return rec


def check_eps_bar(seed=0):
    rec = _Recorder()
    for q in (4, 6):
        rec.expect(f"eps_bar(q={q})", cls.eps_bar(q), 0.0220, 5e-4)
    a4 = chn.bhattacharyya(cls.eps_bar(4))
    rec.expect("(1+2a)/(4a) at eps_bar, even q", (1 + 2 * a4) / (4 * a4), 2.2017, 5e-3)
    a5 = chn.bhattacharyya(cls.eps_bar(5))
    rec.expect("(1+2a)/(5a) at eps_bar(5)", (1 + 2 * a5) / (5 * a5), 1.3752, 5e-3)
    return rec


def check_oracle(seed=0):
    rec = _Recorder()
    qs = (4, 5, 6)
    eps_grid = (0.01, 0.1, 0.5)
    for q, eps in product(qs, eps_grid):
        ch = Channel(q, eps)
        rb = cls.rho_bar(ch)
        rhos = sorted({1.0, 0.5 * (1.0 + rb), rb})
        for rho in rhos:
            if rho < 1.0:
                continue
            target_fn = rho * math.log2(
                q / (1.0 + 2.0 * chn.bhattacharyya(eps) ** (1.0 / rho))
            )
            for n in (1, 2):
                got = orc.expurgated_oracle_ex(ch, rho, n, restarts=6, seed=seed)
                rec.expect(
                    f"(a) q={q} eps={eps} rho={rho:.4f} n={n}", got, target_fn, 1e-6
                )
    for q, eps in product((4, 6), eps_grid):
        ch = Channel(q, eps)
        rb = cls.rho_bar(ch)
        for mult in (1.5, 3.0):
            rho = mult * rb
            got = orc.expurgated_oracle_ex(ch, rho, 1, restarts=16, seed=seed)
            rec.expect(
                f"(b) q={q} eps={eps} rho={rho:.3f} n=1", got, rho * math.log2(q / 2), 1e-4
            )
    for eps in eps_grid:
        ch = Channel(5, eps)
        rho = 2.0 * cls.rho_bar(ch)
        t0 = time.time()
        res = orc.minimize_q(ch, rho, 2, restarts=200, seed=seed)
        dt = time.time() - t0
        rec.expect(f"(c) q=5 n=2 eps={eps} min_Q", res.min_q, 0.2, 1e-5)
        rec.require(
            f"(c) q=5 n=2 eps={eps} runtime <= 60 s (200 restarts)",
            dt <= 60.0,
            f"{dt:.1f} s",
        )
    return rec


def check_psd_boundary(seed=0):
    rec = _Recorder()
    for q in range(4, 10):
        ch = Channel(q, 0.1)
        lam = orc.eigenvalues_g1(ch, cls.rho_bar(ch))
        rec.expect(f"min eigenvalue at rho_bar, q={q}", float(np.min(lam)), 0.0, 1e-10)
    return rec


def check_endpoints(seed=0):
    rec = _Recorder()
    for qp in (2.0, math.sqrt(5.0), 2.4):
        rec.expect(f"lp1_rate(q'={qp:.4f}, 0)", upb.lp1_rate(qp, 0.0), math.log2(qp), 1e-10)
        rec.expect(
            f"lp1_rate(q'={qp:.4f}, (q'-1)/q')",
            upb.lp1_rate(qp, (qp - 1) / qp),
            0.0,
            1e-10,
        )
    rec.expect("delta_lp2(0)", upb.delta_lp2(0.0), 0.5, 1e-6)
    rec.expect("delta_lp2(1)", upb.delta_lp2(1.0), 0.0, 1e-6)
    for q in (5, 7, 9):
        cc = chn.cycle_constants(Channel(q, 0.5))
        worst = 0.0
        for tau in np.linspace(0.0, 1.0, 1000):
            lhs = chn.entropy_h(cc.q_prime, float(tau)) - float(tau) * math.log2(cc.phi)
            worst = max(worst, abs(lhs - chn.entropy_h(3.0, float(tau))))
        rec.expect(f"h_q'(t) - t log2(phi) = h3(t), q={q} (max abs dev)", worst, 0.0, 1e-10)
    return rec


def check_counterexample(seed=0):
    rec = _Recorder()
    ch4 = Channel(4, 0.01)
    r_lo = cls.expurgated_junction_rate(0.01, 4)
    r_hi = lob.junction_rate_even(0.01, 4)
    margins = [
        lob.lower_bound_even(ch4, r) - cls.expurgated_exponent(ch4, r)
        for r in np.linspace(r_lo, r_hi, 200)[1:-1]
    ]
    rec.require(
        "q=4 eps=0.01: coset bound beats expurgated by >= 0.01 bits inside the junction gap",
        max(margins) >= 0.01,
        f"max margin {max(margins):.6f} on ({r_lo:.6f}, {r_hi:.6f})",
    )
    for q in (4, 5):
        eps_grid = np.linspace(0.001, 0.45, 50)
        jr = (lambda e: lob.junction_rate_even(e, 4)) if q == 4 else lob.junction_rate_q5
        ok = all(jr(float(e)) > cls.expurgated_junction_rate(float(e), q) for e in eps_grid)
        rec.require(
            f"q={q}: new-bound junction exceeds expurgated junction on the eps grid", ok
        )
    ch5 = Channel(5, 0.01)
    lo5 = 0.5 * math.log2(5.0)
    hi5 = lob.junction_rate_q5(0.01)
    margins5 = [
        lob.lower_bound_q5(0.01, float(r)) - cls.expurgated_exponent(ch5, float(r))
        for r in np.linspace(lo5, hi5, 200)[1:-1]
    ]
    rec.require(
        "q=5 eps=0.01: coset bound beats expurgated by >= 0.01 bits on its domain",
        max(margins5) >= 0.01,
        f"max margin {max(margins5):.6f} on ({lo5:.6f}, {hi5:.6f})",
    )
    return rec


def check_shift_laws(seed=0):
    rec = _Recorder()
    ch4 = Channel(4, 0.01)
    shift = math.log2(ch4.q / 2)
    worst = 0.0
    for r in np.linspace(shift + 1e-6, chn.capacity(ch4), 50):
        lhs = lob.lower_bound_even(ch4, float(r))
        rhs = cls.bsc_expurgated_exponent(0.01, float(r) - shift)
        worst = max(worst, abs(lhs - rhs))
    rec.expect("coset bound = shifted BSC expurgated bound (max abs dev)", worst, 0.0, 1e-12)
    for eps in (0.01, 0.1):
        small, big = Channel(4, eps), Channel(8, eps)
        worst_r = worst_sp = 0.0
        for r in np.linspace(1e-3, chn.capacity(small), 60):
            r = float(r)
            worst_r = max(
                worst_r,
                abs(cls.random_coding_exponent(small, r) - cls.random_coding_exponent(big, r + 1.0)),
            )
            a = cls.sphere_packing_exponent(small, r)
            b = cls.sphere_packing_exponent(big, r + 1.0)
            if math.isinf(a) and math.isinf(b):
                continue
            worst_sp = max(worst_sp, abs(a - b))
        rec.expect(f"random coding +1 bit shift law, eps={eps}", worst_r, 0.0, 1e-10)
        rec.expect(f"sphere packing +1 bit shift law, eps={eps}", worst_sp, 0.0, 1e-10)
    return rec


def check_envelope(seed=0):
    rec = _Recorder()
    for q, eps in ((4, 0.01), (5, 0.01), (5, 0.5)):
        ch = Channel(q, eps)
        cap = chn.capacity(ch)
        bad = []
        for r in np.linspace(1e-3, cap, 200):
            lo, up = upb.envelope(ch, float(r))
            if math.isfinite(lo) and math.isfinite(up) and lo > up:
                bad.append(float(r))
        rec.require(
            f"q={q} eps={eps}: lower envelope <= upper envelope wherever both finite",
            not bad,
            f"violations at {bad[:3]}" if bad else "200-point grid clean",
        )
    ch4 = Channel(4, 0.01)
    r = math.log2(ch4.q / 2) + 1e-10
    ratio = cls.sphere_packing_exponent(ch4, r) / lob.lower_bound_even(ch4, r)
    rec.expect("sphere packing / coset bound as R drops to log2(q/2)", ratio, 2.0, 1e-4)
    return rec


def _all_binary_subspaces(n):
    """Every linear subspace of F_2^n once, via reduced echelon forms."""
    yield cod.make_code([tuple([0] * n)], 2)
    for k in range(1, n + 1):
        for pivots in combinations(range(n), k):
            free = [
                (i, j)
                for i in range(k)
                for j in range(n)
                if j > pivots[i] and j not in pivots
            ]
            for bits in range(1 << len(free)):
                g = np.zeros((k, n), dtype=np.int64)
                for i, p in enumerate(pivots):
                    g[i, p] = 1
                for b, (i, j) in enumerate(free):
                    g[i, j] = (bits >> b) & 1
                info = np.array(list(product((0, 1), repeat=k)), dtype=np.int64)
                yield cod.make_code(info @ g % 2, 2)


def check_simulator(seed=0):
    rec = _Recorder()
    pent = cod.pentagon_code()
    for crit in ("avg", "max"):
        pe = cod.exact_pe(pent, Channel(5, 0.1), crit)
        rec.require(f"pentagon exact_pe({crit}) = 0 exactly", pe == 0.0, f"measured {pe!r}")

    rng = np.random.default_rng(seed)
    worst_gap = 0.0
    ok_union = True
    for _ in range(50):
        n = int(rng.integers(2, 7))
        k = int(rng.integers(0, n + 1))
        c2 = cod.random_linear_code(2, n, k, seed=int(rng.integers(0, 2**31)))
        code = cod.build_coset_code(c2, 4)
        ch = Channel(4, float(rng.choice([0.01, 0.1, 0.3, 0.5])))
        exact = cod.exact_pe(code, ch, "avg")
        union = cod.union_bound_pe(code, ch)
        ok_union &= exact <= union + 1e-15
        worst_gap = min(worst_gap, union - exact)
    rec.require(
        "50 seeded coset codes: exact_pe(avg) <= union bound",
        ok_union,
        f"min slack {worst_gap:.3e}",
    )

    checked = 0
    ok_rel = True
    for n in range(1, 7):
        for c2 in _all_binary_subspaces(n):
            res = lob.coset_spectrum_check(c2, 4)
            ok_rel &= res.ok
            checked += 1
    rec.require(
        "A_z = 2^z B_z for every linear binary code of length <= 6",
        ok_rel,
        f"{checked} subspaces checked",
    )

    ok_census = True
    cases = 0
    rng2 = np.random.default_rng(seed + 1)
    for n in range(1, 4):
        for k in range(0, min(n, 2) + 1):
            for _ in range(3 if k else 1):
                g = cod.random_generator_matrix(5, n, k, rng2)
                ok, failures = cod.q5_weight_census(g)
                ok_census &= ok
                cases += 1
    rec.require(
        "length-doubling construction weight census matches the C(d,t) law",
        ok_census,
        f"{cases} generators checked (n <= 3, k <= 2)",
    )
    return rec


def check_fig7_ordering(seed=0):
    rec = _Recorder()
    ch = Channel(5, 0.5)
    lo = 0.5 * math.log2(5.0) + 0.01
    hi = math.log2(5.0) - 1.0 - 0.01
    ok_order = True
    ok_env = True
    for r in np.linspace(lo, hi, 40):
        r = float(r)
        spec_v = upb.spectrum_half_bound(5, r)
        dist_v = upb.min_distance_bound(ch, r)
        low = upb.envelope(ch, r, "lower")
        ok_order &= spec_v <= dist_v + 1e-12
        ok_env &= (spec_v >= low - 1e-12) and (dist_v >= low - 1e-12)
    rec.require("spectrum bound <= distance bound on the q=5, eps=1/2 grid", ok_order)
    rec.require("both converses dominate the lower envelope on the grid", ok_env)
    return rec


CRITERIA = [
    ("theta", "zero-error constants and the cycle Lovasz number", check_theta),
    ("eps_bar", "junction threshold and figure-caption ratios", check_eps_bar),
    ("oracle", "simplex minimizer against the closed forms", check_oracle),
    ("psd_boundary", "Gram matrix loses PSD exactly at rho_bar", check_psd_boundary),
    ("endpoints", "LP endpoint identities and the entropy identity", check_endpoints),
    ("counterexample", "coset bounds strictly beat the expurgated bound", check_counterexample),
    ("shift_laws", "rate-shift identities between channels", check_shift_laws),
    ("envelope", "lower envelope never exceeds upper envelope", check_envelope),
    ("simulator", "simulator ground truth on explicit codes", check_simulator),
    ("fig7_ordering", "converse ordering at eps = 1/2, q = 5", check_fig7_ordering),
]


def run_checks(only=None, seed=0):
    """Run all (or a name-filtered subset of) acceptance checks."""
    results = []
    for name, _desc, fn in CRITERIA:
        if only and only != name:
            continue
        t0 = time.time()
        rec = fn(seed=seed)
        results.append(
            CheckResult(name=name, passed=rec.ok, lines=rec.lines, seconds=time.time() - t0)
        )
    if only and not results:
        known = ", ".join(name for name, _, _ in CRITERIA)
        raise ValueError(f"unknown criterion {only!r}; known: {known}")
    return results
