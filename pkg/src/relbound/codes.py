"""Explicit small codes: spectra, exact and Monte-Carlo ML error, constructions.

Codes are plain tuples of words over Z_q. The maximum-likelihood decoder
breaks ties uniformly at random and the enumeration accounts for that
exactly, by accumulating per-sender error mass term by term (so a
zero-error code really evaluates to 0.0, not to 1 minus float noise).
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import NamedTuple

import numpy as np

from .channel import INF, bhattacharyya

OUTPUT_CAP = 10**7
DENSE_CAP = 1 << 22
M_CAP = 4096


@dataclass(frozen=True)
class Code:
    """A list of distinct equal-length words over Z_q."""

    words: tuple
    q: int

    def __post_init__(self):
        if len(self.words) == 0:
            raise ValueError("a code needs at least one word")
        n = len(self.words[0])
        if n < 1:
            raise ValueError("blocklength must be at least 1")
        seen = set()
        for w in self.words:
            if len(w) != n:
                raise ValueError("all words must have the same length")
            if any(not 0 <= s < self.q for s in w):
                raise ValueError(f"symbol out of range in word {w}")
            if w in seen:
                raise ValueError(f"duplicate word {w}")
            seen.add(w)

    @property
    def n(self):
        return len(self.words[0])

    @property
    def M(self):
        return len(self.words)

    @cached_property
    def array(self):
        return np.array(self.words, dtype=np.int64)


def make_code(words, q):
    return Code(tuple(tuple(int(s) for s in w) for w in words), q)


def code_weights(code):
    """Semidistance of every word to the all-zero word (float array, inf allowed)."""
    a = code.array
    sym = np.where(a == 0, 0.0, np.where((a == 1) | (a == code.q - 1), 1.0, INF))
    return sym.sum(axis=1)


@dataclass(frozen=True)
class Spectrum:
    """Pair counts at each finite semidistance, normalized by code size."""

    counts: dict
    infinite_count: Fraction

    def total_pairs(self):
        return sum(self.counts.values(), start=Fraction(0)) + self.infinite_count


def spectrum(code):
    """A_z = |{(i, j): i != j, d = z}| / M for each finite z, plus the inf mass."""
    a = code.array
    m = code.M
    finite = {}
    inf_pairs = 0
    chunk = max(1, DENSE_CAP // max(m * code.n, 1))
    for lo in range(0, m, chunk):
        block = a[lo : lo + chunk]
        diff = (block[:, None, :] - a[None, :, :]) % code.q
        sym = np.where(diff == 0, 0.0, np.where((diff == 1) | (diff == code.q - 1), 1.0, INF))
        d = sym.sum(axis=2)
        for i in range(block.shape[0]):
            d[i, lo + i] = INF  # drop the diagonal
        flat = d.ravel()
        inf_pairs += int(np.isinf(flat).sum()) - block.shape[0]
        vals = flat[np.isfinite(flat)].astype(np.int64)
        if vals.size:
            counts = np.bincount(vals)
            for z, c in enumerate(counts):
                if c:
                    finite[z] = finite.get(z, 0) + int(c)
    return Spectrum(
        counts={z: Fraction(c, m) for z, c in sorted(finite.items())},
        infinite_count=Fraction(inf_pairs, m),
    )


def union_bound_pe(code, ch):
    """Spectrum-weighted pairwise bound: sum of A_z alpha^z over finite z."""
    if code.q != ch.q:
        raise ValueError("code and channel alphabet sizes differ")
    alpha = bhattacharyya(ch.epsilon)
    return float(sum(float(a) * alpha**z for z, a in spectrum(code).counts.items()))


def _noise_patterns(n):
    pats = np.array(list(product((0, 1), repeat=n)), dtype=np.int64)
    return pats, pats.sum(axis=1)


def _word_indices(arr, q):
    powers = q ** np.arange(arr.shape[-1] - 1, -1, -1, dtype=np.int64)
    return arr @ powers


def exact_pe(code, ch, criterion="avg"):
    """Exact ML error probability by output enumeration.

    criterion "avg" averages over codewords, "max" takes the worst one.
    Ties are charged their exact expected cost under a uniformly random
    choice among the maximizers.
    """
    if code.q != ch.q:
        raise ValueError("code and channel alphabet sizes differ")
    if criterion not in ("avg", "max"):
        raise ValueError(f"criterion must be 'avg' or 'max', got {criterion}")
    q, n, m = code.q, code.n, code.M
    if q**n > OUTPUT_CAP:
        raise ValueError(f"q^n = {q ** n} exceeds the enumeration cap {OUTPUT_CAP}")
    if m > M_CAP:
        raise ValueError(f"code size {m} exceeds the cap {M_CAP}")
    pats, weights = _noise_patterns(n)
    eps = ch.epsilon
    pw = (1.0 - eps) ** (n - weights) * eps**weights
    reach = [( _word_indices((code.array[i] + pats) % q, q), pw) for i in range(m)]

    dense = q**n <= DENSE_CAP
    if dense:
        max_w = np.zeros(q**n)
        for idx, w in reach:
            np.maximum.at(max_w, idx, w)
        cnt = np.zeros(q**n, dtype=np.int64)
        for idx, w in reach:
            hit = w == max_w[idx]
            np.add.at(cnt, idx[hit], 1)
        errs = np.empty(m)
        for i, (idx, w) in enumerate(reach):
            share = np.where(w == max_w[idx], 1.0 / cnt[idx], 0.0)
            errs[i] = float(np.sum(w * (1.0 - share)))
    else:
        if m * len(pats) > DENSE_CAP:
            raise ValueError("reachable-output enumeration exceeds the cap")
        best = {}
        for idx, w in reach:
            for o, wi in zip(idx.tolist(), w.tolist()):
                if wi > best.get(o, 0.0):
                    best[o] = wi
        cnt = {}
        for idx, w in reach:
            for o, wi in zip(idx.tolist(), w.tolist()):
                if wi == best[o]:
                    cnt[o] = cnt.get(o, 0) + 1
        errs = np.empty(m)
        for i, (idx, w) in enumerate(reach):
            e = 0.0
            for o, wi in zip(idx.tolist(), w.tolist()):
                e += wi * (1.0 - (1.0 / cnt[o] if wi == best[o] else 0.0))
            errs[i] = e
    return float(errs.mean()) if criterion == "avg" else float(errs.max())


class MCResult(NamedTuple):
    """Monte-Carlo estimate with a Wilson 95 percent interval."""

    estimate: float
    lower: float
    upper: float
    trials: int
    errors: int


_Z95 = 1.959963984540054


def wilson_interval(errors, trials, z=_Z95):
    phat = errors / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if errors == 0 else max(0.0, center - half)
    hi = 1.0 if errors == trials else min(1.0, center + half)
    return lo, hi


def mc_pe(code, ch, trials, seed=0, block=1 << 14):
    """Monte-Carlo average ML error with randomized tie-breaking."""
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    if code.q != ch.q:
        raise ValueError("code and channel alphabet sizes differ")
    rng = np.random.default_rng(seed)
    q, n, m = code.q, code.n, code.M
    eps = ch.epsilon
    pw = (1.0 - eps) ** (n - np.arange(n + 1)) * eps ** np.arange(n + 1)
    errors = 0
    done = 0
    arr = code.array
    while done < trials:
        b = min(block, trials - done)
        senders = rng.integers(0, m, size=b)
        noise = (rng.random((b, n)) < eps).astype(np.int64)
        y = (arr[senders] + noise) % q
        diff = (y[:, None, :] - arr[None, :, :]) % q
        valid = np.all(diff <= 1, axis=2)
        k = diff.sum(axis=2)
        scores = np.where(valid, pw[np.minimum(k, n)], 0.0)
        best = scores.max(axis=1, keepdims=True)
        tie = scores == best
        pick = np.where(tie, rng.random(tie.shape), -1.0).argmax(axis=1)
        errors += int(np.sum(pick != senders))
        done += b
    lo, hi = wilson_interval(errors, trials)
    return MCResult(errors / trials, lo, hi, trials, errors)


def build_coset_code(c2, q, size_cap=M_CAP * 16):
    """Union of shifts of the even-symbol zero-error code by a binary code.

    Every word is c0 + c2 in Z_q with c0 drawn from {0, 2, ..., q-2}^n;
    the (parity) decomposition is unique, so the size is (q/2)^n * |c2|
    and the rate is exactly log2(q/2) plus the binary rate.
    """
    if q % 2 != 0 or q < 4:
        raise ValueError(f"need an even alphabet size >= 4, got {q}")
    if c2.q != 2:
        raise ValueError("the shift code must be binary")
    n = c2.n
    size = (q // 2) ** n * c2.M
    if size > size_cap:
        raise ValueError(f"coset code size {size} exceeds the cap {size_cap}")
    base = np.array(list(product(range(0, q, 2), repeat=n)), dtype=np.int64)
    words = (base[:, None, :] + c2.array[None, :, :]) % q
    return make_code(words.reshape(-1, n), q)


def q5_generator_plus(g):
    """Stacked generator [[I, 2I], [0, G]] for the length-doubling construction."""
    g = np.asarray(g, dtype=np.int64) % 5
    k, n = g.shape
    top = np.hstack([np.eye(n, dtype=np.int64), 2 * np.eye(n, dtype=np.int64)])
    if k == 0:
        return top
    bottom = np.hstack([np.zeros((k, n), dtype=np.int64), g])
    return np.vstack([top, bottom])


def build_q5_code(g, size_cap=1 << 16):
    """Length-2n code over Z_5 generated by [[I, 2I], [0, G]].

    G must be a full-rank k x n matrix over Z_5 (k = 0 gives the n-fold
    power of the two-letter zero-error code). Size is 5^(n+k).
    """
    g = np.asarray(g, dtype=np.int64) % 5
    if g.ndim != 2:
        raise ValueError("generator must be a 2-D matrix")
    k, n = g.shape
    if k and rank_mod_p(g, 5) != k:
        raise ValueError("generator must have full rank over Z_5")
    size = 5 ** (n + k)
    if size > size_cap:
        raise ValueError(f"code size {size} exceeds the cap {size_cap}")
    gp = q5_generator_plus(g)
    info = np.array(list(product(range(5), repeat=n + k)), dtype=np.int64)
    words = info @ gp % 5
    return make_code(words, 5)


def pentagon_code():
    """Shannon's five-word zero-error code of length 2 over Z_5."""
    return build_q5_code(np.zeros((0, 1), dtype=np.int64))


def q5_weight_census(g):
    """Exhaustive weight check of the length-doubling construction.

    For every information suffix with image of Hamming weight d, the
    completions of finite weight must number C(d, t) at weight d + t
    for t = 0..d, all others infinite. Returns (ok, failures).
    """
    g = np.asarray(g, dtype=np.int64) % 5
    k, n = g.shape
    failures = []
    prefixes = np.array(list(product(range(5), repeat=n)), dtype=np.int64)
    for u2 in product(range(5), repeat=k):
        nu = (np.array(u2, dtype=np.int64) @ g) % 5 if k else np.zeros(n, dtype=np.int64)
        d = int(np.count_nonzero(nu))
        v1 = prefixes
        v2 = (2 * prefixes + nu) % 5
        both = np.concatenate([v1, v2], axis=1)
        sym = np.where(both == 0, 0.0, np.where((both == 1) | (both == 4), 1.0, INF))
        w = sym.sum(axis=1)
        finite = w[np.isfinite(w)].astype(np.int64)
        expected = {d + t: math.comb(d, t) for t in range(d + 1)}
        got = {}
        for z in finite.tolist():
            got[z] = got.get(z, 0) + 1
        if got != expected or len(finite) != 2**d:
            failures.append((tuple(u2), d, got, expected))
    return len(failures) == 0, failures


def is_prime(p):
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def rank_mod_p(mat, p):
    """Rank over the prime field Z_p by Gaussian elimination."""
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if a[r, c] % p:
                pivot = r
                break
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank] = a[rank] * inv % p
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] = (a[r] - a[r, c] * a[rank]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def random_generator_matrix(q_prime, n, k, rng):
    """Uniform random k x n matrix over Z_q', resampled until full rank."""
    if not is_prime(q_prime):
        raise ValueError(f"alphabet size must be prime for rank checks, got {q_prime}")
    if k == 0:
        return np.zeros((0, n), dtype=np.int64)
    while True:
        g = rng.integers(0, q_prime, size=(k, n), dtype=np.int64)
        if rank_mod_p(g, q_prime) == k:
            return g


def random_linear_code(q_prime, n, k, seed=0):
    """Code spanned by a random full-rank generator (deterministic per seed)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    g = random_generator_matrix(q_prime, n, k, rng)
    if k == 0:
        return make_code([tuple([0] * n)], q_prime)
    info = np.array(list(product(range(q_prime), repeat=k)), dtype=np.int64)
    words = info @ g % q_prime
    return make_code(words, q_prime)


def format_code(code):
    """Plain-text form: header 'q n M', then one word per line."""
    lines = [f"{code.q} {code.n} {code.M}"]
    for w in code.words:
        lines.append(" ".join(str(s) for s in w))
    return "\n".join(lines) + "\n"


def parse_code(text):
    """Inverse of format_code; errors carry the offending line number."""
    lines = [ln for ln in text.splitlines()]
    if not lines or not lines[0].strip():
        raise ValueError("line 1: expected header 'q n M'")
    try:
        q, n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise ValueError(f"line 1: malformed header {lines[0]!r}") from None
    words = []
    row = 0
    for i, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        parts = ln.split()
        if len(parts) != n:
            raise ValueError(f"line {i}: expected {n} symbols, got {len(parts)}")
        try:
            w = tuple(int(x) for x in parts)
        except ValueError:
            raise ValueError(f"line {i}: non-integer symbol in {ln!r}") from None
        if any(not 0 <= s < q for s in w):
            raise ValueError(f"line {i}: symbol out of range 0..{q - 1}")
        words.append(w)
        row += 1
    if row != m:
        raise ValueError(f"header announced {m} words but found {row}")
    return make_code(words, q)
