"""Binary erasure channel experiments: polar baseline construction, exact
ML erasure decoding, and Monte-Carlo / exhaustive frame error rates.

ML decoding over the BEC succeeds exactly when the generator submatrix on
the surviving positions has full rank k; ambiguity counts as a frame error.
The Monte-Carlo path uses the equivalent dual test (erased columns of a
parity-check matrix must stay linearly independent), which fails fast and
vectorizes well; tests pin the two routes to each other.

Reproducibility contract: trials are split into `workers` contiguous
blocks; block w draws from its own counter-based Philox stream keyed by
(seed, w).  Results are bit-identical for a fixed (seed, trials, workers)
triple, independent of batch size or thread scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .gf2 import BitMatrix, gf2_rank, null_space, select_columns
from .monomials import MonomialCode, generator_matrix, mon_of_row

_BATCH = 8192


def polar_reliabilities(m: int, eps: float, bit_order: str = "msb") -> np.ndarray:
    """Exact BEC subchannel erasure probabilities z_i for all 2^m indices.

    Starting from z = eps, each index bit applies z -> 2z - z^2 (bit 0) or
    z -> z^2 (bit 1).  The default processes bits most significant first,
    which makes z_i the erasure probability of the successive-cancellation
    subchannel of row i of A^(x m); "lsb" is the documented fallback order.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"erasure probability {eps} outside [0, 1]")
    if bit_order not in ("msb", "lsb"):
        raise ValueError(f"unknown bit order {bit_order!r}")
    z = np.array([eps], dtype=np.float64)
    for _ in range(m):
        minus = 2.0 * z - z * z
        plus = z * z
        if bit_order == "msb":
            # refine in place: the earlier a bit is processed, the coarser
            # the block it selects, so the most significant bit acts first
            out = np.empty(2 * z.size, dtype=np.float64)
            out[0::2] = minus
            out[1::2] = plus
            z = out
        else:
            z = np.concatenate([minus, plus])
    return z


def polar_code_bec(m: int, k: int, eps: float, bit_order: str = "msb") -> MonomialCode:
    """Polar code for BEC(eps): the k most reliable subchannel indices.

    Ties prefer the larger index weight (larger codeword weight), then the
    larger index.
    """
    n = 1 << m
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    z = polar_reliabilities(m, eps, bit_order)
    order = sorted(range(n), key=lambda i: (z[i], -i.bit_count(), -i))
    return MonomialCode(m, frozenset(mon_of_row(i, m) for i in order[:k]))


def ml_success(genmat: BitMatrix, erased) -> bool:
    """True iff ML decoding resolves the erasure pattern uniquely: the
    submatrix on surviving columns keeps rank k."""
    erased = np.asarray(erased, dtype=bool)
    if erased.shape != (genmat.cols,):
        raise ValueError(
            f"pattern length {erased.shape} does not match n={genmat.cols}"
        )
    return gf2_rank(select_columns(genmat, ~erased)) == genmat.rows


def erasure_failure_profile(code: MonomialCode) -> np.ndarray:
    """Count failing erasure patterns by weight, for all 2^n patterns.

    A pattern fails exactly when it contains the support of a nonzero
    codeword, so the failing set is the superset closure of the codeword
    supports; the closure is taken with a subset-sum sweep over positions.
    """
    n = code.n
    if n > 20:
        raise ValueError("full pattern enumeration is capped at n = 20")
    if not code.gens:
        raise ValueError("empty generating set")
    rows = generator_matrix(code).to_bits()
    cws = np.zeros(1, dtype=np.int64)
    for row in rows:
        mask = int((row * (1 << np.arange(n, dtype=np.int64))).sum())
        cws = np.concatenate([cws, cws ^ mask])
    covered = np.zeros(1 << n, dtype=bool)
    covered[cws[cws != 0]] = True
    for j in range(n):
        half = covered.reshape(-1, 2 << j)
        half[:, 1 << j :] |= half[:, : 1 << j]
    weights = np.zeros(1 << n, dtype=np.int64)
    for j in range(n):
        weights += (np.arange(1 << n) >> j) & 1
    return np.bincount(weights[covered], minlength=n + 1)


def exact_fer(code: MonomialCode, eps: float) -> float:
    """Exact ML frame error rate by summing over all erasure patterns."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"erasure probability {eps} outside [0, 1]")
    n = code.n
    profile = erasure_failure_profile(code)
    w = np.arange(n + 1, dtype=np.float64)
    with np.errstate(divide="ignore"):
        terms = profile * np.power(eps, w) * np.power(1.0 - eps, n - w)
    return float(terms.sum())


@dataclass(frozen=True)
class FerEstimate:
    epsilon: float
    trials: int
    failures: int
    fer: float
    ci_low: float
    ci_high: float


def simulate_fer(
    code: MonomialCode,
    eps: float,
    trials: int,
    seed: int,
    workers: int = 1,
) -> FerEstimate:
    """Monte-Carlo ML frame error rate with a 95% normal-approximation CI."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"erasure probability {eps} outside [0, 1]")
    if trials < 1:
        raise ValueError("need at least one trial")
    if workers < 1:
        raise ValueError("need at least one worker")
    hcols, r = _parity_columns(code)
    counts = _split_trials(trials, workers)

    def run(w: int) -> int:
        return _stream_failures(code.n, hcols, r, eps, seed, w, counts[w])

    if workers == 1:
        failures = run(0)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            failures = sum(pool.map(run, range(workers)))

    fer = failures / trials
    half = 1.96 * math.sqrt(max(fer * (1.0 - fer), 0.0) / trials)
    return FerEstimate(
        epsilon=eps,
        trials=trials,
        failures=failures,
        fer=fer,
        ci_low=max(0.0, fer - half),
        ci_high=min(1.0, fer + half),
    )


def _split_trials(trials: int, workers: int) -> list[int]:
    base, extra = divmod(trials, workers)
    return [base + (1 if w < extra else 0) for w in range(workers)]


def _parity_columns(code: MonomialCode) -> tuple[np.ndarray, int]:
    """Columns of a parity-check matrix, each packed into uint64 words."""
    h = null_space(generator_matrix(code))
    cols = BitMatrix.from_bits(h.to_bits().T)
    return np.ascontiguousarray(cols.words), h.rows


def _stream_failures(
    n: int, hcols: np.ndarray, r: int, eps: float, seed: int, worker: int, count: int
) -> int:
    key = np.array([seed % (1 << 64), worker], dtype=np.uint64)
    gen = np.random.Generator(np.random.Philox(key=key))
    failures = 0
    left = count
    while left > 0:
        b = min(_BATCH, left)
        erased = (gen.random((b, n)) < eps).astype(np.uint8)
        failures += _count_failures(erased, hcols, r)
        left -= b
    return failures


# --- erasure rank kernel ----------------------------------------------------

_kernel = None


def _get_kernel():
    global _kernel
    if _kernel is None:
        from numba import njit

        _kernel = njit(cache=False, nogil=True)(_count_failures_py)
    return _kernel


def _count_failures(erased: np.ndarray, hcols: np.ndarray, r: int) -> int:
    try:
        kernel = _get_kernel()
    except ImportError:  # numba unavailable: same algorithm, interpreted
        kernel = _count_failures_py
    return int(kernel(erased, hcols, r))


def _count_failures_py(erased, hcols, r):
    """Count trials whose erased parity-check columns are linearly
    dependent (= ML failure).  Incremental insertion into a basis keyed by
    lowest set bit; numba-compilable."""
    big, n = erased.shape
    nw = hcols.shape[1]
    basis = np.zeros((nw * 64, nw), dtype=np.uint64)
    occ = np.zeros(basis.shape[0], dtype=np.uint8)
    touched = np.empty(basis.shape[0], dtype=np.int64)
    v = np.empty(nw, dtype=np.uint64)
    zero = np.uint64(0)
    m32 = np.uint64(0xFFFFFFFF)
    m16 = np.uint64(0xFFFF)
    m8 = np.uint64(0xFF)
    m4 = np.uint64(0xF)
    m2 = np.uint64(0x3)
    m1 = np.uint64(0x1)
    fails = 0
    for bt in range(big):
        nocc = 0
        fail = False
        for j in range(n):
            if erased[bt, j] == 0:
                continue
            if r == 0:
                fail = True
                break
            for w in range(nw):
                v[w] = hcols[j, w]
            start = 0
            while True:
                p = -1
                for w in range(start, nw):
                    x = v[w]
                    if x != zero:
                        b = 0
                        if x & m32 == zero:
                            x >>= np.uint64(32)
                            b += 32
                        if x & m16 == zero:
                            x >>= np.uint64(16)
                            b += 16
                        if x & m8 == zero:
                            x >>= np.uint64(8)
                            b += 8
                        if x & m4 == zero:
                            x >>= np.uint64(4)
                            b += 4
                        if x & m2 == zero:
                            x >>= np.uint64(2)
                            b += 2
                        if x & m1 == zero:
                            b += 1
                        p = w * 64 + b
                        start = w
                        break
                if p < 0:
                    fail = True
                    break
                if occ[p]:
                    for w in range(start, nw):
                        v[w] ^= basis[p, w]
                else:
                    occ[p] = 1
                    for w in range(nw):
                        basis[p, w] = v[w]
                    touched[nocc] = p
                    nocc += 1
                    break
            if fail:
                break
        if fail:
            fails += 1
        for i in range(nocc):
            occ[touched[i]] = 0
    return fails
