"""Hot numeric kernels, each with a numba and a pure-numpy implementation.

The public names at the bottom of this module are bound to one flavour
according to :data:`entropia.backend.BACKEND`.  The ``_np_*`` fallbacks
stay importable either way so the benchmark can race the two paths.

Conventions shared by both flavours:

* odd-only sieve segments are boolean arrays where index ``i`` stands
  for the odd integer ``low + 2*i``
* prime arrays are ascending ``int64``
* compensated sums accumulate in ascending order of the summands'
  construction, which keeps float drift negligible up to N = 1e9
"""

import math

import numpy as np

from .backend import BACKEND, HAVE_NUMBA

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64_MASK = 0xFFFFFFFFFFFFFFFF


# ---------------------------------------------------------------------------
# pure-numpy implementations


def _np_mark_odd_composites(seg, low, base_primes):
    """Clear seg entries that are odd multiples of the given odd primes."""
    n = seg.shape[0]
    high = low + 2 * (n - 1)
    for p in base_primes:
        p = int(p)
        if p * p > high:
            break
        start = ((low + p - 1) // p) * p
        if start < p * p:
            start = p * p
        if start % 2 == 0:
            start += p
        if start > high:
            continue
        seg[(start - low) // 2 :: p] = False


def _np_compensated_sum(values):
    """Exact-to-rounding sum of a float64 array (math.fsum)."""
    return math.fsum(values)


def _np_harmonic_sum(n):
    """Sum of 1/k for k = 1..n, accumulated in float64 chunks."""
    partials = []
    chunk = 1 << 20
    for lo in range(1, n + 1, chunk):
        hi = min(n, lo + chunk - 1)
        partials.append(np.sum(1.0 / np.arange(lo, hi + 1, dtype=np.float64)))
    return math.fsum(partials)


def _np_omega_sieve(n, primes):
    """Distinct-prime-factor counts for 0..n (index 0 and 1 are zero)."""
    om = np.zeros(n + 1, dtype=np.uint8)
    for p in primes:
        p = int(p)
        if p > n:
            break
        om[p::p] += 1
    return om


def _np_square_root_part_sieve(n, primes):
    """Largest Y with Y^2 | k, for k = 0..n (entries 0 and 1 are 1)."""
    y = np.ones(n + 1, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p > n:
            break
        q = p * p
        while q <= n:
            y[q::q] *= p
            q *= p * p
    return y


def _np_mobius_sieve(n, primes):
    """Mobius function for 0..n (index 0 unused, mu[1] = 1)."""
    mu = np.ones(n + 1, dtype=np.int8)
    for p in primes:
        p = int(p)
        if p > n:
            break
        mu[p::p] *= -1
        sq = p * p
        if sq <= n:
            mu[sq::sq] = 0
    if n >= 0:
        mu[0] = 0
    return mu


def _np_spf_sieve(n, primes):
    """Smallest prime factor for 0..n (0 for indices 0 and 1)."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p > n:
            break
        view = spf[p::p]
        view[view == 0] = p
    return spf


def _np_lz78_phrase_count(bits):
    """Number of phrases produced by incremental (LZ78) parsing."""
    n = bits.shape[0]
    child = np.zeros((n + 2, 2), dtype=np.int64)
    next_id = 1
    node = 0
    phrases = 0
    in_phrase = False
    for i in range(n):
        b = bits[i]
        nxt = child[node, b]
        if nxt != 0:
            node = nxt
            in_phrase = True
        else:
            child[node, b] = next_id
            next_id += 1
            phrases += 1
            node = 0
            in_phrase = False
    if in_phrase:
        phrases += 1
    return phrases


def _np_fnv1a64(data):
    """64-bit FNV-1a over a uint8 array."""
    h = _FNV_OFFSET
    for b in data.tobytes():
        h = ((h ^ b) * _FNV_PRIME) & _U64_MASK
    return h


def _np_omega_of_values(values, primes):
    """Distinct-prime-factor counts of arbitrary positive integers.

    ``primes`` must cover every prime up to sqrt(max(values)).  One
    vectorized pass per prime; the division loop only touches the
    divisible subset.
    """
    rem = values.astype(np.int64).copy()
    om = np.zeros(rem.shape[0], dtype=np.uint8)
    for p in primes:
        p = int(p)
        mask = rem % p == 0
        if not mask.any():
            continue
        om[mask] += 1
        sub = rem[mask] // p
        more = sub % p == 0
        while more.any():
            sub[more] //= p
            more = sub % p == 0
        rem[mask] = sub
    om[rem > 1] += 1
    return om


# ---------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:
    from numba import njit

    @njit(cache=True)
    def _nb_mark_odd_composites(seg, low, base_primes):
        n = seg.shape[0]
        high = low + 2 * (n - 1)
        for j in range(base_primes.shape[0]):
            p = base_primes[j]
            if p * p > high:
                break
            start = ((low + p - 1) // p) * p
            if start < p * p:
                start = p * p
            if start % 2 == 0:
                start += p
            if start > high:
                continue
            i = (start - low) // 2
            while i < n:
                seg[i] = False
                i += p

    @njit(cache=True)
    def _nb_compensated_sum(values):
        total = 0.0
        comp = 0.0
        for i in range(values.shape[0]):
            y = values[i] - comp
            t = total + y
            comp = (t - total) - y
            total = t
        return total

    @njit(cache=True)
    def _nb_harmonic_sum(n):
        total = 0.0
        comp = 0.0
        for k in range(1, n + 1):
            y = 1.0 / k - comp
            t = total + y
            comp = (t - total) - y
            total = t
        return total

    @njit(cache=True)
    def _nb_omega_sieve(n, primes):
        om = np.zeros(n + 1, dtype=np.uint8)
        for j in range(primes.shape[0]):
            p = primes[j]
            if p > n:
                break
            for m in range(p, n + 1, p):
                om[m] += 1
        return om

    @njit(cache=True)
    def _nb_square_root_part_sieve(n, primes):
        y = np.ones(n + 1, dtype=np.int64)
        for j in range(primes.shape[0]):
            p = primes[j]
            if p * p > n:
                break
            q = p * p
            while q <= n:
                for m in range(q, n + 1, q):
                    y[m] *= p
                q *= p * p
        return y

    @njit(cache=True)
    def _nb_mobius_sieve(n, primes):
        mu = np.ones(n + 1, dtype=np.int8)
        mu[0] = 0
        for j in range(primes.shape[0]):
            p = primes[j]
            if p > n:
                break
            for m in range(p, n + 1, p):
                mu[m] = -mu[m]
            sq = p * p
            if sq <= n:
                for m in range(sq, n + 1, sq):
                    mu[m] = 0
        return mu

    @njit(cache=True)
    def _nb_spf_sieve(n, primes):
        spf = np.zeros(n + 1, dtype=np.int64)
        for j in range(primes.shape[0]):
            p = primes[j]
            if p > n:
                break
            for m in range(p, n + 1, p):
                if spf[m] == 0:
                    spf[m] = p
        return spf

    @njit(cache=True)
    def _nb_lz78_phrase_count(bits):
        n = bits.shape[0]
        child = np.zeros((n + 2, 2), dtype=np.int64)
        next_id = 1
        node = 0
        phrases = 0
        in_phrase = False
        for i in range(n):
            b = bits[i]
            nxt = child[node, b]
            if nxt != 0:
                node = nxt
                in_phrase = True
            else:
                child[node, b] = next_id
                next_id += 1
                phrases += 1
                node = 0
                in_phrase = False
        if in_phrase:
            phrases += 1
        return phrases

    @njit(cache=True)
    def _nb_fnv1a64(data):
        h = np.uint64(_FNV_OFFSET)
        prime = np.uint64(_FNV_PRIME)
        for i in range(data.shape[0]):
            h = (h ^ np.uint64(data[i])) * prime
        return h

    @njit(cache=True)
    def _nb_omega_of_values(values, primes):
        m = values.shape[0]
        om = np.zeros(m, dtype=np.uint8)
        for i in range(m):
            rem = values[i]
            cnt = 0
            for j in range(primes.shape[0]):
                p = primes[j]
                if p * p > rem:
                    break
                if rem % p == 0:
                    cnt += 1
                    while rem % p == 0:
                        rem //= p
            if rem > 1:
                cnt += 1
            om[i] = cnt
        return om

    def _nb_fnv1a64_py(data):
        # numba returns np.uint64; normalize to int for callers
        return int(_nb_fnv1a64(data))

else:  # pragma: no cover - exercised only without numba
    _nb_mark_odd_composites = None
    _nb_compensated_sum = None
    _nb_harmonic_sum = None
    _nb_omega_sieve = None
    _nb_square_root_part_sieve = None
    _nb_mobius_sieve = None
    _nb_spf_sieve = None
    _nb_lz78_phrase_count = None
    _nb_fnv1a64_py = None
    _nb_omega_of_values = None


# ---------------------------------------------------------------------------
# backend binding

if BACKEND == "numba":
    mark_odd_composites = _nb_mark_odd_composites
    compensated_sum = _nb_compensated_sum
    harmonic_sum = _nb_harmonic_sum
    omega_sieve = _nb_omega_sieve
    square_root_part_sieve = _nb_square_root_part_sieve
    mobius_sieve = _nb_mobius_sieve
    spf_sieve = _nb_spf_sieve
    lz78_phrase_count = _nb_lz78_phrase_count
    fnv1a64 = _nb_fnv1a64_py
    omega_of_values = _nb_omega_of_values
else:
    mark_odd_composites = _np_mark_odd_composites
    compensated_sum = _np_compensated_sum
    harmonic_sum = _np_harmonic_sum
    omega_sieve = _np_omega_sieve
    square_root_part_sieve = _np_square_root_part_sieve
    mobius_sieve = _np_mobius_sieve
    spf_sieve = _np_spf_sieve
    lz78_phrase_count = _np_lz78_phrase_count
    fnv1a64 = _np_fnv1a64
    omega_of_values = _np_omega_of_values
