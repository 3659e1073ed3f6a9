"""Prime engine: segmented sieve, counting, factor signatures, prime sums.

The sieve is stored as an odd-only bitmap (bit k = odd integer 2k+1,
LSB-first within each byte) with cumulative popcount checkpoints every
2^16 integers, so count queries cost one block lookup plus at most 4 KiB
of popcounting.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import CapacityError, CorruptCacheError, DomainError

MAX_LIMIT = 1 << 40
SEGMENT_ODDS = 1 << 18  # 256 Ki odds per segment: fits comfortably in L2
CHECKPOINT_BYTES = 4096  # 4096 bytes = 2^15 bits = one checkpoint per 2^16 integers

CACHE_MAGIC = b"PBIT1"
CACHE_VERSION = 1

_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


@dataclass(frozen=True)
class PrimeTable:
    """Immutable primality oracle for [1, limit]."""

    limit: int
    bits: np.ndarray  # packed odd-only bitmap, LSB-first
    checkpoints: np.ndarray  # cumulative odd-prime count before each 4 KiB block
    base_primes: np.ndarray = field(repr=False)  # primes <= isqrt(limit)

    def is_prime(self, n: int) -> bool:
        if n < 1 or n > self.limit:
            raise DomainError(f"n={n} outside [1, {self.limit}]")
        if n == 2:
            return True
        if n < 2 or n % 2 == 0:
            return False
        k = (n - 1) // 2
        return bool((self.bits[k >> 3] >> (k & 7)) & 1)

    def primes_up_to(self, m: int) -> np.ndarray:
        """Ascending array of all primes <= m."""
        if m < 1 or m > self.limit:
            raise DomainError(f"m={m} outside [1, {self.limit}]")
        if m < 2:
            return np.empty(0, dtype=np.int64)
        n_odd_bits = (m + 1) // 2
        n_bytes = (n_odd_bits + 7) // 8
        out = [np.array([2], dtype=np.int64)]
        chunk = 1 << 20
        for lo in range(0, n_bytes, chunk):
            hi = min(n_bytes, lo + chunk)
            unpacked = np.unpackbits(self.bits[lo:hi], bitorder="little")
            ks = np.nonzero(unpacked)[0].astype(np.int64) + 8 * lo
            out.append(2 * ks + 1)
        primes = np.concatenate(out)
        return primes[primes <= m]


@dataclass(frozen=True)
class PrimeEncoding:
    """Indicator bit vector over [1, N]: bit(k) = 1 iff k is prime."""

    limit: int
    bits: np.ndarray  # uint8 0/1 array, index k-1 holds the bit for k

    def bit(self, k: int) -> int:
        if k < 1 or k > self.limit:
            raise DomainError(f"k={k} outside [1, {self.limit}]")
        return int(self.bits[k - 1])

    @property
    def popcount(self) -> int:
        return int(self.bits.sum(dtype=np.int64))

    def bitstring(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)


@dataclass(frozen=True)
class FactorSignature:
    """Exponent-vector view of one integer: n = squarefree_part * Y^2."""

    n: int
    exponents: dict[int, int]
    omega: int
    big_omega: int
    squarefree_part: int
    square_root_part: int


def _dense_sieve(n: int) -> np.ndarray:
    """Plain boolean Eratosthenes sieve, used for base primes only."""
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def build_table(n: int) -> PrimeTable:
    """Sieve [1, n] into an odd-only bitmap with count checkpoints."""
    if n < 2:
        raise DomainError(f"sieve limit must be >= 2, got {n}")
    if n > MAX_LIMIT:
        raise CapacityError(f"sieve limit {n} exceeds 2^40")

    root = math.isqrt(n)
    base = np.nonzero(_dense_sieve(max(root, 3)))[0].astype(np.int64)
    odd_base = base[base > 2]

    n_odds = (n + 1) // 2  # odds 1, 3, ..., covering every odd <= n
    chunks = []
    for k0 in range(0, n_odds, SEGMENT_ODDS):
        count = min(SEGMENT_ODDS, n_odds - k0)
        seg = np.ones(count, dtype=bool)
        if k0 == 0:
            seg[0] = False  # 1 is not prime
        kernels.mark_odd_composites(seg, 2 * k0 + 1, odd_base)
        chunks.append(np.packbits(seg, bitorder="little"))
    bits = np.concatenate(chunks)
    bits.flags.writeable = False

    per_byte = _POPCOUNT[bits].astype(np.int64)
    starts = np.arange(0, len(bits), CHECKPOINT_BYTES)
    block_sums = np.add.reduceat(per_byte, starts)
    checkpoints = np.concatenate(([0], np.cumsum(block_sums)))
    checkpoints.flags.writeable = False
    base.flags.writeable = False

    return PrimeTable(limit=n, bits=bits, checkpoints=checkpoints, base_primes=base)


def prime_count(table: PrimeTable, m: int) -> int:
    """pi(m) via checkpoint lookup plus a local popcount."""
    if m < 1 or m > table.limit:
        raise DomainError(f"m={m} outside [1, {table.limit}]")
    if m < 2:
        return 0
    if m == 2:
        return 1
    top_bit = (m - 1) // 2  # highest odd-bitmap index covering odds <= m
    full_bytes = top_bit >> 3
    block = full_bytes // CHECKPOINT_BYTES
    count = int(table.checkpoints[block])
    start = block * CHECKPOINT_BYTES
    if full_bytes > start:
        count += int(_POPCOUNT[table.bits[start:full_bytes]].sum(dtype=np.int64))
    mask = (1 << ((top_bit & 7) + 1)) - 1
    count += bin(int(table.bits[full_bytes]) & mask).count("1")
    return count + 1  # the prime 2


def prime_encoding(table: PrimeTable, n: int) -> PrimeEncoding:
    """Expand the sieve into a 0/1 vector over positions 1..n."""
    if n < 1 or n > table.limit:
        raise DomainError(f"N={n} outside [1, {table.limit}]")
    bits = np.zeros(n, dtype=np.uint8)
    if n >= 2:
        bits[1] = 1
    n_odd_bits = (n + 1) // 2
    odd = np.unpackbits(table.bits[: (n_odd_bits + 7) // 8], bitorder="little")[:n_odd_bits]
    bits[::2] = odd  # positions 1, 3, 5, ... are indices 0, 2, 4, ...
    bits.flags.writeable = False
    return PrimeEncoding(limit=n, bits=bits)


def factor_signature(table: PrimeTable, n: int) -> FactorSignature:
    """Trial-divide n by the table's base primes."""
    if n < 1 or n > table.limit:
        raise DomainError(f"n={n} outside [1, {table.limit}]")
    exponents: dict[int, int] = {}
    rem = n
    for p in table.base_primes:
        p = int(p)
        if p * p > rem:
            break
        if rem % p == 0:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            exponents[p] = e
    if rem > 1:
        exponents[rem] = exponents.get(rem, 0) + 1
    return _signature_from_exponents(n, exponents)


def _signature_from_exponents(n: int, exponents: dict[int, int]) -> FactorSignature:
    y = 1
    squarefree = 1
    for p, e in exponents.items():
        y *= p ** (e // 2)
        if e % 2:
            squarefree *= p
    return FactorSignature(
        n=n,
        exponents=exponents,
        omega=len(exponents),
        big_omega=sum(exponents.values()),
        squarefree_part=squarefree,
        square_root_part=y,
    )


def factor_signatures_range(table: PrimeTable, n: int):
    """Yield signatures for 1..n via a smallest-prime-factor sieve.

    Amortized O(n log log n): the SPF sieve is built once and each
    integer is peeled along its SPF chain.
    """
    if n < 1 or n > table.limit:
        raise DomainError(f"n={n} outside [1, {table.limit}]")
    spf = kernels.spf_sieve(n, table.primes_up_to(n))
    yield FactorSignature(1, {}, 0, 0, 1, 1)
    for m in range(2, n + 1):
        exponents: dict[int, int] = {}
        rem = m
        while rem > 1:
            p = int(spf[rem])
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            exponents[p] = e
        yield _signature_from_exponents(m, exponents)


def mertens_sum(table: PrimeTable, n: int) -> float:
    """Sum of 1/p over primes p <= n, compensated, ascending."""
    if n < 2 or n > table.limit:
        raise DomainError(f"N={n} outside [2, {table.limit}]")
    primes = table.primes_up_to(n).astype(np.float64)
    return float(kernels.compensated_sum(1.0 / primes))


def chebyshev_sum(table: PrimeTable, n: int) -> float:
    """Sum of (ln p)/p over primes p <= n (nats)."""
    if n < 2 or n > table.limit:
        raise DomainError(f"N={n} outside [2, {table.limit}]")
    primes = table.primes_up_to(n).astype(np.float64)
    return float(kernels.compensated_sum(np.log(primes) / primes))


def mobius_table(n: int) -> np.ndarray:
    """mu(1..n) as an int8 array of length n (index k-1 holds mu(k))."""
    if n < 1:
        raise DomainError(f"N must be >= 1, got {n}")
    if n == 1:
        return np.array([1], dtype=np.int8)
    primes = np.nonzero(_dense_sieve(n))[0].astype(np.int64)
    return kernels.mobius_sieve(n, primes)[1:]


def omega_range(table: PrimeTable, n: int) -> np.ndarray:
    """omega(k) for k = 0..n via an additive sieve (uint8)."""
    if n < 1 or n > table.limit:
        raise DomainError(f"n={n} outside [1, {table.limit}]")
    return kernels.omega_sieve(n, table.primes_up_to(n))


def square_root_part_range(table: PrimeTable, n: int) -> np.ndarray:
    """Y(k) with k = squarefree * Y^2, for k = 0..n (int64)."""
    if n < 1 or n > table.limit:
        raise DomainError(f"n={n} outside [1, {table.limit}]")
    root_primes = table.primes_up_to(math.isqrt(n)) if n >= 4 else np.empty(0, np.int64)
    return kernels.square_root_part_sieve(n, root_primes)


# ---------------------------------------------------------------------------
# sieve cache persistence
#
# Layout: magic "PBIT1" | version byte 0x01 | limit as u64 LE |
# odd-only bitmap padded with zero bytes to an 8-byte boundary |
# u64 LE FNV-1a checksum of the padded bitmap.


def save_table(table: PrimeTable, path) -> None:
    pad = (-len(table.bits)) % 8
    padded = np.concatenate([table.bits, np.zeros(pad, dtype=np.uint8)])
    checksum = kernels.fnv1a64(padded)
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(bytes([CACHE_VERSION]))
        fh.write(struct.pack("<Q", table.limit))
        fh.write(padded.tobytes())
        fh.write(struct.pack("<Q", int(checksum)))


def load_table(path) -> PrimeTable:
    with open(path, "rb") as fh:
        raw = fh.read()
    header = len(CACHE_MAGIC) + 1 + 8
    if len(raw) < header + 8:
        raise CorruptCacheError(f"{path}: truncated cache file")
    if raw[: len(CACHE_MAGIC)] != CACHE_MAGIC:
        raise CorruptCacheError(f"{path}: bad magic")
    if raw[len(CACHE_MAGIC)] != CACHE_VERSION:
        raise CorruptCacheError(f"{path}: unsupported version {raw[len(CACHE_MAGIC)]}")
    (limit,) = struct.unpack_from("<Q", raw, len(CACHE_MAGIC) + 1)
    if limit < 2 or limit > MAX_LIMIT:
        raise CorruptCacheError(f"{path}: implausible limit {limit}")
    n_bytes = ((limit + 1) // 2 + 7) // 8
    padded_len = n_bytes + ((-n_bytes) % 8)
    if len(raw) != header + padded_len + 8:
        raise CorruptCacheError(f"{path}: wrong payload size")
    padded = np.frombuffer(raw, dtype=np.uint8, count=padded_len, offset=header)
    (stored,) = struct.unpack_from("<Q", raw, header + padded_len)
    if int(kernels.fnv1a64(padded)) != stored:
        raise CorruptCacheError(f"{path}: checksum mismatch")

    bits = padded[:n_bytes].copy()
    bits.flags.writeable = False
    per_byte = _POPCOUNT[bits].astype(np.int64)
    starts = np.arange(0, len(bits), CHECKPOINT_BYTES)
    block_sums = np.add.reduceat(per_byte, starts)
    checkpoints = np.concatenate(([0], np.cumsum(block_sums)))
    checkpoints.flags.writeable = False
    root = math.isqrt(limit)
    base = np.nonzero(_dense_sieve(max(root, 3)))[0].astype(np.int64)
    base.flags.writeable = False
    return PrimeTable(limit=int(limit), bits=bits, checkpoints=checkpoints, base_primes=base)
