"""One operation per asymptotic-law experiment, each emitting a report.

Every operation is pure given (table, parameters, seed).  Checks are
diagnostics: a false check never raises, it is just reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError
from .primes import (
    PrimeTable,
    mertens_sum,
    mobius_table,
    omega_range,
    prime_count,
    prime_encoding,
    square_root_part_range,
)
from .report import ExperimentReport
from .stats import ks_statistic, normal_cdf

MERTENS_CONSTANT = 0.2615  # empirical shift of sum(1/p) over ln ln N


def _decades(n: int, start: int = 10) -> list[int]:
    """10, 100, ... up to n, with n itself as the last checkpoint."""
    points = []
    d = start
    while d <= n:
        points.append(d)
        d *= 10
    if not points or points[-1] != n:
        points.append(n)
    return points


def _binary_entropy_bits(q: np.ndarray) -> np.ndarray:
    q = np.clip(q, 0.0, 1.0)
    out = np.zeros_like(q)
    inner = (q > 0) & (q < 1)
    qi = q[inner]
    out[inner] = -(qi * np.log2(qi) + (1 - qi) * np.log2(1 - qi))
    return out


def _strictly_increasing(values) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))


def _strictly_decreasing(values) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


# ---------------------------------------------------------------------------
# entropy lower bound on pi(N)


def erdos_euclid_report(table: PrimeTable, n: int) -> ExperimentReport:
    """Entropy subadditivity bound: H(Z) <= H(Y) + sum H(X_p).

    Z is uniform on [1, N] written as Z = squarefree * Y^2; X_p is the
    exponent parity of p, so H(Z) = log2 N forces pi(N) >= log2(N)/2.
    """
    if n < 4:
        raise DomainError(f"N must be >= 4, got {n}")
    y = square_root_part_range(table, n)[1:]
    counts = np.bincount(y)
    pv = counts[counts > 0] / n
    h_y = float(-np.sum(pv * np.log2(pv)))

    primes = table.primes_up_to(n)
    # P(exponent of p is odd) = (1/N) sum_k (-1)^(k+1) floor(N/p^k)
    root = math.isqrt(n)
    small = primes[primes <= root]
    large = primes[primes > root]
    q_small = []
    for p in small:
        p = int(p)
        total, pk, sign = 0, p, 1
        while pk <= n:
            total += sign * (n // pk)
            pk *= p
            sign = -sign
        q_small.append(total / n)
    q_large = (n // large) / n
    h_x = _binary_entropy_bits(np.concatenate([np.array(q_small), q_large]))
    sum_h_x = float(kernels.compensated_sum(np.ascontiguousarray(h_x)))

    h_z = math.log2(n)
    pi_n = prime_count(table, n)
    return ExperimentReport(
        name="erdos-euclid",
        n_limit=n,
        scalars={
            "h_z_bits": h_z,
            "h_y_bits": h_y,
            "sum_h_x_bits": sum_h_x,
            "pi_n": float(pi_n),
            "half_log2_n": h_z / 2,
        },
        checks={
            "entropy_subadditivity": h_z <= h_y + sum_h_x + 1e-9,
            "pi_lower_bound": pi_n >= h_z / 2,
        },
    )


def geometric_exponent_mean(table: PrimeTable, p: int, n: int) -> float:
    """Mean exponent of p in a uniform draw from [1, N]."""
    if n < 2 or n > table.limit:
        raise DomainError(f"N={n} outside [2, {table.limit}]")
    if p > n or not table.is_prime(p):
        raise DomainError(f"p={p} is not a prime <= {n}")
    total, pk = 0, p
    while pk <= n:
        total += n // pk
        pk *= p
    return total / n


# ---------------------------------------------------------------------------
# prime harmonic sums


def chebyshev_report(table: PrimeTable, n: int) -> ExperimentReport:
    """sum (ln p)/p against ln N, tabulated at decade checkpoints."""
    if n < 10:
        raise DomainError(f"N must be >= 10, got {n}")
    primes = table.primes_up_to(n)
    terms = np.log(primes.astype(np.float64)) / primes
    ratios = []
    for d in _decades(n):
        idx = int(np.searchsorted(primes, d, side="right"))
        partial = float(kernels.compensated_sum(np.ascontiguousarray(terms[:idx])))
        ratios.append((float(d), partial / math.log(d)))
    total = float(kernels.compensated_sum(terms))
    ratio = total / math.log(n)
    return ExperimentReport(
        name="chebyshev",
        n_limit=n,
        scalars={"sum_nats": total, "ln_n": math.log(n), "ratio": ratio},
        series={"ratio_by_decade": ratios},
        checks={
            "ratio_increasing": _strictly_increasing([r for _, r in ratios]),
            "ratio_in_band": n < 10**6 or 0.8 <= ratio <= 1.05,
        },
    )


def prime_entropy_corollary(table: PrimeTable, n: int) -> ExperimentReport:
    """Entropy of the 'Z is prime' event split into its two sums.

    A = -sum (1-1/p) ln(1-1/p) tracks ln ln N; B = -sum (1/p) ln(1/p)
    = sum (ln p)/p tracks ln N.
    """
    if n < 10:
        raise DomainError(f"N must be >= 10, got {n}")
    primes = table.primes_up_to(n).astype(np.float64)
    a_terms = -(1.0 - 1.0 / primes) * np.log1p(-1.0 / primes)
    b_terms = np.log(primes) / primes
    a_series, b_series = [], []
    for d in _decades(n):
        idx = int(np.searchsorted(primes, d, side="right"))
        a_d = float(kernels.compensated_sum(np.ascontiguousarray(a_terms[:idx])))
        b_d = float(kernels.compensated_sum(np.ascontiguousarray(b_terms[:idx])))
        a_series.append((float(d), a_d / math.log(math.log(d))))
        b_series.append((float(d), b_d / math.log(d)))
    a_sum = float(kernels.compensated_sum(a_terms))
    b_sum = float(kernels.compensated_sum(b_terms))
    a_ratio = a_sum / math.log(math.log(n))
    b_ratio = b_sum / math.log(n)
    return ExperimentReport(
        name="prime-entropy",
        n_limit=n,
        scalars={
            "a_sum_nats": a_sum,
            "b_sum_nats": b_sum,
            "a_over_lnln_n": a_ratio,
            "b_over_ln_n": b_ratio,
        },
        series={"a_ratio_by_decade": a_series, "b_ratio_by_decade": b_series},
        checks={
            "a_ratio_band": 0.5 <= a_ratio <= 1.5,
            "b_ratio_band": 0.5 <= b_ratio <= 1.5,
            "b_ratio_increasing": _strictly_increasing([r for _, r in b_series]),
        },
    )


def prime_coding_report(table: PrimeTable, n: int) -> ExperimentReport:
    """r(N) = pi(N) ln N / N, decreasing toward 1."""
    if n < 100:
        raise DomainError(f"N must be >= 100, got {n}")
    series = []
    for d in _decades(n, start=100):
        r_d = prime_count(table, d) * math.log(d) / d
        series.append((float(d), r_d))
    ratio = series[-1][1]
    tail = [r for d, r in series if d >= 10**4]
    return ExperimentReport(
        name="prime-coding",
        n_limit=n,
        scalars={"ratio": ratio, "pi_n": float(prime_count(table, n)), "ln_n": math.log(n)},
        series={"ratio_by_decade": series},
        checks={
            "ratio_decreasing_from_1e4": _strictly_decreasing(tail) if len(tail) > 1 else True,
            "ratio_above_one": ratio > 1.0,
        },
    )


def _reciprocal_log_sum(n: int) -> float:
    """sum_{k=2}^{n} 1/ln k in float64 chunks."""
    partials = []
    chunk = 1 << 20
    for lo in range(2, n + 1, chunk):
        hi = min(n, lo + chunk - 1)
        partials.append(np.sum(1.0 / np.log(np.arange(lo, hi + 1, dtype=np.float64))))
    return math.fsum(partials)


def source_density_report(table: PrimeTable, n: int) -> ExperimentReport:
    """Mass of the q_k = 1/ln k source density against pi(N)."""
    if n < 10:
        raise DomainError(f"N must be >= 10, got {n}")
    series = []
    for d in _decades(n):
        series.append((float(d), _reciprocal_log_sum(d) / prime_count(table, d)))
    d_sum = _reciprocal_log_sum(n)
    pi_n = prime_count(table, n)
    ratio = d_sum / pi_n
    ref = next((r for d, r in series if d == 10**3), None)
    return ExperimentReport(
        name="source-density",
        n_limit=n,
        scalars={"density_mass": d_sum, "pi_n": float(pi_n), "ratio": ratio},
        series={"ratio_by_decade": series},
        checks={
            "ratio_band": n < 10**6 or 0.95 <= ratio <= 1.1,
            "closer_to_one_than_1e3": (
                True if ref is None or n <= 10**3 else abs(ratio - 1) < abs(ref - 1)
            ),
        },
    )


def pnt_report(table: PrimeTable, n: int) -> ExperimentReport:
    """N/pi(N) against ln N, plus the harmonic-sum detour through gamma."""
    if n < 100:
        raise DomainError(f"N must be >= 100, got {n}")
    gaps = []
    for d in _decades(n, start=100):
        gaps.append((float(d), float(kernels.harmonic_sum(d)) - math.log(d)))
    s_c = n / prime_count(table, n)
    h_n = float(kernels.harmonic_sum(n))
    ln_n = math.log(n)
    return ExperimentReport(
        name="pnt",
        n_limit=n,
        scalars={"s_c": s_c, "harmonic_n": h_n, "ln_n": ln_n, "gamma_gap": h_n - ln_n},
        series={"gamma_gap_by_decade": gaps},
        checks={
            "s_c_near_ln_n": abs(s_c - ln_n) / ln_n <= 0.15,
            "gamma_within_1e_3": abs(h_n - ln_n - 0.5772) <= 1e-3,
            "gamma_gap_decreasing": _strictly_decreasing([g for _, g in gaps]),
        },
    )


# ---------------------------------------------------------------------------
# predictor bound


@dataclass(frozen=True)
class PredictorTrace:
    """Distinct integer guesses for prime locations within a horizon."""

    predictions: tuple
    horizon: int

    def __post_init__(self):
        object.__setattr__(self, "predictions", tuple(int(p) for p in self.predictions))
        if not self.predictions:
            raise DomainError("trace must contain at least one prediction")
        if len(set(self.predictions)) != len(self.predictions):
            raise DomainError("predictions must be distinct")
        if min(self.predictions) < 1:
            raise DomainError("predictions must be >= 1")
        if max(self.predictions) > self.horizon:
            raise DomainError("predictions must not exceed the horizon")


def predictor_tpr(trace: PredictorTrace, table: PrimeTable) -> ExperimentReport:
    """Empirical TPR of a prime predictor against the harmonic bound."""
    if trace.horizon > table.limit:
        raise DomainError(f"horizon {trace.horizon} exceeds table limit {table.limit}")
    preds = np.array(trace.predictions, dtype=np.int64)
    n = preds.shape[0]
    hits = sum(1 for p in trace.predictions if p >= 2 and table.is_prime(p))
    tpr = hits / n
    # ascending-p order, matching the harmonic kernel term for term
    terms = np.ascontiguousarray(1.0 / np.sort(preds).astype(np.float64))
    bound = float(kernels.compensated_sum(terms)) / n
    h_n_over_n = float(kernels.harmonic_sum(n)) / n
    return ExperimentReport(
        name="predictor",
        n_limit=trace.horizon,
        scalars={
            "tpr": tpr,
            "bound": bound,
            "h_n_over_n": h_n_over_n,
            "ln_n_over_n": math.log(n) / n,
            "predictions": float(n),
        },
        checks={"harmonic_majorization": bound <= h_n_over_n + 1e-12},
    )


# ---------------------------------------------------------------------------
# distinct prime factor statistics


def erdos_kac_sample(
    table: PrimeTable, n: int, m: int, seed: int
) -> tuple[np.ndarray, ExperimentReport]:
    """Standardized omega values (omega - lnln N)/sqrt(lnln N) over [3, N].

    Exhaustive (seed ignored) when m >= N, otherwise m seeded uniform
    draws from [3, N].
    """
    if n < 100:
        raise DomainError(f"N must be >= 100, got {n}")
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    lll = math.log(math.log(n))
    if m >= n:
        om = omega_range(table, n)[3:].astype(np.float64)
    else:
        rng = np.random.default_rng(seed)
        values = rng.integers(3, n + 1, size=m)
        root_primes = table.primes_up_to(math.isqrt(n))
        om = kernels.omega_of_values(values.astype(np.int64), root_primes).astype(np.float64)
    standardized = (om - lll) / math.sqrt(lll)

    mean_omega = float(om.mean())
    var_omega = float(om.var())
    ks = ks_statistic(standardized, normal_cdf)
    primes = table.primes_up_to(n).astype(np.float64)
    model_mean = mertens_sum(table, n)
    model_var = float(kernels.compensated_sum(1.0 / primes - 1.0 / primes**2))
    report = ExperimentReport(
        name="erdos-kac",
        n_limit=n,
        scalars={
            "mean_omega": mean_omega,
            "var_omega": var_omega,
            "model_mean": model_mean,
            "model_variance": model_var,
            "ks_normal": ks,
            "lnln_n": lll,
            "sample_size": float(om.shape[0]),
        },
        checks={
            "mean_within_band": abs(mean_omega - (lll + MERTENS_CONSTANT)) <= 0.03,
            "model_variance_band": 0.5 * lll <= model_var <= 1.5 * lll,
            "ks_unit_interval": 0.0 <= ks <= 1.0,
        },
    )
    return standardized, report


def lindeberg_report(table: PrimeTable, n: int) -> ExperimentReport:
    """Sigma_N = sum(1/p) / (pi(N) lnln N), the Lindeberg majorant."""
    if n < 100:
        raise DomainError(f"N must be >= 100, got {n}")
    series = []
    for d in _decades(n, start=100):
        sigma_d = mertens_sum(table, d) / (prime_count(table, d) * math.log(math.log(d)))
        series.append((float(d), sigma_d))
    pi_n = prime_count(table, n)
    sigma = series[-1][1]
    ratio = sigma * pi_n
    return ExperimentReport(
        name="lindeberg",
        n_limit=n,
        scalars={"sigma_n": sigma, "inverse_pi": 1.0 / pi_n, "ratio_to_inverse_pi": ratio},
        series={"sigma_by_decade": series},
        checks={
            "ratio_band": 0.5 <= ratio <= 1.5,
            "sigma_decreasing": _strictly_decreasing([s for _, s in series]),
        },
    )


def hardy_ramanujan_census(table: PrimeTable, n: int, epsilon: float = 1.0) -> ExperimentReport:
    """Fraction of n in [3, N] with |omega(n) - lnln n| < eps lnln n."""
    if n < 100:
        raise DomainError(f"N must be >= 100, got {n}")
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    om = omega_range(table, n)
    series = []
    for d in _decades(n):
        values = np.arange(3, d + 1, dtype=np.float64)
        lln = np.log(np.log(values))
        good = np.abs(om[3 : d + 1].astype(np.float64) - lln) < epsilon * lln
        series.append((float(d), float(good.mean())))
    fraction = series[-1][1]
    return ExperimentReport(
        name="hardy-ramanujan",
        n_limit=n,
        scalars={"fraction": fraction, "epsilon": float(epsilon)},
        series={"fraction_by_decade": series},
        checks={"census_nondecreasing": all(b >= a for (_, a), (_, b) in zip(series, series[1:]))},
    )


# ---------------------------------------------------------------------------
# smooth prime-count approximation


def logarithmic_integral(x: float) -> float:
    """Principal-value li(x) for x > 1, via the Ei power series.

    Ei(t) = gamma + ln t + sum_k t^k / (k k!), accurate to ~1e-14
    relative for t up to ~40 (x up to ~1e17).
    """
    if x <= 1.0:
        raise DomainError(f"li requires x > 1, got {x}")
    t = math.log(x)
    total = 0.0
    term = 1.0
    for k in range(1, 400):
        term *= t / k
        add = term / k
        total += add
        if add < 1e-17 * max(total, 1.0):
            break
    return 0.5772156649015328606 + math.log(t) + total


def riemann_R(x: float, n_max: int | None = None) -> float:
    """R(x) = sum mu(n)/n li(x^(1/n)); terms with x^(1/n) < 2 truncate."""
    if x < 2.0:
        raise DomainError(f"R(x) requires x >= 2, got {x}")
    if n_max is None:
        n_max = max(1, int(math.log2(x)))
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    mu = mobius_table(n_max)
    total = 0.0
    for k in range(1, n_max + 1):
        m = int(mu[k - 1])
        root = math.exp(math.log(x) / k)
        if root < 2.0:
            break
        if m == 0:
            continue
        total += m / k * logarithmic_integral(root)
    return total


def riemann_report(table: PrimeTable, n: int, n_max: int | None = None) -> ExperimentReport:
    """R(N) against the sieved pi(N)."""
    if n < 100:
        raise DomainError(f"N must be >= 100, got {n}")
    r_value = riemann_R(float(n), n_max)
    pi_n = prime_count(table, n)
    rel_err = abs(r_value - pi_n) / pi_n
    return ExperimentReport(
        name="riemann",
        n_limit=n,
        scalars={"r_value": r_value, "pi_n": float(pi_n), "rel_err": rel_err},
        checks={"rel_err_below_5e-4": rel_err < 5e-4},
    )


# ---------------------------------------------------------------------------
# finite-state complexity of the prime encoding


def lz_primes_report(table: PrimeTable, n: int, seed: int = 42) -> ExperimentReport:
    """LZ phrase complexity of the prime indicator vector over [1, N].

    Reports the empirical finite-state rate next to the model-level
    pi(N) ln N bits; the two are NOT asserted to agree.
    """
    if n < 100:
        raise DomainError(f"N must be >= 100, got {n}")
    from .coding import lz78_phrase_complexity

    enc = prime_encoding(table, n)
    phrases, normalized = lz78_phrase_complexity(enc.bits)
    _, zero_norm = lz78_phrase_complexity(np.zeros(n, dtype=np.uint8))
    rng = np.random.default_rng(seed)
    _, coin_norm = lz78_phrase_complexity(rng.integers(0, 2, size=n).astype(np.uint8))
    pi_n = prime_count(table, n)
    return ExperimentReport(
        name="lz-primes",
        n_limit=n,
        scalars={
            "phrase_count": float(phrases),
            "normalized": normalized,
            "allzero_normalized": zero_norm,
            "coin_normalized": coin_norm,
            "model_bits": pi_n * math.log(n),
            "model_bits_per_symbol": pi_n * math.log(n) / n,
        },
        checks={
            "above_allzero_rate": normalized > zero_norm,
            "below_coin_rate": normalized < coin_norm,
        },
    )
