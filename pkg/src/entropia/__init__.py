"""entropia: prime sieving, prefix coding and desk-scale asymptotic checks."""

from .backend import BACKEND, HAVE_NUMBA
from .coding import (
    CodeBook,
    Distribution,
    HuffmanTree,
    canonical_code_from_lengths,
    entropy,
    expected_code_length,
    huffman_build,
    incompressibility_census,
    kl_divergence,
    kraft_sum,
    lz78_phrase_complexity,
    source_coding_trial,
)
from .errors import (
    CapacityError,
    CorruptCacheError,
    DomainError,
    InfeasibleCodeError,
    StateError,
)
from .experiments import (
    PredictorTrace,
    chebyshev_report,
    erdos_euclid_report,
    erdos_kac_sample,
    geometric_exponent_mean,
    hardy_ramanujan_census,
    lindeberg_report,
    logarithmic_integral,
    lz_primes_report,
    pnt_report,
    predictor_tpr,
    prime_coding_report,
    prime_entropy_corollary,
    riemann_R,
    riemann_report,
    source_density_report,
)
from .game import (
    AlphabetSpec,
    GameSession,
    LoadedAlphabet,
    alphabet_from_entries,
    answer,
    current_question,
    load_alphabet,
    simulate_plays,
    start_session,
)
from .primes import (
    FactorSignature,
    PrimeEncoding,
    PrimeTable,
    build_table,
    chebyshev_sum,
    factor_signature,
    factor_signatures_range,
    load_table,
    mertens_sum,
    mobius_table,
    prime_count,
    prime_encoding,
    save_table,
)
from .report import ExperimentReport, load_report_json
from .stats import Histogram, histogram, ks_statistic, normal_cdf

__version__ = "0.1.0"
