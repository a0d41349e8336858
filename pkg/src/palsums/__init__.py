"""Rigorous bounds and exact partial sums for reciprocal sums of base-b
palindromes.

The reciprocal sum s(b) over all base-b palindromes converges for every
base b >= 2.  This package computes certified lower and upper bounds for
s(b) with directed-rounded interval arithmetic, exact rational values of
the finite pieces (harmonic prefixes, per-digit-length layer sums, partial
sums), and the derived verifications: strict growth of s(b) in the base
and the sign scan of the log-concavity discriminant.
"""

from .digits import (
    DigitString,
    count_palindromes,
    enumerate_palindromes,
    is_palindrome,
    rank_palindrome,
    to_digits,
    unrank_palindrome,
)
from .enclosure import DEFAULT_PRECISION, Enclosure, euler_gamma, format_directed, log_exact
from .exact import (
    DEFAULT_TERM_BUDGET,
    LayerSumRecord,
    TermBudgetError,
    harmonic_x,
    harmonic_y,
    layer_sum_exact,
    partial_sum_exact,
)
from .bounds import (
    BoundParams,
    DEFAULT_CONFIG,
    SumConfig,
    asymptotic_estimate,
    crude_upper,
    geometric_tail_partial,
    layer_envelope,
    layer_sum_enclosure,
    lower_bound,
    simple_bounds,
    tail_geometric,
    upper_bound,
    upper_kernel_sum,
)
from .analysis import (
    AsymptoticReport,
    ChainPair,
    KernelReport,
    MonotoneReport,
    ScanEntry,
    TableRow,
    asymptotic_error_metric,
    bound_pair,
    kernel_eq1_check,
    kernel_eq2_check,
    kernel_eq3_check,
    layer3_transfer_check,
    log_concavity_row,
    log_concavity_scan,
    sum_integral_sandwich,
    tail_inequality_check,
    tail_inequality_value,
    verify_monotone_chain,
)

__version__ = "0.1.0"
