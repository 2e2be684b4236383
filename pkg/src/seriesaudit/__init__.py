"""seriesaudit: exact symbolic + certified numeric audit of series whose terms are
reciprocals of products of integer-coefficient linear factors in n."""

from .closedform import (
    GAMMA,
    ONE,
    PI,
    PI_SQ,
    ZETA3,
    Atom,
    ConstantExpression,
    Verdict,
    digamma_closed,
    expr_equal,
    expr_to_interval,
    ln_prime,
    ln_sin_atom,
    polygamma_closed,
    simplify,
    sum_closed_form,
)
from .constants import const_ln, const_pi, const_sqrt, ln_fraction
from .errors import (
    DivergentSeries,
    NonPositiveArgument,
    NonPositiveFactor,
    OddArgument,
    ParseError,
    PrecisionCapExceeded,
    SeriesAuditError,
    UnknownSeriesId,
    UnsupportedModulus,
    ZeroNumerator,
)
from .exact import (
    LinearFactor,
    PartialFractionForm,
    PoleTerm,
    Summand,
    evaluate_term,
    normalize,
    partial_fractions,
    residue_sum,
)
from .intervals import Interval, Precision
from .polygamma import BernoulliTable, bernoulli_even, const_gamma, hurwitz_tail, polygamma, zeta3
from .registry import (
    AuditEntry,
    AuditReport,
    IdentityRecord,
    audit,
    audit_all,
    builtin_registry,
    get_record,
    parse_claim_latex,
)
from .sums import (
    BenchmarkRow,
    TailBracket,
    benchmark_summand,
    eval_series,
    harmonic,
    loglog_slope,
    odd_window_sum,
    partial_sum,
    tail_bracket,
)
from .surd import SQRT2, SQRT3, SQRT6, SurdRational

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
