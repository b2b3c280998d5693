"""Frequency-hopping sequence sets from Whiteman generalized cyclotomy.

Typical use::

    from fhseq import construct, correlation_profile

    fh = construct(5, 17)
    profile = correlation_profile(fh)
    profile.A_a, profile.A_c      # Fraction(473, 21), Fraction(5248, 255)
"""
from fhseq.construction import (
    FHSequenceSet,
    LazySequence,
    Partition,
    build_partition,
    build_sequence_set,
    construct,
)
from fhseq.correlation import (
    BoundsReport,
    CorrelationProfile,
    GateExceeded,
    average_bound_check,
    bounds_report,
    correlation_profile,
    hamming_correlation,
    lempel_greenberger_bound,
    peng_fan_check,
)
from fhseq.cyclotomy import (
    CellId,
    CellLocator,
    CyclotomicTables,
    LemmaReport,
    Params,
    build_params,
    build_tables,
    cell_of,
    cyclotomic_matrix,
    cyclotomic_number,
    verify_structure_lemmas,
)
from fhseq.theory import (
    TheoremPrediction,
    VerificationReport,
    closed_form_totals,
    optimality_report,
    predict_auto,
    predict_averages,
    predict_cross,
    verify_average_optimality,
    verify_correlation_distribution,
)

__version__ = "0.1.0"
