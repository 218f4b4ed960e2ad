"""Hayashi-Yoshida covariance and nonextant data point analysis."""

from ._core import (
    AdversaryConfig,
    Anchoring,
    GroupedTerm,
    HyfError,
    LabelSequence,
    Leg,
    NonextantReport,
    ObservationSeries,
    TermList,
    TrialSummary,
    __version__,
    coefficient_of,
    coefficients,
    count_pattern,
    detect_interval_rule,
    detect_label_rule,
    enumerate_overlaps,
    generate_inputs,
    hy_covariance,
    merge_labels,
    nonextant_interval,
    oracle_detect,
    read_tick_file,
    run_experiment,
    table1,
    telescope_rows,
    theoretical_loss,
    write_tick_file,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
