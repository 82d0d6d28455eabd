from .runner import build_parser, capacity_value, run
from .sweep import (
    RESULT_COLUMNS,
    ResultRow,
    SweepConfig,
    evaluate_codebooks,
    evaluate_point,
    point_codebook,
    results_csv,
    results_frame,
    sweep,
    write_results,
)
