import os
from pathlib import Path

name = "seqrx"
version = "0.1.0"
debug = os.getenv("SEQRX_DEBUG", "").lower() in ("1", "true", "yes")

# Fock-space truncation
leakage_tolerance = 1e-9
unitarity_tolerance = 1e-8
normalization_tolerance = 1e-9
operator_padding = 2
max_cutoff = 2048
dense_operator_limit = 4096
fock_amplitude_budget = 10**6

# Matrix validation
hermitian_tolerance = 1e-10
eigenvalue_clip = 1e-10
entropy_floor = 1e-15
projector_tolerance = 1e-10

# Sequential decoding
gram_floor = 1e-12
gram_hermitian_tolerance = 1e-12
span_tolerance = 1e-10
collapse_threshold = 1e-14
degenerate_branch_threshold = 1e-12
norm_drift_tolerance = 1e-7
cholesky_max_condition = 1e8

# Bound verification
bound_slack = 1e-9
typicality_enumeration_limit = 2_000_000

# Reproducibility
rng_id = "numpy-philox4x64/seedsequence"
gaussian_method = "numpy-ziggurat-normal"
default_seed = 20120101

# Output
csv_float_format = "%.9g"
workers = max(1, int(os.getenv("SEQRX_WORKERS", "1")))
output_dir = Path(os.getenv("SEQRX_OUTPUT_DIR", "."))
partial_suffix = ".partial"
