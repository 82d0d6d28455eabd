from .epsilon import codebook_term, epsilon_prime
from .lemmas import (
    check_effect,
    check_projector,
    gentle_operator_gap,
    sen_bound_gap,
    square_root,
    trace_lemma_gap,
)
from .report import BoundReport
from .sampling import (
    random_density_matrix,
    random_effect,
    random_projector,
    random_pure_state,
    random_unitary,
)
from .suites import (
    GENTLE,
    SAMPLED,
    SEN,
    TRACE,
    TYPICALITY,
    SequentialChainReport,
    SuiteReport,
    run_suite,
    sequential_chain_report,
)
from .typicality import TypicalityParams, TypicalityReport, compositions, typicality_report
