from .cutoff import (
    GEOMETRIC,
    POISSON,
    FockCutoff,
    check_leakage,
    geometric_tail,
    leakage_cutoff,
    poisson_tail,
    receiver_cutoff,
    tail_mass,
)
from .functionals import entropy, partial_trace, trace_distance, trace_norm
from .measurement import MeasurementOutcome, measure_vacuum_or_not, vacuum_or_not
from .operators import (
    GaussianUnitarySpec,
    annihilation,
    apply_operator,
    apply_unitary,
    fit_cutoff,
    gaussian_unitary,
    squeeze2_sector,
    unitary_defect,
)
from .preparation import (
    coherent_amplitudes,
    coherent_state,
    fock_state,
    thermal_populations,
    thermal_state,
)
from .states import DensityMatrix, TruncatedState, clipped_spectrum, product_state
