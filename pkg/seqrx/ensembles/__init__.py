from .capacities import (
    ChannelParams,
    binary_entropy,
    bpsk_average_spectrum,
    bpsk_capacity,
    g_capacity,
    holevo_capacity,
    private_capacity,
)
from .families import StateFamily, as_family
from .states import (
    analytic_overlap,
    codeword_state,
    phase_average,
    reading_amplitudes,
    reading_state,
    symbol_state,
)
