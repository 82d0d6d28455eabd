from .cpn import click_probability, cpn_receiver
from .expurgation import expurgate
from .fock_receiver import (
    FockReceiver,
    coherent_receiver_mean,
    fock_receiver,
    reading_receiver_mean,
)
from .gram_chain import average_error_exact, gram_chain_success, per_message_success
from .monte_carlo import build_engine, monte_carlo_error
from .outcomes import DecodeOutcome, ErrorEstimate
from .span import AUTO, CHOLESKY, EIGH, SpanRepresentation, decoding_order
from .trajectory import simulate_trajectory, trajectory_distribution
