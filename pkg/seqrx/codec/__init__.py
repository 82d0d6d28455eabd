from .codebook import Codebook, check_prior
from .generation import apply_loss, generate_codebook
from .gram import GramMatrix, codeword_gram, explicit_gram, holevo_information
