GAUSSIAN_ISO = "gaussian_iso"
BPSK_AMP = "bpsk_amp"
UNIFORM_PHASE = "uniform_phase"
BPSK_PHASE = "bpsk_phase"
PPM = "ppm"

ALL = (GAUSSIAN_ISO, BPSK_AMP, UNIFORM_PHASE, BPSK_PHASE, PPM)

# Priors draw amplitudes for coherent codebooks and phases for reading codebooks.
AMPLITUDE = (GAUSSIAN_ISO, BPSK_AMP, PPM)
PHASE = (UNIFORM_PHASE, BPSK_PHASE)
