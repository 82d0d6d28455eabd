from seqrx.constants import branches, engines, families, operators, priors
