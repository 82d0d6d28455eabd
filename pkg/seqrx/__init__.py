from seqrx.launcher import launch
