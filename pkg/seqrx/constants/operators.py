DISPLACE = "displace"
PHASE = "phase"
SQUEEZE2 = "squeeze2"

SINGLE_MODE = (DISPLACE, PHASE)
ALL = (DISPLACE, PHASE, SQUEEZE2)
