GRAM = "gram"
FOCK = "fock"
CPN = "cpn"

ALL = (GRAM, FOCK, CPN)
