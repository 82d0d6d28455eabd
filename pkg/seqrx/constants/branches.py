VACUUM = "vacuum"
NOT_VACUUM = "not_vacuum"

# Decoded value of a trajectory in which every test answered "no". Messages are
# numbered from 1.
FAIL: int = 0
