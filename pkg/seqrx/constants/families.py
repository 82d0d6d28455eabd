COHERENT = "coherent"
READING_II = "reading_II"
READING_III = "reading_III"

READING = (READING_II, READING_III)
ALL = (COHERENT, READING_II, READING_III)
