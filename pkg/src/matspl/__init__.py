"""Free splices of matroids and related constructions."""
