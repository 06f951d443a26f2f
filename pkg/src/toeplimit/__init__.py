"""Inner and outer approximations of eigenvalue limit sets of banded Toeplitz matrices."""
