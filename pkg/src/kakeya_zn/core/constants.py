"""Central constants module for kakeya-zn.

Fixed values shared by the library, the file formats and the CLI.
"""

# File formats
SCHEMA_VERSION = "kzn/1"
DISPLAY_SIGNIFICANT_DIGITS = 6  # Rounding applies to display strings only

# CLI exit codes
EXIT_PASS = 0
EXIT_USAGE_OR_IO = 1
EXIT_CHECK_FAILED = 2

# Factorization
TRIAL_DIVISION_LIMIT = 10**9  # Desk-scale ceiling for N

# Search and sampling defaults
GREEDY_DEFAULT_SEED = 0
G_IMAGE_SAMPLES = 512  # Values of t drawn in sampled mode
DECODE_RANDOM_BASES = 2  # Extra random base points per direction in decode-check
